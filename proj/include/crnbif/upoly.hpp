#pragma once

#include "crnbif/rational.hpp"

#include <string>
#include <utility>
#include <vector>

namespace crn {

// Dense univariate polynomial over Q, coefficients low degree first, no
// trailing zeros (the zero polynomial has an empty coefficient vector).
class UPoly {
public:
    UPoly() = default;
    UPoly(const Q& c) { if (c != 0) c_.push_back(c); }
    UPoly(int c) : UPoly(Q(c)) {}
    explicit UPoly(std::vector<Q> coeffs) : c_(std::move(coeffs)) { trim(); }
    static UPoly x() { return UPoly(std::vector<Q>{0, 1}); }
    static UPoly monomial(const Q& c, int deg);

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    Q coeff(int i) const { return i >= 0 && i < static_cast<int>(c_.size()) ? c_[i] : Q(0); }
    const std::vector<Q>& coeffs() const { return c_; }
    Q lead() const { return c_.empty() ? Q(0) : c_.back(); }

    UPoly operator+(const UPoly& o) const;
    UPoly operator-(const UPoly& o) const;
    UPoly operator-() const;
    UPoly operator*(const UPoly& o) const;
    UPoly& operator+=(const UPoly& o) { return *this = *this + o; }
    UPoly& operator-=(const UPoly& o) { return *this = *this - o; }
    UPoly& operator*=(const UPoly& o) { return *this = *this * o; }
    bool operator==(const UPoly& o) const { return c_ == o.c_; }
    bool operator!=(const UPoly& o) const { return !(*this == o); }

    // Euclidean division: *this = q*d + r with deg r < deg d.
    std::pair<UPoly, UPoly> divmod(const UPoly& d) const;
    UPoly operator/(const UPoly& d) const { return divmod(d).first; }
    UPoly operator%(const UPoly& d) const { return divmod(d).second; }

    UPoly derivative() const;
    UPoly monic() const;
    UPoly compose(const UPoly& inner) const;
    Q eval(const Q& x) const;
    double eval(double x) const;
    int sign_at(const Q& x) const { return sgn(eval(x)); }

    template <class T>
    T eval_in(const T& x) const {
        T r(0);
        for (size_t i = c_.size(); i-- > 0;) r = r * x + T(c_[i]);
        return r;
    }

    std::string to_string(const std::string& var = "a") const;

private:
    void trim();
    std::vector<Q> c_;
};

UPoly gcd(const UPoly& a, const UPoly& b);
UPoly squarefree_part(const UPoly& p);
UPoly pow(const UPoly& p, unsigned e);
// Resultant via the Euclidean remainder sequence.
Q resultant(const UPoly& a, const UPoly& b);

}  // namespace crn
