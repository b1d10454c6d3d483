#pragma once

#include "crnbif/roots.hpp"
#include "crnbif/upoly.hpp"

#include <string>

namespace crn {

// Element of Q(a): num/den with gcd(num, den) = 1 and den monic.
class RatFunc {
public:
    RatFunc() : num_(), den_(1) {}
    RatFunc(const Q& c) : num_(c), den_(1) {}
    RatFunc(int c) : RatFunc(Q(c)) {}
    RatFunc(const UPoly& p) : num_(p), den_(1) {}
    RatFunc(const UPoly& n, const UPoly& d);

    const UPoly& num() const { return num_; }
    const UPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_constant() const { return num_.degree() <= 0 && den_.degree() == 0; }

    RatFunc operator+(const RatFunc& o) const;
    RatFunc operator-(const RatFunc& o) const;
    RatFunc operator-() const { return RatFunc(-num_, den_, true); }
    RatFunc operator*(const RatFunc& o) const;
    RatFunc operator/(const RatFunc& o) const;
    RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
    RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
    RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
    bool operator==(const RatFunc& o) const { return num_ == o.num_ && den_ == o.den_; }

    Q eval(const Q& a) const;
    // Sign at an algebraic point where the denominator does not vanish.
    int sign_at(const AlgebraicReal& a) const;
    std::string to_string(const std::string& var = "a") const;

private:
    RatFunc(UPoly n, UPoly d, bool) : num_(std::move(n)), den_(std::move(d)) {}
    UPoly num_, den_;
};

inline bool is_zero(const RatFunc& r) { return r.is_zero(); }

}  // namespace crn
