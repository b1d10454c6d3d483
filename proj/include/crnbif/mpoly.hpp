#pragma once

#include "crnbif/rational.hpp"
#include "crnbif/upoly.hpp"

#include <map>
#include <string>
#include <vector>

namespace crn {

// Sparse multivariate polynomial over Q with named indeterminates. Binary
// operations on polynomials with different variable lists first merge the
// lists (left operand's order, then new names).
class MPoly {
public:
    using Exp = std::vector<int>;

    MPoly() = default;
    explicit MPoly(std::vector<std::string> vars) : vars_(std::move(vars)) {}
    MPoly(std::vector<std::string> vars, const Q& c);
    static MPoly var(const std::vector<std::string>& vars, size_t i);
    static MPoly var(const std::vector<std::string>& vars, const std::string& name);
    static MPoly from_upoly(const UPoly& p, const std::vector<std::string>& vars, size_t i);

    const std::vector<std::string>& vars() const { return vars_; }
    const std::map<Exp, Q>& terms() const { return terms_; }
    size_t nvars() const { return vars_.size(); }
    int index_of(const std::string& name) const;
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    Q constant_term() const;

    int degree(size_t i) const;
    int total_degree() const;
    // Indices of variables that actually occur.
    std::vector<size_t> support() const;

    MPoly operator+(const MPoly& o) const;
    MPoly operator-(const MPoly& o) const;
    MPoly operator-() const;
    MPoly operator*(const MPoly& o) const;
    MPoly operator*(const Q& c) const;
    MPoly& operator+=(const MPoly& o) { return *this = *this + o; }
    MPoly& operator-=(const MPoly& o) { return *this = *this - o; }
    MPoly& operator*=(const MPoly& o) { return *this = *this * o; }
    bool operator==(const MPoly& o) const;
    bool operator!=(const MPoly& o) const { return !(*this == o); }

    void add_term(const Exp& e, const Q& c);
    MPoly derivative(size_t i) const;
    // Coefficients of powers of variable i (index k -> coefficient of x_i^k).
    std::vector<MPoly> coeffs_in(size_t i) const;
    MPoly substitute(size_t i, const MPoly& value) const;
    MPoly substitute(size_t i, const Q& value) const;
    // Divides out the largest monomial dividing every term; returns it as exponent.
    Exp remove_monomial_content();
    UPoly to_upoly(size_t i) const;
    MPoly with_vars(const std::vector<std::string>& vars) const;

    template <class T>
    T eval(const std::vector<T>& pt) const {
        T r(0);
        for (const auto& [e, c] : terms_) {
            T m = T(c);
            for (size_t i = 0; i < e.size(); ++i)
                for (int k = 0; k < e[i]; ++k) m = m * pt[i];
            r = r + m;
        }
        return r;
    }
    double eval_double(const std::vector<double>& pt) const;

    std::string to_string() const;

private:
    std::vector<std::string> vars_;
    std::map<Exp, Q> terms_;
};

MPoly pow(const MPoly& p, unsigned e);
// Determinant of a square matrix with polynomial entries (Berkowitz, division free).
MPoly det_berkowitz(const std::vector<std::vector<MPoly>>& m);
// Sylvester resultant with respect to variable `name`.
MPoly resultant(const MPoly& p, const MPoly& q, const std::string& name);
// Eliminant of a polynomial system with respect to `drop`: the resultant of
// the first two members involving it (iterated against the rest).
MPoly eliminate(const std::vector<MPoly>& system, const std::string& drop);

}  // namespace crn
