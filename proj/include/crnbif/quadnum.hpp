#pragma once

#include "crnbif/rational.hpp"
#include "crnbif/roots.hpp"

#include <optional>
#include <string>

namespace crn {

// a + b*sqrt(d) with d a positive non-square integer; d = 0 marks a plain
// rational. Mixing two different radicands throws.
class QuadNum {
public:
    QuadNum() = default;
    QuadNum(const Q& a) : a_(a) {}
    QuadNum(int a) : a_(a) {}
    QuadNum(const Q& a, const Q& b, const Z& d);

    const Q& a() const { return a_; }
    const Q& b() const { return b_; }
    const Z& radicand() const { return d_; }
    bool is_rational() const { return b_ == 0; }

    QuadNum operator+(const QuadNum& o) const;
    QuadNum operator-(const QuadNum& o) const;
    QuadNum operator-() const { return QuadNum(-a_, -b_, d_); }
    QuadNum operator*(const QuadNum& o) const;
    QuadNum operator/(const QuadNum& o) const;
    QuadNum& operator+=(const QuadNum& o) { return *this = *this + o; }
    QuadNum& operator-=(const QuadNum& o) { return *this = *this - o; }
    QuadNum& operator*=(const QuadNum& o) { return *this = *this * o; }
    bool operator==(const QuadNum& o) const { return (*this - o).sign() == 0; }

    int sign() const;
    double to_double() const;
    std::string to_string() const;

    // Exact representation of an algebraic real of degree <= 2.
    static std::optional<QuadNum> from_algebraic(const AlgebraicReal& r);

private:
    static Z join(const Z& d1, const Z& d2);
    Q a_ = 0, b_ = 0;
    Z d_ = 0;
};

inline bool is_zero(const QuadNum& q) { return q.sign() == 0; }
inline int sgn(const QuadNum& q) { return q.sign(); }

}  // namespace crn
