#include "crnbif/quadnum.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace crn {

QuadNum::QuadNum(const Q& a, const Q& b, const Z& d) : a_(a), b_(b), d_(d) {
    if (b_ == 0) d_ = 0;
    else if (d_ <= 0 || mpz_perfect_square_p(d_.get_mpz_t()))
        throw std::invalid_argument("QuadNum radicand must be a positive non-square");
}

Z QuadNum::join(const Z& d1, const Z& d2) {
    if (d1 == 0) return d2;
    if (d2 == 0 || d1 == d2) return d1;
    throw std::domain_error("QuadNum: incompatible radicands");
}

QuadNum QuadNum::operator+(const QuadNum& o) const { return QuadNum(a_ + o.a_, b_ + o.b_, join(d_, o.d_)); }
QuadNum QuadNum::operator-(const QuadNum& o) const { return QuadNum(a_ - o.a_, b_ - o.b_, join(d_, o.d_)); }

QuadNum QuadNum::operator*(const QuadNum& o) const {
    Z d = join(d_, o.d_);
    return QuadNum(a_ * o.a_ + b_ * o.b_ * Q(d), a_ * o.b_ + b_ * o.a_, d);
}

QuadNum QuadNum::operator/(const QuadNum& o) const {
    Z d = join(d_, o.d_);
    Q n = o.a_ * o.a_ - o.b_ * o.b_ * Q(d);
    if (n == 0) throw std::domain_error("QuadNum division by zero");
    QuadNum conj(o.a_ / n, -o.b_ / n, d);
    return *this * conj;
}

int QuadNum::sign() const {
    int sa = sgn(a_), sb = sgn(b_);
    if (sb == 0) return sa;
    if (sa == 0 || sa == sb) return sb;
    // opposite signs: compare a^2 with b^2 d
    int c = cmp(Q(a_ * a_), Q(b_ * b_ * Q(d_)));
    return c > 0 ? sa : (c < 0 ? sb : 0);
}

double QuadNum::to_double() const { return a_.get_d() + b_.get_d() * std::sqrt(d_.get_d()); }

std::string QuadNum::to_string() const {
    if (b_ == 0) return a_.get_str();
    std::ostringstream os;
    os << a_.get_str() << (b_ < 0 ? " - " : " + ") << Q(abs(b_)).get_str() << "*sqrt(" << d_.get_str() << ")";
    return os.str();
}

std::optional<QuadNum> QuadNum::from_algebraic(const AlgebraicReal& r) {
    if (r.is_rational()) return QuadNum(r.rational());
    auto p = r.low_degree_poly();
    if (!p || p->degree() != 2) return std::nullopt;
    // x^2 + B x + C, roots (-B +- sqrt(B^2 - 4C)) / 2
    Q B = p->coeff(1), C = p->coeff(0);
    Q disc = B * B - 4 * C;
    // sqrt(n/m) = sqrt(n m) / m
    Z n = disc.get_num(), m = disc.get_den();
    Z nm = n * m;
    // pull square factors out of nm by trial division over small primes
    Z rad = nm, out = 1;
    for (unsigned long f = 2; f < 10000; ++f) {
        Z ff = Z(f) * f;
        if (ff > rad) break;
        while (mpz_divisible_p(rad.get_mpz_t(), ff.get_mpz_t())) {
            rad /= ff;
            out *= f;
        }
    }
    Q scale = Q(out) / Q(m);
    if (mpz_perfect_square_p(rad.get_mpz_t())) {
        Z s;
        mpz_sqrt(s.get_mpz_t(), rad.get_mpz_t());
        Q root = scale * Q(s);
        Q r1 = (-B + root) / 2, r2 = (-B - root) / 2;
        return QuadNum(r.compare(r1) == 0 ? r1 : r2);
    }
    QuadNum plus(-B / 2, scale / 2, rad), minus(-B / 2, -scale / 2, rad);
    // the larger root is 'plus'; decide which one r is by comparing with -B/2
    return r.compare(Q(-B / 2)) > 0 ? plus : minus;
}

}  // namespace crn
