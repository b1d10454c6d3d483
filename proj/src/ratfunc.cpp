#include "crnbif/ratfunc.hpp"

#include <stdexcept>

namespace crn {

RatFunc::RatFunc(const UPoly& n, const UPoly& d) {
    if (d.is_zero()) throw std::domain_error("rational function with zero denominator");
    if (n.is_zero()) {
        den_ = UPoly(1);
        return;
    }
    UPoly g = gcd(n, d);
    num_ = n / g;
    den_ = d / g;
    Q l = den_.lead();
    num_ = num_ * UPoly(1 / l);
    den_ = den_ * UPoly(1 / l);
}

RatFunc RatFunc::operator+(const RatFunc& o) const {
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    if (den_ == o.den_) return RatFunc(num_ + o.num_, den_);
    UPoly g = gcd(den_, o.den_);
    UPoly a = o.den_ / g;
    return RatFunc(num_ * a + o.num_ * (den_ / g), den_ * a);
}

RatFunc RatFunc::operator-(const RatFunc& o) const { return *this + (-o); }

RatFunc RatFunc::operator*(const RatFunc& o) const {
    if (is_zero() || o.is_zero()) return {};
    if (den_.degree() == 0 && o.den_.degree() == 0) return RatFunc(num_ * o.num_, UPoly(1), true);
    UPoly g1 = gcd(num_, o.den_), g2 = gcd(o.num_, den_);
    return RatFunc((num_ / g1) * (o.num_ / g2), (den_ / g2) * (o.den_ / g1));
}

RatFunc RatFunc::operator/(const RatFunc& o) const {
    if (o.is_zero()) throw std::domain_error("rational function division by zero");
    return *this * RatFunc(o.den_, o.num_);
}

Q RatFunc::eval(const Q& a) const {
    Q d = den_.eval(a);
    if (d == 0) throw std::domain_error("rational function pole");
    return num_.eval(a) / d;
}

int RatFunc::sign_at(const AlgebraicReal& a) const {
    int d = a.sign_of(den_);
    if (d == 0) throw std::domain_error("rational function pole");
    return a.sign_of(num_) * d;
}

std::string RatFunc::to_string(const std::string& var) const {
    if (den_.degree() == 0) return num_.to_string(var);
    return "(" + num_.to_string(var) + ")/(" + den_.to_string(var) + ")";
}

}  // namespace crn
