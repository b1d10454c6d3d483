#include "crnbif/upoly.hpp"

#include <sstream>
#include <stdexcept>

namespace crn {

UPoly UPoly::monomial(const Q& c, int deg) {
    std::vector<Q> v(deg + 1, Q(0));
    v[deg] = c;
    return UPoly(std::move(v));
}

void UPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

UPoly UPoly::operator+(const UPoly& o) const {
    std::vector<Q> r(std::max(c_.size(), o.c_.size()), Q(0));
    for (size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
    return UPoly(std::move(r));
}

UPoly UPoly::operator-(const UPoly& o) const { return *this + (-o); }

UPoly UPoly::operator-() const {
    UPoly r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
}

UPoly UPoly::operator*(const UPoly& o) const {
    if (is_zero() || o.is_zero()) return {};
    std::vector<Q> r(c_.size() + o.c_.size() - 1, Q(0));
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
    }
    return UPoly(std::move(r));
}

std::pair<UPoly, UPoly> UPoly::divmod(const UPoly& d) const {
    if (d.is_zero()) throw std::domain_error("polynomial division by zero");
    std::vector<Q> rem = c_;
    int dd = d.degree();
    if (degree() < dd) return {UPoly(), *this};
    std::vector<Q> quo(degree() - dd + 1, Q(0));
    Q inv = 1 / d.lead();
    for (int k = degree() - dd; k >= 0; --k) {
        Q f = rem[k + dd] * inv;
        quo[k] = f;
        if (f == 0) continue;
        for (int j = 0; j <= dd; ++j) rem[k + j] -= f * d.c_[j];
    }
    rem.resize(dd);
    return {UPoly(std::move(quo)), UPoly(std::move(rem))};
}

UPoly UPoly::derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<Q> r(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * static_cast<long>(i);
    return UPoly(std::move(r));
}

UPoly UPoly::monic() const {
    if (is_zero()) return {};
    UPoly r = *this;
    Q l = lead();
    for (auto& c : r.c_) c /= l;
    return r;
}

UPoly UPoly::compose(const UPoly& inner) const {
    UPoly r;
    for (size_t i = c_.size(); i-- > 0;) r = r * inner + UPoly(c_[i]);
    return r;
}

Q UPoly::eval(const Q& x) const {
    Q r = 0;
    for (size_t i = c_.size(); i-- > 0;) r = r * x + c_[i];
    return r;
}

double UPoly::eval(double x) const {
    double r = 0;
    for (size_t i = c_.size(); i-- > 0;) r = r * x + c_[i].get_d();
    return r;
}

std::string UPoly::to_string(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t i = c_.size(); i-- > 0;) {
        const Q& c = c_[i];
        if (c == 0) continue;
        Q a = abs(c);
        if (!first) os << (c < 0 ? " - " : " + ");
        else if (c < 0) os << "-";
        first = false;
        bool unit = a == 1 && i > 0;
        if (!unit) os << a.get_str();
        if (i > 0) {
            if (!unit) os << "*";
            os << var;
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

UPoly gcd(const UPoly& a, const UPoly& b) {
    UPoly x = a, y = b;
    while (!y.is_zero()) {
        UPoly r = x % y;
        x = std::move(y);
        y = std::move(r);
    }
    return x.monic();
}

UPoly squarefree_part(const UPoly& p) {
    if (p.degree() <= 0) return p.monic();
    UPoly g = gcd(p, p.derivative());
    return (p / g).monic();
}

UPoly pow(const UPoly& p, unsigned e) {
    UPoly r(1), b = p;
    while (e) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

Q resultant(const UPoly& a, const UPoly& b) {
    if (a.is_zero() || b.is_zero()) return 0;
    if (a.degree() == 0) return qpow(a.lead(), b.degree());
    if (b.degree() == 0) return qpow(b.lead(), a.degree());
    // res(a,b) = (-1)^{deg a deg b} lc(b)^{deg a - deg r} res(b, r) with r = a mod b
    UPoly r = a % b;
    int da = a.degree(), db = b.degree();
    Q sign = ((da * db) % 2) ? -1 : 1;
    if (r.is_zero()) return 0;
    return sign * qpow(b.lead(), da - r.degree()) * resultant(b, r);
}

}  // namespace crn
