#include "crnbif/roots.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace crn {

std::vector<UPoly> sturm_sequence(const UPoly& p) {
    std::vector<UPoly> s;
    if (p.is_zero()) return s;
    s.push_back(p);
    UPoly d = p.derivative();
    if (d.is_zero()) return s;
    s.push_back(d);
    for (;;) {
        UPoly r = -(s[s.size() - 2] % s.back());
        if (r.is_zero()) break;
        s.push_back(r);
    }
    return s;
}

static int sign_changes(const std::vector<UPoly>& s, const Q& x) {
    int changes = 0, last = 0;
    for (const auto& p : s) {
        int v = p.sign_at(x);
        if (v == 0) continue;
        if (last != 0 && v != last) ++changes;
        last = v;
    }
    return changes;
}

int count_roots(const std::vector<UPoly>& sturm, const Q& a, const Q& b) {
    if (sturm.empty()) throw std::invalid_argument("Sturm sequence of the zero polynomial");
    return sign_changes(sturm, a) - sign_changes(sturm, b);
}

static int count_open(const std::vector<UPoly>& s, const Q& a, const Q& b) {
    return count_roots(s, a, b) - (s[0].sign_at(b) == 0 ? 1 : 0);
}

Q dyadic_between(const Q& a, const Q& b) {
    if (!(a < b)) throw std::invalid_argument("dyadic_between: empty interval");
    Z scale = 1;
    for (int k = 0; k < 4096; ++k) {
        Q sa = a * scale;
        Z n;
        mpz_fdiv_q(n.get_mpz_t(), sa.get_num_mpz_t(), sa.get_den_mpz_t());
        n += 1;
        // prefer the candidate closest to zero among those available at this depth
        Q c(n, scale);
        c.canonicalize();
        if (c < b) {
            if (a < 0 && b > 0) return 0;
            if (b <= 0) {
                Q sb = b * scale;
                Z m;
                mpz_cdiv_q(m.get_mpz_t(), sb.get_num_mpz_t(), sb.get_den_mpz_t());
                m -= 1;
                Q d(m, scale);
                d.canonicalize();
                return d;
            }
            return c;
        }
        scale *= 2;
    }
    throw std::runtime_error("dyadic_between: interval too narrow");
}

// Simplest rational (smallest denominator) in the open interval (a, b).
static Q simplest_between(Q a, Q b) {
    // continued-fraction descent
    Z fl;
    mpz_fdiv_q(fl.get_mpz_t(), a.get_num_mpz_t(), a.get_den_mpz_t());
    if (Q(fl + 1) < b) {
        Q c = fl + 1;
        if (a < 0 && b > 0) return 0;
        if (b <= 0) {
            Z cb;
            mpz_cdiv_q(cb.get_mpz_t(), b.get_num_mpz_t(), b.get_den_mpz_t());
            return Q(cb - 1);
        }
        return c;
    }
    // a and b share the integer part fl (b may equal fl+1)
    Q fa = a - fl, fb = b - fl;
    if (fa == 0) fa = 0;
    // 1/fb < 1/fa (fa may be zero: treat 1/fa as +inf)
    Q lo = 1 / fb;
    if (fa == 0) {
        Z c;
        mpz_fdiv_q(c.get_mpz_t(), lo.get_num_mpz_t(), lo.get_den_mpz_t());
        return fl + Q(1) / Q(c + 1);
    }
    Q hi = 1 / fa;
    return fl + 1 / simplest_between(lo, hi);
}

std::vector<Interval> isolate_real_roots(const UPoly& p, const Q& lo, const Q& hi) {
    if (p.is_zero()) throw std::invalid_argument("isolate_real_roots: zero polynomial");
    std::vector<Interval> out;
    if (!(lo < hi) || p.degree() == 0) return out;
    UPoly sf = squarefree_part(p);
    auto s = sturm_sequence(sf);
    std::function<void(const Q&, const Q&, int)> rec = [&](const Q& a, const Q& b, int n) {
        if (n == 0) return;
        if (n == 1) {
            out.push_back({a, b});
            return;
        }
        Q m = (a + b) / 2;
        int left = count_open(s, a, m);
        rec(a, m, left);
        int mid = sf.sign_at(m) == 0 ? 1 : 0;
        if (mid) out.push_back({m, m});
        rec(m, b, n - left - mid);
    };
    rec(lo, hi, count_open(s, lo, hi));
    return out;
}

AlgebraicReal::AlgebraicReal(const Q& q) : p_(UPoly(std::vector<Q>{-q, 1})), iv_{q, q} {}

AlgebraicReal::AlgebraicReal(UPoly squarefree, Interval iv) : p_(std::move(squarefree)), iv_(std::move(iv)) {
    if (iv_.is_point()) {
        p_ = UPoly(std::vector<Q>{-iv_.lo, 1});
        return;
    }
    if (p_.degree() == 1) {
        Q r = -p_.coeff(0) / p_.coeff(1);
        p_ = UPoly(std::vector<Q>{-r, 1});
        iv_ = {r, r};
    }
}

void AlgebraicReal::refine(const Q& width) {
    if (iv_.is_point()) return;
    if (sturm_.empty()) sturm_ = sturm_sequence(p_);
    while (iv_.hi - iv_.lo >= width) {
        Q m = (iv_.lo + iv_.hi) / 2;
        if (p_.sign_at(m) == 0) {
            iv_ = {m, m};
            p_ = UPoly(std::vector<Q>{-m, 1});
            return;
        }
        if (count_open(sturm_, iv_.lo, m) == 1) iv_.hi = m;
        else iv_.lo = m;
    }
}

int AlgebraicReal::sign_of(const UPoly& g) const {
    if (iv_.is_point()) return g.sign_at(iv_.lo);
    if (g.is_zero()) return 0;
    UPoly h = gcd(p_, g);
    if (h.degree() > 0) {
        auto hs = sturm_sequence(h);
        if (count_open(hs, iv_.lo, iv_.hi) > 0) return 0;
    }
    if (g.degree() <= 0) return sgn(g.lead());
    auto gs = sturm_sequence(squarefree_part(g));
    auto* self = const_cast<AlgebraicReal*>(this);
    Q w = iv_.hi - iv_.lo;
    while (count_open(gs, iv_.lo, iv_.hi) > 0 || g.sign_at(iv_.lo) == 0 || g.sign_at(iv_.hi) == 0) {
        w /= 2;
        self->refine(w);
        if (iv_.is_point()) return g.sign_at(iv_.lo);
    }
    return g.sign_at((iv_.lo + iv_.hi) / 2);
}

double AlgebraicReal::to_double() const {
    if (iv_.is_point()) return iv_.lo.get_d();
    Q mag = qabs(iv_.lo) > qabs(iv_.hi) ? qabs(iv_.lo) : qabs(iv_.hi);
    const_cast<AlgebraicReal*>(this)->refine(Q(mpz_class(1), mpz_class(1) << 60) * (mag + 1));
    return Q((iv_.lo + iv_.hi) / 2).get_d();
}

std::optional<UPoly> AlgebraicReal::low_degree_poly() const {
    if (p_.degree() <= 2) return p_.monic();
    return std::nullopt;
}

int AlgebraicReal::compare(const Q& q) const {
    if (iv_.is_point()) return sgn(iv_.lo - q);
    if (q <= iv_.lo) return 1;
    if (q >= iv_.hi) return -1;
    // sign of (root - q) = -sign of (q - root); p changes sign across the root
    int sq = p_.sign_at(q);
    if (sq == 0) return 0;
    int slo = p_.sign_at(iv_.lo);
    if (slo == 0) {
        const_cast<AlgebraicReal*>(this)->refine((iv_.hi - iv_.lo) / 2);
        return compare(q);
    }
    return sq == slo ? 1 : -1;
}

int AlgebraicReal::compare(const AlgebraicReal& o) const {
    if (o.is_rational()) return compare(o.rational());
    if (is_rational()) return -o.compare(rational());
    if (gcd(p_, o.p_).degree() > 0) {
        if (sign_of(o.p_) == 0 && o.sign_of(p_) == 0) {
            // both are roots of the common factor; equal iff intervals overlap on a shared root
            UPoly h = gcd(p_, o.p_);
            Q lo = std::max(iv_.lo, o.iv_.lo), hi = std::min(iv_.hi, o.iv_.hi);
            if (lo < hi && count_open(sturm_sequence(h), lo, hi) == 1 &&
                count_open(sturm_sequence(h), iv_.lo, iv_.hi) == 1 &&
                count_open(sturm_sequence(h), o.iv_.lo, o.iv_.hi) == 1)
                return 0;
        }
    }
    for (;;) {
        if (iv_.hi <= o.iv_.lo) return -1;
        if (o.iv_.hi <= iv_.lo) return 1;
        auto* a = const_cast<AlgebraicReal*>(this);
        auto* b = const_cast<AlgebraicReal*>(&o);
        a->refine((iv_.hi - iv_.lo) / 2);
        b->refine((o.iv_.hi - o.iv_.lo) / 2);
        if (is_rational() || o.is_rational()) return compare(o);
    }
}

std::string AlgebraicReal::to_string() const {
    if (iv_.is_point()) return iv_.lo.get_str();
    std::ostringstream os;
    os << "root(" << p_.to_string("a") << " in (" << iv_.lo.get_str() << ", " << iv_.hi.get_str() << "))";
    return os.str();
}

std::vector<AlgebraicReal> real_roots(const UPoly& p, const Q& lo, const Q& hi) {
    std::vector<AlgebraicReal> out;
    if (p.is_zero()) throw std::invalid_argument("real_roots: zero polynomial");
    UPoly sf = squarefree_part(p);
    // a rational root n/d of the primitive integer polynomial has d | lead
    Z lcd = 1;
    for (const auto& c : sf.coeffs()) mpz_lcm(lcd.get_mpz_t(), lcd.get_mpz_t(), c.get_den_mpz_t());
    Q leadz = sf.lead() * lcd;
    Z content = 0;
    for (const auto& c : sf.coeffs()) {
        Q ci = c * lcd;
        mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), ci.get_num_mpz_t());
    }
    Q an = abs(leadz / content);
    Q width = 1 / (2 * an * an);
    for (auto& iv : isolate_real_roots(sf, lo, hi)) {
        AlgebraicReal r(sf, iv);
        if (!r.is_rational()) {
            r.refine(width);
            if (!r.is_rational()) {
                Q c = simplest_between(r.interval().lo, r.interval().hi);
                if (sf.sign_at(c) == 0) r = AlgebraicReal(c);
            }
        }
        out.push_back(r);
    }
    return out;
}

CellDecomposition decompose(const std::vector<UPoly>& polys, const Q& lo, const Q& hi) {
    CellDecomposition cd;
    std::vector<UPoly> parts;
    UPoly prod(1);
    for (const auto& p : polys) {
        if (p.degree() <= 0) continue;
        UPoly s = squarefree_part(p);
        parts.push_back(s);
        prod = squarefree_part(prod * s);
    }
    if (prod.degree() > 0) {
        for (auto& r : real_roots(prod, lo, hi)) {
            if (!r.is_rational()) {
                // re-express with the lowest-degree input factor vanishing here
                const UPoly* best = nullptr;
                for (const auto& s : parts)
                    if ((!best || s.degree() < best->degree()) && r.sign_of(s) == 0) best = &s;
                if (best) {
                    UPoly g = *best;
                    for (const auto& s : parts) {
                        UPoly h = gcd(g, s);
                        if (h.degree() > 0 && h.degree() < g.degree() && r.sign_of(h) == 0) g = h;
                    }
                    r = AlgebraicReal(g, r.interval());
                }
            }
            cd.roots.push_back(r);
        }
    }
    auto upper = [](const AlgebraicReal& r) { return r.is_rational() ? r.rational() : r.interval().hi; };
    auto lower = [](const AlgebraicReal& r) { return r.is_rational() ? r.rational() : r.interval().lo; };
    Q prev = lo;
    bool prev_point = true;
    for (size_t i = 0; i <= cd.roots.size(); ++i) {
        Q a = prev;
        if (i == cd.roots.size()) {
            while (!(a < hi) && i > 0 && !cd.roots[i - 1].is_rational()) {
                auto& pr = cd.roots[i - 1];
                pr.refine((pr.interval().hi - pr.interval().lo) / 2);
                a = upper(pr);
            }
            cd.cells.push_back(dyadic_between(a, hi));
            break;
        }
        auto& r = cd.roots[i];
        for (;;) {
            Q b = lower(r);
            if (a < b) {
                cd.cells.push_back(dyadic_between(a, b));
                break;
            }
            if (a == b && !prev_point && !r.is_rational()) {
                cd.cells.push_back(a);
                break;
            }
            if (!r.is_rational()) r.refine((r.interval().hi - r.interval().lo) / 2);
            else if (i > 0 && !cd.roots[i - 1].is_rational()) {
                auto& pr = cd.roots[i - 1];
                pr.refine((pr.interval().hi - pr.interval().lo) / 2);
                a = upper(pr);
            } else {
                throw std::logic_error("decompose: coincident roots");
            }
        }
        prev = upper(r);
        prev_point = r.is_rational();
    }
    return cd;
}

}  // namespace crn
