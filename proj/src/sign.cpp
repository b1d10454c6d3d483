#include "crnbif/sign.hpp"

#include "crnbif/ratfunc.hpp"
#include "crnbif/roots.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace crn {

std::string to_string(Verdict v) {
    switch (v) {
    case Verdict::AllPositive: return "AllPositive";
    case Verdict::AllNegative: return "AllNegative";
    case Verdict::IdenticallyZero: return "IdenticallyZero";
    case Verdict::Mixed: return "Mixed";
    case Verdict::NonNegative: return "NonNegative";
    case Verdict::NonPositive: return "NonPositive";
    case Verdict::Unresolved: return "Unresolved";
    }
    return "?";
}

Domain Domain::positive_orthant(const std::vector<std::string>& vars) {
    Domain d;
    d.vars = vars;
    d.lo.assign(vars.size(), Q(0));
    d.hi.assign(vars.size(), std::nullopt);
    return d;
}

Domain& Domain::box(const std::string& var, std::optional<Q> l, std::optional<Q> h) {
    auto it = std::find(vars.begin(), vars.end(), var);
    if (it == vars.end()) {
        vars.push_back(var);
        lo.push_back(l);
        hi.push_back(h);
    } else {
        size_t i = static_cast<size_t>(it - vars.begin());
        lo[i] = l;
        hi[i] = h;
    }
    return *this;
}

// Direct term-by-term evaluation, deliberately separate from MPoly::eval.
static Q eval_direct(const MPoly& p, const std::vector<std::string>& vars, const QVec& pt) {
    Q s = 0;
    for (const auto& [e, c] : p.terms()) {
        Q m = c;
        for (size_t i = 0; i < e.size(); ++i) {
            if (!e[i]) continue;
            auto it = std::find(vars.begin(), vars.end(), p.vars()[i]);
            m *= qpow(pt[static_cast<size_t>(it - vars.begin())], e[i]);
        }
        s += m;
    }
    return s;
}

bool Domain::contains(const QVec& pt) const {
    if (pt.size() != vars.size()) return false;
    for (size_t i = 0; i < vars.size(); ++i) {
        if (lo[i] && !(pt[i] > *lo[i])) return false;
        if (hi[i] && !(pt[i] < *hi[i])) return false;
    }
    for (const auto& g : side)
        if (!(eval_direct(g, vars, pt) > 0)) return false;
    return true;
}

namespace {

Q interior_point(const std::optional<Q>& lo, const std::optional<Q>& hi) {
    if (lo && hi) return dyadic_between(*lo, *hi);
    if (lo) return dyadic_between(*lo, *lo + 2);
    if (hi) return dyadic_between(*hi - 2, *hi);
    return 0;
}

std::vector<Q> grid_values(const std::optional<Q>& lo, const std::optional<Q>& hi, unsigned level) {
    std::vector<Q> v;
    Z den = 1;
    den <<= level;
    if (lo && hi) {
        Q w = *hi - *lo;
        for (Z j = 1; j < den; ++j) v.push_back(*lo + w * Q(j, den));
        return v;
    }
    std::vector<Q> offs;
    for (Z j = 1; j <= den; ++j) offs.push_back(Q(j, den));
    for (unsigned s = 1; s <= level; ++s) offs.push_back(Q(Z(1) << s));
    for (auto& q : offs) q.canonicalize();
    if (lo) {
        for (const auto& o : offs) v.push_back(*lo + o);
    } else if (hi) {
        for (const auto& o : offs) v.push_back(*hi - o);
    } else {
        v.push_back(0);
        for (const auto& o : offs) {
            v.push_back(o);
            v.push_back(-o);
        }
    }
    return v;
}

// Fast double evaluation of a polynomial aligned with the domain variables.
struct DPoly {
    std::vector<std::pair<std::vector<int>, double>> t;
    explicit DPoly(const MPoly& p) {
        for (const auto& [e, c] : p.terms()) t.push_back({e, c.get_d()});
    }
    double operator()(const std::vector<double>& x) const {
        double s = 0;
        for (const auto& [e, c] : t) {
            double m = c;
            for (size_t i = 0; i < e.size(); ++i)
                for (int k = 0; k < e[i]; ++k) m *= x[i];
            s += m;
        }
        return s;
    }
};

bool rung_grid(const MPoly& p, const Domain& dom, const SignOptions& opt, QVec& pos, QVec& neg, QVec& any) {
    size_t n = dom.vars.size();
    std::vector<size_t> active;
    for (size_t i = 0; i < n; ++i) {
        bool used = p.degree(i) > 0;
        for (const auto& g : dom.side) used = used || g.degree(i) > 0;
        if (used) active.push_back(i);
    }
    QVec base(n);
    for (size_t i = 0; i < n; ++i) base[i] = interior_point(dom.lo[i], dom.hi[i]);
    DPoly dp(p);
    std::vector<DPoly> dg;
    for (const auto& g : dom.side) dg.emplace_back(g);
    bool have_pos = false, have_neg = false, have_any = false;
    auto try_point = [&](const QVec& pt) {
        std::vector<double> x(n);
        for (size_t i = 0; i < n; ++i) x[i] = pt[i].get_d();
        for (const auto& g : dg)
            if (g(x) < -1e-9) return;
        double v = dp(x);
        bool want = (!have_pos && v > -1e-9) || (!have_neg && v < 1e-9) || !have_any;
        if (!want) return;
        for (const auto& g : dom.side)
            if (!(eval_direct(g, dom.vars, pt) > 0)) return;
        if (!have_any) {
            any = pt;
            have_any = true;
        }
        int s = sgn(eval_direct(p, dom.vars, pt));
        if (s > 0 && !have_pos) {
            pos = pt;
            have_pos = true;
        }
        if (s < 0 && !have_neg) {
            neg = pt;
            have_neg = true;
        }
    };
    if (active.empty()) {
        try_point(base);
        return have_pos && have_neg;
    }
    unsigned cap = 1;
    while (cap < opt.grid_depth && std::pow(2.0, double(cap + 1) * double(active.size())) <= double(opt.grid_budget)) ++cap;
    for (unsigned level = 1; level <= std::min(cap, opt.grid_depth); ++level) {
        std::vector<std::vector<Q>> vals;
        for (size_t i : active) vals.push_back(grid_values(dom.lo[i], dom.hi[i], level));
        std::vector<size_t> idx(active.size(), 0);
        for (;;) {
            QVec pt = base;
            for (size_t k = 0; k < active.size(); ++k) pt[active[k]] = vals[k][idx[k]];
            try_point(pt);
            if (have_pos && have_neg) return true;
            size_t k = 0;
            while (k < idx.size() && ++idx[k] == vals[k].size()) idx[k++] = 0;
            if (k == idx.size()) break;
        }
    }
    return false;
}

Q cauchy_bound(const UPoly& p) {
    if (p.degree() <= 0) return 1;
    Q m = 0;
    for (int i = 0; i < p.degree(); ++i) m = std::max(m, Q(abs(p.coeff(i) / p.lead())));
    return m + 1;
}

struct Range {
    Q lo, hi;
};

Range finite_range(const std::optional<Q>& lo, const std::optional<Q>& hi, const std::vector<UPoly>& ps) {
    Q b = 1;
    for (const auto& p : ps)
        if (!p.is_zero()) b = std::max(b, cauchy_bound(p));
    Range r{lo ? *lo : -(b + 1), hi ? *hi : b + 1};
    if (lo && !hi) r.hi = std::max(b, qabs(*lo)) + qabs(*lo) + 1;
    if (hi && !lo) r.lo = -(std::max(b, qabs(*hi)) + qabs(*hi) + 1);
    return r;
}

struct SignSet {
    bool pos = false, neg = false, zero = false, feasible = false;
    QVec wpos, wneg;
};

Verdict verdict_of(const SignSet& s) {
    if (s.pos && s.neg) return Verdict::Mixed;
    if (s.pos) return s.zero ? Verdict::NonNegative : Verdict::AllPositive;
    if (s.neg) return s.zero ? Verdict::NonPositive : Verdict::AllNegative;
    return Verdict::IdenticallyZero;
}

// Univariate rung: p and all side constraints depend on variable i only.
SignSet univariate(const MPoly& p, const Domain& dom, size_t i, const QVec& base) {
    UPoly up = p.to_upoly(i);
    std::vector<UPoly> gs;
    for (const auto& g : dom.side) gs.push_back(g.to_upoly(i));
    std::vector<UPoly> all{up};
    all.insert(all.end(), gs.begin(), gs.end());
    Range r = finite_range(dom.lo[i], dom.hi[i], all);
    auto cd = decompose(all, r.lo, r.hi);
    SignSet s;
    for (const auto& c : cd.cells) {
        bool ok = true;
        for (const auto& g : gs) ok = ok && g.sign_at(c) > 0;
        if (!ok) continue;
        s.feasible = true;
        int v = up.sign_at(c);
        QVec w = base;
        w[i] = c;
        if (v > 0 && !s.pos) {
            s.pos = true;
            s.wpos = w;
        }
        if (v < 0 && !s.neg) {
            s.neg = true;
            s.wneg = w;
        }
    }
    for (const auto& root : cd.roots) {
        bool ok = true;
        for (const auto& g : gs) ok = ok && root.sign_of(g) > 0;
        if (!ok) continue;
        s.feasible = true;
        int v = root.sign_of(up);
        if (v == 0) s.zero = true;
    }
    return s;
}

// Squarefree part of p in y over Q(x), with denominators cleared. Returns the
// zero polynomial if p is constant in y.
using YPoly = std::vector<RatFunc>;

void ytrim(YPoly& a) {
    while (!a.empty() && a.back().is_zero()) a.pop_back();
}

YPoly yrem(YPoly a, const YPoly& b) {
    ytrim(a);
    while (a.size() >= b.size() && !a.empty()) {
        RatFunc f = a.back() / b.back();
        size_t shift = a.size() - b.size();
        for (size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
        a.pop_back();
        ytrim(a);
    }
    return a;
}

YPoly yquot(YPoly a, const YPoly& b) {
    ytrim(a);
    if (a.size() < b.size()) return {};
    YPoly q(a.size() - b.size() + 1);
    while (a.size() >= b.size() && !a.empty()) {
        RatFunc f = a.back() / b.back();
        size_t shift = a.size() - b.size();
        q[shift] = f;
        for (size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
        a.pop_back();
        ytrim(a);
    }
    return q;
}

MPoly squarefree_in(const MPoly& p, size_t ix, size_t iy) {
    auto cy = p.coeffs_in(iy);
    YPoly P, dP;
    for (const auto& c : cy) P.push_back(RatFunc(c.to_upoly(ix)));
    ytrim(P);
    for (size_t k = 1; k < P.size(); ++k) dP.push_back(P[k] * RatFunc(Q(static_cast<long>(k))));
    ytrim(dP);
    if (dP.empty()) return MPoly(p.vars());
    YPoly a = P, b = dP;
    while (!b.empty()) {
        YPoly r = yrem(a, b);
        a = b;
        b = r;
    }
    YPoly sq = yquot(P, a);
    UPoly den(1);
    for (const auto& c : sq) den = den * c.den() / gcd(den, c.den());
    const auto& vars = p.vars();
    MPoly out(vars);
    MPoly yv = MPoly::var(vars, iy);
    MPoly ypow(vars, 1);
    for (const auto& c : sq) {
        UPoly num = c.num() * (den / c.den());
        out += MPoly::from_upoly(num, vars, ix) * ypow;
        ypow *= yv;
    }
    return out;
}

// Bivariate rung without side constraints: cylindrical sampling over x with
// a resultant check on the critical lines.
std::optional<SignSet> bivariate(const MPoly& p, const Domain& dom, size_t ix, size_t iy, const QVec& base) {
    const auto& vars = p.vars();
    const std::string& yname = vars[iy];
    MPoly py = p.derivative(iy);
    auto cy = p.coeffs_in(iy);
    std::vector<UPoly> crit;
    crit.push_back(cy.back().to_upoly(ix));
    MPoly disc = resultant(p, py, yname);
    if (disc.is_zero()) {
        // repeated factor: the y-roots are those of the squarefree part
        MPoly q = squarefree_in(p, ix, iy);
        if (q.is_zero()) return std::nullopt;
        crit.push_back(q.coeffs_in(iy).back().to_upoly(ix));
        disc = resultant(q, q.derivative(iy), yname);
        if (disc.is_zero()) return std::nullopt;
    }
    crit.push_back(disc.with_vars(vars).to_upoly(ix));
    if (dom.lo[iy]) crit.push_back(p.substitute(iy, *dom.lo[iy]).to_upoly(ix));
    if (dom.hi[iy]) crit.push_back(p.substitute(iy, *dom.hi[iy]).to_upoly(ix));
    std::vector<UPoly> nz;
    for (auto& c : crit)
        if (!c.is_zero()) nz.push_back(c);
    Range rx = finite_range(dom.lo[ix], dom.hi[ix], nz);
    auto cd = decompose(nz, rx.lo, rx.hi);
    SignSet s;
    s.feasible = true;
    for (const auto& x0 : cd.cells) {
        UPoly fy = p.substitute(ix, x0).to_upoly(iy);
        if (fy.is_zero()) return std::nullopt;
        Range ry = finite_range(dom.lo[iy], dom.hi[iy], {fy});
        auto cdy = decompose({fy}, ry.lo, ry.hi);
        for (const auto& y0 : cdy.cells) {
            int v = fy.sign_at(y0);
            QVec w = base;
            w[ix] = x0;
            w[iy] = y0;
            if (v > 0 && !s.pos) {
                s.pos = true;
                s.wpos = w;
            }
            if (v < 0 && !s.neg) {
                s.neg = true;
                s.wneg = w;
            }
        }
        if (!cdy.roots.empty()) s.zero = true;
    }
    for (const auto& xi : cd.roots) {
        if (xi.is_rational()) {
            UPoly fy = p.substitute(ix, xi.rational()).to_upoly(iy);
            if (fy.is_zero()) {
                s.zero = true;
                continue;
            }
            Range ry = finite_range(dom.lo[iy], dom.hi[iy], {fy});
            if (!real_roots(fy, ry.lo, ry.hi).empty()) s.zero = true;
            continue;
        }
        std::vector<std::string> v2{vars[ix]};
        MPoly m = MPoly::from_upoly(xi.poly(), vars, ix);
        MPoly sres = resultant(m, p, vars[ix]);
        if (sres.is_zero()) return std::nullopt;
        UPoly sy = sres.with_vars(vars).to_upoly(iy);
        Range ry = finite_range(dom.lo[iy], dom.hi[iy], {sy});
        if (!real_roots(sy, ry.lo, ry.hi).empty()) {
            if (s.pos && s.neg) continue;
            return std::nullopt;
        }
    }
    return s;
}

}  // namespace

SignDecision decide_sign(const MPoly& p0, const Domain& dom, const SignOptions& opt) {
    for (size_t i = 0; i < dom.vars.size(); ++i)
        if (dom.lo[i] && dom.hi[i] && !(*dom.lo[i] < *dom.hi[i])) throw EmptyDomain("decide_sign: empty box");
    MPoly p = p0.with_vars(dom.vars);
    Domain d = dom;
    for (auto& g : d.side) g = g.with_vars(dom.vars);
    SignDecision out;
    size_t n = dom.vars.size();
    QVec base(n);
    for (size_t i = 0; i < n; ++i) base[i] = interior_point(dom.lo[i], dom.hi[i]);

    if (p.is_zero()) {
        out.verdict = Verdict::IdenticallyZero;
        out.certificate = "coefficient-sign";
        out.trail.push_back("zero polynomial");
        return out;
    }

    // rung 1: coefficient signs on a nonnegative box
    bool nonneg_box = true;
    for (size_t i : p.support()) nonneg_box = nonneg_box && dom.lo[i] && *dom.lo[i] >= 0;
    int csign = 0;
    bool uniform = true;
    for (const auto& [e, c] : p.terms()) {
        int s = sgn(c);
        if (csign == 0) csign = s;
        else if (s != csign) uniform = false;
    }
    QVec pos, neg, any;
    if (nonneg_box && uniform) {
        bool have_point = d.side.empty();
        if (have_point) any = base;
        else {
            rung_grid(p, d, opt, pos, neg, any);
            have_point = !any.empty();
        }
        if (!have_point) {
            out.trail.push_back("coefficient-sign: no domain point found");
        } else {
            out.verdict = csign > 0 ? Verdict::AllPositive : Verdict::AllNegative;
            out.certificate = "coefficient-sign";
            out.witnesses.push_back(any);
            out.trail.push_back("coefficient-sign");
            return out;
        }
    }

    // rung 2: dyadic grid witnesses
    out.trail.push_back("grid");
    if (rung_grid(p, d, opt, pos, neg, any)) {
        out.verdict = Verdict::Mixed;
        out.certificate = "witness-pair";
        out.witnesses = {pos, neg};
        return out;
    }

    // rung 3: reduce to at most two effective variables and isolate roots
    out.trail.push_back("root-isolation");
    MPoly r = p;
    bool removable = true;
    MPoly probe = r;
    auto content = probe.remove_monomial_content();
    for (size_t i = 0; i < n; ++i)
        if (content[i] % 2 && !(dom.lo[i] && *dom.lo[i] >= 0)) removable = false;
    if (removable) r = probe;
    std::set<size_t> eff;
    for (size_t i : r.support()) eff.insert(i);
    for (const auto& g : d.side)
        for (size_t i : g.support()) eff.insert(i);
    std::optional<SignSet> ss;
    try {
        if (eff.empty()) {
            SignSet s;
            s.feasible = true;
            int v = sgn(r.constant_term());
            (v > 0 ? s.pos : s.neg) = true;
            (v > 0 ? s.wpos : s.wneg) = base;
            ss = s;
        } else if (eff.size() == 1) {
            ss = univariate(r, d, *eff.begin(), base);
        } else if (eff.size() == 2 && d.side.empty()) {
            auto it = eff.begin();
            size_t ix = *it++, iy = *it;
            if (r.degree(iy) > r.degree(ix)) std::swap(ix, iy);
            ss = bivariate(r, d, ix, iy, base);
        }
    } catch (const std::domain_error&) {
        ss.reset();
    }
    if (!ss) {
        out.verdict = Verdict::Unresolved;
        out.certificate.clear();
        out.trail.push_back("unresolved");
        if (!any.empty()) out.witnesses.push_back(any);
        return out;
    }
    if (!ss->feasible) throw EmptyDomain("decide_sign: side constraints have no solution");
    out.verdict = verdict_of(*ss);
    out.certificate = out.verdict == Verdict::Mixed ? "witness-pair" : "root-isolation";
    if (out.verdict == Verdict::Mixed) out.witnesses = {ss->wpos, ss->wneg};
    else if (ss->pos) out.witnesses = {ss->wpos};
    else if (ss->neg) out.witnesses = {ss->wneg};
    return out;
}

bool verify_witnesses(const MPoly& p, const Domain& dom, const SignDecision& d) {
    if (d.verdict != Verdict::Mixed) return true;
    if (d.witnesses.size() != 2) return false;
    const auto& a = d.witnesses[0];
    const auto& b = d.witnesses[1];
    return dom.contains(a) && dom.contains(b) && eval_direct(p, dom.vars, a) > 0 && eval_direct(p, dom.vars, b) < 0;
}

}  // namespace crn
