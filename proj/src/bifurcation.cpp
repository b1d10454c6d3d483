#include "crnbif/bifurcation.hpp"

#include "crnbif/enumerate.hpp"
#include "crnbif/focal.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace crn {

std::string to_string(FoldKind k) {
    switch (k) {
        case FoldKind::None: return "none";
        case FoldKind::Nondegenerate: return "fold";
        case FoldKind::NilpotentOnly: return "nilpotent-only";
        case FoldKind::Vertical: return "vertical";
    }
    return "?";
}

std::string to_string(HopfKind k) {
    switch (k) {
        case HopfKind::None: return "none";
        case HopfKind::Supercritical: return "supercritical";
        case HopfKind::Subcritical: return "subcritical";
        case HopfKind::Vertical: return "vertical";
        case HopfKind::Mixed: return "mixed";
        case HopfKind::Bautin: return "bautin";
    }
    return "?";
}

std::string to_string(BTKind k) {
    switch (k) {
        case BTKind::None: return "none";
        case BTKind::Supercritical: return "supercritical";
        case BTKind::Subcritical: return "subcritical";
        case BTKind::Vertical: return "vertical";
        case BTKind::MixedSigma: return "mixed-sigma";
    }
    return "?";
}

std::string to_string(OriginKind k) {
    switch (k) {
        case OriginKind::NoBoundaryEquilibrium: return "no-boundary-equilibrium";
        case OriginKind::StableHyperbolic: return "stable-hyperbolic";
        case OriginKind::StableCenterManifold: return "stable-center-manifold";
        case OriginKind::Saddle: return "saddle";
        case OriginKind::Unstable: return "unstable";
        case OriginKind::Undetermined: return "undetermined";
    }
    return "?";
}

namespace {

void require_planar(const Network& net, const char* what) {
    if (net.n() != 2 || net.rank() != 2) throw std::invalid_argument(std::string(what) + ": needs a planar rank-2 network");
}

long to_long(const Q& q) { return q.get_num().get_si(); }

// Cells of (0,1) for a family of polynomials in a; constant or zero members
// are dropped. Without a parameter the single sample 1/2 stands for the
// constant reduction.
CellDecomposition cells_of(const Reduction& red, std::vector<UPoly> polys) {
    if (!red.parameterised()) return {{}, {Q(1, 2)}};
    std::vector<UPoly> keep;
    for (auto& p : polys)
        if (!p.is_constant()) keep.push_back(p);
    if (keep.empty()) return {{}, {Q(1, 2)}};
    return decompose(keep, 0, 1);
}

std::string show(const Q& q) { return q.get_str(); }

// u-field diag(s0, s1) Gamma (v ∘ (1+w)^A), with the equilibrium moved to w = 0.
template <class K>
std::array<BPoly<K>, 2> u_field(const Network& net, const std::vector<K>& v, const K& s0, const K& s1) {
    using BP = BPoly<K>;
    QMatrix G = net.gamma(), A = net.A();
    BP one = BP::constant(K(Q(1)));
    std::array<BP, 2> f;
    for (size_t j = 0; j < net.m(); ++j) {
        BP mon = bpow(BP::w1() + one, static_cast<int>(to_long(A(j, 0)))) * bpow(BP::w2() + one, static_cast<int>(to_long(A(j, 1))));
        for (size_t i = 0; i < 2; ++i)
            if (G(i, j) != 0) f[i] = f[i] + mon.scaled(v[j] * K(G(i, j)) * (i == 0 ? s0 : s1));
    }
    return f;
}

template <class K>
std::vector<K> etas_at(const Network& net, const Reduction& red, const K& alpha, const K& t, int order) {
    std::vector<K> v;
    for (const auto& p : red.v) v.push_back(p.eval_in<K>(alpha));
    return focal_etas(u_field<K>(net, v, K(Q(1)), t), order);
}

}  // namespace

// ---------------------------------------------------------------- fold

FoldVerdict fold_analysis(const Network& net) {
    require_planar(net, "fold_analysis");
    FoldVerdict out;
    Reduction red = reduce(net);
    if (red.det.is_zero()) {
        out.kind = FoldKind::Vertical;
        out.trail.push_back("det M identically zero: every positive equilibrium is degenerate");
        return out;
    }
    if (red.parameterised()) out.roots = real_roots(red.det, 0, 1);
    if (out.roots.empty()) {
        out.trail.push_back("det M = " + red.det.to_string() + " has no zero in (0,1)");
        return out;
    }
    for (auto& r : out.roots) {
        int sp = r.sign_of(red.P()), sq = r.sign_of(red.Qp());
        if (sp == 0 && sq == 0) {
            out.trail.push_back("root " + r.to_string() + ": M00 = M11 = 0, nilpotent Jacobian");
            continue;
        }
        // at det = 0 the second eigenvalue is tr J = P/x + Q/y
        if (sp < 0 || sq < 0) out.eig2_negative = true;
        if (sp > 0 || sq > 0) out.eig2_positive = true;
        if (!out.witness) out.witness = r;
        out.trail.push_back("root " + r.to_string() + ": sign M00 = " + std::to_string(sp) + ", sign M11 = " + std::to_string(sq));
    }
    out.kind = out.witness ? FoldKind::Nondegenerate : FoldKind::NilpotentOnly;
    return out;
}

namespace {

const std::vector<std::pair<std::string, Network>>& rank_one_patterns() {
    static const std::vector<std::pair<std::string, Network>> pats = {
        {"1", parse_network("0 -> X; X -> 0; 2X -> 3X")},
        {"2a", parse_network("0 -> X+Y; X+Y -> 0; 2X -> 3X+Y")},
        {"2b", parse_network("Y -> X+2Y; X+Y -> 0; 2X -> 3X+Y")},
        {"2c", parse_network("2Y -> X+3Y; X+Y -> 0; 2X -> 3X+Y")},
    };
    return pats;
}

}  // namespace

RankOneFold rank_one_fold(const Network& net) {
    if (net.rank() != 1) throw std::invalid_argument("rank_one_fold: network rank is not 1");
    RankOneFold out;
    size_t n = net.n();
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        std::vector<size_t> del;
        for (size_t i = 0; i < n; ++i)
            if (mask >> i & 1) del.push_back(i);
        if (del.size() == n) continue;
        Network sub = net.delete_species(del);
        auto triv = sub.trivial_species();
        if (!triv.empty()) sub = sub.delete_species(triv);
        if (sub.n() == 0 || sub.n() > 2 || sub.m() < 3) continue;
        size_t m = sub.m();
        for (size_t a = 0; a < m; ++a)
            for (size_t b = a + 1; b < m; ++b)
                for (size_t c = b + 1; c < m; ++c) {
                    std::vector<size_t> drop;
                    for (size_t j = 0; j < m; ++j)
                        if (j != a && j != b && j != c) drop.push_back(j);
                    Network three = sub.delete_reactions(drop);
                    for (const auto& [name, pat] : rank_one_patterns()) {
                        if (pat.n() != three.n()) continue;
                        if (equivalent(three, pat, EquivalenceMode::Simple)) {
                            out.found = true;
                            out.witness = three;
                            out.pattern = name;
                            return out;
                        }
                    }
                }
    }
    return out;
}

// ---------------------------------------------------------------- Hopf

HopfFeasibility hopf_analysis(const Network& net) {
    require_planar(net, "hopf_analysis");
    HopfFeasibility out;
    if (!has_mixed_source(net)) {
        out.trail.push_back("no source involves both species: tr J and det J cannot be 0 and > 0 together");
        return out;
    }
    Reduction red = reduce(net);
    const UPoly &q = red.det, &P = red.P(), &Qp = red.Qp();
    auto cd = cells_of(red, {q, P, Qp});
    for (const auto& a : cd.cells) {
        int sq = q.sign_at(a), sp = P.sign_at(a), sQ = Qp.sign_at(a);
        if (sq > 0 && sp * sQ < 0) {
            HopfWitness w;
            w.alpha = a;
            w.x = -P.eval(a) / Qp.eval(a);
            w.y = 1;
            w.kappa = realise_kappa(net, red, a, {w.x, w.y});
            out.witness = w;
            out.trail.push_back("cell sample a = " + show(a) + ": det M > 0 and M00 M11 < 0, t = " + show(w.x));
            break;
        }
    }
    if (!out.witness) {
        // tr M vanishing identically in (x, y) needs M00 = M11 = 0
        std::vector<std::pair<Q, bool>> cands;
        for (const auto& a : cd.cells) cands.push_back({a, true});
        for (const auto& r : cd.roots)
            if (r.is_rational()) cands.push_back({r.rational(), false});
        for (const auto& [a, cell] : cands) {
            if (q.sign_at(a) > 0 && P.sign_at(a) == 0 && Qp.sign_at(a) == 0) {
                HopfWitness w;
                w.alpha = a;
                w.x = 1;
                w.y = 1;
                w.kappa = realise_kappa(net, red, a, {w.x, w.y});
                w.vertical = true;
                out.witness = w;
                out.trail.push_back("a = " + show(a) + ": M00 = M11 = 0 with det M > 0, tr J = 0 for all x");
                break;
            }
        }
    }
    out.imaginary_pair = out.witness.has_value();
    if (!out.imaginary_pair) {
        out.trail.push_back("no a in (0,1) with det M > 0 and M00 M11 <= 0 on a trace zero");
        return out;
    }
    if (!has_autocatalytic_square(net)) {
        out.trail.push_back("imaginary pair exists but no 2X -> 3X or 2Y -> 3Y: no Hopf bifurcation");
        return out;
    }
    out.feasible = true;
    return out;
}

std::vector<Q> focal_at(const Network& net, const Q& alpha, const Q& t, int order) {
    require_planar(net, "focal_at");
    Reduction red = reduce(net);
    return etas_at<Q>(net, red, alpha, t, order);
}

namespace {

// Cauchy bound on the positive roots of num and den.
Q root_bound(const RatFunc& f) {
    Q b = 1;
    for (const UPoly* p : {&f.num(), &f.den()}) {
        if (p->degree() <= 0) continue;
        Q m = 0;
        for (int i = 0; i < p->degree(); ++i) m = std::max(m, qabs(p->coeff(i) / p->lead()));
        b = std::max(b, Q(m + 1));
    }
    return b;
}

void record_zero(FocalResult& out, const std::string& where, const std::vector<QuadNum>& e) {
    out.l1_zeros.push_back(where);
    int s2 = e.size() > 1 ? e[1].sign() : 0, s3 = e.size() > 2 ? e[2].sign() : 0;
    if (out.l2_sign == 0 && out.l3_sign == 0) {
        out.l2_sign = s2;
        out.l3_sign = s3;
    }
    out.trail.push_back("L1 = 0 at " + where + ": sign L2 = " + std::to_string(s2) + ", sign L3 = " + std::to_string(s3));
}

}  // namespace

FocalResult focal_values(const Network& net, int order) {
    require_planar(net, "focal_values");
    FocalResult out;
    auto hf = hopf_analysis(net);
    if (!hf.imaginary_pair) {
        out.trail.push_back("no imaginary pair");
        return out;
    }
    Reduction red = reduce(net);
    const UPoly &q = red.det, &P = red.P(), &Qp = red.Qp();
    std::optional<std::pair<Q, Q>> sample;  // (a, t) on the variety

    // graph component t = -P/Q, scaling diag(Q^2, -PQ) = Q^2 diag(1, t)
    if (!P.is_zero() && !Qp.is_zero() && red.parameterised()) {
        std::vector<RatFunc> v;
        for (const auto& p : red.v) v.emplace_back(p);
        auto f = u_field<RatFunc>(net, v, RatFunc(Qp * Qp), RatFunc(-(P * Qp)));
        RatFunc eta = focal_etas(f, 1)[0];
        out.graph_l1 = eta;
        auto cd = cells_of(red, {q, P, Qp, eta.num(), eta.den()});
        for (const auto& a : cd.cells) {
            if (q.sign_at(a) <= 0 || P.sign_at(a) * Qp.sign_at(a) >= 0) continue;
            out.l1_signs.insert(eta.is_zero() ? 0 : sgn(eta.eval(a)));
            if (!sample) sample = std::make_pair(a, -P.eval(a) / Qp.eval(a));
        }
        if (!eta.is_zero()) {
            for (const auto& r : cd.roots) {
                if (r.sign_of(q) <= 0 || r.sign_of(P) * r.sign_of(Qp) >= 0 || r.sign_of(eta.num()) != 0) continue;
                auto a0 = QuadNum::from_algebraic(r);
                if (!a0) {
                    out.trail.push_back("L1 zero " + r.to_string() + " is not quadratic; higher focal values skipped");
                    continue;
                }
                QuadNum t0 = QuadNum(0) - P.eval_in<QuadNum>(*a0) / Qp.eval_in<QuadNum>(*a0);
                record_zero(out, "a = " + a0->to_string(), etas_at<QuadNum>(net, red, *a0, t0, order));
            }
        }
        out.trail.push_back("graph component: eta4(a) = " + eta.to_string());
    }

    // vertical components: M00 = M11 = 0 at a*, any t > 0
    std::vector<Q> astars;
    if (P.is_zero() && Qp.is_zero()) {
        auto cd = cells_of(red, {q});
        for (const auto& a : cd.cells)
            if (q.sign_at(a) > 0) astars.push_back(a);
        out.trail.push_back("M00 and M11 vanish identically; sampled one a per cell");
    } else if (red.parameterised()) {
        UPoly g = P.is_zero() ? Qp : Qp.is_zero() ? P : gcd(P, Qp);
        if (!g.is_constant()) {
            for (const auto& r : real_roots(g, 0, 1)) {
                if (r.sign_of(q) <= 0) continue;
                if (!r.is_rational()) {
                    out.trail.push_back("vertical value a = " + r.to_string() + " is irrational; skipped");
                    continue;
                }
                astars.push_back(r.rational());
            }
        }
    } else if (P.is_zero() || Qp.is_zero()) {
        if (P.is_zero() && Qp.is_zero() && q.sign_at(Q(1, 2)) > 0) astars.push_back(Q(1, 2));
    }
    for (const Q& as : astars) {
        std::vector<RatFunc> v;
        for (const auto& p : red.v) v.emplace_back(p.eval(as));
        auto f = u_field<RatFunc>(net, v, RatFunc(1), RatFunc(UPoly::x()));
        RatFunc eta = focal_etas(f, 1)[0];
        out.vertical_l1.push_back({as, eta});
        out.trail.push_back("vertical component a = " + show(as) + ": eta4(t) = " + eta.to_string("t"));
        if (eta.is_zero()) {
            out.l1_signs.insert(0);
            if (!sample) sample = std::make_pair(as, Q(1));
            continue;
        }
        Q hi = root_bound(eta);
        auto cd = decompose({eta.num(), eta.den()}, 0, hi);
        for (const auto& t : cd.cells) out.l1_signs.insert(sgn(eta.eval(t)));
        out.l1_signs.insert(sgn(eta.eval(hi + 1)));
        for (const auto& r : cd.roots) {
            if (r.sign_of(eta.num()) != 0) continue;
            auto t0 = QuadNum::from_algebraic(r);
            if (!t0) continue;
            record_zero(out, "a = " + show(as) + ", t = " + t0->to_string(), etas_at<QuadNum>(net, red, QuadNum(as), *t0, order));
        }
    }

    const auto& S = out.l1_signs;
    bool neg = S.count(-1), pos = S.count(1);
    if (S.empty()) {
        out.trail.push_back("no open cell of the Hopf variety");
    } else if (neg && pos) {
        if (out.l1_zeros.empty()) {
            out.kind = HopfKind::Mixed;
            out.trail.push_back("L1 takes both signs on separate components");
        } else if (out.l2_sign != 0) {
            out.kind = HopfKind::Bautin;
        } else {
            out.kind = out.l3_sign != 0 ? HopfKind::Bautin : HopfKind::Mixed;
        }
    } else if (neg) {
        out.kind = HopfKind::Supercritical;
    } else if (pos) {
        out.kind = HopfKind::Subcritical;
    } else {
        out.kind = HopfKind::Vertical;
        if (sample && order >= 3) {
            auto e = etas_at<Q>(net, red, sample->first, sample->second, order);
            out.higher_vanish_checked = std::all_of(e.begin(), e.end(), [](const Q& x) { return x == 0; });
            if (!out.higher_vanish_checked) {
                int s = 0;
                for (const auto& x : e)
                    if (!s) s = sgn(x);
                out.kind = s < 0 ? HopfKind::Supercritical : HopfKind::Subcritical;
                out.trail.push_back("L1 vanishes identically but a higher focal value does not");
            } else {
                out.trail.push_back("L1 = L2 = L3 = 0 at a = " + show(sample->first) + ", t = " + show(sample->second));
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------- BT

BTSearch bt_point_search(const Network& net) {
    require_planar(net, "bt_point_search");
    BTSearch out;
    auto fold = fold_analysis(net);
    auto hopf = hopf_analysis(net);
    out.candidate = (fold.kind == FoldKind::Nondegenerate || fold.kind == FoldKind::NilpotentOnly) && hopf.feasible;
    if (!out.candidate) {
        out.trail.push_back("not both fold- and Hopf-capable");
        return out;
    }
    Reduction red = reduce(net);
    for (const auto& r : fold.roots) {
        int sp = r.sign_of(red.P()), sq = r.sign_of(red.Qp());
        if (sp * sq >= 0) {
            out.trail.push_back("root " + r.to_string() + ": M00 M11 >= 0, no trace zero");
            continue;
        }
        auto a = QuadNum::from_algebraic(r);
        if (!a) throw std::logic_error("bt_point_search: det M root of degree > 2");
        QuadNum t = QuadNum(0) - red.P().eval_in<QuadNum>(*a) / red.Qp().eval_in<QuadNum>(*a);
        out.points.push_back({r, *a, t});
        out.trail.push_back("double zero at a = " + a->to_string() + ", x/y = " + t.to_string());
    }
    out.feasible = !out.points.empty();
    return out;
}

namespace {

struct PointData {
    QuadNum x[2];
    std::vector<QuadNum> kappa;
    QuadNum J[2][2];
    // B[i][k][l]
    QuadNum B[2][2][2];
};

PointData point_data(const Network& net, const BTPoint& pt, const Q& y) {
    Reduction red = reduce(net);
    QMatrix G = net.gamma(), A = net.A();
    PointData d;
    d.x[0] = pt.t * QuadNum(y);
    d.x[1] = QuadNum(y);
    for (size_t j = 0; j < net.m(); ++j) {
        QuadNum v = red.v[j].eval_in<QuadNum>(pt.a);
        QuadNum k = v;
        for (size_t i = 0; i < 2; ++i)
            for (long e = to_long(A(j, i)); e > 0; --e) k = k / d.x[i];
        d.kappa.push_back(k);
        // the rate at the point equals v_j
        for (size_t i = 0; i < 2; ++i) {
            if (G(i, j) == 0) continue;
            QuadNum gv = v * QuadNum(G(i, j));
            for (size_t k2 = 0; k2 < 2; ++k2) {
                d.J[i][k2] += gv * QuadNum(A(j, k2)) / d.x[k2];
                for (size_t l = 0; l < 2; ++l) {
                    Q h = A(j, k2) * A(j, l) - (k2 == l ? A(j, k2) : Q(0));
                    if (h != 0) d.B[i][k2][l] += gv * QuadNum(h) / (d.x[k2] * d.x[l]);
                }
            }
        }
    }
    return d;
}

using QV2 = std::array<QuadNum, 2>;

QuadNum dot(const QV2& a, const QV2& b) { return a[0] * b[0] + a[1] * b[1]; }

QV2 bilin(const PointData& d, const QV2& u, const QV2& w) {
    QV2 r;
    for (size_t i = 0; i < 2; ++i)
        for (size_t k = 0; k < 2; ++k)
            for (size_t l = 0; l < 2; ++l) r[i] += d.B[i][k][l] * u[k] * w[l];
    return r;
}

}  // namespace

BTNormalForm bt_normal_form(const Network& net, const BTPoint& pt, const Q& y) {
    auto d = point_data(net, pt, y);
    const auto& J = d.J;
    QV2 q0, q1, r, p0, p1;
    bool row0 = !is_zero(J[0][0]) || !is_zero(J[0][1]);
    q0 = row0 ? QV2{QuadNum(0) - J[0][1], J[0][0]} : QV2{QuadNum(0) - J[1][1], J[1][0]};
    if (is_zero(q0[0]) && is_zero(q0[1])) throw std::logic_error("bt_normal_form: Jacobian vanishes");
    // J q1 = q0 through a nonzero row, one free component set to 0
    size_t ri = row0 ? 0 : 1;
    if (!is_zero(J[ri][0]))
        q1 = {q0[ri] / J[ri][0], QuadNum(0)};
    else
        q1 = {QuadNum(0), q0[ri] / J[ri][1]};
    bool col0 = !is_zero(J[0][0]) || !is_zero(J[1][0]);
    r = col0 ? QV2{QuadNum(0) - J[1][0], J[0][0]} : QV2{QuadNum(0) - J[1][1], J[0][1]};
    QuadNum rq1 = dot(r, q1);
    p1 = {r[0] / rq1, r[1] / rq1};
    size_t cj = col0 ? 0 : 1;
    if (!is_zero(J[0][cj]))
        p0 = {p1[cj] / J[0][cj], QuadNum(0)};
    else
        p0 = {QuadNum(0), p1[cj] / J[1][cj]};
    QuadNum nu = QuadNum(0) - dot(p0, q1) / rq1;
    p0 = {p0[0] + nu * r[0], p0[1] + nu * r[1]};

    BTNormalForm nf;
    QV2 B00 = bilin(d, q0, q0), B01 = bilin(d, q0, q1);
    nf.a20 = dot(p0, B00);
    nf.b20 = dot(p1, B00);
    nf.b11 = dot(p1, B01);
    nf.bt1 = !is_zero(nf.b20);
    nf.bt2 = !is_zero(nf.a20 + nf.b11);
    nf.sigma = (nf.bt1 && nf.bt2) ? sgn(nf.b20 * (nf.a20 + nf.b11)) : 0;
    return nf;
}

bool bt_transversality(const Network& net, const BTPoint& pt, const Q& y) {
    auto d = point_data(net, pt, y);
    auto f = mass_action_rhs(net);
    auto vars = rhs_variables(net);
    MPoly J00 = f[0].derivative(0), J01 = f[0].derivative(1), J10 = f[1].derivative(0), J11 = f[1].derivative(1);
    std::vector<MPoly> fs = {f[0], f[1], J00 + J11, J00 * J11 - J01 * J10};
    std::vector<QuadNum> at = {d.x[0], d.x[1]};
    for (const auto& k : d.kappa) at.push_back(k);
    Matrix<QuadNum> D(4, vars.size());
    for (size_t i = 0; i < 4; ++i)
        for (size_t j = 0; j < vars.size(); ++j) D(i, j) = fs[i].derivative(j).eval<QuadNum>(at);
    return D.rank() == 4;
}

BTVerdict bt_analysis(const Network& net) {
    BTVerdict out;
    out.search = bt_point_search(net);
    if (!out.search.feasible) return out;
    std::set<int> sig;
    bool all_t = true;
    for (const auto& pt : out.search.points) {
        auto nf = bt_normal_form(net, pt);
        auto nf2 = bt_normal_form(net, pt, 2);
        if (nf2.sigma != nf.sigma) throw std::logic_error("bt_analysis: sigma depends on the point on the ray");
        sig.insert(nf.sigma);
        out.forms.push_back(nf);
        all_t = all_t && bt_transversality(net, pt);
    }
    out.transversal = all_t;
    if (sig == std::set<int>{0})
        out.kind = BTKind::Vertical;
    else if (sig == std::set<int>{-1})
        out.kind = BTKind::Supercritical;
    else if (sig == std::set<int>{1})
        out.kind = BTKind::Subcritical;
    else
        out.kind = BTKind::MixedSigma;
    return out;
}

// ---------------------------------------------------------------- origin

OriginVerdict origin_stability(const Network& net) {
    if (net.n() != 2) throw std::invalid_argument("origin_stability: needs two species");
    OriginVerdict out;
    for (const auto& s : net.sources())
        if (s.is_zero()) {
            out.kind = OriginKind::NoBoundaryEquilibrium;
            out.detail = "0 is a source, so the origin is not an equilibrium";
            return out;
        }
    std::vector<std::string> kv;
    for (size_t j = 0; j < net.m(); ++j) kv.push_back("k" + std::to_string(j + 1));
    Domain dom = Domain::positive_orthant(kv);
    QMatrix G = net.gamma();
    MPoly zero(kv);
    std::vector<std::vector<MPoly>> J(2, std::vector<MPoly>(2, zero));
    // B[i][k][l] at the origin: only bimolecular sources contribute
    std::vector<std::vector<std::vector<MPoly>>> B(2, std::vector<std::vector<MPoly>>(2, std::vector<MPoly>(2, zero)));
    for (size_t j = 0; j < net.m(); ++j) {
        const auto& s = net.reactions()[j].reactant.s;
        MPoly kj = MPoly::var(kv, j);
        int mol = s[0] + s[1];
        for (size_t i = 0; i < 2; ++i) {
            if (G(i, j) == 0) continue;
            MPoly gk = kj * G(i, j);
            if (mol == 1) {
                size_t k = s[0] ? 0 : 1;
                J[i][k] += gk;
            } else if (mol == 2) {
                for (size_t k = 0; k < 2; ++k)
                    for (size_t l = 0; l < 2; ++l) {
                        int h = s[k] * s[l] - (k == l ? s[k] : 0);
                        if (h) B[i][k][l] += gk * Q(h);
                    }
            }
        }
    }
    MPoly det = J[0][0] * J[1][1] - J[0][1] * J[1][0], tr = J[0][0] + J[1][1];
    auto ds = decide_sign(det, dom), ts = decide_sign(tr, dom);
    out.detail = "det J(0): " + to_string(ds.verdict) + ", tr J(0): " + to_string(ts.verdict);
    if (ds.verdict == Verdict::AllNegative) {
        out.kind = OriginKind::Saddle;
    } else if (ds.verdict == Verdict::AllPositive) {
        if (ts.verdict == Verdict::AllNegative)
            out.kind = OriginKind::StableHyperbolic;
        else if (ts.verdict == Verdict::AllPositive)
            out.kind = OriginKind::Unstable;
    } else if (ds.verdict == Verdict::IdenticallyZero) {
        if (ts.verdict == Verdict::AllPositive) {
            out.kind = OriginKind::Unstable;
        } else if (ts.verdict == Verdict::AllNegative) {
            bool row0 = !J[0][0].is_zero() || !J[0][1].is_zero();
            std::array<MPoly, 2> q0 = row0 ? std::array<MPoly, 2>{-J[0][1], J[0][0]} : std::array<MPoly, 2>{-J[1][1], J[1][0]};
            bool col0 = !J[0][0].is_zero() || !J[1][0].is_zero();
            std::array<MPoly, 2> r = col0 ? std::array<MPoly, 2>{-J[1][0], J[0][0]} : std::array<MPoly, 2>{-J[1][1], J[0][1]};
            // orient q0 into the quadrant
            int orient = 0;
            bool ok = true;
            for (const auto& c : q0) {
                auto v = decide_sign(c, dom).verdict;
                int s = v == Verdict::AllPositive ? 1 : v == Verdict::AllNegative ? -1 : v == Verdict::IdenticallyZero ? 0 : 2;
                if (s == 2 || (s && orient && s != orient)) ok = false;
                if (s && s != 2) orient = s;
            }
            if (ok && orient) {
                if (orient < 0) q0 = {-q0[0], -q0[1]};
                MPoly bq(kv);
                for (size_t i = 0; i < 2; ++i)
                    for (size_t k = 0; k < 2; ++k)
                        for (size_t l = 0; l < 2; ++l) bq += r[i] * B[i][k][l] * q0[k] * q0[l];
                MPoly rq = r[0] * q0[0] + r[1] * q0[1];
                auto cs = decide_sign(bq * rq, dom).verdict;
                out.detail += ", center manifold coefficient: " + to_string(cs);
                if (cs == Verdict::AllNegative)
                    out.kind = OriginKind::StableCenterManifold;
                else if (cs == Verdict::AllPositive)
                    out.kind = OriginKind::Unstable;
            } else {
                out.detail += ", center direction does not enter the quadrant";
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------- cusp

namespace {

struct NumPoint {
    std::vector<double> f;
    double J[2][2];
    double B[2][2][2];
    double scale_f[2];
    double scale_B[2];
};

NumPoint num_point(const Network& net, const std::vector<double>& x, const std::vector<double>& kappa) {
    QMatrix G = net.gamma(), A = net.A();
    NumPoint p{};
    p.f.assign(2, 0.0);
    for (size_t j = 0; j < net.m(); ++j) {
        double rj = kappa[j];
        for (size_t i = 0; i < 2; ++i) rj *= std::pow(x[i], A(j, i).get_d());
        for (size_t i = 0; i < 2; ++i) {
            double g = G(i, j).get_d();
            if (g == 0) continue;
            p.f[i] += g * rj;
            p.scale_f[i] += std::abs(g) * rj;
            for (size_t k = 0; k < 2; ++k) {
                double ak = A(j, k).get_d();
                p.J[i][k] += g * rj * ak / x[k];
                for (size_t l = 0; l < 2; ++l) {
                    double h = ak * A(j, l).get_d() - (k == l ? ak : 0.0);
                    double b = g * rj * h / (x[k] * x[l]);
                    p.B[i][k][l] += b;
                    p.scale_B[i] += std::abs(b);
                }
            }
        }
    }
    return p;
}

}  // namespace

bool cusp_gradient_check(const Network& net, const std::vector<double>& x, const std::vector<double>& kappa, double rel_tol) {
    require_planar(net, "cusp_gradient_check");
    if (x.size() != 2 || kappa.size() != net.m()) throw std::invalid_argument("cusp_gradient_check: dimension mismatch");
    auto p0 = num_point(net, x, kappa);
    const double tol0 = 1e-9;
    for (size_t i = 0; i < 2; ++i)
        if (std::abs(p0.f[i]) > tol0 * p0.scale_f[i]) throw std::invalid_argument("cusp_gradient_check: x is not an equilibrium");
    // squared entry sum: a row of J, or both terms of det J, can vanish on their own
    double jsum = std::abs(p0.J[0][0]) + std::abs(p0.J[0][1]) + std::abs(p0.J[1][0]) + std::abs(p0.J[1][1]);
    double dscale = jsum * jsum;
    double det0 = p0.J[0][0] * p0.J[1][1] - p0.J[0][1] * p0.J[1][0];
    if (std::abs(det0) > tol0 * dscale) throw std::invalid_argument("cusp_gradient_check: det J != 0");
    double tr0 = p0.J[0][0] + p0.J[1][1];
    if (std::abs(tr0) <= tol0 * (std::abs(p0.J[0][0]) + std::abs(p0.J[1][1]))) throw std::invalid_argument("cusp_gradient_check: zero eigenvalue is not simple");

    // null vectors from the larger row and column; the other may be pure rounding
    bool row0 = std::abs(p0.J[0][0]) + std::abs(p0.J[0][1]) >= std::abs(p0.J[1][0]) + std::abs(p0.J[1][1]);
    double q[2] = {row0 ? -p0.J[0][1] : -p0.J[1][1], row0 ? p0.J[0][0] : p0.J[1][0]};
    bool col0 = std::abs(p0.J[0][0]) + std::abs(p0.J[1][0]) >= std::abs(p0.J[0][1]) + std::abs(p0.J[1][1]);
    double pl[2] = {col0 ? -p0.J[1][0] : -p0.J[1][1], col0 ? p0.J[0][0] : p0.J[0][1]};

    auto rc = recoordinatise(net);
    QMatrix A = net.A();
    size_t m = net.m();
    std::vector<std::vector<double>> dirs;
    for (size_t k = 0; k < 2; ++k) {
        std::vector<double> d(m);
        for (size_t j = 0; j < m; ++j) d[j] = A(j, k).get_d();
        dirs.push_back(d);
    }
    dirs.push_back(std::vector<double>(m, 1.0));

    const double h = 1e-3;
    for (const auto& dl : dirs) {
        double g[2] = {0, 0}, vd = 0;
        for (size_t j = 0; j < m; ++j) {
            for (size_t i = 0; i < 2; ++i) g[i] += rc.G(i, j).get_d() * dl[j];
            vd += rc.v(0, j).get_d() * dl[j];
        }
        auto phi = [&](double s) {
            std::vector<double> xs(2), ks(m);
            for (size_t i = 0; i < 2; ++i) xs[i] = x[i] * std::exp(-s * g[i]);
            for (size_t j = 0; j < m; ++j) ks[j] = kappa[j] * std::exp(s * dl[j]);
            auto ps = num_point(net, xs, ks);
            double qs[2] = {q[0] * std::exp(-s * g[0]), q[1] * std::exp(-s * g[1])};
            double Gs = 0;
            for (size_t i = 0; i < 2; ++i)
                for (size_t k = 0; k < 2; ++k)
                    for (size_t l = 0; l < 2; ++l) Gs += pl[i] * ps.B[i][k][l] * qs[k] * qs[l];
            double c = std::exp(-s * vd);
            return std::array<double, 4>{ps.f[0], ps.f[1], ps.J[0][0] * ps.J[1][1] - ps.J[0][1] * ps.J[1][0], c * Gs};
        };
        auto plus = phi(h), minus = phi(-h);
        double gscale = 0;
        for (size_t i = 0; i < 2; ++i)
            gscale += std::abs(pl[i]) * p0.scale_B[i] * std::max(std::abs(q[0]), std::abs(q[1])) * std::max(std::abs(q[0]), std::abs(q[1]));
        double scales[4] = {p0.scale_f[0], p0.scale_f[1], dscale, gscale};
        for (size_t c = 0; c < 4; ++c) {
            double deriv = (plus[c] - minus[c]) / (2 * h);
            if (std::abs(deriv) > rel_tol * std::max(scales[c], 1e-300)) return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------- reports

AnalysisReport analyze(const Network& net, const AnalyzeOptions& opt) {
    AnalysisReport rep;
    rep.net = net;
    if (net.is_quadratic()) rep.flags.push_back("quadratic");
    if (net.max_reactant_molecularity() <= 2 && net.max_product_molecularity() <= 2) rep.flags.push_back("bimolecular");
    if (net.n() == 2) {
        if (has_mixed_source(net)) rep.flags.push_back("mixed-source");
        if (has_autocatalytic_square(net)) rep.flags.push_back("autocatalytic-square");
        if (sources_collinear(net.sources())) rep.flags.push_back("sources-collinear");
    }
    auto note = [&](const std::vector<std::string>& t, const std::string& tag) {
        for (const auto& s : t) rep.trail.push_back(tag + ": " + s);
    };
    try {
        rep.nontrivial = is_dynamically_nontrivial(net);
        if (!rep.nontrivial) {
            rep.trail.push_back("no positive vector in ker Gamma: dynamically trivial");
            return rep;
        }
        if (net.rank() == 1 && net.is_quadratic()) {
            rep.rank_one = rank_one_fold(net);
            rep.trail.push_back(rep.rank_one->found ? "rank one: induced pattern " + rep.rank_one->pattern : "rank one: no fold pattern");
        }
        rep.planar = net.n() == 2 && net.rank() == 2 && kernel_cone(net).generators.size() <= 2;
        if (!rep.planar) {
            rep.trail.push_back("not planar rank 2 with a kernel cone of at most two rays; no bifurcation analysis");
            return rep;
        }
        rep.nondegenerate = admits_positive_nondegenerate_equilibrium(net).admits;
        rep.fold = fold_analysis(net);
        note(rep.fold->trail, "fold");
        rep.hopf = hopf_analysis(net);
        note(rep.hopf->trail, "hopf");
        if (opt.focal && rep.hopf->imaginary_pair) {
            rep.focal = focal_values(net);
            note(rep.focal->trail, "focal");
        }
        bool fold_capable = rep.fold->kind == FoldKind::Nondegenerate || rep.fold->kind == FoldKind::NilpotentOnly;
        if (fold_capable && rep.hopf->feasible) {
            rep.bt = bt_analysis(net);
            note(rep.bt->search.trail, "bt");
        }
        if (opt.origin && rep.fold->kind == FoldKind::Nondegenerate) {
            rep.origin = origin_stability(net);
            rep.trail.push_back("origin: " + rep.origin->detail);
            rep.bistable = rep.fold->eig2_negative && rep.origin->stable();
        }
    } catch (const std::runtime_error& e) {
        rep.unresolved = true;
        rep.trail.push_back(std::string("unresolved: ") + e.what());
    }
    return rep;
}

namespace {

nlohmann::ordered_json qvec_json(const QVec& v) {
    auto a = nlohmann::ordered_json::array();
    for (const auto& x : v) a.push_back(x.get_str());
    return a;
}

}  // namespace

nlohmann::ordered_json to_json(const AnalysisReport& r) {
    using J = nlohmann::ordered_json;
    J out;
    out["network"] = format_network_raw(r.net);
    out["flags"] = r.flags;
    out["nontrivial"] = r.nontrivial;
    out["unresolved"] = r.unresolved;
    J fold = nullptr;
    if (r.fold) {
        fold = J::object();
        fold["verdict"] = to_string(r.fold->kind);
        fold["witness"] = r.fold->witness ? J(r.fold->witness->to_string()) : J(nullptr);
        J e = J::array();
        if (r.fold->eig2_negative) e.push_back(-1);
        if (r.fold->eig2_positive) e.push_back(1);
        fold["eig2_signs"] = e;
    } else if (r.rank_one) {
        fold = J::object();
        fold["verdict"] = r.rank_one->found ? "fold" : "none";
        fold["witness"] = r.rank_one->witness ? J(format_network_raw(*r.rank_one->witness)) : J(nullptr);
        fold["pattern"] = r.rank_one->pattern;
        fold["eig2_signs"] = J::array();
    }
    out["fold"] = fold;
    J hopf = nullptr;
    if (r.hopf) {
        hopf = J::object();
        std::string v = r.hopf->feasible ? "feasible" : r.hopf->imaginary_pair ? "imaginary-pair-only" : "none";
        if (r.focal && r.hopf->feasible) v = to_string(r.focal->kind);
        hopf["verdict"] = v;
        J l1 = nullptr;
        if (r.focal) {
            if (r.focal->l1_signs.size() == 1)
                l1 = *r.focal->l1_signs.begin();
            else if (!r.focal->l1_signs.empty())
                l1 = "mixed";
        }
        hopf["L1_sign"] = l1;
        hopf["L2_sign"] = r.focal && !r.focal->l1_zeros.empty() ? J(r.focal->l2_sign) : J(nullptr);
        hopf["L3_sign"] = r.focal && !r.focal->l1_zeros.empty() ? J(r.focal->l3_sign) : J(nullptr);
        if (r.hopf->witness) {
            const auto& w = *r.hopf->witness;
            hopf["witness"] = {{"alpha", w.alpha.get_str()}, {"x", qvec_json({w.x, w.y})}, {"kappa", qvec_json(w.kappa)}, {"vertical", w.vertical}};
        } else {
            hopf["witness"] = nullptr;
        }
    }
    out["hopf"] = hopf;
    J bt = nullptr;
    if (r.bt) {
        bt = J::object();
        bt["verdict"] = to_string(r.bt->kind);
        J sig = J::array(), a20 = J::array(), b20 = J::array(), b11 = J::array();
        for (const auto& f : r.bt->forms) {
            sig.push_back(f.sigma);
            a20.push_back(f.a20.to_string());
            b20.push_back(f.b20.to_string());
            b11.push_back(f.b11.to_string());
        }
        bt["sigma"] = sig;
        bt["a20"] = a20;
        bt["b20"] = b20;
        bt["b11"] = b11;
        bt["transversal"] = r.bt->transversal ? J(*r.bt->transversal) : J(nullptr);
    }
    out["bt"] = bt;
    out["origin"] = r.origin ? J(to_string(r.origin->kind)) : J(nullptr);
    out["bistable"] = r.bistable;
    out["decision_trail"] = r.trail;
    return out;
}

}  // namespace crn
