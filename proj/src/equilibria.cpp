#include "crnbif/equilibria.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

namespace crn {

namespace {

std::vector<Z> integer_normalise(const QVec& v) {
    Z l = 1;
    for (const auto& q : v) l = lcm(l, Z(q.get_den()));
    std::vector<Z> out;
    Z g = 0;
    for (const auto& q : v) {
        Z z = Z(q * Q(l));
        out.push_back(z);
        g = gcd(g, z);
    }
    if (g != 0 && g != 1)
        for (auto& z : out) z /= g;
    return out;
}

template <class T>
T det_small(const std::vector<std::vector<T>>& m) {
    size_t n = m.size();
    if (n == 1) return m[0][0];
    if (n == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
    T d = m[0][0] - m[0][0];
    for (size_t j = 0; j < n; ++j) {
        std::vector<std::vector<T>> minor;
        for (size_t i = 1; i < n; ++i) {
            std::vector<T> row;
            for (size_t k = 0; k < n; ++k)
                if (k != j) row.push_back(m[i][k]);
            minor.push_back(row);
        }
        T c = m[0][j] * det_small(minor);
        d = (j % 2 == 0) ? d + c : d - c;
    }
    return d;
}

QMatrix A_one(const Network& net) {
    QMatrix A = net.A();
    QMatrix B(net.m(), net.n() + 1);
    for (size_t j = 0; j < net.m(); ++j) {
        for (size_t i = 0; i < net.n(); ++i) B(j, i) = A(j, i);
        B(j, net.n()) = 1;
    }
    return B;
}

std::vector<std::string> species_vars(const Network& net) {
    std::vector<std::string> v;
    auto all = rhs_variables(net);
    for (size_t i = 0; i < net.n(); ++i) v.push_back(all[i]);
    return v;
}

}  // namespace

KernelCone kernel_cone(const Network& net) {
    if (!positive_kernel(net).feasible) throw std::invalid_argument("kernel_cone: network is dynamically trivial");
    QMatrix g = net.gamma();
    auto basis = g.nullspace();
    size_t m = net.m(), d = basis.size();
    KernelCone kc;
    kc.dimension = d;
    std::set<std::vector<Z>> rays;
    // a ray has at least d-1 zero coordinates; try every such zero pattern
    std::vector<bool> pick(m, false);
    std::fill(pick.begin(), pick.begin() + static_cast<long>(d - 1), true);
    std::sort(pick.begin(), pick.end());
    do {
        QMatrix S(d - 1, d);
        size_t r = 0;
        for (size_t j = 0; j < m; ++j) {
            if (!pick[j]) continue;
            for (size_t k = 0; k < d; ++k) S(r, k) = basis[k][j];
            ++r;
        }
        auto ns = S.nullspace();
        if (ns.size() != 1) continue;
        QVec v(m, 0);
        for (size_t k = 0; k < d; ++k)
            for (size_t j = 0; j < m; ++j) v[j] += ns[0][k] * basis[k][j];
        bool nonneg = true, nonpos = true;
        for (const auto& x : v) {
            nonneg = nonneg && x >= 0;
            nonpos = nonpos && x <= 0;
        }
        if (nonpos && !nonneg)
            for (auto& x : v) x = -x;
        if (nonneg || nonpos) rays.insert(integer_normalise(v));
    } while (std::next_permutation(pick.begin(), pick.end()));
    kc.generators.assign(rays.begin(), rays.end());
    return kc;
}

Reduction reduce(const Network& net) {
    Reduction red;
    red.cone = kernel_cone(net);
    size_t m = net.m(), n = net.n();
    const auto& gens = red.cone.generators;
    if (gens.size() > 2) throw std::invalid_argument("reduce: kernel cone with more than two generators");
    for (size_t j = 0; j < m; ++j) {
        if (gens.size() == 1) red.v.push_back(UPoly(Q(gens[0][j])));
        else red.v.push_back(UPoly(std::vector<Q>{Q(gens[0][j]), Q(gens[1][j] - gens[0][j])}));
    }
    QMatrix G = net.gamma(), A = net.A();
    red.M.assign(n, std::vector<UPoly>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t k = 0; k < n; ++k)
            for (size_t j = 0; j < m; ++j)
                if (G(i, j) != 0 && A(j, k) != 0) red.M[i][k] += red.v[j] * UPoly(G(i, j) * A(j, k));
    red.det = det_small(red.M);
    for (size_t i = 0; i < n; ++i) red.trace += red.M[i][i];
    if (red.trace.degree() > 1 || red.det.degree() > static_cast<int>(n))
        throw std::logic_error("reduce: Jacobian is not linear in the kernel coordinate");
    return red;
}

MPoly SymbolicJacobian::trace_num() const {
    MPoly t(vars);
    for (size_t i = 0; i < num.size(); ++i) t += num[i][i];
    return t;
}

MPoly SymbolicJacobian::det_scaled() const {
    // det(num) = det J * denom^n, and det J * prod(x) = det M
    MPoly d = det_small(num);
    size_t n = num.size();
    // divide exactly by denom^(n-1): every term of det(num) carries it
    MPoly out(vars);
    for (const auto& [e, c] : d.terms()) {
        MPoly::Exp f = e;
        for (size_t i = 1; i < vars.size(); ++i) f[i] -= static_cast<int>(n - 1);
        for (size_t i = 1; i < vars.size(); ++i)
            if (f[i] < 0) throw std::logic_error("det_scaled: inexact division");
        out.add_term(f, c);
    }
    return out;
}

SymbolicJacobian symbolic_jacobian(const Network& net) {
    if (net.rank() < net.n()) throw std::invalid_argument("symbolic_jacobian: rank below species count");
    Reduction red = reduce(net);
    SymbolicJacobian sj;
    sj.vars.push_back("a");
    for (const auto& s : species_vars(net)) sj.vars.push_back(s);
    size_t n = net.n();
    sj.denom = MPoly(sj.vars, 1);
    for (size_t i = 0; i < n; ++i) sj.denom *= MPoly::var(sj.vars, i + 1);
    sj.num.assign(n, std::vector<MPoly>(n, MPoly(sj.vars)));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            MPoly e = MPoly::from_upoly(red.M[i][j], sj.vars, 0);
            for (size_t k = 0; k < n; ++k)
                if (k != j) e *= MPoly::var(sj.vars, k + 1);
            sj.num[i][j] = e;
        }
    return sj;
}

EquilibriumDecision admits_positive_nondegenerate_equilibrium(const Network& net) {
    EquilibriumDecision out;
    Reduction red = reduce(net);
    MPoly q = MPoly::from_upoly(red.det, {"a"}, 0);
    Domain dom = Domain::positive_orthant({"a"});
    dom.box("a", Q(0), Q(1));
    out.det_sign = decide_sign(q, dom);
    if (out.det_sign.verdict == Verdict::Unresolved) throw std::runtime_error("det sign Unresolved");
    if (out.det_sign.verdict == Verdict::IdenticallyZero) return out;
    out.admits = true;
    // simplest dyadic with det != 0
    for (unsigned k = 1; k < 64 && !out.alpha; ++k) {
        Q den = Q(Z(1) << k);
        for (Z i = 1; i < (Z(1) << k) && !out.alpha; i += 2) {
            Q a = Q(i) / den;
            if (red.det.eval(a) != 0) out.alpha = a;
        }
    }
    return out;
}

QVec realise_kappa(const Network& net, const Reduction& red, const Q& alpha, const QVec& x) {
    QMatrix A = net.A();
    QVec k;
    for (size_t j = 0; j < net.m(); ++j) {
        Q c = red.v[j].eval(alpha);
        for (size_t i = 0; i < net.n(); ++i) c *= qpow(x[i], -static_cast<long>(A(j, i).get_num().get_si()));
        k.push_back(c);
    }
    return k;
}

// ---------------------------------------------------------------- recoordinatisation

Recoordinatisation recoordinatise(const Network& net, std::optional<QMatrix> U) {
    size_t n = net.n(), m = net.m();
    QMatrix B = A_one(net);
    if (B.rank() != n + 1) throw std::invalid_argument("recoordinatise: rank [A|1] <= n");
    size_t k = m - n - 1;
    auto assemble = [&](const QMatrix& u) {
        QMatrix full(m, m);
        for (size_t j = 0; j < m; ++j) {
            for (size_t i = 0; i <= n; ++i) full(j, i) = B(j, i);
            for (size_t i = 0; i < k; ++i) full(j, n + 1 + i) = u(j, i);
        }
        return full;
    };
    std::optional<QMatrix> inv;
    QMatrix Uc;
    if (U) {
        if (U->rows() != m || U->cols() != k) throw std::invalid_argument("recoordinatise: U has wrong shape");
        Uc = *U;
        inv = assemble(Uc).inverse();
        if (!inv) throw std::invalid_argument("recoordinatise: [A|1|U] is singular");
    } else {
        std::vector<bool> pick(m, false);
        std::fill(pick.begin(), pick.begin() + static_cast<long>(k), true);
        // lexicographically first index set: iterate prev_permutation from 1..10..0
        do {
            QMatrix u(m, k);
            size_t c = 0;
            for (size_t j = 0; j < m; ++j)
                if (pick[j]) u(j, c++) = 1;
            inv = assemble(u).inverse();
            if (inv) {
                Uc = u;
                break;
            }
        } while (std::prev_permutation(pick.begin(), pick.end()));
        if (!inv) throw std::logic_error("recoordinatise: no standard-basis completion");
    }
    Recoordinatisation rc;
    rc.U = Uc;
    rc.G = QMatrix(n, m);
    rc.v = QMatrix(1, m);
    rc.W = QMatrix(k, m);
    for (size_t j = 0; j < m; ++j) {
        for (size_t i = 0; i < n; ++i) rc.G(i, j) = (*inv)(i, j);
        rc.v(0, j) = (*inv)(n, j);
        for (size_t i = 0; i < k; ++i) rc.W(i, j) = (*inv)(n + 1 + i, j);
    }
    for (size_t i = 0; i < n; ++i) {
        rc.species_exponents.push_back(rc.G.row(i));
        QVec o = rc.G.row(i);
        for (size_t j = 0; j < m; ++j) o[j] += rc.v(0, j);
        rc.outer_exponents.push_back(o);
    }
    for (size_t i = 0; i < k; ++i) rc.inner_exponents.push_back(rc.W.row(i));
    rc.reduced_family = m - 2;
    return rc;
}

bool identity_holds(const Network& net, const Recoordinatisation& rc) {
    size_t m = net.m();
    QMatrix A = net.A();
    QMatrix lhs = QMatrix::identity(m) - A * rc.G;
    QMatrix ones(m, 1);
    for (size_t j = 0; j < m; ++j) ones(j, 0) = 1;
    QMatrix rhs = ones * rc.v + rc.U * rc.W;
    if (!(lhs == rhs)) return false;
    QMatrix B = A_one(net);
    QMatrix wb = rc.W * B;
    for (size_t i = 0; i < wb.rows(); ++i)
        for (size_t j = 0; j < wb.cols(); ++j)
            if (wb(i, j) != 0) return false;
    return true;
}

// ---------------------------------------------------------------- equilibrium counting

std::optional<std::vector<Z>> solvability_row(const Network& net) {
    QMatrix B = A_one(net);
    auto ns = B.transpose().nullspace();
    if (ns.size() != 1) return std::nullopt;
    auto w = integer_normalise(ns[0]);
    for (const auto& z : w) {
        if (z == 0) continue;
        if (z < 0)
            for (auto& y : w) y = -y;
        break;
    }
    return w;
}

static UPoly upow(const UPoly& p, const Z& e) { return pow(p, static_cast<unsigned>(e.get_ui())); }

EquilibriumCount count_positive_equilibria(const Network& net, const QVec& kappa) {
    if (kappa.size() != net.m()) throw std::invalid_argument("kappa length does not match reaction count");
    for (const auto& k : kappa)
        if (k <= 0) throw std::invalid_argument("rate constants must be positive");
    EquilibriumCount out;
    if (!positive_kernel(net).feasible) {
        out.route = "trivial";
        return out;
    }
    auto W = solvability_row(net);
    if (net.n() != 2 || net.m() != 4 || net.rank() != 2 || !W) return count_positive_equilibria_resultant(net, kappa);
    Reduction red = reduce(net);
    if (!red.parameterised()) return count_positive_equilibria_resultant(net, kappa);
    out.route = "solvability";
    // prod v^W = prod kappa^W, cleared of negative powers
    UPoly lhs(1), rhs(1);
    Q kl = 1, kr = 1;
    for (size_t j = 0; j < 4; ++j) {
        const Z& w = (*W)[j];
        if (w > 0) {
            lhs *= upow(red.v[j], w);
            kr *= qpow(kappa[j], w.get_si());
        } else if (w < 0) {
            rhs *= upow(red.v[j], -w);
            kl *= qpow(kappa[j], Z(-w).get_si());
        }
    }
    UPoly S = lhs * UPoly(kl) - rhs * UPoly(kr);
    if (S.is_zero()) {
        out.continuum = true;
        return out;
    }
    // log x, log y, log lambda from three independent equations A_j xi - eta = log(v_j / kappa_j)
    QMatrix A = net.A();
    std::vector<size_t> rows;
    QMatrix Binv;
    for (size_t a = 0; a < 4 && rows.empty(); ++a)
        for (size_t b = a + 1; b < 4 && rows.empty(); ++b)
            for (size_t c = b + 1; c < 4 && rows.empty(); ++c) {
                QMatrix B(3, 3);
                size_t r = 0;
                for (size_t j : {a, b, c}) {
                    B(r, 0) = A(j, 0);
                    B(r, 1) = A(j, 1);
                    B(r, 2) = -1;
                    ++r;
                }
                if (auto inv = B.inverse()) {
                    Binv = *inv;
                    rows = {a, b, c};
                }
            }
    // t = x / y satisfies t^D = prod (v_j/kappa_j)^{e_j}
    QVec c(3);
    for (size_t k = 0; k < 3; ++k) c[k] = Binv(0, k) - Binv(1, k);
    Z D = 1;
    for (const auto& ck : c) D = lcm(D, Z(ck.get_den()));
    UPoly tn(1), td(1);
    Q kn = 1, kd = 1;
    for (size_t k = 0; k < 3; ++k) {
        Z e = Z(c[k] * Q(D));
        size_t j = rows[k];
        if (e > 0) {
            tn *= upow(red.v[j], e);
            kd *= qpow(kappa[j], e.get_si());
        } else if (e < 0) {
            td *= upow(red.v[j], -e);
            kn *= qpow(kappa[j], Z(-e).get_si());
        }
    }
    tn = tn * UPoly(kn);
    td = td * UPoly(kd);
    unsigned Du = static_cast<unsigned>(D.get_ui());
    const UPoly& P = red.P();
    const UPoly& Qp = red.Qp();
    UPoly E = tn * pow(Qp, Du) - td * pow(-P, Du);
    for (auto& a : real_roots(S, Q(0), Q(1))) {
        Equilibrium eq;
        eq.det_sign = a.sign_of(red.det);
        int sp = a.sign_of(P), sq = a.sign_of(Qp);
        if (sq == 0) eq.trace_sign = sp;
        else if (sp == 0 || sp == sq) eq.trace_sign = sq;
        else {
            int st = a.sign_of(E) * (Du % 2 == 0 ? 1 : sq);  // sign(t - (-P/Q))
            eq.trace_sign = sq * st;
        }
        a.refine(Q(1, 1 << 30));
        double ad = a.to_double();
        double b[3];
        for (size_t k = 0; k < 3; ++k) {
            size_t j = rows[k];
            b[k] = std::log(red.v[j].eval(ad)) - std::log(kappa[j].get_d());
        }
        for (size_t i = 0; i < 2; ++i) {
            double s = 0;
            for (size_t k = 0; k < 3; ++k) s += Binv(i, k).get_d() * b[k];
            eq.x.push_back(std::exp(s));
        }
        eq.alpha = a;
        out.equilibria.push_back(eq);
    }
    std::sort(out.equilibria.begin(), out.equilibria.end(), [](const Equilibrium& p, const Equilibrium& q) { return p.x < q.x; });
    return out;
}

EquilibriumCount count_positive_equilibria_resultant(const Network& net, const QVec& kappa) {
    if (net.n() != 2) throw std::invalid_argument("resultant route implemented for two species");
    EquilibriumCount out;
    out.route = "resultant";
    auto rhs = mass_action_rhs(net);
    std::vector<MPoly> f;
    for (auto p : rhs) {
        for (size_t j = 0; j < net.m(); ++j) p = p.substitute(2 + j, kappa[j]);
        f.push_back(p.with_vars(species_vars(net)));
    }
    MPoly f1 = f[0], f2 = f[1];
    f1.remove_monomial_content();
    f2.remove_monomial_content();
    // an identically vanishing component leaves a curve of equilibria
    if (f1.is_zero() || f2.is_zero()) {
        out.continuum = true;
        return out;
    }
    auto sv = species_vars(net);
    MPoly rx = resultant(f1, f2, sv[1]);
    MPoly ry = resultant(f1, f2, sv[0]);
    if (rx.is_zero() || ry.is_zero()) {
        out.continuum = true;
        return out;
    }
    rx.remove_monomial_content();
    ry.remove_monomial_content();
    auto xs = rx.is_constant() ? std::vector<AlgebraicReal>{} : real_roots(rx.to_upoly(0), Q(0), Q(1) << 40);
    auto ys = ry.is_constant() ? std::vector<AlgebraicReal>{} : real_roots(ry.to_upoly(1), Q(0), Q(1) << 40);
    auto J = [&](double x, double y) {
        std::vector<std::vector<double>> j(2, std::vector<double>(2));
        for (size_t i = 0; i < 2; ++i)
            for (size_t k = 0; k < 2; ++k) j[i][k] = f[i].derivative(k).eval_double({x, y});
        return j;
    };
    for (auto& xa : xs) {
        xa.refine(Q(1, Z(1) << 60));
        for (auto& ya : ys) {
            ya.refine(Q(1, Z(1) << 60));
            double x = xa.to_double(), y = ya.to_double();
            double scale = 1 + std::abs(x) + std::abs(y);
            double e1 = f1.eval_double({x, y}), e2 = f2.eval_double({x, y});
            double tol = 1e-7 * std::pow(scale, 4);
            if (std::abs(e1) > tol || std::abs(e2) > tol) continue;
            Equilibrium eq;
            eq.x = {x, y};
            auto j = J(x, y);
            double d = j[0][0] * j[1][1] - j[0][1] * j[1][0], t = j[0][0] + j[1][1];
            eq.det_sign = std::abs(d) < 1e-9 ? 0 : (d > 0 ? 1 : -1);
            eq.trace_sign = std::abs(t) < 1e-9 ? 0 : (t > 0 ? 1 : -1);
            out.equilibria.push_back(eq);
        }
    }
    std::sort(out.equilibria.begin(), out.equilibria.end(), [](const Equilibrium& p, const Equilibrium& q) { return p.x < q.x; });
    return out;
}

}  // namespace crn
