#include "checks.hpp"

#include "crnbif/equilibria.hpp"
#include "crnbif/ode.hpp"
#include "tables.hpp"

#include <cmath>
#include <iomanip>
#include <set>
#include <sstream>

using namespace crn;

namespace checks {

Q random_rational(std::mt19937_64& rng, int lo_num, int hi_num, int max_den) {
    std::uniform_int_distribution<int> num(lo_num, hi_num), den(1, max_den);
    Q q(num(rng), den(rng));
    q.canonicalize();
    return q;
}

namespace {

Complex random_complex(std::mt19937_64& rng, int max_mol) {
    std::uniform_int_distribution<int> d(0, max_mol);
    for (;;) {
        Complex c{{d(rng), d(rng)}};
        if (c.molecularity() <= max_mol) return c;
    }
}

Q positive_rational(std::mt19937_64& rng) { return random_rational(rng, 1, 12, 6); }

}  // namespace

Network random_network(std::mt19937_64& rng, size_t m) {
    for (;;) {
        std::vector<Reaction> rx;
        std::set<Reaction> seen;
        while (rx.size() < m) {
            Reaction r{random_complex(rng, 2), random_complex(rng, 3)};
            if (r.reactant == r.product || !seen.insert(r).second) continue;
            rx.push_back(r);
        }
        Network net(2, rx);
        if (net.rank() == 2 && net.trivial_species().empty() && is_dynamically_nontrivial(net)) return net;
    }
}

Result jacobian_vs_fd(size_t instances, double rel_tol, unsigned seed) {
    std::mt19937_64 rng(seed);
    Result res;
    double worst = 0;
    while (res.cases < instances) {
        Network net = random_network(rng);
        Reduction red;
        try {
            red = reduce(net);
        } catch (const std::exception&) {
            continue;
        }
        Q a = red.parameterised() ? random_rational(rng, 1, 15, 16) : Q(0);
        if (a >= 1) continue;
        QVec x = {positive_rational(rng), positive_rational(rng)};
        QVec k = realise_kappa(net, red, a, x);
        std::vector<double> kd, xd = {x[0].get_d(), x[1].get_d()};
        for (const auto& c : k) kd.push_back(c.get_d());
        auto f = mass_action_field(net, kd);
        double scale = 0;
        double Jex[2][2], Jfd[2][2];
        for (size_t i = 0; i < 2; ++i)
            for (size_t j = 0; j < 2; ++j) {
                Jex[i][j] = Q(red.M[i][j].eval(a) / x[j]).get_d();
                scale = std::max(scale, std::abs(Jex[i][j]));
            }
        for (size_t j = 0; j < 2; ++j) {
            double h = 1e-5 * xd[j];
            State p = xd, m = xd, fp(2), fm(2);
            p[j] += h;
            m[j] -= h;
            f(p, fp);
            f(m, fm);
            for (size_t i = 0; i < 2; ++i) Jfd[i][j] = (fp[i] - fm[i]) / (2 * h);
        }
        res.cases++;
        for (size_t i = 0; i < 2; ++i)
            for (size_t j = 0; j < 2; ++j) {
                double err = std::abs(Jex[i][j] - Jfd[i][j]) / std::max(scale, 1e-300);
                worst = std::max(worst, err);
                if (err > rel_tol) res.fail(format_network_raw(net) + ": J entry off by " + std::to_string(err));
            }
    }
    if (res.ok) {
        std::ostringstream os;
        os << "max relative error " << std::scientific << std::setprecision(2) << worst;
        res.detail = os.str();
    }
    return res;
}

Result kappa_realisation(size_t instances, unsigned seed) {
    std::mt19937_64 rng(seed);
    Result res;
    while (res.cases < instances) {
        Network net = random_network(rng);
        Reduction red;
        try {
            red = reduce(net);
        } catch (const std::exception&) {
            continue;
        }
        Q a = red.parameterised() ? random_rational(rng, 1, 31, 32) : Q(0);
        if (a >= 1) continue;
        QVec x = {positive_rational(rng), positive_rational(rng)};
        QVec k = realise_kappa(net, red, a, x);
        QVec pt = x;
        pt.insert(pt.end(), k.begin(), k.end());
        res.cases++;
        for (const auto& fi : mass_action_rhs(net))
            if (fi.eval(pt) != 0) res.fail(format_network_raw(net) + ": nonzero field at realised equilibrium");
        for (const auto& c : k)
            if (c <= 0) res.fail(format_network_raw(net) + ": nonpositive realised rate");
    }
    if (res.ok) res.detail = "exact zero at every realised equilibrium";
    return res;
}

Result uniqueness_sampling(size_t instances, unsigned seed) {
    std::mt19937_64 rng(seed);
    Result res;
    while (res.cases < instances) {
        Network net = random_network(rng);
        auto sources = net.sources();
        std::set<Complex> src(sources.begin(), sources.end());
        if (src.size() >= 4) continue;
        QVec k;
        for (size_t j = 0; j < net.m(); ++j) k.push_back(positive_rational(rng));
        EquilibriumCount ec;
        try {
            ec = count_positive_equilibria(net, k);
        } catch (const std::exception&) {
            continue;
        }
        res.cases++;
        if (ec.continuum) continue;
        int nondeg = 0;
        for (const auto& e : ec.equilibria) nondeg += e.det_sign != 0;
        if (nondeg > 1) res.fail(format_network_raw(net) + ": " + std::to_string(nondeg) + " nondegenerate equilibria");
    }
    if (res.ok) res.detail = "never more than one nondegenerate equilibrium";
    return res;
}

Result l1_amplitude(const Network& net, int expected) {
    Result res;
    res.cases = 1;
    auto h = hopf_analysis(net);
    if (!h.witness) {
        res.fail(format_network(net) + ": no Hopf witness");
        return res;
    }
    const auto& w = *h.witness;
    std::vector<double> kd;
    for (const auto& c : w.kappa) kd.push_back(c.get_d());
    auto f = mass_action_field(net, kd);
    double xs = w.x.get_d(), ys = w.y.get_d();
    auto red = reduce(net);
    Q det = red.det.eval(w.alpha) / (w.x * w.y);
    double omega = std::sqrt(det.get_d());
    OdeOptions opt;
    opt.rtol = 1e-12;
    opt.atol = 1e-15;
    const int turns = 20;
    // upward crossings of y = y*, refined by bisection on the step
    auto returns = [&](double offset) {
        std::vector<double> amp;
        auto tr = integrate(f, {xs * (1 + offset), ys}, turns * 2 * M_PI / omega, opt);
        for (size_t i = 1; i < tr.t.size(); ++i) {
            double g0 = tr.x[i - 1][1] - ys, g1 = tr.x[i][1] - ys;
            if (!(g0 < 0 && g1 >= 0)) continue;
            double lo = 0, hi = tr.t[i] - tr.t[i - 1];
            State s = tr.x[i];
            for (int it = 0; it < 60; ++it) {
                double mid = 0.5 * (lo + hi);
                auto seg = integrate(f, tr.x[i - 1], mid, opt);
                if (seg.x.back()[1] - ys < 0)
                    lo = mid;
                else
                    hi = mid, s = seg.x.back();
            }
            amp.push_back(std::abs(s[0] - xs));
        }
        if (tr.truncated) amp.clear();
        return amp;
    };
    // a subcritical orbit may escape from a badly scaled witness; retry closer in
    std::vector<double> amp;
    for (double offset : {2e-2, 2e-3, 2e-4}) {
        amp = returns(offset);
        if (amp.size() >= 5) break;
    }
    if (amp.size() < 5) {
        res.fail(format_network(net) + ": too few returns");
        return res;
    }
    double rel = (amp.back() - amp.front()) / amp.front();
    std::ostringstream os;
    os << format_network(net) << ": relative amplitude change " << rel << " over " << amp.size() << " returns";
    res.detail = os.str();
    bool good = expected == 0 ? std::abs(rel) < 1e-6 : (rel * expected > 0 && std::abs(rel) > 1e-6);
    if (!good) res.fail(os.str());
    return res;
}

Result cusp_identity(const std::vector<Network>& folds, double rel_tol) {
    Result res;
    for (const auto& net : folds) {
        auto fv = fold_analysis(net);
        if (!fv.witness) continue;
        AlgebraicReal a = *fv.witness;
        a.refine(Q(1, 1) / Q(mpz_class(1) << 80));
        Q aq = a.is_rational() ? a.rational() : Q((a.interval().lo + a.interval().hi) / 2);
        auto red = reduce(net);
        // on det M = 0 the zero eigenvalue is simple unless tr J = P/x + Q/y vanishes too
        std::vector<QVec> pts;
        for (const QVec& x : {QVec{1, 1}, QVec{Q(3, 2), Q(1, 3)}, QVec{Q(1, 2), 2}, QVec{2, 3}, QVec{Q(1, 3), Q(1, 5)}}) {
            double tr = Q(red.P().eval(aq) / x[0] + red.Qp().eval(aq) / x[1]).get_d();
            double sc = std::abs(red.P().eval(aq).get_d() / x[0].get_d()) + std::abs(red.Qp().eval(aq).get_d() / x[1].get_d());
            if (std::abs(tr) > 1e-3 * sc && pts.size() < 2) pts.push_back(x);
        }
        for (const QVec& x : pts) {
            auto k = realise_kappa(net, red, aq, x);
            std::vector<double> kd, xd = {x[0].get_d(), x[1].get_d()};
            for (const auto& c : k) kd.push_back(c.get_d());
            res.cases++;
            try {
                if (!cusp_gradient_check(net, xd, kd, rel_tol)) res.fail(format_network(net) + ": gradient identity violated");
            } catch (const std::invalid_argument& e) {
                res.fail(format_network(net) + ": " + e.what());
            }
        }
    }
    if (res.ok) res.detail = std::to_string(res.cases) + " fold points";
    return res;
}

Result mixed_witnesses(const std::vector<Network>& nets) {
    Result res;
    for (const auto& net : nets) {
        auto d = admits_positive_nondegenerate_equilibrium(net);
        if (d.det_sign.verdict != Verdict::Mixed) continue;
        res.cases++;
        const auto& w = d.det_sign.witnesses;
        auto det = reduce(net).det;
        if (w.size() != 2 || w[0].size() != 1 || w[1].size() != 1) {
            res.fail(format_network(net) + ": malformed witness pair");
            continue;
        }
        for (const auto& p : w)
            if (p[0] <= 0 || p[0] >= 1) res.fail(format_network(net) + ": witness outside (0,1)");
        if (det.sign_at(w[0][0]) != 1 || det.sign_at(w[1][0]) != -1) res.fail(format_network(net) + ": witness signs do not re-verify");
    }
    if (res.ok) res.detail = std::to_string(res.cases) + " Mixed verdicts re-verified";
    return res;
}

namespace {

bool identity_independent(const Network& net, const Recoordinatisation& rc) {
    size_t n = net.n(), m = net.m();
    QMatrix A = net.A();
    QMatrix lhs = QMatrix::identity(m) - A * rc.G;
    QMatrix ones(m, 1);
    for (size_t j = 0; j < m; ++j) ones(j, 0) = 1;
    QMatrix rhs = ones * rc.v;
    if (m > n + 1) rhs = rhs + rc.U * rc.W;
    return lhs == rhs;
}

}  // namespace

Result recoordinatisation_example() {
    Result res;
    res.cases = 1;
    Network net = parse_network("2X->3X; X+Y->2Y; Y->0; 0->Y");
    QMatrix U(4, 1, {2, 2, 1, 1});
    auto rc = recoordinatise(net, U);
    auto row = [](std::initializer_list<int> v) {
        QVec r;
        for (int x : v) r.push_back(x);
        return r;
    };
    if (rc.species_exponents != std::vector<QVec>{row({1, -1, 1, -1}), row({0, 0, 1, -1})})
        res.fail("species exponents differ");
    if (rc.outer_exponents != std::vector<QVec>{row({2, -3, 3, -1}), row({1, -2, 3, -1})}) res.fail("outer exponents differ");
    if (rc.inner_exponents != std::vector<QVec>{row({-1, 2, -2, 1})}) res.fail("inner exponent differs");
    if (!identity_independent(net, rc)) res.fail("I - AG != 1v + UW");
    if (rc.reduced_family != 2) res.fail("reduced family size is not 2");
    if (res.ok) res.detail = "X, Y, alpha1..3 exponents reproduced";
    return res;
}

Result recoordinatisation_random(size_t count, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> e(-3, 3);
    Result res;
    std::vector<Network> nets = {parse_network("2X->3X; X+Y->2Y; Y->0; 0->Y"),
                                 parse_network("2X->3X; X+Y->2X; X->0; 0->Y; Y->X+2Y")};
    while (res.cases < count) {
        const Network& net = nets[res.cases % nets.size()];
        size_t k = net.m() - net.n() - 1;
        QMatrix U(net.m(), k);
        for (size_t i = 0; i < net.m(); ++i)
            for (size_t j = 0; j < k; ++j) U(i, j) = e(rng);
        Recoordinatisation rc;
        try {
            rc = recoordinatise(net, U);
        } catch (const std::invalid_argument&) {
            continue;  // singular completion
        }
        res.cases++;
        if (!identity_independent(net, rc)) res.fail(format_network_raw(net) + ": identity fails for a random U");
        if (!identity_holds(net, rc)) res.fail(format_network_raw(net) + ": library identity check disagrees");
    }
    if (res.ok) res.detail = std::to_string(res.cases) + " random completions";
    return res;
}

Result network9_equilibrium_transitions() {
    Result res;
    Network net = parse_network(tables::network9);
    struct Sample {
        QVec k;
        size_t expect;
    };
    // 4 k1 k4 - k3^2 positive, zero, negative
    std::vector<Sample> samples = {
        {{1, 1, 1, 1}, 0},         {{2, 3, 1, 1}, 0},           {{Q(1, 2), 1, 1, 1}, 0},
        {{1, 1, 2, 1}, 1},         {{2, 5, 4, 2}, 1},           {{Q(1, 4), 1, 1, 1}, 1},
        {{1, 1, 3, 1}, 2},         {{1, 2, 3, 1}, 2},           {{3, 1, 7, 4}, 2},
    };
    for (const auto& s : samples) {
        res.cases++;
        Q disc = 4 * s.k[0] * s.k[3] - s.k[2] * s.k[2];
        size_t oracle = disc > 0 ? 0 : disc == 0 ? 1 : 2;
        if (oracle != s.expect) res.fail("sample table inconsistent");
        auto ec = count_positive_equilibria(net, s.k);
        if (ec.continuum || ec.count() != s.expect) {
            std::ostringstream os;
            os << "kappa (" << s.k[0] << "," << s.k[1] << "," << s.k[2] << "," << s.k[3] << "): " << ec.count()
               << " equilibria, expected " << s.expect;
            res.fail(os.str());
        }
    }
    if (res.ok) res.detail = "0/1/2 equilibria across 4k1k4 = k3^2, three samples each";
    return res;
}

Result network9_dulac() {
    Result res;
    res.cases = 1;
    Network net = parse_network(tables::network9);
    auto f = mass_action_rhs(net);
    auto vars = rhs_variables(net);
    MPoly x = MPoly::var(vars, "x");
    // x^2 div(f / x) = x f1_x - f1 + x f2_y
    MPoly lhs = x * f[0].derivative(0) - f[0] + x * f[1].derivative(1);
    MPoly rhs = x * x * (MPoly::var(vars, "k1") - MPoly::var(vars, "k2"));
    if (lhs != rhs) res.fail("x^2 div(f/x) = " + lhs.to_string());
    else res.detail = "div(f/x) = k1 - k2";
    return res;
}

namespace {

Portrait network9_center_orbit(double T, const OdeOptions& opt) {
    Network net = parse_network(tables::network9);
    QVec k = {1, 1, 3, 1};
    auto ec = count_positive_equilibria(net, k);
    State start = {1, 1};
    for (const auto& e : ec.equilibria)
        if (e.det_sign > 0) start = {e.x[0] * 1.1, e.x[1]};
    return make_portrait(net, k, {start}, T, opt);
}

}  // namespace

Result network9_drift(double T, double tol, double* drift_out) {
    Result res;
    res.cases = 1;
    auto p = network9_center_orbit(T, OdeOptions{});
    const auto& tr = p.trajectories.at(0);
    if (!tr.drift) {
        res.fail("first integral not registered");
        return res;
    }
    if (drift_out) *drift_out = *tr.drift;
    std::ostringstream os;
    os << "relative H drift " << std::scientific << std::setprecision(2) << *tr.drift;
    res.detail = os.str();
    if (tr.truncated || *tr.drift >= tol) res.fail(res.detail);
    return res;
}

Result network9_order(double* ratio_out) {
    Result res;
    res.cases = 1;
    OdeOptions a, b;
    a.fixed_step = 0.02;
    b.fixed_step = 0.01;
    double d1 = *network9_center_orbit(20, a).trajectories[0].drift;
    double d2 = *network9_center_orbit(20, b).trajectories[0].drift;
    double ratio = d1 / d2;
    if (ratio_out) *ratio_out = ratio;
    std::ostringstream os;
    os << "drift " << d1 << " -> " << d2 << " when halving the step (ratio " << ratio << ")";
    res.detail = os.str();
    if (!(ratio >= 4)) res.fail(os.str());
    return res;
}

Result vertical_fold_lines(const std::vector<Network>& verticals) {
    Result res;
    for (const auto& net : verticals) {
        res.cases++;
        auto red = reduce(net);
        auto k = realise_kappa(net, red, Q(1, 2), {1, 1});
        auto ec = count_positive_equilibria(net, k);
        if (!ec.continuum) res.fail(format_network(net) + ": no continuum of equilibria");
    }
    if (res.ok) res.detail = std::to_string(res.cases) + " vertical folds with a line of equilibria";
    return res;
}

}  // namespace checks
