#include "crnbif/ode.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace crn {

namespace {

// Dormand-Prince tableau (autonomous fields, so the nodes c_i are not needed)
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200, e6 = 22.0 / 525,
                 e7 = -1.0 / 40;

}  // namespace

Trajectory integrate(const Field& f, State x, double T, const OdeOptions& opt, const Scalar& conserved) {
    const size_t n = x.size();
    Trajectory tr;
    tr.t.push_back(0);
    tr.x.push_back(x);
    double H0 = conserved ? conserved(x) : 0, drift = 0;
    State k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), y(n), xn(n);
    f(x, k1);
    double t = 0, h = std::min(opt.fixed_step > 0 ? opt.fixed_step : opt.h0, T);
    while (t < T) {
        if (tr.steps >= opt.max_steps) {
            tr.truncated = true;
            tr.status = "step budget exhausted";
            break;
        }
        if (h < opt.hmin) {
            tr.truncated = true;
            tr.status = "step size underflow";
            break;
        }
        h = std::min(h, T - t);
        for (size_t i = 0; i < n; ++i) y[i] = x[i] + h * a21 * k1[i];
        f(y, k2);
        for (size_t i = 0; i < n; ++i) y[i] = x[i] + h * (a31 * k1[i] + a32 * k2[i]);
        f(y, k3);
        for (size_t i = 0; i < n; ++i) y[i] = x[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        f(y, k4);
        for (size_t i = 0; i < n; ++i) y[i] = x[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        f(y, k5);
        for (size_t i = 0; i < n; ++i) y[i] = x[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
        f(y, k6);
        for (size_t i = 0; i < n; ++i) xn[i] = x[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
        f(xn, k7);
        double err = 0;
        bool inside = true;
        for (size_t i = 0; i < n; ++i) {
            double ei = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
            double sc = opt.atol + opt.rtol * std::max(std::abs(x[i]), std::abs(xn[i]));
            err = std::max(err, std::abs(ei) / sc);
            inside = inside && xn[i] >= 0 && std::isfinite(xn[i]);
        }
        if (opt.fixed_step > 0) {
            if (!inside) {
                tr.truncated = true;
                tr.status = "left the nonnegative orthant";
                break;
            }
            err = 0;
        }
        if (!inside || !(err <= 1.0)) {
            ++tr.rejected;
            double fac = inside && std::isfinite(err) ? std::max(0.2, 0.9 * std::pow(err, -0.2)) : 0.25;
            h *= fac;
            continue;
        }
        t += h;
        x = xn;
        k1 = k7;
        ++tr.steps;
        tr.t.push_back(t);
        tr.x.push_back(x);
        if (conserved) drift = std::max(drift, std::abs(conserved(x) - H0) / std::max(std::abs(H0), 1e-300));
        double big = 0;
        for (double v : x) big = std::max(big, std::abs(v));
        if (big > opt.blowup) {
            tr.truncated = true;
            tr.status = "blow-up";
            break;
        }
        if (opt.fixed_step <= 0) h *= err > 0 ? std::min(5.0, std::max(0.2, 0.9 * std::pow(err, -0.2))) : 5.0;
    }
    if (conserved) tr.drift = drift;
    return tr;
}

Field mass_action_field(const Network& net, const std::vector<double>& kappa) {
    if (kappa.size() != net.m()) throw std::invalid_argument("rate constant count does not match the network");
    struct Term {
        double k;
        std::vector<int> a;
        std::vector<double> g;
    };
    std::vector<Term> terms;
    for (size_t j = 0; j < net.m(); ++j) {
        const auto& r = net.reactions()[j];
        auto v = r.vec();
        terms.push_back({kappa[j], r.reactant.s, std::vector<double>(v.begin(), v.end())});
    }
    return [terms](const State& x, State& dx) {
        std::fill(dx.begin(), dx.end(), 0.0);
        for (const auto& tm : terms) {
            double rate = tm.k;
            for (size_t i = 0; i < x.size(); ++i)
                for (int e = 0; e < tm.a[i]; ++e) rate *= x[i];
            for (size_t i = 0; i < x.size(); ++i) dx[i] += tm.g[i] * rate;
        }
    };
}

std::optional<Scalar> known_first_integral(const Network& net, const QVec& kappa) {
    static const Network net9 = parse_network("2X -> 3X; X+Y -> 2X; X -> 0; 0 -> Y");
    if (net.n() != 2 || net.reactions() != net9.reactions() || kappa.size() != 4 || kappa[0] != kappa[1]) return std::nullopt;
    double k1 = kappa[0].get_d(), k3 = kappa[2].get_d(), k4 = kappa[3].get_d();
    return Scalar([=](const State& s) { return k1 * s[0] * s[1] + 0.5 * k1 * s[1] * s[1] - k3 * s[1] - k4 * std::log(s[0]); });
}

Portrait make_portrait(const Network& net, const QVec& kappa, const std::vector<State>& starts, double T, const OdeOptions& opt) {
    if (net.n() != 2) throw std::invalid_argument("portrait: needs two species");
    for (const auto& k : kappa)
        if (k <= 0) throw std::invalid_argument("portrait: rate constants must be positive");
    for (const auto& s : starts)
        if (s.size() != 2 || !(s[0] > 0) || !(s[1] > 0)) throw std::invalid_argument("portrait: starts must lie in the open quadrant");
    Portrait p;
    p.net = net;
    p.kappa = kappa;
    std::vector<double> kd;
    for (const auto& k : kappa) kd.push_back(k.get_d());
    auto f = mass_action_field(net, kd);
    auto H = known_first_integral(net, kappa);
    for (const auto& s : starts) p.trajectories.push_back(integrate(f, s, T, opt, H ? *H : Scalar{}));
    p.equilibria = count_positive_equilibria(net, kappa);
    double xm = 0, ym = 0;
    for (const auto& tr : p.trajectories)
        for (const auto& s : tr.x) {
            xm = std::max(xm, s[0]);
            ym = std::max(ym, s[1]);
        }
    for (const auto& e : p.equilibria.equilibria) {
        xm = std::max(xm, e.x[0]);
        ym = std::max(ym, e.x[1]);
    }
    p.xmax = xm > 0 ? 1.1 * xm : 1;
    p.ymax = ym > 0 ? 1.1 * ym : 1;
    return p;
}

void write_portrait_csv(std::ostream& os, const Portrait& p) {
    os << "trajectory,t,x,y\n";
    os << std::setprecision(12);
    for (size_t k = 0; k < p.trajectories.size(); ++k) {
        const auto& tr = p.trajectories[k];
        for (size_t i = 0; i < tr.t.size(); ++i) os << k << ',' << tr.t[i] << ',' << tr.x[i][0] << ',' << tr.x[i][1] << '\n';
    }
}

namespace {

struct Frame {
    double W = 640, Hh = 640, m = 50;
    double xmax, ymax;
    double px(double x) const { return m + x / xmax * (W - 2 * m); }
    double py(double y) const { return Hh - m - y / ymax * (Hh - 2 * m); }
};

// Zero set of g on the grid by marching squares, as one SVG path.
std::string contour(const std::function<double(double, double)>& g, const Frame& fr, int N) {
    std::ostringstream d;
    d << std::setprecision(5);
    double dx = fr.xmax / N, dy = fr.ymax / N;
    std::vector<double> v((N + 1) * (N + 1));
    for (int i = 0; i <= N; ++i)
        for (int j = 0; j <= N; ++j) v[i * (N + 1) + j] = g(std::max(i * dx, 1e-9 * fr.xmax), std::max(j * dy, 1e-9 * fr.ymax));
    auto at = [&](int i, int j) { return v[i * (N + 1) + j]; };
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
            double c[4] = {at(i, j), at(i + 1, j), at(i + 1, j + 1), at(i, j + 1)};
            double X[4] = {i * dx, (i + 1) * dx, (i + 1) * dx, i * dx}, Y[4] = {j * dy, j * dy, (j + 1) * dy, (j + 1) * dy};
            std::vector<std::pair<double, double>> pts;
            for (int e = 0; e < 4; ++e) {
                int a = e, b = (e + 1) % 4;
                if ((c[a] < 0) != (c[b] < 0)) {
                    double s = c[a] / (c[a] - c[b]);
                    pts.push_back({X[a] + s * (X[b] - X[a]), Y[a] + s * (Y[b] - Y[a])});
                }
            }
            for (size_t k = 0; k + 1 < pts.size(); k += 2)
                d << 'M' << fr.px(pts[k].first) << ',' << fr.py(pts[k].second) << 'L' << fr.px(pts[k + 1].first) << ','
                  << fr.py(pts[k + 1].second);
        }
    return d.str();
}

}  // namespace

void write_portrait_svg(std::ostream& os, const Portrait& p, int grid) {
    Frame fr;
    fr.xmax = p.xmax;
    fr.ymax = p.ymax;
    std::vector<double> kd;
    for (const auto& k : p.kappa) kd.push_back(k.get_d());
    auto f = mass_action_field(p.net, kd);
    auto comp = [&](size_t c) {
        return [&, c](double x, double y) {
            State s{x, y}, d(2);
            f(s, d);
            return d[c];
        };
    };
    os << std::setprecision(6);
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fr.W << "\" height=\"" << fr.Hh << "\" viewBox=\"0 0 "
       << fr.W << ' ' << fr.Hh << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<g id=\"axes\" stroke=\"black\" fill=\"none\"><path d=\"M" << fr.px(0) << ',' << fr.py(0) << 'L' << fr.px(fr.xmax)
       << ',' << fr.py(0) << "M" << fr.px(0) << ',' << fr.py(0) << 'L' << fr.px(0) << ',' << fr.py(fr.ymax) << "\"/></g>\n";
    os << "<text x=\"" << fr.W - fr.m << "\" y=\"" << fr.Hh - fr.m / 3 << "\" text-anchor=\"end\" font-size=\"12\">"
       << p.net.species()[0] << " (0 to " << fr.xmax << ")</text>\n";
    os << "<text x=\"" << fr.m / 3 << "\" y=\"" << fr.m - 8 << "\" font-size=\"12\">" << p.net.species()[1] << " (0 to "
       << fr.ymax << ")</text>\n";
    os << "<g id=\"nullclines\" fill=\"none\" stroke-width=\"1\">\n";
    os << "<path stroke=\"#1f77b4\" d=\"" << contour(comp(0), fr, grid) << "\"/>\n";
    os << "<path stroke=\"#d62728\" d=\"" << contour(comp(1), fr, grid) << "\"/>\n";
    os << "</g>\n<g id=\"trajectories\" fill=\"none\" stroke=\"black\" stroke-width=\"0.8\">\n";
    for (const auto& tr : p.trajectories) {
        os << "<polyline points=\"";
        size_t stride = std::max<size_t>(1, tr.x.size() / 4000);
        for (size_t i = 0; i < tr.x.size(); i += stride) os << fr.px(tr.x[i][0]) << ',' << fr.py(tr.x[i][1]) << ' ';
        os << "\"/>\n";
    }
    os << "</g>\n<g id=\"equilibria\" stroke=\"black\">\n";
    for (const auto& e : p.equilibria.equilibria) {
        bool stable = e.det_sign > 0 && e.trace_sign < 0;
        os << "<circle cx=\"" << fr.px(e.x[0]) << "\" cy=\"" << fr.py(e.x[1]) << "\" r=\"4\" fill=\"" << (stable ? "black" : "white")
           << "\"/>\n";
    }
    os << "</g>\n</svg>\n";
}

}  // namespace crn
