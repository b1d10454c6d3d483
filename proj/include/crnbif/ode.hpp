#pragma once

#include "crnbif/equilibria.hpp"
#include "crnbif/network.hpp"

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace crn {

using State = std::vector<double>;
using Field = std::function<void(const State&, State&)>;
using Scalar = std::function<double(const State&)>;

struct OdeOptions {
    double rtol = 1e-9;
    double atol = 1e-12;
    double h0 = 1e-3;
    double hmin = 1e-14;
    size_t max_steps = 5'000'000;
    double blowup = 1e8;  // any |x_i| above this truncates the run
    double fixed_step = 0;  // > 0: no error control (order checks)
};

struct Trajectory {
    std::vector<double> t;
    std::vector<State> x;
    size_t steps = 0, rejected = 0;
    bool truncated = false;  // blow-up, step underflow or step budget
    std::string status = "ok";
    std::optional<double> drift;  // max relative change of a registered first integral
};

// Dormand-Prince 5(4) with step rejection on error or on leaving the closed
// nonnegative orthant.
Trajectory integrate(const Field& f, State x0, double T, const OdeOptions& opt = {}, const Scalar& conserved = {});

Field mass_action_field(const Network& net, const std::vector<double>& kappa);

// First integrals known in closed form. Network 9 of the BT table, with rates
// ordered 2X->3X, X+Y->2X, X->0, 0->Y and k1 = k2:
// H = k1 x y + k1/2 y^2 - k3 y - k4 log x (for the ODE multiplied by 1/x).
std::optional<Scalar> known_first_integral(const Network& net, const QVec& kappa);

struct Portrait {
    Network net;
    QVec kappa;
    std::vector<Trajectory> trajectories;
    EquilibriumCount equilibria;
    double xmax = 1, ymax = 1;
};

Portrait make_portrait(const Network& net, const QVec& kappa, const std::vector<State>& starts, double T,
                       const OdeOptions& opt = {});

void write_portrait_csv(std::ostream& os, const Portrait& p);
void write_portrait_svg(std::ostream& os, const Portrait& p, int grid = 160);

}  // namespace crn
