#pragma once

// Oracle-based checks shared by the unit tests and the acceptance runner.

#include "crnbif/bifurcation.hpp"
#include "crnbif/network.hpp"

#include <random>
#include <string>
#include <vector>

namespace checks {

struct Result {
    bool ok = true;
    size_t cases = 0;
    std::string detail;  // first failure, or a summary
    void fail(const std::string& why) {
        if (ok) detail = why;
        ok = false;
    }
};

// Random dynamically nontrivial two-species networks with m reactions,
// quadratic reactants and products of molecularity <= 3.
crn::Network random_network(std::mt19937_64& rng, size_t m = 4);
crn::Q random_rational(std::mt19937_64& rng, int lo_num, int hi_num, int max_den);

// J = M(a) diag(1/x) at a realised equilibrium vs central differences of the
// mass-action field.
Result jacobian_vs_fd(size_t instances, double rel_tol, unsigned seed = 1);

// f(x; realise_kappa(a, x)) == 0 in exact arithmetic.
Result kappa_realisation(size_t instances, unsigned seed = 2);

// With fewer than four distinct sources a (2,m,2) network has at most one
// positive nondegenerate equilibrium.
Result uniqueness_sampling(size_t instances, unsigned seed = 3);

// Near a Hopf witness the return-map amplitude on a section grows for L1 > 0,
// decays for L1 < 0 and stays put on a center. expected: -1, +1 or 0.
Result l1_amplitude(const crn::Network& net, int expected);

// cusp_gradient_check at the fold witness of every network given.
Result cusp_identity(const std::vector<crn::Network>& folds, double rel_tol = 1e-8);

// Every Mixed sign decision on det M(a) carries a witness pair that
// re-evaluates (independently) to opposite signs.
Result mixed_witnesses(const std::vector<crn::Network>& nets);

// Recoordinatisation: the worked example, and the identity I - AG = 1v + UW
// for random admissible U.
Result recoordinatisation_example();
Result recoordinatisation_random(size_t count, unsigned seed = 4);

// Network 9 analytics.
Result network9_equilibrium_transitions();
Result network9_dulac();
Result network9_drift(double T, double tol, double* drift_out = nullptr);
Result network9_order(double* ratio_out = nullptr);

// Each vertical fold has a continuum of equilibria at a realised parameter.
Result vertical_fold_lines(const std::vector<crn::Network>& verticals);

}  // namespace checks
