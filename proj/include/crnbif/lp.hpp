#pragma once

#include "crnbif/matrix.hpp"

#include <vector>

namespace crn {

enum class Bound {
    Free,      // unrestricted
    NonNeg,    // x >= 0
    Positive,  // x > 0 (homogeneous systems only: equivalent to x >= 1)
    AtLeastOne // x >= 1
};

struct LPResult {
    bool feasible = false;
    QVec witness;  // satisfies M x = 0 and the bounds when feasible
    QVec farkas;   // when infeasible: y with y^T M >= 0 on bounded columns,
                   // = 0 on free columns, and y^T M l > 0 (l = lower bounds)
};

// Decides M x = 0 subject to per-component bounds with exact rational simplex
// (phase one, Bland's rule). Throws std::invalid_argument on size mismatch.
LPResult lp_feasible(const QMatrix& M, const std::vector<Bound>& bounds);

// Checks a Farkas certificate produced for (M, bounds) independently.
bool verify_farkas(const QMatrix& M, const std::vector<Bound>& bounds, const QVec& y);

}  // namespace crn
