#pragma once

#include "crnbif/mpoly.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace crn {

enum class Verdict {
    AllPositive,
    AllNegative,
    IdenticallyZero,
    Mixed,
    NonNegative,  // >= 0 with zeros inside the domain
    NonPositive,  // <= 0 with zeros inside the domain
    Unresolved
};

std::string to_string(Verdict v);

// Open box (lo_i, hi_i) per variable (missing bound = infinite) intersected
// with {g > 0} for each side constraint g.
struct Domain {
    std::vector<std::string> vars;
    std::vector<std::optional<Q>> lo, hi;
    std::vector<MPoly> side;

    static Domain positive_orthant(const std::vector<std::string>& vars);
    Domain& box(const std::string& var, std::optional<Q> lo, std::optional<Q> hi);
    bool contains(const QVec& pt) const;
};

struct SignDecision {
    Verdict verdict = Verdict::Unresolved;
    // Mixed: {positive point, negative point}; otherwise an optional domain point.
    std::vector<QVec> witnesses;
    std::string certificate;  // coefficient-sign | witness-pair | root-isolation
    std::vector<std::string> trail;
};

struct EmptyDomain : std::domain_error {
    using std::domain_error::domain_error;
};

struct SignOptions {
    unsigned grid_depth = 12;
    size_t grid_budget = 20000;  // points per level
};

// The decision ladder: coefficient signs, dyadic grid witnesses, elimination
// to at most two variables with root isolation, otherwise Unresolved.
SignDecision decide_sign(const MPoly& p, const Domain& dom, const SignOptions& opt = {});

// True if every Mixed witness pair re-evaluates to strictly opposite signs.
bool verify_witnesses(const MPoly& p, const Domain& dom, const SignDecision& d);

}  // namespace crn
