#pragma once

#include "crnbif/upoly.hpp"

#include <optional>
#include <vector>

namespace crn {

// Open interval (lo, hi) or, when lo == hi, the exact point lo.
struct Interval {
    Q lo, hi;
    bool is_point() const { return lo == hi; }
};

std::vector<UPoly> sturm_sequence(const UPoly& p);
// Number of distinct real roots of p in the half-open interval (a, b].
int count_roots(const std::vector<UPoly>& sturm, const Q& a, const Q& b);

// Isolating intervals for the distinct real roots of p in the open interval
// (lo, hi), sorted. Throws std::invalid_argument on the zero polynomial.
std::vector<Interval> isolate_real_roots(const UPoly& p, const Q& lo, const Q& hi);

// Real algebraic number: the unique root of the squarefree polynomial `poly`
// inside `iv` (which is a point when the root is rational).
class AlgebraicReal {
public:
    AlgebraicReal(const Q& q);
    AlgebraicReal(UPoly squarefree, Interval iv);

    bool is_rational() const { return iv_.is_point(); }
    Q rational() const { return iv_.lo; }
    const UPoly& poly() const { return p_; }
    const Interval& interval() const { return iv_; }

    // Shrinks the isolating interval below `width`.
    void refine(const Q& width);
    // Exact sign of g at this number.
    int sign_of(const UPoly& g) const;
    double to_double() const;
    // Minimal polynomial degree if it is at most 2 (after removing rational
    // factors); used to move computations into Q or Q(sqrt D).
    std::optional<UPoly> low_degree_poly() const;
    int compare(const AlgebraicReal& o) const;
    int compare(const Q& q) const;
    std::string to_string() const;

private:
    UPoly p_;
    mutable Interval iv_;
    mutable std::vector<UPoly> sturm_;
};

// Distinct real roots of p in (lo, hi) as algebraic numbers.
std::vector<AlgebraicReal> real_roots(const UPoly& p, const Q& lo, const Q& hi);

// Decomposition of (lo, hi) by the roots of a finite family of polynomials:
// the sorted distinct roots and one rational sample per open cell between
// consecutive roots (cells.size() == roots.size() + 1).
struct CellDecomposition {
    std::vector<AlgebraicReal> roots;
    std::vector<Q> cells;
};
CellDecomposition decompose(const std::vector<UPoly>& polys, const Q& lo, const Q& hi);

// Simplest dyadic rational in the open interval (a, b).
Q dyadic_between(const Q& a, const Q& b);

}  // namespace crn
