#pragma once

#include "crnbif/network.hpp"
#include "crnbif/roots.hpp"
#include "crnbif/sign.hpp"
#include "crnbif/upoly.hpp"

#include <optional>
#include <string>
#include <vector>

namespace crn {

// Extreme rays of ker(Gamma) ∩ R^m_{>=0}, integer and coprime, sorted.
struct KernelCone {
    std::vector<std::vector<Z>> generators;
    size_t dimension = 0;  // m - r
};

KernelCone kernel_cone(const Network& net);

// Kernel-cone reduction of the Jacobian at positive equilibria. With one
// generator v is constant; with two, v(a) = (1-a) g1 + a g2 and a ∈ (0,1).
// M = Gamma diag(v) A, so J = M diag(1/x) (lambda fixed to 1).
struct Reduction {
    KernelCone cone;
    std::vector<UPoly> v;
    std::vector<std::vector<UPoly>> M;
    UPoly det;    // det M
    UPoly trace;  // trace M (diagonal sum, not tr J)
    bool parameterised() const { return cone.generators.size() == 2; }
    // planar shorthands
    const UPoly& P() const { return M[0][0]; }
    const UPoly& Qp() const { return M[1][1]; }
};

Reduction reduce(const Network& net);

// J with the positive denominator prod(x) cleared: J = num / denom.
struct SymbolicJacobian {
    std::vector<std::string> vars;  // a, then species variables
    std::vector<std::vector<MPoly>> num;
    MPoly denom;
    MPoly trace_num() const;  // tr J * denom
    MPoly det_scaled() const;  // det J * prod(x), which is det M(a)
};

SymbolicJacobian symbolic_jacobian(const Network& net);

struct EquilibriumDecision {
    bool admits = false;
    SignDecision det_sign;  // of det M(a) on a ∈ (0,1)
    std::optional<Q> alpha;  // witness with det != 0 (x = 1)
};

EquilibriumDecision admits_positive_nondegenerate_equilibrium(const Network& net);

// kappa = v(a) ∘ x^{-A}: makes x an equilibrium of the mass-action system.
QVec realise_kappa(const Network& net, const Reduction& red, const Q& alpha, const QVec& x);

struct Recoordinatisation {
    QMatrix G, v, W, U;
    std::vector<QVec> species_exponents;  // rows of G: kappa exponents scaling each x_i
    std::vector<QVec> outer_exponents;    // rows of G + 1 v
    std::vector<QVec> inner_exponents;    // rows of W
    size_t outer_count() const { return outer_exponents.size(); }
    size_t inner_count() const { return inner_exponents.size(); }
    size_t reduced_family = 0;  // m - 2 after rescaling time
};

// U defaults to the lexicographically first set of standard basis columns
// making [A | 1 | U] invertible.
Recoordinatisation recoordinatise(const Network& net, std::optional<QMatrix> U = std::nullopt);
bool identity_holds(const Network& net, const Recoordinatisation& rc);

struct Equilibrium {
    std::vector<double> x;  // approximate coordinates
    std::optional<AlgebraicReal> alpha;  // kernel-cone coordinate (primary route)
    int det_sign = 0;
    int trace_sign = 0;
};

struct EquilibriumCount {
    bool continuum = false;
    std::vector<Equilibrium> equilibria;
    std::string route;  // solvability | resultant
    size_t count() const { return equilibria.size(); }
};

// Positive equilibria at fixed rate constants. Uses the solvability
// polynomial in a when rank [A|1] = n+1 and the kernel is two-dimensional,
// resultant elimination otherwise.
EquilibriumCount count_positive_equilibria(const Network& net, const QVec& kappa);
EquilibriumCount count_positive_equilibria_resultant(const Network& net, const QVec& kappa);

// Integer row W with W A = 0 and W 1 = 0 (planar (2,4,2) case), if unique.
std::optional<std::vector<Z>> solvability_row(const Network& net);

}  // namespace crn
