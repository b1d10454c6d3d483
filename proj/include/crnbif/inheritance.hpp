#pragma once

#include "crnbif/network.hpp"

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace crn {

struct InducedSubnetwork {
    Network net;
    std::vector<size_t> deleted_species;    // indices in the parent
    std::vector<size_t> deleted_reactions;  // indices after species deletion
    std::string description;
};

// Every nonempty induced subnetwork (species deletions collapse trivial and
// repeated reactions). The parent itself is included with empty deletions.
std::vector<InducedSubnetwork> induced_subnetworks(const Network& net);

enum class Enlargement { E1, E2, E3, E6 };
std::string to_string(Enlargement e);

struct EnlargementWitness {
    std::vector<Enlargement> chain;  // applied in order, small -> big
    Network small;                   // as found inside big (species names of big)
    std::string detail;
    std::optional<Network> variant;  // member of big's dynamical class actually enlarged
};

// Members of the dynamical class of net reachable by replacing each product
// with another one on the same ray from its reactant (molecularity <= max_product).
std::vector<Network> dynamic_variants(const Network& net, int max_product = 3);

// All networks from which big is reached by: optionally one E2 or one
// single-split E6 (one inserted complex), followed by rank-preserving E1/E3
// steps. Each predecessor is listed once per canonical key.
std::vector<EnlargementWitness> predecessors(const Network& big);

std::optional<EnlargementWitness> detect_enlargement(const Network& small, const Network& big);

enum class Behaviour { Fold, Hopf, BT };
std::string to_string(Behaviour b);

// Does the network (any size the bifurcation module accepts) show the behaviour?
bool shows_behaviour(const Network& net, Behaviour b);

// Candidate smaller networks: quadratic, trimolecular, at most three
// reactions and two species, dynamically nontrivial, showing the behaviour;
// plus, for folds, the rank-one patterns {0->aX, X->0, 2X->3X}.
struct Universe {
    Behaviour behaviour;
    std::vector<Network> nets;
    std::set<CanonicalKey> keys;
    std::string description;
};

Universe inheritance_universe(Behaviour b, unsigned jobs = 1);

struct AtomEntry {
    bool atom = true;
    std::optional<EnlargementWitness> from;
};

struct AtomPartition {
    std::vector<AtomEntry> entries;
    size_t atoms = 0, inheritors = 0;
    std::string universe;
};

// nets: the behaviour-positive members of a catalog (class representatives;
// every dynamic variant is searched).
AtomPartition atoms(const std::vector<Network>& nets, const Universe& u, unsigned jobs = 1);

}  // namespace crn
