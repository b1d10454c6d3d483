#pragma once

#include "crnbif/lp.hpp"
#include "crnbif/matrix.hpp"
#include "crnbif/mpoly.hpp"

#include <compare>
#include <stdexcept>
#include <string>
#include <vector>

namespace crn {

struct Complex {
    std::vector<int> s;  // stoichiometry per species

    int molecularity() const;
    bool is_zero() const { return molecularity() == 0; }
    auto operator<=>(const Complex&) const = default;
};

struct Reaction {
    Complex reactant, product;
    std::vector<int> vec() const;
    auto operator<=>(const Reaction&) const = default;
};

struct ParseError : std::invalid_argument {
    size_t position;
    ParseError(const std::string& msg, size_t pos)
        : std::invalid_argument(msg + " at position " + std::to_string(pos)), position(pos) {}
};

class Network {
public:
    Network() = default;
    Network(size_t n_species, std::vector<Reaction> reactions, std::vector<std::string> names = {});

    size_t n() const { return n_; }
    size_t m() const { return rx_.size(); }
    const std::vector<Reaction>& reactions() const { return rx_; }
    const std::vector<std::string>& species() const { return names_; }

    QMatrix gamma() const;    // n x m, product - reactant
    QMatrix gamma_l() const;  // reactant stoichiometries
    QMatrix gamma_r() const;  // product stoichiometries
    QMatrix A() const { return gamma_l().transpose(); }
    size_t rank() const;

    bool is_quadratic() const;  // every reactant bimolecular
    int max_reactant_molecularity() const;
    int max_product_molecularity() const;
    std::vector<size_t> trivial_species() const;
    std::vector<Complex> sources() const;  // reactant complex per reaction

    Network permute_species(const std::vector<size_t>& perm) const;  // new index of old species i = perm[i]
    // Deletes species (and reactions that become trivial or duplicate).
    Network delete_species(const std::vector<size_t>& idx) const;
    Network delete_reactions(const std::vector<size_t>& idx) const;
    Network add_reaction(const Reaction& r) const;

private:
    size_t n_ = 0;
    std::vector<Reaction> rx_;
    std::vector<std::string> names_;
};

Network parse_network(const std::string& text, size_t min_species = 0);
std::string format_complex(const Complex& c, const std::vector<std::string>& names);
std::string format_reaction(const Reaction& r, const std::vector<std::string>& names);
// Canonical text: species order and reaction order fixed by canonical_key.
std::string format_network(const Network& net);
// Text in the network's own species and reaction order.
std::string format_network_raw(const Network& net);

using CanonicalKey = std::string;
CanonicalKey canonical_key(const Network& net);
Network canonical_form(const Network& net);
// Key of the dynamical class used by the catalogs: sorted (source, primitive
// reaction direction) pairs minimised over species permutations.
CanonicalKey dynamic_key(const Network& net);

LPResult positive_kernel(const Network& net);
bool is_dynamically_nontrivial(const Network& net);
bool has_redundant_reaction(const Network& net);

enum class EquivalenceMode { Dynamic, Simple, Diagonal };
// All three modes quotient by species permutation.
bool equivalent(const Network& a, const Network& b, EquivalenceMode mode);

// Species-variable names (lowercase species names) followed by k1..km.
std::vector<std::string> rhs_variables(const Network& net);
std::vector<MPoly> mass_action_rhs(const Network& net);

std::vector<int> primitive(const std::vector<int>& v);
std::vector<std::vector<size_t>> all_permutations(size_t n);

}  // namespace crn
