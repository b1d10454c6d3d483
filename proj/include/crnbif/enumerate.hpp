#pragma once

#include "crnbif/network.hpp"

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace crn {

struct ClassSpec {
    std::string name;
    size_t n_species = 2;
    size_t n_reactions = 4;
    size_t rank = 2;  // 0: any
    int max_reactant = 2;
    int max_product = 3;

    bool distinct_reactants = false;
    bool nontrivial = true;
    bool no_redundant = false;
    bool sources_not_collinear = false;
    bool mixed_source = false;          // X+Y is a reactant complex
    bool autocatalytic_square = false;  // 2X->3X or 2Y->3Y (by direction)
    bool positive_nondegenerate = false;

    std::vector<std::string> flag_names() const;
};

// Named specs: fold, fold-bimolecular, hopf.
ClassSpec named_spec(const std::string& name);

struct CatalogEntry {
    CanonicalKey key;  // dynamic_key
    Network net;       // representative
};

struct Catalog {
    ClassSpec spec;
    size_t raw_count = 0;
    std::vector<CatalogEntry> entries;  // sorted by key
    const CatalogEntry* find(const CanonicalKey& key) const;
    size_t size() const { return entries.size(); }
};

std::vector<Complex> enumerate_complexes(size_t n_species, int max_molecularity);

// Closed-form raw candidate count for a spec (before any Gamma-level filter).
size_t raw_candidate_count(const ClassSpec& spec);

// Representative of a dynamical class: for each (source, direction) the
// product of least molecularity, larger multiples preferred on ties.
Network class_representative(const Network& net, int max_product);

Catalog enumerate_networks(const ClassSpec& spec, unsigned jobs = 1);

// Union-find classes under diagonal equivalence; result[i] is the index of
// the class representative (smallest member index) of entry i.
std::vector<size_t> partition_diagonal(const std::vector<Network>& nets);
size_t class_count(const std::vector<size_t>& partition);

void write_jsonl(std::ostream& os, const Catalog& cat);
void write_csv(std::ostream& os, const Catalog& cat);

bool sources_collinear(const std::vector<Complex>& sources);
bool is_mixed(const Complex& c);  // involves at least two species
bool has_mixed_source(const Network& net);
// Some reaction 2S -> 3S, up to the direction (S -> 2S, i.e. primitive e_S from 2S).
bool has_autocatalytic_square(const Network& net);

}  // namespace crn
