#include "crnbif/inheritance.hpp"

#include "crnbif/bifurcation.hpp"
#include "crnbif/enumerate.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <sstream>
#include <thread>

namespace crn {

std::string to_string(Enlargement e) {
    switch (e) {
        case Enlargement::E1: return "E1";
        case Enlargement::E2: return "E2";
        case Enlargement::E3: return "E3";
        case Enlargement::E6: return "E6";
    }
    return "?";
}

std::string to_string(Behaviour b) {
    switch (b) {
        case Behaviour::Fold: return "fold";
        case Behaviour::Hopf: return "hopf";
        case Behaviour::BT: return "bt";
    }
    return "?";
}

namespace {

std::string join_idx(const std::vector<size_t>& v, const std::vector<std::string>* names = nullptr) {
    std::ostringstream os;
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) os << ",";
        if (names)
            os << (*names)[v[i]];
        else
            os << v[i];
    }
    return os.str();
}

template <class F>
void parallel_for(size_t n, unsigned jobs, F f) {
    if (jobs <= 1 || n < 2) {
        for (size_t i = 0; i < n; ++i) f(i);
        return;
    }
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < jobs; ++t)
        pool.emplace_back([&] {
            for (size_t i; (i = next++) < n;) f(i);
        });
    for (auto& th : pool) th.join();
}

bool is_flow(const Reaction& r, size_t& species, bool& inflow) {
    const Complex& a = r.reactant;
    const Complex& b = r.product;
    auto unit = [&](const Complex& c, size_t& i) {
        int tot = 0;
        for (size_t k = 0; k < c.s.size(); ++k)
            if (c.s[k]) {
                i = k;
                tot += c.s[k];
            }
        return tot == 1;
    };
    if (a.is_zero() && unit(b, species)) {
        inflow = true;
        return true;
    }
    if (b.is_zero() && unit(a, species)) {
        inflow = false;
        return true;
    }
    return false;
}

}  // namespace

std::vector<InducedSubnetwork> induced_subnetworks(const Network& net) {
    std::vector<InducedSubnetwork> out;
    size_t n = net.n();
    for (unsigned smask = 0; smask < (1u << n); ++smask) {
        std::vector<size_t> ds;
        for (size_t i = 0; i < n; ++i)
            if (smask >> i & 1) ds.push_back(i);
        if (ds.size() == n) continue;
        Network s = net.delete_species(ds);
        size_t m = s.m();
        for (unsigned long rmask = 0; rmask < (1ul << m); ++rmask) {
            std::vector<size_t> dr;
            for (size_t j = 0; j < m; ++j)
                if (rmask >> j & 1) dr.push_back(j);
            if (dr.size() == m) continue;
            InducedSubnetwork sub{s.delete_reactions(dr), ds, dr, ""};
            std::string d;
            if (!ds.empty()) d += "delete species " + join_idx(ds, &net.species());
            if (!dr.empty()) d += std::string(d.empty() ? "" : "; ") + "delete reactions " + join_idx(dr);
            sub.description = d.empty() ? "itself" : d;
            out.push_back(std::move(sub));
        }
    }
    return out;
}

std::vector<EnlargementWitness> predecessors(const Network& big) {
    std::vector<EnlargementWitness> out;
    std::set<CanonicalKey> seen;
    seen.insert(canonical_key(big));
    auto emit = [&](const Network& small, std::vector<Enlargement> chain, const std::string& detail) {
        if (small.m() == 0) return;
        if (!seen.insert(canonical_key(small)).second) return;
        out.push_back({std::move(chain), small, detail, std::nullopt});
    };
    size_t r = big.rank();
    for (const auto& ind : induced_subnetworks(big)) {
        const Network& S = ind.net;
        if (S.rank() != r) continue;
        std::vector<Enlargement> tail(ind.deleted_species.size(), Enlargement::E3);
        tail.insert(tail.end(), ind.deleted_reactions.size(), Enlargement::E1);
        auto with = [&](Enlargement first) {
            std::vector<Enlargement> c{first};
            c.insert(c.end(), tail.begin(), tail.end());
            return c;
        };
        if (!tail.empty()) emit(S, tail, ind.description);

        // E2: S is fully open; undo by removing a nonempty set of its flows
        {
            std::vector<size_t> flows;
            std::set<std::pair<size_t, bool>> have;
            for (size_t j = 0; j < S.m(); ++j) {
                size_t sp;
                bool in;
                if (is_flow(S.reactions()[j], sp, in)) {
                    flows.push_back(j);
                    have.insert({sp, in});
                }
            }
            if (have.size() == 2 * S.n() && flows.size() < 16) {
                for (unsigned long mask = 1; mask < (1ul << flows.size()); ++mask) {
                    std::vector<size_t> drop;
                    for (size_t k = 0; k < flows.size(); ++k)
                        if (mask >> k & 1) drop.push_back(flows[k]);
                    if (drop.size() == S.m()) continue;
                    emit(S.delete_reactions(drop), with(Enlargement::E2), ind.description + "; remove flows " + join_idx(drop));
                }
            }
        }

        // E6 with one split: p: a -> C, q: C -> b merged into a -> b, the
        // new species living only in C with rank-one stoichiometry
        const auto& rx = S.reactions();
        QMatrix G = S.gamma();
        for (size_t p = 0; p < rx.size(); ++p)
            for (size_t q = 0; q < rx.size(); ++q) {
                if (p == q || rx[p].product != rx[q].reactant) continue;
                const Complex& C = rx[p].product;
                std::vector<size_t> supp;
                for (size_t i = 0; i < S.n(); ++i)
                    if (C.s[i]) supp.push_back(i);
                for (unsigned mask = 1; mask < (1u << supp.size()); ++mask) {
                    std::vector<size_t> N;
                    for (size_t k = 0; k < supp.size(); ++k)
                        if (mask >> k & 1) N.push_back(supp[k]);
                    if (N.size() == S.n()) continue;
                    bool confined = true;
                    for (size_t j = 0; j < rx.size() && confined; ++j)
                        for (size_t i : N) {
                            int in_r = rx[j].reactant.s[i], in_p = rx[j].product.s[i];
                            if ((j != q && in_r) || (j != p && in_p)) confined = false;
                        }
                    if (!confined) continue;
                    QMatrix sub(N.size(), S.m());
                    for (size_t a = 0; a < N.size(); ++a)
                        for (size_t j = 0; j < S.m(); ++j) sub(a, j) = G(N[a], j);
                    if (sub.rank() != 1) continue;
                    Reaction merged{rx[p].reactant, rx[q].product};
                    if (merged.reactant == merged.product) continue;
                    std::vector<Reaction> keep;
                    bool dup = false;
                    for (size_t j = 0; j < rx.size(); ++j)
                        if (j != p && j != q) {
                            keep.push_back(rx[j]);
                            dup = dup || rx[j] == merged;
                        }
                    if (dup) continue;
                    keep.push_back(merged);
                    Network contracted = Network(S.n(), keep, S.species()).delete_species(N);
                    if (contracted.m() != keep.size()) continue;
                    std::string d = ind.description + "; merge " + format_reaction(rx[p], S.species()) + " and " +
                                    format_reaction(rx[q], S.species()) + ", new species " + join_idx(N, &S.species());
                    emit(contracted, with(Enlargement::E6), d);
                }
            }
    }
    return out;
}

std::vector<Network> dynamic_variants(const Network& net, int max_product) {
    std::vector<std::vector<Reaction>> choices;
    for (const auto& r : net.reactions()) {
        auto d = primitive(r.vec());
        std::vector<Reaction> opts;
        int slope = 0;
        for (int x : d) slope += x;
        for (int k = 1;; ++k) {
            Complex p = r.reactant;
            bool ok = true;
            for (size_t i = 0; i < p.s.size(); ++i) {
                p.s[i] += k * d[i];
                ok = ok && p.s[i] >= 0;
            }
            if (!ok) break;
            if (p.molecularity() <= max_product)
                opts.push_back({r.reactant, p});
            else if (slope >= 0)
                break;
        }
        if (std::find(opts.begin(), opts.end(), r) == opts.end()) opts.insert(opts.begin(), r);
        choices.push_back(opts);
    }
    std::vector<Network> out;
    std::vector<size_t> idx(choices.size(), 0);
    for (;;) {
        std::vector<Reaction> rx;
        for (size_t j = 0; j < choices.size(); ++j) rx.push_back(choices[j][idx[j]]);
        std::set<Reaction> uniq(rx.begin(), rx.end());
        if (uniq.size() == rx.size()) out.emplace_back(net.n(), rx, net.species());
        size_t j = 0;
        while (j < idx.size() && ++idx[j] == choices[j].size()) idx[j++] = 0;
        if (j == idx.size()) break;
    }
    return out;
}

std::optional<EnlargementWitness> detect_enlargement(const Network& small, const Network& big) {
    if (small.n() > big.n() + 1 || small.m() > big.m() + 1) return std::nullopt;
    auto key = canonical_key(small);
    for (auto& w : predecessors(big))
        if (canonical_key(w.small) == key) return w;
    return std::nullopt;
}

bool shows_behaviour(const Network& net, Behaviour b) {
    if (!is_dynamically_nontrivial(net)) return false;
    size_t r = net.rank();
    if (r == 1) return b == Behaviour::Fold && net.is_quadratic() && rank_one_fold(net).found;
    if (net.n() != 2 || r != 2) return false;
    if (kernel_cone(net).generators.size() > 2) return false;
    switch (b) {
        case Behaviour::Fold: return fold_analysis(net).kind == FoldKind::Nondegenerate;
        case Behaviour::Hopf: {
            if (!hopf_analysis(net).feasible) return false;
            auto k = focal_values(net).kind;
            return k != HopfKind::None && k != HopfKind::Vertical;
        }
        case Behaviour::BT: {
            auto f = fold_analysis(net);
            if (f.kind != FoldKind::Nondegenerate && f.kind != FoldKind::NilpotentOnly) return false;
            if (!hopf_analysis(net).feasible) return false;
            auto k = bt_analysis(net).kind;
            return k == BTKind::Supercritical || k == BTKind::Subcritical;
        }
    }
    return false;
}

Universe inheritance_universe(Behaviour b, unsigned jobs) {
    Universe u;
    u.behaviour = b;
    std::vector<Network> cands;
    for (size_t n = 1; n <= 2; ++n) {
        auto srcs = enumerate_complexes(n, 2), prods = enumerate_complexes(n, 3);
        std::vector<Reaction> rxs;
        for (const auto& s : srcs)
            for (const auto& p : prods)
                if (s != p) rxs.push_back({s, p});
        size_t R = rxs.size();
        auto add = [&](std::vector<Reaction> v) {
            Network net(n, std::move(v));
            if (net.trivial_species().empty()) cands.push_back(std::move(net));
        };
        for (size_t a = 0; a < R; ++a) {
            add({rxs[a]});
            for (size_t c = a + 1; c < R; ++c) {
                add({rxs[a], rxs[c]});
                for (size_t d = c + 1; d < R; ++d) add({rxs[a], rxs[c], rxs[d]});
            }
        }
    }
    std::vector<char> hit(cands.size(), 0);
    parallel_for(cands.size(), jobs, [&](size_t i) {
        try {
            hit[i] = shows_behaviour(cands[i], b);
        } catch (const std::runtime_error&) {
            hit[i] = 0;
        }
    });
    for (size_t i = 0; i < cands.size(); ++i)
        if (hit[i]) {
            u.keys.insert(canonical_key(cands[i]));
            u.nets.push_back(cands[i]);
        }
    std::ostringstream os;
    os << "quadratic trimolecular networks with at most 3 reactions and at most 2 species (" << cands.size()
       << " candidates, " << u.nets.size() << " showing " << to_string(b) << ")";
    u.description = os.str();
    return u;
}

AtomPartition atoms(const std::vector<Network>& nets, const Universe& u, unsigned jobs) {
    AtomPartition out;
    out.universe = u.description;
    out.entries.resize(nets.size());
    parallel_for(nets.size(), jobs, [&](size_t i) {
        for (const auto& v : dynamic_variants(nets[i])) {
            for (auto& w : predecessors(v))
                if (u.keys.count(canonical_key(w.small))) {
                    out.entries[i].atom = false;
                    out.entries[i].from = w;
                    if (canonical_key(v) != canonical_key(nets[i])) out.entries[i].from->variant = v;
                    return;
                }
        }
    });
    for (const auto& e : out.entries) (e.atom ? out.atoms : out.inheritors)++;
    return out;
}

}  // namespace crn
