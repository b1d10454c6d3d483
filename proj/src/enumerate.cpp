#include "crnbif/enumerate.hpp"

#include "crnbif/equilibria.hpp"

#include <json.hpp>

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <thread>

namespace crn {

std::vector<std::string> ClassSpec::flag_names() const {
    std::vector<std::string> f;
    if (distinct_reactants) f.push_back("distinct-reactant-complexes");
    if (nontrivial) f.push_back("dynamically-nontrivial");
    if (no_redundant) f.push_back("no-redundant-reactions");
    if (sources_not_collinear) f.push_back("sources-not-collinear");
    if (mixed_source) f.push_back("contains-mixed-source");
    if (autocatalytic_square) f.push_back("contains-autocatalytic-square");
    if (positive_nondegenerate) f.push_back("admits-positive-nondegenerate-equilibrium");
    return f;
}

ClassSpec named_spec(const std::string& name) {
    ClassSpec s;
    s.name = name;
    if (name == "fold" || name == "fold-bimolecular") {
        s.max_product = name == "fold" ? 3 : 2;
        s.distinct_reactants = true;
        return s;
    }
    if (name == "hopf") {
        s.no_redundant = true;
        s.sources_not_collinear = true;
        s.mixed_source = true;
        s.autocatalytic_square = true;
        s.positive_nondegenerate = true;
        return s;
    }
    throw std::invalid_argument("unknown spec '" + name + "' (fold, fold-bimolecular, hopf)");
}

const CatalogEntry* Catalog::find(const CanonicalKey& key) const {
    auto it = std::lower_bound(entries.begin(), entries.end(), key,
                               [](const CatalogEntry& e, const CanonicalKey& k) { return e.key < k; });
    return it != entries.end() && it->key == key ? &*it : nullptr;
}

std::vector<Complex> enumerate_complexes(size_t n_species, int max_molecularity) {
    std::vector<Complex> out;
    for (int mol = 0; mol <= max_molecularity; ++mol) {
        // all compositions of mol into n parts, X-heavy first
        std::vector<int> c(n_species, 0);
        std::function<void(size_t, int)> rec = [&](size_t i, int left) {
            if (i + 1 == n_species) {
                c[i] = left;
                out.push_back(Complex{c});
                return;
            }
            for (int k = left; k >= 0; --k) {
                c[i] = k;
                rec(i + 1, left - k);
            }
        };
        if (n_species == 0) break;
        rec(0, mol);
    }
    return out;
}

bool sources_collinear(const std::vector<Complex>& sources) {
    std::vector<Complex> s = sources;
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    if (s.size() <= 2) return true;
    QMatrix d(s.size() - 1, s[0].s.size());
    for (size_t k = 1; k < s.size(); ++k)
        for (size_t i = 0; i < s[0].s.size(); ++i) d(k - 1, i) = s[k].s[i] - s[0].s[i];
    return d.rank() <= 1;
}

bool is_mixed(const Complex& c) {
    int nz = 0;
    for (int k : c.s) nz += k > 0;
    return nz >= 2;
}

bool has_autocatalytic_square(const Network& net) {
    for (const auto& r : net.reactions()) {
        auto d = primitive(r.vec());
        for (size_t i = 0; i < net.n(); ++i) {
            bool ok = true;
            for (size_t k = 0; k < net.n(); ++k) {
                ok = ok && r.reactant.s[k] == (k == i ? 2 : 0);
                ok = ok && d[k] == (k == i ? 1 : 0);
            }
            if (ok) return true;
        }
    }
    return false;
}

bool has_mixed_source(const Network& net) {
    auto s = net.sources();
    return std::any_of(s.begin(), s.end(), is_mixed);
}

namespace {

// Source multisets as index lists into `sources`, nondecreasing (or strictly
// increasing when distinct).
void source_multisets(size_t nsrc, size_t m, bool distinct, std::vector<std::vector<size_t>>& out) {
    std::vector<size_t> cur;
    std::function<void(size_t)> rec = [&](size_t start) {
        if (cur.size() == m) {
            out.push_back(cur);
            return;
        }
        for (size_t i = start; i < nsrc; ++i) {
            cur.push_back(i);
            rec(distinct ? i + 1 : i);
            cur.pop_back();
        }
    };
    rec(0);
}

bool source_filters(const ClassSpec& spec, const std::vector<Complex>& srcs) {
    if (spec.mixed_source && std::none_of(srcs.begin(), srcs.end(), is_mixed)) return false;
    if (spec.sources_not_collinear && sources_collinear(srcs)) return false;
    return true;
}

Z binom(long n, long k) {
    Z r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

}  // namespace

size_t raw_candidate_count(const ClassSpec& spec) {
    auto src = enumerate_complexes(spec.n_species, spec.max_reactant);
    auto prod = enumerate_complexes(spec.n_species, spec.max_product);
    std::vector<std::vector<size_t>> ms;
    source_multisets(src.size(), spec.n_reactions, spec.distinct_reactants, ms);
    Z total = 0;
    for (const auto& idx : ms) {
        std::vector<Complex> s;
        for (size_t i : idx) s.push_back(src[i]);
        if (!source_filters(spec, s)) continue;
        std::map<size_t, long> mult;
        for (size_t i : idx) ++mult[i];
        Z t = 1;
        for (auto [i, k] : mult) {
            // products must differ from the source; a source complex that is
            // out of product range excludes nothing
            bool in_range = src[i].molecularity() <= spec.max_product;
            t *= binom(static_cast<long>(prod.size()) - (in_range ? 1 : 0), k);
        }
        total += t;
    }
    return total.get_ui();
}

Network class_representative(const Network& net, int max_product) {
    size_t n = net.n();
    std::string best;
    Network out;
    for (const auto& p : all_permutations(n)) {
        Network q = net.permute_species(p);
        std::vector<std::pair<Complex, std::vector<int>>> rows;
        for (const auto& r : q.reactions()) rows.push_back({r.reactant, primitive(r.vec())});
        std::sort(rows.begin(), rows.end());
        std::string k;
        for (const auto& [s, d] : rows) {
            for (int x : s.s) k += std::to_string(x) + ",";
            for (int x : d) k += std::to_string(x) + ",";
            k += "|";
        }
        if (!best.empty() && k >= best) continue;
        best = k;
        std::vector<Reaction> rx;
        for (const auto& [s, d] : rows) {
            Complex chosen;
            int best_mol = 0, best_k = 0;
            for (int mult = 1; mult <= max_product + 2; ++mult) {
                Complex c{s.s};
                bool ok = true;
                for (size_t i = 0; i < n; ++i) {
                    c.s[i] += mult * d[i];
                    ok = ok && c.s[i] >= 0;
                }
                if (!ok || c.molecularity() > max_product) continue;
                if (chosen.s.empty() || c.molecularity() < best_mol || (c.molecularity() == best_mol && mult > best_k)) {
                    chosen = c;
                    best_mol = c.molecularity();
                    best_k = mult;
                }
            }
            if (chosen.s.empty()) throw std::logic_error("class_representative: no product within molecularity cap");
            rx.push_back({s, chosen});
        }
        out = Network(n, rx, {});
    }
    return out;
}

Catalog enumerate_networks(const ClassSpec& spec, unsigned jobs) {
    auto src = enumerate_complexes(spec.n_species, spec.max_reactant);
    auto prod = enumerate_complexes(spec.n_species, spec.max_product);
    std::vector<std::vector<size_t>> ms;
    source_multisets(src.size(), spec.n_reactions, spec.distinct_reactants, ms);

    Catalog cat;
    cat.spec = spec;
    std::map<CanonicalKey, Network> classes;
    std::mutex mu;
    size_t raw = 0;

    auto work = [&](size_t from, size_t step) {
        std::map<CanonicalKey, Network> local;
        size_t local_raw = 0;
        for (size_t t = from; t < ms.size(); t += step) {
            const auto& idx = ms[t];
            std::vector<Complex> s;
            for (size_t i : idx) s.push_back(src[i]);
            if (!source_filters(spec, s)) continue;
            // distinct sources with multiplicities
            std::vector<std::pair<Complex, size_t>> groups;
            for (const auto& c : s) {
                if (!groups.empty() && groups.back().first == c) ++groups.back().second;
                else groups.push_back({c, 1});
            }
            std::vector<std::vector<std::vector<Complex>>> choices;
            for (const auto& [c, k] : groups) {
                std::vector<Complex> opts;
                for (const auto& p : prod)
                    if (p != c) opts.push_back(p);
                std::vector<std::vector<Complex>> sel;
                std::vector<bool> pick(opts.size(), false);
                std::fill(pick.begin(), pick.begin() + static_cast<long>(k), true);
                do {
                    std::vector<Complex> chosen;
                    for (size_t i = 0; i < opts.size(); ++i)
                        if (pick[i]) chosen.push_back(opts[i]);
                    sel.push_back(chosen);
                } while (std::prev_permutation(pick.begin(), pick.end()));
                choices.push_back(sel);
            }
            std::vector<size_t> ctr(choices.size(), 0);
            while (true) {
                ++local_raw;
                std::vector<Reaction> rx;
                for (size_t g = 0; g < groups.size(); ++g)
                    for (const auto& p : choices[g][ctr[g]]) rx.push_back({groups[g].first, p});
                Network net(spec.n_species, rx, {});
                bool keep = spec.rank == 0 || net.rank() == spec.rank;
                keep = keep && (!spec.autocatalytic_square || has_autocatalytic_square(net));
                keep = keep && (!spec.no_redundant || !has_redundant_reaction(net));
                keep = keep && (!spec.nontrivial || is_dynamically_nontrivial(net));
                if (keep) {
                    auto key = dynamic_key(net);
                    if (!local.count(key)) local.emplace(key, class_representative(net, spec.max_product));
                }
                size_t g = 0;
                while (g < ctr.size() && ++ctr[g] == choices[g].size()) ctr[g++] = 0;
                if (g == ctr.size()) break;
            }
        }
        std::lock_guard<std::mutex> lock(mu);
        raw += local_raw;
        for (auto& [k, v] : local) classes.emplace(k, std::move(v));
    };
    jobs = std::max(1u, jobs);
    if (jobs == 1) {
        work(0, 1);
    } else {
        std::vector<std::thread> pool;
        for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(work, j, jobs);
        for (auto& t : pool) t.join();
    }
    cat.raw_count = raw;
    for (auto& [k, net] : classes) {
        if (spec.positive_nondegenerate && !admits_positive_nondegenerate_equilibrium(net).admits) continue;
        cat.entries.push_back({k, net});
    }
    return cat;
}

// ---------------------------------------------------------------- diagonal classes

namespace {

struct UnionFind {
    std::vector<size_t> p;
    explicit UnionFind(size_t n) : p(n) { std::iota(p.begin(), p.end(), 0); }
    size_t find(size_t x) { return p[x] == x ? x : p[x] = find(p[x]); }
    void unite(size_t a, size_t b) {
        a = find(a);
        b = find(b);
        if (a != b) p[std::max(a, b)] = std::min(a, b);
    }
};

std::string source_signature(const Network& net) {
    std::string best;
    for (const auto& p : all_permutations(net.n())) {
        auto s = net.permute_species(p).sources();
        std::sort(s.begin(), s.end());
        std::string k;
        for (const auto& c : s) {
            for (int x : c.s) k += std::to_string(x) + ",";
            k += "|";
        }
        if (best.empty() || k < best) best = k;
    }
    return best;
}

}  // namespace

std::vector<size_t> partition_diagonal(const std::vector<Network>& nets) {
    UnionFind uf(nets.size());
    std::map<std::string, std::vector<size_t>> buckets;
    for (size_t i = 0; i < nets.size(); ++i) buckets[source_signature(nets[i])].push_back(i);
    for (const auto& [sig, idx] : buckets)
        for (size_t a = 0; a < idx.size(); ++a)
            for (size_t b = a + 1; b < idx.size(); ++b) {
                if (uf.find(idx[a]) == uf.find(idx[b])) continue;
                if (equivalent(nets[idx[a]], nets[idx[b]], EquivalenceMode::Diagonal)) uf.unite(idx[a], idx[b]);
            }
    std::vector<size_t> out(nets.size());
    for (size_t i = 0; i < nets.size(); ++i) out[i] = uf.find(i);
    return out;
}

size_t class_count(const std::vector<size_t>& partition) {
    size_t c = 0;
    for (size_t i = 0; i < partition.size(); ++i) c += partition[i] == i;
    return c;
}

// ---------------------------------------------------------------- output

void write_jsonl(std::ostream& os, const Catalog& cat) {
    for (const auto& e : cat.entries) {
        nlohmann::ordered_json j;
        j["schema"] = "crnbif.catalog/1";
        j["spec"] = cat.spec.name;
        j["key"] = e.key;
        j["text"] = format_network_raw(e.net);
        j["flags"] = cat.spec.flag_names();
        j["counts"] = {{"species", e.net.n()}, {"reactions", e.net.m()}, {"rank", e.net.rank()}};
        os << j.dump() << "\n";
    }
}

void write_csv(std::ostream& os, const Catalog& cat) {
    os << "index,text,rank,distinct_sources\n";
    for (size_t i = 0; i < cat.entries.size(); ++i) {
        const auto& n = cat.entries[i].net;
        auto s = n.sources();
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
        os << i + 1 << ",\"" << format_network_raw(n) << "\"," << n.rank() << "," << s.size() << "\n";
    }
}

}  // namespace crn
