#include "crnbif/network.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <optional>
#include <numeric>
#include <set>
#include <sstream>

namespace crn {

int Complex::molecularity() const { return std::accumulate(s.begin(), s.end(), 0); }

std::vector<int> Reaction::vec() const {
    std::vector<int> v(product.s.size());
    for (size_t i = 0; i < v.size(); ++i) v[i] = product.s[i] - reactant.s[i];
    return v;
}

static std::vector<std::string> default_names(size_t n) {
    static const char* base[] = {"X", "Y", "Z", "W"};
    std::vector<std::string> v;
    for (size_t i = 0; i < n; ++i) v.push_back(i < 4 ? base[i] : "S" + std::to_string(i));
    return v;
}

Network::Network(size_t n_species, std::vector<Reaction> reactions, std::vector<std::string> names)
    : n_(n_species), rx_(std::move(reactions)), names_(std::move(names)) {
    if (names_.empty()) names_ = default_names(n_);
    if (names_.size() != n_) throw std::invalid_argument("species name count mismatch");
    std::set<Reaction> seen;
    for (const auto& r : rx_) {
        if (r.reactant.s.size() != n_ || r.product.s.size() != n_)
            throw std::invalid_argument("complex length does not match species count");
        for (size_t i = 0; i < n_; ++i)
            if (r.reactant.s[i] < 0 || r.product.s[i] < 0) throw std::invalid_argument("negative stoichiometry");
        if (r.reactant == r.product) throw std::invalid_argument("reactant equals product");
        if (!seen.insert(r).second) throw std::invalid_argument("duplicate reaction");
    }
}

QMatrix Network::gamma() const {
    QMatrix g(n_, m());
    for (size_t j = 0; j < m(); ++j) {
        auto v = rx_[j].vec();
        for (size_t i = 0; i < n_; ++i) g(i, j) = v[i];
    }
    return g;
}

QMatrix Network::gamma_l() const {
    QMatrix g(n_, m());
    for (size_t j = 0; j < m(); ++j)
        for (size_t i = 0; i < n_; ++i) g(i, j) = rx_[j].reactant.s[i];
    return g;
}

QMatrix Network::gamma_r() const {
    QMatrix g(n_, m());
    for (size_t j = 0; j < m(); ++j)
        for (size_t i = 0; i < n_; ++i) g(i, j) = rx_[j].product.s[i];
    return g;
}

size_t Network::rank() const { return gamma().rank(); }

bool Network::is_quadratic() const { return max_reactant_molecularity() <= 2; }

int Network::max_reactant_molecularity() const {
    int m = 0;
    for (const auto& r : rx_) m = std::max(m, r.reactant.molecularity());
    return m;
}

int Network::max_product_molecularity() const {
    int m = 0;
    for (const auto& r : rx_) m = std::max(m, r.product.molecularity());
    return m;
}

std::vector<size_t> Network::trivial_species() const {
    std::vector<size_t> t;
    for (size_t i = 0; i < n_; ++i) {
        bool zero = true;
        for (const auto& r : rx_) zero = zero && r.reactant.s[i] == r.product.s[i];
        if (zero) t.push_back(i);
    }
    return t;
}

std::vector<Complex> Network::sources() const {
    std::vector<Complex> s;
    for (const auto& r : rx_) s.push_back(r.reactant);
    return s;
}

Network Network::permute_species(const std::vector<size_t>& perm) const {
    auto apply = [&](const Complex& c) {
        Complex d{std::vector<int>(n_, 0)};
        for (size_t i = 0; i < n_; ++i) d.s[perm[i]] = c.s[i];
        return d;
    };
    std::vector<Reaction> r;
    for (const auto& x : rx_) r.push_back({apply(x.reactant), apply(x.product)});
    std::vector<std::string> names(n_);
    for (size_t i = 0; i < n_; ++i) names[perm[i]] = names_[i];
    return Network(n_, std::move(r), std::move(names));
}

Network Network::delete_species(const std::vector<size_t>& idx) const {
    std::set<size_t> del(idx.begin(), idx.end());
    std::vector<size_t> keep;
    for (size_t i = 0; i < n_; ++i)
        if (!del.count(i)) keep.push_back(i);
    auto cut = [&](const Complex& c) {
        Complex d;
        for (size_t i : keep) d.s.push_back(c.s[i]);
        return d;
    };
    std::vector<Reaction> out;
    std::set<Reaction> seen;
    for (const auto& r : rx_) {
        Reaction q{cut(r.reactant), cut(r.product)};
        if (q.reactant == q.product || !seen.insert(q).second) continue;
        out.push_back(q);
    }
    std::vector<std::string> names;
    for (size_t i : keep) names.push_back(names_[i]);
    return Network(keep.size(), std::move(out), std::move(names));
}

Network Network::delete_reactions(const std::vector<size_t>& idx) const {
    std::set<size_t> del(idx.begin(), idx.end());
    std::vector<Reaction> out;
    for (size_t j = 0; j < m(); ++j)
        if (!del.count(j)) out.push_back(rx_[j]);
    return Network(n_, std::move(out), names_);
}

Network Network::add_reaction(const Reaction& r) const {
    auto v = rx_;
    v.push_back(r);
    return Network(n_, std::move(v), names_);
}

// ---------------------------------------------------------------- parsing

namespace {

struct Parser {
    const std::string& text;
    std::vector<std::string> names;

    size_t species_index(char c, size_t pos) {
        std::string s(1, c);
        if (c != 'X' && c != 'Y' && c != 'Z') throw ParseError(std::string("unknown species '") + c + "'", pos);
        auto it = std::find(names.begin(), names.end(), s);
        if (it != names.end()) return static_cast<size_t>(it - names.begin());
        names.push_back(s);
        return names.size() - 1;
    }

    // Parses text[b, e) into a sparse complex (species index -> coefficient).
    std::map<size_t, int> complex(size_t b, size_t e) {
        while (b < e && std::isspace(static_cast<unsigned char>(text[b]))) ++b;
        while (e > b && std::isspace(static_cast<unsigned char>(text[e - 1]))) --e;
        if (b == e) throw ParseError("empty complex", b);
        std::map<size_t, int> c;
        if (e - b == 1 && text[b] == '0') return c;
        size_t i = b;
        while (i < e) {
            while (i < e && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
            size_t start = i;
            int coef = 0;
            bool has_digits = false;
            while (i < e && std::isdigit(static_cast<unsigned char>(text[i]))) {
                coef = coef * 10 + (text[i] - '0');
                has_digits = true;
                ++i;
                if (coef > 1000) throw ParseError("coefficient too large", start);
            }
            while (i < e && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
            if (i >= e || !std::isalpha(static_cast<unsigned char>(text[i]))) throw ParseError("malformed term", start);
            if (has_digits && coef == 0) throw ParseError("zero coefficient", start);
            size_t sp = species_index(text[i], i);
            c[sp] += has_digits ? coef : 1;
            ++i;
            while (i < e && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
            if (i < e) {
                if (text[i] != '+') throw ParseError("expected '+'", i);
                ++i;
                size_t j = i;
                while (j < e && std::isspace(static_cast<unsigned char>(text[j]))) ++j;
                if (j == e) throw ParseError("dangling '+'", i);
            }
        }
        return c;
    }
};

}  // namespace

Network parse_network(const std::string& text, size_t min_species) {
    Parser p{text, {}};
    struct Raw {
        std::map<size_t, int> a, b;
        size_t pos;
    };
    std::vector<Raw> raws;
    size_t i = 0;
    while (i <= text.size()) {
        size_t e = i;
        while (e < text.size() && text[e] != ';' && text[e] != '\n') ++e;
        std::string seg = text.substr(i, e - i);
        bool blank = std::all_of(seg.begin(), seg.end(), [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
        if (!blank) {
            size_t rev = seg.find("<->");
            size_t fwd = seg.find("->");
            if (fwd == std::string::npos) throw ParseError("missing '->'", i);
            if (rev != std::string::npos) {
                if (seg.find("->", rev + 3) != std::string::npos) throw ParseError("more than one arrow", i);
                auto a = p.complex(i, i + rev);
                auto b = p.complex(i + rev + 3, e);
                raws.push_back({a, b, i});
                raws.push_back({b, a, i});
            } else {
                if (seg.find("->", fwd + 2) != std::string::npos) throw ParseError("more than one arrow", i);
                auto a = p.complex(i, i + fwd);
                auto b = p.complex(i + fwd + 2, e);
                raws.push_back({a, b, i});
            }
        }
        if (e >= text.size()) break;
        i = e + 1;
    }
    if (raws.empty()) throw ParseError("no reactions", 0);
    auto names = p.names;
    for (const char* extra : {"X", "Y", "Z"}) {
        if (names.size() >= min_species) break;
        if (std::find(names.begin(), names.end(), extra) == names.end()) names.push_back(extra);
    }
    size_t n = names.size();
    std::vector<Reaction> rx;
    std::set<Reaction> seen;
    for (const auto& r : raws) {
        Reaction q{Complex{std::vector<int>(n, 0)}, Complex{std::vector<int>(n, 0)}};
        for (auto [k, v] : r.a) q.reactant.s[k] = v;
        for (auto [k, v] : r.b) q.product.s[k] = v;
        if (q.reactant == q.product) throw ParseError("reactant equals product", r.pos);
        if (!seen.insert(q).second) throw ParseError("duplicate reaction", r.pos);
        rx.push_back(q);
    }
    return Network(n, std::move(rx), std::move(names));
}

std::string format_complex(const Complex& c, const std::vector<std::string>& names) {
    std::string s;
    for (size_t i = 0; i < c.s.size(); ++i) {
        if (!c.s[i]) continue;
        if (!s.empty()) s += "+";
        if (c.s[i] > 1) s += std::to_string(c.s[i]);
        s += names[i];
    }
    return s.empty() ? "0" : s;
}

std::string format_reaction(const Reaction& r, const std::vector<std::string>& names) {
    return format_complex(r.reactant, names) + " -> " + format_complex(r.product, names);
}

std::string format_network_raw(const Network& net) {
    std::string s;
    for (const auto& r : net.reactions()) {
        if (!s.empty()) s += "; ";
        s += format_reaction(r, net.species());
    }
    return s;
}

std::string format_network(const Network& net) {
    Network c = canonical_form(net);
    return format_network_raw(Network(c.n(), c.reactions(), {}));
}

// ---------------------------------------------------------------- keys

std::vector<std::vector<size_t>> all_permutations(size_t n) {
    std::vector<size_t> p(n);
    std::iota(p.begin(), p.end(), 0);
    std::vector<std::vector<size_t>> out;
    do out.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    return out;
}

static std::string encode(const std::vector<std::vector<int>>& rows, size_t n) {
    std::ostringstream os;
    os << n << ":";
    for (const auto& r : rows) {
        for (size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << r[i];
        os << "|";
    }
    return os.str();
}

static std::vector<std::vector<int>> reaction_rows(const Network& net) {
    std::vector<std::vector<int>> rows;
    for (const auto& r : net.reactions()) {
        std::vector<int> row = r.reactant.s;
        row.insert(row.end(), r.product.s.begin(), r.product.s.end());
        rows.push_back(row);
    }
    std::sort(rows.begin(), rows.end());
    return rows;
}

CanonicalKey canonical_key(const Network& net) {
    std::string best;
    for (const auto& p : all_permutations(net.n())) {
        auto k = encode(reaction_rows(net.permute_species(p)), net.n());
        if (best.empty() || k < best) best = k;
    }
    return best;
}

Network canonical_form(const Network& net) {
    std::string best;
    Network out;
    for (const auto& p : all_permutations(net.n())) {
        Network q = net.permute_species(p);
        auto k = encode(reaction_rows(q), net.n());
        if (best.empty() || k < best) {
            best = k;
            auto rx = q.reactions();
            std::sort(rx.begin(), rx.end());
            out = Network(q.n(), rx, {});
        }
    }
    return out;
}

std::vector<int> primitive(const std::vector<int>& v) {
    int g = 0;
    for (int x : v) g = std::gcd(g, std::abs(x));
    if (g == 0) return v;
    std::vector<int> r;
    for (int x : v) r.push_back(x / g);
    return r;
}

CanonicalKey dynamic_key(const Network& net) {
    std::string best;
    for (const auto& p : all_permutations(net.n())) {
        Network q = net.permute_species(p);
        std::vector<std::vector<int>> rows;
        for (const auto& r : q.reactions()) {
            std::vector<int> row = r.reactant.s;
            auto d = primitive(r.vec());
            row.insert(row.end(), d.begin(), d.end());
            rows.push_back(row);
        }
        std::sort(rows.begin(), rows.end());
        auto k = encode(rows, net.n());
        if (best.empty() || k < best) best = k;
    }
    return best;
}

// ---------------------------------------------------------------- LP-based predicates

LPResult positive_kernel(const Network& net) {
    return lp_feasible(net.gamma(), std::vector<Bound>(net.m(), Bound::AtLeastOne));
}

bool is_dynamically_nontrivial(const Network& net) {
    bool f = positive_kernel(net).feasible;
    if (f && net.m() <= net.rank()) throw std::logic_error("nontrivial network with m <= r");
    return f;
}

// Is w in the closed cone generated by gens?
static bool in_cone(const std::vector<std::vector<int>>& gens, const std::vector<int>& w) {
    size_t n = w.size();
    QMatrix M(n, gens.size() + 1);
    std::vector<Bound> b;
    for (size_t j = 0; j < gens.size(); ++j) {
        for (size_t i = 0; i < n; ++i) M(i, j) = gens[j][i];
        b.push_back(Bound::NonNeg);
    }
    for (size_t i = 0; i < n; ++i) M(i, gens.size()) = -w[i];
    b.push_back(Bound::AtLeastOne);
    return lp_feasible(M, b).feasible;
}

bool has_redundant_reaction(const Network& net) {
    const auto& rx = net.reactions();
    for (size_t i = 0; i < rx.size(); ++i) {
        std::vector<std::vector<int>> others;
        for (size_t j = 0; j < rx.size(); ++j)
            if (j != i && rx[j].reactant == rx[i].reactant) others.push_back(rx[j].vec());
        if (!others.empty() && in_cone(others, rx[i].vec())) return true;
    }
    return false;
}

// ---------------------------------------------------------------- equivalences

namespace {

std::map<Complex, std::vector<std::vector<int>>> by_source(const Network& n) {
    std::map<Complex, std::vector<std::vector<int>>> m;
    for (const auto& r : n.reactions()) m[r.reactant].push_back(r.vec());
    return m;
}

bool same_sources(const Network& a, const Network& b) {
    auto sa = a.sources(), sb = b.sources();
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    return sa == sb;
}

bool dynamic_eq(const Network& a, const Network& b) {
    // reactions may be split or merged within a source, so compare source sets
    auto ma0 = by_source(a), mb0 = by_source(b);
    if (ma0.size() != mb0.size()) return false;
    for (const auto& [src, v] : ma0)
        if (!mb0.count(src)) return false;
    auto ma = by_source(a), mb = by_source(b);
    for (const auto& [src, va] : ma) {
        const auto& vb = mb.at(src);
        for (const auto& w : va)
            if (!in_cone(vb, w)) return false;
        for (const auto& w : vb)
            if (!in_cone(va, w)) return false;
    }
    return true;
}

bool simple_eq(const Network& a, const Network& b) {
    if (!same_sources(a, b)) return false;
    auto ma = by_source(a), mb = by_source(b);
    for (auto& [src, va] : ma) {
        auto vb = mb.at(src);
        std::vector<std::vector<int>> pa, pb;
        for (auto& v : va) pa.push_back(primitive(v));
        for (auto& v : vb) pb.push_back(primitive(v));
        std::sort(pa.begin(), pa.end());
        std::sort(pb.begin(), pb.end());
        if (pa != pb) return false;
    }
    return true;
}

// Given a column matching, is there a positive diagonal D1 with
// e_j parallel (positively) to D1 d_j for every column?
bool row_scaling_exists(const std::vector<std::vector<int>>& d, const std::vector<std::vector<int>>& e, size_t n) {
    // lambda_i / lambda_r = (e_i/d_i) / (e_r/d_r) on every column's support
    std::vector<std::vector<std::pair<size_t, Q>>> adj(n);
    for (size_t j = 0; j < d.size(); ++j) {
        int r = -1;
        for (size_t i = 0; i < n; ++i) {
            if ((d[j][i] > 0) != (e[j][i] > 0) || (d[j][i] < 0) != (e[j][i] < 0)) return false;
            if (d[j][i] == 0) continue;
            if (r < 0) {
                r = static_cast<int>(i);
                continue;
            }
            Q ratio = (Q(e[j][i]) / d[j][i]) / (Q(e[j][r]) / d[j][r]);
            adj[r].push_back({i, ratio});
            adj[i].push_back({static_cast<size_t>(r), 1 / ratio});
        }
    }
    std::vector<std::optional<Q>> lam(n);
    for (size_t s = 0; s < n; ++s) {
        if (lam[s]) continue;
        lam[s] = Q(1);
        std::vector<size_t> stack{s};
        while (!stack.empty()) {
            size_t u = stack.back();
            stack.pop_back();
            for (auto& [v, rho] : adj[u]) {
                Q want = *lam[u] * rho;
                if (!lam[v]) {
                    lam[v] = want;
                    stack.push_back(v);
                } else if (*lam[v] != want) {
                    return false;
                }
            }
        }
    }
    return true;
}

bool diagonal_eq(const Network& a, const Network& b) {
    if (!same_sources(a, b)) return false;
    // group columns of b by source; try every within-block bijection
    std::vector<std::vector<int>> da;
    std::vector<Complex> order;
    for (const auto& r : a.reactions()) {
        da.push_back(r.vec());
        order.push_back(r.reactant);
    }
    auto mb = by_source(b);
    std::vector<std::vector<int>> e(da.size());
    std::map<Complex, std::vector<bool>> used;
    for (auto& [src, v] : mb) used[src].assign(v.size(), false);
    std::function<bool(size_t)> rec = [&](size_t j) -> bool {
        if (j == da.size()) return row_scaling_exists(da, e, a.n());
        auto& cand = mb[order[j]];
        auto& u = used[order[j]];
        for (size_t k = 0; k < cand.size(); ++k) {
            if (u[k]) continue;
            bool ok = true;
            for (size_t i = 0; i < a.n(); ++i)
                ok = ok && ((da[j][i] > 0) == (cand[k][i] > 0)) && ((da[j][i] < 0) == (cand[k][i] < 0));
            if (!ok) continue;
            u[k] = true;
            e[j] = cand[k];
            if (rec(j + 1)) return true;
            u[k] = false;
        }
        return false;
    };
    return rec(0);
}

}  // namespace

bool equivalent(const Network& a, const Network& b, EquivalenceMode mode) {
    if (a.n() != b.n() || a.m() != b.m()) {
        if (mode != EquivalenceMode::Dynamic || a.n() != b.n()) return false;
    }
    for (const auto& p : all_permutations(b.n())) {
        Network bp = b.permute_species(p);
        bool eq = false;
        switch (mode) {
        case EquivalenceMode::Dynamic: eq = dynamic_eq(a, bp); break;
        case EquivalenceMode::Simple: eq = simple_eq(a, bp); break;
        case EquivalenceMode::Diagonal: eq = diagonal_eq(a, bp); break;
        }
        if (eq) return true;
    }
    return false;
}

// ---------------------------------------------------------------- kinetics

std::vector<std::string> rhs_variables(const Network& net) {
    std::vector<std::string> v;
    for (const auto& s : net.species()) {
        std::string l = s;
        for (auto& c : l) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        v.push_back(l);
    }
    for (size_t j = 0; j < net.m(); ++j) v.push_back("k" + std::to_string(j + 1));
    return v;
}

std::vector<MPoly> mass_action_rhs(const Network& net) {
    auto vars = rhs_variables(net);
    size_t n = net.n();
    std::vector<MPoly> f(n, MPoly(vars));
    for (size_t j = 0; j < net.m(); ++j) {
        const auto& r = net.reactions()[j];
        MPoly::Exp e(vars.size(), 0);
        for (size_t i = 0; i < n; ++i) e[i] = r.reactant.s[i];
        e[n + j] = 1;
        auto v = r.vec();
        for (size_t i = 0; i < n; ++i)
            if (v[i]) f[i].add_term(e, v[i]);
    }
    return f;
}

}  // namespace crn
