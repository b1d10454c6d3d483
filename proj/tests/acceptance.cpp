// One PASS/FAIL line per acceptance criterion. Counts come from the
// reproduce targets; per-network verdicts are compared with the tables in
// tables.hpp.

#include "checks.hpp"
#include "tables.hpp"

#include "crnbif/inheritance.hpp"
#include "crnbif/reproduce.hpp"

#include <algorithm>
#include <chrono>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <thread>

using namespace crn;

namespace {

unsigned jobs() { return std::max(1u, std::thread::hardware_concurrency()); }

struct Criterion {
    bool ok = true;
    std::vector<std::string> notes;
    void require(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            notes.push_back("FAILED " + what);
        }
    }
    void note(const std::string& s) { notes.push_back(s); }
    void absorb(const checks::Result& r, const std::string& what) {
        require(r.ok, what + ": " + r.detail);
        if (r.ok) note(what + ": " + r.detail);
    }
};

std::vector<std::string> all_unresolved;

ReproduceReport reproduce(const std::string& id, Criterion& c) {
    auto rep = run_reproduce(id, jobs());
    for (const auto& r : rep.counts)
        c.require(r.pass(), id + " " + r.name + " expected " + std::to_string(r.expected) + " got " + std::to_string(r.actual));
    for (const auto& u : rep.unresolved) all_unresolved.push_back(id + ": " + u);
    std::ostringstream os;
    os << id << ":";
    for (const auto& r : rep.counts) os << " " << r.name << "=" << r.actual;
    c.note(os.str());
    return rep;
}

const CatalogEntry* lookup(const Catalog& cat, const std::string& text, size_t* index = nullptr) {
    auto* e = cat.find(dynamic_key(parse_network(text)));
    if (e && index) *index = static_cast<size_t>(e - cat.entries.data());
    return e;
}

Criterion criterion1() {
    Criterion c;
    reproduce("lemma-5897", c);
    reproduce("theorem-834", c);
    const auto& tr = fold_track("fold", jobs());
    std::vector<Network> verticals;
    for (size_t i = 0; i < tr.catalog.size(); ++i)
        if (tr.fold[i].kind == FoldKind::Vertical) verticals.push_back(tr.catalog.entries[i].net);
    c.require(verticals.size() == 33, "33 vertical folds");
    c.absorb(checks::vertical_fold_lines(verticals), "lines of equilibria");
    for (const auto& s : tables::nilpotent_only) {
        size_t i;
        c.require(lookup(tr.catalog, s, &i) && tr.fold[i].kind == FoldKind::NilpotentOnly, "nilpotent-only " + s);
    }
    return c;
}

Criterion criterion2() {
    Criterion c;
    reproduce("theorem-30", c);
    reproduce("lemma-bistable", c);
    const auto& tr = fold_track("fold-bimolecular", jobs());
    std::set<size_t> computed, table;
    for (size_t i = 0; i < tr.catalog.size(); ++i)
        if (tr.nondegenerate[i] && tr.fold[i].kind == FoldKind::Nondegenerate) computed.insert(i);
    std::set<size_t> orange, bistable;
    std::map<int, int> per_group;
    for (const auto& cell : tables::fold_bimolecular()) {
        size_t i;
        if (!lookup(tr.catalog, cell.network, &i)) {
            c.require(false, "table network not catalogued: " + cell.network);
            continue;
        }
        table.insert(i);
        per_group[cell.group]++;
        c.require(computed.count(i) && tr.fold[i].eig2_negative && !tr.fold[i].eig2_positive, "fold with eig2 < 0: " + cell.network);
        if (cell.mark == 'O') orange.insert(i);
    }
    c.require(table == computed, "fold set equals the table (30 cells)");
    for (size_t i : computed)
        if (origin_stability(tr.catalog.entries[i].net).stable()) bistable.insert(i);
    c.require(bistable == orange, "bistable set equals the orange marks");
    size_t w;
    c.require(lookup(tr.catalog, tables::wilhelm, &w) && bistable.count(w), "Wilhelm network is bistable");
    c.note("table groups " + std::to_string(per_group[1]) + "/" + std::to_string(per_group[2]) + "/" +
           std::to_string(per_group[3]) + ", orange " + std::to_string(orange.size()));
    return c;
}

Criterion criterion3() {
    Criterion c;
    reproduce("table-hopf", c);
    const auto& tr = hopf_track(jobs());
    static const std::map<char, HopfKind> kind = {{'-', HopfKind::Supercritical},
                                                  {'+', HopfKind::Subcritical},
                                                  {'0', HopfKind::Vertical},
                                                  {'M', HopfKind::Mixed},
                                                  {'B', HopfKind::Bautin}};
    std::set<size_t> table, computed;
    for (size_t i = 0; i < tr.catalog.size(); ++i)
        if (tr.hopf[i].feasible) computed.insert(i);
    std::map<int, std::map<char, int>> want, got;
    for (const auto& cell : tables::hopf_table()) {
        size_t i;
        if (!lookup(tr.catalog, cell.network, &i)) {
            c.require(false, "table network not catalogued: " + cell.network);
            continue;
        }
        table.insert(i);
        want[cell.group][cell.mark]++;
        if (!tr.hopf[i].feasible || !tr.focal[i]) {
            c.require(false, "no Hopf for table network " + cell.network);
            continue;
        }
        auto k = tr.focal[i]->kind;
        for (auto [m, hk] : kind)
            if (hk == k) got[cell.group][m]++;
        c.require(k == kind.at(cell.mark), "verdict for " + cell.network + " is " + to_string(k));
    }
    c.require(table == computed, "Hopf set equals the Hopf table (198 cells)");
    c.require(want == got, "group-by-group counts");
    std::ostringstream os;
    for (auto& [g, m] : got) {
        os << "group " << g << ":";
        for (auto& [mk, n] : m) os << " " << mk << n;
        os << "; ";
    }
    c.note(os.str());
    size_t bautins = 0, b;
    for (size_t i : computed)
        if (tr.focal[i] && tr.focal[i]->kind == HopfKind::Bautin) ++bautins;
    c.require(bautins == 1, "exactly one Bautin network");
    c.require(lookup(tr.catalog, tables::bautin, &b) && tr.focal[b] && tr.focal[b]->kind == HopfKind::Bautin && tr.focal[b]->l2_sign > 0,
              "Bautin network has L2 > 0 on L1 = 0");
    return c;
}

Criterion criterion4() {
    Criterion c;
    reproduce("table-bt", c);
    const auto& tr = hopf_track(jobs());
    std::set<size_t> feasible, infeasible, table, no_bt;
    for (size_t i = 0; i < tr.catalog.size(); ++i) {
        if (!tr.bt[i] || !tr.bt[i]->search.candidate) continue;
        (tr.bt[i]->search.feasible ? feasible : infeasible).insert(i);
    }
    const auto& t = tables::bt_table();
    size_t transversal = 0;
    for (size_t r = 0; r < t.size(); ++r) {
        size_t i;
        if (!lookup(tr.catalog, t[r], &i) || !tr.bt[i]) {
            c.require(false, "BT table network " + std::to_string(r + 1) + " has no BT analysis");
            continue;
        }
        table.insert(i);
        BTKind want = r < 8 ? BTKind::Supercritical : r < 10 ? BTKind::Vertical : BTKind::Subcritical;
        c.require(tr.bt[i]->kind == want, "row " + std::to_string(r + 1) + " is " + to_string(tr.bt[i]->kind));
        if (want != BTKind::Vertical) {
            c.require(tr.bt[i]->transversal.value_or(false), "BT.3 for row " + std::to_string(r + 1));
            transversal += tr.bt[i]->transversal.value_or(false);
        }
    }
    c.require(table == feasible, "double-zero set equals the BT table");
    for (const auto& s : tables::no_bt) {
        size_t i;
        if (lookup(tr.catalog, s, &i)) no_bt.insert(i);
    }
    c.require(no_bt == infeasible, "the 7 networks without a double zero");
    c.note("row-for-row 8/2/23, BT.3 holds for " + std::to_string(transversal) + " rows");
    return c;
}

Criterion criterion5() {
    Criterion c;
    auto rep = reproduce("diagonal-classes", c);
    std::set<std::pair<CanonicalKey, CanonicalKey>> want, got;
    auto key = [](const std::string& s) { return dynamic_key(parse_network(s)); };
    for (auto [i, j] : tables::bt_diagonal_pairs) {
        auto a = key(tables::bt_table()[i - 1]), b = key(tables::bt_table()[j - 1]);
        want.insert(std::minmax(a, b));
    }
    for (const auto& p : rep.details["bt_merged"]) {
        auto a = key(p[0].get<std::string>()), b = key(p[1].get<std::string>());
        got.insert(std::minmax(a, b));
    }
    c.require(want == got, "merged BT pairs are {1,2} {3,6} {9,10} {11,14} {13,16}");
    c.note(std::to_string(got.size()) + " merged BT pairs");
    return c;
}

Criterion criterion6() {
    Criterion c;
    reproduce("atoms-fold", c);
    auto fks = detect_enlargement(parse_network(tables::bt_table()[0]), parse_network(tables::fks));
    c.require(fks && fks->chain == std::vector<Enlargement>{Enlargement::E1}, "FKS is an E1 extension of BT network 1");
    for (int idx : {13, 14}) {
        Network big = parse_network(tables::bt_table()[idx - 1]);
        bool e6 = false;
        std::string from;
        for (int a = 1; a <= 3 && !e6; ++a) {
            auto w = detect_enlargement(parse_network("0->" + std::to_string(a) + "X; X->0; 2X->3X"), big);
            if (w && std::count(w->chain.begin(), w->chain.end(), Enlargement::E6)) {
                e6 = true;
                from = format_network_raw(w->small);
            }
        }
        c.require(e6, "BT network " + std::to_string(idx) + " is an E6 extension");
        if (e6) c.note("BT network " + std::to_string(idx) + " from " + from + " by E6");
    }
    return c;
}

Criterion criterion7() {
    Criterion c;
    c.absorb(checks::recoordinatisation_example(), "worked example");
    auto r = checks::recoordinatisation_random(20);
    c.require(r.cases == 20, "20 random U");
    c.absorb(r, "random U");
    return c;
}

Criterion criterion8() {
    Criterion c;
    c.absorb(checks::network9_equilibrium_transitions(), "equilibria");
    c.absorb(checks::network9_dulac(), "Dulac");
    c.absorb(checks::network9_drift(100, 1e-6), "Hamiltonian over T = 100");
    return c;
}

Criterion criterion9() {
    Criterion c;
    c.absorb(checks::jacobian_vs_fd(500, 1e-6), "Jacobian vs finite differences (500)");
    c.absorb(checks::kappa_realisation(500), "kappa realisation (500)");
    std::map<char, std::vector<std::string>> by_mark;
    for (const auto& cell : tables::hopf_table()) by_mark[cell.mark].push_back(cell.network);
    for (auto [mark, expected] : {std::pair{'-', -1}, {'+', 1}, {'0', 0}}) {
        const auto& list = by_mark[mark];
        size_t good = 0;
        for (size_t i = 0; i < 5; ++i) {
            auto r = checks::l1_amplitude(parse_network(list[i * (list.size() - 1) / 4]), expected);
            c.require(r.ok, "L1 amplitude: " + r.detail);
            good += r.ok;
        }
        c.note(std::string("L1 amplitude class '") + mark + "': " + std::to_string(good) + "/5");
    }
    const auto& ft = fold_track("fold", jobs());
    std::vector<Network> folds, all;
    for (size_t i = 0; i < ft.catalog.size(); ++i) {
        all.push_back(ft.catalog.entries[i].net);
        if (ft.nondegenerate[i] && ft.fold[i].kind == FoldKind::Nondegenerate) folds.push_back(ft.catalog.entries[i].net);
    }
    c.absorb(checks::cusp_identity(folds, 1e-8), "cusp identity");
    c.absorb(checks::uniqueness_sampling(300), "uniqueness sampling (300)");
    const auto& ht = hopf_track(jobs());
    for (const auto& e : ht.catalog.entries) all.push_back(e.net);
    c.absorb(checks::mixed_witnesses(all), "Mixed witnesses");
    return c;
}

Criterion criterion10() {
    Criterion c;
    for (const auto& id : {"atoms-hopf"}) reproduce(id, c);
    c.require(all_unresolved.empty(), std::to_string(all_unresolved.size()) + " unresolved verdicts");
    for (size_t i = 0; i < std::min<size_t>(all_unresolved.size(), 5); ++i) c.note(all_unresolved[i]);
    if (all_unresolved.empty()) c.note("no unresolved verdict in any reproduce target");
    return c;
}

}  // namespace

int main() {
    std::vector<std::pair<int, Criterion (*)()>> list = {{1, criterion1}, {2, criterion2}, {3, criterion3}, {4, criterion4},
                                                         {5, criterion5}, {6, criterion6}, {7, criterion7}, {8, criterion8},
                                                         {9, criterion9}, {10, criterion10}};
    int failed = 0;
    for (auto [n, fn] : list) {
        auto t0 = std::chrono::steady_clock::now();
        Criterion c;
        try {
            c = fn();
        } catch (const std::exception& e) {
            c.ok = false;
            c.notes.push_back(std::string("exception: ") + e.what());
        }
        double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::cout << (c.ok ? "PASS" : "FAIL") << " criterion " << n << " (" << static_cast<int>(s + 0.5) << " s)\n";
        for (const auto& note : c.notes) std::cout << "    " << note << "\n";
        std::cout.flush();
        failed += !c.ok;
    }
    std::cout << (failed ? "FAIL" : "PASS") << " " << (10 - failed) << "/10 criteria\n";
    return failed ? 1 : 0;
}
