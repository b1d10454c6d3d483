#include "crnbif/reproduce.hpp"

#include "crnbif/inheritance.hpp"

#include <atomic>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace crn {

const std::vector<ReproduceTarget>& manifest() {
    static const std::vector<ReproduceTarget> m = {
        {"lemma-5897", "planar quadratic trimolecular four-reaction rank-two classes",
         {{"classes", 5897}, {"nondegenerate", 5864}}},
        {"theorem-834", "zero eigenvalues and folds on the fold track",
         {{"zero-eigenvalue", 834},
          {"nondegenerate-fold", 831},
          {"nilpotent-only", 3},
          {"eig2-minus", 825},
          {"eig2-plus", 39},
          {"both", 33},
          {"vertical", 33}}},
        {"theorem-30", "bimolecular fold subtrack",
         {{"classes", 838}, {"nondegenerate", 829}, {"nondegenerate-fold", 30}, {"eig2-minus", 30}, {"eig2-plus", 0}}},
        {"lemma-bistable", "stable origin next to a fold among the bimolecular folds",
         {{"origin-equilibrium", 15}, {"stable-hyperbolic", 7}, {"stable-center-manifold", 3}, {"saddle", 3}, {"unstable", 2}, {"bistable", 10}}},
        {"table-hopf", "Hopf track and focal-value classification",
         {{"classes", 946}, {"imaginary-pair", 198}, {"total", 198}, {"super", 135}, {"sub", 42}, {"vertical", 17}, {"mixed", 3}, {"bautin", 1}}},
        {"table-bt", "Bogdanov-Takens track",
         {{"candidates", 40}, {"double-zero", 33}, {"super", 8}, {"vertical", 2}, {"sub", 23}, {"transversal", 31}}},
        {"diagonal-classes", "classes up to diagonal equivalence", {{"fold", 639}, {"hopf", 157}, {"bt", 28}}},
        {"atoms-fold", "fold atoms relative to the smaller-network universe", {{"inheritors", 15}, {"atoms", 816}}},
        {"atoms-hopf", "Hopf atoms relative to the smaller-network universe", {{"inheritors", 0}, {"atoms", 198}}},
    };
    return m;
}

const ReproduceTarget* find_target(const std::string& id) {
    for (const auto& t : manifest())
        if (t.id == id) return &t;
    return nullptr;
}

bool ReproduceReport::passed() const {
    for (const auto& c : counts)
        if (!c.pass()) return false;
    return true;
}

int ReproduceReport::exit_code() const {
    if (!unresolved.empty()) return 3;
    return passed() ? 0 : 2;
}

namespace {

template <class F>
void parallel_for(size_t n, unsigned jobs, F f) {
    if (jobs <= 1) {
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

std::mutex cache_mu;

}  // namespace

const FoldTrack& fold_track(const std::string& spec, unsigned jobs) {
    static std::map<std::string, FoldTrack> cache;
    std::lock_guard<std::mutex> lk(cache_mu);
    auto it = cache.find(spec);
    if (it != cache.end()) return it->second;
    FoldTrack tr;
    tr.catalog = enumerate_networks(named_spec(spec), jobs);
    size_t n = tr.catalog.size();
    tr.nondegenerate.assign(n, false);
    tr.fold.assign(n, FoldVerdict{});
    std::vector<char> nd(n, 0);
    parallel_for(n, jobs, [&](size_t i) {
        const Network& net = tr.catalog.entries[i].net;
        nd[i] = admits_positive_nondegenerate_equilibrium(net).admits;
        tr.fold[i] = fold_analysis(net);
    });
    for (size_t i = 0; i < n; ++i) tr.nondegenerate[i] = nd[i];
    return cache.emplace(spec, std::move(tr)).first->second;
}

const HopfTrack& hopf_track(unsigned jobs) {
    static std::optional<HopfTrack> cache;
    std::lock_guard<std::mutex> lk(cache_mu);
    if (cache) return *cache;
    HopfTrack tr;
    tr.catalog = enumerate_networks(named_spec("hopf"), jobs);
    size_t n = tr.catalog.size();
    tr.hopf.resize(n);
    tr.focal.resize(n);
    tr.bt.resize(n);
    parallel_for(n, jobs, [&](size_t i) {
        const Network& net = tr.catalog.entries[i].net;
        tr.hopf[i] = hopf_analysis(net);
        if (!tr.hopf[i].feasible) return;
        tr.focal[i] = focal_values(net);
        tr.bt[i] = bt_analysis(net);
    });
    cache = std::move(tr);
    return *cache;
}

namespace {

using J = nlohmann::ordered_json;

std::string fmt(const Network& net) { return format_network(net); }

void count(ReproduceReport& rep, const ReproduceTarget& t, const std::map<std::string, long>& actual) {
    for (const auto& e : t.expected) {
        auto it = actual.find(e.name);
        rep.counts.push_back({e.name, e.value, it == actual.end() ? -1 : it->second});
    }
}

void write_outputs(const std::string& dir, const std::string& target, const Catalog* cat, const ReproduceReport& rep) {
    std::filesystem::create_directories(dir);
    if (cat) {
        std::ofstream c(std::filesystem::path(dir) / (target + ".catalog.jsonl"));
        write_jsonl(c, *cat);
    }
    J out;
    out["target"] = rep.target;
    out["manifest_version"] = kManifestVersion;
    J counts = J::array();
    for (const auto& c : rep.counts) counts.push_back({{"name", c.name}, {"expected", c.expected}, {"actual", c.actual}, {"pass", c.pass()}});
    out["counts"] = counts;
    out["unresolved"] = rep.unresolved;
    out["details"] = rep.details;
    std::ofstream r(std::filesystem::path(dir) / (target + ".report.json"));
    r << out.dump(2) << '\n';
}

}  // namespace

ReproduceReport run_reproduce(const std::string& target, unsigned jobs, const std::optional<std::string>& out_dir) {
    const ReproduceTarget* t = find_target(target);
    if (!t) throw std::invalid_argument("unknown reproduce target: " + target);
    ReproduceReport rep;
    rep.target = target;
    std::map<std::string, long> a;
    const Catalog* cat = nullptr;
    try {
        if (target == "lemma-5897" || target == "theorem-834" || target == "theorem-30" || target == "lemma-bistable") {
            const auto& tr = fold_track(target == "theorem-30" || target == "lemma-bistable" ? "fold-bimolecular" : "fold", jobs);
            cat = &tr.catalog;
            a["classes"] = tr.catalog.size();
            J folds = J::array(), vertical = J::array(), nilpotent = J::array();
            for (size_t i = 0; i < tr.catalog.size(); ++i) {
                const auto& f = tr.fold[i];
                const auto& net = tr.catalog.entries[i].net;
                a["nondegenerate"] += tr.nondegenerate[i];
                if (f.kind == FoldKind::Vertical) {
                    a["vertical"]++;
                    vertical.push_back(fmt(net));
                }
                if (!tr.nondegenerate[i]) continue;
                if (f.kind == FoldKind::Nondegenerate || f.kind == FoldKind::NilpotentOnly) a["zero-eigenvalue"]++;
                if (f.kind == FoldKind::NilpotentOnly) {
                    a["nilpotent-only"]++;
                    nilpotent.push_back(fmt(net));
                }
                if (f.kind != FoldKind::Nondegenerate) continue;
                a["nondegenerate-fold"]++;
                a["eig2-minus"] += f.eig2_negative;
                a["eig2-plus"] += f.eig2_positive;
                a["both"] += f.eig2_negative && f.eig2_positive;
                folds.push_back({{"network", fmt(net)}, {"eig2_minus", f.eig2_negative}, {"eig2_plus", f.eig2_positive}});
            }
            rep.details["folds"] = folds;
            rep.details["nilpotent_only"] = nilpotent;
            rep.details["vertical"] = vertical;
            if (target == "lemma-bistable") {
                J bist = J::array(), origins = J::array();
                for (size_t i = 0; i < tr.catalog.size(); ++i) {
                    const auto& f = tr.fold[i];
                    if (!tr.nondegenerate[i] || f.kind != FoldKind::Nondegenerate) continue;
                    const auto& net = tr.catalog.entries[i].net;
                    auto o = origin_stability(net);
                    if (o.kind == OriginKind::Undetermined) rep.unresolved.push_back(fmt(net) + ": origin " + o.detail);
                    if (o.kind != OriginKind::NoBoundaryEquilibrium) a["origin-equilibrium"]++;
                    a[to_string(o.kind)]++;
                    origins.push_back({{"network", fmt(net)}, {"origin", to_string(o.kind)}});
                    if (o.stable() && f.eig2_negative) {
                        a["bistable"]++;
                        bist.push_back(fmt(net));
                    }
                }
                rep.details["origin"] = origins;
                rep.details["bistable"] = bist;
            }
        } else if (target == "table-hopf" || target == "table-bt") {
            const auto& tr = hopf_track(jobs);
            cat = &tr.catalog;
            a["classes"] = tr.catalog.size();
            J rows = J::array();
            for (size_t i = 0; i < tr.catalog.size(); ++i) {
                a["imaginary-pair"] += tr.hopf[i].imaginary_pair;
                if (!tr.hopf[i].feasible) continue;
                const auto& net = tr.catalog.entries[i].net;
                if (target == "table-hopf") {
                    a["total"]++;
                    auto k = tr.focal[i]->kind;
                    static const std::map<HopfKind, std::string> name = {{HopfKind::Supercritical, "super"},
                                                                         {HopfKind::Subcritical, "sub"},
                                                                         {HopfKind::Vertical, "vertical"},
                                                                         {HopfKind::Mixed, "mixed"},
                                                                         {HopfKind::Bautin, "bautin"},
                                                                         {HopfKind::None, "none"}};
                    a[name.at(k)]++;
                    if (k == HopfKind::None) rep.unresolved.push_back(fmt(net) + ": feasible Hopf without a focal verdict");
                    J row = {{"network", fmt(net)}, {"verdict", to_string(k)}};
                    if (!tr.focal[i]->l1_zeros.empty()) {
                        row["L2_sign"] = tr.focal[i]->l2_sign;
                        row["L3_sign"] = tr.focal[i]->l3_sign;
                    }
                    rows.push_back(row);
                } else {
                    if (!tr.bt[i]) continue;
                    const auto& b = *tr.bt[i];
                    if (!b.search.candidate) continue;
                    a["candidates"]++;
                    if (!b.search.feasible) {
                        rows.push_back({{"network", fmt(net)}, {"verdict", "none"}});
                        continue;
                    }
                    a["double-zero"]++;
                    static const std::map<BTKind, std::string> name = {{BTKind::Supercritical, "super"},
                                                                       {BTKind::Subcritical, "sub"},
                                                                       {BTKind::Vertical, "vertical"},
                                                                       {BTKind::MixedSigma, "mixed-sigma"},
                                                                       {BTKind::None, "none"}};
                    a[name.at(b.kind)]++;
                    bool nondeg = b.kind == BTKind::Supercritical || b.kind == BTKind::Subcritical;
                    if (nondeg && b.transversal.value_or(false)) a["transversal"]++;
                    rows.push_back({{"network", fmt(net)}, {"verdict", to_string(b.kind)}, {"transversal", b.transversal.value_or(false)}});
                }
            }
            rep.details["networks"] = rows;
        } else if (target == "diagonal-classes") {
            const auto& ft = fold_track("fold", jobs);
            const auto& ht = hopf_track(jobs);
            std::vector<Network> folds, hopfs, bts;
            for (size_t i = 0; i < ft.catalog.size(); ++i)
                if (ft.nondegenerate[i] && ft.fold[i].kind == FoldKind::Nondegenerate) folds.push_back(ft.catalog.entries[i].net);
            for (size_t i = 0; i < ht.catalog.size(); ++i) {
                if (!ht.hopf[i].feasible) continue;
                hopfs.push_back(ht.catalog.entries[i].net);
                if (ht.bt[i] && ht.bt[i]->search.feasible) bts.push_back(ht.catalog.entries[i].net);
            }
            auto pf = partition_diagonal(folds), ph = partition_diagonal(hopfs), pb = partition_diagonal(bts);
            a["fold"] = class_count(pf);
            a["hopf"] = class_count(ph);
            a["bt"] = class_count(pb);
            J pairs = J::array();
            for (size_t i = 0; i < bts.size(); ++i)
                if (pb[i] != i) pairs.push_back({fmt(bts[pb[i]]), fmt(bts[i])});
            rep.details["bt_merged"] = pairs;
        } else if (target == "atoms-fold" || target == "atoms-hopf") {
            bool fold = target == "atoms-fold";
            std::vector<Network> nets;
            if (fold) {
                const auto& ft = fold_track("fold", jobs);
                for (size_t i = 0; i < ft.catalog.size(); ++i)
                    if (ft.nondegenerate[i] && ft.fold[i].kind == FoldKind::Nondegenerate) nets.push_back(ft.catalog.entries[i].net);
            } else {
                const auto& ht = hopf_track(jobs);
                for (size_t i = 0; i < ht.catalog.size(); ++i)
                    if (ht.hopf[i].feasible) nets.push_back(ht.catalog.entries[i].net);
            }
            auto u = inheritance_universe(fold ? Behaviour::Fold : Behaviour::Hopf, jobs);
            auto ap = atoms(nets, u, jobs);
            a["atoms"] = ap.atoms;
            a["inheritors"] = ap.inheritors;
            rep.details["universe"] = ap.universe;
            J inh = J::array();
            for (size_t i = 0; i < nets.size(); ++i) {
                if (ap.entries[i].atom) continue;
                const auto& w = *ap.entries[i].from;
                J chain = J::array();
                for (auto e : w.chain) chain.push_back(to_string(e));
                inh.push_back({{"network", fmt(nets[i])}, {"inherited_from", format_network_raw(w.small)}, {"chain", chain}, {"detail", w.detail}});
            }
            rep.details["inheritors"] = inh;
        }
    } catch (const std::runtime_error& e) {
        rep.unresolved.push_back(std::string("pipeline: ") + e.what());
    }
    count(rep, *t, a);
    if (out_dir) write_outputs(*out_dir, target, cat, rep);
    return rep;
}

}  // namespace crn
