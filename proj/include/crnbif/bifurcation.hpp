#pragma once

#include "crnbif/equilibria.hpp"
#include "crnbif/quadnum.hpp"
#include "crnbif/ratfunc.hpp"

#include <json.hpp>

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace crn {

// ---------------------------------------------------------------- fold

enum class FoldKind { None, Nondegenerate, NilpotentOnly, Vertical };
std::string to_string(FoldKind k);

struct FoldVerdict {
    FoldKind kind = FoldKind::None;
    bool eig2_negative = false;  // second eigenvalue can be < 0 on det = 0
    bool eig2_positive = false;
    std::vector<AlgebraicReal> roots;  // zeros of det M in (0,1)
    std::optional<AlgebraicReal> witness;  // a root with a simple zero eigenvalue
    std::vector<std::string> trail;
};

// Planar rank-2 networks with a two-generator kernel cone.
FoldVerdict fold_analysis(const Network& net);

struct RankOneFold {
    bool found = false;
    std::optional<Network> witness;  // matching induced subnetwork
    std::string pattern;             // 1, 2a, 2b, 2c
};

// Quadratic rank-one networks; throws std::invalid_argument when rank != 1.
RankOneFold rank_one_fold(const Network& net);

// ---------------------------------------------------------------- Hopf

struct HopfWitness {
    Q alpha;
    Q x, y;
    QVec kappa;
    bool vertical = false;  // tr J vanishes for every (x, y) at this alpha
};

struct HopfFeasibility {
    bool imaginary_pair = false;  // tr = 0, det > 0 attainable
    bool feasible = false;        // Hopf bifurcation possible
    std::optional<HopfWitness> witness;
    std::vector<std::string> trail;
};

HopfFeasibility hopf_analysis(const Network& net);

enum class HopfKind { None, Supercritical, Subcritical, Vertical, Mixed, Bautin };
std::string to_string(HopfKind k);

struct FocalResult {
    HopfKind kind = HopfKind::None;
    std::set<int> l1_signs;  // over the open cells of the Hopf variety
    RatFunc graph_l1;        // eta_4 on the component t = -P/Q (in a), if any
    std::vector<std::pair<Q, RatFunc>> vertical_l1;  // (a*, eta_4 in t)
    std::vector<std::string> l1_zeros;  // points of the variety where L1 = 0
    int l2_sign = 0, l3_sign = 0;       // at those zeros (Bautin / Mixed)
    bool higher_vanish_checked = false;  // L2 = L3 = 0 verified at a sample
    std::vector<std::string> trail;
};

FocalResult focal_values(const Network& net, int order = 3);

// Focal quantities (eta_4, eta_6, eta_8) at one point of the Hopf variety;
// t is x/y, which is -P/Q off the vertical components.
std::vector<Q> focal_at(const Network& net, const Q& alpha, const Q& t, int order);

// ---------------------------------------------------------------- BT

struct BTPoint {
    AlgebraicReal alpha;
    QuadNum a;  // exact alpha
    QuadNum t;  // x/y at the double zero
};

struct BTSearch {
    bool candidate = false;  // fold-capable and Hopf-capable
    bool feasible = false;
    std::vector<BTPoint> points;
    std::vector<std::string> trail;
};

BTSearch bt_point_search(const Network& net);

struct BTNormalForm {
    QuadNum a20, b20, b11;
    bool bt1 = false, bt2 = false;
    int sigma = 0;
};

BTNormalForm bt_normal_form(const Network& net, const BTPoint& pt, const Q& y = 1);
bool bt_transversality(const Network& net, const BTPoint& pt, const Q& y = 1);

enum class BTKind { None, Supercritical, Subcritical, Vertical, MixedSigma };
std::string to_string(BTKind k);

struct BTVerdict {
    BTKind kind = BTKind::None;
    BTSearch search;
    std::vector<BTNormalForm> forms;
    std::optional<bool> transversal;
};

BTVerdict bt_analysis(const Network& net);

// ---------------------------------------------------------------- origin

enum class OriginKind { NoBoundaryEquilibrium, StableHyperbolic, StableCenterManifold, Saddle, Unstable, Undetermined };
std::string to_string(OriginKind k);

struct OriginVerdict {
    OriginKind kind = OriginKind::Undetermined;
    std::string detail;
    bool stable() const { return kind == OriginKind::StableHyperbolic || kind == OriginKind::StableCenterManifold; }
};

OriginVerdict origin_stability(const Network& net);

// Along every direction of kappa-space that fixes the inner parameter, the
// equilibrium defect, det J and e^{-s v.delta} G stay constant (G the
// quadratic fold coefficient with transported eigenvectors). Throws
// std::invalid_argument when (x, kappa) is not a fold point.
bool cusp_gradient_check(const Network& net, const std::vector<double>& x, const std::vector<double>& kappa,
                         double rel_tol = 1e-8);

// ---------------------------------------------------------------- reports

struct AnalyzeOptions {
    bool focal = true;
    bool origin = true;
};

struct AnalysisReport {
    Network net;
    std::vector<std::string> flags;
    bool nontrivial = false;
    bool planar = false;  // rank-2, two species, two-generator kernel cone
    bool nondegenerate = false;
    std::optional<FoldVerdict> fold;
    std::optional<RankOneFold> rank_one;
    std::optional<HopfFeasibility> hopf;
    std::optional<FocalResult> focal;
    std::optional<BTVerdict> bt;
    std::optional<OriginVerdict> origin;
    bool bistable = false;
    bool unresolved = false;
    std::vector<std::string> trail;
};

AnalysisReport analyze(const Network& net, const AnalyzeOptions& opt = {});
nlohmann::ordered_json to_json(const AnalysisReport& r);

}  // namespace crn
