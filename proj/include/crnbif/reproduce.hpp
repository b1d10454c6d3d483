#pragma once

#include "crnbif/bifurcation.hpp"
#include "crnbif/enumerate.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace crn {

inline constexpr const char* kManifestVersion = "1";

struct ExpectedCount {
    std::string name;
    long value;
};

struct ReproduceTarget {
    std::string id;
    std::string description;
    std::vector<ExpectedCount> expected;
};

const std::vector<ReproduceTarget>& manifest();
const ReproduceTarget* find_target(const std::string& id);

struct CountResult {
    std::string name;
    long expected = 0, actual = 0;
    bool pass() const { return expected == actual; }
};

struct ReproduceReport {
    std::string target;
    std::vector<CountResult> counts;
    std::vector<std::string> unresolved;  // networks whose verdict could not be decided
    nlohmann::ordered_json details;       // per-network verdicts, lists
    bool passed() const;
    // 0 pass, 2 count mismatch, 3 unresolved verdicts
    int exit_code() const;
};

// Runs a manifest target. With out_dir set, the catalog (JSON lines) and the
// report are written there.
ReproduceReport run_reproduce(const std::string& target, unsigned jobs = 1, const std::optional<std::string>& out_dir = std::nullopt);

// Shared analysed tracks, cached per process.
struct FoldTrack {
    Catalog catalog;
    std::vector<bool> nondegenerate;
    std::vector<FoldVerdict> fold;  // empty verdict where not nondegenerate
};
const FoldTrack& fold_track(const std::string& spec, unsigned jobs);

struct HopfTrack {
    Catalog catalog;
    std::vector<HopfFeasibility> hopf;
    std::vector<std::optional<FocalResult>> focal;
    std::vector<std::optional<BTVerdict>> bt;
};
const HopfTrack& hopf_track(unsigned jobs);

}  // namespace crn
