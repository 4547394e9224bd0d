#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "qshell/compare.hpp"

namespace qshell {

// lo:hi:steps; steps == 1 requires lo == hi (single point).
struct Range {
    double lo = 0.0;
    double hi = 0.0;
    int steps = 1;

    void validate(const char* name) const;
    double at(int i) const;
};

struct ScanGrid {
    Range tau_range{0.038, 0.038, 1};
    Range threshold_range{0.39, 0.39, 1};
    double e_cut = 22.8;
    double spurious_weight = 1.0;  // score = matches - weight * spurious
    MatchMode mode = MatchMode::RowAlign;
    // e_cut is auto-raised (+1.0 steps) per tau until the enumerated cumulative
    // reaches this target, so threshold effects are not masked by truncation.
    // 0 disables the raise.
    int min_cumulative = 1516;
};

struct ScanPoint {
    double tau;
    double threshold;
    double e_cut_used;
    MagicSet magic;
    int matches;
    int spurious;
    double score;
};

struct ScanResult {
    ScanGrid grid;
    std::vector<ScanPoint> points;      // tau-major: index = ti * threshold.steps + hi
    std::vector<std::size_t> best;      // argmax score, all ties
};

// Full pipeline (enumerate -> shells -> compare) at every grid point.
ScanResult run_scan(const ScanGrid& grid, const std::vector<ReferenceDataset>& references);

struct StabilityBoundaryPoint {
    std::size_t index;
    int value;     // the single magic number that differs from the target
    bool appears;  // true: present at this point but not in the target
};

// Largest 4-connected component of points whose magic set equals the target,
// plus adjacent off-region points differing by exactly one value. A target
// never achieved yields an empty region (not an error).
struct StabilityReport {
    std::vector<std::size_t> region;
    std::vector<StabilityBoundaryPoint> boundary;
};

StabilityReport stability_report(const ScanResult& result, const MagicSet& target);

std::string render_scan(const ScanResult& result, OutputFormat format);
std::string render_stability(const ScanResult& result, const StabilityReport& report,
                             OutputFormat format);

}  // namespace qshell
