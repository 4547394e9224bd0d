#pragma once

#include <string>
#include <vector>

#include "qshell/datasets.hpp"
#include "qshell/format.hpp"
#include "qshell/shells.hpp"

namespace qshell {

// Strict: |pred - obs| <= sigma(obs) + slack.
// RowAlign: |pred - obs| <= max(sigma(obs), 0.05 * obs), the loose visual-row
// pairing the reference tables use without stating a rule.
enum class MatchMode { Strict, RowAlign };

struct Match {
    int predicted;
    int observed;
    std::string dataset_id;
};

struct Miss {
    int observed;
    std::string dataset_id;
};

struct ComparisonReport {
    std::vector<Match> matches;
    std::vector<Miss> misses;
    std::vector<int> spurious;  // predicted values no dataset supports
    std::string tolerance_rule;
};

// Greedy 1:1 alignment in increasing predicted order; each prediction takes the
// nearest unconsumed in-tolerance observed entry. Equidistant candidates go to
// the smaller observed value, then to the earlier dataset in the given order.
ComparisonReport compare(const MagicSet& predicted, const std::vector<ReferenceDataset>& references,
                         MatchMode mode = MatchMode::Strict, double slack = 0.0);

// Markdown mirrors the reference tables' row structure (one row per value,
// one column per dataset); CSV/JSON are flat records.
std::string render_report(const ComparisonReport& report,
                          const std::vector<ReferenceDataset>& references, OutputFormat format);

}  // namespace qshell
