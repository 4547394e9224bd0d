#pragma once

#include <string>
#include <vector>

#include "qshell/format.hpp"
#include "qshell/spectrum.hpp"

namespace qshell {

// Ordered magic numbers. sigma holds the per-value uncertainty (0 where the
// source prints none); weak marks entries the source typesets in parentheses.
struct MagicSet {
    std::vector<int> values;
    std::vector<int> sigma;
    std::vector<bool> weak;

    static MagicSet from_values(std::vector<int> vals);

    // strictly increasing positive values, aligned sigma/weak, sigma >= 0
    void validate() const;
    bool contains(int value) const;
};

struct ShellRow {
    Level level;
    int cumulative;
    double gap_after;  // +inf sentinel on the last row
    bool is_magic;
};

struct ShellTable {
    std::vector<ShellRow> rows;
    double threshold;
    MagicSet magic;
};

// Sorts by (energy, n, l), accumulates occupancies, flags gaps > threshold.
// The last row's gap is the +inf sentinel and never emits a magic number.
ShellTable build_shell_table(std::vector<Level> levels, double threshold);

// gap_after of the row whose cumulative matches; std::out_of_range if absent.
double gap_at(const ShellTable& table, int cumulative);

// Columns n,l,energy,degeneracy,cumulative,gap_after,is_magic. Markdown shows
// the gap only on shell closures and bolds magic totals; CSV/JSON carry all.
std::string render_table(const ShellTable& table, OutputFormat format);

}  // namespace qshell
