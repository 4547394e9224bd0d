#include "qshell/shells.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include <json.hpp>

namespace qshell {

MagicSet MagicSet::from_values(std::vector<int> vals) {
    MagicSet set;
    set.values = std::move(vals);
    set.sigma.assign(set.values.size(), 0);
    set.weak.assign(set.values.size(), false);
    set.validate();
    return set;
}

void MagicSet::validate() const {
    if (sigma.size() != values.size() || weak.size() != values.size())
        throw std::invalid_argument("MagicSet: sigma/weak not aligned with values");
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i] <= 0) throw std::invalid_argument("MagicSet: values must be positive");
        if (i > 0 && values[i] <= values[i - 1])
            throw std::invalid_argument("MagicSet: values must be strictly increasing");
        if (sigma[i] < 0) throw std::invalid_argument("MagicSet: sigma must be >= 0");
    }
}

bool MagicSet::contains(int value) const {
    return std::binary_search(values.begin(), values.end(), value);
}

ShellTable build_shell_table(std::vector<Level> levels, double threshold) {
    if (levels.empty()) throw std::invalid_argument("build_shell_table: empty level list");
    if (!std::isfinite(threshold) || threshold <= 0)
        throw std::invalid_argument("build_shell_table: threshold must be positive");

    std::sort(levels.begin(), levels.end(), [](const Level& a, const Level& b) {
        return std::tie(a.energy, a.n, a.l) < std::tie(b.energy, b.n, b.l);
    });

    ShellTable table;
    table.threshold = threshold;
    table.rows.reserve(levels.size());
    int cumulative = 0;
    for (std::size_t i = 0; i < levels.size(); ++i) {
        cumulative += levels[i].degeneracy;
        const bool last = i + 1 == levels.size();
        const double gap =
            last ? std::numeric_limits<double>::infinity() : levels[i + 1].energy - levels[i].energy;
        const bool magic = !last && gap > threshold;
        table.rows.push_back({levels[i], cumulative, gap, magic});
        if (magic) {
            table.magic.values.push_back(cumulative);
            table.magic.sigma.push_back(0);
            table.magic.weak.push_back(false);
        }
    }
    return table;
}

double gap_at(const ShellTable& table, int cumulative) {
    for (const ShellRow& row : table.rows)
        if (row.cumulative == cumulative) return row.gap_after;
    throw std::out_of_range("gap_at: no row with cumulative " + std::to_string(cumulative));
}

namespace {

std::string render_markdown(const ShellTable& table) {
    std::ostringstream out;
    out << "| n | l | E(n,l) | 2(2l+1) | total | gap |\n";
    out << "|--:|--:|-------:|--------:|------:|----:|\n";
    for (const ShellRow& row : table.rows) {
        out << "| " << row.level.n << " | " << row.level.l << " | " << fmt3(row.level.energy)
            << " | " << row.level.degeneracy << " | ";
        if (row.is_magic)
            out << "**" << row.cumulative << "** | " << fmt3(row.gap_after) << " |\n";
        else
            out << row.cumulative << " |  |\n";
    }
    return out.str();
}

std::string render_csv(const ShellTable& table) {
    std::ostringstream out;
    out << "n,l,energy,degeneracy,cumulative,gap_after,is_magic\n";
    for (const ShellRow& row : table.rows)
        out << row.level.n << ',' << row.level.l << ',' << fmt3(row.level.energy) << ','
            << row.level.degeneracy << ',' << row.cumulative << ',' << fmt3(row.gap_after) << ','
            << (row.is_magic ? "true" : "false") << '\n';
    return out.str();
}

std::string render_json(const ShellTable& table) {
    nlohmann::json rows = nlohmann::json::array();
    for (const ShellRow& row : table.rows) {
        nlohmann::json j{{"n", row.level.n},
                         {"l", row.level.l},
                         {"energy", row.level.energy},
                         {"degeneracy", row.level.degeneracy},
                         {"cumulative", row.cumulative},
                         {"is_magic", row.is_magic}};
        if (std::isinf(row.gap_after))
            j["gap_after"] = nullptr;  // sentinel on the final row
        else
            j["gap_after"] = row.gap_after;
        rows.push_back(std::move(j));
    }
    nlohmann::json doc{
        {"threshold", table.threshold}, {"magic", table.magic.values}, {"rows", std::move(rows)}};
    return doc.dump(2) + "\n";
}

}  // namespace

std::string render_table(const ShellTable& table, OutputFormat format) {
    switch (format) {
        case OutputFormat::Markdown: return render_markdown(table);
        case OutputFormat::Csv: return render_csv(table);
        case OutputFormat::Json: return render_json(table);
    }
    throw std::invalid_argument("render_table: unknown format");
}

}  // namespace qshell
