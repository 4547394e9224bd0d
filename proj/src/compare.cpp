#include "qshell/compare.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace qshell {

namespace {

double tolerance_for(MatchMode mode, int observed, int sigma, double slack) {
    if (mode == MatchMode::Strict) return sigma + slack;
    return std::max(static_cast<double>(sigma), 0.05 * observed);
}

std::string rule_text(MatchMode mode, double slack) {
    std::ostringstream out;
    if (mode == MatchMode::Strict)
        out << "strict: |predicted - observed| <= sigma + slack (slack=" << slack << ")";
    else
        out << "row-align: |predicted - observed| <= max(sigma, 0.05*observed)";
    return out.str();
}

}  // namespace

ComparisonReport compare(const MagicSet& predicted, const std::vector<ReferenceDataset>& references,
                         MatchMode mode, double slack) {
    if (predicted.values.empty()) throw std::invalid_argument("compare: empty predicted set");
    if (references.empty()) throw std::invalid_argument("compare: no reference datasets");
    predicted.validate();
    if (slack < 0) throw std::invalid_argument("compare: slack must be >= 0");

    ComparisonReport report;
    report.tolerance_rule = rule_text(mode, slack);

    std::set<std::pair<std::size_t, std::size_t>> consumed;  // (dataset index, entry index)
    for (int p : predicted.values) {
        bool found = false;
        double best_delta = 0;
        int best_observed = 0;
        std::size_t best_ds = 0, best_entry = 0;
        for (std::size_t d = 0; d < references.size(); ++d) {
            const MagicSet& obs = references[d].magic;
            for (std::size_t i = 0; i < obs.values.size(); ++i) {
                if (consumed.count({d, i})) continue;
                const int o = obs.values[i];
                const double delta = std::abs(p - o);
                if (delta > tolerance_for(mode, o, obs.sigma[i], slack)) continue;
                // nearest first; ties to the smaller observed value, then dataset order
                if (!found || delta < best_delta || (delta == best_delta && o < best_observed)) {
                    found = true;
                    best_delta = delta;
                    best_observed = o;
                    best_ds = d;
                    best_entry = i;
                }
            }
        }
        if (found) {
            consumed.insert({best_ds, best_entry});
            report.matches.push_back({p, best_observed, references[best_ds].id});
        } else {
            report.spurious.push_back(p);
        }
    }

    for (std::size_t d = 0; d < references.size(); ++d)
        for (std::size_t i = 0; i < references[d].magic.values.size(); ++i)
            if (!consumed.count({d, i}))
                report.misses.push_back({references[d].magic.values[i], references[d].id});

    return report;
}

namespace {

std::string render_markdown(const ComparisonReport& report,
                            const std::vector<ReferenceDataset>& references) {
    struct Row {
        std::string predicted;
        std::map<std::string, std::string> cells;  // dataset id -> text
    };
    std::map<int, Row> rows;

    auto cell_text = [&](int observed, const std::string& dataset_id) {
        for (const ReferenceDataset& ds : references)
            if (ds.id == dataset_id)
                for (std::size_t i = 0; i < ds.magic.values.size(); ++i)
                    if (ds.magic.values[i] == observed && ds.magic.sigma[i] != 0)
                        return std::to_string(observed) + "+-" + std::to_string(ds.magic.sigma[i]);
        return std::to_string(observed);
    };

    for (const Match& m : report.matches) {
        Row& row = rows[m.predicted];
        row.predicted = std::to_string(m.predicted);
        row.cells[m.dataset_id] = cell_text(m.observed, m.dataset_id);
    }
    for (int p : report.spurious) rows[p].predicted = std::to_string(p) + " (spurious)";
    for (const Miss& m : report.misses) rows[m.observed].cells[m.dataset_id] = cell_text(m.observed, m.dataset_id);

    std::ostringstream out;
    out << "| predicted |";
    for (const ReferenceDataset& ds : references) out << ' ' << ds.id << " |";
    out << "\n|----------:|";
    for (std::size_t i = 0; i < references.size(); ++i) out << "---:|";
    out << '\n';
    for (const auto& [key, row] : rows) {
        out << "| " << row.predicted << " |";
        for (const ReferenceDataset& ds : references) {
            auto it = row.cells.find(ds.id);
            out << ' ' << (it == row.cells.end() ? "" : it->second) << " |";
        }
        out << '\n';
    }
    out << '\n' << "tolerance: " << report.tolerance_rule << '\n';
    return out.str();
}

std::string render_csv(const ComparisonReport& report) {
    std::ostringstream out;
    out << "type,predicted,observed,dataset\n";
    for (const Match& m : report.matches)
        out << "match," << m.predicted << ',' << m.observed << ',' << m.dataset_id << '\n';
    for (const Miss& m : report.misses) out << "miss,," << m.observed << ',' << m.dataset_id << '\n';
    for (int p : report.spurious) out << "spurious," << p << ",,\n";
    return out.str();
}

std::string render_json(const ComparisonReport& report) {
    nlohmann::json matches = nlohmann::json::array();
    for (const Match& m : report.matches)
        matches.push_back({{"predicted", m.predicted}, {"observed", m.observed}, {"dataset", m.dataset_id}});
    nlohmann::json misses = nlohmann::json::array();
    for (const Miss& m : report.misses)
        misses.push_back({{"observed", m.observed}, {"dataset", m.dataset_id}});
    nlohmann::json doc{{"tolerance_rule", report.tolerance_rule},
                       {"matches", std::move(matches)},
                       {"misses", std::move(misses)},
                       {"spurious", report.spurious}};
    return doc.dump(2) + "\n";
}

}  // namespace

std::string render_report(const ComparisonReport& report,
                          const std::vector<ReferenceDataset>& references, OutputFormat format) {
    switch (format) {
        case OutputFormat::Markdown: return render_markdown(report, references);
        case OutputFormat::Csv: return render_csv(report);
        case OutputFormat::Json: return render_json(report);
    }
    throw std::invalid_argument("render_report: unknown format");
}

}  // namespace qshell
