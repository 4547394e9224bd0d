#include "qshell/scan.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <queue>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace qshell {

void Range::validate(const char* name) const {
    if (!std::isfinite(lo) || !std::isfinite(hi))
        throw std::invalid_argument(std::string(name) + ": bounds must be finite");
    if (steps < 1) throw std::invalid_argument(std::string(name) + ": steps must be >= 1");
    if (lo > hi) throw std::invalid_argument(std::string(name) + ": lo must be <= hi");
    if (steps == 1 && lo != hi)
        throw std::invalid_argument(std::string(name) + ": steps == 1 requires lo == hi");
}

double Range::at(int i) const {
    if (steps == 1) return lo;
    return lo + i * (hi - lo) / (steps - 1);
}

namespace {

std::string fmt6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

long long total_occupancy(const std::vector<Level>& levels) {
    long long total = 0;
    for (const Level& level : levels) total += level.degeneracy;
    return total;
}

// +1.0 raises until min_cumulative particles are in range; capped so extreme
// tau grids fail loudly instead of spinning.
std::pair<std::vector<Level>, double> levels_for_tau(double tau, const ScanGrid& grid) {
    ModelParams params;
    params.tau = tau;
    double e_cut = grid.e_cut;
    std::vector<Level> levels = enumerate_levels(ModelId::Q_EXACT, params, e_cut);
    int raises = 0;
    while (grid.min_cumulative > 0 && total_occupancy(levels) < grid.min_cumulative) {
        if (++raises > 10000)
            throw std::invalid_argument("run_scan: e_cut auto-raise exceeded 10000 steps at tau=" +
                                        fmt6(tau));
        e_cut += 1.0;
        levels = enumerate_levels(ModelId::Q_EXACT, params, e_cut);
    }
    return {std::move(levels), e_cut};
}

std::string join_magic(const MagicSet& magic) {
    std::ostringstream out;
    for (std::size_t i = 0; i < magic.values.size(); ++i) {
        if (i) out << ';';
        out << magic.values[i];
    }
    return out.str();
}

}  // namespace

ScanResult run_scan(const ScanGrid& grid, const std::vector<ReferenceDataset>& references) {
    grid.tau_range.validate("tau_range");
    grid.threshold_range.validate("threshold_range");
    if (grid.tau_range.lo < 0)
        throw std::invalid_argument("run_scan: tau grid must be non-negative");
    if (grid.threshold_range.lo <= 0)
        throw std::invalid_argument("run_scan: threshold grid must be positive");
    if (!std::isfinite(grid.e_cut) || grid.e_cut <= 0)
        throw std::invalid_argument("run_scan: e_cut must be positive");
    if (!std::isfinite(grid.spurious_weight) || grid.spurious_weight < 0)
        throw std::invalid_argument("run_scan: spurious_weight must be >= 0");
    if (grid.min_cumulative < 0)
        throw std::invalid_argument("run_scan: min_cumulative must be >= 0");
    if (references.empty()) throw std::invalid_argument("run_scan: no reference datasets");

    ScanResult result;
    result.grid = grid;
    result.points.reserve(static_cast<std::size_t>(grid.tau_range.steps) * grid.threshold_range.steps);

    for (int ti = 0; ti < grid.tau_range.steps; ++ti) {
        const double tau = grid.tau_range.at(ti);
        const auto [levels, e_cut_used] = levels_for_tau(tau, grid);
        for (int hi = 0; hi < grid.threshold_range.steps; ++hi) {
            const double threshold = grid.threshold_range.at(hi);
            ShellTable table = build_shell_table(levels, threshold);
            ScanPoint point;
            point.tau = tau;
            point.threshold = threshold;
            point.e_cut_used = e_cut_used;
            point.magic = table.magic;
            if (table.magic.values.empty()) {
                point.matches = 0;
                point.spurious = 0;
            } else {
                const ComparisonReport report = compare(table.magic, references, grid.mode);
                point.matches = static_cast<int>(report.matches.size());
                point.spurious = static_cast<int>(report.spurious.size());
            }
            point.score = point.matches - grid.spurious_weight * point.spurious;
            result.points.push_back(std::move(point));
        }
    }

    if (result.points.empty()) throw std::invalid_argument("run_scan: grid produced no points");

    double best_score = result.points.front().score;
    for (const ScanPoint& p : result.points) best_score = std::max(best_score, p.score);
    for (std::size_t i = 0; i < result.points.size(); ++i)
        if (result.points[i].score == best_score) result.best.push_back(i);
    return result;
}

StabilityReport stability_report(const ScanResult& result, const MagicSet& target) {
    if (result.points.empty()) throw std::invalid_argument("stability_report: empty scan result");
    target.validate();

    const int nt = result.grid.tau_range.steps;
    const int nh = result.grid.threshold_range.steps;
    auto index_of = [nh](int ti, int hi) { return static_cast<std::size_t>(ti) * nh + hi; };

    std::vector<bool> matches_target(result.points.size());
    for (std::size_t i = 0; i < result.points.size(); ++i)
        matches_target[i] = result.points[i].magic.values == target.values;

    // largest 4-connected component; ties go to the earliest index
    std::vector<int> component(result.points.size(), -1);
    std::vector<std::vector<std::size_t>> components;
    for (int ti = 0; ti < nt; ++ti)
        for (int hi = 0; hi < nh; ++hi) {
            const std::size_t start = index_of(ti, hi);
            if (!matches_target[start] || component[start] >= 0) continue;
            const int id = static_cast<int>(components.size());
            components.emplace_back();
            std::queue<std::pair<int, int>> frontier;
            frontier.push({ti, hi});
            component[start] = id;
            while (!frontier.empty()) {
                const auto [ct, ch] = frontier.front();
                frontier.pop();
                components[id].push_back(index_of(ct, ch));
                const int dt[4] = {-1, 1, 0, 0};
                const int dh[4] = {0, 0, -1, 1};
                for (int k = 0; k < 4; ++k) {
                    const int at = ct + dt[k], ah = ch + dh[k];
                    if (at < 0 || at >= nt || ah < 0 || ah >= nh) continue;
                    const std::size_t ni = index_of(at, ah);
                    if (!matches_target[ni] || component[ni] >= 0) continue;
                    component[ni] = id;
                    frontier.push({at, ah});
                }
            }
            std::sort(components[id].begin(), components[id].end());
        }

    StabilityReport report;
    if (components.empty()) return report;

    std::size_t best = 0;
    for (std::size_t c = 1; c < components.size(); ++c)
        if (components[c].size() > components[best].size()) best = c;
    report.region = components[best];

    std::vector<bool> in_region(result.points.size(), false);
    for (std::size_t i : report.region) in_region[i] = true;

    std::vector<bool> seen(result.points.size(), false);
    for (std::size_t i : report.region) {
        const int ti = static_cast<int>(i) / nh, hi = static_cast<int>(i) % nh;
        const int dt[4] = {-1, 1, 0, 0};
        const int dh[4] = {0, 0, -1, 1};
        for (int k = 0; k < 4; ++k) {
            const int at = ti + dt[k], ah = hi + dh[k];
            if (at < 0 || at >= nt || ah < 0 || ah >= nh) continue;
            const std::size_t ni = index_of(at, ah);
            if (in_region[ni] || seen[ni]) continue;
            seen[ni] = true;
            // symmetric difference of exactly one value
            const std::vector<int>& have = result.points[ni].magic.values;
            std::vector<int> extra, missing;
            std::set_difference(have.begin(), have.end(), target.values.begin(),
                                target.values.end(), std::back_inserter(extra));
            std::set_difference(target.values.begin(), target.values.end(), have.begin(),
                                have.end(), std::back_inserter(missing));
            if (extra.size() + missing.size() == 1) {
                if (extra.size() == 1)
                    report.boundary.push_back({ni, extra[0], true});
                else
                    report.boundary.push_back({ni, missing[0], false});
            }
        }
    }
    std::sort(report.boundary.begin(), report.boundary.end(),
              [](const StabilityBoundaryPoint& a, const StabilityBoundaryPoint& b) {
                  return a.index < b.index;
              });
    return report;
}

namespace {

std::string scan_csv(const ScanResult& result) {
    std::ostringstream out;
    out << "tau,threshold,score,magic\n";
    for (const ScanPoint& p : result.points)
        out << fmt6(p.tau) << ',' << fmt6(p.threshold) << ',' << fmt3(p.score) << ','
            << join_magic(p.magic) << '\n';
    return out.str();
}

std::string scan_markdown(const ScanResult& result) {
    std::ostringstream out;
    out << "| tau | threshold | score | magic |\n|----:|----------:|------:|:------|\n";
    for (const ScanPoint& p : result.points) {
        out << "| " << fmt6(p.tau) << " | " << fmt6(p.threshold) << " | " << fmt3(p.score) << " | ";
        const std::string joined = join_magic(p.magic);
        for (char c : joined) out << (c == ';' ? ' ' : c);
        out << " |\n";
    }
    return out.str();
}

nlohmann::json point_json(const ScanPoint& p) {
    return {{"tau", p.tau},           {"threshold", p.threshold}, {"e_cut_used", p.e_cut_used},
            {"magic", p.magic.values}, {"matches", p.matches},    {"spurious", p.spurious},
            {"score", p.score}};
}

std::string scan_json(const ScanResult& result) {
    nlohmann::json points = nlohmann::json::array();
    for (const ScanPoint& p : result.points) points.push_back(point_json(p));
    nlohmann::json doc{{"grid",
                        {{"tau", {result.grid.tau_range.lo, result.grid.tau_range.hi,
                                  result.grid.tau_range.steps}},
                         {"threshold", {result.grid.threshold_range.lo, result.grid.threshold_range.hi,
                                        result.grid.threshold_range.steps}},
                         {"e_cut", result.grid.e_cut},
                         {"spurious_weight", result.grid.spurious_weight},
                         {"min_cumulative", result.grid.min_cumulative}}},
                       {"points", std::move(points)},
                       {"best", result.best}};
    return doc.dump(2) + "\n";
}

}  // namespace

std::string render_scan(const ScanResult& result, OutputFormat format) {
    switch (format) {
        case OutputFormat::Markdown: return scan_markdown(result);
        case OutputFormat::Csv: return scan_csv(result);
        case OutputFormat::Json: return scan_json(result);
    }
    throw std::invalid_argument("render_scan: unknown format");
}

std::string render_stability(const ScanResult& result, const StabilityReport& report,
                             OutputFormat format) {
    if (format == OutputFormat::Json) {
        nlohmann::json region = nlohmann::json::array();
        for (std::size_t i : report.region)
            region.push_back({{"tau", result.points[i].tau}, {"threshold", result.points[i].threshold}});
        nlohmann::json boundary = nlohmann::json::array();
        for (const StabilityBoundaryPoint& b : report.boundary)
            boundary.push_back({{"tau", result.points[b.index].tau},
                                {"threshold", result.points[b.index].threshold},
                                {"value", b.value},
                                {"appears", b.appears}});
        return nlohmann::json{{"region", std::move(region)}, {"boundary", std::move(boundary)}}.dump(2) +
               "\n";
    }
    if (format == OutputFormat::Csv) {
        std::ostringstream out;
        out << "kind,tau,threshold,value,appears\n";
        for (std::size_t i : report.region)
            out << "region," << fmt6(result.points[i].tau) << ',' << fmt6(result.points[i].threshold)
                << ",,\n";
        for (const StabilityBoundaryPoint& b : report.boundary)
            out << "boundary," << fmt6(result.points[b.index].tau) << ','
                << fmt6(result.points[b.index].threshold) << ',' << b.value << ','
                << (b.appears ? "true" : "false") << '\n';
        return out.str();
    }
    std::ostringstream out;
    out << "## stability region (" << report.region.size() << " points)\n";
    for (std::size_t i : report.region)
        out << "- (" << fmt6(result.points[i].tau) << ", " << fmt6(result.points[i].threshold)
            << ")\n";
    out << "## boundary (single magic-number changes)\n";
    for (const StabilityBoundaryPoint& b : report.boundary)
        out << "- (" << fmt6(result.points[b.index].tau) << ", "
            << fmt6(result.points[b.index].threshold) << "): " << (b.appears ? "+" : "-") << b.value
            << '\n';
    return out.str();
}

}  // namespace qshell
