#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <doctest.h>
#include <json.hpp>

#include "qshell/shells.hpp"
#include "table1_fixture.hpp"

using namespace qshell;

namespace {

std::vector<Level> reference_levels() {
    ModelParams params;
    params.tau = fixture::kTau;
    return enumerate_levels(ModelId::Q_EXACT, params, fixture::kECut);
}

std::vector<int> golden() {
    return {fixture::kMagic.begin(), fixture::kMagic.end()};
}

}  // namespace

TEST_CASE("reference table: rows, cumulative totals, magic set, gaps") {
    const ShellTable table = build_shell_table(reference_levels(), fixture::kThreshold);
    REQUIRE(table.rows.size() == fixture::kTable1.size());

    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const ShellRow& row = table.rows[i];
        const fixture::Row& ref = fixture::kTable1[i];
        CHECK(row.level.n == ref.n);
        CHECK(row.level.l == ref.l);
        CHECK(std::abs(row.level.energy - ref.energy) <= 0.001);
        CHECK(row.level.degeneracy == ref.degeneracy);
        CHECK(row.cumulative == ref.cumulative);
    }

    CHECK(table.magic.values == golden());

    for (std::size_t i = 0; i < fixture::kMagic.size(); ++i)
        CHECK(std::abs(gap_at(table, fixture::kMagic[i]) - fixture::kGaps[i]) <= 0.001);

    // near-threshold gaps that stay below 0.39
    CHECK(std::abs(gap_at(table, 18) - 0.237) <= 0.001);
    CHECK(std::abs(gap_at(table, 186) - 0.329) <= 0.001);
    CHECK(std::abs(gap_at(table, 542) - 0.325) <= 0.001);

    // final row carries the sentinel and is never magic
    CHECK(std::isinf(table.rows.back().gap_after));
    CHECK_FALSE(table.rows.back().is_magic);
    CHECK(std::isinf(gap_at(table, 1516)));

    CHECK_THROWS_AS(gap_at(table, 999), std::out_of_range);
}

TEST_CASE("threshold 0.32 admits exactly the five near-threshold extras") {
    const ShellTable table = build_shell_table(reference_levels(), 0.32);
    std::set<int> expected(fixture::kMagic.begin(), fixture::kMagic.end());
    expected.insert(fixture::kThreshold032Extras.begin(), fixture::kThreshold032Extras.end());
    CHECK(std::set<int>(table.magic.values.begin(), table.magic.values.end()) == expected);
    CHECK(table.magic.contains(186));
    CHECK(table.magic.contains(542));
}

TEST_CASE("plain oscillator pipeline at tau = 0") {
    ModelParams params;
    params.tau = 0.0;
    const std::vector<Level> levels = enumerate_levels(ModelId::Q_EXACT, params, 7.5);
    const std::vector<int> expected{2, 8, 20, 40, 70, 112, 168};
    for (double threshold : {0.05, 0.39, 0.99})
        CHECK(build_shell_table(levels, threshold).magic.values == expected);
    // cumulative conservation: complete bands n <= 7
    const ShellTable table = build_shell_table(levels, 0.39);
    int expected_total = 0;
    for (int n = 0; n <= 7; ++n) expected_total += (n + 1) * (n + 2);
    CHECK(table.rows.back().cumulative == expected_total);
}

TEST_CASE("degenerate inputs") {
    CHECK_THROWS_AS(build_shell_table({}, 0.39), std::invalid_argument);
    CHECK_THROWS_AS(build_shell_table(reference_levels(), 0.0), std::invalid_argument);
    CHECK_THROWS_AS(build_shell_table(reference_levels(), -0.1), std::invalid_argument);
    const ShellTable single = build_shell_table({{0, 0, 0.0, 2}}, 0.39);
    CHECK(single.magic.values.empty());
    CHECK(std::isinf(single.rows[0].gap_after));
}

TEST_CASE("threshold monotonicity: higher threshold, subset magic") {
    const std::vector<Level> levels = reference_levels();
    const std::vector<double> thresholds{0.25, 0.32, 0.39, 0.45, 0.6};
    std::vector<std::set<int>> sets;
    for (double t : thresholds) {
        const ShellTable table = build_shell_table(levels, t);
        sets.emplace_back(table.magic.values.begin(), table.magic.values.end());
    }
    for (std::size_t i = 1; i < sets.size(); ++i)
        CHECK(std::includes(sets[i - 1].begin(), sets[i - 1].end(), sets[i].begin(), sets[i].end()));
}

TEST_CASE("permutation invariance of construction") {
    std::vector<Level> levels = reference_levels();
    const ShellTable reference = build_shell_table(levels, fixture::kThreshold);
    std::mt19937 rng(42);
    for (int round = 0; round < 5; ++round) {
        std::shuffle(levels.begin(), levels.end(), rng);
        const ShellTable shuffled = build_shell_table(levels, fixture::kThreshold);
        REQUIRE(shuffled.rows.size() == reference.rows.size());
        for (std::size_t i = 0; i < shuffled.rows.size(); ++i) {
            CHECK(shuffled.rows[i].level.n == reference.rows[i].level.n);
            CHECK(shuffled.rows[i].level.l == reference.rows[i].level.l);
            CHECK(shuffled.rows[i].cumulative == reference.rows[i].cumulative);
            CHECK(shuffled.rows[i].is_magic == reference.rows[i].is_magic);
        }
        CHECK(shuffled.magic.values == reference.magic.values);
    }
}

TEST_CASE("scale invariance of the magic set") {
    std::vector<Level> levels = reference_levels();
    const std::vector<int> reference = build_shell_table(levels, fixture::kThreshold).magic.values;
    const double lambda = 2.5;
    for (Level& level : levels) level.energy *= lambda;
    const ShellTable scaled = build_shell_table(levels, fixture::kThreshold * lambda);
    CHECK(scaled.magic.values == reference);
}

TEST_CASE("equal-energy ties resolve by n then l") {
    const std::vector<Level> levels = enumerate_levels(ModelId::PLAIN_HO, ModelParams{}, 4.5);
    const ShellTable table = build_shell_table(levels, 0.39);
    std::vector<std::pair<int, int>> order;
    for (const ShellRow& row : table.rows) order.push_back({row.level.n, row.level.l});
    const std::vector<std::pair<int, int>> expected{
        {0, 0}, {1, 1}, {2, 0}, {2, 2}, {3, 1}, {3, 3}, {4, 0}, {4, 2}, {4, 4}};
    CHECK(order == expected);
}

TEST_CASE("markdown rendering follows the table conventions") {
    const ShellTable table = build_shell_table(reference_levels(), fixture::kThreshold);
    const std::string text = render_table(table, OutputFormat::Markdown);
    CHECK(text.find("| 0 | 0 | 0.000 | 2 | **2** | 1.000 |") != std::string::npos);
    CHECK(text.find("**1502**") != std::string::npos);
    CHECK(text.find("**1516**") == std::string::npos);  // last row, sentinel gap, not magic
    CHECK(text.find("**18**") == std::string::npos);    // 0.237 gap stays below threshold
}

TEST_CASE("csv rendering and round trip") {
    const ShellTable table = build_shell_table(reference_levels(), fixture::kThreshold);
    const std::string text = render_table(table, OutputFormat::Csv);

    std::istringstream in(text);
    std::string line;
    std::getline(in, line);
    CHECK(line == "n,l,energy,degeneracy,cumulative,gap_after,is_magic");
    std::getline(in, line);
    CHECK(line == "0,0,0.000,2,2,1.000,true");

    // parse every numeric field and re-render: byte-identical text
    std::ostringstream rebuilt;
    rebuilt << "n,l,energy,degeneracy,cumulative,gap_after,is_magic\n";
    std::size_t rows = 0;
    while (std::getline(in, line)) {
        std::istringstream fields(line);
        std::string f[7];
        for (int i = 0; i < 7; ++i) std::getline(fields, f[i], ',');
        rebuilt << std::stoi(f[0]) << ',' << std::stoi(f[1]) << ',' << fmt3(std::stod(f[2])) << ','
                << std::stoi(f[3]) << ',' << std::stoi(f[4]) << ',' << fmt3(std::stod(f[5])) << ','
                << f[6] << '\n';
        ++rows;
    }
    CHECK(rows == table.rows.size() - 1);  // first data row consumed above
    std::ostringstream expected;
    expected << "n,l,energy,degeneracy,cumulative,gap_after,is_magic\n";
    std::istringstream again(text);
    std::getline(again, line);
    std::getline(again, line);  // drop header and first data row
    while (std::getline(again, line)) expected << line << '\n';
    CHECK(rebuilt.str() == expected.str());
}

TEST_CASE("json rendering carries full precision and the sentinel as null") {
    const ShellTable table = build_shell_table(reference_levels(), fixture::kThreshold);
    const nlohmann::json doc = nlohmann::json::parse(render_table(table, OutputFormat::Json));
    REQUIRE(doc.at("rows").size() == fixture::kTable1.size());
    CHECK(doc.at("threshold").get<double>() == fixture::kThreshold);
    CHECK(doc.at("magic").get<std::vector<int>>() == golden());
    CHECK(doc.at("rows").back().at("gap_after").is_null());
    CHECK(doc.at("rows")[0].at("energy").get<double>() == table.rows[0].level.energy);
}

TEST_CASE("format names parse strictly") {
    CHECK(parse_format("markdown") == OutputFormat::Markdown);
    CHECK(parse_format("csv") == OutputFormat::Csv);
    CHECK(parse_format("json") == OutputFormat::Json);
    CHECK_THROWS_AS(parse_format("xml"), std::invalid_argument);
}

TEST_CASE("magic set validation") {
    CHECK_THROWS_AS(MagicSet::from_values({2, 2, 8}), std::invalid_argument);
    CHECK_THROWS_AS(MagicSet::from_values({0, 8}), std::invalid_argument);
    CHECK_THROWS_AS(MagicSet::from_values({8, 2}), std::invalid_argument);
    const MagicSet ok = MagicSet::from_values({2, 8, 20});
    CHECK(ok.contains(8));
    CHECK_FALSE(ok.contains(9));
}
