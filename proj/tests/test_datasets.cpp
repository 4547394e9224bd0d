#include <cstdio>
#include <fstream>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <doctest.h>

#include "qshell/datasets.hpp"
#include "qshell/spectrum.hpp"

using namespace qshell;

TEST_CASE("registry holds the full embedded collection") {
    const std::vector<ReferenceDataset>& all = registry();
    REQUIRE(all.size() == 14);

    const std::map<std::string, std::size_t> expected_sizes{
        {"martin", 20},          {"bjornholm", 12},        {"knight", 6},
        {"pedersen", 15},        {"brechignac", 12},       {"rounded-well", 14},
        {"square-well", 14},     {"plain-ho", 7},          {"jellium-martin", 19},
        {"jellium-bjornholm", 17}, {"jellium-brack", 22},  {"jellium-bulgac", 18},
        {"woods-saxon", 21},     {"3nl", 17}};

    std::size_t total = 0;
    int experiments = 0;
    for (const ReferenceDataset& ds : all) {
        REQUIRE(expected_sizes.count(ds.id) == 1);
        CHECK(ds.magic.values.size() == expected_sizes.at(ds.id));
        CHECK_FALSE(ds.source.empty());
        ds.magic.validate();
        CHECK(ds.magic.values.front() > 0);
        CHECK(ds.magic.values.back() <= 1516);
        total += ds.magic.values.size();
        if (ds.kind == DatasetKind::Experiment) ++experiments;
    }
    CHECK(total == 214);
    CHECK(experiments == 5);
}

TEST_CASE("lookup returns embedded entries and rejects unknown ids") {
    const ReferenceDataset& knight = lookup("knight");
    CHECK(knight.kind == DatasetKind::Experiment);
    CHECK(knight.magic.values == std::vector<int>{2, 8, 20, 40, 58, 92});
    for (int s : knight.magic.sigma) CHECK(s == 0);

    const ReferenceDataset& martin = lookup("martin");
    CHECK(martin.magic.values.front() == 2);
    CHECK(martin.magic.values.back() == 1430);
    // uncertainties attach from 198 on
    for (std::size_t i = 0; i < martin.magic.values.size(); ++i) {
        if (martin.magic.values[i] == 198) CHECK(martin.magic.sigma[i] == 2);
        if (martin.magic.values[i] == 700) CHECK(martin.magic.sigma[i] == 15);
        if (martin.magic.values[i] == 1430) CHECK(martin.magic.sigma[i] == 20);
        if (martin.magic.values[i] < 198) CHECK(martin.magic.sigma[i] == 0);
    }

    const ReferenceDataset& bjornholm = lookup("bjornholm");
    for (std::size_t i = 0; i < bjornholm.magic.values.size(); ++i) {
        const int v = bjornholm.magic.values[i];
        const int s = bjornholm.magic.sigma[i];
        if (v == 260 || v == 344) CHECK(s == 4);
        else if (v == 440) CHECK(s == 2);
        else if (v == 558) CHECK(s == 8);
        else CHECK(s == 0);
    }

    const ReferenceDataset& jm = lookup("jellium-martin");
    std::vector<int> weak_values;
    for (std::size_t i = 0; i < jm.magic.values.size(); ++i)
        if (jm.magic.weak[i]) weak_values.push_back(jm.magic.values[i]);
    CHECK(weak_values == std::vector<int>{20, 40, 196, 268, 356});

    CHECK_THROWS_AS(lookup("foo"), std::out_of_range);
}

TEST_CASE("3nl dataset reproduces the analytic fill") {
    const ReferenceDataset& ds = lookup("3nl");
    CHECK(ds.kind == DatasetKind::Model);
    const std::vector<FillRow> fill = pseudo_3nl_fill(16);
    REQUIRE(fill.size() == ds.magic.values.size());
    for (std::size_t i = 0; i < fill.size(); ++i)
        CHECK(fill[i].cumulative == ds.magic.values[i]);
}

TEST_CASE("json serialization round trip") {
    for (const ReferenceDataset& ds : registry()) {
        const ReferenceDataset copy = parse_dataset_json(dataset_to_json(ds));
        CHECK(copy.id == ds.id);
        CHECK(copy.kind == ds.kind);
        CHECK(copy.source == ds.source);
        CHECK(copy.magic.values == ds.magic.values);
        CHECK(copy.magic.sigma == ds.magic.sigma);
        CHECK(copy.magic.weak == ds.magic.weak);
    }
}

TEST_CASE("json parsing accepts the documented schema") {
    const ReferenceDataset ds = parse_dataset_json(R"({
        "id": "toy",
        "kind": "experiment",
        "source": "bench notes",
        "values": [{"n": 2}, {"n": 8, "sigma": 1}, {"n": 20, "weak": true}]
    })");
    CHECK(ds.id == "toy");
    CHECK(ds.kind == DatasetKind::Experiment);
    CHECK(ds.magic.values == std::vector<int>{2, 8, 20});
    CHECK(ds.magic.sigma == std::vector<int>{0, 1, 0});
    CHECK(ds.magic.weak == std::vector<bool>{false, false, true});
}

TEST_CASE("json parsing rejects malformed input") {
    CHECK_THROWS_AS(parse_dataset_json("not json"), std::invalid_argument);
    CHECK_THROWS_AS(parse_dataset_json(R"({"id":"x"})"), std::invalid_argument);
    CHECK_THROWS_AS(parse_dataset_json(R"({"id":"x","kind":"poem","source":"s","values":[{"n":2}]})"),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_dataset_json(R"({"id":"x","kind":"model","source":"s","values":[]})"),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        parse_dataset_json(R"({"id":"x","kind":"model","source":"s","values":[{"n":8},{"n":2}]})"),
        std::invalid_argument);
    CHECK_THROWS_AS(
        parse_dataset_json(R"({"id":"x","kind":"model","source":"s","values":[{"sigma":1}]})"),
        std::invalid_argument);
}

TEST_CASE("datasets load from files") {
    const std::string path = "qshell_test_dataset.json";
    {
        std::ofstream out(path);
        out << dataset_to_json(lookup("pedersen"));
    }
    const ReferenceDataset ds = load_dataset_file(path);
    CHECK(ds.id == "pedersen");
    CHECK(ds.magic.values.size() == 15);
    std::remove(path.c_str());
    CHECK_THROWS_AS(load_dataset_file("definitely_missing_file.json"), std::invalid_argument);
}

TEST_CASE("kind names") {
    CHECK(kind_name(DatasetKind::Experiment) == "experiment");
    CHECK(kind_name(DatasetKind::Model) == "model");
}
