#include "qshell/datasets.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace qshell {

namespace {

// Tabulated magic numbers. sigma only where the source prints a +- entry; weak
// marks parenthesized entries (356 is the weak variant printed as 338(356)).
const char* kEmbeddedDatasets = R"JSON([
{"id":"martin","kind":"experiment","source":"Martin et al., Na cluster abundance spectra",
 "values":[{"n":2},{"n":8},{"n":18},{"n":20},{"n":34},{"n":40},{"n":58},{"n":90},{"n":92},
           {"n":138},{"n":198,"sigma":2},{"n":263,"sigma":5},{"n":341,"sigma":5},
           {"n":443,"sigma":5},{"n":557,"sigma":5},{"n":700,"sigma":15},{"n":840,"sigma":15},
           {"n":1040,"sigma":20},{"n":1220,"sigma":20},{"n":1430,"sigma":20}]},
{"id":"bjornholm","kind":"experiment","source":"Bjornholm et al., Na cluster abundance spectra",
 "values":[{"n":2},{"n":8},{"n":20},{"n":40},{"n":58},{"n":92},{"n":138},{"n":196},
           {"n":260,"sigma":4},{"n":344,"sigma":4},{"n":440,"sigma":2},{"n":558,"sigma":8}]},
{"id":"knight","kind":"experiment","source":"Knight et al., Na cluster abundance spectra",
 "values":[{"n":2},{"n":8},{"n":20},{"n":40},{"n":58},{"n":92}]},
{"id":"pedersen","kind":"experiment","source":"Pedersen et al., Na cluster abundance spectra",
 "values":[{"n":40},{"n":58},{"n":92},{"n":138},{"n":198},{"n":264},{"n":344},{"n":442},
           {"n":554},{"n":680},{"n":800},{"n":970},{"n":1120},{"n":1310},{"n":1500}]},
{"id":"brechignac","kind":"experiment","source":"Brechignac et al., Na cluster abundance spectra",
 "values":[{"n":93},{"n":134},{"n":191},{"n":262},{"n":342},{"n":442},{"n":552},{"n":695},
           {"n":822},{"n":902},{"n":1025},{"n":1297}]},
{"id":"rounded-well","kind":"model","source":"rounded square well, intermediate level scheme",
 "values":[{"n":2},{"n":8},{"n":18},{"n":20},{"n":34},{"n":40},{"n":58},{"n":68},{"n":70},
           {"n":92},{"n":106},{"n":112},{"n":138},{"n":156}]},
{"id":"square-well","kind":"model","source":"square well potential level scheme",
 "values":[{"n":2},{"n":8},{"n":18},{"n":20},{"n":34},{"n":40},{"n":58},{"n":68},{"n":90},
           {"n":92},{"n":106},{"n":132},{"n":138},{"n":156}]},
{"id":"plain-ho","kind":"model","source":"non-deformed 3-d isotropic harmonic oscillator",
 "values":[{"n":2},{"n":8},{"n":20},{"n":40},{"n":70},{"n":112},{"n":168}]},
{"id":"jellium-martin","kind":"model","source":"jellium calculation reported by Martin et al.",
 "values":[{"n":2},{"n":8},{"n":18},{"n":20,"weak":true},{"n":34},{"n":40,"weak":true},
           {"n":58},{"n":92},{"n":134},{"n":186},{"n":196,"weak":true},{"n":254},
           {"n":268,"weak":true},{"n":338},{"n":356,"weak":true},{"n":440},{"n":562},
           {"n":704},{"n":852}]},
{"id":"jellium-bjornholm","kind":"model","source":"jellium calculation reported by Bjornholm et al.",
 "values":[{"n":2},{"n":8},{"n":18},{"n":20},{"n":34},{"n":40},{"n":58},{"n":92},{"n":138},
           {"n":186},{"n":196},{"n":254},{"n":338},{"n":440},{"n":556},{"n":676},{"n":832}]},
{"id":"jellium-brack","kind":"model","source":"jellium calculation, Brack",
 "values":[{"n":2},{"n":8},{"n":20},{"n":34},{"n":58},{"n":92},{"n":138},{"n":186},{"n":254},
           {"n":338},{"n":438},{"n":440},{"n":542},{"n":556},{"n":676},{"n":758},{"n":832},
           {"n":912},{"n":1074},{"n":1100},{"n":1284},{"n":1502}]},
{"id":"jellium-bulgac","kind":"model","source":"jellium calculation, Bulgac and Lewenkopf",
 "values":[{"n":34},{"n":58},{"n":92},{"n":138},{"n":186},{"n":254},{"n":338},{"n":440},
           {"n":542},{"n":556},{"n":676},{"n":748},{"n":832},{"n":912},{"n":1074},{"n":1100},
           {"n":1284},{"n":1502}]},
{"id":"woods-saxon","kind":"model","source":"Woods-Saxon and wine bottle potentials, Nishioka et al.",
 "values":[{"n":2},{"n":8},{"n":20},{"n":40},{"n":58},{"n":68},{"n":92},{"n":138},{"n":198},
           {"n":254},{"n":268},{"n":338},{"n":440},{"n":562},{"n":694},{"n":832},{"n":1012},
           {"n":1100},{"n":1216},{"n":1314},{"n":1516}]},
{"id":"3nl","kind":"model","source":"3n+l pseudo quantum number classification, Martin et al.",
 "values":[{"n":2},{"n":8},{"n":18},{"n":34},{"n":58},{"n":90},{"n":132},{"n":186},{"n":252},
           {"n":332},{"n":428},{"n":540},{"n":670},{"n":820},{"n":990},{"n":1182},{"n":1398}]}
])JSON";

ReferenceDataset dataset_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw std::invalid_argument("dataset: expected a JSON object");
    for (const char* key : {"id", "kind", "source", "values"})
        if (!j.contains(key))
            throw std::invalid_argument(std::string("dataset: missing field '") + key + "'");

    ReferenceDataset ds;
    ds.id = j.at("id").get<std::string>();
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "experiment")
        ds.kind = DatasetKind::Experiment;
    else if (kind == "model")
        ds.kind = DatasetKind::Model;
    else
        throw std::invalid_argument("dataset: kind must be 'experiment' or 'model'");
    ds.source = j.at("source").get<std::string>();

    const nlohmann::json& values = j.at("values");
    if (!values.is_array() || values.empty())
        throw std::invalid_argument("dataset: values must be a non-empty array");
    for (const nlohmann::json& entry : values) {
        if (!entry.is_object() || !entry.contains("n"))
            throw std::invalid_argument("dataset: each value needs an integer field 'n'");
        ds.magic.values.push_back(entry.at("n").get<int>());
        ds.magic.sigma.push_back(entry.value("sigma", 0));
        ds.magic.weak.push_back(entry.value("weak", false));
    }
    ds.magic.validate();
    return ds;
}

std::vector<ReferenceDataset> parse_registry() {
    const nlohmann::json doc = nlohmann::json::parse(kEmbeddedDatasets);
    std::vector<ReferenceDataset> sets;
    sets.reserve(doc.size());
    for (const nlohmann::json& j : doc) sets.push_back(dataset_from_json(j));
    return sets;
}

}  // namespace

const std::vector<ReferenceDataset>& registry() {
    static const std::vector<ReferenceDataset> sets = parse_registry();
    return sets;
}

const ReferenceDataset& lookup(const std::string& id) {
    for (const ReferenceDataset& ds : registry())
        if (ds.id == id) return ds;
    throw std::out_of_range("unknown dataset id: " + id);
}

ReferenceDataset parse_dataset_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& err) {
        throw std::invalid_argument(std::string("dataset: JSON parse error: ") + err.what());
    }
    return dataset_from_json(doc);
}

ReferenceDataset load_dataset_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open dataset file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_dataset_json(buf.str());
}

std::string dataset_to_json(const ReferenceDataset& dataset) {
    nlohmann::json values = nlohmann::json::array();
    for (std::size_t i = 0; i < dataset.magic.values.size(); ++i) {
        nlohmann::json entry{{"n", dataset.magic.values[i]}};
        if (dataset.magic.sigma[i] != 0) entry["sigma"] = dataset.magic.sigma[i];
        if (dataset.magic.weak[i]) entry["weak"] = true;
        values.push_back(std::move(entry));
    }
    nlohmann::json doc{{"id", dataset.id},
                       {"kind", kind_name(dataset.kind)},
                       {"source", dataset.source},
                       {"values", std::move(values)}};
    return doc.dump(2) + "\n";
}

std::string kind_name(DatasetKind kind) {
    return kind == DatasetKind::Experiment ? "experiment" : "model";
}

}  // namespace qshell
