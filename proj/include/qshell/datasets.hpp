#pragma once

#include <string>
#include <vector>

#include "qshell/shells.hpp"

namespace qshell {

enum class DatasetKind { Experiment, Model };

struct ReferenceDataset {
    std::string id;
    DatasetKind kind;
    std::string source;
    MagicSet magic;
};

// Embedded reference sets: five cluster-abundance experiments plus the
// literature level-scheme models. Parsed once, read-only afterwards.
const std::vector<ReferenceDataset>& registry();

// std::out_of_range on unknown id.
const ReferenceDataset& lookup(const std::string& id);

// Schema: {id, kind: "experiment"|"model", source, values: [{n, sigma?, weak?}]}.
// std::invalid_argument on malformed input.
ReferenceDataset parse_dataset_json(const std::string& text);
ReferenceDataset load_dataset_file(const std::string& path);
std::string dataset_to_json(const ReferenceDataset& dataset);

std::string kind_name(DatasetKind kind);

}  // namespace qshell
