#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "procalign/pairing.hpp"

namespace procalign {

/// One target label per source instruction with the label's probability.
struct PairwiseAlignment {
    std::string dish_id;
    std::string source_id;
    std::string target_id;
    PairKind kind = PairKind::TextText;
    std::size_t target_size = 0;
    std::vector<int> labels;
    std::vector<double> posteriors;
    std::optional<std::vector<std::vector<double>>> posterior_rows;

    std::size_t source_size() const { return labels.size(); }
};

nlohmann::json alignment_to_json(const PairwiseAlignment& a);
PairwiseAlignment alignment_from_json(const nlohmann::json& j);

/// Throws InvalidArgument when labels/posteriors are inconsistent.
void validate(const PairwiseAlignment& a);

}  // namespace procalign
