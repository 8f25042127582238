#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "procalign/evaluation.hpp"
#include "procalign/joint.hpp"
#include "procalign/pairwise_alignment.hpp"

namespace procalign {

class RecipeIndex;

struct ParaphraseRecord {
    std::string dish_id;
    PairKind kind = PairKind::TextText;
    NodeRef a;  // source side
    NodeRef b;  // target side
    double probability = 0.0;
};

/// One record per source instruction with posterior > threshold, in
/// alignment order then source order.
std::vector<ParaphraseRecord> extract_paraphrases(std::span<const PairwiseAlignment> alignments,
                                                  double threshold = 0.5);

struct BreakdownRecord {
    std::string dish_id;
    NodeRef single;
    std::vector<NodeRef> multi;
    std::vector<double> probabilities;
};

/// Target instructions that receive two or more source instructions, all of
/// them with posterior > threshold. Only text-text alignments are used; both
/// directions are covered when the list holds both.
std::vector<BreakdownRecord> extract_step_breakdowns(std::span<const PairwiseAlignment> alignments,
                                                     double threshold = 0.9);

nlohmann::json paraphrase_to_json(const ParaphraseRecord& r, const RecipeIndex& recipes);
nlohmann::json breakdown_to_json(const BreakdownRecord& r, const RecipeIndex& recipes);

struct CurvePoint {
    double threshold = 0.0;
    double extracted_fraction = 0.0;
    std::optional<PairScore> score;  // empty when nothing is retained
};

/// For each threshold (ascending), the fraction of instructions with
/// posterior > threshold and the aggregate weighted P/R/F1 of those retained
/// predictions against the consensus labels. `references[i]` belongs to
/// `alignments[i]`.
std::vector<CurvePoint> tradeoff_curve(std::span<const PairwiseAlignment> alignments,
                                       std::span<const std::vector<int>> references,
                                       std::vector<double> thresholds);

/// Share of source instructions with posterior > threshold.
double extracted_fraction(std::span<const PairwiseAlignment> alignments, double threshold);

}  // namespace procalign
