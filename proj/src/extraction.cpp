#include "procalign/extraction.hpp"

#include <algorithm>
#include <map>

#include "procalign/error.hpp"
#include "procalign/io_util.hpp"

namespace procalign {

std::vector<ParaphraseRecord> extract_paraphrases(std::span<const PairwiseAlignment> alignments,
                                                  double threshold)
{
    std::vector<ParaphraseRecord> out;
    for (const auto& a : alignments) {
        for (std::size_t m = 0; m < a.labels.size(); ++m) {
            if (a.posteriors[m] > threshold) {
                out.push_back({a.dish_id, a.kind, {a.source_id, static_cast<int>(m)},
                               {a.target_id, a.labels[m]}, a.posteriors[m]});
            }
        }
    }
    return out;
}

std::vector<BreakdownRecord> extract_step_breakdowns(std::span<const PairwiseAlignment> alignments,
                                                     double threshold)
{
    std::vector<BreakdownRecord> out;
    for (const auto& a : alignments) {
        if (a.kind != PairKind::TextText) {
            continue;
        }
        std::map<int, std::vector<std::size_t>> by_target;
        for (std::size_t m = 0; m < a.labels.size(); ++m) {
            by_target[a.labels[m]].push_back(m);
        }
        for (const auto& [target, sources] : by_target) {
            if (sources.size() < 2) {
                continue;
            }
            bool confident = std::all_of(sources.begin(), sources.end(),
                                         [&](std::size_t m) { return a.posteriors[m] > threshold; });
            if (!confident) {
                continue;
            }
            BreakdownRecord r;
            r.dish_id = a.dish_id;
            r.single = {a.target_id, target};
            for (std::size_t m : sources) {
                r.multi.push_back({a.source_id, static_cast<int>(m)});
                r.probabilities.push_back(a.posteriors[m]);
            }
            out.push_back(std::move(r));
        }
    }
    return out;
}

nlohmann::json paraphrase_to_json(const ParaphraseRecord& r, const RecipeIndex& recipes)
{
    return nlohmann::json{{"dish_id", r.dish_id},
                          {"kind", to_string(r.kind)},
                          {"a", node_to_json(r.a, recipes)},
                          {"b", node_to_json(r.b, recipes)},
                          {"probability", r.probability}};
}

nlohmann::json breakdown_to_json(const BreakdownRecord& r, const RecipeIndex& recipes)
{
    nlohmann::json multi = nlohmann::json::array();
    for (const auto& node : r.multi) {
        multi.push_back(node_to_json(node, recipes));
    }
    return nlohmann::json{{"dish_id", r.dish_id},
                          {"single", node_to_json(r.single, recipes)},
                          {"multi", std::move(multi)},
                          {"probabilities", r.probabilities}};
}

double extracted_fraction(std::span<const PairwiseAlignment> alignments, double threshold)
{
    std::size_t total = 0;
    std::size_t kept = 0;
    for (const auto& a : alignments) {
        total += a.posteriors.size();
        kept += static_cast<std::size_t>(
            std::count_if(a.posteriors.begin(), a.posteriors.end(), [&](double p) { return p > threshold; }));
    }
    return total == 0 ? 0.0 : static_cast<double>(kept) / static_cast<double>(total);
}

std::vector<CurvePoint> tradeoff_curve(std::span<const PairwiseAlignment> alignments,
                                       std::span<const std::vector<int>> references,
                                       std::vector<double> thresholds)
{
    if (alignments.size() != references.size()) {
        throw LengthMismatch("every alignment needs a reference");
    }
    for (std::size_t i = 0; i < alignments.size(); ++i) {
        if (alignments[i].labels.size() != references[i].size()) {
            throw LengthMismatch("reference length differs for " + alignments[i].source_id + "->" +
                                 alignments[i].target_id);
        }
    }
    std::sort(thresholds.begin(), thresholds.end());
    std::vector<CurvePoint> out;
    for (double t : thresholds) {
        CurvePoint point;
        point.threshold = t;
        point.extracted_fraction = extracted_fraction(alignments, t);
        std::vector<PairScore> scores;
        for (std::size_t i = 0; i < alignments.size(); ++i) {
            std::vector<int> predicted;
            std::vector<int> reference;
            for (std::size_t m = 0; m < alignments[i].labels.size(); ++m) {
                if (alignments[i].posteriors[m] > t) {
                    predicted.push_back(alignments[i].labels[m]);
                    reference.push_back(references[i][m]);
                }
            }
            if (!predicted.empty()) {
                scores.push_back(weighted_prf(predicted, reference));
            }
        }
        if (!scores.empty()) {
            point.score = aggregate(scores);
        }
        out.push_back(std::move(point));
    }
    return out;
}

}  // namespace procalign
