#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "procalign/execution.hpp"

namespace procalign {

struct PairScore {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    /// True-instance count per reference label.
    std::map<int, std::size_t> support;
};

/// Per-label precision/recall/F1 over the labels present in `reference`,
/// averaged with weights support / M. Throws LengthMismatch or EmptyInput.
PairScore weighted_prf(std::span<const int> predicted, std::span<const int> reference);

/// Human labels for one (source, target) pair: annotators[a][m] is the label
/// set annotator a gave source instruction m.
struct ReferenceAlignment {
    std::string source_id;
    std::string target_id;
    std::vector<std::vector<std::vector<int>>> annotators;

    std::size_t size() const { return annotators.empty() ? 0 : annotators.front().size(); }
};

nlohmann::json reference_to_json(const ReferenceAlignment& r);
ReferenceAlignment reference_from_json(const nlohmann::json& j);

/// Majority vote per instruction, each label in a set counting once. Ties go
/// to the tied label listed first by the earliest annotator that lists one.
std::vector<int> consensus(const ReferenceAlignment& refs);

enum class ReferenceMode { Consensus, PerAnnotator };

/// Consensus: score against consensus(). PerAnnotator: score against each
/// annotator's first label and average.
PairScore score_pair(std::span<const int> predicted, const ReferenceAlignment& refs,
                     ReferenceMode mode = ReferenceMode::Consensus);

/// Unweighted mean of precision, recall and F1. Throws EmptyInput.
PairScore aggregate(std::span<const PairScore> scores);

/// Fraction of bootstrap resamples (over pairs) in which mean(a) <= mean(b).
/// Resample r draws from its own generator seeded by (seed, r). Needs at
/// least 1000 resamples.
double paired_bootstrap(std::span<const double> system_a, std::span<const double> system_b,
                        std::size_t resamples, std::uint64_t seed,
                        Execution exec = Execution::Parallel);

}  // namespace procalign
