#pragma once

#include <map>
#include <span>
#include <utility>
#include <vector>

#include "procalign/alignment_model.hpp"
#include "procalign/execution.hpp"

namespace procalign {

struct EmOptions {
    TrainSchedule schedule;
    /// Probability given to offsets that become legal when a stage widens the
    /// window, before renormalization.
    double widen_floor = 0.05;
    /// Inner iterations of the jump-table update (see maximization_step).
    int jump_update_iterations = 50;
    Execution execution = Execution::Parallel;
};

/// Expected counts gathered by one E-step.
struct SufficientStats {
    std::vector<double> lexical;  // aligned with LexicalTable::probs()
    std::vector<double> jump;     // offset d at index d + window
    /// Expected number of transitions leaving a state whose reachable offset
    /// range is [lo, hi], keyed by (lo, hi).
    std::map<std::pair<int, int>, double> leaving;
    double log_likelihood = 0.0;

    void merge(const SufficientStats& other);
};

/// p(f | e) uniform over the (e, f) pairs co-occurring in some recipe pair.
LexicalTable initial_lexical_table(std::span<const EncodedPair> pairs);

/// Per-pair E-step contribution. Pairs are merged in input order regardless
/// of `exec`, so the serial and parallel results are bit-identical.
SufficientStats expectation_step(std::span<const EncodedPair> pairs, const AlignmentModel& model,
                                 Execution exec = Execution::Serial);

/// Lexical rows become normalized expected counts. The jump table is set to
/// the maximizer of the expected complete-data log-likelihood under boundary
/// renormalization, found by a minorize-maximize fixed point started from the
/// current table; each inner step cannot decrease the objective.
void maximization_step(AlignmentModel& model, const SufficientStats& stats,
                       int jump_update_iterations = 50);

double corpus_log_likelihood(std::span<const EncodedPair> pairs, const AlignmentModel& model,
                             Execution exec = Execution::Serial);

/// Runs the staged EM schedule. The trace records, per stage, the corpus
/// log-likelihood before every update and after the stage's last update.
/// Throws NoPairs on empty input.
AlignmentModel em_train(std::span<const EncodedPair> pairs, Vocabulary source_vocab,
                        Vocabulary target_vocab, const EmOptions& options = {});

}  // namespace procalign
