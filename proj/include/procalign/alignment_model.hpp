#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "procalign/vocabulary.hpp"

namespace procalign {

/// Probability used for (target word, source word) pairs absent from the table.
inline constexpr double kLexicalFloor = 1e-12;

using Sentence = std::vector<WordId>;

/// A source/target recipe pair, one encoded sentence per instruction.
/// Source instructions are the observations; target instructions the states.
struct EncodedPair {
    std::vector<Sentence> source;
    std::vector<Sentence> target;
};

struct ScheduleStage {
    int window = 1;
    int iterations = 1;
};

struct TrainSchedule {
    std::vector<ScheduleStage> stages{{1, 3}, {2, 2}};

    /// Throws InvalidConfig unless windows are positive and non-decreasing
    /// and every iteration count is at least one.
    void validate() const;
    int final_window() const { return stages.empty() ? 1 : stages.back().window; }
};

/// Sparse p(f | e) stored row-major by target word e, columns sorted by
/// source word f. The sparsity pattern is fixed at construction.
class LexicalTable {
  public:
    LexicalTable() = default;

    /// Uniform rows over the given (e, f) pairs. Duplicates are ignored.
    static LexicalTable uniform_over(std::vector<std::pair<WordId, WordId>> entries);

    /// Builds from explicit triplets; rows are used as given (no renormalization).
    static LexicalTable from_triplets(std::vector<std::tuple<WordId, WordId, double>> triplets);

    double prob(WordId e, WordId f) const;
    std::optional<std::size_t> position(WordId e, WordId f) const;

    std::size_t rows() const { return row_start_.empty() ? 0 : row_start_.size() - 1; }
    std::size_t entries() const { return cols_.size(); }

    /// Offset of row e's first entry within probs().
    std::size_t row_offset(WordId e) const { return e < rows() ? row_start_[e] : entries(); }
    std::span<const WordId> row_cols(WordId e) const;
    std::span<const double> row_probs(WordId e) const;
    std::span<double> row_probs(WordId e);

    std::span<const double> probs() const { return probs_; }
    std::span<double> probs() { return probs_; }

    /// Replaces every row by its normalized counts. Rows whose counts sum to
    /// zero keep their previous values.
    void normalize_from_counts(std::span<const double> counts);

    std::vector<std::tuple<WordId, WordId, double>> triplets() const;

  private:
    std::vector<std::size_t> row_start_;
    std::vector<WordId> cols_;
    std::vector<double> probs_;
};

/// Position-independent distribution over signed jump offsets d in [-W, W].
class JumpTable {
  public:
    JumpTable() : JumpTable(1) {}
    explicit JumpTable(int window);  // uniform
    JumpTable(int window, std::vector<double> probs);

    int window() const { return window_; }
    double operator()(int offset) const;
    std::span<const double> probs() const { return probs_; }

    /// Extends the support to `new_window`; newly legal offsets start at
    /// `floor` and the table is renormalized.
    void widen(int new_window, double floor);

    /// Transition matrix for N states: row n holds jump(n' - n) renormalized
    /// over the successors n' in [0, N) reachable within the window. A row
    /// whose reachable mass is zero becomes uniform over its reachable states.
    std::vector<double> transition_matrix(std::size_t states) const;

  private:
    int window_;
    std::vector<double> probs_;
};

struct TraceEntry {
    int stage = 0;
    int iteration = 0;  // 0 = before the first update of the stage
    int window = 1;
    double log_likelihood = 0.0;
};

struct AlignmentModel {
    std::string kind;  // informational, e.g. "text-text"
    TokenMode token_mode = TokenMode::AllWords;
    Vocabulary source_vocab;
    Vocabulary target_vocab;
    LexicalTable lexical;
    JumpTable jump;
    double epsilon = 1.0;
    TrainSchedule schedule;
    std::vector<TraceEntry> trace;
};

}  // namespace procalign
