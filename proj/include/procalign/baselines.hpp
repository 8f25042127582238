#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace procalign {

using Words = std::vector<std::string>;

/// Index of the largest value; ties go to the smallest index.
std::size_t argmax_first(std::span<const double> values);

std::vector<int> random_align(std::size_t sources, std::size_t targets, std::uint64_t seed);

/// label(i) = floor(N * i / M), clamped to N - 1.
std::vector<int> uniform_align(std::size_t sources, std::size_t targets);

struct Bm25Params {
    double k1 = 1.2;
    double b = 0.75;
};

/// Scores of one query against every document. idf(t) = ln(1 + (D - df + 0.5) / (df + 0.5));
/// every query token occurrence contributes.
std::vector<double> bm25_scores(const Words& query, std::span<const Words> documents,
                                Bm25Params params = {});

std::vector<int> bm25_align(std::span<const Words> source, std::span<const Words> target,
                            Bm25Params params = {});

/// Distinct shared words over the token length of the longer sequence.
double exact_match_score(const Words& a, const Words& b);
std::vector<int> exact_match_align(std::span<const Words> source, std::span<const Words> target);

/// TF = raw count, IDF = ln((1 + D) / (1 + df)) + 1, rows L2-normalized.
class TfidfVectorizer {
  public:
    using SparseVector = std::vector<std::pair<std::size_t, double>>;  // sorted by term

    void fit(std::span<const Words> documents);
    bool fitted() const { return fitted_; }
    std::size_t documents() const { return documents_; }

    std::optional<double> idf(const std::string& term) const;
    /// Out-of-vocabulary terms are ignored. Throws UnfittedVectorizer.
    SparseVector transform(const Words& doc) const;

    static double cosine(const SparseVector& a, const SparseVector& b);

  private:
    bool fitted_ = false;
    std::size_t documents_ = 0;
    std::unordered_map<std::string, std::size_t> terms_;
    std::vector<double> idf_;
};

std::vector<int> tfidf_align(std::span<const Words> source, std::span<const Words> target,
                             const TfidfVectorizer& vectorizer);

class VectorTable {
  public:
    std::size_t dimension() const { return dimension_; }
    std::size_t size() const { return vectors_.size(); }

    /// Throws InvalidArgument on a dimension mismatch or duplicate key.
    void add(const std::string& key, std::vector<double> vector);
    const std::vector<double>* find(const std::string& key) const;
    void scale(double factor);

    /// "word v1 ... vd" lines.
    static VectorTable load_word_vectors(const std::filesystem::path& path);
    /// JSON-lines {key, vector}.
    static VectorTable load_sentence_vectors(const std::filesystem::path& path);

  private:
    std::size_t dimension_ = 0;
    std::unordered_map<std::string, std::vector<double>> vectors_;
};

enum class EmbeddingMode { WordAverage, Sentence };

/// One instruction as seen by the embedding baselines: its noun and verb
/// tokens (WordAverage) or its sentence key "<recipe_id>#<index>" (Sentence).
struct EmbeddingItem {
    Words tokens;
    std::string key;
};

double cosine(std::span<const double> a, std::span<const double> b);

/// Throws MissingSentenceKey in Sentence mode for an absent key.
std::vector<int> embedding_align(std::span<const EmbeddingItem> source,
                                 std::span<const EmbeddingItem> target, const VectorTable& table,
                                 EmbeddingMode mode);

}  // namespace procalign
