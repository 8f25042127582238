#pragma once

#include <algorithm>
#include <limits>
#include <vector>

#include "procalign/alignment_model.hpp"

namespace procalign::detail {

inline constexpr std::size_t kNoEntry = std::numeric_limits<std::size_t>::max();

/// Dense copy of the lexical entries touched by one recipe pair. Sentences
/// are re-expressed as local word indices so the inner loops avoid lookups.
struct LocalTable {
    std::vector<WordId> target_words;  // sorted distinct
    std::vector<WordId> source_words;  // sorted distinct
    std::vector<double> prob;          // target-major
    std::vector<std::size_t> entry;    // global table position or kNoEntry
    std::vector<std::vector<std::size_t>> source;
    std::vector<std::vector<std::size_t>> target;

    std::size_t width() const { return source_words.size(); }
    double p(std::size_t e, std::size_t f) const { return prob[e * width() + f]; }
};

inline std::vector<WordId> distinct_words(const std::vector<Sentence>& sentences)
{
    std::vector<WordId> words;
    for (const auto& s : sentences) {
        words.insert(words.end(), s.begin(), s.end());
    }
    std::sort(words.begin(), words.end());
    words.erase(std::unique(words.begin(), words.end()), words.end());
    return words;
}

inline std::vector<std::vector<std::size_t>> localize(const std::vector<Sentence>& sentences,
                                                      const std::vector<WordId>& words)
{
    std::vector<std::vector<std::size_t>> out(sentences.size());
    for (std::size_t k = 0; k < sentences.size(); ++k) {
        out[k].reserve(sentences[k].size());
        for (WordId w : sentences[k]) {
            out[k].push_back(static_cast<std::size_t>(
                std::lower_bound(words.begin(), words.end(), w) - words.begin()));
        }
    }
    return out;
}

inline LocalTable make_local_table(const EncodedPair& pair, const LexicalTable& lexical)
{
    LocalTable t;
    t.target_words = distinct_words(pair.target);
    t.source_words = distinct_words(pair.source);
    t.prob.assign(t.target_words.size() * t.source_words.size(), kLexicalFloor);
    t.entry.assign(t.prob.size(), kNoEntry);
    auto all_probs = lexical.probs();
    for (std::size_t e = 0; e < t.target_words.size(); ++e) {
        auto cols = lexical.row_cols(t.target_words[e]);
        if (cols.empty()) {
            continue;
        }
        const std::size_t base = lexical.row_offset(t.target_words[e]);
        // Merge the sorted row with the sorted local source words.
        std::size_t k = 0;
        for (std::size_t f = 0; f < t.source_words.size(); ++f) {
            while (k < cols.size() && cols[k] < t.source_words[f]) {
                ++k;
            }
            if (k < cols.size() && cols[k] == t.source_words[f]) {
                t.prob[e * t.width() + f] = all_probs[base + k];
                t.entry[e * t.width() + f] = base + k;
            }
        }
    }
    t.source = localize(pair.source, t.source_words);
    t.target = localize(pair.target, t.target_words);
    return t;
}

}  // namespace procalign::detail
