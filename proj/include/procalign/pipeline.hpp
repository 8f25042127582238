#pragma once

#include <span>
#include <vector>

#include "procalign/alignment_model.hpp"
#include "procalign/pairing.hpp"
#include "procalign/pairwise_alignment.hpp"
#include "procalign/recipe.hpp"
#include "procalign/text.hpp"

namespace procalign {

class RecipeIndex;

/// How recipe text becomes token sequences for the aligner.
struct TokenizerSettings {
    StopWords stop_words = default_stop_words();
    TokenMode mode = TokenMode::AllWords;
    const PosLexicon* lexicon = nullptr;
};

std::vector<TokenSequence> tokenize_recipe(const Recipe& recipe, const TokenizerSettings& settings);

/// Directed (source, target) recipe ids to align. Text-text and video-video
/// pairs yield both directions when `both_directions` is set.
struct DirectedPair {
    std::string dish_id;
    std::string source_id;
    std::string target_id;
    PairKind kind = PairKind::TextText;
};

std::vector<DirectedPair> directed_pairs(std::span<const RecipePair> pairs, bool both_directions = true);

struct MinCounts {
    int text = 5;
    int video = 15;
};

/// Encoded training pairs plus the vocabularies they were encoded with.
/// Text-text and video-video corpora share a single vocabulary on both sides.
struct TrainingCorpus {
    std::vector<EncodedPair> pairs;
    Vocabulary source_vocab;
    Vocabulary target_vocab;
};

/// Only pairs of `kind` are used. Vocabularies count each participating
/// recipe once.
TrainingCorpus prepare_training_corpus(std::span<const DirectedPair> pairs, PairKind kind,
                                       const RecipeIndex& recipes,
                                       const TokenizerSettings& settings, MinCounts min_counts);

EncodedPair encode_pair(const Recipe& source, const Recipe& target, const Vocabulary& source_vocab,
                        const Vocabulary& target_vocab, const TokenizerSettings& settings);

/// Decodes every pair with the model. Pairs are independent and processed
/// in parallel; output order follows input order.
std::vector<PairwiseAlignment> align_pairs(std::span<const DirectedPair> pairs,
                                           const RecipeIndex& recipes, const AlignmentModel& model,
                                           const TokenizerSettings& settings,
                                           bool keep_rows = false);

}  // namespace procalign
