#pragma once

#include <cstdint>
#include <vector>

#include "procalign/evaluation.hpp"
#include "procalign/recipe.hpp"
#include "procalign/text.hpp"

namespace procalign {

/// Controls the synthetic corpus generator. Every recipe of a dish renders the
/// same latent step sequence with seeded perturbations.
struct SynthConfig {
    int dishes = 1;
    int text_recipes = 6;
    int video_recipes = 0;
    int latent_steps = 8;
    /// Surface forms per concept word (1 = no synonyms).
    int synonyms = 3;
    /// Probability that a concept word is rendered by a non-canonical synonym.
    double swap_rate = 0.3;
    /// Largest distance a reordered step moves; 0 keeps the latent order.
    int reorder_window = 2;
    /// Probability that a step is moved.
    double reorder_rate = 0.15;
    /// Probability that a step is rendered as two instructions.
    double split_rate = 0.1;
    /// Probability that a step is merged into the following one.
    double merge_rate = 0.0;
    /// Probability of a chat sentence after each video instruction.
    double chat_rate = 0.0;
    /// Concept pools shared by every dish of a seed. Each step draws one verb,
    /// two distinct nouns and `detail_words` distinct detail concepts (tagged
    /// "other" in the lexicon) from them.
    int verb_pool = 4;
    int noun_pool = 12;
    int detail_pool = 16;
    int detail_words = 2;

    void validate() const;  // throws InvalidConfig
};

struct SynthCorpus {
    std::vector<Recipe> recipes;
    /// Latent steps covered by each instruction, per recipe (same order as recipes).
    std::vector<std::vector<std::vector<int>>> latent;
    /// Ground truth for every ordered within-dish pair.
    std::vector<ReferenceAlignment> references;
    PosLexicon lexicon;
};

/// One dish; `dish_index` names the dish and varies its vocabulary.
SynthCorpus synth_dish(const SynthConfig& config, std::uint64_t seed, int dish_index = 0);

/// config.dishes dishes from one seed.
SynthCorpus synth_corpus(const SynthConfig& config, std::uint64_t seed);

/// Ground-truth labels of `source` against `target`: each source instruction
/// maps to the first target instruction covering its first latent step.
std::vector<int> ground_truth_labels(const std::vector<std::vector<int>>& source_latent,
                                     const std::vector<std::vector<int>>& target_latent);

}  // namespace procalign
