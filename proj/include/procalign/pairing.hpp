#pragma once

#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "procalign/recipe.hpp"
#include "procalign/text.hpp"

namespace procalign {

enum class PairKind { TextText, TextVideo, VideoVideo };

const char* to_string(PairKind k);
PairKind pair_kind_from_string(std::string_view s);

using IngredientSet = std::set<std::string>;

struct PruneConfig {
    double text_text_ingredient = 0.70;
    double text_video_ingredient = 0.70;
    double video_video_ingredient = 0.90;
    double length_ratio = 2.0;
    std::size_t max_video_sentences = 100;
};

struct RecipePair {
    std::string dish_id;
    std::string source_id;
    std::string target_id;
    PairKind kind = PairKind::TextText;
    double ingredient_match = 0.0;
    /// Both ingredient sets were empty; the ratio defaulted to 1.
    bool no_ingredient_evidence = false;
};

nlohmann::json pair_to_json(const RecipePair& p);
RecipePair pair_from_json(const nlohmann::json& j);

/// Content tokens of a recipe's ingredient lines ("soy sauce" -> {soy, sauce}).
IngredientSet ingredient_tokens(const Recipe& text_recipe, const StopWords& stop_words);

/// Union of ingredient tokens over the dish's text recipes.
IngredientSet dish_ingredient_set(const std::vector<Recipe>& dish, const StopWords& stop_words);

/// Transcript tokens of a video recipe that also occur in the dish set.
IngredientSet estimate_video_ingredients(const Recipe& video, const IngredientSet& dish_set,
                                         const StopWords& stop_words);

/// |a ∩ b| / max(|a|, |b|), or 1 when both are empty.
double ingredient_match_ratio(const IngredientSet& a, const IngredientSet& b);

/// All within-dish pairs surviving the ingredient, length and transcript
/// size pruning rules. Text-text and video-video pairs are emitted once with
/// the smaller recipe_id as source; text-video pairs keep the text recipe as
/// source.
std::vector<RecipePair> generate_pairs(const std::vector<Recipe>& dish, const PruneConfig& config,
                                       const StopWords& stop_words);

/// Groups recipes by dish_id, in order of first appearance.
std::vector<std::vector<Recipe>> group_by_dish(const std::vector<Recipe>& recipes);

}  // namespace procalign
