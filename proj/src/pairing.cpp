#include "procalign/pairing.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include "procalign/error.hpp"

namespace procalign {

namespace {

bool all_digits(const std::string& s)
{
    return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

void add_content_tokens(IngredientSet& out, std::string_view text, const StopWords& stop_words)
{
    for (auto& w : split_words(text)) {
        if (!all_digits(w) && stop_words.count(w) == 0) {
            out.insert(std::move(w));
        }
    }
}

double threshold_for(PairKind kind, const PruneConfig& config)
{
    switch (kind) {
    case PairKind::TextText: return config.text_text_ingredient;
    case PairKind::TextVideo: return config.text_video_ingredient;
    case PairKind::VideoVideo: return config.video_video_ingredient;
    }
    return 1.0;
}

}  // namespace

const char* to_string(PairKind k)
{
    switch (k) {
    case PairKind::TextText: return "text-text";
    case PairKind::TextVideo: return "text-video";
    case PairKind::VideoVideo: return "video-video";
    }
    return "text-text";
}

PairKind pair_kind_from_string(std::string_view s)
{
    if (s == "text-text") {
        return PairKind::TextText;
    }
    if (s == "text-video") {
        return PairKind::TextVideo;
    }
    if (s == "video-video") {
        return PairKind::VideoVideo;
    }
    throw InvalidArgument("unknown pair kind '" + std::string(s) + "'");
}

nlohmann::json pair_to_json(const RecipePair& p)
{
    nlohmann::json j{{"dish_id", p.dish_id},
                     {"source_id", p.source_id},
                     {"target_id", p.target_id},
                     {"kind", to_string(p.kind)},
                     {"ingredient_match", p.ingredient_match}};
    if (p.no_ingredient_evidence) {
        j["no_ingredient_evidence"] = true;
    }
    return j;
}

RecipePair pair_from_json(const nlohmann::json& j)
{
    RecipePair p;
    p.dish_id = j.at("dish_id").get<std::string>();
    p.source_id = j.at("source_id").get<std::string>();
    p.target_id = j.at("target_id").get<std::string>();
    p.kind = pair_kind_from_string(j.at("kind").get<std::string>());
    p.ingredient_match = j.value("ingredient_match", 1.0);
    p.no_ingredient_evidence = j.value("no_ingredient_evidence", false);
    return p;
}

IngredientSet ingredient_tokens(const Recipe& text_recipe, const StopWords& stop_words)
{
    IngredientSet out;
    for (const auto& line : text_recipe.ingredients) {
        add_content_tokens(out, line, stop_words);
    }
    return out;
}

IngredientSet dish_ingredient_set(const std::vector<Recipe>& dish, const StopWords& stop_words)
{
    IngredientSet out;
    for (const auto& r : dish) {
        if (r.modality == Modality::Text) {
            auto tokens = ingredient_tokens(r, stop_words);
            out.insert(tokens.begin(), tokens.end());
        }
    }
    return out;
}

IngredientSet estimate_video_ingredients(const Recipe& video, const IngredientSet& dish_set,
                                         const StopWords& stop_words)
{
    if (video.modality != Modality::Video) {
        throw InvalidArgument("recipe '" + video.recipe_id + "' is not a video recipe");
    }
    IngredientSet transcript;
    for (const auto& ins : video.instructions) {
        if (ins.chat_label && *ins.chat_label == ChatLabel::Chat) {
            continue;
        }
        add_content_tokens(transcript, ins.text, stop_words);
    }
    IngredientSet out;
    std::set_intersection(transcript.begin(), transcript.end(), dish_set.begin(), dish_set.end(),
                          std::inserter(out, out.end()));
    return out;
}

double ingredient_match_ratio(const IngredientSet& a, const IngredientSet& b)
{
    if (a.empty() && b.empty()) {
        return 1.0;
    }
    std::size_t common = 0;
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
        if (*ia < *ib) {
            ++ia;
        } else if (*ib < *ia) {
            ++ib;
        } else {
            ++common;
            ++ia;
            ++ib;
        }
    }
    return static_cast<double>(common) / static_cast<double>(std::max(a.size(), b.size()));
}

std::vector<RecipePair> generate_pairs(const std::vector<Recipe>& dish, const PruneConfig& config,
                                       const StopWords& stop_words)
{
    std::vector<RecipePair> out;
    if (dish.empty()) {
        return out;
    }
    const std::string& dish_id = dish.front().dish_id;
    for (const auto& r : dish) {
        if (r.dish_id != dish_id) {
            throw MixedDish("recipes from dishes '" + dish_id + "' and '" + r.dish_id + "'");
        }
    }

    std::vector<const Recipe*> texts;
    std::vector<const Recipe*> videos;
    for (const auto& r : dish) {
        if (r.modality == Modality::Text) {
            texts.push_back(&r);
        } else if (r.content_count() <= config.max_video_sentences) {
            videos.push_back(&r);
        }
    }
    auto by_id = [](const Recipe* a, const Recipe* b) { return a->recipe_id < b->recipe_id; };
    std::sort(texts.begin(), texts.end(), by_id);
    std::sort(videos.begin(), videos.end(), by_id);

    IngredientSet dish_set = dish_ingredient_set(dish, stop_words);
    std::map<std::string, IngredientSet> ingredients;
    for (const auto* r : texts) {
        ingredients[r->recipe_id] = ingredient_tokens(*r, stop_words);
    }
    for (const auto* r : videos) {
        ingredients[r->recipe_id] = estimate_video_ingredients(*r, dish_set, stop_words);
    }

    auto consider = [&](const Recipe& src, const Recipe& tgt, PairKind kind) {
        if (src.recipe_id == tgt.recipe_id) {
            return;
        }
        const auto& a = ingredients[src.recipe_id];
        const auto& b = ingredients[tgt.recipe_id];
        double match = ingredient_match_ratio(a, b);
        if (match < threshold_for(kind, config)) {
            return;
        }
        if (kind == PairKind::TextText) {
            auto lo = static_cast<double>(std::min(src.size(), tgt.size()));
            auto hi = static_cast<double>(std::max(src.size(), tgt.size()));
            if (hi > config.length_ratio * lo) {
                return;
            }
        }
        RecipePair p;
        p.dish_id = dish_id;
        p.source_id = src.recipe_id;
        p.target_id = tgt.recipe_id;
        p.kind = kind;
        p.ingredient_match = match;
        p.no_ingredient_evidence = a.empty() && b.empty();
        out.push_back(std::move(p));
    };

    for (std::size_t i = 0; i < texts.size(); ++i) {
        for (std::size_t k = i + 1; k < texts.size(); ++k) {
            consider(*texts[i], *texts[k], PairKind::TextText);
        }
    }
    for (const auto* t : texts) {
        for (const auto* v : videos) {
            consider(*t, *v, PairKind::TextVideo);
        }
    }
    for (std::size_t i = 0; i < videos.size(); ++i) {
        for (std::size_t k = i + 1; k < videos.size(); ++k) {
            consider(*videos[i], *videos[k], PairKind::VideoVideo);
        }
    }
    return out;
}

std::vector<std::vector<Recipe>> group_by_dish(const std::vector<Recipe>& recipes)
{
    std::vector<std::vector<Recipe>> groups;
    std::map<std::string, std::size_t> slot;
    for (const auto& r : recipes) {
        auto [it, inserted] = slot.emplace(r.dish_id, groups.size());
        if (inserted) {
            groups.emplace_back();
        }
        groups[it->second].push_back(r);
    }
    return groups;
}

}  // namespace procalign
