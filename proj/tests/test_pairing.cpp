#include <doctest.h>

#include "procalign/error.hpp"
#include "procalign/io_util.hpp"
#include "procalign/pairing.hpp"
#include "procalign/pipeline.hpp"
#include "procalign/random.hpp"

using namespace procalign;

namespace {

Recipe text(std::string id, std::vector<std::string> ingredients, std::size_t steps)
{
    Recipe r;
    r.recipe_id = std::move(id);
    r.dish_id = "rice";
    r.ingredients = std::move(ingredients);
    for (std::size_t k = 0; k < steps; ++k) r.instructions.push_back({int(k), "step " + std::to_string(k), {}, {}});
    return r;
}

Recipe video(std::string id, std::vector<std::string> lines)
{
    Recipe r;
    r.recipe_id = std::move(id);
    r.dish_id = "rice";
    r.modality = Modality::Video;
    for (std::size_t k = 0; k < lines.size(); ++k)
        r.instructions.push_back({int(k), lines[k], TimeSpan{double(k), double(k) + 1}, ChatLabel::Content});
    return r;
}

}  // namespace

TEST_CASE("ingredients: match ratio")
{
    CHECK(ingredient_match_ratio({"x", "y"}, {"x", "y"}) == 1.0);
    CHECK(ingredient_match_ratio({"x"}, {"y"}) == 0.0);
    CHECK(ingredient_match_ratio({"x", "y", "z"}, {"x", "y", "w", "v"}) == 0.5);
    CHECK(ingredient_match_ratio({}, {}) == 1.0);

    Rng rng(3);
    const char* words[] = {"a", "b", "c", "d", "e", "f"};
    for (int trial = 0; trial < 100; ++trial) {
        IngredientSet a, b;
        for (int k = 0; k < 4; ++k) {
            if (bernoulli(rng, 0.5)) a.insert(words[uniform_index(rng, 6)]);
            if (bernoulli(rng, 0.5)) b.insert(words[uniform_index(rng, 6)]);
        }
        const double r = ingredient_match_ratio(a, b);
        CHECK(r == ingredient_match_ratio(b, a));
        CHECK((r >= 0.0 && r <= 1.0));
    }
}

TEST_CASE("ingredients: tokens and video estimate")
{
    auto t = text("t", {"Soy sauce", "2 eggs", "rice"}, 2);
    t.ingredients = {"soy sauce", "2 eggs", "rice"};
    CHECK(ingredient_tokens(t, default_stop_words()) == IngredientSet{"eggs", "rice", "sauce", "soy"});

    auto v = video("v", {"first wash the rice and crack an egg", "heat the wok"});
    CHECK(estimate_video_ingredients(v, {"rice", "egg", "shrimp"}, default_stop_words()) ==
          IngredientSet{"egg", "rice"});
    CHECK(estimate_video_ingredients(v, {}, default_stop_words()).empty());
    CHECK(estimate_video_ingredients(v, {"rice", "wok"}, default_stop_words()) == IngredientSet{"rice", "wok"});
}

TEST_CASE("pairs: three compatible text recipes")
{
    std::vector<Recipe> dish{text("a", {"rice", "egg"}, 4), text("b", {"rice", "egg"}, 5),
                             text("c", {"rice", "egg"}, 6)};
    auto pairs = generate_pairs(dish, PruneConfig{}, default_stop_words());
    REQUIRE(pairs.size() == 3);
    for (const auto& p : pairs) {
        CHECK(p.kind == PairKind::TextText);
        CHECK(p.source_id < p.target_id);
        CHECK(p.ingredient_match == 1.0);
    }
    CHECK(directed_pairs(pairs).size() == 6);
    CHECK(generate_pairs({dish[0]}, PruneConfig{}, default_stop_words()).empty());
}

TEST_CASE("pairs: length, ingredient and transcript pruning")
{
    std::vector<Recipe> lengths{text("a", {"rice"}, 4), text("b", {"rice"}, 9)};
    CHECK(generate_pairs(lengths, PruneConfig{}, default_stop_words()).empty());
    std::vector<Recipe> edge{text("a", {"rice"}, 4), text("b", {"rice"}, 8)};
    CHECK(generate_pairs(edge, PruneConfig{}, default_stop_words()).size() == 1);

    std::vector<Recipe> mismatch{text("a", {"rice", "egg", "pea"}, 4), text("b", {"rice", "ham", "leek"}, 4)};
    CHECK(generate_pairs(mismatch, PruneConfig{}, default_stop_words()).empty());

    std::vector<std::string> long_transcript(101, "cook the rice");
    std::vector<Recipe> with_video{text("a", {"rice"}, 3), video("v", long_transcript),
                                   video("w", {"cook rice", "more rice"})};
    auto pairs = generate_pairs(with_video, PruneConfig{}, default_stop_words());
    REQUIRE(pairs.size() == 1);
    CHECK(pairs[0].kind == PairKind::TextVideo);
    CHECK(pairs[0].source_id == "a");
    CHECK(pairs[0].target_id == "w");
}

TEST_CASE("pairs: invariants on random dishes")
{
    Rng rng(11);
    const char* words[] = {"rice", "egg", "pea", "ham", "soy", "leek"};
    for (int trial = 0; trial < 40; ++trial) {
        std::vector<Recipe> dish;
        const std::size_t n_text = uniform_index(rng, 5), n_video = uniform_index(rng, 4);
        for (std::size_t k = 0; k < n_text; ++k) {
            std::vector<std::string> ing;
            for (int i = 0; i < 3; ++i) ing.push_back(words[uniform_index(rng, 6)]);
            dish.push_back(text("t" + std::to_string(k), ing, 2 + uniform_index(rng, 8)));
        }
        for (std::size_t k = 0; k < n_video; ++k) {
            std::vector<std::string> lines;
            for (int i = 0; i < 4; ++i) lines.push_back(std::string("add ") + words[uniform_index(rng, 6)]);
            dish.push_back(video("v" + std::to_string(k), lines));
        }
        PruneConfig config;
        auto pairs = generate_pairs(dish, config, default_stop_words());
        CHECK(pairs.size() <= n_text * (n_text - (n_text ? 1 : 0)) / 2 + n_text * n_video +
                                  n_video * (n_video - (n_video ? 1 : 0)) / 2);
        RecipeIndex index(dish);
        for (const auto& p : pairs) {
            CHECK(p.source_id != p.target_id);
            const auto& s = index.at(p.source_id);
            const auto& t = index.at(p.target_id);
            if (p.kind == PairKind::TextVideo) {
                CHECK(s.modality == Modality::Text);
                CHECK(t.modality == Modality::Video);
            } else {
                CHECK(s.modality == t.modality);
            }
            const double th = p.kind == PairKind::VideoVideo ? config.video_video_ingredient
                                                             : config.text_text_ingredient;
            CHECK(p.ingredient_match >= th);
            auto back = pair_from_json(pair_to_json(p));
            CHECK(back.source_id == p.source_id);
            CHECK(back.kind == p.kind);
        }
    }
}
