#include <doctest.h>

#include "procalign/error.hpp"
#include "procalign/synth.hpp"

using namespace procalign;

namespace {

bool references_valid(const SynthCorpus& c)
{
    for (const auto& ref : c.references) {
        const Recipe* s = nullptr;
        const Recipe* t = nullptr;
        for (const auto& r : c.recipes) {
            if (r.recipe_id == ref.source_id) s = &r;
            if (r.recipe_id == ref.target_id) t = &r;
        }
        if (!s || !t || ref.size() != s->size()) return false;
        for (const auto& set : ref.annotators.front())
            for (int l : set)
                if (l < 0 || std::size_t(l) >= t->size()) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("synth: no perturbation gives identity ground truth")
{
    SynthConfig c;
    c.text_recipes = 3;
    c.reorder_window = 0;
    c.swap_rate = 0;
    c.split_rate = 0;
    auto corpus = synth_dish(c, 5);
    REQUIRE(corpus.recipes.size() == 3);
    REQUIRE(corpus.references.size() == 6);
    std::vector<std::vector<int>> identity;
    for (int k = 0; k < c.latent_steps; ++k) identity.push_back({k});
    for (const auto& ref : corpus.references) CHECK(ref.annotators.front() == identity);
    CHECK(corpus.recipes[0].ingredients == corpus.recipes[1].ingredients);
}

TEST_CASE("synth: splitting every step gives two-to-one labels")
{
    SynthConfig c;
    c.text_recipes = 2;
    c.reorder_window = 0;
    c.split_rate = 1.0;
    auto corpus = synth_dish(c, 8);
    CHECK(corpus.recipes[0].size() == std::size_t(2 * c.latent_steps));
    const auto& labels = corpus.references.front().annotators.front();
    for (std::size_t m = 0; m < labels.size(); ++m) CHECK(labels[m] == std::vector<int>{int(m / 2) * 2});
}

TEST_CASE("synth: deterministic and well-formed")
{
    SynthConfig c;
    c.dishes = 3;
    c.text_recipes = 4;
    c.video_recipes = 2;
    c.chat_rate = 0.3;
    c.merge_rate = 0.1;
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        auto a = synth_corpus(c, seed);
        auto b = synth_corpus(c, seed);
        REQUIRE(a.recipes.size() == 18);
        CHECK(a.references.size() == 3 * 6 * 5);
        for (std::size_t k = 0; k < a.recipes.size(); ++k) {
            CHECK(recipe_to_json(a.recipes[k]) == recipe_to_json(b.recipes[k]));
            CHECK_NOTHROW(validate(a.recipes[k]));
        }
        CHECK(references_valid(a));
        // every latent step shows up in every recipe
        for (const auto& latent : a.latent) {
            std::vector<int> seen(std::size_t(c.latent_steps), 0);
            for (const auto& cover : latent)
                for (int s : cover) seen[std::size_t(s)] = 1;
            CHECK(std::count(seen.begin(), seen.end(), 1) == c.latent_steps);
        }
    }
    CHECK(recipe_to_json(synth_corpus(c, 1).recipes[0]) != recipe_to_json(synth_corpus(c, 2).recipes[0]));
}

TEST_CASE("synth: reordering stays within the window")
{
    SynthConfig c;
    c.text_recipes = 10;
    c.split_rate = 0;
    c.reorder_rate = 0.8;
    for (int w : {1, 2, 3}) {
        c.reorder_window = w;
        auto corpus = synth_dish(c, 21);
        for (const auto& latent : corpus.latent)
            for (std::size_t k = 0; k < latent.size(); ++k) CHECK(std::abs(latent[k][0] - int(k)) <= w);
    }
}

TEST_CASE("synth: invalid settings")
{
    SynthConfig c;
    c.swap_rate = 1.5;
    CHECK_THROWS_AS(synth_dish(c, 1), InvalidConfig);
    c = SynthConfig{};
    c.detail_words = c.detail_pool + 1;
    CHECK_THROWS_AS(synth_dish(c, 1), InvalidConfig);
    c = SynthConfig{};
    c.latent_steps = 0;
    CHECK_THROWS_AS(synth_dish(c, 1), InvalidConfig);
}
