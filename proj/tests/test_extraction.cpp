#include <doctest.h>

#include <set>

#include "procalign/error.hpp"
#include "procalign/extraction.hpp"
#include "procalign/io_util.hpp"
#include "procalign/random.hpp"

using namespace procalign;

namespace {

PairwiseAlignment align(std::vector<int> labels, std::vector<double> post, std::size_t target_size = 3,
                        PairKind kind = PairKind::TextText)
{
    PairwiseAlignment a;
    a.dish_id = "d";
    a.source_id = "S";
    a.target_id = "T";
    a.kind = kind;
    a.target_size = target_size;
    a.labels = std::move(labels);
    a.posteriors = std::move(post);
    return a;
}

}  // namespace

TEST_CASE("paraphrases: threshold filter")
{
    std::vector<PairwiseAlignment> as{align({0, 1}, {0.9, 0.3})};
    auto recs = extract_paraphrases(as);
    REQUIRE(recs.size() == 1);
    CHECK(recs[0].a == NodeRef{"S", 0});
    CHECK(recs[0].b == NodeRef{"T", 0});
    CHECK(extract_paraphrases(as, 0.0).size() == 2);

    // 7 instructions, 4 above 0.5
    std::vector<PairwiseAlignment> mixed{align({0, 1, 2}, {0.51, 0.5, 0.99}),
                                         align({2, 2, 1, 0}, {0.7, 0.2, 0.8, 0.05})};
    CHECK(extract_paraphrases(mixed).size() == 4);
    CHECK(extracted_fraction(mixed, 0.5) == doctest::Approx(4.0 / 7));
}

TEST_CASE("paraphrases: higher thresholds keep a subset")
{
    Rng rng(14);
    std::vector<PairwiseAlignment> as;
    for (int k = 0; k < 10; ++k) {
        std::vector<int> l;
        std::vector<double> p;
        for (int m = 0; m < 6; ++m) {
            l.push_back(int(uniform_index(rng, 3)));
            p.push_back(uniform01(rng));
        }
        as.push_back(align(l, p));
    }
    auto key = [](const ParaphraseRecord& r) { return std::make_tuple(r.a, r.b, r.probability); };
    double prev_fraction = 2.0;
    for (double t = 0.1; t < 0.95; t += 0.1) {
        auto lower = extract_paraphrases(as, t);
        auto higher = extract_paraphrases(as, t + 0.1);
        std::set<decltype(key(lower[0]))> keys;
        for (const auto& r : lower) keys.insert(key(r));
        for (const auto& r : higher) CHECK(keys.count(key(r)) == 1);
        const double f = extracted_fraction(as, t);
        CHECK(f <= prev_fraction);
        prev_fraction = f;
    }
}

TEST_CASE("breakdowns: grouping rule")
{
    std::vector<PairwiseAlignment> as{align({2, 2, 0}, {0.95, 0.92, 0.99})};
    auto b = extract_step_breakdowns(as);
    REQUIRE(b.size() == 1);
    CHECK(b[0].single == NodeRef{"T", 2});
    CHECK(b[0].multi == std::vector<NodeRef>{{"S", 0}, {"S", 1}});
    CHECK(b[0].probabilities == std::vector<double>{0.95, 0.92});

    CHECK(extract_step_breakdowns(std::vector<PairwiseAlignment>{align({0, 1, 2}, {1, 1, 1})}).empty());
    CHECK(extract_step_breakdowns(std::vector<PairwiseAlignment>{align({1, 1}, {0.95, 0.85})}).empty());
    CHECK(extract_step_breakdowns(
              std::vector<PairwiseAlignment>{align({2, 2}, {0.95, 0.95}, 3, PairKind::TextVideo)})
              .empty());
}

TEST_CASE("breakdowns: every record meets the threshold on one shared target")
{
    Rng rng(15);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<int> l;
        std::vector<double> p;
        for (int m = 0; m < 8; ++m) {
            l.push_back(int(uniform_index(rng, 3)));
            p.push_back(0.8 + 0.2 * uniform01(rng));
        }
        std::vector<PairwiseAlignment> as{align(l, p)};
        for (const auto& b : extract_step_breakdowns(as)) {
            CHECK(b.multi.size() >= 2);
            for (std::size_t k = 0; k < b.multi.size(); ++k) {
                CHECK(l[std::size_t(b.multi[k].index)] == b.single.index);
                CHECK(b.probabilities[k] > 0.9);
            }
        }
    }
}

TEST_CASE("trade-off curve")
{
    std::vector<PairwiseAlignment> as{align({0, 1, 1}, {0.9, 0.6, 0.3})};
    std::vector<std::vector<int>> refs{{0, 1, 0}};
    auto curve = tradeoff_curve(as, refs, {0.5, 0.0, 1.0});
    REQUIRE(curve.size() == 3);
    CHECK(curve[0].threshold == 0.0);
    CHECK(curve[0].extracted_fraction == 1.0);
    REQUIRE(curve[0].score.has_value());
    CHECK(curve[0].score->f1 == doctest::Approx(weighted_prf(as[0].labels, refs[0]).f1));
    CHECK(curve[1].extracted_fraction == doctest::Approx(2.0 / 3));
    CHECK(curve[1].score->f1 == 1.0);
    CHECK(curve[2].extracted_fraction == 0.0);
    CHECK(!curve[2].score.has_value());
    std::vector<std::vector<int>> wrong{{0, 1}};
    CHECK_THROWS_AS(tradeoff_curve(as, wrong, {0.5}), LengthMismatch);
}

TEST_CASE("records render with instruction text")
{
    Recipe s, t;
    s.recipe_id = "S";
    t.recipe_id = "T";
    s.instructions = {{0, "Chop the onion.", {}, {}}, {1, "Dice it finely.", {}, {}}};
    t.instructions = {{0, "Cut onion.", {}, {}}, {1, "x", {}, {}}, {2, "Mince onion.", {}, {}}};
    std::vector<Recipe> recipes{s, t};
    RecipeIndex index(recipes);
    std::vector<PairwiseAlignment> as{align({2, 2}, {0.95, 0.93})};
    auto p = paraphrase_to_json(extract_paraphrases(as)[0], index);
    CHECK(p["a"]["text"] == "Chop the onion.");
    CHECK(p["b"]["text"] == "Mince onion.");
    CHECK(p["kind"] == "text-text");
    auto b = breakdown_to_json(extract_step_breakdowns(as)[0], index);
    CHECK(b["single"]["text"] == "Mince onion.");
    CHECK(b["multi"].size() == 2);
}
