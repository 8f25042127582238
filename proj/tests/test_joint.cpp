#include <doctest.h>

#include <set>

#include "oracles.hpp"
#include "procalign/error.hpp"
#include "procalign/io_util.hpp"
#include "procalign/joint.hpp"

using namespace procalign;

namespace {

PairwiseAlignment align(std::string src, std::string tgt, std::size_t target_size, std::vector<int> labels,
                        std::vector<double> post)
{
    PairwiseAlignment a;
    a.dish_id = "d";
    a.source_id = std::move(src);
    a.target_id = std::move(tgt);
    a.target_size = target_size;
    a.labels = std::move(labels);
    a.posteriors = std::move(post);
    return a;
}

DishGraph graph_of(std::size_t nodes, std::vector<UndirectedEdge> edges)
{
    DishGraph g;
    for (std::size_t k = 0; k < nodes; ++k) g.nodes.push_back({"r" + std::to_string(k), 0});
    g.undirected = std::move(edges);
    return g;
}

JointForest forest_of(std::vector<NodeRef> nodes, std::vector<UndirectedEdge> edges)
{
    JointForest f;
    f.nodes = std::move(nodes);
    f.tree_edges = std::move(edges);
    return f;
}

}  // namespace

TEST_CASE("dish graph: threshold keeps only confident instructions")
{
    std::vector<PairwiseAlignment> a{align("A", "B", 2, {0, 1}, {0.9, 0.4})};
    auto g = build_dish_graph(a);
    CHECK(g.nodes.size() == 4);
    REQUIRE(g.directed.size() == 1);
    REQUIRE(g.undirected.size() == 1);
    CHECK(g.undirected[0].weight == 0.9);

    std::vector<PairwiseAlignment> weak{align("A", "B", 2, {0, 1}, {0.5, 0.2})};
    auto empty = build_dish_graph(weak);
    CHECK(empty.undirected.empty());
    auto forest = max_spanning_forest(empty);
    CHECK(forest.tree_edges.empty());
    CHECK(forest.nodes.size() == 4);
}

TEST_CASE("dish graph: both directions are averaged, one direction kept as is")
{
    std::vector<PairwiseAlignment> a{align("A", "B", 1, {0}, {0.8}), align("B", "A", 1, {0}, {0.6})};
    auto g = build_dish_graph(a);
    REQUIRE(g.undirected.size() == 1);
    CHECK(g.undirected[0].weight == doctest::Approx(0.7));
    std::vector<PairwiseAlignment> mixed{align("A", "B", 1, {0}, {0.8}), align("C", "B", 1, {0}, {0.9})};
    mixed[1].dish_id = "other";
    CHECK_THROWS_AS(build_dish_graph(mixed), MixedDish);
}

TEST_CASE("dish graph: swapping roles gives the same undirected graph")
{
    // With one-to-one labels every retained edge has an exact mirror.
    Rng rng(21);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<int> perm{0, 1, 2, 3};
        for (std::size_t k = 3; k > 0; --k) std::swap(perm[k], perm[uniform_index(rng, k + 1)]);
        std::vector<double> post;
        for (int k = 0; k < 4; ++k) post.push_back(uniform01(rng));
        std::vector<int> inverse(4);
        std::vector<double> inverse_post(4);
        for (int k = 0; k < 4; ++k) {
            inverse[perm[k]] = k;
            inverse_post[perm[k]] = post[k];
        }
        auto fwd = build_dish_graph(std::vector<PairwiseAlignment>{align("A", "B", 4, perm, post)});
        auto rev = build_dish_graph(std::vector<PairwiseAlignment>{align("B", "A", 4, inverse, inverse_post)});
        REQUIRE(fwd.undirected.size() == rev.undirected.size());
        for (std::size_t k = 0; k < fwd.undirected.size(); ++k) {
            CHECK(fwd.undirected[k].a == rev.undirected[k].a);
            CHECK(fwd.undirected[k].b == rev.undirected[k].b);
            CHECK(fwd.undirected[k].weight == rev.undirected[k].weight);
        }
    }
}

TEST_CASE("spanning forest: triangle drops the lightest edge")
{
    auto f = max_spanning_forest(graph_of(3, {{0, 1, 0.9}, {1, 2, 0.8}, {0, 2, 0.7}}));
    REQUIRE(f.tree_edges.size() == 2);
    CHECK(f.tree_edges[0].weight == 0.9);
    CHECK(f.tree_edges[1].weight == 0.8);
    CHECK(f.total_weight() == doctest::Approx(1.7));
}

TEST_CASE("spanning forest: trees and disjoint edges are kept")
{
    std::vector<UndirectedEdge> tree{{0, 1, 0.6}, {1, 2, 0.9}, {1, 3, 0.7}};
    auto f = max_spanning_forest(graph_of(4, tree));
    CHECK(f.tree_edges.size() == 3);
    auto two = max_spanning_forest(graph_of(4, {{0, 1, 0.6}, {2, 3, 0.9}}));
    CHECK(two.tree_edges.size() == 2);
}

TEST_CASE("spanning forest: matches brute force on random graphs")
{
    Rng rng(55);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 2 + uniform_index(rng, 6);
        std::vector<UndirectedEdge> edges;
        std::vector<oracle::Edge> plain;
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = a + 1; b < n; ++b)
                if (bernoulli(rng, 0.5)) {
                    const double w = double(129 + uniform_index(rng, 128)) / 256.0;
                    edges.push_back({a, b, w});
                    plain.push_back({a, b, w});
                }
        auto f = max_spanning_forest(graph_of(n, edges));
        CHECK(f.total_weight() == oracle::max_spanning_forest_weight(n, plain));
    }
}

TEST_CASE("dish graph: raising the threshold never adds edges, degree or one-way forest weight")
{
    // Forest weight is only monotone when no node pair is linked in both
    // directions: dropping the weaker of two directed edges raises their mean.
    Rng rng(66);
    for (int trial = 0; trial < 30; ++trial) {
        const bool one_way = trial % 2 == 0;
        std::vector<PairwiseAlignment> as;
        const char* ids[] = {"A", "B", "C", "D"};
        for (int s = 0; s < 4; ++s)
            for (int t = 0; t < 4; ++t) {
                if (s == t || (one_way && s > t)) continue;
                std::vector<int> labels;
                std::vector<double> post;
                for (int m = 0; m < 3; ++m) {
                    labels.push_back(int(uniform_index(rng, 3)));
                    post.push_back(uniform01(rng));
                }
                as.push_back(align(ids[s], ids[t], 3, labels, post));
            }
        double prev_weight = 1e300;
        std::vector<std::size_t> prev_degree(12, 1000);
        for (double th : {0.5, 0.6, 0.7, 0.8, 0.9}) {
            auto g = build_dish_graph(as, th);
            if (one_way) CHECK(max_spanning_forest(g).total_weight() <= prev_weight);
            prev_weight = max_spanning_forest(g).total_weight();
            std::vector<std::size_t> degree(g.nodes.size(), 0);
            for (const auto& e : g.undirected) ++degree[e.a], ++degree[e.b];
            for (std::size_t v = 0; v < degree.size(); ++v) CHECK(degree[v] <= prev_degree[v]);
            prev_degree = degree;
        }
    }
}

TEST_CASE("joint sets: star with a shared-recipe center")
{
    auto f = forest_of({{"A", 0}, {"B", 0}, {"C", 0}, {"D", 0}},
                       {{0, 1, 0.9}, {0, 2, 0.9}, {0, 3, 0.9}});
    auto sets = extract_joint_sets(f);
    CHECK(sets == std::vector<std::vector<std::size_t>>{{1, 0, 2}, {1, 0, 3}, {2, 0, 3}});
}

TEST_CASE("joint sets: a repeated recipe splits the path")
{
    auto f = forest_of({{"A", 0}, {"A", 1}, {"B", 0}}, {{0, 2, 0.9}, {1, 2, 0.9}});
    auto sets = extract_joint_sets(f);
    CHECK(sets == std::vector<std::vector<std::size_t>>{{0, 2}, {1, 2}});
    auto single = extract_joint_sets(forest_of({{"A", 0}, {"B", 0}}, {{0, 1, 0.7}}));
    CHECK(single == std::vector<std::vector<std::size_t>>{{0, 1}});
}

TEST_CASE("joint sets: cap raises PathExplosion")
{
    auto f = forest_of({{"A", 0}, {"B", 0}, {"C", 0}, {"D", 0}},
                       {{0, 1, 0.9}, {0, 2, 0.9}, {0, 3, 0.9}});
    CHECK_THROWS_AS(extract_joint_sets(f, 2, 2), PathExplosion);
}

TEST_CASE("joint sets: every set is a recipe-unique maximal tree path")
{
    Rng rng(88);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = 3 + uniform_index(rng, 8);
        std::vector<NodeRef> nodes;
        for (std::size_t v = 0; v < n; ++v)
            nodes.push_back({"r" + std::to_string(uniform_index(rng, 4)), int(v)});
        std::vector<UndirectedEdge> edges;
        for (std::size_t v = 1; v < n; ++v) {
            const auto parent = uniform_index(rng, v);
            edges.push_back({parent, v, 0.75});
        }
        auto f = forest_of(nodes, edges);
        std::set<std::pair<std::size_t, std::size_t>> adjacent;
        for (const auto& e : edges) adjacent.insert({e.a, e.b}), adjacent.insert({e.b, e.a});
        for (const auto& set : extract_joint_sets(f)) {
            CHECK(set.size() >= 2);
            std::set<std::string> recipes;
            for (std::size_t k = 0; k < set.size(); ++k) {
                recipes.insert(nodes[set[k]].recipe_id);
                if (k) CHECK(adjacent.count({set[k - 1], set[k]}) == 1);
            }
            CHECK(recipes.size() == set.size());
            CHECK(set.front() <= set.back());
        }
    }
}

TEST_CASE("forest rendering: JSON nodes and DOT export")
{
    Recipe text;
    text.recipe_id = "A";
    text.instructions = {{0, "Boil water.", {}, {}}};
    Recipe video;
    video.recipe_id = "V";
    video.modality = Modality::Video;
    video.source_url = "https://v.example/x";
    video.instructions = {{0, "so now we boil", TimeSpan{1.5, 4.0}, ChatLabel::Content},
                          {1, "and we stir", TimeSpan{4.0, 6.0}, ChatLabel::Content}};
    std::vector<Recipe> recipes{text, video};
    RecipeIndex index(recipes);
    auto f = forest_of({{"A", 0}, {"V", 0}, {"V", 1}}, {{0, 1, 0.8}, {0, 2, 0.6}});
    f.dish_id = "soup";
    f.joint_sets = extract_joint_sets(f);
    auto j = forest_to_json(f, index);
    CHECK(j["nodes"][0]["text"] == "Boil water.");
    CHECK(j["nodes"][1]["url"] == "https://v.example/x");
    CHECK(j["nodes"][1]["start_sec"] == 1.5);
    auto dot = forest_json_to_dot(j);
    CHECK(dot.find("graph \"soup\"") == 0);
    std::size_t edges = 0;
    for (std::size_t pos = 0; (pos = dot.find(" -- ", pos)) != std::string::npos; ++pos) ++edges;
    CHECK(edges == 2);
}
