#pragma once

#include <compare>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "procalign/pairwise_alignment.hpp"
#include "procalign/recipe.hpp"

namespace procalign {

class RecipeIndex;

struct NodeRef {
    std::string recipe_id;
    int index = 0;

    auto operator<=>(const NodeRef&) const = default;
};

struct DirectedEdge {
    std::size_t from = 0;
    std::size_t to = 0;
    double probability = 0.0;
};

/// Undirected edge with a < b (node ids).
struct UndirectedEdge {
    std::size_t a = 0;
    std::size_t b = 0;
    double weight = 0.0;
};

/// Instruction graph of one dish. Node ids index `nodes`, which is sorted.
struct DishGraph {
    std::string dish_id;
    std::vector<NodeRef> nodes;
    std::vector<DirectedEdge> directed;
    std::vector<UndirectedEdge> undirected;

    std::size_t node_id(const NodeRef& ref) const;
};

struct JointForest {
    std::string dish_id;
    std::vector<NodeRef> nodes;
    std::vector<UndirectedEdge> tree_edges;
    /// Each set lists node ids in path order, starting at the smaller endpoint.
    std::vector<std::vector<std::size_t>> joint_sets;

    double total_weight() const;
};

/// Keeps every decoded instruction whose posterior exceeds `threshold` as a
/// directed edge, then merges the two directions of a node pair into one
/// undirected edge weighted by the mean of the retained probabilities.
/// Throws MixedDish when the alignments span several dishes.
DishGraph build_dish_graph(std::span<const PairwiseAlignment> alignments, double threshold = 0.5);

/// Kruskal over edges sorted by (weight desc, a, b).
JointForest max_spanning_forest(const DishGraph& graph);

/// Maximal simple tree paths whose nodes come from pairwise-distinct recipes.
/// Throws PathExplosion once more than `cap` such paths are found.
std::vector<std::vector<std::size_t>> extract_joint_sets(const JointForest& forest,
                                                         std::size_t min_size = 2,
                                                         std::size_t cap = 1'000'000);

/// Instruction reference rendered with its text (text recipes) or url and
/// time span (video recipes), when the recipe is known.
nlohmann::json node_to_json(const NodeRef& node, const RecipeIndex& recipes);

nlohmann::json forest_to_json(const JointForest& forest, const RecipeIndex& recipes);

/// Graphviz rendering of a forest JSON document (as written by forest_to_json).
std::string forest_json_to_dot(const nlohmann::json& forest);

}  // namespace procalign
