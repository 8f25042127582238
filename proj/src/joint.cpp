#include "procalign/joint.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <sstream>

#include "procalign/disjoint_set.hpp"
#include "procalign/error.hpp"
#include "procalign/io_util.hpp"

namespace procalign {

std::size_t DishGraph::node_id(const NodeRef& ref) const
{
    auto it = std::lower_bound(nodes.begin(), nodes.end(), ref);
    if (it == nodes.end() || *it != ref) {
        throw InvalidArgument("node " + ref.recipe_id + "#" + std::to_string(ref.index) + " is not in the graph");
    }
    return static_cast<std::size_t>(it - nodes.begin());
}

double JointForest::total_weight() const
{
    double total = 0.0;
    for (const auto& e : tree_edges) {
        total += e.weight;
    }
    return total;
}

DishGraph build_dish_graph(std::span<const PairwiseAlignment> alignments, double threshold)
{
    DishGraph g;
    if (!alignments.empty()) {
        g.dish_id = alignments.front().dish_id;
    }
    for (const auto& a : alignments) {
        if (a.dish_id != g.dish_id) {
            throw MixedDish("alignments from dishes '" + g.dish_id + "' and '" + a.dish_id + "'");
        }
        validate(a);
        for (std::size_t m = 0; m < a.labels.size(); ++m) {
            g.nodes.push_back({a.source_id, static_cast<int>(m)});
        }
        for (std::size_t n = 0; n < a.target_size; ++n) {
            g.nodes.push_back({a.target_id, static_cast<int>(n)});
        }
    }
    std::sort(g.nodes.begin(), g.nodes.end());
    g.nodes.erase(std::unique(g.nodes.begin(), g.nodes.end()), g.nodes.end());

    std::map<std::pair<std::size_t, std::size_t>, std::pair<double, int>> merged;
    for (const auto& a : alignments) {
        if (a.source_id == a.target_id) {
            continue;
        }
        for (std::size_t m = 0; m < a.labels.size(); ++m) {
            if (!(a.posteriors[m] > threshold)) {
                continue;
            }
            DirectedEdge e{g.node_id({a.source_id, static_cast<int>(m)}),
                           g.node_id({a.target_id, a.labels[m]}), a.posteriors[m]};
            g.directed.push_back(e);
            auto& slot = merged[{std::min(e.from, e.to), std::max(e.from, e.to)}];
            slot.first += e.probability;
            slot.second += 1;
        }
    }
    for (const auto& [key, acc] : merged) {
        g.undirected.push_back({key.first, key.second, acc.first / acc.second});
    }
    return g;
}

JointForest max_spanning_forest(const DishGraph& graph)
{
    JointForest f;
    f.dish_id = graph.dish_id;
    f.nodes = graph.nodes;
    std::vector<UndirectedEdge> edges = graph.undirected;
    std::sort(edges.begin(), edges.end(), [](const UndirectedEdge& x, const UndirectedEdge& y) {
        if (x.weight != y.weight) {
            return x.weight > y.weight;
        }
        return std::tie(x.a, x.b) < std::tie(y.a, y.b);
    });
    DisjointSet components(graph.nodes.size());
    for (const auto& e : edges) {
        if (components.unite(e.a, e.b)) {
            f.tree_edges.push_back(e);
        }
    }
    std::sort(f.tree_edges.begin(), f.tree_edges.end(), [](const UndirectedEdge& x, const UndirectedEdge& y) {
        return std::tie(x.a, x.b) < std::tie(y.a, y.b);
    });
    return f;
}

namespace {

struct PathSearch {
    const std::vector<std::vector<std::size_t>>& adj;
    const std::vector<int>& recipe_of;
    std::size_t min_size;
    std::size_t cap;
    std::vector<int> used;  // per recipe: nodes of that recipe on the path
    std::vector<std::size_t> path;
    std::vector<std::vector<std::size_t>> found;
    std::size_t maximal_count = 0;

    bool can_extend_from(std::size_t end, std::size_t inner) const
    {
        for (std::size_t w : adj[end]) {
            if (w != inner && used[static_cast<std::size_t>(recipe_of[w])] == 0) {
                return true;
            }
        }
        return false;
    }

    bool maximal() const
    {
        const std::size_t first = path.front();
        const std::size_t last = path.back();
        const std::size_t none = static_cast<std::size_t>(-1);
        const std::size_t after_first = path.size() > 1 ? path[1] : none;
        const std::size_t before_last = path.size() > 1 ? path[path.size() - 2] : none;
        return !can_extend_from(first, after_first) && !can_extend_from(last, before_last);
    }

    void visit(std::size_t v, std::size_t prev)
    {
        path.push_back(v);
        ++used[static_cast<std::size_t>(recipe_of[v])];
        if (maximal() && path.front() <= path.back()) {
            if (++maximal_count > cap) {
                throw PathExplosion("more than " + std::to_string(cap) +
                                    " jointly-alignable paths; raise the edge threshold");
            }
            if (path.size() >= min_size) {
                found.push_back(path);
            }
        }
        for (std::size_t w : adj[v]) {
            if (w != prev && used[static_cast<std::size_t>(recipe_of[w])] == 0) {
                visit(w, v);
            }
        }
        --used[static_cast<std::size_t>(recipe_of[v])];
        path.pop_back();
    }
};

}  // namespace

std::vector<std::vector<std::size_t>> extract_joint_sets(const JointForest& forest, std::size_t min_size,
                                                         std::size_t cap)
{
    const std::size_t n = forest.nodes.size();
    std::vector<std::vector<std::size_t>> adj(n);
    for (const auto& e : forest.tree_edges) {
        adj[e.a].push_back(e.b);
        adj[e.b].push_back(e.a);
    }
    for (auto& row : adj) {
        std::sort(row.begin(), row.end());
    }
    std::map<std::string, int> recipe_ids;
    std::vector<int> recipe_of(n);
    for (std::size_t v = 0; v < n; ++v) {
        auto [it, inserted] = recipe_ids.emplace(forest.nodes[v].recipe_id, static_cast<int>(recipe_ids.size()));
        recipe_of[v] = it->second;
    }

    PathSearch search{adj, recipe_of, min_size, cap, std::vector<int>(recipe_ids.size(), 0), {}, {}, 0};
    for (std::size_t v = 0; v < n; ++v) {
        search.visit(v, static_cast<std::size_t>(-1));
    }
    auto sets = std::move(search.found);
    std::sort(sets.begin(), sets.end());
    sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
    return sets;
}

nlohmann::json node_to_json(const NodeRef& node, const RecipeIndex& recipes)
{
    nlohmann::json j{{"recipe_id", node.recipe_id}, {"index", node.index}};
    const Recipe* r = recipes.find(node.recipe_id);
    if (r == nullptr || node.index < 0 || static_cast<std::size_t>(node.index) >= r->size()) {
        return j;
    }
    const auto& ins = r->instructions[static_cast<std::size_t>(node.index)];
    if (r->modality == Modality::Video) {
        j["url"] = r->source_url;
        if (ins.span) {
            j["start_sec"] = ins.span->start_sec;
            j["end_sec"] = ins.span->end_sec;
        }
    } else {
        j["text"] = ins.text;
    }
    return j;
}

nlohmann::json forest_to_json(const JointForest& forest, const RecipeIndex& recipes)
{
    nlohmann::json nodes = nlohmann::json::array();
    for (const auto& node : forest.nodes) {
        nodes.push_back(node_to_json(node, recipes));
    }
    nlohmann::json edges = nlohmann::json::array();
    for (const auto& e : forest.tree_edges) {
        edges.push_back({{"a", e.a}, {"b", e.b}, {"weight", e.weight}});
    }
    return nlohmann::json{{"dish_id", forest.dish_id},
                          {"nodes", std::move(nodes)},
                          {"tree_edges", std::move(edges)},
                          {"joint_sets", forest.joint_sets}};
}

std::string forest_json_to_dot(const nlohmann::json& forest)
{
    auto quote = [](const std::string& s) {
        std::string out = "\"";
        for (char c : s) {
            if (c == '"' || c == '\\') {
                out += '\\';
            }
            out += c;
        }
        return out + "\"";
    };
    std::ostringstream dot;
    dot << "graph " << quote(forest.value("dish_id", std::string("forest"))) << " {\n";
    const auto& nodes = forest.at("nodes");
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        std::string label = nodes[i].at("recipe_id").get<std::string>() + "#" +
                            std::to_string(nodes[i].at("index").get<int>());
        dot << "  n" << i << " [label=" << quote(label) << "];\n";
    }
    for (const auto& e : forest.at("tree_edges")) {
        char weight[32];
        std::snprintf(weight, sizeof(weight), "%.4f", e.at("weight").get<double>());
        dot << "  n" << e.at("a").get<std::size_t>() << " -- n" << e.at("b").get<std::size_t>()
            << " [label=" << quote(weight) << "];\n";
    }
    dot << "}\n";
    return dot.str();
}

}  // namespace procalign
