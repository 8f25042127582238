#pragma once
// Synthetic benchmark shared by the acceptance suite and the CLI checks:
// train on generated dishes, decode every directed pair and score the
// systems against the generator's ground truth.

#include <map>
#include <string>
#include <vector>

#include "procalign/baselines.hpp"
#include "procalign/em.hpp"
#include "procalign/evaluation.hpp"
#include "procalign/io_util.hpp"
#include "procalign/pairing.hpp"
#include "procalign/pipeline.hpp"
#include "procalign/synth.hpp"

namespace synthbench {

using namespace procalign;

struct SystemResult {
    std::vector<PairScore> per_pair;
    PairScore aggregate;
    std::vector<PairwiseAlignment> alignments;
};

struct Setup {
    SynthCorpus corpus;
    std::vector<DirectedPair> pairs;
    std::map<std::pair<std::string, std::string>, const ReferenceAlignment*> refs;
};

inline SynthConfig benchmark_config()
{
    SynthConfig c;
    c.dishes = 10;
    c.text_recipes = 6;
    c.reorder_window = 2;
    c.swap_rate = 0.3;
    c.split_rate = 0.1;
    return c;
}

inline Setup make_setup(const SynthConfig& config, std::uint64_t seed)
{
    Setup s;
    s.corpus = synth_corpus(config, seed);
    std::vector<RecipePair> undirected;
    for (const auto& dish : group_by_dish(s.corpus.recipes)) {
        auto p = generate_pairs(dish, PruneConfig{}, default_stop_words());
        undirected.insert(undirected.end(), p.begin(), p.end());
    }
    s.pairs = directed_pairs(undirected, true);
    for (const auto& r : s.corpus.references) s.refs[{r.source_id, r.target_id}] = &r;
    return s;
}

inline SystemResult score(const Setup& s, std::vector<PairwiseAlignment> alignments)
{
    SystemResult out;
    for (const auto& a : alignments)
        out.per_pair.push_back(score_pair(a.labels, *s.refs.at({a.source_id, a.target_id})));
    out.aggregate = aggregate(out.per_pair);
    out.alignments = std::move(alignments);
    return out;
}

inline SystemResult run_hmm(const Setup& s, TokenMode mode, MinCounts min_counts = {},
                            EmOptions options = {})
{
    const RecipeIndex index(s.corpus.recipes);
    TokenizerSettings settings;
    settings.mode = mode;
    settings.lexicon = &s.corpus.lexicon;
    auto corpus = prepare_training_corpus(s.pairs, PairKind::TextText, index, settings, min_counts);
    auto model = em_train(corpus.pairs, corpus.source_vocab, corpus.target_vocab, options);
    model.token_mode = mode;
    return score(s, align_pairs(s.pairs, index, model, settings));
}

inline SystemResult run_baseline(const Setup& s, const std::string& name, std::uint64_t seed)
{
    const RecipeIndex index(s.corpus.recipes);
    std::vector<PairwiseAlignment> out;
    std::uint64_t k = 0;
    for (const auto& p : s.pairs) {
        const auto& src = index.at(p.source_id);
        const auto& tgt = index.at(p.target_id);
        PairwiseAlignment a;
        a.dish_id = p.dish_id;
        a.source_id = p.source_id;
        a.target_id = p.target_id;
        a.kind = p.kind;
        a.target_size = tgt.size();
        a.labels = name == "uniform" ? uniform_align(src.size(), tgt.size())
                                     : random_align(src.size(), tgt.size(), seed + k++);
        a.posteriors.assign(a.labels.size(), 1.0);
        out.push_back(std::move(a));
    }
    return score(s, std::move(out));
}

inline std::vector<double> f1s(const SystemResult& r)
{
    std::vector<double> v;
    for (const auto& p : r.per_pair) v.push_back(p.f1);
    return v;
}

}  // namespace synthbench
