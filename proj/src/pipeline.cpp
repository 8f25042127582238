#include "procalign/pipeline.hpp"

#include <map>
#include <set>

#include "procalign/decode.hpp"
#include "procalign/error.hpp"
#include "procalign/io_util.hpp"

namespace procalign {

std::vector<TokenSequence> tokenize_recipe(const Recipe& recipe, const TokenizerSettings& settings)
{
    std::vector<TokenSequence> out;
    out.reserve(recipe.size());
    for (const auto& ins : recipe.instructions) {
        out.push_back(tokenize(ins.text, settings.stop_words, settings.mode, settings.lexicon, ins.index));
    }
    return out;
}

std::vector<DirectedPair> directed_pairs(std::span<const RecipePair> pairs, bool both_directions)
{
    std::vector<DirectedPair> out;
    for (const auto& p : pairs) {
        out.push_back({p.dish_id, p.source_id, p.target_id, p.kind});
        if (both_directions && p.kind != PairKind::TextVideo) {
            out.push_back({p.dish_id, p.target_id, p.source_id, p.kind});
        }
    }
    return out;
}

namespace {

std::vector<Sentence> encode_recipe(const Recipe& recipe, const Vocabulary& vocab, const TokenizerSettings& settings)
{
    std::vector<Sentence> out;
    for (const auto& seq : tokenize_recipe(recipe, settings)) {
        out.push_back(vocab.encode(seq));
    }
    return out;
}

Vocabulary vocabulary_for(const std::set<std::string>& ids, const RecipeIndex& recipes,
                          const TokenizerSettings& settings, int min_count)
{
    std::vector<TokenSequence> sequences;
    for (const auto& id : ids) {
        auto seqs = tokenize_recipe(recipes.at(id), settings);
        std::move(seqs.begin(), seqs.end(), std::back_inserter(sequences));
    }
    return build_vocabulary(sequences, min_count);
}

}  // namespace

EncodedPair encode_pair(const Recipe& source, const Recipe& target, const Vocabulary& source_vocab,
                        const Vocabulary& target_vocab, const TokenizerSettings& settings)
{
    return EncodedPair{encode_recipe(source, source_vocab, settings), encode_recipe(target, target_vocab, settings)};
}

TrainingCorpus prepare_training_corpus(std::span<const DirectedPair> pairs, PairKind kind,
                                       const RecipeIndex& recipes, const TokenizerSettings& settings,
                                       MinCounts min_counts)
{
    std::set<std::string> source_ids;
    std::set<std::string> target_ids;
    std::vector<const DirectedPair*> selected;
    for (const auto& p : pairs) {
        if (p.kind == kind) {
            source_ids.insert(p.source_id);
            target_ids.insert(p.target_id);
            selected.push_back(&p);
        }
    }
    if (selected.empty()) {
        throw NoPairs(std::string("no ") + to_string(kind) + " pairs to train on");
    }

    TrainingCorpus corpus;
    if (kind == PairKind::TextVideo) {
        corpus.source_vocab = vocabulary_for(source_ids, recipes, settings, min_counts.text);
        corpus.target_vocab = vocabulary_for(target_ids, recipes, settings, min_counts.video);
    } else {
        std::set<std::string> all = source_ids;
        all.insert(target_ids.begin(), target_ids.end());
        int mc = kind == PairKind::TextText ? min_counts.text : min_counts.video;
        corpus.source_vocab = vocabulary_for(all, recipes, settings, mc);
        corpus.target_vocab = corpus.source_vocab;
    }

    std::map<std::string, std::vector<Sentence>> src_cache;
    std::map<std::string, std::vector<Sentence>> tgt_cache;
    for (const auto* p : selected) {
        auto& src = src_cache[p->source_id];
        if (src.empty()) {
            src = encode_recipe(recipes.at(p->source_id), corpus.source_vocab, settings);
        }
        auto& tgt = tgt_cache[p->target_id];
        if (tgt.empty()) {
            tgt = encode_recipe(recipes.at(p->target_id), corpus.target_vocab, settings);
        }
        corpus.pairs.push_back({src, tgt});
    }
    return corpus;
}

std::vector<PairwiseAlignment> align_pairs(std::span<const DirectedPair> pairs, const RecipeIndex& recipes,
                                           const AlignmentModel& model, const TokenizerSettings& settings,
                                           bool keep_rows)
{
    std::vector<PairwiseAlignment> out(pairs.size());
    const auto count = static_cast<long long>(pairs.size());
    bool failed = false;
    std::string failure;
#pragma omp parallel for schedule(dynamic, 1)
    for (long long k = 0; k < count; ++k) {
        const auto& p = pairs[static_cast<std::size_t>(k)];
        try {
            auto encoded = encode_pair(recipes.at(p.source_id), recipes.at(p.target_id), model.source_vocab,
                                       model.target_vocab, settings);
            auto a = decode(encoded, model, keep_rows);
            a.dish_id = p.dish_id;
            a.source_id = p.source_id;
            a.target_id = p.target_id;
            a.kind = p.kind;
            out[static_cast<std::size_t>(k)] = std::move(a);
        } catch (const std::exception& e) {
#pragma omp critical
            {
                failed = true;
                failure = e.what();
            }
        }
    }
    if (failed) {
        throw DegenerateInput(failure);
    }
    return out;
}

}  // namespace procalign
