// Command-line driver: every pipeline stage reads and writes JSON-lines files
// so runs can be chained, diffed and repeated.

#include <omp.h>

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "procalign/baselines.hpp"
#include "procalign/chat_classifier.hpp"
#include "procalign/config.hpp"
#include "procalign/em.hpp"
#include "procalign/error.hpp"
#include "procalign/evaluation.hpp"
#include "procalign/extraction.hpp"
#include "procalign/io_util.hpp"
#include "procalign/joint.hpp"
#include "procalign/model_io.hpp"
#include "procalign/pairing.hpp"
#include "procalign/pipeline.hpp"
#include "procalign/synth.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace procalign;

namespace {

struct Globals {
    std::string config_path;
    std::vector<std::string> overrides;  // key=value
    bool quiet = false;
};

Config resolve_config(const Globals& g)
{
    Config c = g.config_path.empty() ? Config::defaults() : Config::load(g.config_path);
    c.apply_env();
    for (const auto& kv : g.overrides) {
        auto eq = kv.find('=');
        if (eq == std::string::npos) {
            throw InvalidConfig("--set expects key=value, got '" + kv + "'");
        }
        const std::string key = kv.substr(0, eq);
        c.get(key);  // unknown keys are rejected
        c.set(key, kv.substr(eq + 1));
    }
    return c;
}

// Resolved config and input hashes go to stderr so outputs stay byte-stable.
void log_run(const std::string& sub, const Config& c, const std::vector<std::string>& inputs, bool quiet)
{
    if (quiet) {
        return;
    }
    std::istringstream dump(c.dump());
    std::string line;
    while (std::getline(dump, line)) {
        std::cerr << "[" << sub << "] config " << line << "\n";
    }
    for (const auto& path : inputs) {
        if (path.empty()) {
            continue;
        }
        std::cerr << "[" << sub << "] input " << path << " fnv1a64=" << hex64(fnv1a64(read_file(path))) << "\n";
    }
}

void apply_threads(const Config& c)
{
    const auto threads = c.get_int("threads");
    if (threads > 0) {
        omp_set_num_threads(static_cast<int>(threads));
    }
}

// OpenMP loop over [0, n) that rethrows the first exception after the loop.
template <class F>
void parallel_for(std::size_t n, F&& body)
{
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 1)
    for (long long k = 0; k < static_cast<long long>(n); ++k) {
        try {
            body(static_cast<std::size_t>(k));
        } catch (...) {
#pragma omp critical
            if (!failure) {
                failure = std::current_exception();
            }
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
}

template <class T, class F>
std::string jsonl_of(const std::vector<T>& items, F&& to_json)
{
    std::vector<json> records;
    records.reserve(items.size());
    for (const auto& item : items) {
        records.push_back(to_json(item));
    }
    return to_jsonl(records);
}

std::vector<RecipePair> load_pairs(const std::string& path)
{
    std::vector<RecipePair> pairs;
    for_each_jsonl(path, [&](const json& j, std::size_t) { pairs.push_back(pair_from_json(j)); });
    return pairs;
}

std::vector<PairwiseAlignment> load_alignments(const std::string& path)
{
    std::vector<PairwiseAlignment> out;
    for_each_jsonl(path, [&](const json& j, std::size_t) { out.push_back(alignment_from_json(j)); });
    return out;
}

std::map<std::pair<std::string, std::string>, ReferenceAlignment> load_references(const std::string& path)
{
    std::map<std::pair<std::string, std::string>, ReferenceAlignment> refs;
    for_each_jsonl(path, [&](const json& j, std::size_t) {
        auto r = reference_from_json(j);
        refs[{r.source_id, r.target_id}] = std::move(r);
    });
    return refs;
}

// Tokenizer resources named by the config; owns the lexicon the settings point to.
struct Tokenizer {
    PosLexicon lexicon;
    TokenizerSettings settings;

    Tokenizer(const Config& c, std::optional<TokenMode> mode = std::nullopt)
    {
        if (const auto& stop = c.get("stop_words"); !stop.empty()) {
            settings.stop_words = load_stop_words(stop);
        }
        settings.mode = mode.value_or(token_mode_from_string(c.get("train.token_mode")));
        if (const auto& lex = c.get("lexicon"); !lex.empty()) {
            lexicon = PosLexicon::load(lex);
            settings.lexicon = &lexicon;
        }
    }
};

void write_out(const std::string& path, const std::string& contents)
{
    if (path.empty() || path == "-") {
        std::cout << contents;
    } else {
        write_file_atomic(path, contents);
    }
}

// ---- subcommands ----------------------------------------------------------

struct IngestArgs {
    std::vector<std::string> inputs;
    std::string modality;
    std::string chat_train;
    std::string out;
};

void run_ingest(const IngestArgs& a, const Config& c)
{
    std::optional<Modality> modality;
    if (a.modality == "text") {
        modality = Modality::Text;
    } else if (a.modality == "video") {
        modality = Modality::Video;
    } else if (!a.modality.empty()) {
        throw InvalidArgument("--modality must be text or video");
    }
    std::vector<Recipe> recipes;
    for (const auto& in : a.inputs) {
        auto part = parse_recipe_file(in, modality);
        std::move(part.begin(), part.end(), std::back_inserter(recipes));
    }
    if (!a.chat_train.empty()) {
        std::vector<std::pair<std::string, ChatLabel>> labeled;
        for_each_jsonl(a.chat_train, [&](const json& j, std::size_t line) {
            const auto label = j.at("label").get<std::string>();
            if (label != "chat" && label != "content") {
                throw MalformedRecord(line, "label must be chat or content");
            }
            labeled.emplace_back(j.at("text").get<std::string>(), label == "chat" ? ChatLabel::Chat : ChatLabel::Content);
        });
        const auto model = train_chat_model(labeled);
        for (auto& r : recipes) {
            if (r.modality == Modality::Video) {
                label_video_recipe(r, model);
            }
        }
    }
    if (c.get_bool("ingest.drop_chat")) {
        for (auto& r : recipes) {
            std::erase_if(r.instructions, [](const Instruction& i) { return i.chat_label == ChatLabel::Chat; });
            for (std::size_t k = 0; k < r.instructions.size(); ++k) {
                r.instructions[k].index = static_cast<int>(k);
            }
            if (r.instructions.empty()) {
                throw EmptyRecipe("recipe " + r.recipe_id + " has no content instructions");
            }
        }
    }
    std::map<std::string, int> seen;
    for (const auto& r : recipes) {
        validate(r);
        if (seen[r.recipe_id]++) {
            throw InvalidArgument("duplicate recipe_id " + r.recipe_id);
        }
    }
    write_out(a.out, jsonl_of(recipes, recipe_to_json));
}

void run_pairs(const std::string& corpus, const std::string& out, const Config& c)
{
    const auto recipes = parse_recipe_file(corpus);
    const auto dishes = group_by_dish(recipes);
    const Tokenizer tok(c);
    const auto prune = c.prune();
    std::vector<std::vector<RecipePair>> per_dish(dishes.size());
    parallel_for(dishes.size(), [&](std::size_t d) {
        per_dish[d] = generate_pairs(dishes[d], prune, tok.settings.stop_words);
    });
    std::vector<RecipePair> pairs;
    for (auto& p : per_dish) {
        pairs.insert(pairs.end(), p.begin(), p.end());
    }
    std::cerr << "[pairs] " << pairs.size() << " pairs from " << dishes.size() << " dishes\n";
    write_out(out, jsonl_of(pairs, pair_to_json));
}

struct TrainArgs {
    std::string corpus;
    std::string pairs;
    std::string kind = "text-text";
    std::string out;
};

void run_train(const TrainArgs& a, const Config& c)
{
    const auto recipes = parse_recipe_file(a.corpus);
    const RecipeIndex index(recipes);
    const auto directed = directed_pairs(load_pairs(a.pairs), true);
    const Tokenizer tok(c);
    const PairKind kind = pair_kind_from_string(a.kind);
    MinCounts mc{static_cast<int>(c.get_int("vocab.text_min_count")),
                 static_cast<int>(c.get_int("vocab.video_min_count"))};
    auto corpus = prepare_training_corpus(directed, kind, index, tok.settings, mc);
    EmOptions options;
    options.schedule = c.schedule();
    options.widen_floor = c.get_double("train.widen_floor");
    options.jump_update_iterations = static_cast<int>(c.get_int("train.jump_update_iterations"));
    auto model = em_train(corpus.pairs, corpus.source_vocab, corpus.target_vocab, options);
    model.kind = to_string(kind);
    model.token_mode = tok.settings.mode;
    for (const auto& t : model.trace) {
        std::cerr << "[train] stage " << t.stage << " window " << t.window << " iteration " << t.iteration
                  << " log-likelihood " << t.log_likelihood << "\n";
    }
    if (a.out.empty()) {
        throw InvalidArgument("--out is required");
    }
    // The temp name keeps the extension because it selects the format.
    const fs::path out(a.out);
    const fs::path tmp = out.parent_path() / (out.stem().string() + ".tmp" + out.extension().string());
    save_model(tmp, model);
    fs::rename(tmp, out);
}

struct AlignArgs {
    std::string corpus;
    std::string pairs;
    std::string model;
    std::string out;
    bool rows = false;
};

void run_align(const AlignArgs& a, const Config& c)
{
    const auto recipes = parse_recipe_file(a.corpus);
    const RecipeIndex index(recipes);
    const auto model = load_model(a.model);
    const Tokenizer tok(c, model.token_mode);
    std::vector<DirectedPair> selected;
    for (const auto& p : directed_pairs(load_pairs(a.pairs), true)) {
        if (model.kind.empty() || model.kind == to_string(p.kind)) {
            selected.push_back(p);
        }
    }
    auto alignments = align_pairs(selected, index, model, tok.settings, a.rows);
    write_out(a.out, jsonl_of(alignments, alignment_to_json));
}

struct BaselineArgs {
    std::string method;
    std::string corpus;
    std::string pairs;
    std::string vectors;
    std::string out;
};

void run_baseline(const BaselineArgs& a, const Config& c)
{
    const auto recipes = parse_recipe_file(a.corpus);
    const RecipeIndex index(recipes);
    const auto directed = directed_pairs(load_pairs(a.pairs), true);
    const Tokenizer words(c, TokenMode::AllWords);
    const bool embedding = a.method == "embedding-words" || a.method == "embedding-sentences";
    VectorTable table;
    if (embedding) {
        if (a.vectors.empty()) {
            throw InvalidArgument("--vectors is required for " + a.method);
        }
        table = a.method == "embedding-words" ? VectorTable::load_word_vectors(a.vectors)
                                              : VectorTable::load_sentence_vectors(a.vectors);
    }
    const Bm25Params bm25{c.get_double("bm25.k1"), c.get_double("bm25.b")};
    const auto seed = static_cast<std::uint64_t>(c.get_int("seed"));

    auto tokens = [&](const Recipe& r) {
        std::vector<Words> out;
        for (auto& seq : tokenize_recipe(r, words.settings)) {
            out.push_back(std::move(seq.tokens));
        }
        return out;
    };
    auto items = [&](const Recipe& r) {
        std::vector<EmbeddingItem> out;
        TokenizerSettings nv = words.settings;
        if (nv.lexicon) {
            nv.mode = TokenMode::NounsVerbs;
        }
        auto seqs = tokenize_recipe(r, nv);
        for (std::size_t k = 0; k < seqs.size(); ++k) {
            out.push_back({seqs[k].tokens, r.recipe_id + "#" + std::to_string(k)});
        }
        return out;
    };

    std::vector<PairwiseAlignment> out(directed.size());
    parallel_for(directed.size(), [&](std::size_t k) {
        const auto& p = directed[k];
        const auto& src = index.at(p.source_id);
        const auto& tgt = index.at(p.target_id);
        PairwiseAlignment al;
        al.dish_id = p.dish_id;
        al.source_id = p.source_id;
        al.target_id = p.target_id;
        al.kind = p.kind;
        al.target_size = tgt.size();
        if (a.method == "uniform") {
            al.labels = uniform_align(src.size(), tgt.size());
        } else if (a.method == "random") {
            al.labels = random_align(src.size(), tgt.size(), seed + k);
        } else if (a.method == "bm25") {
            al.labels = bm25_align(tokens(src), tokens(tgt), bm25);
        } else if (a.method == "exact") {
            al.labels = exact_match_align(tokens(src), tokens(tgt));
        } else if (a.method == "tfidf") {
            TfidfVectorizer v;
            const auto docs = tokens(tgt);
            v.fit(docs);
            al.labels = tfidf_align(tokens(src), docs, v);
        } else {
            al.labels = embedding_align(items(src), items(tgt), table,
                                        a.method == "embedding-words" ? EmbeddingMode::WordAverage
                                                                      : EmbeddingMode::Sentence);
        }
        al.posteriors.assign(al.labels.size(), 1.0);
        out[k] = std::move(al);
    });
    write_out(a.out, jsonl_of(out, alignment_to_json));
}

struct JointArgs {
    std::string corpus;
    std::string alignments;
    std::string out;
};

void run_joint(const JointArgs& a, const Config& c)
{
    std::vector<Recipe> recipes;
    if (!a.corpus.empty()) {
        recipes = parse_recipe_file(a.corpus);
    }
    const RecipeIndex index(recipes);
    const auto alignments = load_alignments(a.alignments);
    std::vector<std::string> dish_order;
    std::map<std::string, std::vector<PairwiseAlignment>> by_dish;
    for (const auto& al : alignments) {
        auto& bucket = by_dish[al.dish_id];
        if (bucket.empty()) {
            dish_order.push_back(al.dish_id);
        }
        bucket.push_back(al);
    }
    const double threshold = c.get_double("joint.edge_threshold");
    const auto min_size = static_cast<std::size_t>(c.get_int("joint.min_set_size"));
    const auto cap = static_cast<std::size_t>(c.get_int("joint.path_cap"));
    std::vector<json> forests(dish_order.size());
    parallel_for(dish_order.size(), [&](std::size_t d) {
        auto forest = max_spanning_forest(build_dish_graph(by_dish.at(dish_order[d]), threshold));
        forest.joint_sets = extract_joint_sets(forest, min_size, cap);
        forests[d] = forest_to_json(forest, index);
    });
    write_out(a.out, to_jsonl(forests));
}

struct EvalArgs {
    std::string alignments;
    std::string references;
    std::string compare;
    std::string out;
};

std::vector<PairScore> score_all(const std::vector<PairwiseAlignment>& alignments,
                                 const std::map<std::pair<std::string, std::string>, ReferenceAlignment>& refs,
                                 ReferenceMode mode, std::vector<std::pair<std::string, std::string>>* keys)
{
    std::vector<PairScore> scores;
    for (const auto& al : alignments) {
        auto it = refs.find({al.source_id, al.target_id});
        if (it == refs.end()) {
            continue;
        }
        scores.push_back(score_pair(al.labels, it->second, mode));
        if (keys) {
            keys->push_back(it->first);
        }
    }
    return scores;
}

json score_json(const PairScore& s)
{
    return json{{"precision", s.precision}, {"recall", s.recall}, {"f1", s.f1}};
}

void run_eval(const EvalArgs& a, const Config& c)
{
    const auto refs = load_references(a.references);
    const auto mode =
        c.get("eval.reference_mode") == "per-annotator" ? ReferenceMode::PerAnnotator : ReferenceMode::Consensus;
    std::vector<std::pair<std::string, std::string>> keys;
    const auto scores = score_all(load_alignments(a.alignments), refs, mode, &keys);
    json result = score_json(aggregate(scores));
    result["pairs"] = scores.size();
    if (!a.compare.empty()) {
        // Bootstrap needs the same pairs on both sides.
        std::map<std::pair<std::string, std::string>, double> other;
        for (const auto& al : load_alignments(a.compare)) {
            auto it = refs.find({al.source_id, al.target_id});
            if (it != refs.end()) {
                other[it->first] = score_pair(al.labels, it->second, mode).f1;
            }
        }
        std::vector<double> mine, theirs;
        for (std::size_t k = 0; k < keys.size(); ++k) {
            auto it = other.find(keys[k]);
            if (it != other.end()) {
                mine.push_back(scores[k].f1);
                theirs.push_back(it->second);
            }
        }
        result["compare_pairs"] = mine.size();
        result["bootstrap_p"] =
            paired_bootstrap(mine, theirs, static_cast<std::size_t>(c.get_int("eval.bootstrap_resamples")),
                             static_cast<std::uint64_t>(c.get_int("seed")));
    }
    if (!a.out.empty()) {
        std::vector<json> rows;
        for (std::size_t k = 0; k < scores.size(); ++k) {
            auto row = score_json(scores[k]);
            row["source_id"] = keys[k].first;
            row["target_id"] = keys[k].second;
            rows.push_back(std::move(row));
        }
        write_file_atomic(a.out, to_jsonl(rows));
    }
    std::cout << result.dump() << "\n";
}

struct ExtractArgs {
    std::string corpus;
    std::string alignments;
    std::string paraphrases;
    std::string breakdowns;
};

void run_extract(const ExtractArgs& a, const Config& c)
{
    std::vector<Recipe> recipes;
    if (!a.corpus.empty()) {
        recipes = parse_recipe_file(a.corpus);
    }
    const RecipeIndex index(recipes);
    const auto alignments = load_alignments(a.alignments);
    const auto para = extract_paraphrases(alignments, c.get_double("extract.paraphrase_threshold"));
    const auto brk = extract_step_breakdowns(alignments, c.get_double("extract.breakdown_threshold"));
    std::cerr << "[extract] " << para.size() << " paraphrases, " << brk.size() << " breakdowns\n";
    write_file_atomic(a.paraphrases, jsonl_of(para, [&](const auto& r) { return paraphrase_to_json(r, index); }));
    write_file_atomic(a.breakdowns, jsonl_of(brk, [&](const auto& r) { return breakdown_to_json(r, index); }));
}

struct CurveArgs {
    std::string alignments;
    std::string references;
    std::vector<double> thresholds{0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
    std::string out;
};

void run_curve(const CurveArgs& a, const Config&)
{
    const auto refs = load_references(a.references);
    std::vector<PairwiseAlignment> kept;
    std::vector<std::vector<int>> labels;
    for (auto& al : load_alignments(a.alignments)) {
        auto it = refs.find({al.source_id, al.target_id});
        if (it != refs.end()) {
            labels.push_back(consensus(it->second));
            kept.push_back(std::move(al));
        }
    }
    std::vector<json> rows;
    for (const auto& p : tradeoff_curve(kept, labels, a.thresholds)) {
        json row{{"threshold", p.threshold}, {"extracted_fraction", p.extracted_fraction}};
        row["score"] = p.score ? score_json(*p.score) : json(nullptr);
        rows.push_back(std::move(row));
    }
    write_out(a.out, to_jsonl(rows));
}

struct SynthArgs {
    SynthConfig config;
    std::string out_dir;
};

void run_synth(const SynthArgs& a, const Config& c)
{
    const auto corpus = synth_corpus(a.config, static_cast<std::uint64_t>(c.get_int("seed")));
    fs::create_directories(a.out_dir);
    const fs::path dir(a.out_dir);
    write_file_atomic(dir / "recipes.jsonl", jsonl_of(corpus.recipes, recipe_to_json));
    write_file_atomic(dir / "references.jsonl", jsonl_of(corpus.references, reference_to_json));
    write_file_atomic(dir / "lexicon.tsv", corpus.lexicon.to_tsv());
    std::cerr << "[synth] " << corpus.recipes.size() << " recipes, " << corpus.references.size()
              << " reference pairs in " << a.out_dir << "\n";
}

void run_export_dot(const std::string& forests, const std::string& dish, const std::string& out)
{
    std::string dot;
    bool found = false;
    for_each_jsonl(forests, [&](const json& j, std::size_t) {
        if (dish.empty() || j.value("dish_id", std::string()) == dish) {
            dot += forest_json_to_dot(j);
            found = true;
        }
    });
    if (!dish.empty() && !found) {
        throw InvalidArgument("no forest for dish " + dish);
    }
    write_out(out, dot);
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"procalign: unsupervised alignment of procedure instructions"};
    app.require_subcommand(1);
    Globals g;
    app.add_option("--config", g.config_path, "key = value config file (defaults when omitted)")->check(CLI::ExistingFile);
    app.add_option("--set", g.overrides, "override one config key, key=value (repeatable)");
    app.add_flag("--quiet", g.quiet, "do not log the resolved config");

    std::string sub_name;
    std::vector<std::string> inputs;
    std::function<void(const Config&)> action;

    auto* print_config = app.add_subcommand("config", "print the commented default config");

    IngestArgs ingest;
    auto* s_ingest = app.add_subcommand("ingest", "validate and normalize recipe JSON-lines files");
    s_ingest->add_option("--input", ingest.inputs, "recipe file (repeatable)")->required()->check(CLI::ExistingFile);
    s_ingest->add_option("--modality", ingest.modality, "text | video, for records without one");
    s_ingest->add_option("--chat-train", ingest.chat_train, "JSON-lines {text, label} to train the chat filter")
        ->check(CLI::ExistingFile);
    s_ingest->add_option("--out", ingest.out, "normalized corpus (stdout when omitted)");

    std::string pairs_corpus, pairs_out;
    auto* s_pairs = app.add_subcommand("pairs", "generate pruned within-dish recipe pairs");
    s_pairs->add_option("--corpus", pairs_corpus)->required()->check(CLI::ExistingFile);
    s_pairs->add_option("--out", pairs_out);

    TrainArgs train;
    auto* s_train = app.add_subcommand("train", "fit the HMM alignment model with EM");
    s_train->add_option("--corpus", train.corpus)->required()->check(CLI::ExistingFile);
    s_train->add_option("--pairs", train.pairs)->required()->check(CLI::ExistingFile);
    s_train->add_option("--kind", train.kind, "text-text | text-video | video-video")->capture_default_str();
    s_train->add_option("--out", train.out, "model file; .bin selects the binary format")->required();

    AlignArgs align;
    auto* s_align = app.add_subcommand("align", "decode every pair of the model's kind");
    s_align->add_option("--corpus", align.corpus)->required()->check(CLI::ExistingFile);
    s_align->add_option("--pairs", align.pairs)->required()->check(CLI::ExistingFile);
    s_align->add_option("--model", align.model)->required()->check(CLI::ExistingFile);
    s_align->add_option("--out", align.out);
    s_align->add_flag("--posterior-rows", align.rows, "also write full posterior rows");

    BaselineArgs baseline;
    auto* s_base = app.add_subcommand("baseline", "align pairs with a baseline method");
    s_base->add_option("--method", baseline.method)
        ->required()
        ->check(CLI::IsMember({"uniform", "random", "bm25", "exact", "tfidf", "embedding-words", "embedding-sentences"}));
    s_base->add_option("--corpus", baseline.corpus)->required()->check(CLI::ExistingFile);
    s_base->add_option("--pairs", baseline.pairs)->required()->check(CLI::ExistingFile);
    s_base->add_option("--vectors", baseline.vectors, "word vectors (text) or sentence vectors (JSON-lines)");
    s_base->add_option("--out", baseline.out);

    JointArgs joint;
    auto* s_joint = app.add_subcommand("joint", "build dish graphs, spanning forests and joint sets");
    s_joint->add_option("--alignments", joint.alignments)->required()->check(CLI::ExistingFile);
    s_joint->add_option("--corpus", joint.corpus, "adds instruction text to nodes")->check(CLI::ExistingFile);
    s_joint->add_option("--out", joint.out);

    EvalArgs eval;
    auto* s_eval = app.add_subcommand("eval", "score alignments against references");
    s_eval->add_option("--alignments", eval.alignments)->required()->check(CLI::ExistingFile);
    s_eval->add_option("--references", eval.references)->required()->check(CLI::ExistingFile);
    s_eval->add_option("--compare", eval.compare, "second system for a paired bootstrap test")
        ->check(CLI::ExistingFile);
    s_eval->add_option("--out", eval.out, "per-pair scores");

    ExtractArgs extract;
    auto* s_extract = app.add_subcommand("extract", "paraphrase and step breakdown records");
    s_extract->add_option("--alignments", extract.alignments)->required()->check(CLI::ExistingFile);
    s_extract->add_option("--corpus", extract.corpus)->check(CLI::ExistingFile);
    s_extract->add_option("--paraphrases", extract.paraphrases)->required();
    s_extract->add_option("--breakdowns", extract.breakdowns)->required();

    CurveArgs curve;
    auto* s_curve = app.add_subcommand("curve", "F1 against extracted fraction over posterior thresholds");
    s_curve->add_option("--alignments", curve.alignments)->required()->check(CLI::ExistingFile);
    s_curve->add_option("--references", curve.references)->required()->check(CLI::ExistingFile);
    s_curve->add_option("--thresholds", curve.thresholds)->delimiter(',');
    s_curve->add_option("--out", curve.out);

    SynthArgs synth;
    synth.config.dishes = 10;
    auto* s_synth = app.add_subcommand("synth", "generate a synthetic corpus with ground truth");
    s_synth->add_option("--out-dir", synth.out_dir)->required();
    s_synth->add_option("--dishes", synth.config.dishes)->capture_default_str();
    s_synth->add_option("--text", synth.config.text_recipes)->capture_default_str();
    s_synth->add_option("--video", synth.config.video_recipes)->capture_default_str();
    s_synth->add_option("--steps", synth.config.latent_steps)->capture_default_str();
    s_synth->add_option("--synonyms", synth.config.synonyms)->capture_default_str();
    s_synth->add_option("--swap", synth.config.swap_rate)->capture_default_str();
    s_synth->add_option("--window", synth.config.reorder_window)->capture_default_str();
    s_synth->add_option("--reorder-rate", synth.config.reorder_rate)->capture_default_str();
    s_synth->add_option("--split", synth.config.split_rate)->capture_default_str();
    s_synth->add_option("--merge", synth.config.merge_rate)->capture_default_str();
    s_synth->add_option("--chat", synth.config.chat_rate)->capture_default_str();

    std::string dot_forest, dot_dish, dot_out;
    auto* s_dot = app.add_subcommand("export-dot", "render forests as Graphviz DOT");
    s_dot->add_option("--forest", dot_forest)->required()->check(CLI::ExistingFile);
    s_dot->add_option("--dish", dot_dish, "only this dish");
    s_dot->add_option("--out", dot_out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << json{{"error", "UsageError"}, {"message", e.what()}}.dump() << "\n";
        return app.exit(e);
    }

    const CLI::App* chosen = app.get_subcommands().front();
    sub_name = chosen->get_name();
    try {
        if (chosen == print_config) {
            std::cout << Config::default_text();
            return 0;
        }
        const Config config = resolve_config(g);
        apply_threads(config);
        if (chosen == s_ingest) {
            inputs = ingest.inputs;
            inputs.push_back(ingest.chat_train);
            action = [&](const Config& c) { run_ingest(ingest, c); };
        } else if (chosen == s_pairs) {
            inputs = {pairs_corpus};
            action = [&](const Config& c) { run_pairs(pairs_corpus, pairs_out, c); };
        } else if (chosen == s_train) {
            inputs = {train.corpus, train.pairs};
            action = [&](const Config& c) { run_train(train, c); };
        } else if (chosen == s_align) {
            inputs = {align.corpus, align.pairs, align.model};
            action = [&](const Config& c) { run_align(align, c); };
        } else if (chosen == s_base) {
            inputs = {baseline.corpus, baseline.pairs, baseline.vectors};
            action = [&](const Config& c) { run_baseline(baseline, c); };
        } else if (chosen == s_joint) {
            inputs = {joint.alignments, joint.corpus};
            action = [&](const Config& c) { run_joint(joint, c); };
        } else if (chosen == s_eval) {
            inputs = {eval.alignments, eval.references, eval.compare};
            action = [&](const Config& c) { run_eval(eval, c); };
        } else if (chosen == s_extract) {
            inputs = {extract.alignments, extract.corpus};
            action = [&](const Config& c) { run_extract(extract, c); };
        } else if (chosen == s_curve) {
            inputs = {curve.alignments, curve.references};
            action = [&](const Config& c) { run_curve(curve, c); };
        } else if (chosen == s_synth) {
            action = [&](const Config& c) { run_synth(synth, c); };
        } else {
            inputs = {dot_forest};
            action = [&](const Config&) { run_export_dot(dot_forest, dot_dish, dot_out); };
        }
        log_run(sub_name, config, inputs, g.quiet);
        action(config);
    } catch (const Error& e) {
        std::cerr << json{{"error", e.kind()}, {"subcommand", sub_name}, {"message", e.what()}}.dump() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << json{{"error", "RuntimeError"}, {"subcommand", sub_name}, {"message", e.what()}}.dump() << "\n";
        return 1;
    }
    return 0;
}
