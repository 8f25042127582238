#include "procalign/synth.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <numeric>
#include <set>
#include <string>

#include "procalign/error.hpp"
#include "procalign/random.hpp"

namespace procalign {

namespace {

constexpr const char* kConsonants = "bdfgklmnprstvz";
constexpr const char* kVowels = "aeiou";

constexpr const char* kFillers[] = {"the", "a", "with", "into", "and", "of", "in"};
constexpr const char* kChatLines[] = {
    "hey guys welcome back to my channel",
    "do not forget to subscribe and hit the like button",
    "let me know in the comments what you think",
    "this is my favorite part honestly",
    "thanks so much for watching and see you next time",
    "i got this recipe from my grandmother",
};

/// Pronounceable pseudo-word for an integer id (at least three syllables).
std::string pseudo_word(std::uint64_t id)
{
    const std::size_t nc = std::char_traits<char>::length(kConsonants);
    const std::size_t nv = std::char_traits<char>::length(kVowels);
    const std::size_t syllables = nc * nv;
    std::string w;
    std::uint64_t x = id;
    for (int k = 0; k < 3 || x > 0; ++k) {
        const auto s = static_cast<std::size_t>(x % syllables);
        x /= syllables;
        w += kConsonants[s / nv];
        w += kVowels[s % nv];
    }
    return w;
}

struct Concept {
    std::vector<std::string> forms;
};

struct LatentStep {
    std::size_t verb = 0;
    std::size_t noun_a = 0;
    std::size_t noun_b = 0;
    std::vector<std::size_t> details;
};

struct DishVocabulary {
    std::vector<Concept> verbs;
    std::vector<Concept> nouns;
    std::vector<Concept> details;
};

Concept make_concept(std::uint64_t& next_id, int synonyms, const StopWords& stop)
{
    Concept c;
    while (static_cast<int>(c.forms.size()) < synonyms) {
        auto w = pseudo_word(next_id++);
        if (stop.count(w) == 0) {
            c.forms.push_back(std::move(w));
        }
    }
    return c;
}

const std::string& render(const Concept& c, double swap_rate, Rng& rng)
{
    if (c.forms.size() > 1 && bernoulli(rng, swap_rate)) {
        return c.forms[1 + uniform_index(rng, c.forms.size() - 1)];
    }
    return c.forms.front();
}

std::string sentence(std::vector<std::string> words)
{
    std::string s = join(words, " ");
    if (!s.empty()) {
        s[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
    }
    return s + ".";
}

const char* filler(Rng& rng)
{
    return kFillers[uniform_index(rng, std::size(kFillers))];
}

struct Rendered {
    std::string text;
    std::vector<int> latent;
};

std::vector<Rendered> render_recipe(const DishVocabulary& vocab, const std::vector<LatentStep>& steps,
                                    const SynthConfig& config, Rng& rng)
{
    // Local reordering: each step, with probability reorder_rate, moves up
    // to reorder_window positions forward or back. Moves that would leave
    // some step farther than the window from its latent position are skipped.
    std::vector<int> order(steps.size());
    std::iota(order.begin(), order.end(), 0);
    const auto last = static_cast<long long>(order.size()) - 1;
    for (int i = 0; i < static_cast<int>(order.size()) && config.reorder_window > 0; ++i) {
        if (!bernoulli(rng, config.reorder_rate)) {
            continue;
        }
        const auto shift = static_cast<long long>(1 + uniform_index(rng, static_cast<std::uint64_t>(config.reorder_window)));
        const auto from = std::find(order.begin(), order.end(), i) - order.begin();
        const auto to = std::clamp(bernoulli(rng, 0.5) ? from + shift : from - shift, 0LL, last);
        auto moved = order;
        moved.erase(moved.begin() + from);
        moved.insert(moved.begin() + to, i);
        // Keep every step within the window of its latent position.
        bool local = true;
        for (std::size_t k = 0; k < moved.size(); ++k) {
            local = local && std::abs(static_cast<long long>(k) - moved[k]) <= config.reorder_window;
        }
        if (local) {
            order = std::move(moved);
        }
    }

    std::vector<Rendered> out;
    for (std::size_t k = 0; k < order.size(); ++k) {
        const int s = order[k];
        const auto& step = steps[static_cast<std::size_t>(s)];
        std::vector<std::string> head{render(vocab.verbs[step.verb], config.swap_rate, rng), filler(rng),
                                      render(vocab.nouns[step.noun_a], config.swap_rate, rng)};
        std::vector<std::string> tail{filler(rng), render(vocab.nouns[step.noun_b], config.swap_rate, rng)};
        for (std::size_t d : step.details) {
            tail.push_back(render(vocab.details[d], config.swap_rate, rng));
        }

        if (bernoulli(rng, config.split_rate)) {
            out.push_back({sentence(head), {s}});
            out.push_back({sentence(tail), {s}});
            continue;
        }
        head.insert(head.end(), tail.begin(), tail.end());
        if (k + 1 < order.size() && bernoulli(rng, config.merge_rate)) {
            const int s2 = order[k + 1];
            const auto& next = steps[static_cast<std::size_t>(s2)];
            head.push_back("and");
            head.push_back(render(vocab.verbs[next.verb], config.swap_rate, rng));
            head.push_back(render(vocab.nouns[next.noun_a], config.swap_rate, rng));
            head.push_back(render(vocab.nouns[next.noun_b], config.swap_rate, rng));
            for (std::size_t d : next.details) {
                head.push_back(render(vocab.details[d], config.swap_rate, rng));
            }
            out.push_back({sentence(head), {s, s2}});
            ++k;
            continue;
        }
        out.push_back({sentence(head), {s}});
    }
    return out;
}

}  // namespace

void SynthConfig::validate() const
{
    auto rate = [](double r, const char* name) {
        if (!(r >= 0.0 && r <= 1.0)) {
            throw InvalidConfig(std::string(name) + " must lie in [0, 1]");
        }
    };
    rate(swap_rate, "swap_rate");
    rate(split_rate, "split_rate");
    rate(merge_rate, "merge_rate");
    rate(reorder_rate, "reorder_rate");
    rate(chat_rate, "chat_rate");
    if (dishes < 1) {
        throw InvalidConfig("dishes must be positive");
    }
    if (text_recipes < 0 || video_recipes < 0 || text_recipes + video_recipes < 1) {
        throw InvalidConfig("need at least one recipe per dish");
    }
    if (latent_steps < 1) {
        throw InvalidConfig("latent_steps must be positive");
    }
    if (synonyms < 1 || verb_pool < 1 || noun_pool < 2) {
        throw InvalidConfig("synonyms and verb_pool must be positive, noun_pool at least 2");
    }
    if (detail_words < 0 || detail_words > detail_pool) {
        throw InvalidConfig("detail_words must lie in [0, detail_pool]");
    }
    if (reorder_window < 0) {
        throw InvalidConfig("reorder_window must be non-negative");
    }
}

std::vector<int> ground_truth_labels(const std::vector<std::vector<int>>& source_latent,
                                     const std::vector<std::vector<int>>& target_latent)
{
    auto target_of = [&](int step) {
        for (std::size_t n = 0; n < target_latent.size(); ++n) {
            const auto& covered = target_latent[n];
            if (std::find(covered.begin(), covered.end(), step) != covered.end()) {
                return static_cast<int>(n);
            }
        }
        throw InvalidArgument("latent step " + std::to_string(step) + " missing from target");
    };
    std::vector<int> labels(source_latent.size(), -1);
    for (std::size_t m = 0; m < source_latent.size(); ++m) {
        if (!source_latent[m].empty()) {
            labels[m] = target_of(source_latent[m].front());
        }
    }
    // Chat sentences inherit the label of the nearest content sentence before
    // them (after them at the start of a recipe).
    int carry = -1;
    for (std::size_t m = 0; m < labels.size(); ++m) {
        if (labels[m] >= 0) {
            carry = labels[m];
        } else if (carry >= 0) {
            labels[m] = carry;
        }
    }
    for (std::size_t m = labels.size(); m-- > 0;) {
        if (labels[m] >= 0) {
            carry = labels[m];
        } else {
            labels[m] = std::max(carry, 0);
        }
    }
    return labels;
}

SynthCorpus synth_dish(const SynthConfig& config, std::uint64_t seed, int dish_index)
{
    config.validate();
    const StopWords& stop = default_stop_words();

    // The concept pools depend on the seed only, so dishes of one seed share
    // vocabulary and differ in which concepts their steps use.
    std::uint64_t next_id = 1000;
    DishVocabulary vocab;
    for (int i = 0; i < config.verb_pool; ++i) {
        vocab.verbs.push_back(make_concept(next_id, config.synonyms, stop));
    }
    for (int i = 0; i < config.noun_pool; ++i) {
        vocab.nouns.push_back(make_concept(next_id, config.synonyms, stop));
    }
    for (int i = 0; i < config.detail_pool; ++i) {
        vocab.details.push_back(make_concept(next_id, config.synonyms, stop));
    }

    Rng rng = derived_rng(seed, static_cast<std::uint64_t>(dish_index));
    std::vector<LatentStep> steps(static_cast<std::size_t>(config.latent_steps));
    for (auto& step : steps) {
        step.verb = uniform_index(rng, vocab.verbs.size());
        step.noun_a = uniform_index(rng, vocab.nouns.size());
        do {
            step.noun_b = uniform_index(rng, vocab.nouns.size());
        } while (step.noun_b == step.noun_a);
        while (static_cast<int>(step.details.size()) < config.detail_words) {
            const std::size_t d = uniform_index(rng, vocab.details.size());
            if (std::find(step.details.begin(), step.details.end(), d) == step.details.end()) {
                step.details.push_back(d);
            }
        }
    }

    SynthCorpus corpus;
    for (const auto& c : vocab.verbs) {
        for (const auto& w : c.forms) {
            corpus.lexicon.add(w, PosLexicon::Verb);
        }
    }
    for (const auto& c : vocab.nouns) {
        for (const auto& w : c.forms) {
            corpus.lexicon.add(w, PosLexicon::Noun);
        }
    }
    for (const auto& c : vocab.details) {
        for (const auto& w : c.forms) {
            corpus.lexicon.add(w, PosLexicon::Other);
        }
    }

    std::set<std::size_t> used_nouns;
    for (const auto& step : steps) {
        used_nouns.insert({step.noun_a, step.noun_b});
    }
    std::vector<std::string> ingredients;
    for (std::size_t n : used_nouns) {
        ingredients.push_back(vocab.nouns[n].forms.front());
    }

    const std::string dish_id = "dish" + std::to_string(dish_index);
    const int total = config.text_recipes + config.video_recipes;
    for (int r = 0; r < total; ++r) {
        const bool video = r >= config.text_recipes;
        Recipe recipe;
        recipe.dish_id = dish_id;
        recipe.modality = video ? Modality::Video : Modality::Text;
        recipe.recipe_id = "d" + std::to_string(dish_index) + (video ? "_v" : "_t") +
                           std::to_string(video ? r - config.text_recipes : r);
        recipe.title = dish_id;
        if (video) {
            recipe.source_url = "https://video.example.org/watch?v=" + recipe.recipe_id;
        } else {
            recipe.ingredients = ingredients;
        }

        std::vector<std::vector<int>> latent;
        double clock = 0.0;
        auto push = [&](std::string text, std::vector<int> covered, std::optional<ChatLabel> chat) {
            Instruction ins;
            ins.index = static_cast<int>(recipe.instructions.size());
            ins.text = std::move(text);
            if (video) {
                ins.span = TimeSpan{clock, clock + 4.0};
                ins.chat_label = chat;
                clock += 5.0;
            }
            recipe.instructions.push_back(std::move(ins));
            latent.push_back(std::move(covered));
        };
        for (auto& item : render_recipe(vocab, steps, config, rng)) {
            push(std::move(item.text), std::move(item.latent), ChatLabel::Content);
            if (video && bernoulli(rng, config.chat_rate)) {
                push(sentence({kChatLines[uniform_index(rng, std::size(kChatLines))]}), {}, ChatLabel::Chat);
            }
        }
        corpus.recipes.push_back(std::move(recipe));
        corpus.latent.push_back(std::move(latent));
    }

    for (std::size_t a = 0; a < corpus.recipes.size(); ++a) {
        for (std::size_t b = 0; b < corpus.recipes.size(); ++b) {
            if (a == b) {
                continue;
            }
            ReferenceAlignment ref;
            ref.source_id = corpus.recipes[a].recipe_id;
            ref.target_id = corpus.recipes[b].recipe_id;
            std::vector<std::vector<int>> annotator;
            for (int l : ground_truth_labels(corpus.latent[a], corpus.latent[b])) {
                annotator.push_back({l});
            }
            ref.annotators.push_back(std::move(annotator));
            corpus.references.push_back(std::move(ref));
        }
    }
    return corpus;
}

SynthCorpus synth_corpus(const SynthConfig& config, std::uint64_t seed)
{
    SynthCorpus all;
    for (int d = 0; d < config.dishes; ++d) {
        SynthCorpus one = synth_dish(config, seed, d);
        std::move(one.recipes.begin(), one.recipes.end(), std::back_inserter(all.recipes));
        std::move(one.latent.begin(), one.latent.end(), std::back_inserter(all.latent));
        std::move(one.references.begin(), one.references.end(), std::back_inserter(all.references));
        all.lexicon.merge(one.lexicon);
    }
    return all;
}

}  // namespace procalign
