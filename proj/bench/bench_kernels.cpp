// Serial reference kernels against their OpenMP versions on a synthetic corpus.
// Usage: bench_kernels [dishes] [repeats]

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>

#include "procalign/em.hpp"
#include "procalign/emission.hpp"
#include "procalign/evaluation.hpp"
#include "procalign/io_util.hpp"
#include "procalign/pairing.hpp"
#include "procalign/pipeline.hpp"
#include "procalign/random.hpp"
#include "procalign/synth.hpp"

using namespace procalign;

namespace {

double best_of(int repeats, const std::function<void()>& fn)
{
    double best = 1e300;
    for (int r = 0; r < repeats; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        fn();
        best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    }
    return best;
}

void row(const char* name, double serial, double parallel, bool same)
{
    std::printf("%-20s serial %9.4f s  parallel %9.4f s  speedup %5.2fx  %s\n", name, serial, parallel,
                serial / parallel, same ? "identical" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv)
{
    SynthConfig config;
    config.dishes = argc > 1 ? std::atoi(argv[1]) : 40;
    config.text_recipes = 8;
    config.latent_steps = 12;
    const int repeats = argc > 2 ? std::atoi(argv[2]) : 3;

    const auto corpus = synth_corpus(config, 7);
    std::vector<RecipePair> pairs;
    for (const auto& dish : group_by_dish(corpus.recipes)) {
        auto p = generate_pairs(dish, PruneConfig{}, default_stop_words());
        pairs.insert(pairs.end(), p.begin(), p.end());
    }
    const auto directed = directed_pairs(pairs, true);
    const RecipeIndex index(corpus.recipes);
    auto training = prepare_training_corpus(directed, PairKind::TextText, index, TokenizerSettings{}, MinCounts{});
    std::printf("%d threads, %zu training pairs, vocabulary %zu\n", omp_get_max_threads(), training.pairs.size(),
                training.source_vocab.size());

    EmOptions options;
    options.execution = Execution::Serial;
    auto model = em_train(training.pairs, training.source_vocab, training.target_vocab, options);

    SufficientStats s_ser, s_par;
    const double es = best_of(repeats, [&] { s_ser = expectation_step(training.pairs, model, Execution::Serial); });
    const double ep = best_of(repeats, [&] { s_par = expectation_step(training.pairs, model, Execution::Parallel); });
    row("E-step", es, ep, s_ser.lexical == s_par.lexical && s_ser.jump == s_par.jump);

    // the largest pair gives the emission kernel the most work
    const auto& big = *std::max_element(training.pairs.begin(), training.pairs.end(), [](const auto& a, const auto& b) {
        return a.source.size() * a.target.size() < b.source.size() * b.target.size();
    });
    std::vector<double> m_ser, m_par;
    const double ms = best_of(repeats * 20, [&] { m_ser = emission_matrix(big, model.lexical, 1.0, Execution::Serial); });
    const double mp = best_of(repeats * 20, [&] { m_par = emission_matrix(big, model.lexical, 1.0, Execution::Parallel); });
    row("emission matrix", ms, mp, m_ser == m_par);

    Rng rng(3);
    std::vector<double> a(2000), b(2000);
    for (auto& x : a) x = uniform01(rng);
    for (auto& x : b) x = uniform01(rng);
    double p_ser = 0, p_par = 0;
    const double bs = best_of(repeats, [&] { p_ser = paired_bootstrap(a, b, 10000, 1, Execution::Serial); });
    const double bp = best_of(repeats, [&] { p_par = paired_bootstrap(a, b, 10000, 1, Execution::Parallel); });
    row("paired bootstrap", bs, bp, p_ser == p_par);

    double ts = 0, tp = 0;
    AlignmentModel m_s, m_p;
    ts = best_of(1, [&] { m_s = em_train(training.pairs, training.source_vocab, training.target_vocab, options); });
    options.execution = Execution::Parallel;
    tp = best_of(1, [&] { m_p = em_train(training.pairs, training.source_vocab, training.target_vocab, options); });
    const auto ps = m_s.lexical.probs(), pp = m_p.lexical.probs();
    row("EM training", ts, tp, std::equal(ps.begin(), ps.end(), pp.begin(), pp.end()));
    return 0;
}
