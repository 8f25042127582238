#include "procalign/em.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "local_table.hpp"
#include "procalign/emission.hpp"
#include "procalign/error.hpp"
#include "procalign/forward_backward.hpp"

namespace procalign {

namespace {

/// E-step contribution of a single pair, with lexical counts kept sparse.
struct PairStats {
    std::vector<std::pair<std::size_t, double>> lexical;
    std::vector<double> jump;
    std::map<std::pair<int, int>, double> leaving;
    double log_likelihood = 0.0;
};

PairStats pair_statistics(const EncodedPair& pair, const AlignmentModel& model)
{
    const auto table = detail::make_local_table(pair, model.lexical);
    const std::size_t M = pair.source.size();
    const std::size_t N = pair.target.size();
    const int W = model.jump.window();

    auto log_e = emission_matrix(pair, model.lexical, model.epsilon, Execution::Serial);
    const Posteriors post = forward_backward(log_e, M, N, model.jump, true);

    PairStats out;
    out.log_likelihood = post.log_likelihood;

    // Lexical counts: gamma(m, n) spread over the target words of n in
    // proportion to p(f | e).
    std::vector<double> counts(table.prob.size(), 0.0);
    std::vector<double> denom;
    for (std::size_t m = 0; m < M; ++m) {
        const auto& src = table.source[m];
        for (std::size_t n = 0; n < N; ++n) {
            const double g = post.gamma(m, n);
            if (g == 0.0) {
                continue;
            }
            const auto& tgt = table.target[n];
            for (std::size_t f : src) {
                double s = 0.0;
                for (std::size_t e : tgt) {
                    s += table.p(e, f);
                }
                if (s == 0.0) {
                    continue;
                }
                const double w = g / s;
                for (std::size_t e : tgt) {
                    counts[e * table.width() + f] += w * table.p(e, f);
                }
            }
        }
    }
    for (std::size_t k = 0; k < counts.size(); ++k) {
        if (counts[k] != 0.0 && table.entry[k] != detail::kNoEntry) {
            out.lexical.emplace_back(table.entry[k], counts[k]);
        }
    }

    out.jump.assign(static_cast<std::size_t>(2 * W + 1), 0.0);
    const auto ns = static_cast<long long>(N);
    for (std::size_t m = 0; m + 1 < M; ++m) {
        for (long long n = 0; n < ns; ++n) {
            const int lo = static_cast<int>(std::max(-static_cast<long long>(W), -n));
            const int hi = static_cast<int>(std::min(static_cast<long long>(W), ns - 1 - n));
            for (int d = lo; d <= hi; ++d) {
                out.jump[static_cast<std::size_t>(d + W)] +=
                    post.xi(m, static_cast<std::size_t>(n), static_cast<std::size_t>(n + d));
            }
            out.leaving[{lo, hi}] += post.gamma(m, static_cast<std::size_t>(n));
        }
    }
    return out;
}

void merge_into(SufficientStats& total, const PairStats& part)
{
    for (const auto& [pos, c] : part.lexical) {
        total.lexical[pos] += c;
    }
    for (std::size_t d = 0; d < part.jump.size(); ++d) {
        total.jump[d] += part.jump[d];
    }
    for (const auto& [key, c] : part.leaving) {
        total.leaving[key] += c;
    }
    total.log_likelihood += part.log_likelihood;
}

constexpr std::size_t kChunk = 256;

}  // namespace

void SufficientStats::merge(const SufficientStats& other)
{
    if (lexical.size() != other.lexical.size() || jump.size() != other.jump.size()) {
        throw InvalidArgument("cannot merge statistics of different shapes");
    }
    for (std::size_t k = 0; k < lexical.size(); ++k) {
        lexical[k] += other.lexical[k];
    }
    for (std::size_t d = 0; d < jump.size(); ++d) {
        jump[d] += other.jump[d];
    }
    for (const auto& [key, c] : other.leaving) {
        leaving[key] += c;
    }
    log_likelihood += other.log_likelihood;
}

LexicalTable initial_lexical_table(std::span<const EncodedPair> pairs)
{
    std::vector<std::pair<WordId, WordId>> entries;
    for (const auto& pair : pairs) {
        auto targets = detail::distinct_words(pair.target);
        auto sources = detail::distinct_words(pair.source);
        for (WordId e : targets) {
            for (WordId f : sources) {
                entries.emplace_back(e, f);
            }
        }
        // Keep memory bounded on large corpora.
        if (entries.size() > (1u << 22)) {
            std::sort(entries.begin(), entries.end());
            entries.erase(std::unique(entries.begin(), entries.end()), entries.end());
        }
    }
    return LexicalTable::uniform_over(std::move(entries));
}

SufficientStats expectation_step(std::span<const EncodedPair> pairs, const AlignmentModel& model,
                                 Execution exec)
{
    SufficientStats total;
    total.lexical.assign(model.lexical.entries(), 0.0);
    total.jump.assign(static_cast<std::size_t>(2 * model.jump.window() + 1), 0.0);

    if (exec == Execution::Serial) {
        for (const auto& pair : pairs) {
            merge_into(total, pair_statistics(pair, model));
        }
        return total;
    }

    std::vector<PairStats> parts;
    for (std::size_t begin = 0; begin < pairs.size(); begin += kChunk) {
        const std::size_t end = std::min(pairs.size(), begin + kChunk);
        parts.assign(end - begin, PairStats{});
        const auto count = static_cast<long long>(end - begin);
        bool failed = false;
        std::string failure;
#pragma omp parallel for schedule(dynamic, 1)
        for (long long k = 0; k < count; ++k) {
            try {
                parts[static_cast<std::size_t>(k)] =
                    pair_statistics(pairs[begin + static_cast<std::size_t>(k)], model);
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
        for (const auto& part : parts) {
            merge_into(total, part);
        }
    }
    return total;
}

void maximization_step(AlignmentModel& model, const SufficientStats& stats, int jump_update_iterations)
{
    model.lexical.normalize_from_counts(stats.lexical);

    const int W = model.jump.window();
    if (stats.jump.size() != static_cast<std::size_t>(2 * W + 1)) {
        throw InvalidArgument("jump statistics do not match the model window");
    }
    const double total = std::accumulate(stats.jump.begin(), stats.jump.end(), 0.0);
    if (!(total > 0.0)) {
        return;  // no transitions observed (every source has one instruction)
    }

    std::vector<double> theta(model.jump.probs().begin(), model.jump.probs().end());
    std::vector<double> next(theta.size());
    for (int it = 0; it < jump_update_iterations; ++it) {
        std::vector<double> denom(theta.size(), 0.0);
        for (const auto& [range, leaving] : stats.leaving) {
            double z = 0.0;
            for (int d = range.first; d <= range.second; ++d) {
                z += theta[static_cast<std::size_t>(d + W)];
            }
            if (!(z > 0.0)) {
                continue;
            }
            for (int d = range.first; d <= range.second; ++d) {
                denom[static_cast<std::size_t>(d + W)] += leaving / z;
            }
        }
        double sum = 0.0;
        for (std::size_t d = 0; d < theta.size(); ++d) {
            next[d] = denom[d] > 0.0 ? stats.jump[d] / denom[d] : theta[d];
            sum += next[d];
        }
        double change = 0.0;
        for (std::size_t d = 0; d < theta.size(); ++d) {
            next[d] /= sum;
            change = std::max(change, std::abs(next[d] - theta[d]));
        }
        theta.swap(next);
        if (change < 1e-15) {
            break;
        }
    }
    model.jump = JumpTable(W, std::move(theta));
}

double corpus_log_likelihood(std::span<const EncodedPair> pairs, const AlignmentModel& model,
                             Execution exec)
{
    std::vector<double> per_pair(pairs.size(), 0.0);
    const auto count = static_cast<long long>(pairs.size());
    if (exec == Execution::Serial) {
        for (long long k = 0; k < count; ++k) {
            per_pair[static_cast<std::size_t>(k)] =
                forward_backward(pairs[static_cast<std::size_t>(k)], model, false).log_likelihood;
        }
    } else {
        bool failed = false;
        std::string failure;
#pragma omp parallel for schedule(dynamic, 1)
        for (long long k = 0; k < count; ++k) {
            try {
                per_pair[static_cast<std::size_t>(k)] =
                    forward_backward(pairs[static_cast<std::size_t>(k)], model, false).log_likelihood;
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
    }
    double total = 0.0;
    for (double v : per_pair) {
        total += v;
    }
    return total;
}

AlignmentModel em_train(std::span<const EncodedPair> pairs, Vocabulary source_vocab,
                        Vocabulary target_vocab, const EmOptions& options)
{
    if (pairs.empty()) {
        throw NoPairs("EM training needs at least one recipe pair");
    }
    options.schedule.validate();

    AlignmentModel model;
    model.source_vocab = std::move(source_vocab);
    model.target_vocab = std::move(target_vocab);
    model.schedule = options.schedule;
    model.lexical = initial_lexical_table(pairs);
    model.jump = JumpTable(options.schedule.stages.front().window);

    for (std::size_t s = 0; s < options.schedule.stages.size(); ++s) {
        const auto& stage = options.schedule.stages[s];
        if (stage.window > model.jump.window()) {
            model.jump.widen(stage.window, options.widen_floor);
        }
        for (int it = 0; it < stage.iterations; ++it) {
            auto stats = expectation_step(pairs, model, options.execution);
            model.trace.push_back({static_cast<int>(s), it, stage.window, stats.log_likelihood});
            maximization_step(model, stats, options.jump_update_iterations);
        }
        model.trace.push_back({static_cast<int>(s), stage.iterations, stage.window,
                               corpus_log_likelihood(pairs, model, options.execution)});
    }
    return model;
}

}  // namespace procalign
