#include "procalign/forward_backward.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "procalign/emission.hpp"
#include "procalign/error.hpp"

namespace procalign {

Posteriors::Posteriors(std::size_t sources, std::size_t states, int window, bool with_xi)
    : sources_(sources), states_(states), window_(window), with_xi_(with_xi),
      gamma_(sources * states, 0.0)
{
    if (with_xi && sources > 1) {
        xi_.assign((sources - 1) * states * static_cast<std::size_t>(2 * window + 1), 0.0);
    }
}

double Posteriors::xi(std::size_t m, std::size_t n, std::size_t n2) const
{
    long long d = static_cast<long long>(n2) - static_cast<long long>(n);
    if (!with_xi_ || m + 1 >= sources_ || d < -window_ || d > window_) {
        return 0.0;
    }
    const auto band = static_cast<std::size_t>(2 * window_ + 1);
    return xi_[(m * states_ + n) * band + static_cast<std::size_t>(d + window_)];
}

double& Posteriors::xi_band(std::size_t m, std::size_t n, int offset)
{
    const auto band = static_cast<std::size_t>(2 * window_ + 1);
    return xi_[(m * states_ + n) * band + static_cast<std::size_t>(offset + window_)];
}

Posteriors forward_backward(std::span<const double> log_emissions, std::size_t sources,
                            std::size_t states, const JumpTable& jump, bool with_xi)
{
    if (sources == 0 || states == 0) {
        throw DegenerateInput("forward-backward needs at least one source and one target instruction");
    }
    if (log_emissions.size() != sources * states) {
        throw InvalidArgument("emission matrix has the wrong shape");
    }
    const std::size_t M = sources;
    const std::size_t N = states;
    const int W = jump.window();
    const auto ns = static_cast<long long>(N);

    // Emissions rescaled per row so the largest entry is 1.
    std::vector<double> emit(M * N);
    double log_shift = 0.0;
    for (std::size_t m = 0; m < M; ++m) {
        const double* row = log_emissions.data() + m * N;
        double top = *std::max_element(row, row + N);
        if (!std::isfinite(top)) {
            throw DegenerateInput("source instruction " + std::to_string(m) + " has zero emission probability");
        }
        log_shift += top;
        for (std::size_t n = 0; n < N; ++n) {
            emit[m * N + n] = std::exp(row[n] - top);
        }
    }
    const std::vector<double> trans = jump.transition_matrix(N);
    auto lo_of = [&](long long n) { return std::max(-static_cast<long long>(W), -n); };
    auto hi_of = [&](long long n) { return std::min(static_cast<long long>(W), ns - 1 - n); };

    std::vector<double> alpha(M * N, 0.0);
    std::vector<double> scale(M, 0.0);
    for (std::size_t n = 0; n < N; ++n) {
        alpha[n] = emit[n] / static_cast<double>(N);
        scale[0] += alpha[n];
    }
    for (std::size_t m = 0;; ++m) {
        if (!(scale[m] > 0.0)) {
            throw DegenerateInput("pair has zero likelihood at source instruction " + std::to_string(m));
        }
        for (std::size_t n = 0; n < N; ++n) {
            alpha[m * N + n] /= scale[m];
        }
        if (m + 1 == M) {
            break;
        }
        const double* prev = alpha.data() + m * N;
        double* next = alpha.data() + (m + 1) * N;
        for (long long n = 0; n < ns; ++n) {
            const double a = prev[n];
            if (a == 0.0) {
                continue;
            }
            for (long long d = lo_of(n); d <= hi_of(n); ++d) {
                next[n + d] += a * trans[static_cast<std::size_t>(n * ns + n + d)];
            }
        }
        for (std::size_t n = 0; n < N; ++n) {
            next[n] *= emit[(m + 1) * N + n];
            scale[m + 1] += next[n];
        }
    }

    std::vector<double> beta(M * N, 0.0);
    std::fill(beta.begin() + static_cast<std::ptrdiff_t>((M - 1) * N), beta.end(), 1.0);
    for (std::size_t m = M - 1; m-- > 0;) {
        const double* after = beta.data() + (m + 1) * N;
        const double* e = emit.data() + (m + 1) * N;
        for (long long n = 0; n < ns; ++n) {
            double s = 0.0;
            for (long long d = lo_of(n); d <= hi_of(n); ++d) {
                s += trans[static_cast<std::size_t>(n * ns + n + d)] * e[n + d] * after[n + d];
            }
            beta[m * N + static_cast<std::size_t>(n)] = s / scale[m + 1];
        }
    }

    Posteriors post(M, N, W, with_xi);
    double log_likelihood = log_shift;
    for (std::size_t m = 0; m < M; ++m) {
        log_likelihood += std::log(scale[m]);
        double total = 0.0;
        for (std::size_t n = 0; n < N; ++n) {
            total += alpha[m * N + n] * beta[m * N + n];
        }
        for (std::size_t n = 0; n < N; ++n) {
            post.gamma(m, n) = alpha[m * N + n] * beta[m * N + n] / total;
        }
    }
    post.log_likelihood = log_likelihood;

    if (with_xi) {
        for (std::size_t m = 0; m + 1 < M; ++m) {
            const double* e = emit.data() + (m + 1) * N;
            const double* after = beta.data() + (m + 1) * N;
            for (long long n = 0; n < ns; ++n) {
                const double a = alpha[m * N + static_cast<std::size_t>(n)] / scale[m + 1];
                for (long long d = lo_of(n); d <= hi_of(n); ++d) {
                    post.xi_band(m, static_cast<std::size_t>(n), static_cast<int>(d)) =
                        a * trans[static_cast<std::size_t>(n * ns + n + d)] * e[n + d] * after[n + d];
                }
            }
        }
    }
    return post;
}

Posteriors forward_backward(const EncodedPair& pair, const AlignmentModel& model, bool with_xi,
                            Execution exec)
{
    auto log_e = emission_matrix(pair, model.lexical, model.epsilon, exec);
    return forward_backward(log_e, pair.source.size(), pair.target.size(), model.jump, with_xi);
}

}  // namespace procalign
