#include "procalign/emission.hpp"

#include <cmath>

#include "local_table.hpp"
#include "procalign/error.hpp"

namespace procalign {

namespace {

double local_emission(const detail::LocalTable& t, const std::vector<std::size_t>& source,
                      const std::vector<std::size_t>& target, double log_epsilon)
{
    const double log_i = std::log(static_cast<double>(target.size()));
    double total = log_epsilon - static_cast<double>(source.size()) * log_i;
    for (std::size_t f : source) {
        double s = 0.0;
        for (std::size_t e : target) {
            s += t.p(e, f);
        }
        total += std::log(s);
    }
    return total;
}

}  // namespace

double emission_logprob(std::span<const WordId> source, std::span<const WordId> target,
                        const LexicalTable& lexical, double epsilon)
{
    if (source.empty() || target.empty()) {
        throw DegenerateInput("emission needs non-empty source and target sentences");
    }
    const double log_i = std::log(static_cast<double>(target.size()));
    double total = std::log(epsilon) - static_cast<double>(source.size()) * log_i;
    for (WordId f : source) {
        double s = 0.0;
        for (WordId e : target) {
            s += lexical.prob(e, f);
        }
        total += std::log(s);
    }
    return total;
}

std::vector<double> emission_matrix(const EncodedPair& pair, const LexicalTable& lexical,
                                    double epsilon, Execution exec)
{
    const std::size_t rows = pair.source.size();
    const std::size_t cols = pair.target.size();
    if (rows == 0 || cols == 0) {
        throw DegenerateInput("pair has an empty instruction list");
    }
    for (const auto& s : pair.source) {
        if (s.empty()) {
            throw DegenerateInput("empty source sentence");
        }
    }
    for (const auto& s : pair.target) {
        if (s.empty()) {
            throw DegenerateInput("empty target sentence");
        }
    }
    const auto table = detail::make_local_table(pair, lexical);
    const double log_epsilon = std::log(epsilon);
    std::vector<double> out(rows * cols);
    if (exec == Execution::Serial) {
        for (std::size_t m = 0; m < rows; ++m) {
            for (std::size_t n = 0; n < cols; ++n) {
                out[m * cols + n] = local_emission(table, table.source[m], table.target[n], log_epsilon);
            }
        }
    } else {
        const auto total = static_cast<long long>(rows * cols);
#pragma omp parallel for schedule(static)
        for (long long k = 0; k < total; ++k) {
            auto m = static_cast<std::size_t>(k) / cols;
            auto n = static_cast<std::size_t>(k) % cols;
            out[static_cast<std::size_t>(k)] =
                local_emission(table, table.source[m], table.target[n], log_epsilon);
        }
    }
    return out;
}

}  // namespace procalign
