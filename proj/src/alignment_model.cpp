#include "procalign/alignment_model.hpp"

#include <algorithm>
#include <numeric>

#include "procalign/error.hpp"

namespace procalign {

void TrainSchedule::validate() const
{
    if (stages.empty()) {
        throw InvalidConfig("training schedule has no stages");
    }
    int previous = 0;
    for (const auto& s : stages) {
        if (s.window < 1) {
            throw InvalidConfig("jump window must be positive");
        }
        if (s.window < previous) {
            throw InvalidConfig("jump windows must be non-decreasing across stages");
        }
        if (s.iterations < 1) {
            throw InvalidConfig("every stage needs at least one iteration");
        }
        previous = s.window;
    }
}

LexicalTable LexicalTable::uniform_over(std::vector<std::pair<WordId, WordId>> entries)
{
    std::sort(entries.begin(), entries.end());
    entries.erase(std::unique(entries.begin(), entries.end()), entries.end());
    std::vector<std::tuple<WordId, WordId, double>> triplets;
    triplets.reserve(entries.size());
    std::size_t i = 0;
    while (i < entries.size()) {
        std::size_t k = i;
        while (k < entries.size() && entries[k].first == entries[i].first) {
            ++k;
        }
        double p = 1.0 / static_cast<double>(k - i);
        for (; i < k; ++i) {
            triplets.emplace_back(entries[i].first, entries[i].second, p);
        }
    }
    return from_triplets(std::move(triplets));
}

LexicalTable LexicalTable::from_triplets(std::vector<std::tuple<WordId, WordId, double>> triplets)
{
    std::sort(triplets.begin(), triplets.end(), [](const auto& a, const auto& b) {
        return std::tie(std::get<0>(a), std::get<1>(a)) < std::tie(std::get<0>(b), std::get<1>(b));
    });
    LexicalTable t;
    WordId rows = triplets.empty() ? 0 : std::get<0>(triplets.back()) + 1;
    t.row_start_.assign(static_cast<std::size_t>(rows) + 1, 0);
    t.cols_.reserve(triplets.size());
    t.probs_.reserve(triplets.size());
    for (std::size_t i = 0; i < triplets.size(); ++i) {
        auto [e, f, p] = triplets[i];
        if (i > 0 && std::get<0>(triplets[i - 1]) == e && std::get<1>(triplets[i - 1]) == f) {
            throw InvalidArgument("duplicate lexical entry");
        }
        if (!(p >= 0.0 && p <= 1.0)) {
            throw InvalidArgument("lexical probability outside [0, 1]");
        }
        ++t.row_start_[static_cast<std::size_t>(e) + 1];
        t.cols_.push_back(f);
        t.probs_.push_back(p);
    }
    std::partial_sum(t.row_start_.begin(), t.row_start_.end(), t.row_start_.begin());
    return t;
}

std::optional<std::size_t> LexicalTable::position(WordId e, WordId f) const
{
    if (e >= rows()) {
        return std::nullopt;
    }
    auto begin = cols_.begin() + static_cast<std::ptrdiff_t>(row_start_[e]);
    auto end = cols_.begin() + static_cast<std::ptrdiff_t>(row_start_[e + 1]);
    auto it = std::lower_bound(begin, end, f);
    if (it == end || *it != f) {
        return std::nullopt;
    }
    return static_cast<std::size_t>(it - cols_.begin());
}

double LexicalTable::prob(WordId e, WordId f) const
{
    auto pos = position(e, f);
    return pos ? probs_[*pos] : kLexicalFloor;
}

std::span<const WordId> LexicalTable::row_cols(WordId e) const
{
    if (e >= rows()) {
        return {};
    }
    return {cols_.data() + row_start_[e], row_start_[e + 1] - row_start_[e]};
}

std::span<const double> LexicalTable::row_probs(WordId e) const
{
    if (e >= rows()) {
        return {};
    }
    return {probs_.data() + row_start_[e], row_start_[e + 1] - row_start_[e]};
}

std::span<double> LexicalTable::row_probs(WordId e)
{
    if (e >= rows()) {
        return {};
    }
    return {probs_.data() + row_start_[e], row_start_[e + 1] - row_start_[e]};
}

void LexicalTable::normalize_from_counts(std::span<const double> counts)
{
    if (counts.size() != probs_.size()) {
        throw InvalidArgument("count vector does not match the lexical table");
    }
    for (std::size_t e = 0; e < rows(); ++e) {
        double total = 0.0;
        for (std::size_t k = row_start_[e]; k < row_start_[e + 1]; ++k) {
            total += counts[k];
        }
        if (total <= 0.0) {
            continue;
        }
        for (std::size_t k = row_start_[e]; k < row_start_[e + 1]; ++k) {
            probs_[k] = counts[k] / total;
        }
    }
}

std::vector<std::tuple<WordId, WordId, double>> LexicalTable::triplets() const
{
    std::vector<std::tuple<WordId, WordId, double>> out;
    out.reserve(cols_.size());
    for (std::size_t e = 0; e < rows(); ++e) {
        for (std::size_t k = row_start_[e]; k < row_start_[e + 1]; ++k) {
            out.emplace_back(static_cast<WordId>(e), cols_[k], probs_[k]);
        }
    }
    return out;
}

JumpTable::JumpTable(int window)
    : window_(window), probs_(static_cast<std::size_t>(2 * window + 1), 1.0 / (2 * window + 1))
{
    if (window < 0) {
        throw InvalidArgument("negative jump window");
    }
}

JumpTable::JumpTable(int window, std::vector<double> probs) : window_(window), probs_(std::move(probs))
{
    if (window < 0 || probs_.size() != static_cast<std::size_t>(2 * window + 1)) {
        throw InvalidArgument("jump table size does not match its window");
    }
    for (double p : probs_) {
        if (!(p >= 0.0 && p <= 1.0)) {
            throw InvalidArgument("jump probability outside [0, 1]");
        }
    }
}

double JumpTable::operator()(int offset) const
{
    if (offset < -window_ || offset > window_) {
        return 0.0;
    }
    return probs_[static_cast<std::size_t>(offset + window_)];
}

void JumpTable::widen(int new_window, double floor)
{
    if (new_window < window_) {
        throw InvalidArgument("cannot shrink the jump window");
    }
    if (new_window == window_) {
        return;
    }
    std::vector<double> wider(static_cast<std::size_t>(2 * new_window + 1), floor);
    for (int d = -window_; d <= window_; ++d) {
        wider[static_cast<std::size_t>(d + new_window)] = (*this)(d);
    }
    double total = std::accumulate(wider.begin(), wider.end(), 0.0);
    for (auto& p : wider) {
        p /= total;
    }
    window_ = new_window;
    probs_ = std::move(wider);
}

std::vector<double> JumpTable::transition_matrix(std::size_t states) const
{
    std::vector<double> t(states * states, 0.0);
    const auto n_states = static_cast<long long>(states);
    for (long long n = 0; n < n_states; ++n) {
        long long lo = std::max(-static_cast<long long>(window_), -n);
        long long hi = std::min(static_cast<long long>(window_), n_states - 1 - n);
        double z = 0.0;
        for (long long d = lo; d <= hi; ++d) {
            z += (*this)(static_cast<int>(d));
        }
        double* row = t.data() + n * n_states;
        for (long long d = lo; d <= hi; ++d) {
            row[n + d] = z > 0.0 ? (*this)(static_cast<int>(d)) / z : 1.0 / static_cast<double>(hi - lo + 1);
        }
    }
    return t;
}

}  // namespace procalign
