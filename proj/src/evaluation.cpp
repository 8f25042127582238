#include "procalign/evaluation.hpp"

#include <algorithm>
#include <map>

#include "procalign/error.hpp"
#include "procalign/random.hpp"

namespace procalign {

PairScore weighted_prf(std::span<const int> predicted, std::span<const int> reference)
{
    if (predicted.size() != reference.size()) {
        throw LengthMismatch("predicted has " + std::to_string(predicted.size()) + " labels, reference " +
                             std::to_string(reference.size()));
    }
    if (reference.empty()) {
        throw EmptyInput("cannot score an empty alignment");
    }
    std::map<int, std::size_t> predicted_count;
    std::map<int, std::size_t> correct;
    PairScore score;
    for (std::size_t m = 0; m < reference.size(); ++m) {
        ++score.support[reference[m]];
        ++predicted_count[predicted[m]];
        if (predicted[m] == reference[m]) {
            ++correct[reference[m]];
        }
    }
    const auto total = static_cast<double>(reference.size());
    for (const auto& [label, support] : score.support) {
        const auto c = static_cast<double>(correct[label]);
        const auto pc = predicted_count.count(label) ? static_cast<double>(predicted_count[label]) : 0.0;
        const double p = pc > 0.0 ? c / pc : 0.0;
        const double r = c / static_cast<double>(support);
        const double f = p + r > 0.0 ? 2.0 * p * r / (p + r) : 0.0;
        const double w = static_cast<double>(support) / total;
        score.precision += w * p;
        score.recall += w * r;
        score.f1 += w * f;
    }
    return score;
}

nlohmann::json reference_to_json(const ReferenceAlignment& r)
{
    return nlohmann::json{{"source_id", r.source_id}, {"target_id", r.target_id}, {"annotations", r.annotators}};
}

ReferenceAlignment reference_from_json(const nlohmann::json& j)
{
    ReferenceAlignment r;
    r.source_id = j.at("source_id").get<std::string>();
    r.target_id = j.at("target_id").get<std::string>();
    r.annotators = j.at("annotations").get<std::vector<std::vector<std::vector<int>>>>();
    if (r.annotators.empty()) {
        throw InvalidArgument("reference " + r.source_id + "->" + r.target_id + " has no annotators");
    }
    for (const auto& a : r.annotators) {
        if (a.size() != r.annotators.front().size()) {
            throw InvalidArgument("annotators disagree on the number of source instructions");
        }
    }
    return r;
}

std::vector<int> consensus(const ReferenceAlignment& refs)
{
    if (refs.annotators.empty()) {
        throw EmptyInput("consensus needs at least one annotator");
    }
    const std::size_t M = refs.size();
    std::vector<int> out(M, 0);
    for (std::size_t m = 0; m < M; ++m) {
        std::map<int, int> votes;
        for (const auto& annotator : refs.annotators) {
            std::vector<int> labels = annotator[m];
            std::sort(labels.begin(), labels.end());
            labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
            for (int l : labels) {
                ++votes[l];
            }
        }
        if (votes.empty()) {
            throw InvalidArgument("instruction " + std::to_string(m) + " has no reference label");
        }
        int top = 0;
        for (const auto& [l, v] : votes) {
            top = std::max(top, v);
        }
        bool chosen = false;
        for (const auto& annotator : refs.annotators) {
            for (int l : annotator[m]) {
                if (votes[l] == top) {
                    out[m] = l;
                    chosen = true;
                    break;
                }
            }
            if (chosen) {
                break;
            }
        }
    }
    return out;
}

PairScore score_pair(std::span<const int> predicted, const ReferenceAlignment& refs, ReferenceMode mode)
{
    if (mode == ReferenceMode::Consensus) {
        auto ref = consensus(refs);
        return weighted_prf(predicted, ref);
    }
    std::vector<PairScore> per_annotator;
    for (const auto& annotator : refs.annotators) {
        std::vector<int> ref;
        ref.reserve(annotator.size());
        for (const auto& labels : annotator) {
            if (labels.empty()) {
                throw InvalidArgument("annotator left an instruction unlabeled");
            }
            ref.push_back(labels.front());
        }
        per_annotator.push_back(weighted_prf(predicted, ref));
    }
    return aggregate(per_annotator);
}

PairScore aggregate(std::span<const PairScore> scores)
{
    if (scores.empty()) {
        throw EmptyInput("cannot aggregate zero pair scores");
    }
    PairScore out;
    for (const auto& s : scores) {
        out.precision += s.precision;
        out.recall += s.recall;
        out.f1 += s.f1;
        for (const auto& [label, count] : s.support) {
            out.support[label] += count;
        }
    }
    const auto n = static_cast<double>(scores.size());
    out.precision /= n;
    out.recall /= n;
    out.f1 /= n;
    return out;
}

double paired_bootstrap(std::span<const double> system_a, std::span<const double> system_b,
                        std::size_t resamples, std::uint64_t seed, Execution exec)
{
    if (system_a.size() != system_b.size()) {
        throw LengthMismatch("paired bootstrap needs equal-length score lists");
    }
    if (system_a.empty()) {
        throw EmptyInput("paired bootstrap needs at least one pair");
    }
    if (resamples < 1000) {
        throw InvalidArgument("paired bootstrap needs at least 1000 resamples");
    }
    const std::size_t n = system_a.size();
    std::vector<char> a_not_better(resamples, 0);
    auto run = [&](std::size_t r) {
        Rng rng = derived_rng(seed, r);
        double diff = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            const std::size_t i = uniform_index(rng, n);
            diff += system_a[i] - system_b[i];
        }
        a_not_better[r] = diff <= 0.0 ? 1 : 0;
    };
    if (exec == Execution::Serial) {
        for (std::size_t r = 0; r < resamples; ++r) {
            run(r);
        }
    } else {
        const auto count = static_cast<long long>(resamples);
#pragma omp parallel for schedule(static)
        for (long long r = 0; r < count; ++r) {
            run(static_cast<std::size_t>(r));
        }
    }
    std::size_t hits = 0;
    for (char c : a_not_better) {
        hits += static_cast<std::size_t>(c);
    }
    return static_cast<double>(hits) / static_cast<double>(resamples);
}

}  // namespace procalign
