#include "procalign/pairwise_alignment.hpp"

#include <algorithm>
#include <cmath>

#include "procalign/error.hpp"

namespace procalign {

nlohmann::json alignment_to_json(const PairwiseAlignment& a)
{
    nlohmann::json j{{"dish_id", a.dish_id},
                     {"source_id", a.source_id},
                     {"target_id", a.target_id},
                     {"kind", to_string(a.kind)},
                     {"target_size", a.target_size},
                     {"labels", a.labels},
                     {"posteriors", a.posteriors}};
    if (a.posterior_rows) {
        j["posterior_rows"] = *a.posterior_rows;
    }
    return j;
}

PairwiseAlignment alignment_from_json(const nlohmann::json& j)
{
    PairwiseAlignment a;
    a.dish_id = j.at("dish_id").get<std::string>();
    a.source_id = j.at("source_id").get<std::string>();
    a.target_id = j.at("target_id").get<std::string>();
    a.kind = pair_kind_from_string(j.at("kind").get<std::string>());
    a.labels = j.at("labels").get<std::vector<int>>();
    a.posteriors = j.at("posteriors").get<std::vector<double>>();
    if (j.contains("target_size")) {
        a.target_size = j.at("target_size").get<std::size_t>();
    } else {
        int top = -1;
        for (int l : a.labels) {
            top = std::max(top, l);
        }
        a.target_size = static_cast<std::size_t>(top + 1);
    }
    if (j.contains("posterior_rows")) {
        a.posterior_rows = j.at("posterior_rows").get<std::vector<std::vector<double>>>();
    }
    validate(a);
    return a;
}

void validate(const PairwiseAlignment& a)
{
    if (a.labels.size() != a.posteriors.size()) {
        throw InvalidArgument("alignment " + a.source_id + "->" + a.target_id +
                              ": labels and posteriors differ in length");
    }
    for (std::size_t m = 0; m < a.labels.size(); ++m) {
        if (a.labels[m] < 0 || static_cast<std::size_t>(a.labels[m]) >= a.target_size) {
            throw InvalidArgument("alignment " + a.source_id + "->" + a.target_id + ": label out of range");
        }
        if (!(a.posteriors[m] >= 0.0 && a.posteriors[m] <= 1.0 + 1e-12)) {
            throw InvalidArgument("alignment " + a.source_id + "->" + a.target_id +
                                  ": posterior outside [0, 1]");
        }
    }
}

}  // namespace procalign
