#include "procalign/decode.hpp"

#include "procalign/forward_backward.hpp"

namespace procalign {

PairwiseAlignment decode(const EncodedPair& pair, const AlignmentModel& model, bool keep_rows,
                         Execution exec)
{
    const Posteriors post = forward_backward(pair, model, false, exec);
    PairwiseAlignment out;
    out.target_size = post.states();
    out.labels.reserve(post.sources());
    out.posteriors.reserve(post.sources());
    if (keep_rows) {
        out.posterior_rows.emplace();
    }
    for (std::size_t m = 0; m < post.sources(); ++m) {
        auto row = post.gamma_row(m);
        std::size_t best = 0;
        for (std::size_t n = 1; n < row.size(); ++n) {
            if (row[n] > row[best]) {
                best = n;
            }
        }
        out.labels.push_back(static_cast<int>(best));
        out.posteriors.push_back(row[best]);
        if (keep_rows) {
            out.posterior_rows->emplace_back(row.begin(), row.end());
        }
    }
    return out;
}

}  // namespace procalign
