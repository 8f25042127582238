#pragma once

#include "procalign/alignment_model.hpp"
#include "procalign/execution.hpp"
#include "procalign/pairwise_alignment.hpp"

namespace procalign {

/// Posterior decoding: each source instruction takes the target state with
/// the largest marginal posterior, ties going to the smaller index. Only the
/// label fields (and target_size) are filled; ids are left to the caller.
PairwiseAlignment decode(const EncodedPair& pair, const AlignmentModel& model,
                         bool keep_rows = false, Execution exec = Execution::Serial);

}  // namespace procalign
