#pragma once

#include <span>
#include <vector>

#include "procalign/alignment_model.hpp"
#include "procalign/execution.hpp"

namespace procalign {

/// log P(source | target) under IBM Model 1 without a NULL word:
///   log(eps / I^J) + sum_j log sum_i p(f_j | e_i)
/// with I = |target| and J = |source|. Missing table entries use kLexicalFloor.
double emission_logprob(std::span<const WordId> source, std::span<const WordId> target,
                        const LexicalTable& lexical, double epsilon = 1.0);

/// Row-major M x N matrix of emission log-probabilities for every
/// (source instruction, target instruction) combination.
std::vector<double> emission_matrix(const EncodedPair& pair, const LexicalTable& lexical,
                                    double epsilon = 1.0, Execution exec = Execution::Serial);

}  // namespace procalign
