#pragma once

#include <span>
#include <vector>

#include "procalign/alignment_model.hpp"
#include "procalign/execution.hpp"

namespace procalign {

/// State and transition posteriors of one pair. Transition posteriors are
/// stored as a band: xi(m, n, n') is nonzero only for |n' - n| <= window.
class Posteriors {
  public:
    Posteriors() = default;
    Posteriors(std::size_t sources, std::size_t states, int window, bool with_xi);

    std::size_t sources() const { return sources_; }
    std::size_t states() const { return states_; }
    int window() const { return window_; }
    bool has_xi() const { return with_xi_; }

    double gamma(std::size_t m, std::size_t n) const { return gamma_[m * states_ + n]; }
    double& gamma(std::size_t m, std::size_t n) { return gamma_[m * states_ + n]; }
    std::span<const double> gamma_row(std::size_t m) const
    {
        return {gamma_.data() + m * states_, states_};
    }

    /// Posterior of being in n at m and n2 at m + 1, for m < sources() - 1.
    double xi(std::size_t m, std::size_t n, std::size_t n2) const;
    double& xi_band(std::size_t m, std::size_t n, int offset);

    double log_likelihood = 0.0;

  private:
    std::size_t sources_ = 0;
    std::size_t states_ = 0;
    int window_ = 0;
    bool with_xi_ = false;
    std::vector<double> gamma_;
    std::vector<double> xi_;
};

/// Scaled forward-backward over target states with a uniform initial
/// distribution and boundary-renormalized jump transitions.
/// `log_emissions` is the row-major M x N output of emission_matrix.
/// Throws DegenerateInput for M == 0, N == 0, or a zero-probability pair.
Posteriors forward_backward(std::span<const double> log_emissions, std::size_t sources,
                            std::size_t states, const JumpTable& jump, bool with_xi = true);

Posteriors forward_backward(const EncodedPair& pair, const AlignmentModel& model,
                            bool with_xi = true, Execution exec = Execution::Serial);

}  // namespace procalign
