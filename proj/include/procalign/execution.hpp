#pragma once

namespace procalign {

/// Selects the serial reference kernel or its OpenMP counterpart. Both
/// produce bit-identical results.
enum class Execution { Serial, Parallel };

}  // namespace procalign
