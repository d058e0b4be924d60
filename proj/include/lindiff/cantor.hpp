#pragma once

#include "lindiff/numeric.hpp"

namespace lindiff {

/// Depth cap for the exact ternary-digit walk. Up to this depth the digit
/// extraction is exact 128-bit integer arithmetic for every double in [0,1],
/// so the returned brackets are sound, not heuristic.
inline constexpr int kMaxCantorDepth = 45;

/// Certified bracket for the standard Cantor function c(x) on [0,1] after
/// `depth` subdivision levels; width is at most 2^-depth. Exact (zero-width)
/// at x = 0, x = 1, on every removed middle-third plateau, and at every
/// triadic cell endpoint reached within the depth budget.
Bounds cantor_bracket(double x, int depth);

/// Midpoint of cantor_bracket: |result - c(x)| <= 2^-depth, with
/// c_d(0) = 0 and c_d(1) = 1 exactly.
double cantor_function(double x, int depth);

/// Certified bracket for the antiderivative C(t) = int_0^t c(u) du.
/// C(1) = 1/2 by the symmetry of the Cantor measure.
Bounds cantor_integral_bracket(double t, int depth);

}  // namespace lindiff
