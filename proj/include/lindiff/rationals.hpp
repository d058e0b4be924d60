#pragma once

#include <cstdint>
#include <vector>

#include "lindiff/interval.hpp"

namespace lindiff {

/// A positive rational q/p in lowest terms.
struct Rational {
    std::int64_t num = 1;
    std::int64_t den = 1;
    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

/// The n-th positive rational (n >= 1) under the block order: q1/p1 precedes
/// q2/p2 when p1+q1 < p2+q2, ties broken by smaller numerator. Satisfies
/// r_n <= n.
Rational enumerate_rationals(int n);

/// First n terms of the enumeration.
std::vector<Rational> rational_prefix(int n);

/// The first `count` windows of the dyadic rational cover. Window n (1-based)
/// is centered at r_n with half-width 2^-(n+1). In the signed variant the
/// centers interleave +r_1, -r_1, +r_2, -r_2, ... while the half-widths keep
/// shrinking with the interleaved index, so the cover is dense on all of R
/// and its total length is still at most 1.
std::vector<Interval> rational_windows(int count, bool signed_enumeration);

/// Center of window n in the given enumeration (|center| <= n always).
double rational_window_center(int n, bool signed_enumeration);

}  // namespace lindiff
