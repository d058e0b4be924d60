#pragma once

#include <optional>
#include <vector>

#include "lindiff/numeric.hpp"

namespace lindiff {

/// An interval of the extended real line. Infinite endpoints are never
/// included; a degenerate [x,x] must include both endpoints.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    bool lo_included = false;
    bool hi_included = false;

    Interval() = default;
    Interval(double lo_, double hi_, bool lo_inc, bool hi_inc);

    static Interval open(double lo, double hi) { return {lo, hi, false, false}; }
    static Interval closed(double lo, double hi) { return {lo, hi, true, true}; }
    static Interval whole_line() { return {-kInf, kInf, false, false}; }

    bool is_degenerate() const { return lo == hi; }
    bool is_bounded() const { return std::isfinite(lo) && std::isfinite(hi); }
    double length() const { return hi - lo; }

    bool contains(double x) const {
        if (x < lo || x > hi) return false;
        if (x == lo && !lo_included) return false;
        if (x == hi && !hi_included) return false;
        return true;
    }

    Interval interior() const { return {lo, hi, false, false}; }
    Interval closure() const {
        return {lo, hi, std::isfinite(lo), std::isfinite(hi)};
    }

    double endpoint(Side s) const { return s == Side::Left ? lo : hi; }
    bool endpoint_included(Side s) const { return s == Side::Left ? lo_included : hi_included; }

    bool operator==(const Interval& o) const = default;
};

/// Intersection; empty results are reported as nullopt.
std::optional<Interval> intersect(const Interval& a, const Interval& b);

/// A canonical union of intervals: sorted by lo, pairwise disjoint, and no
/// two pieces mergeable.
struct IntervalSet {
    std::vector<Interval> pieces;

    bool empty() const { return pieces.empty(); }
    bool contains(double x) const;
    double total_length() const;

    bool operator==(const IntervalSet& o) const = default;
};

IntervalSet canonicalize(std::vector<Interval> pieces);

IntervalSet intersect(const IntervalSet& s, const Interval& window);

/// Complement of `s` within `window`, as a canonical set.
IntervalSet complement_within(const IntervalSet& s, const Interval& window);

/// True when some piece of `s` contains all of `I` up to endpoints (single
/// points are measure-irrelevant here, so containment is judged on closures).
bool covers_interval(const IntervalSet& s, const Interval& I);

}  // namespace lindiff
