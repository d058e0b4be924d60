#include "lindiff/interval.hpp"

#include <algorithm>

namespace lindiff {

Interval::Interval(double lo_, double hi_, bool lo_inc, bool hi_inc)
    : lo(lo_), hi(hi_), lo_included(lo_inc), hi_included(hi_inc) {
    if (std::isnan(lo) || std::isnan(hi)) throw InvalidArgument("interval endpoint is NaN");
    if (lo > hi) throw InvalidArgument("interval requires lo <= hi");
    if (!std::isfinite(lo) && lo_included) throw InvalidArgument("infinite endpoint cannot be included");
    if (!std::isfinite(hi) && hi_included) throw InvalidArgument("infinite endpoint cannot be included");
    if (lo == hi && !(lo_included && hi_included))
        throw InvalidArgument("degenerate interval must include both endpoints");
}

std::optional<Interval> intersect(const Interval& a, const Interval& b) {
    double lo = std::max(a.lo, b.lo);
    double hi = std::min(a.hi, b.hi);
    if (lo > hi) return std::nullopt;
    bool lo_inc = (lo == a.lo ? a.lo_included : true) && (lo == b.lo ? b.lo_included : true);
    bool hi_inc = (hi == a.hi ? a.hi_included : true) && (hi == b.hi ? b.hi_included : true);
    if (lo == hi && !(lo_inc && hi_inc)) return std::nullopt;
    return Interval{lo, hi, lo_inc, hi_inc};
}

namespace {

// Two sorted intervals merge when they overlap or touch at an included endpoint.
bool mergeable(const Interval& a, const Interval& b) {
    if (b.lo < a.hi) return true;
    if (b.lo == a.hi) return a.hi_included || b.lo_included;
    return false;
}

}  // namespace

IntervalSet canonicalize(std::vector<Interval> pieces) {
    std::sort(pieces.begin(), pieces.end(), [](const Interval& a, const Interval& b) {
        if (a.lo != b.lo) return a.lo < b.lo;
        if (a.lo_included != b.lo_included) return a.lo_included;
        return a.hi < b.hi;
    });
    IntervalSet out;
    for (const Interval& p : pieces) {
        if (!out.pieces.empty() && mergeable(out.pieces.back(), p)) {
            Interval& last = out.pieces.back();
            if (p.hi > last.hi) {
                last.hi = p.hi;
                last.hi_included = p.hi_included;
            } else if (p.hi == last.hi) {
                last.hi_included = last.hi_included || p.hi_included;
            }
            if (p.lo == last.lo) last.lo_included = last.lo_included || p.lo_included;
        } else {
            out.pieces.push_back(p);
        }
    }
    return out;
}

bool IntervalSet::contains(double x) const {
    for (const Interval& p : pieces)
        if (p.contains(x)) return true;
    return false;
}

double IntervalSet::total_length() const {
    double sum = 0.0;
    for (const Interval& p : pieces) sum += p.length();
    return sum;
}

IntervalSet intersect(const IntervalSet& s, const Interval& window) {
    IntervalSet out;
    for (const Interval& p : s.pieces) {
        auto q = intersect(p, window);
        if (q) out.pieces.push_back(*q);
    }
    return out;
}

IntervalSet complement_within(const IntervalSet& s, const Interval& window) {
    // Degenerate (single-point) gaps are dropped: every consumer is
    // measure-theoretic and the measures restricted here are atomless.
    std::vector<Interval> gaps;
    double cursor = window.lo;
    bool cursor_inc = window.lo_included;
    for (const Interval& raw : s.pieces) {
        auto p = intersect(raw, window);
        if (!p) continue;
        if (p->lo > cursor)
            gaps.push_back(Interval{cursor, p->lo, cursor_inc && std::isfinite(cursor), !p->lo_included});
        if (p->hi > cursor || (p->hi == cursor && p->hi_included)) {
            cursor = p->hi;
            cursor_inc = !p->hi_included;
        }
    }
    if (cursor < window.hi)
        gaps.push_back(
            Interval{cursor, window.hi, cursor_inc && std::isfinite(cursor), window.hi_included});
    return canonicalize(std::move(gaps));
}

bool covers_interval(const IntervalSet& s, const Interval& I) {
    if (I.is_degenerate()) return true;
    for (const Interval& p : s.pieces)
        if (p.lo <= I.lo && I.hi <= p.hi) return true;
    return false;
}

}  // namespace lindiff
