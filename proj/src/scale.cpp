#include "lindiff/scale.hpp"

#include <algorithm>
#include <sstream>

namespace lindiff {

ScaleFunction ScaleFunction::identity() {
    return {0.0, 0.0, RadonMeasure::lebesgue(Interval::whole_line())};
}

ScaleFunction ScaleFunction::cantor_plus_identity() {
    ScaleFunction s;
    s.ds.components.push_back(LebesgueDensity{{0.0, 1.0}, {1.0}});
    s.ds.components.push_back(CantorCopy{Interval::closed(0.0, 1.0), 1.0});
    return s;
}

ScaleFunction ScaleFunction::rational_window_scale(bool signed_enumeration) {
    ScaleFunction s;
    s.ds.components.push_back(RationalWindows{std::nullopt, signed_enumeration});
    return s;
}

void validate(const ScaleFunction& s) {
    validate(s.ds);
    if (!std::isfinite(s.base_x) || !std::isfinite(s.base_val))
        throw InvalidArgument("ScaleFunction: base point must be finite");
    if (s.ds.has_atoms()) throw InvalidArgument("ScaleFunction: ds must be atomless");
}

Bounds eval_bounds(const ScaleFunction& s, double x, double tol) {
    if (std::isnan(x)) throw InvalidArgument("eval: x is NaN");
    if (x == s.base_x) return Bounds::exact(s.base_val);
    if (x > s.base_x) {
        Bounds m = mass_bounds(s.ds, Interval{s.base_x, x, false, false}, tol);
        return Bounds{s.base_val + m.lo, s.base_val + m.hi};
    }
    Bounds m = mass_bounds(s.ds, Interval{x, s.base_x, false, false}, tol);
    return Bounds{s.base_val - m.hi, s.base_val - m.lo};
}

Approx eval(const ScaleFunction& s, double x, double tol) {
    if (!(tol > 0.0)) throw InvalidArgument("eval: tol must be positive");
    return eval_bounds(s, x, tol).to_approx();
}

Approx inverse(const ScaleFunction& s, double y, double tol) {
    if (!(tol > 0.0)) throw InvalidArgument("inverse: tol must be positive");
    if (!std::isfinite(y)) throw InvalidArgument("inverse: y must be finite");

    const double eval_tol = std::min(tol, 1e-12);
    Bounds at_top = eval_bounds(s, kInf, eval_tol);
    Bounds at_bot = eval_bounds(s, -kInf, eval_tol);
    if (at_top.hi < y || at_bot.lo > y) throw InvalidArgument("inverse: y outside the range of s");

    // Expand a finite bracket [lo, hi] with s(lo) <= y <= s(hi).
    double step = 1.0;
    double lo = s.base_x, hi = s.base_x;
    while (eval_bounds(s, lo, eval_tol).lo > y - eval_tol && step < 1e300) {
        lo -= step;
        step *= 2.0;
    }
    step = 1.0;
    while (eval_bounds(s, hi, eval_tol).hi < y + eval_tol && step < 1e300) {
        hi += step;
        step *= 2.0;
    }

    for (int iter = 0; iter < 220; ++iter) {
        double mid = 0.5 * (lo + hi);
        if (!(mid > lo && mid < hi)) break;
        Bounds e = eval_bounds(s, mid, eval_tol);
        double worst = std::max(std::fabs(e.lo - y), std::fabs(e.hi - y));
        if (worst <= tol) return {mid, 0.5 * (hi - lo)};
        if (e.mid() < y)
            lo = mid;
        else
            hi = mid;
    }
    return {0.5 * (lo + hi), 0.5 * (hi - lo)};
}

Condition32Violated::Condition32Violated(const Interval& gap_)
    : std::runtime_error([&] {
          std::ostringstream os;
          os << "condition (3.2) violated: zero scale mass on (" << gap_.lo << ", " << gap_.hi
             << ")";
          return os.str();
      }()),
      gap(gap_) {}

namespace {

LebesgueDensity restrict_density(const LebesgueDensity& d, const IntervalSet& A) {
    std::vector<double> cuts(d.breakpoints.begin(), d.breakpoints.end());
    for (const Interval& p : A.pieces) {
        if (std::isfinite(p.lo)) cuts.push_back(p.lo);
        if (std::isfinite(p.hi)) cuts.push_back(p.hi);
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    LebesgueDensity out;
    auto value_at = [&](double probe) {
        for (std::size_t k = 0; k < d.values.size(); ++k)
            if (d.breakpoints[k] <= probe && probe < d.breakpoints[k + 1]) return d.values[k];
        return 0.0;
    };
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        double a = cuts[i], b = cuts[i + 1];
        if (b <= d.breakpoints.front() || a >= d.breakpoints.back()) continue;
        double probe = 0.5 * (a + b);
        if (std::isinf(a)) probe = b - 1.0;
        if (std::isinf(b)) probe = a + 1.0;
        double v = value_at(probe);
        bool removed = false;
        for (const Interval& p : A.pieces)
            if (p.lo <= probe && probe <= p.hi && !p.is_degenerate()) removed = true;
        if (removed) v = 0.0;
        if (out.breakpoints.empty()) out.breakpoints.push_back(a);
        if (!out.values.empty() && out.values.back() == v) {
            out.breakpoints.back() = b;
        } else {
            out.values.push_back(v);
            out.breakpoints.push_back(b);
        }
    }
    return out;
}

bool set_touches(const IntervalSet& A, const Interval& hull) {
    for (const Interval& p : A.pieces) {
        double a = std::max(p.lo, hull.lo), b = std::min(p.hi, hull.hi);
        if (b > a) return true;
    }
    return false;
}

}  // namespace

ScaleFunction restrict_scale(const ScaleFunction& s, const IntervalSet& A, const Interval& domain) {
    return restrict_scale(s, ScaleRestriction{A, {}}, domain);
}

ScaleFunction restrict_scale(const ScaleFunction& s, const ScaleRestriction& restriction,
                             const Interval& domain) {
    validate(s);
    const IntervalSet& A = restriction.removed;
    for (std::size_t idx : restriction.removed_singular) {
        if (idx >= s.ds.components.size())
            throw InvalidArgument("restrict_scale: singular marker index out of range");
        if (std::holds_alternative<LebesgueDensity>(s.ds.components[idx]))
            throw InvalidArgument(
                "restrict_scale: support markers apply to singular components only");
    }
    ScaleFunction out{s.base_x, s.base_val, RadonMeasure{}};
    for (std::size_t ci = 0; ci < s.ds.components.size(); ++ci) {
        if (std::find(restriction.removed_singular.begin(), restriction.removed_singular.end(),
                      ci) != restriction.removed_singular.end())
            continue;  // its support set belongs to A: the component is dropped
        const auto& c = s.ds.components[ci];
        if (const auto* d = std::get_if<LebesgueDensity>(&c)) {
            LebesgueDensity r = restrict_density(*d, A);
            bool nonzero = false;
            for (double v : r.values) nonzero = nonzero || v != 0.0;
            if (nonzero) out.ds.components.push_back(r);
        } else if (const auto* cc = std::get_if<CantorCopy>(&c)) {
            Interval hull = cc->support.interior();
            if (covers_interval(A, cc->support)) continue;  // dropped entirely
            if (!set_touches(A, hull)) {
                out.ds.components.push_back(*cc);
                continue;
            }
            throw UnsupportedOperation(
                "restrict_scale: partial restriction of a Cantor component is not representable");
        } else if (const auto* rw = std::get_if<RationalWindows>(&c)) {
            int n = rw->count_cutoff.value_or(kMaxRationalWindows);
            IntervalSet cover = canonicalize(rational_windows(n, rw->signed_enumeration));
            Interval reach = rw->signed_enumeration ? Interval::whole_line()
                                                    : Interval{0.0, kInf, false, false};
            if (!set_touches(A, reach)) {
                out.ds.components.push_back(*rw);
                continue;
            }
            if (covers_interval(A, reach)) continue;  // dropped entirely
            bool touches_window = false;
            for (const Interval& w : cover.pieces)
                if (set_touches(A, w)) touches_window = true;
            if (!touches_window && rw->count_cutoff) {
                out.ds.components.push_back(*rw);
                continue;
            }
            throw UnsupportedOperation(
                "restrict_scale: partial restriction of a rational-window component");
        } else {
            throw InvalidArgument("restrict_scale: scale measure must be atomless");
        }
    }
    IntervalSet region = full_support_region(out.ds);
    if (!covers_interval(region, domain)) {
        IntervalSet gaps = complement_within(region, domain.interior());
        Interval gap = gaps.empty() ? domain.interior() : gaps.pieces.front();
        throw Condition32Violated(gap.interior());
    }
    return out;
}

}  // namespace lindiff
