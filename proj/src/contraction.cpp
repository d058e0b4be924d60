#include <algorithm>
#include <cmath>
#include <map>

#include "lindiff/form.hpp"

namespace lindiff {

namespace {

struct Region {
    double lo, hi;
    bool keep;
};

// Mass bracket of component i over (lo, hi) weighted by the coefficient sign
// split, used to bound how far u can move across a cell.
Bounds movement_bounds(const ScaleFunction& scale, const FormFunction& u, double lo, double hi,
                       double tol) {
    Bounds mv = Bounds::exact(0.0);
    Interval cell{lo, hi, false, false};
    for (std::size_t i = 0; i < u.coefficients.size(); ++i) {
        const PiecewiseConstant& pc = u.coefficients[i];
        std::vector<double> cuts{lo, hi};
        for (double b : pc.breakpoints)
            if (b > lo && b < hi) cuts.push_back(b);
        std::sort(cuts.begin(), cuts.end());
        for (std::size_t kk = 0; kk + 1 < cuts.size(); ++kk) {
            double v = pc.at(0.5 * (cuts[kk] + cuts[kk + 1]));
            if (v == 0.0) continue;
            Bounds m = mass_bounds(scale.ds.components[i], Interval{cuts[kk], cuts[kk + 1], false, false},
                                   tol);
            mv += m.scaled(v);
        }
    }
    (void)cell;
    return mv;
}

// Slope of u against Lebesgue coordinates on a structural segment, when the
// segment is purely absolutely continuous there; nullopt otherwise.
std::optional<double> exact_slope(const ScaleFunction& scale, const FormFunction& u, double lo,
                                  double hi) {
    double mid = 0.5 * (lo + hi);
    double slope = 0.0;
    for (std::size_t i = 0; i < u.coefficients.size(); ++i) {
        double cv = u.coefficients[i].at(mid);
        if (cv == 0.0) continue;
        const MeasureComponent& c = scale.ds.components[i];
        if (const auto* d = std::get_if<LebesgueDensity>(&c)) {
            double f = 0.0;
            for (std::size_t k = 0; k < d->values.size(); ++k)
                if (d->breakpoints[k] <= mid && mid < d->breakpoints[k + 1]) f = d->values[k];
            slope += cv * f;
        } else if (const auto* rw = std::get_if<RationalWindows>(&c)) {
            if (!rw->count_cutoff) return std::nullopt;
            IntervalSet cover =
                canonicalize(rational_windows(*rw->count_cutoff, rw->signed_enumeration));
            slope += cover.contains(mid) ? cv : 0.0;
        } else if (std::holds_alternative<CantorCopy>(c)) {
            const auto& cc = std::get<CantorCopy>(c);
            if (mid > cc.support.lo && mid < cc.support.hi) return std::nullopt;
        }
    }
    return slope;
}

}  // namespace

FormFunction unit_contraction(const ScaleFunction& scale, const FormFunction& u, double tol) {
    if (!(tol > 0.0)) throw InvalidArgument("unit_contraction: tol must be positive");
    validate_form(scale, u);

    // Structural cut points: coefficient breakpoints plus component geometry.
    std::vector<double> cuts{u.base_x};
    for (const auto& pc : u.coefficients)
        cuts.insert(cuts.end(), pc.breakpoints.begin(), pc.breakpoints.end());
    for (const auto& c : scale.ds.components) {
        if (const auto* d = std::get_if<LebesgueDensity>(&c)) {
            for (double b : d->breakpoints)
                if (std::isfinite(b)) cuts.push_back(b);
        } else if (const auto* cc = std::get_if<CantorCopy>(&c)) {
            cuts.push_back(cc->support.lo);
            cuts.push_back(cc->support.hi);
        } else if (const auto* rw = std::get_if<RationalWindows>(&c)) {
            int n = rw->count_cutoff.value_or(kMaxRationalWindows);
            for (const Interval& w : rational_windows(n, rw->signed_enumeration)) {
                cuts.push_back(w.lo);
                cuts.push_back(w.hi);
            }
        }
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    std::vector<Region> regions;
    auto classify_range = [](const Bounds& r) -> std::optional<bool> {
        if (r.hi <= 0.0 || r.lo >= 1.0) return false;  // outside: slope removed
        if (r.lo >= 0.0 && r.hi <= 1.0) return true;   // inside: slope kept
        return std::nullopt;                           // straddles a level
    };

    // Left tail: u is constant there unless an unbounded component carries a
    // nonzero edge coefficient; either way one range bracket decides it.
    Bounds u_left = form_eval_bounds(scale, u, cuts.front(), 0.1 * tol);
    {
        Bounds mv = form_eval_bounds(scale, u, -kInf, 0.1 * tol);
        Bounds range = mv.hull(u_left);
        auto cls = classify_range(range);
        regions.push_back({-kInf, cuts.front(), cls.value_or(true)});
    }

    Bounds at_left = u_left;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        double lo = cuts[i], hi = cuts[i + 1];
        Bounds mv = movement_bounds(scale, u, lo, hi, 0.1 * tol);
        Bounds at_right = at_left + mv;
        // Interior points can overshoot both endpoint values when coefficients
        // change sign inside the cell, so widen by the one-sided movements.
        Bounds range{std::min(at_left.lo + std::min(mv.lo, 0.0), at_right.lo),
                     std::max(at_left.hi + std::max(mv.hi, 0.0), at_right.hi)};

        auto cls = classify_range(range);
        if (cls) {
            regions.push_back({lo, hi, *cls});
        } else if (auto slope = exact_slope(scale, u, lo, hi); slope && at_left.width() == 0.0) {
            // Piecewise-linear segment: locate level crossings in closed form.
            double ul = at_left.lo, s = *slope;
            std::vector<double> inner{lo};
            if (s != 0.0) {
                for (double level : {0.0, 1.0}) {
                    double x = lo + (level - ul) / s;
                    if (x > lo && x < hi) inner.push_back(x);
                }
            }
            inner.push_back(hi);
            std::sort(inner.begin(), inner.end());
            for (std::size_t k = 0; k + 1 < inner.size(); ++k) {
                double mid = 0.5 * (inner[k] + inner[k + 1]);
                double val = ul + s * (mid - lo);
                regions.push_back({inner[k], inner[k + 1], val > 0.0 && val < 1.0});
            }
        } else {
            // Bisect until each sub-cell is decided or its oscillation is
            // below tol (kept cells then overshoot [0,1] by at most tol).
            struct Cell {
                double lo, hi;
                Bounds at_lo;
                int depth;
            };
            std::vector<Cell> stack{{lo, hi, at_left, 0}};
            std::vector<Region> local;
            while (!stack.empty()) {
                Cell cell = stack.back();
                stack.pop_back();
                Bounds cmv = movement_bounds(scale, u, cell.lo, cell.hi, 0.1 * tol);
                Bounds cr{cell.at_lo.lo + std::min(cmv.lo, 0.0), cell.at_lo.hi + std::max(cmv.hi, 0.0)};
                auto ccls = classify_range(cr);
                if (ccls || cr.width() <= tol || cell.depth >= 40) {
                    local.push_back({cell.lo, cell.hi, ccls.value_or(true)});
                    continue;
                }
                double mid = 0.5 * (cell.lo + cell.hi);
                Bounds half = movement_bounds(scale, u, cell.lo, mid, 0.1 * tol);
                // Right cell first so the vector pops left-to-right.
                stack.push_back({mid, cell.hi, cell.at_lo + half, cell.depth + 1});
                stack.push_back({cell.lo, mid, cell.at_lo, cell.depth + 1});
            }
            std::sort(local.begin(), local.end(),
                      [](const Region& a, const Region& b) { return a.lo < b.lo; });
            regions.insert(regions.end(), local.begin(), local.end());
        }
        at_left = at_right;
    }

    // Right tail.
    {
        Bounds mv = form_eval_bounds(scale, u, kInf, 0.1 * tol);
        Bounds range = at_left.hull(mv);
        auto cls = classify_range(range);
        regions.push_back({cuts.back(), kInf, cls.value_or(true)});
    }

    // Assemble: original coefficients inside kept regions, zero elsewhere.
    FormFunction v;
    v.base_x = u.base_x;
    v.base_val = std::clamp(u.base_val, 0.0, 1.0);
    v.coefficients.reserve(u.coefficients.size());
    std::vector<double> edges;
    for (const Region& r : regions) {
        if (std::isfinite(r.lo)) edges.push_back(r.lo);
        if (std::isfinite(r.hi)) edges.push_back(r.hi);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    auto kept_at = [&](double x) {
        for (const Region& r : regions)
            if (x >= r.lo && x <= r.hi) return r.keep;
        return true;
    };
    for (const auto& pc : u.coefficients) {
        PiecewiseConstant out;
        std::vector<double> bp = pc.breakpoints;
        bp.insert(bp.end(), edges.begin(), edges.end());
        std::sort(bp.begin(), bp.end());
        bp.erase(std::unique(bp.begin(), bp.end()), bp.end());
        out.breakpoints = bp;
        out.values.resize(bp.size() + 1);
        for (std::size_t i = 0; i <= bp.size(); ++i) {
            double probe;
            if (bp.empty())
                probe = 0.0;
            else if (i == 0)
                probe = bp.front() - 1.0;
            else if (i == bp.size())
                probe = bp.back() + 1.0;
            else
                probe = 0.5 * (bp[i - 1] + bp[i]);
            out.values[i] = kept_at(probe) ? pc.at(probe) : 0.0;
        }
        v.coefficients.push_back(out);
    }
    return v;
}

}  // namespace lindiff
