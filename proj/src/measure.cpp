#include "lindiff/measure.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

namespace lindiff {

namespace {

double overlap_length(double lo, double hi, const Interval& J) {
    double a = std::max(lo, J.lo);
    double b = std::min(hi, J.hi);
    return b > a ? b - a : 0.0;
}

int cantor_depth_for(double weight, double tol) {
    // Bracket error of a mass difference is at most 2 * weight * 2^-depth.
    double target = std::max(tol, 1e-30) / std::max(weight, 1e-300);
    int d = static_cast<int>(std::ceil(std::log2(2.0 / target)));
    return std::clamp(d, 8, kMaxCantorDepth);
}

int window_count_for(const RationalWindows& rw, double tol) {
    if (rw.count_cutoff) return std::min(*rw.count_cutoff, kMaxRationalWindows);
    int n = static_cast<int>(std::ceil(std::log2(1.0 / std::max(tol, 1e-18)))) + 1;
    return std::clamp(n, 8, kMaxRationalWindows);
}

}  // namespace

bool RadonMeasure::has_atoms() const {
    for (const auto& c : components)
        if (std::holds_alternative<Atom>(c)) return true;
    return false;
}

bool RadonMeasure::has_component_with_error() const {
    for (const auto& c : components) {
        if (std::holds_alternative<CantorCopy>(c)) return true;
        if (const auto* rw = std::get_if<RationalWindows>(&c); rw && !rw->count_cutoff) return true;
    }
    return false;
}

RadonMeasure RadonMeasure::lebesgue(const Interval& on) { return scaled_lebesgue(on, 1.0); }

RadonMeasure RadonMeasure::scaled_lebesgue(const Interval& on, double value) {
    RadonMeasure m;
    m.components.push_back(LebesgueDensity{{on.lo, on.hi}, {value}});
    return m;
}

void validate(const MeasureComponent& c) {
    if (const auto* d = std::get_if<LebesgueDensity>(&c)) {
        if (d->breakpoints.size() < 2) throw InvalidArgument("LebesgueDensity needs >= 2 breakpoints");
        if (d->values.size() + 1 != d->breakpoints.size())
            throw InvalidArgument("LebesgueDensity values/breakpoints size mismatch");
        for (std::size_t i = 0; i + 1 < d->breakpoints.size(); ++i)
            if (!(d->breakpoints[i] < d->breakpoints[i + 1]))
                throw InvalidArgument("LebesgueDensity breakpoints must be strictly increasing");
        for (double v : d->values)
            if (!(v >= 0.0) || !std::isfinite(v))
                throw InvalidArgument("LebesgueDensity values must be finite and >= 0");
    } else if (const auto* a = std::get_if<Atom>(&c)) {
        if (!std::isfinite(a->location)) throw InvalidArgument("Atom location must be finite");
        if (!(a->mass > 0.0) || !std::isfinite(a->mass))
            throw InvalidArgument("Atom mass must be positive and finite");
    } else if (const auto* cc = std::get_if<CantorCopy>(&c)) {
        if (!cc->support.is_bounded() || cc->support.is_degenerate())
            throw InvalidArgument("CantorCopy support must be bounded and non-degenerate");
        if (!(cc->weight > 0.0) || !std::isfinite(cc->weight))
            throw InvalidArgument("CantorCopy weight must be positive and finite");
    } else if (const auto* rw = std::get_if<RationalWindows>(&c)) {
        if (rw->count_cutoff && *rw->count_cutoff < 1)
            throw InvalidArgument("RationalWindows count_cutoff must be positive");
        if (rw->count_cutoff && *rw->count_cutoff > kMaxRationalWindows)
            throw InvalidArgument("RationalWindows count_cutoff exceeds double-precision window resolution");
    }
}

void validate(const RadonMeasure& m) {
    for (const auto& c : m.components) validate(c);
}

namespace {

Bounds lebesgue_mass(const LebesgueDensity& d, const Interval& J) {
    double total = 0.0;
    for (std::size_t i = 0; i < d.values.size(); ++i) {
        if (d.values[i] == 0.0) continue;
        double len = overlap_length(d.breakpoints[i], d.breakpoints[i + 1], J);
        if (std::isinf(len)) return Bounds::exact(kInf);
        total += d.values[i] * len;
    }
    return Bounds::exact(total);
}

Bounds cantor_mass(const CantorCopy& c, const Interval& J, double tol) {
    const double s0 = c.support.lo, s1 = c.support.hi;
    const double len = s1 - s0;
    double a = std::max(J.lo, s0), b = std::min(J.hi, s1);
    if (b <= a) {
        // The Cantor measure is atomless, so a shared single point carries no mass.
        return Bounds::exact(0.0);
    }
    int depth = cantor_depth_for(c.weight, tol);
    Bounds ca = cantor_bracket((a - s0) / len, depth);
    Bounds cb = cantor_bracket((b - s0) / len, depth);
    Bounds diff = cb - ca;
    diff.lo = std::max(diff.lo, 0.0);
    diff.hi = std::min(diff.hi, 1.0);
    return diff.scaled(c.weight);
}

// The canonical window unions are pure functions of (count, signed); they sit
// in every quadrature inner loop, so cache them.
const IntervalSet& cached_window_cover(int n, bool signed_enumeration) {
    static std::mutex mu;
    static std::map<std::pair<int, bool>, IntervalSet> cache;
    std::scoped_lock lock(mu);
    auto [it, inserted] = cache.try_emplace({n, signed_enumeration});
    if (inserted) it->second = canonicalize(rational_windows(n, signed_enumeration));
    return it->second;
}

Bounds rational_windows_mass(const RationalWindows& rw, const Interval& J, double tol) {
    int n = window_count_for(rw, tol);
    const IntervalSet& cover = cached_window_cover(n, rw.signed_enumeration);
    double exact = intersect(cover, J).total_length();
    if (rw.count_cutoff) return Bounds::exact(exact);
    double tail = std::ldexp(1.0, -n);  // sum of the remaining window lengths
    return Bounds{exact, exact + tail};
}

}  // namespace

Bounds mass_bounds(const MeasureComponent& c, const Interval& J, double tol) {
    if (J.lo > J.hi) return Bounds::exact(0.0);
    if (const auto* d = std::get_if<LebesgueDensity>(&c)) return lebesgue_mass(*d, J);
    if (const auto* a = std::get_if<Atom>(&c))
        return Bounds::exact(J.contains(a->location) ? a->mass : 0.0);
    if (const auto* cc = std::get_if<CantorCopy>(&c)) return cantor_mass(*cc, J, tol);
    return rational_windows_mass(std::get<RationalWindows>(c), J, tol);
}

Bounds mass_bounds(const RadonMeasure& mu, const Interval& J, double tol) {
    std::size_t inexact = 0;
    for (const auto& c : mu.components) {
        if (std::holds_alternative<CantorCopy>(c)) ++inexact;
        if (const auto* rw = std::get_if<RationalWindows>(&c); rw && !rw->count_cutoff) ++inexact;
    }
    double tol_each = tol / static_cast<double>(std::max<std::size_t>(inexact, 1));
    Bounds total = Bounds::exact(0.0);
    for (const auto& c : mu.components) {
        Bounds b = mass_bounds(c, J, tol_each);
        if (b.lo == kInf) return Bounds::exact(kInf);
        total += b;
    }
    return total;
}

Approx mass(const RadonMeasure& mu, const Interval& J, double tol) {
    if (!(tol > 0.0)) throw InvalidArgument("mass: tol must be positive");
    return mass_bounds(mu, J, tol).to_approx();
}

Bounds mass_between(const RadonMeasure& mu, double p, double q, double tol) {
    double lo = std::min(p, q), hi = std::max(p, q);
    if (lo == hi) return Bounds::exact(0.0);
    return mass_bounds(mu, Interval{lo, hi, false, false}, tol);
}

IntervalSet full_support_region(const RadonMeasure& mu) {
    std::vector<Interval> pieces;
    for (const auto& c : mu.components) {
        if (const auto* d = std::get_if<LebesgueDensity>(&c)) {
            for (std::size_t i = 0; i < d->values.size(); ++i)
                if (d->values[i] > 0.0)
                    pieces.push_back(Interval{d->breakpoints[i], d->breakpoints[i + 1],
                                              std::isfinite(d->breakpoints[i]),
                                              std::isfinite(d->breakpoints[i + 1])});
        } else if (const auto* rw = std::get_if<RationalWindows>(&c)) {
            if (!rw->count_cutoff) {
                // Dense cover: every open subinterval of the half-line (or the
                // whole line when signed) meets a window.
                if (rw->signed_enumeration)
                    pieces.push_back(Interval::whole_line());
                else
                    pieces.push_back(Interval{0.0, kInf, true, false});
            } else {
                for (const Interval& w : rational_windows(*rw->count_cutoff, rw->signed_enumeration))
                    pieces.push_back(w.closure());
            }
        }
        // Atoms and CantorCopy components charge no open interval fully.
    }
    return canonicalize(std::move(pieces));
}

bool is_fully_supported(const RadonMeasure& mu, const Interval& I) {
    return covers_interval(full_support_region(mu), I);
}

double PiecewiseLinear::eval(double x) const {
    if (xs.size() == 1) return ys[0];
    std::size_t i = 1;
    while (i + 1 < xs.size() && x > xs[i]) ++i;
    double x0 = xs[i - 1], x1 = xs[i];
    double t = (x - x0) / (x1 - x0);
    return ys[i - 1] + t * (ys[i] - ys[i - 1]);
}

double PiecewiseLinear::slope_before(std::size_t seg) const {
    if (xs.size() == 1) return 0.0;
    std::size_t i = std::clamp<std::size_t>(seg, 1, xs.size() - 1);
    return (ys[i] - ys[i - 1]) / (xs[i] - xs[i - 1]);
}

void validate(const PiecewiseLinear& g) {
    if (g.xs.empty() || g.xs.size() != g.ys.size())
        throw InvalidArgument("PiecewiseLinear: xs/ys must be non-empty and equal length");
    for (std::size_t i = 0; i + 1 < g.xs.size(); ++i)
        if (!(g.xs[i] < g.xs[i + 1]))
            throw InvalidArgument("PiecewiseLinear: xs must be strictly increasing");
    for (double x : g.xs)
        if (!std::isfinite(x)) throw InvalidArgument("PiecewiseLinear: nodes must be finite");
    for (double y : g.ys)
        if (!std::isfinite(y)) throw InvalidArgument("PiecewiseLinear: values must be finite");
}

namespace {

// Global affine envelope |g(x)| <= A + B|x|.
void affine_envelope(const PiecewiseLinear& g, double& A, double& B) {
    B = 0.0;
    double ymax = 0.0, xmax = 0.0;
    for (double y : g.ys) ymax = std::max(ymax, std::fabs(y));
    for (double x : g.xs) xmax = std::max(xmax, std::fabs(x));
    if (g.xs.size() > 1) {
        B = std::max(std::fabs(g.slope_before(1)), std::fabs(g.slope_before(g.xs.size() - 1)));
        for (std::size_t i = 1; i < g.xs.size(); ++i)
            B = std::max(B, std::fabs(g.slope_before(i)));
    }
    A = ymax + B * xmax;
}

// Exact integral of g over a bounded interval against Lebesgue measure.
double integrate_linear_exact(const PiecewiseLinear& g, double a, double b) {
    if (b <= a) return 0.0;
    std::vector<double> cuts{a, b};
    for (double x : g.xs)
        if (x > a && x < b) cuts.push_back(x);
    std::sort(cuts.begin(), cuts.end());
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        double lo = cuts[i], hi = cuts[i + 1];
        total += 0.5 * (g.eval(lo) + g.eval(hi)) * (hi - lo);
    }
    return total;
}

bool left_tail_is_zero(const PiecewiseLinear& g) {
    return g.ys.front() == 0.0 && (g.xs.size() == 1 || g.slope_before(1) == 0.0);
}

bool right_tail_is_zero(const PiecewiseLinear& g) {
    return g.ys.back() == 0.0 && (g.xs.size() == 1 || g.slope_before(g.xs.size() - 1) == 0.0);
}

// Integral of g against one LebesgueDensity piece; throws on a divergent tail.
double lebesgue_kernel(const LebesgueDensity& d, const PiecewiseLinear& g, const Interval& J) {
    double total = 0.0;
    for (std::size_t i = 0; i < d.values.size(); ++i) {
        if (d.values[i] == 0.0) continue;
        double a = std::max(d.breakpoints[i], J.lo);
        double b = std::min(d.breakpoints[i + 1], J.hi);
        if (b <= a) continue;
        if (std::isinf(a)) {
            if (!left_tail_is_zero(g))
                throw NonIntegrable("integrate_kernel: divergent tail against infinite mass");
            a = g.xs.front();  // g vanishes identically below its first node
            if (b <= a) continue;
        }
        if (std::isinf(b)) {
            if (!right_tail_is_zero(g))
                throw NonIntegrable("integrate_kernel: divergent tail against infinite mass");
            b = g.xs.back();
            if (b <= a) continue;
        }
        total += d.values[i] * integrate_linear_exact(g, a, b);
    }
    return total;
}

Bounds cantor_kernel(const CantorCopy& c, const PiecewiseLinear& g, const Interval& J, double tol) {
    const double s0 = c.support.lo, len = c.support.hi - c.support.lo;
    double a = std::max(J.lo, c.support.lo), b = std::min(J.hi, c.support.hi);
    if (b <= a) return Bounds::exact(0.0);
    double alpha = (a - s0) / len, beta = (b - s0) / len;
    int depth = cantor_depth_for(c.weight * (1.0 + std::fabs(g.eval(a)) + std::fabs(g.eval(b))), tol);

    // Integration by parts against the Cantor cdf:
    //   int g~ dc = g~(beta) c(beta) - g~(alpha) c(alpha) - sum_i slope_i (C(u_{i+1}) - C(u_i))
    // with g~(u) = g(s0 + len*u) and C the Cantor antiderivative.
    std::vector<double> cuts{alpha, beta};
    for (double x : g.xs) {
        double u = (x - s0) / len;
        if (u > alpha && u < beta) cuts.push_back(u);
    }
    std::sort(cuts.begin(), cuts.end());

    auto g_at = [&](double u) { return g.eval(s0 + len * u); };
    Bounds total = cantor_bracket(beta, depth).scaled(g_at(beta)) -
                   cantor_bracket(alpha, depth).scaled(g_at(alpha));
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        double mid = 0.5 * (cuts[i] + cuts[i + 1]);
        double xmid = s0 + len * mid;
        // slope of g~ in u-units on this cut
        double slope = 0.0;
        if (g.xs.size() > 1) {
            std::size_t seg = 1;
            while (seg + 1 < g.xs.size() && xmid > g.xs[seg]) ++seg;
            slope = g.slope_before(seg) * len;
        }
        if (slope == 0.0) continue;
        Bounds dC = cantor_integral_bracket(cuts[i + 1], depth) - cantor_integral_bracket(cuts[i], depth);
        total = total - dC.scaled(slope);
    }
    return total.scaled(c.weight);
}

Bounds rational_windows_kernel(const RationalWindows& rw, const PiecewiseLinear& g, const Interval& J,
                               double tol) {
    double A = 0.0, B = 0.0;
    affine_envelope(g, A, B);
    int n = rw.count_cutoff ? *rw.count_cutoff : 8;
    if (!rw.count_cutoff) {
        while (n < kMaxRationalWindows &&
               (A + B * (n + 3)) * std::ldexp(1.0, -n) > tol)
            ++n;
    }
    double exact = 0.0;
    for (const Interval& w : rational_windows(n, rw.signed_enumeration)) {
        double a = std::max(w.lo, J.lo), b = std::min(w.hi, J.hi);
        if (b > a) exact += integrate_linear_exact(g, a, b);
    }
    if (rw.count_cutoff) return Bounds::exact(exact);
    // |center_n| <= n so sup over window n of |g| is at most A + B(n+1);
    // summing (A + B(n+1)) 2^-n over n > N gives A 2^-N + B (N+3) 2^-N.
    double tail = (A + B * (n + 3)) * std::ldexp(1.0, -n);
    return Bounds{exact - tail, exact + tail};
}

}  // namespace

Approx integrate_kernel(const RadonMeasure& mu, const PiecewiseLinear& g, const Interval& J,
                        double tol) {
    if (!(tol > 0.0)) throw InvalidArgument("integrate_kernel: tol must be positive");
    validate(g);
    std::size_t inexact = 0;
    for (const auto& c : mu.components)
        if (!std::holds_alternative<LebesgueDensity>(c) && !std::holds_alternative<Atom>(c)) ++inexact;
    double tol_each = tol / static_cast<double>(std::max<std::size_t>(inexact, 1));

    Bounds total = Bounds::exact(0.0);
    for (const auto& c : mu.components) {
        if (const auto* d = std::get_if<LebesgueDensity>(&c)) {
            total += Bounds::exact(lebesgue_kernel(*d, g, J));
        } else if (const auto* a = std::get_if<Atom>(&c)) {
            if (J.contains(a->location)) total += Bounds::exact(g.eval(a->location) * a->mass);
        } else if (const auto* cc = std::get_if<CantorCopy>(&c)) {
            total += cantor_kernel(*cc, g, J, tol_each);
        } else {
            total += rational_windows_kernel(std::get<RationalWindows>(c), g, J, tol_each);
        }
    }
    return total.to_approx();
}

namespace {

bool lebesgue_is_nonzero(const LebesgueDensity& d) {
    for (double v : d.values)
        if (v != 0.0) return true;
    return false;
}

}  // namespace

RadonMeasure canonical_measure(const RadonMeasure& m) {
    validate(m);
    // Merge every LebesgueDensity into one summed piecewise density.
    std::vector<const LebesgueDensity*> densities;
    std::map<double, double> atom_masses;
    std::vector<CantorCopy> cantors;
    std::vector<RationalWindows> windows;
    for (const auto& c : m.components) {
        if (const auto* d = std::get_if<LebesgueDensity>(&c)) {
            densities.push_back(d);
        } else if (const auto* a = std::get_if<Atom>(&c)) {
            atom_masses[a->location] += a->mass;
        } else if (const auto* cc = std::get_if<CantorCopy>(&c)) {
            cantors.push_back(*cc);
        } else {
            windows.push_back(std::get<RationalWindows>(c));
        }
    }

    RadonMeasure out;
    if (!densities.empty()) {
        std::vector<double> cuts;
        for (const auto* d : densities)
            cuts.insert(cuts.end(), d->breakpoints.begin(), d->breakpoints.end());
        std::sort(cuts.begin(), cuts.end());
        cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
        LebesgueDensity merged;
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
            double probe = 0.5 * (cuts[i] + cuts[i + 1]);
            if (std::isinf(cuts[i])) probe = std::isinf(cuts[i + 1]) ? 0.0 : cuts[i + 1] - 1.0;
            if (std::isinf(cuts[i + 1]) && std::isfinite(cuts[i])) probe = cuts[i] + 1.0;
            double v = 0.0;
            for (const auto* d : densities)
                for (std::size_t k = 0; k < d->values.size(); ++k)
                    if (d->breakpoints[k] <= probe && probe < d->breakpoints[k + 1]) v += d->values[k];
            if (merged.breakpoints.empty()) {
                merged.breakpoints.push_back(cuts[i]);
            }
            if (!merged.values.empty() && merged.values.back() == v) {
                merged.breakpoints.back() = cuts[i + 1];
            } else {
                merged.values.push_back(v);
                merged.breakpoints.push_back(cuts[i + 1]);
            }
        }
        // Trim zero-valued edge pieces.
        while (!merged.values.empty() && merged.values.front() == 0.0) {
            merged.values.erase(merged.values.begin());
            merged.breakpoints.erase(merged.breakpoints.begin());
        }
        while (!merged.values.empty() && merged.values.back() == 0.0) {
            merged.values.pop_back();
            merged.breakpoints.pop_back();
        }
        if (!merged.values.empty() && lebesgue_is_nonzero(merged)) out.components.push_back(merged);
    }
    for (const auto& [loc, mass] : atom_masses)
        if (mass > 0.0) out.components.push_back(Atom{loc, mass});
    std::map<std::pair<double, double>, double> cantor_weights;
    for (const auto& c : cantors) cantor_weights[{c.support.lo, c.support.hi}] += c.weight;
    for (const auto& [supp, w] : cantor_weights)
        out.components.push_back(CantorCopy{Interval::closed(supp.first, supp.second), w});
    std::sort(windows.begin(), windows.end(), [](const RationalWindows& a, const RationalWindows& b) {
        int ca = a.count_cutoff.value_or(-1), cb = b.count_cutoff.value_or(-1);
        if (a.signed_enumeration != b.signed_enumeration) return b.signed_enumeration;
        return ca < cb;
    });
    for (const auto& w : windows) out.components.push_back(w);
    return out;
}

namespace {

bool components_equal(const MeasureComponent& a, const MeasureComponent& b) {
    if (a.index() != b.index()) return false;
    if (const auto* da = std::get_if<LebesgueDensity>(&a)) {
        const auto& db = std::get<LebesgueDensity>(b);
        return da->breakpoints == db.breakpoints && da->values == db.values;
    }
    if (const auto* aa = std::get_if<Atom>(&a)) {
        const auto& ab = std::get<Atom>(b);
        return aa->location == ab.location && aa->mass == ab.mass;
    }
    if (const auto* ca = std::get_if<CantorCopy>(&a)) {
        const auto& cb = std::get<CantorCopy>(b);
        return ca->support == cb.support && ca->weight == cb.weight;
    }
    const auto& ra = std::get<RationalWindows>(a);
    const auto& rb = std::get<RationalWindows>(b);
    return ra.count_cutoff == rb.count_cutoff && ra.signed_enumeration == rb.signed_enumeration;
}

}  // namespace

bool measures_equal(const RadonMeasure& a, const RadonMeasure& b) {
    RadonMeasure ca = canonical_measure(a), cb = canonical_measure(b);
    if (ca.components.size() != cb.components.size()) return false;
    for (std::size_t i = 0; i < ca.components.size(); ++i)
        if (!components_equal(ca.components[i], cb.components[i])) return false;
    return true;
}

bool is_zero_measure(const RadonMeasure& m) { return canonical_measure(m).components.empty(); }

namespace {

struct MonotoneCell {
    double lo, hi;
    double budget;
    int depth;
};

}  // namespace

Bounds integrate_monotone(const RadonMeasure& mu, const Interval& J,
                          const std::function<Bounds(double)>& f, bool increasing, double tol) {
    if (!J.is_bounded()) throw InvalidArgument("integrate_monotone: J must be bounded");
    if (J.hi <= J.lo) return Bounds::exact(0.0);
    constexpr int kMaxDepth = 42;
    // Work cap: the bracketing is first order, so on genuinely curved
    // integrands a tiny budget would otherwise demand ~1/tol cells. Hitting
    // the cap only widens the certified bracket, never falsifies it.
    int cells_left = 6000;
    Bounds total = Bounds::exact(0.0);
    std::vector<MonotoneCell> stack{{J.lo, J.hi, tol, 0}};
    while (!stack.empty()) {
        MonotoneCell cell = stack.back();
        stack.pop_back();
        Bounds fl = f(cell.lo), fh = f(cell.hi);
        Bounds frange = increasing ? Bounds{fl.lo, fh.hi} : Bounds{fh.lo, fl.hi};
        Bounds cellmass = mass_bounds(mu, Interval::open(cell.lo, cell.hi), 0.1 * cell.budget);
        // Endpoint atoms belong to exactly one adjacent cell; include the ones
        // interior to J once by attributing each split point to its left cell.
        if (cell.hi < J.hi || (cell.hi == J.hi && J.hi_included))
            cellmass += mass_bounds(mu, Interval::closed(cell.hi, cell.hi), 0.1 * cell.budget);
        if (cell.lo == J.lo && J.lo_included)
            cellmass += mass_bounds(mu, Interval::closed(cell.lo, cell.lo), 0.1 * cell.budget);
        Bounds contrib = frange * cellmass;
        --cells_left;
        if (contrib.width() <= cell.budget || cell.depth >= kMaxDepth || cells_left <= 0 ||
            !(cell.hi - cell.lo > 1e-300)) {
            total += contrib;
            continue;
        }
        double mid = 0.5 * (cell.lo + cell.hi);
        if (!(mid > cell.lo && mid < cell.hi)) {
            total += contrib;
            continue;
        }
        stack.push_back({cell.lo, mid, 0.5 * cell.budget, cell.depth + 1});
        stack.push_back({mid, cell.hi, 0.5 * cell.budget, cell.depth + 1});
    }
    return total;
}

}  // namespace lindiff
