#pragma once

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "lindiff/cantor.hpp"
#include "lindiff/interval.hpp"
#include "lindiff/rationals.hpp"

namespace lindiff {

/// Piecewise-constant nonnegative density against Lebesgue measure. Value i
/// applies on (breakpoints[i], breakpoints[i+1]); the density is zero outside
/// the breakpoint range. The first/last breakpoint may be -inf/+inf.
struct LebesgueDensity {
    std::vector<double> breakpoints;
    std::vector<double> values;
};

struct Atom {
    double location = 0.0;
    double mass = 1.0;
};

/// The standard Cantor measure mapped affinely onto `support`, scaled to
/// total mass `weight`.
struct CantorCopy {
    Interval support = Interval::closed(0.0, 1.0);
    double weight = 1.0;
};

/// The measure 1_G(y) dy where G is the union of the dyadic windows around
/// the enumerated rationals (all of them when count_cutoff is empty).
struct RationalWindows {
    std::optional<int> count_cutoff;  // nullopt = unbounded
    bool signed_enumeration = false;
};

using MeasureComponent = std::variant<LebesgueDensity, Atom, CantorCopy, RationalWindows>;

struct RadonMeasure {
    std::vector<MeasureComponent> components;

    bool has_atoms() const;
    bool has_component_with_error() const;  // CantorCopy or unbounded RationalWindows

    static RadonMeasure zero() { return {}; }
    static RadonMeasure lebesgue(const Interval& on);
    static RadonMeasure scaled_lebesgue(const Interval& on, double value);
};

/// Throws InvalidArgument when a component violates its invariants.
void validate(const MeasureComponent& c);
void validate(const RadonMeasure& m);

/// Window count cap: beyond this index the half-width 2^-(n+1) drops under
/// the ulp of a center of size up to n, so the open window would collapse in
/// double precision. The geometric tail beyond the cap stays below 6e-14 and
/// is always carried as certified error; finite cutoffs above the cap are
/// rejected at validation.
inline constexpr int kMaxRationalWindows = 44;

/// Certified bracket / approximation of mu(J). For unbounded J the result may
/// be a certified infinite verdict.
Bounds mass_bounds(const RadonMeasure& mu, const Interval& J, double tol);
Bounds mass_bounds(const MeasureComponent& c, const Interval& J, double tol);
Approx mass(const RadonMeasure& mu, const Interval& J, double tol);

/// Mass of the open interval between p and q in either order; zero when they
/// coincide.
Bounds mass_between(const RadonMeasure& mu, double p, double q, double tol);

/// True iff every open subinterval of I carries positive mu-mass; decided
/// symbolically from component supports.
bool is_fully_supported(const RadonMeasure& mu, const Interval& I);

/// Region on which the measure is locally fully supported, as closed pieces.
IntervalSet full_support_region(const RadonMeasure& mu);

/// Continuous piecewise-linear function through the nodes (xs[i], ys[i]),
/// extended affinely beyond the first/last node with the edge slopes.
struct PiecewiseLinear {
    std::vector<double> xs;
    std::vector<double> ys;

    double eval(double x) const;
    double slope_before(std::size_t seg) const;  // slope left of xs[seg]

    static PiecewiseLinear constant(double c) { return {{0.0}, {c}}; }
    static PiecewiseLinear identity() { return {{0.0, 1.0}, {0.0, 1.0}}; }
};

void validate(const PiecewiseLinear& g);

/// Certified integral of g against mu over J; exact when mu has only
/// LebesgueDensity and Atom components and the overlap is bounded. Throws
/// NonIntegrable when an unbounded tail of g against infinite mass diverges.
Approx integrate_kernel(const RadonMeasure& mu, const PiecewiseLinear& g, const Interval& J,
                        double tol);

/// Canonical form: Lebesgue components merged into at most one, atoms sorted
/// and coalesced, singular components sorted; zero pieces trimmed.
RadonMeasure canonical_measure(const RadonMeasure& m);

/// Structural equality after canonicalization (exact arithmetic).
bool measures_equal(const RadonMeasure& a, const RadonMeasure& b);

bool is_zero_measure(const RadonMeasure& m);

/// Certified integral of a monotone function against mu over a bounded J.
/// `f` must return a sound bracket at any point of the closure of J.
Bounds integrate_monotone(const RadonMeasure& mu, const Interval& J,
                          const std::function<Bounds(double)>& f, bool increasing, double tol);

}  // namespace lindiff
