#pragma once

#include "lindiff/measure.hpp"

namespace lindiff {

/// A strictly increasing continuous function stored through its Stieltjes
/// measure: s(x) = base_val + sign(x - base_x) * ds(between base_x and x).
/// ds must be atomless; full support on the ambient interval is what makes
/// s strictly increasing there and is checked where an interval is known
/// (see DiffusionSpec).
struct ScaleFunction {
    double base_x = 0.0;
    double base_val = 0.0;
    RadonMeasure ds;

    static ScaleFunction identity();
    /// s(x) = x + c(x) on [0,1]: unit Lebesgue plus a unit Cantor copy.
    static ScaleFunction cantor_plus_identity();
    /// s(x) = int_0^x 1_G(y) dy with G the rational-window cover.
    static ScaleFunction rational_window_scale(bool signed_enumeration);
};

/// Throws InvalidArgument when ds carries atoms or is otherwise malformed.
void validate(const ScaleFunction& s);

/// Certified bracket / value of s at x, which may be +-inf (the monotone
/// limit at an open or infinite endpoint).
Bounds eval_bounds(const ScaleFunction& s, double x, double tol);
Approx eval(const ScaleFunction& s, double x, double tol);

/// Monotone bisection solve of s(x) = y. The returned error bound is the
/// final bracket half-width in x; the bracket midpoint satisfies
/// |s(x) - y| <= tol. Throws InvalidArgument when y is certifiably outside
/// the range of s over [lo_hint, hi_hint] expansion.
Approx inverse(const ScaleFunction& s, double y, double tol);

/// Result of restricting a scale by a Borel set A: ds0 = 1_{A^c} ds.
struct Condition32Violation {
    Interval gap;  // open subinterval of A on which ds(A^c) vanishes
};

/// Thrown when the restricted measure fails strict increase (paper condition
/// (3.2)): some open subinterval meets A^c in zero ds-mass.
class Condition32Violated : public std::runtime_error {
public:
    explicit Condition32Violated(const Interval& gap_);
    Interval gap;
};

/// A removable Borel set: an interval union together with the (Lebesgue-null)
/// support sets of selected singular ds components. The latter is how "A is
/// the Cantor set" stays representable: it removes the marked component and
/// nothing else.
struct ScaleRestriction {
    IntervalSet removed;
    std::vector<std::size_t> removed_singular;  // indices into ds.components
};

/// ds0 = 1_{A^c} * ds, checked for strict increase on `domain`.
ScaleFunction restrict_scale(const ScaleFunction& s, const IntervalSet& A, const Interval& domain);
ScaleFunction restrict_scale(const ScaleFunction& s, const ScaleRestriction& A,
                             const Interval& domain);

}  // namespace lindiff
