#pragma once

#include "lindiff/scale.hpp"

namespace lindiff {

/// The central object: a diffusion is the triple (s, m, k) on an interval.
/// m must be fully supported on the domain; k is an arbitrary Radon measure
/// (k = 0 is exactly strong locality).
struct DiffusionSpec {
    Interval domain;
    ScaleFunction scale;
    RadonMeasure speed;
    RadonMeasure killing;
};

/// Throws InvalidArgument when the triple violates its invariants.
void validate(const DiffusionSpec& spec);

/// A point strictly inside the domain, used as the default probe c.
double interior_probe(const Interval& domain);

/// Piecewise-constant coefficient function: values[i] applies between
/// breakpoints[i-1] and breakpoints[i], with values.front() / values.back()
/// extending to -inf / +inf. Breakpoint values themselves are irrelevant
/// (these are a.e. densities against atomless measures).
struct PiecewiseConstant {
    std::vector<double> breakpoints;
    std::vector<double> values;  // size = breakpoints.size() + 1

    double at(double x) const;
    static PiecewiseConstant constant(double v) { return {{}, {v}}; }
    bool is_zero() const;
};

void validate(const PiecewiseConstant& pc);

/// An element of the form domain, stored as a base value plus one du/ds
/// coefficient function per component of the governing scale's ds:
///   u(x) = base_val + sum_i int_{base_x}^{x} coeff_i d(component_i).
struct FormFunction {
    double base_x = 0.0;
    double base_val = 0.0;
    std::vector<PiecewiseConstant> coefficients;
};

/// Validates shape and square-integrability of every coefficient against its
/// component (the L2(ds) half of the domain condition).
void validate_form(const ScaleFunction& scale, const FormFunction& u);

/// Certified evaluation of u at x (x may be +-inf for the tail limit).
Bounds form_eval_bounds(const ScaleFunction& scale, const FormFunction& u, double x, double tol);

/// Constant-coefficient form u = s itself (coefficients all 1).
FormFunction scale_as_form(const ScaleFunction& scale);

/// Is a_side a regular boundary: a not in I, s(a) finite, (m+k)((a,c)) < inf.
TriBool regular_boundary(const DiffusionSpec& spec, Side side);

/// Certified E(u,v) = sum_i int cu_i cv_i d(ds_i) + int u v dk; exact when
/// every participating component is piecewise.
Approx energy(const DiffusionSpec& spec, const FormFunction& u, const FormFunction& v, double tol);

enum class Verdict { Yes, No, Unsupported };

const char* to_string(Verdict v);

struct VerdictReport {
    Verdict verdict = Verdict::Yes;
    std::string reason;
};

enum class MembershipVariant { Full, ZeroBoundary };

/// Decides u in F^(s,m,k) (variant Full) or F_0 (variant ZeroBoundary) for a
/// FormFunction expressed over `u_scale`. The rewrite of du over spec.scale
/// is symbolic on the component algebra.
VerdictReport membership(const DiffusionSpec& spec, const ScaleFunction& u_scale,
                         const FormFunction& u, MembershipVariant variant, double tol = 1e-9);

/// The unit contraction v = (0 ∨ u) ∧ 1 with crossings located to `tol`;
/// guarantees energy(v,v) <= energy(u,u) + O(tol).
FormFunction unit_contraction(const ScaleFunction& scale, const FormFunction& u, double tol);

/// Thrown by is_regular_subspace when domains or speed measures differ.
class MismatchedBase : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Decides whether sub is a regular Dirichlet subspace of sup: k's equal and
/// d(sub.s) = 1_B d(sup.s), decided component-wise.
VerdictReport is_regular_subspace(const DiffusionSpec& sub, const DiffusionSpec& sup);

/// Constructs the regular subspace induced by the Borel set A:
/// ds0 = 1_{A^c} ds. Propagates Condition32Violated.
DiffusionSpec subspace_from_set(const DiffusionSpec& sup, const IntervalSet& A);
DiffusionSpec subspace_from_set(const DiffusionSpec& sup, const ScaleRestriction& A);

}  // namespace lindiff
