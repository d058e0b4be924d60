#include <doctest.h>

#include <cmath>

#include "lindiff/boundary.hpp"
#include "lindiff/spec_io.hpp"
#include "support/generators.hpp"

using namespace lindiff;

namespace {

DiffusionSpec cantor_spec() { return build_named_example("cantor_scale").spec; }
DiffusionSpec brownian01() { return build_named_example("brownian_01").spec; }

// The Cantor function as a form over the cantor_scale components:
// zero coefficient on the Lebesgue part, one on the Cantor part.
FormFunction cantor_form() {
    FormFunction u;
    u.base_x = 0.0;
    u.base_val = 0.0;
    u.coefficients = {PiecewiseConstant::constant(0.0), PiecewiseConstant::constant(1.0)};
    return u;
}

// Independent oracle: fine-grid finite-difference Dirichlet energy
// sum (du/ds)^2 ds over a uniform grid, for forms over brownian-style scales.
double fd_energy(const ScaleFunction& scale, const FormFunction& u, double lo, double hi, int n) {
    double total = 0.0;
    double prev_u = form_eval_bounds(scale, u, lo, 1e-12).mid();
    double prev_s = eval_bounds(scale, lo, 1e-12).mid();
    for (int i = 1; i <= n; ++i) {
        double x = lo + (hi - lo) * static_cast<double>(i) / n;
        double cur_u = form_eval_bounds(scale, u, x, 1e-12).mid();
        double cur_s = eval_bounds(scale, x, 1e-12).mid();
        double ds = cur_s - prev_s;
        if (ds > 0.0) total += (cur_u - prev_u) * (cur_u - prev_u) / ds;
        prev_u = cur_u;
        prev_s = cur_s;
    }
    return total;
}

}  // namespace

TEST_CASE("energy of the scale against itself is the total scale mass") {
    DiffusionSpec spec = cantor_spec();
    FormFunction s_form = scale_as_form(spec.scale);
    Approx e = energy(spec, s_form, s_form, 1e-9);
    CHECK(std::fabs(e.value - 2.0) <= e.error + 1e-12);
}

TEST_CASE("energy of the Cantor function in its own space is its weight") {
    DiffusionSpec spec = cantor_spec();
    FormFunction c = cantor_form();
    Approx e = energy(spec, c, c, 1e-9);
    CHECK(std::fabs(e.value - 1.0) <= e.error + 1e-12);
}

TEST_CASE("constants have zero energy when k = 0") {
    DiffusionSpec spec = brownian01();
    FormFunction u;
    u.base_val = 5.0;
    u.coefficients = {PiecewiseConstant::constant(0.0)};
    Approx e = energy(spec, u, u, 1e-9);
    CHECK(e.value == 0.0);
    CHECK(e.error == 0.0);
}

TEST_CASE("energy with a killing atom picks up u v at the atom") {
    DiffusionSpec spec = brownian01();
    spec.killing.components.push_back(Atom{0.5, 2.0});
    FormFunction u;  // u(x) = x
    u.coefficients = {PiecewiseConstant::constant(1.0)};
    Approx e = energy(spec, u, u, 1e-9);
    // int (du/ds)^2 ds = 1 plus u(1/2)^2 * 2 = 1/2
    CHECK(e.value == doctest::Approx(1.5).epsilon(1e-12));
}

TEST_CASE("energy is symmetric and bilinear") {
    auto g = testgen::rng(42);
    for (std::uint64_t seed : {10ull, 11ull, 12ull}) {
        DiffusionSpec spec = testgen::random_piecewise_spec(seed);
        FormFunction u = testgen::random_form(g, spec.scale, spec.domain.lo, spec.domain.hi);
        FormFunction v = testgen::random_form(g, spec.scale, spec.domain.lo, spec.domain.hi);
        FormFunction w = testgen::random_form(g, spec.scale, spec.domain.lo, spec.domain.hi);
        double euv = energy(spec, u, v, 1e-10).value;
        double evu = energy(spec, v, u, 1e-10).value;
        CHECK(euv == doctest::Approx(evu).epsilon(1e-10));

        FormFunction upw = u;
        for (std::size_t i = 0; i < upw.coefficients.size(); ++i) {
            // add w's coefficients piecewise
            PiecewiseConstant& a = upw.coefficients[i];
            const PiecewiseConstant& b = w.coefficients[i];
            std::vector<double> cuts = a.breakpoints;
            cuts.insert(cuts.end(), b.breakpoints.begin(), b.breakpoints.end());
            std::sort(cuts.begin(), cuts.end());
            cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
            PiecewiseConstant sum;
            sum.breakpoints = cuts;
            for (std::size_t k = 0; k <= cuts.size(); ++k) {
                double probe = cuts.empty() ? 0.0
                               : k == 0     ? cuts.front() - 1
                               : k == cuts.size() ? cuts.back() + 1
                                                  : 0.5 * (cuts[k - 1] + cuts[k]);
                sum.values.push_back(a.at(probe) + b.at(probe));
            }
            a = sum;
        }
        upw.base_val = u.base_val + w.base_val;
        double lhs = energy(spec, upw, v, 1e-10).value;
        double rhs = energy(spec, u, v, 1e-10).value + energy(spec, w, v, 1e-10).value;
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
    }
}

TEST_CASE("membership sees only the restriction of u to the domain") {
    // u(x) = x expressed over the identity scale on all of R is a perfectly
    // good element of the space on [0,1]; its behavior outside I must not
    // disqualify it.
    DiffusionSpec spec = brownian01();
    ScaleFunction wide = ScaleFunction::identity();
    FormFunction u;
    u.base_x = 0.5;
    u.base_val = 0.5;
    u.coefficients = {PiecewiseConstant::constant(1.0)};
    CHECK(membership(spec, wide, u, MembershipVariant::Full).verdict == Verdict::Yes);
}

TEST_CASE("membership rewrites a window-cover derivative over a Lebesgue scale") {
    DiffusionSpec spec = brownian01();
    ScaleFunction window_scale;
    window_scale.ds.components.push_back(RationalWindows{6, false});
    FormFunction u;  // u = the cutoff window scale itself, restricted to [0,1]
    u.base_x = 0.5;
    u.coefficients = {PiecewiseConstant::constant(1.0)};
    VerdictReport rep = membership(spec, window_scale, u, MembershipVariant::Full);
    CHECK(rep.verdict == Verdict::Yes);

    // Against Lebesgue mass on the whole line the same u has a nonzero tail
    // limit, so it fails the L2(m) clause.
    DiffusionSpec line = build_named_example("brownian_line").spec;
    FormFunction w = u;
    VerdictReport out = membership(line, window_scale, w, MembershipVariant::Full);
    CHECK(out.verdict == Verdict::No);

    // The unbounded cover is not dominated by any piecewise representation.
    ScaleFunction dense = ScaleFunction::rational_window_scale(false);
    FormFunction d;
    d.base_x = 0.5;
    d.coefficients = {PiecewiseConstant::constant(1.0)};
    CHECK(membership(spec, dense, d, MembershipVariant::Full).verdict != Verdict::Yes);
}

TEST_CASE("energy with diffuse killing matches the closed form") {
    DiffusionSpec spec = brownian01();
    spec.killing.components.push_back(LebesgueDensity{{0.2, 0.6}, {3.0}});
    FormFunction u;  // u(x) = x
    u.coefficients = {PiecewiseConstant::constant(1.0)};
    Approx e = energy(spec, u, u, 1e-8);
    // int (du/ds)^2 ds = 1 plus 3 * int_{0.2}^{0.6} x^2 dx = 0.208
    double expected = 1.0 + (0.6 * 0.6 * 0.6 - 0.2 * 0.2 * 0.2);
    CHECK(std::fabs(e.value - expected) <= e.error + 1e-7);
}

TEST_CASE("unit contraction through a singular scale clips at the staircase midpoint") {
    DiffusionSpec spec = cantor_spec();
    FormFunction u = scale_as_form(spec.scale);  // u = s, range [0, 2]
    FormFunction v = unit_contraction(spec.scale, u, 1e-10);
    double eu = energy(spec, u, u, 1e-10).value;
    double ev = energy(spec, v, v, 1e-10).value;
    CHECK(ev <= eu + 1e-9);
    // s crosses 1 at x = 1/2, so the kept energy is ds([0, 1/2]) = 1.
    CHECK(ev == doctest::Approx(1.0).epsilon(1e-7));
    Bounds plateau = form_eval_bounds(spec.scale, v, 0.75, 1e-10);
    CHECK(plateau.mid() == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("membership: the Cantor function separates the two spaces") {
    DiffusionSpec cantor = cantor_spec();
    DiffusionSpec brownian = brownian01();
    FormFunction c = cantor_form();

    VerdictReport in_cantor = membership(cantor, cantor.scale, c, MembershipVariant::Full);
    CHECK(in_cantor.verdict == Verdict::Yes);

    VerdictReport in_brownian = membership(brownian, cantor.scale, c, MembershipVariant::Full);
    CHECK(in_brownian.verdict == Verdict::No);
}

TEST_CASE("membership: zero-boundary variant enforces u = 0 at regular boundaries") {
    DiffusionSpec spec;
    spec.domain = Interval::open(0, 1);
    spec.scale = ScaleFunction{0.0, 0.0, RadonMeasure::lebesgue(Interval::open(0, 1))};
    spec.speed = RadonMeasure::lebesgue(Interval::open(0, 1));
    FormFunction u;  // u(x) = x
    u.coefficients = {PiecewiseConstant::constant(1.0)};
    CHECK(regular_boundary(spec, Side::Left) == TriBool::Yes);
    CHECK(regular_boundary(spec, Side::Right) == TriBool::Yes);
    CHECK(membership(spec, spec.scale, u, MembershipVariant::Full).verdict == Verdict::Yes);
    VerdictReport rep = membership(spec, spec.scale, u, MembershipVariant::ZeroBoundary);
    CHECK(rep.verdict == Verdict::No);
}

TEST_CASE("regular_boundary examples") {
    DiffusionSpec line = build_named_example("brownian_line").spec;
    CHECK(regular_boundary(line, Side::Left) == TriBool::No);
    CHECK(regular_boundary(line, Side::Right) == TriBool::No);
    DiffusionSpec closed = brownian01();
    CHECK(regular_boundary(closed, Side::Left) == TriBool::No);  // 0 in I
}

TEST_CASE("unit contraction clips a steep linear function") {
    DiffusionSpec spec = brownian01();
    FormFunction u;  // u(x) = 2x on [0,1]
    u.coefficients = {PiecewiseConstant::constant(2.0)};
    double eu = energy(spec, u, u, 1e-10).value;
    CHECK(eu == doctest::Approx(4.0).epsilon(1e-12));

    FormFunction v = unit_contraction(spec.scale, u, 1e-12);
    double ev = energy(spec, v, v, 1e-10).value;
    CHECK(ev == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(ev <= eu + 1e-9);
    CHECK(fd_energy(spec.scale, v, 0.0, 1.0, 4096) == doctest::Approx(2.0).epsilon(1e-3));

    Bounds half = form_eval_bounds(spec.scale, v, 0.5, 1e-12);
    Bounds top = form_eval_bounds(spec.scale, v, 0.9, 1e-12);
    CHECK(half.mid() == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(top.mid() == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("unit contraction is a no-op inside [0,1] and flattens constants") {
    DiffusionSpec spec = brownian01();
    FormFunction u;  // u(x) = x
    u.coefficients = {PiecewiseConstant::constant(1.0)};
    FormFunction v = unit_contraction(spec.scale, u, 1e-12);
    CHECK(energy(spec, v, v, 1e-10).value ==
          doctest::Approx(energy(spec, u, u, 1e-10).value).epsilon(1e-12));

    FormFunction c5;
    c5.base_val = 5.0;
    c5.coefficients = {PiecewiseConstant::constant(0.0)};
    FormFunction vc = unit_contraction(spec.scale, c5, 1e-12);
    CHECK(vc.base_val == 1.0);
    CHECK(energy(spec, vc, vc, 1e-10).value == 0.0);
}

TEST_CASE("unit contraction never raises the energy on random forms") {
    auto g = testgen::rng(2024);
    for (int trial = 0; trial < 60; ++trial) {
        DiffusionSpec spec = testgen::random_piecewise_spec(500 + trial);
        FormFunction u = testgen::random_form(g, spec.scale, spec.domain.lo, spec.domain.hi);
        FormFunction v = unit_contraction(spec.scale, u, 1e-12);
        double eu = energy(spec, u, u, 1e-11).value;
        double ev = energy(spec, v, v, 1e-11).value;
        CHECK(ev <= eu + 1e-9);
    }
}

TEST_CASE("is_regular_subspace: the paper's staircase pair and two rejections") {
    DiffusionSpec sub = brownian01();
    DiffusionSpec sup = cantor_spec();
    CHECK(is_regular_subspace(sub, sup).verdict == Verdict::Yes);

    DiffusionSpec twox = brownian01();
    twox.scale.ds = RadonMeasure::scaled_lebesgue(Interval::closed(0, 1), 2.0);
    CHECK(is_regular_subspace(twox, brownian01()).verdict == Verdict::No);

    DiffusionSpec half_cantor = cantor_spec();
    half_cantor.scale.ds.components[1] = CantorCopy{Interval::closed(0, 1), 0.5};
    CHECK(is_regular_subspace(half_cantor, cantor_spec()).verdict == Verdict::No);
}

TEST_CASE("is_regular_subspace throws on mismatched bases") {
    DiffusionSpec a = brownian01();
    DiffusionSpec b = brownian01();
    b.speed = RadonMeasure::scaled_lebesgue(Interval::closed(0, 1), 2.0);
    CHECK_THROWS_AS(is_regular_subspace(a, b), MismatchedBase);
}

TEST_CASE("is_regular_subspace is transitive on the representable algebra") {
    DiffusionSpec A = brownian01();
    DiffusionSpec B = cantor_spec();
    DiffusionSpec C = cantor_spec();
    C.scale.ds.components.push_back(CantorCopy{Interval::closed(0.1, 0.1 + 1.0 / 3), 1.0});
    CHECK(is_regular_subspace(A, B).verdict == Verdict::Yes);
    CHECK(is_regular_subspace(B, C).verdict == Verdict::Yes);
    CHECK(is_regular_subspace(A, C).verdict == Verdict::Yes);
}

TEST_CASE("subspace_from_set: identity, cantor drop, and the (3.2) gap") {
    DiffusionSpec sup = cantor_spec();
    DiffusionSpec same = subspace_from_set(sup, IntervalSet{});
    CHECK(is_regular_subspace(same, sup).verdict == Verdict::Yes);
    CHECK(measures_equal(same.scale.ds, sup.scale.ds));

    ScaleRestriction cantor_marker;
    cantor_marker.removed_singular = {1};
    DiffusionSpec dropped = subspace_from_set(sup, cantor_marker);
    CHECK(measures_equal(dropped.scale.ds, brownian01().scale.ds));
    CHECK(is_regular_subspace(dropped, sup).verdict == Verdict::Yes);

    DiffusionSpec line = build_named_example("brownian_line").spec;
    CHECK_THROWS_AS(subspace_from_set(line, canonicalize({Interval::open(1, 2)})),
                    Condition32Violated);
}

TEST_CASE("any removed set with nonempty interior violates (3.2)") {
    // 1_{A^c} ds charges no subinterval of A, so interval-shaped removals can
    // only ever be rejected; the constructive direction lives in the
    // (Lebesgue-null) singular markers.
    for (std::uint64_t seed : {31ull, 32ull, 33ull}) {
        DiffusionSpec sup = testgen::random_piecewise_spec(seed);
        auto g = testgen::rng(seed * 7);
        double w = sup.domain.hi - sup.domain.lo;
        double lo = sup.domain.lo + testgen::uniform(g, 0.1, 0.4) * w;
        double hi = lo + testgen::uniform(g, 0.05, 0.2) * w;
        CHECK_THROWS_AS(subspace_from_set(sup, canonicalize({Interval::open(lo, hi)})),
                        Condition32Violated);
    }
}

TEST_CASE("constructor soundness on random singular drops") {
    for (std::uint64_t seed : {41ull, 42ull, 43ull, 44ull}) {
        DiffusionSpec sup = testgen::random_piecewise_spec(seed);
        auto g = testgen::rng(seed * 13);
        double w = sup.domain.hi - sup.domain.lo;
        double lo = sup.domain.lo + testgen::uniform(g, 0.1, 0.5) * w;
        double hi = lo + testgen::uniform(g, 0.1, 0.4) * w;
        sup.scale.ds.components.push_back(
            CantorCopy{Interval::closed(lo, hi), testgen::uniform(g, 0.5, 2.0)});
        ScaleRestriction marker;
        marker.removed_singular = {sup.scale.ds.components.size() - 1};
        DiffusionSpec sub = subspace_from_set(sup, marker);
        CHECK(is_regular_subspace(sub, sup).verdict == Verdict::Yes);
        CHECK(sub.scale.ds.components.size() + 1 == sup.scale.ds.components.size());
    }
}

TEST_CASE("energy agrees across sub- and superspace for subspace forms") {
    DiffusionSpec sup = cantor_spec();
    DiffusionSpec sub = brownian01();
    // u with du/ds supported off the Cantor component: in sub terms the
    // coefficient is 1 on the single Lebesgue component; in sup terms it is
    // (1, 0) over (Lebesgue, Cantor).
    FormFunction u_sub;
    u_sub.coefficients = {PiecewiseConstant::constant(1.0)};
    FormFunction u_sup;
    u_sup.coefficients = {PiecewiseConstant::constant(1.0), PiecewiseConstant::constant(0.0)};
    double e_sub = energy(sub, u_sub, u_sub, 1e-10).value;
    double e_sup = energy(sup, u_sup, u_sup, 1e-10).value;
    CHECK(e_sub == doctest::Approx(e_sup).epsilon(1e-12));
}
