#include <doctest.h>

#include <cmath>
#include <set>

#include "lindiff/scale.hpp"
#include "support/generators.hpp"

using namespace lindiff;

namespace {

// Independent Cantor-function oracle: bracket subdivision written directly
// against the middle-thirds definition, kept separate from the library path.
double bracket_cantor(double x, int depth) {
    double lo = 0.0, hi = 1.0, vlo = 0.0, vhi = 1.0;
    for (int k = 0; k < depth; ++k) {
        double third = (hi - lo) / 3.0;
        if (x <= lo + third) {
            hi = lo + third;
            vhi = 0.5 * (vlo + vhi);
        } else if (x >= hi - third) {
            lo = hi - third;
            vlo = 0.5 * (vlo + vhi);
        } else {
            return 0.5 * (vlo + vhi);
        }
    }
    return 0.5 * (vlo + vhi);
}

}  // namespace

TEST_CASE("cantor_function endpoints are exact") {
    CHECK(cantor_function(0.0, 40) == 0.0);
    CHECK(cantor_function(1.0, 40) == 1.0);
}

TEST_CASE("cantor_function at 1/3 stabilizes at one half") {
    // fl(1/3) sits a hair below the plateau edge, so allow the coarse depth.
    CHECK(std::fabs(cantor_function(1.0 / 3.0, 30) - 0.5) <= std::ldexp(1.0, -30));
    CHECK(cantor_function(2.0 / 3.0, 40) == 0.5);
    CHECK(cantor_function(0.5, 40) == 0.5);
}

TEST_CASE("cantor_function at 1/4 approaches 1/3") {
    CHECK(std::fabs(cantor_function(0.25, 40) - 1.0 / 3.0) <= std::ldexp(1.0, -40));
    CHECK(std::fabs(cantor_function(0.25, 20) - bracket_cantor(0.25, 20)) <=
          std::ldexp(1.0, -19));
}

TEST_CASE("cantor_function is nondecreasing and symmetric at every depth") {
    auto g = testgen::rng(11);
    for (int depth : {5, 13, 31}) {
        double prev = 0.0;
        for (int i = 0; i <= 512; ++i) {
            double x = static_cast<double>(i) / 512.0;
            double v = cantor_function(x, depth);
            CHECK(v >= prev);
            prev = v;
            CHECK(cantor_function(1.0 - x, depth) == doctest::Approx(1.0 - v).epsilon(1e-15));
        }
        for (int i = 0; i < 200; ++i) {
            double x = std::ldexp(static_cast<double>(testgen::uniform_int(g, 0, (1 << 20))), -20);
            CHECK(cantor_function(1.0 - x, depth) == 1.0 - cantor_function(x, depth));
        }
    }
}

TEST_CASE("scale evaluation: identity, cantor staircase, window scale") {
    ScaleFunction id = ScaleFunction::identity();
    Approx v = eval(id, 0.25, 1e-9);
    CHECK(v.value == 0.25);
    CHECK(v.error == 0.0);

    ScaleFunction cs = ScaleFunction::cantor_plus_identity();
    Approx w = eval(cs, 1.0 / 3.0, 1e-9);
    CHECK(std::fabs(w.value - 5.0 / 6.0) <= w.error + 1e-9);
    Approx top = eval(cs, 1.0, 1e-9);
    CHECK(top.value == doctest::Approx(2.0).epsilon(1e-12));

    ScaleFunction rw = ScaleFunction::rational_window_scale(false);
    Approx inf_val = eval(rw, kInf, 1e-9);
    CHECK(inf_val.is_finite());
    CHECK(inf_val.value <= 1.0 + inf_val.error);
}

TEST_CASE("inverse: identity, linear, and the cantor scale") {
    ScaleFunction id = ScaleFunction::identity();
    CHECK(inverse(id, 0.7, 1e-12).value == doctest::Approx(0.7).epsilon(1e-10));

    ScaleFunction twox{0.0, 0.0, RadonMeasure::scaled_lebesgue(Interval::whole_line(), 2.0)};
    CHECK(inverse(twox, 3.0, 1e-12).value == doctest::Approx(1.5).epsilon(1e-10));

    ScaleFunction cs = ScaleFunction::cantor_plus_identity();
    Approx x = inverse(cs, 1.0, 1e-9);
    Approx back = eval(cs, x.value, 1e-12);
    CHECK(std::fabs(back.value - 1.0) <= 1e-9 + back.error);
}

TEST_CASE("inverse rejects values outside the range") {
    ScaleFunction cs = ScaleFunction::cantor_plus_identity();  // range [0, 2]
    CHECK_THROWS_AS(inverse(cs, 3.0, 1e-9), InvalidArgument);
    CHECK_THROWS_AS(inverse(cs, -1.0, 1e-9), InvalidArgument);
}

TEST_CASE("inverse round-trips through eval on random points") {
    for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
        DiffusionSpec spec = testgen::random_piecewise_spec(seed);
        auto g = testgen::rng(seed + 100);
        Bounds lo_v = eval_bounds(spec.scale, spec.domain.lo + 0.05, 1e-12);
        Bounds hi_v = eval_bounds(spec.scale, spec.domain.hi - 0.05, 1e-12);
        for (int i = 0; i < 333; ++i) {
            double y = testgen::uniform(g, lo_v.hi, hi_v.lo);
            Approx x = inverse(spec.scale, y, 1e-10);
            Bounds back = eval_bounds(spec.scale, x.value, 1e-12);
            CHECK(std::fabs(back.mid() - y) <= 1e-9);
        }
    }
}

TEST_CASE("strict monotonicity is certified once the tolerance is small enough") {
    ScaleFunction cs = ScaleFunction::cantor_plus_identity();
    auto g = testgen::rng(7);
    for (int i = 0; i < 200; ++i) {
        double x = testgen::uniform(g, 0.0, 0.99);
        double y = x + testgen::uniform(g, 0.005, 0.01);
        Bounds diff = eval_bounds(cs, y, 1e-12) - eval_bounds(cs, x, 1e-12);
        CHECK(diff.lo > 0.0);
    }
    // Rational-window scale: certified positive across a window of low index.
    ScaleFunction rw = ScaleFunction::rational_window_scale(false);
    Bounds d = eval_bounds(rw, 1.1, 1e-12) - eval_bounds(rw, 0.9, 1e-12);
    CHECK(d.lo > 0.0);
}

TEST_CASE("the rational enumeration follows the block order") {
    CHECK(enumerate_rationals(1).num == 1);
    CHECK(enumerate_rationals(1).den == 1);
    CHECK(enumerate_rationals(2).num == 1);
    CHECK(enumerate_rationals(2).den == 2);
    CHECK(enumerate_rationals(3).num == 2);
    CHECK(enumerate_rationals(3).den == 1);
    CHECK(enumerate_rationals(9).num == 4);
    CHECK(enumerate_rationals(9).den == 1);
}

TEST_CASE("the rational enumeration is a bijection with r_n <= n") {
    auto prefix = rational_prefix(10000);
    std::set<std::pair<long long, long long>> seen;
    for (std::size_t n = 0; n < prefix.size(); ++n) {
        CHECK(std::gcd(prefix[n].num, prefix[n].den) == 1);
        CHECK(prefix[n].value() <= static_cast<double>(n + 1));
        seen.insert({prefix[n].num, prefix[n].den});
    }
    CHECK(seen.size() == prefix.size());  // no duplicates
    // Every reduced q/p with p+q <= 20 appears somewhere in the prefix.
    for (long long q = 1; q < 20; ++q)
        for (long long p = 1; p + q <= 20; ++p)
            if (std::gcd(p, q) == 1) CHECK(seen.count({q, p}) == 1);
}

TEST_CASE("restrict_scale: empty set, full gap, and the cantor component drop") {
    ScaleFunction id{0.0, 0.0, RadonMeasure::lebesgue(Interval::open(0, 3))};
    ScaleFunction same = restrict_scale(id, IntervalSet{}, Interval::open(0, 3));
    CHECK(measures_equal(same.ds, id.ds));

    IntervalSet middle = canonicalize({Interval::open(1, 2)});
    try {
        restrict_scale(id, middle, Interval::open(0, 3));
        FAIL("expected Condition32Violated");
    } catch (const Condition32Violated& e) {
        CHECK(e.gap.lo == doctest::Approx(1.0));
        CHECK(e.gap.hi == doctest::Approx(2.0));
    }

    // Dropping the Cantor component of s(x) = x + c(x) recovers the identity:
    // A is the Cantor set itself, expressed as a support marker.
    ScaleFunction cs = ScaleFunction::cantor_plus_identity();
    ScaleRestriction marker;
    marker.removed_singular = {1};  // the CantorCopy component
    ScaleFunction restricted = restrict_scale(cs, marker, Interval::closed(0, 1));
    CHECK(measures_equal(restricted.ds, RadonMeasure::lebesgue(Interval::closed(0, 1))));
}

TEST_CASE("restrict_scale refuses partial cuts of singular components") {
    ScaleFunction cs = ScaleFunction::cantor_plus_identity();
    IntervalSet half = canonicalize({Interval::open(0.0, 0.5)});
    CHECK_THROWS_AS(restrict_scale(cs, half, Interval::closed(0, 1)), UnsupportedOperation);
}
