#include <doctest.h>

#include <cmath>

#include "lindiff/measure.hpp"

using namespace lindiff;

namespace {

// Independent oracle: Cantor-measure mass of (a,b) within [0,1] by explicit
// iterated-function-system refinement to the given depth.
double ifs_cantor_mass(double a, double b, int depth, double lo = 0.0, double hi = 1.0) {
    if (b <= lo || a >= hi) return 0.0;
    if (a <= lo && b >= hi) return 1.0;
    if (depth == 0) return 0.5;  // unresolved cell: midpoint of [0, 1] of its mass
    double third = (hi - lo) / 3.0;
    return 0.5 * ifs_cantor_mass(a, b, depth - 1, lo, lo + third) +
           0.5 * ifs_cantor_mass(a, b, depth - 1, hi - third, hi);
}

}  // namespace

TEST_CASE("mass of a unit density is exact") {
    RadonMeasure mu = RadonMeasure::lebesgue(Interval::open(0, 2));
    Approx m = mass(mu, Interval::open(0, 1), 1e-9);
    CHECK(m.value == 1.0);
    CHECK(m.error == 0.0);
}

TEST_CASE("the middle third carries no Cantor mass") {
    RadonMeasure mu;
    mu.components.push_back(CantorCopy{Interval::closed(0, 1), 1.0});
    Approx m = mass(mu, Interval::open(1.0 / 3, 2.0 / 3), 1e-9);
    CHECK(std::fabs(m.value) <= m.error + 1e-15);
    CHECK(m.error <= 1e-9);
    // Cross-check a charged window against the IFS oracle at depth 30.
    Approx q = mass(mu, Interval::open(0.0, 0.4), 1e-12);
    double oracle = ifs_cantor_mass(0.0, 0.4, 30);
    CHECK(std::fabs(q.value - oracle) <= q.error + std::ldexp(1.0, -30));
}

TEST_CASE("rational windows have total mass at most one") {
    RadonMeasure mu;
    mu.components.push_back(RationalWindows{std::nullopt, false});
    Approx m = mass(mu, Interval{0.0, kInf, false, false}, 1e-9);
    CHECK(m.is_finite());
    CHECK(m.value <= 1.0 + m.error);
    CHECK(m.error <= std::ldexp(1.0, -30));
}

TEST_CASE("mass of an unbounded window against Lebesgue is a certified infinite verdict") {
    RadonMeasure mu = RadonMeasure::lebesgue(Interval::whole_line());
    Approx m = mass(mu, Interval{0.0, kInf, false, false}, 1e-9);
    CHECK_FALSE(m.is_finite());
    CHECK(m.value == kInf);
}

TEST_CASE("atoms belong to an interval only when the endpoint does") {
    RadonMeasure mu;
    mu.components.push_back(Atom{1.0, 3.0});
    CHECK(mass(mu, Interval::closed(0, 1), 1e-9).value == 3.0);
    CHECK(mass(mu, Interval::open(0, 1), 1e-9).value == 0.0);
}

TEST_CASE("full support: unit density, atoms, and gaps") {
    Interval I = Interval::open(0, 3);
    CHECK(is_fully_supported(RadonMeasure::lebesgue(I), I));

    RadonMeasure atom_only;
    atom_only.components.push_back(Atom{1.0, 1.0});
    CHECK_FALSE(is_fully_supported(atom_only, I));

    RadonMeasure gappy;
    gappy.components.push_back(LebesgueDensity{{0.0, 1.0}, {1.0}});
    gappy.components.push_back(LebesgueDensity{{2.0, 3.0}, {1.0}});
    CHECK_FALSE(is_fully_supported(gappy, I));
    CHECK(is_fully_supported(gappy, Interval::open(0, 1)));
}

TEST_CASE("unbounded rational windows are dense on their half-line") {
    RadonMeasure rw;
    rw.components.push_back(RationalWindows{std::nullopt, false});
    CHECK(is_fully_supported(rw, Interval{0.0, kInf, false, false}));
    CHECK_FALSE(is_fully_supported(rw, Interval::whole_line()));
    RadonMeasure srw;
    srw.components.push_back(RationalWindows{std::nullopt, true});
    CHECK(is_fully_supported(srw, Interval::whole_line()));
}

TEST_CASE("integrate_kernel closed forms") {
    PiecewiseLinear id{{0.0, 1.0}, {0.0, 1.0}};
    Approx a = integrate_kernel(RadonMeasure::lebesgue(Interval::open(0, 1)), id,
                                Interval::open(0, 1), 1e-9);
    CHECK(a.value == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(a.error == 0.0);

    RadonMeasure atom;
    atom.components.push_back(Atom{0.5, 3.0});
    Approx b = integrate_kernel(atom, PiecewiseLinear::constant(1.0), Interval::open(0, 1), 1e-9);
    CHECK(b.value == 3.0);
    CHECK(b.error == 0.0);
}

TEST_CASE("integrate_kernel against the Cantor measure uses its symmetry") {
    RadonMeasure mu;
    mu.components.push_back(CantorCopy{Interval::closed(0, 1), 1.0});
    PiecewiseLinear id{{0.0, 1.0}, {0.0, 1.0}};
    Approx v = integrate_kernel(mu, id, Interval::closed(0, 1), 1e-9);
    CHECK(std::fabs(v.value - 0.5) <= v.error + 1e-9);

    // Depth-d IFS cross-check: sum of cell-midpoint values, mass 2^-d each.
    const int depth = 14;
    double oracle = 0.0;
    for (int cell = 0; cell < (1 << depth); ++cell) {
        double lo = 0.0, len = 1.0;
        for (int bit = depth - 1; bit >= 0; --bit) {
            len /= 3.0;
            if ((cell >> bit) & 1) lo += 2.0 * len;
        }
        oracle += (lo + 0.5 * len) / static_cast<double>(1 << depth);
    }
    CHECK(std::fabs(v.value - oracle) <= 1e-4);  // oracle cells have width 3^-14
}

TEST_CASE("integrate_kernel signals divergent tails") {
    PiecewiseLinear id{{0.0, 1.0}, {0.0, 1.0}};
    CHECK_THROWS_AS(integrate_kernel(RadonMeasure::lebesgue(Interval::whole_line()), id,
                                     Interval{0.0, kInf, false, false}, 1e-9),
                    NonIntegrable);
}

TEST_CASE("additivity of mass over disjoint windows") {
    RadonMeasure mu;
    mu.components.push_back(LebesgueDensity{{0.0, 0.7, 2.0}, {0.5, 2.0}});
    mu.components.push_back(CantorCopy{Interval::closed(0.2, 1.4), 0.8});
    mu.components.push_back(Atom{0.7, 0.3});
    Approx left = mass(mu, Interval{0.0, 0.7, false, true}, 1e-10);
    Approx right = mass(mu, Interval{0.7, 2.0, false, false}, 1e-10);
    Approx whole = mass(mu, Interval::open(0.0, 2.0), 1e-10);
    CHECK(std::fabs(left.value + right.value - whole.value) <=
          left.error + right.error + whole.error + 1e-13);
}

TEST_CASE("halving the tolerance never increases the reported error") {
    RadonMeasure mu;
    mu.components.push_back(CantorCopy{Interval::closed(0, 1), 1.0});
    mu.components.push_back(RationalWindows{std::nullopt, false});
    double prev = kInf;
    for (double tol = 1e-3; tol >= 1e-12; tol *= 0.5) {
        Approx m = mass(mu, Interval::open(0.1, 0.9), tol);
        CHECK(m.error <= prev + 1e-18);
        prev = m.error;
    }
}

TEST_CASE("Cantor copies keep exact total mass at every depth") {
    for (double tol : {1e-3, 1e-6, 1e-9, 1e-12}) {
        RadonMeasure mu;
        mu.components.push_back(CantorCopy{Interval::closed(-2, 5), 1.0});
        Approx m = mass(mu, Interval::closed(-2, 5), tol);
        CHECK(m.value == 1.0);
        CHECK(m.error == 0.0);
    }
}

TEST_CASE("rational windows: n-th window has length 2^-n and density at most 1") {
    auto ws = rational_windows(12, false);
    for (std::size_t n = 1; n <= ws.size(); ++n)
        CHECK(ws[n - 1].length() == doctest::Approx(std::ldexp(1.0, -static_cast<int>(n))));
    RadonMeasure mu;
    mu.components.push_back(RationalWindows{std::nullopt, false});
    for (double lo : {0.1, 0.9, 1.7, 3.14}) {
        Approx m = mass(mu, Interval::open(lo, lo + 0.6), 1e-9);
        CHECK(m.value <= 0.6 + m.error);
    }
}

TEST_CASE("canonical measure equality is representation-insensitive") {
    RadonMeasure a;
    a.components.push_back(LebesgueDensity{{0.0, 1.0}, {1.0}});
    a.components.push_back(LebesgueDensity{{1.0, 2.0}, {1.0}});
    RadonMeasure b;
    b.components.push_back(LebesgueDensity{{0.0, 2.0}, {1.0}});
    CHECK(measures_equal(a, b));

    RadonMeasure c;
    c.components.push_back(LebesgueDensity{{0.0, 2.0}, {1.5}});
    CHECK_FALSE(measures_equal(a, c));

    RadonMeasure two_atoms;
    two_atoms.components.push_back(Atom{0.5, 1.0});
    two_atoms.components.push_back(Atom{0.5, 2.0});
    RadonMeasure one_atom;
    one_atom.components.push_back(Atom{0.5, 3.0});
    CHECK(measures_equal(two_atoms, one_atom));
    CHECK(is_zero_measure(RadonMeasure::zero()));
}
