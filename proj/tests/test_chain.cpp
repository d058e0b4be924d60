#include <doctest.h>

#include <cmath>

#include "lindiff/chain.hpp"
#include "lindiff/spec_io.hpp"
#include "support/generators.hpp"

using namespace lindiff;

namespace {

FiniteChain two_state_flip() {
    FiniteChain c;
    c.n = 2;
    c.q = {-1.0, 1.0, 1.0, -1.0};
    return c;
}

}  // namespace

TEST_CASE("irreducibility: birth-death, blocks, and one-way edges") {
    auto g = testgen::rng(5);
    CHECK(is_irreducible(testgen::random_birth_death(g, 6)));

    FiniteChain blocks;
    blocks.n = 4;
    blocks.q.assign(16, 0.0);
    blocks.at(0, 1) = 1.0;
    blocks.at(1, 0) = 1.0;
    blocks.at(2, 3) = 1.0;
    blocks.at(3, 2) = 1.0;
    for (int i = 0; i < 4; ++i) blocks.at(i, i) = -1.0;
    CHECK_FALSE(is_irreducible(blocks));

    FiniteChain one_way;
    one_way.n = 3;
    one_way.q.assign(9, 0.0);
    one_way.at(0, 1) = 1.0;  // no way back
    one_way.at(1, 2) = 1.0;
    one_way.at(2, 1) = 1.0;
    one_way.at(0, 0) = -1.0;
    one_way.at(1, 1) = -2.0;
    one_way.at(2, 2) = -1.0;
    CHECK_FALSE(is_irreducible(one_way));
}

TEST_CASE("resolvent closed forms") {
    FiniteChain absorbing;
    absorbing.n = 3;
    absorbing.q.assign(9, 0.0);
    auto u = resolvent(absorbing, 2.0);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(u[static_cast<std::size_t>(i) * 3 + j] ==
                                          doctest::Approx(i == j ? 0.5 : 0.0));

    auto flip = resolvent(two_state_flip(), 1.0);
    CHECK(flip[0] == doctest::Approx(2.0 / 3).epsilon(1e-12));
    CHECK(flip[1] == doctest::Approx(1.0 / 3).epsilon(1e-12));
    CHECK(flip[2] == doctest::Approx(1.0 / 3).epsilon(1e-12));
    CHECK(flip[3] == doctest::Approx(2.0 / 3).epsilon(1e-12));

    FiniteChain killed;
    killed.n = 1;
    killed.q = {-1.0};
    CHECK(resolvent(killed, 1.0)[0] == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("resolvent identity U^a - U^b = (b - a) U^a U^b") {
    auto g = testgen::rng(17);
    for (int trial = 0; trial < 10; ++trial) {
        int n = testgen::uniform_int(g, 2, 12);
        FiniteChain chain = testgen::random_sparse_chain(g, n);
        double a = 0.7, b = 1.9;
        auto ua = resolvent(chain, a), ub = resolvent(chain, b);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                double prod = 0.0;
                for (int k = 0; k < n; ++k)
                    prod += ua[static_cast<std::size_t>(i) * n + k] *
                            ub[static_cast<std::size_t>(k) * n + j];
                double lhs = ua[static_cast<std::size_t>(i) * n + j] -
                             ub[static_cast<std::size_t>(i) * n + j];
                CHECK(std::fabs(lhs - (b - a) * prod) <= 1e-10);
            }
        }
    }
}

TEST_CASE("lemma 2.1 report on the paper's three shapes") {
    auto g = testgen::rng(23);
    Lemma21Report irr = lemma21_report(testgen::random_birth_death(g, 8), 1.0);
    CHECK(irr.irreducible);
    CHECK(irr.columns_all_positive);
    CHECK(irr.columns_zero_or_positive);
    CHECK(irr.consistent);

    FiniteChain blocks;
    blocks.n = 4;
    blocks.q.assign(16, 0.0);
    blocks.at(0, 1) = blocks.at(1, 0) = 1.0;
    blocks.at(2, 3) = blocks.at(3, 2) = 1.0;
    for (int i = 0; i < 4; ++i) blocks.at(i, i) = -1.0;
    Lemma21Report two = lemma21_report(blocks, 1.0);
    CHECK_FALSE(two.irreducible);
    CHECK_FALSE(two.columns_all_positive);
    CHECK_FALSE(two.columns_zero_or_positive);
    CHECK(two.consistent);

    for (int trial = 0; trial < 400; ++trial) {
        FiniteChain chain = testgen::random_sparse_chain(g, testgen::uniform_int(g, 2, 9));
        CHECK(lemma21_report(chain, 0.5).consistent);
    }
}

TEST_CASE("symmetrizing basis: birth-death, two blocks, and a one-way cycle") {
    FiniteChain bd;
    bd.n = 3;
    bd.q.assign(9, 0.0);
    bd.at(0, 1) = bd.at(1, 0) = bd.at(1, 2) = bd.at(2, 1) = 1.0;
    bd.at(0, 0) = -1.0;
    bd.at(1, 1) = -2.0;
    bd.at(2, 2) = -1.0;
    MeasureCone cone = symmetrizing_basis(bd);
    REQUIRE(cone.dimension() == 1);
    CHECK(cone.basis[0][0] == doctest::Approx(cone.basis[0][1]).epsilon(1e-12));
    CHECK(cone.basis[0][1] == doctest::Approx(cone.basis[0][2]).epsilon(1e-12));

    FiniteChain blocks;
    blocks.n = 4;
    blocks.q.assign(16, 0.0);
    blocks.at(0, 1) = blocks.at(1, 0) = 1.0;
    blocks.at(2, 3) = blocks.at(3, 2) = 1.0;
    for (int i = 0; i < 4; ++i) blocks.at(i, i) = -1.0;
    CHECK(symmetrizing_basis(blocks).dimension() == 2);

    FiniteChain cycle;  // clockwise rate 1, counterclockwise 2: Kolmogorov fails
    cycle.n = 3;
    cycle.q.assign(9, 0.0);
    cycle.at(0, 1) = cycle.at(1, 2) = cycle.at(2, 0) = 1.0;
    cycle.at(1, 0) = cycle.at(2, 1) = cycle.at(0, 2) = 2.0;
    for (int i = 0; i < 3; ++i) cycle.at(i, i) = -3.0;
    CHECK_THROWS_AS(symmetrizing_basis(cycle), EmptyCone);
}

TEST_CASE("uniqueness at desk scale: irreducible reversible chains have a 1-d cone") {
    auto g = testgen::rng(31);
    for (int trial = 0; trial < 40; ++trial) {
        int n = testgen::uniform_int(g, 2, 20);
        FiniteChain chain = testgen::random_birth_death(g, n);
        CHECK(symmetrizing_basis(chain).dimension() == 1);
    }
    // Gluing two disjoint copies always yields dimension >= 2.
    for (int trial = 0; trial < 10; ++trial) {
        int n = testgen::uniform_int(g, 2, 8);
        FiniteChain a = testgen::random_birth_death(g, n);
        FiniteChain two;
        two.n = 2 * n;
        two.q.assign(static_cast<std::size_t>(4) * n * n, 0.0);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                two.at(i, j) = a.at(i, j);
                two.at(n + i, n + j) = a.at(i, j);
            }
        CHECK(symmetrizing_basis(two).dimension() >= 2);
    }
}

TEST_CASE("discretize: brownian rates and hitting probabilities") {
    DiffusionSpec line = build_named_example("brownian_line").spec;
    const double h = 0.125;
    std::vector<double> grid;
    for (int i = 0; i <= 16; ++i) grid.push_back(-1.0 + i * h);
    FiniteChain chain = discretize(line, grid);
    for (int i = 1; i + 1 < chain.n; ++i) {
        CHECK(chain.at(i, i + 1) == doctest::Approx(1.0 / (h * h)).epsilon(1e-12));
        CHECK(chain.at(i, i - 1) == doctest::Approx(1.0 / (h * h)).epsilon(1e-12));
        double p_up = chain.at(i, i + 1) / (chain.at(i, i + 1) + chain.at(i, i - 1));
        CHECK(p_up == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(chain.killing_rate(i) <= 1e-12);
    }
}

TEST_CASE("discretize: the staircase scale gives p_up = 5/7 at 1/3") {
    DiffusionSpec cantor = build_named_example("cantor_scale").spec;
    std::vector<double> grid{0.0, 1.0 / 3, 2.0 / 3, 1.0};
    FiniteChain chain = discretize(cantor, grid);
    double p_up = chain.at(1, 2) / (chain.at(1, 2) + chain.at(1, 0));
    CHECK(p_up == doctest::Approx(5.0 / 7.0).epsilon(1e-9));
}

TEST_CASE("discretize: a killing atom inside a cell becomes a positive rate") {
    DiffusionSpec line = build_named_example("brownian_line").spec;
    line.killing.components.push_back(Atom{0.05, 2.0});
    std::vector<double> grid{-1.0, -0.5, 0.0, 0.5, 1.0};
    FiniteChain chain = discretize(line, grid);
    CHECK(chain.killing_rate(2) > 0.0);  // the cell around 0 holds the atom
    CHECK(chain.killing_rate(1) <= 1e-12);
}

TEST_CASE("bridge consistency: the detailed-balance measure is the cell-mass vector") {
    for (const char* name : {"brownian_line", "cantor_scale"}) {
        DiffusionSpec spec = build_named_example(name).spec;
        double lo = name == std::string("brownian_line") ? -1.5 : 0.0;
        double hi = name == std::string("brownian_line") ? 1.5 : 1.0;
        std::vector<double> grid;
        for (int i = 0; i <= 24; ++i) grid.push_back(lo + (hi - lo) * i / 24.0);
        FiniteChain chain = discretize(spec, grid);
        MeasureCone cone = symmetrizing_basis(chain);
        REQUIRE(cone.dimension() == 1);
        std::vector<double> cells = grid_cell_masses(spec.speed, grid, 1e-13);
        double ratio = cells[0] / cone.basis[0][0];
        for (std::size_t i = 0; i < cells.size(); ++i)
            CHECK(std::fabs(cells[i] - ratio * cone.basis[0][i]) <= 1e-10 * cells[i]);
    }
}
