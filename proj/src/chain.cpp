#include "lindiff/chain.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace lindiff {

namespace {
constexpr double kRateTol = 1e-12;
constexpr double kPositivity = 1e-12;
}  // namespace

double FiniteChain::killing_rate(int i) const {
    double row = 0.0;
    for (int j = 0; j < n; ++j) row += at(i, j);
    return -row;
}

void validate(const FiniteChain& chain) {
    if (chain.n < 1) throw InvalidArgument("FiniteChain: need at least one state");
    if (chain.q.size() != static_cast<std::size_t>(chain.n) * chain.n)
        throw InvalidArgument("FiniteChain: generator size mismatch");
    for (int i = 0; i < chain.n; ++i) {
        double row = 0.0, scale = 1.0;
        for (int j = 0; j < chain.n; ++j) {
            double v = chain.at(i, j);
            if (!std::isfinite(v)) throw InvalidArgument("FiniteChain: non-finite rate");
            if (i != j && v < 0.0) throw InvalidArgument("FiniteChain: negative off-diagonal rate");
            row += v;
            scale = std::max(scale, std::fabs(v));
        }
        if (row > kRateTol * scale) throw InvalidArgument("FiniteChain: row sum must be <= 0");
    }
}

namespace {

// Reachability over the positive-rate digraph from a start set.
std::vector<bool> reachable_from(const FiniteChain& c, int start, bool transpose) {
    std::vector<bool> seen(static_cast<std::size_t>(c.n), false);
    std::vector<int> stack{start};
    seen[static_cast<std::size_t>(start)] = true;
    while (!stack.empty()) {
        int i = stack.back();
        stack.pop_back();
        for (int j = 0; j < c.n; ++j) {
            if (i == j || seen[static_cast<std::size_t>(j)]) continue;
            double rate = transpose ? c.at(j, i) : c.at(i, j);
            if (rate > 0.0) {
                seen[static_cast<std::size_t>(j)] = true;
                stack.push_back(j);
            }
        }
    }
    return seen;
}

}  // namespace

bool is_irreducible(const FiniteChain& chain) {
    validate(chain);
    if (chain.n == 1) return true;
    auto fwd = reachable_from(chain, 0, false);
    auto bwd = reachable_from(chain, 0, true);
    for (int i = 0; i < chain.n; ++i)
        if (!fwd[static_cast<std::size_t>(i)] || !bwd[static_cast<std::size_t>(i)]) return false;
    return true;
}

std::vector<double> resolvent(const FiniteChain& chain, double alpha) {
    validate(chain);
    if (!(alpha > 0.0)) throw InvalidArgument("resolvent: alpha must be positive");
    const int n = chain.n;
    Eigen::MatrixXd A(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) A(i, j) = (i == j ? alpha : 0.0) - chain.at(i, j);
    Eigen::MatrixXd U = A.fullPivLu().solve(Eigen::MatrixXd::Identity(n, n));
    std::vector<double> out(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out[static_cast<std::size_t>(i) * n + j] = U(i, j);
    return out;
}

Lemma21Report lemma21_report(const FiniteChain& chain, double alpha) {
    Lemma21Report rep;
    rep.irreducible = is_irreducible(chain);
    std::vector<double> U = resolvent(chain, alpha);
    const int n = chain.n;
    double scale = 0.0;
    for (double v : U) scale = std::max(scale, std::fabs(v));
    const double thr = kPositivity * std::max(scale, 1.0);

    rep.columns_all_positive = true;
    rep.columns_zero_or_positive = true;
    for (int j = 0; j < n; ++j) {
        bool any_zero = false, any_pos = false;
        for (int i = 0; i < n; ++i) {
            double v = U[static_cast<std::size_t>(i) * n + j];
            (v > thr ? any_pos : any_zero) = true;
        }
        if (any_zero) rep.columns_all_positive = false;
        if (any_zero && any_pos) rep.columns_zero_or_positive = false;
    }
    rep.consistent = (rep.irreducible == rep.columns_all_positive) &&
                     (rep.irreducible == rep.columns_zero_or_positive);
    return rep;
}

MeasureCone symmetrizing_basis(const FiniteChain& chain) {
    validate(chain);
    const int n = chain.n;
    // pi_i = 0 is forced wherever a one-way rate leaves i; zeros propagate
    // through reversible edges, and each surviving block gets its measure by
    // spanning-tree ratios checked against every remaining edge (the cycle
    // condition).
    std::vector<bool> zero(static_cast<std::size_t>(n), false);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j && chain.at(i, j) > 0.0 && chain.at(j, i) == 0.0)
                zero[static_cast<std::size_t>(i)] = true;

    auto reversible_edge = [&](int i, int j) {
        return i != j && chain.at(i, j) > 0.0 && chain.at(j, i) > 0.0;
    };
    bool changed = true;
    while (changed) {
        changed = false;
        for (int i = 0; i < n; ++i) {
            if (!zero[static_cast<std::size_t>(i)]) continue;
            for (int j = 0; j < n; ++j)
                if (reversible_edge(i, j) && !zero[static_cast<std::size_t>(j)]) {
                    zero[static_cast<std::size_t>(j)] = true;
                    changed = true;
                }
        }
    }

    std::vector<int> block(static_cast<std::size_t>(n), -1);
    int blocks = 0;
    std::vector<std::vector<double>> basis;
    for (int root = 0; root < n; ++root) {
        if (zero[static_cast<std::size_t>(root)] || block[static_cast<std::size_t>(root)] >= 0)
            continue;
        std::vector<double> pi(static_cast<std::size_t>(n), 0.0);
        std::vector<int> stack{root};
        block[static_cast<std::size_t>(root)] = blocks;
        pi[static_cast<std::size_t>(root)] = 1.0;
        bool ok = true;
        std::vector<int> members{root};
        while (!stack.empty()) {
            int i = stack.back();
            stack.pop_back();
            for (int j = 0; j < n; ++j) {
                if (!reversible_edge(i, j) || zero[static_cast<std::size_t>(j)]) continue;
                double ratio = chain.at(i, j) / chain.at(j, i);
                double candidate = pi[static_cast<std::size_t>(i)] * ratio;
                if (block[static_cast<std::size_t>(j)] < 0) {
                    block[static_cast<std::size_t>(j)] = blocks;
                    pi[static_cast<std::size_t>(j)] = candidate;
                    members.push_back(j);
                    stack.push_back(j);
                } else if (std::fabs(pi[static_cast<std::size_t>(j)] - candidate) >
                           kRateTol * std::max(1.0, std::fabs(candidate))) {
                    ok = false;  // Kolmogorov cycle condition fails on this block
                }
            }
        }
        ++blocks;
        if (!ok) continue;
        double norm = 0.0;
        for (int m : members) norm = std::max(norm, pi[static_cast<std::size_t>(m)]);
        for (int m : members) pi[static_cast<std::size_t>(m)] /= norm;
        basis.push_back(std::move(pi));
    }
    if (basis.empty()) throw EmptyCone("symmetrizing_basis: only the zero measure solves detailed balance");
    return MeasureCone{std::move(basis)};
}

std::vector<double> grid_cell_masses(const RadonMeasure& mu, const std::vector<double>& grid,
                                     double tol) {
    const std::size_t n = grid.size();
    std::vector<double> out(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double lo = i == 0 ? grid[0] : 0.5 * (grid[i - 1] + grid[i]);
        double hi = i + 1 == n ? grid[n - 1] : 0.5 * (grid[i] + grid[i + 1]);
        // Cells tile [x_0, x_n] with midpoints split left-closed.
        out[i] = mass_bounds(mu, Interval{lo, hi, true, i + 1 == n}, tol).mid();
    }
    return out;
}

FiniteChain discretize(const DiffusionSpec& spec, const std::vector<double>& grid) {
    if (grid.size() < 3) throw InvalidArgument("discretize: grid needs at least 3 points");
    for (std::size_t i = 0; i + 1 < grid.size(); ++i)
        if (!(grid[i] < grid[i + 1]))
            throw InvalidArgument("discretize: grid must be strictly increasing");
    for (double x : grid)
        if (!spec.domain.closure().contains(x))
            throw InvalidArgument("discretize: grid must lie in the domain closure");

    const int n = static_cast<int>(grid.size());
    const double tol = 1e-13;
    std::vector<double> s(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) s[i] = eval_bounds(spec.scale, grid[i], tol).mid();
    for (std::size_t i = 0; i + 1 < grid.size(); ++i)
        if (!(s[i] < s[i + 1]))
            throw InvalidArgument("discretize: degenerate grid (vanishing scale increment)");

    std::vector<double> m = grid_cell_masses(spec.speed, grid, tol);
    std::vector<double> k = grid_cell_masses(spec.killing, grid, tol);

    FiniteChain chain;
    chain.n = n;
    chain.q.assign(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) {
        double up = 0.0, down = 0.0;
        if (i + 1 < n) up = 1.0 / (m[static_cast<std::size_t>(i)] * (s[i + 1] - s[i]));
        if (i > 0) down = 1.0 / (m[static_cast<std::size_t>(i)] * (s[i] - s[i - 1]));
        double kappa = m[static_cast<std::size_t>(i)] > 0.0
                           ? k[static_cast<std::size_t>(i)] / m[static_cast<std::size_t>(i)]
                           : 0.0;
        if (i + 1 < n) chain.at(i, i + 1) = up;
        if (i > 0) chain.at(i, i - 1) = down;
        chain.at(i, i) = -(up + down + kappa);
    }
    validate(chain);
    return chain;
}

}  // namespace lindiff
