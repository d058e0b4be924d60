#pragma once

#include <vector>

#include "lindiff/form.hpp"

namespace lindiff {

/// Generator of a finite continuous-time chain, row-major. Off-diagonal
/// entries are rates >= 0; row sums are <= 0, the deficit being the killing
/// rate of that state.
struct FiniteChain {
    int n = 0;
    std::vector<double> q;  // n*n, row-major

    double at(int i, int j) const { return q[static_cast<std::size_t>(i) * n + j]; }
    double& at(int i, int j) { return q[static_cast<std::size_t>(i) * n + j]; }
    double killing_rate(int i) const;
};

void validate(const FiniteChain& chain);

/// Strong connectivity of the positive-rate digraph.
bool is_irreducible(const FiniteChain& chain);

/// U^alpha = (alpha I - Q)^{-1}; entries >= 0, row sums <= 1/alpha.
std::vector<double> resolvent(const FiniteChain& chain, double alpha);

/// The three equivalent faces of irreducibility at the finite-chain level:
/// strong connectivity, every resolvent column positive everywhere, every
/// column all-zero-or-all-positive. `consistent` must always be true.
struct Lemma21Report {
    bool irreducible = false;
    bool columns_all_positive = false;
    bool columns_zero_or_positive = false;
    bool consistent = false;
};

Lemma21Report lemma21_report(const FiniteChain& chain, double alpha);

/// Nonnegative basis of the detailed-balance solution set
/// pi_i Q_ij = pi_j Q_ji. One vector per connected block that admits a
/// symmetrizing measure; uniqueness up to constants is dimension one.
struct MeasureCone {
    std::vector<std::vector<double>> basis;
    std::size_t dimension() const { return basis.size(); }
};

/// Thrown when only pi = 0 solves detailed balance (non-reversible chain).
class EmptyCone : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

MeasureCone symmetrizing_basis(const FiniteChain& chain);

/// Birth-death discretization of a diffusion on a strictly increasing grid:
/// up/down rates 1/(m_i * ds_up) and 1/(m_i * ds_down) with m_i the speed
/// mass of the Voronoi cell of x_i, so that the embedded jump probabilities
/// are the two-point hitting probabilities and the detailed-balance measure
/// is proportional to the cell masses; killing rates are k(cell)/m(cell).
FiniteChain discretize(const DiffusionSpec& spec, const std::vector<double>& grid);

/// Voronoi cell masses of a measure on the grid (shared convention with
/// discretize).
std::vector<double> grid_cell_masses(const RadonMeasure& mu, const std::vector<double>& grid,
                                     double tol);

}  // namespace lindiff
