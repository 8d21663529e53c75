#pragma once

#include <span>
#include <vector>

#include "dispersive/banded.hpp"
#include "dispersive/grid.hpp"

namespace dispersive {

/// Finite-difference weights for D^m at offset 0, in units of dx^-m.
struct Stencil {
    int order = 0;
    std::vector<int> offsets;
    std::vector<double> weights;

    /// sum_j w_j u[center + offset_j] / dx^order
    double apply(std::span<const double> u, std::size_t center, double dx) const;
};

/**
 * Interpolatory weights for D^m on the integer offsets given.
 *
 * Uses Fornberg's recurrence in extended precision, then verifies the
 * moment conditions sum_j w_j o_j^p = m! [p == m] for p < offsets.size().
 * Throws ValidationError on repeated offsets or too few offsets for m.
 */
Stencil fd_weights(int m, std::vector<int> offsets);

/// Largest normalized moment-condition residual of a stencil.
double moment_residual(const Stencil& s);

/// Interior stencil width for D^m at second-order accuracy: m + 3 - (m mod 2).
int stencil_width(int m);

/// Minimal one-sided stencil for D^m with second-order accuracy (m + 2 points, or 1 for m = 0).
enum class BoundaryEnd { left, right };
Stencil one_sided_stencil(int m, BoundaryEnd end);

/**
 * Matrix of D^m on the grid.
 *
 * Every row uses stencil_width(m) consecutive nodes, centered where possible
 * and shifted inward near the ends, so every row is O(dx^2) accurate.
 */
BandedMatrix derivative_matrix(int m, const Grid& grid);

/// One boundary condition D^order u(end) = 0 as a matrix row.
struct ConstraintRow {
    std::size_t row = 0;
    int order = 0;
    BoundaryEnd end = BoundaryEnd::left;
    std::size_t first_column = 0;
    std::vector<double> coefficients;
};

/**
 * Rows for D^i u(0) = D^i u(L) = 0 (i < l) and D^l u(L) = 0.
 *
 * Left conditions of order o occupy row o; right conditions of order o occupy
 * row N - o. The right-hand side of every row is zero.
 */
std::vector<ConstraintRow> bc_rows(int l, const Grid& grid);

/// One-sided second-order value of D^m u at the chosen end.
double boundary_derivative(const GridFunction& u, int m, BoundaryEnd end);

}  // namespace dispersive
