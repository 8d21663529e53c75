#pragma once

#include <span>
#include <vector>

#include "dispersive/banded.hpp"
#include "dispersive/grid.hpp"
#include "dispersive/problem.hpp"
#include "dispersive/stencils.hpp"

namespace dispersive {

/// Smallest interval count that fits every stencil for dispersive order l.
int min_intervals(int l);

/**
 * Discrete A = a I + sum_j (-1)^{j+1} D^{2j+1} with the 2l + 1 boundary rows
 * of the problem substituted for the collocation rows nearest each end.
 */
BandedMatrix assemble_operator(const ProblemSpec& spec, const Grid& grid);

/**
 * Assembled and factored linear operator for one (spec, grid) pair.
 *
 * Solves are carried out on the row-equilibrated system (every row scaled by
 * a power of two so its largest entry lies in [1, 2)); the same scaling
 * defines the residual norm used for convergence tests throughout.
 * Immutable after construction.
 */
class StationaryOperator {
public:
    StationaryOperator(const ProblemSpec& spec, const Grid& grid);

    const ProblemSpec& spec() const { return spec_; }
    const Grid& grid() const { return grid_; }
    const BandedMatrix& matrix() const { return matrix_; }
    const BandedMatrix& first_derivative() const { return d1_; }
    const std::vector<ConstraintRow>& constraints() const { return constraints_; }
    bool is_constraint_row(std::size_t i) const { return constraint_mask_[i]; }
    double row_scale(std::size_t i) const { return row_scale_[i]; }

    /// A u, raw units.
    std::vector<double> apply(std::span<const double> u) const;

    /// Solve A x = rhs where rhs already carries the constraint-row values.
    std::vector<double> solve(std::span<const double> rhs) const;

    /// Copy of F with the constraint rows set to zero.
    std::vector<double> constrained_rhs(const GridFunction& f) const;

    /// Solution of A u = F with homogeneous boundary rows.
    GridFunction solve_forcing(const GridFunction& f) const;

    /// max_i |r_i| * row_scale(i).
    double scaled_residual_inf(std::span<const double> r) const;

private:
    ProblemSpec spec_;
    Grid grid_;
    BandedMatrix matrix_;
    BandedMatrix d1_;
    std::vector<ConstraintRow> constraints_;
    std::vector<bool> constraint_mask_;
    std::vector<double> row_scale_;
    BandedLU lu_;
};

/// Power-of-two factor bringing the largest |entry| of row i into [1, 2).
double power_of_two_scale(double row_max);

struct LinearSolveReport {
    GridFunction solution;
    double residual_inf = 0.0;
    double energy_identity_residual = 0.0;
    /// Discrete ||u||_{H^{2l+1}} / ||F||; zero when F = 0.
    double empirical_c0 = 0.0;
};

LinearSolveReport linear_solve(const StationaryOperator& op, const GridFunction& f);
LinearSolveReport linear_solve(const ProblemSpec& spec, const Grid& grid, const GridFunction& f);

/// |a ||u||^2 + 1/2 (D^l u(0))^2 - (F, u)|
double energy_identity_residual(const GridFunction& u, const ProblemSpec& spec, const GridFunction& f);

}  // namespace dispersive
