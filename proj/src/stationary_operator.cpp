#include "dispersive/stationary_operator.hpp"

#include <cmath>
#include <string>

#include "dispersive/sobolev.hpp"

namespace dispersive {

namespace {

std::vector<double> row_scales(const BandedMatrix& a) {
    std::vector<double> s(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) s[i] = power_of_two_scale(a.row_abs_max(i));
    return s;
}

BandedLU factor_scaled(BandedMatrix a, const std::vector<double>& scales, const ProblemSpec& spec,
                       const Grid& grid) {
    for (std::size_t i = 0; i < a.size(); ++i) a.scale_row(i, scales[i]);
    try {
        return lu_factor(a);
    } catch (const SingularMatrixError& e) {
        throw SingularMatrixError(std::string("discrete operator is singular for l=") + std::to_string(spec.l) +
                                  ", a=" + std::to_string(spec.a) + ", L=" + std::to_string(spec.length) +
                                  ", N=" + std::to_string(grid.intervals()) +
                                  " (grid resolution problem): " + e.what());
    }
}

}  // namespace

int min_intervals(int l) { return 4 * l + 8; }

double power_of_two_scale(double row_max) {
    if (!(row_max > 0.0) || !std::isfinite(row_max)) return 1.0;
    return std::ldexp(1.0, -std::ilogb(row_max));
}

BandedMatrix assemble_operator(const ProblemSpec& spec, const Grid& grid) {
    spec.validate();
    if (grid.intervals() < min_intervals(spec.l)) {
        throw ValidationError("grid with N=" + std::to_string(grid.intervals()) + " is too small for l=" +
                              std::to_string(spec.l) + " (need N >= " + std::to_string(min_intervals(spec.l)) +
                              ")");
    }
    const auto half = static_cast<std::size_t>(stencil_width(spec.order()) - 1);
    BandedMatrix a(grid.size(), half, half);
    for (std::size_t i = 0; i < grid.size(); ++i) a.at(i, i) = spec.a;
    for (int j = 1; j <= spec.l; ++j) {
        BandedMatrix d = derivative_matrix(2 * j + 1, grid);
        if (j % 2 == 0) {
            for (std::size_t i = 0; i < d.size(); ++i) d.scale_row(i, -1.0);
        }
        a += d;
    }
    for (const ConstraintRow& row : bc_rows(spec.l, grid)) {
        a.clear_row(row.row);
        for (std::size_t c = 0; c < row.coefficients.size(); ++c) {
            a.at(row.row, row.first_column + c) = row.coefficients[c];
        }
    }
    return a.compacted();
}

StationaryOperator::StationaryOperator(const ProblemSpec& spec, const Grid& grid)
    : spec_(spec),
      grid_(grid),
      matrix_(assemble_operator(spec, grid)),
      d1_(derivative_matrix(1, grid)),
      constraints_(bc_rows(spec.l, grid)),
      constraint_mask_(grid.size(), false),
      row_scale_(row_scales(matrix_)),
      lu_(factor_scaled(matrix_, row_scale_, spec, grid)) {
    for (const ConstraintRow& row : constraints_) constraint_mask_[row.row] = true;
}

std::vector<double> StationaryOperator::apply(std::span<const double> u) const { return matrix_.apply(u); }

std::vector<double> StationaryOperator::solve(std::span<const double> rhs) const {
    if (rhs.size() != grid_.size()) throw ValidationError("right-hand side length does not match the grid");
    std::vector<double> scaled(rhs.begin(), rhs.end());
    for (std::size_t i = 0; i < scaled.size(); ++i) scaled[i] *= row_scale_[i];
    return lu_.solve(scaled);
}

std::vector<double> StationaryOperator::constrained_rhs(const GridFunction& f) const {
    if (!(f.grid() == grid_)) throw ValidationError("forcing lives on a different grid");
    std::vector<double> rhs = f.vector();
    for (const ConstraintRow& row : constraints_) rhs[row.row] = 0.0;
    return rhs;
}

GridFunction StationaryOperator::solve_forcing(const GridFunction& f) const {
    return GridFunction(grid_, solve(constrained_rhs(f)));
}

double StationaryOperator::scaled_residual_inf(std::span<const double> r) const {
    double m = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) m = std::max(m, std::abs(r[i]) * row_scale_[i]);
    return m;
}

LinearSolveReport linear_solve(const StationaryOperator& op, const GridFunction& f) {
    const std::vector<double> rhs = op.constrained_rhs(f);
    GridFunction u(op.grid(), op.solve(rhs));
    std::vector<double> r = op.apply(u.values());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= rhs[i];

    LinearSolveReport report{u, op.scaled_residual_inf(r), energy_identity_residual(u, op.spec(), f), 0.0};
    const double fnorm = l2_norm(f);
    if (fnorm > 0.0) report.empirical_c0 = sobolev_norm(u, op.spec().order()) / fnorm;
    return report;
}

LinearSolveReport linear_solve(const ProblemSpec& spec, const Grid& grid, const GridFunction& f) {
    return linear_solve(StationaryOperator(spec, grid), f);
}

double energy_identity_residual(const GridFunction& u, const ProblemSpec& spec, const GridFunction& f) {
    require_same_grid(u, f);
    const double dl0 = boundary_derivative(u, spec.l, BoundaryEnd::left);
    return std::abs(spec.a * l2_inner(u, u) + 0.5 * dl0 * dl0 - l2_inner(f, u));
}

}  // namespace dispersive
