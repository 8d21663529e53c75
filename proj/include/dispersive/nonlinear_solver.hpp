#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dispersive/banded.hpp"
#include "dispersive/grid.hpp"
#include "dispersive/stationary_operator.hpp"

namespace dispersive {

enum class SolveMethod { picard, newton, continuation };

std::string to_string(SolveMethod m);
SolveMethod parse_solve_method(const std::string& name);

/**
 * Outcome of a nonlinear solve. Residuals are max-norms of the
 * row-equilibrated residual (see StationaryOperator::scaled_residual_inf);
 * steps are discrete L2 distances between consecutive iterates.
 */
struct SolveReport {
    explicit SolveReport(GridFunction u) : solution(std::move(u)) {}

    GridFunction solution;
    SolveMethod method = SolveMethod::newton;
    int iterations = 0;
    bool converged = false;
    std::vector<double> residual_history;
    std::vector<double> step_history;
    std::vector<double> contraction_ratios;  // Picard only
    std::vector<double> lambda_path;         // continuation only
    std::vector<double> path_l2_norms;       // ||u_lambda|| along the path
    double relaxation = 1.0;                 // Picard only
    std::string message;

    double final_residual() const { return residual_history.empty() ? 0.0 : residual_history.back(); }
    double largest_lambda() const { return lambda_path.empty() ? 0.0 : lambda_path.back(); }
};

struct PicardOptions {
    double tol = 1e-10;
    int max_iter = 200;
    double relaxation = 1.0;
    int max_relaxation_halvings = 2;
};

struct NewtonOptions {
    double tol = 1e-10;
    int max_iter = 50;
    int max_step_halvings = 30;
};

struct ContinuationOptions {
    double tol = 1e-10;
    int steps = 20;
    int newton_max_iter = 50;
    int max_bisections = 8;
};

/**
 * a u + sum_j (-1)^{j+1} D^{2j+1} u + lambda u^k Du - lambda f at collocation
 * rows, boundary-row values at constraint rows (raw units).
 */
GridFunction nonlinear_residual(const GridFunction& u, const StationaryOperator& op, const GridFunction& f,
                                double lambda);

/// u -> A^{-1}(f - u^k Du) with homogeneous boundary rows.
GridFunction picard_step(const GridFunction& u, const StationaryOperator& op, const GridFunction& f);

/// Fixed-point iteration of picard_step from u = 0, with optional under-relaxation.
SolveReport solve_picard(const StationaryOperator& op, const GridFunction& f, const PicardOptions& opts = {});

/// Derivative of nonlinear_residual with respect to u.
BandedMatrix assemble_jacobian(const GridFunction& u, const StationaryOperator& op, double lambda);

/// Damped Newton from u0 (zero when omitted) for the lambda-scaled problem.
SolveReport solve_newton(const StationaryOperator& op, const GridFunction& f, const NewtonOptions& opts = {},
                         const std::optional<GridFunction>& u0 = std::nullopt, double lambda = 1.0);

/// Newton along lambda = 1/steps, 2/steps, ..., 1 with warm starts and step bisection.
SolveReport continuation_solve(const StationaryOperator& op, const GridFunction& f,
                               const ContinuationOptions& opts = {});

/// Dispatch on method with its default options, overriding tol and max_iter (ignored when <= 0).
SolveReport solve_with(const StationaryOperator& op, const GridFunction& f, SolveMethod method, double tol,
                       int max_iter = 0);

}  // namespace dispersive
