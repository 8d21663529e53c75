#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dispersive/grid.hpp"
#include "dispersive/nonlinear_solver.hpp"
#include "dispersive/problem.hpp"
#include "dispersive/stationary_operator.hpp"

namespace dispersive {

/// Fixed-step implicit march; spec.a is ignored (each step uses a = 1/h).
struct MarchConfig {
    ProblemSpec spec;
    Grid grid{1.0, 256};
    double h = 0.01;
    int steps = 1;
    SolveMethod method = SolveMethod::newton;
    double tol = 1e-10;
    int max_iter = 0;  // solver default when <= 0

    /// Stationary problem of one step.
    ProblemSpec step_spec() const;
    void validate() const;
};

struct Trajectory {
    std::vector<double> times;
    std::vector<GridFunction> states;
    std::vector<double> l2;
    std::vector<double> sup;
    std::vector<double> dl0;  // D^l u(0)
    /// Set when a step failed; the trajectory holds the states reached before it.
    std::optional<std::string> failure;

    std::size_t size() const { return states.size(); }
};

/// Throws ValidationError unless u meets the boundary conditions to a relative 1e-6
/// or, for derivative conditions, to within the spread of one-sided stencils of
/// accuracy 2..10 (an analytic state misses the discrete rows by truncation error).
void require_boundary_conditions(const GridFunction& u, int l);

/// One step: a = 1/h, f = u_prev / h. Throws SolverError on failure.
GridFunction march_step(const GridFunction& u_prev, const MarchConfig& cfg);
GridFunction march_step(const GridFunction& u_prev, const StationaryOperator& op, const MarchConfig& cfg);

Trajectory march(const GridFunction& u0, const MarchConfig& cfg);

}  // namespace dispersive
