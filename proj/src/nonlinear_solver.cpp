#include "dispersive/nonlinear_solver.hpp"

#include <cmath>
#include <sstream>

#include "dispersive/errors.hpp"

namespace dispersive {

namespace {

double ipow(double x, int n) {
    double r = 1.0;
    for (int i = 0; i < n; ++i) r *= x;
    return r;
}

double scaled_residual(const GridFunction& u, const StationaryOperator& op, const GridFunction& f,
                       double lambda) {
    return op.scaled_residual_inf(nonlinear_residual(u, op, f, lambda).values());
}

void check_lambda(double lambda) {
    if (!(lambda >= 0.0 && lambda <= 1.0)) throw ValidationError("lambda must lie in [0, 1]");
}

}  // namespace

std::string to_string(SolveMethod m) {
    switch (m) {
        case SolveMethod::picard: return "picard";
        case SolveMethod::newton: return "newton";
        case SolveMethod::continuation: return "continuation";
    }
    return "unknown";
}

SolveMethod parse_solve_method(const std::string& name) {
    if (name == "picard") return SolveMethod::picard;
    if (name == "newton") return SolveMethod::newton;
    if (name == "continuation") return SolveMethod::continuation;
    throw ValidationError("unknown solver '" + name + "' (expected picard, newton or continuation)");
}

GridFunction nonlinear_residual(const GridFunction& u, const StationaryOperator& op, const GridFunction& f,
                                double lambda) {
    check_lambda(lambda);
    if (!(u.grid() == op.grid()) || !(f.grid() == op.grid())) {
        throw ValidationError("residual arguments live on a different grid than the operator");
    }
    std::vector<double> r = op.apply(u.values());
    const std::vector<double> du = op.first_derivative().apply(u.values());
    const int k = op.spec().k;
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (op.is_constraint_row(i)) continue;
        r[i] += lambda * (ipow(u[i], k) * du[i] - f[i]);
    }
    return GridFunction(op.grid(), std::move(r));
}

GridFunction picard_step(const GridFunction& u, const StationaryOperator& op, const GridFunction& f) {
    require_same_grid(u, f);
    const std::vector<double> du = op.first_derivative().apply(u.values());
    GridFunction forcing = f;
    for (std::size_t i = 0; i < forcing.size(); ++i) forcing[i] -= ipow(u[i], op.spec().k) * du[i];
    return op.solve_forcing(forcing);
}

SolveReport solve_picard(const StationaryOperator& op, const GridFunction& f, const PicardOptions& opts) {
    if (!(opts.tol > 0.0)) throw ValidationError("tolerance must be positive");
    if (!(opts.relaxation > 0.0 && opts.relaxation <= 1.0)) {
        throw ValidationError("relaxation factor must lie in (0, 1]");
    }
    constexpr int kGrowthStreak = 5;
    double omega = opts.relaxation;

    for (int attempt = 0;; ++attempt) {
        SolveReport rep{GridFunction(op.grid())};
        rep.method = SolveMethod::picard;
        rep.relaxation = omega;
        GridFunction u(op.grid());
        int growth = 0;
        bool diverged = false;

        for (int m = 1; m <= opts.max_iter; ++m) {
            GridFunction w = picard_step(u, op, f);
            GridFunction next = u + omega * (w - u);
            const double step = l2_norm(next - u);
            const double res = scaled_residual(next, op, f, 1.0);
            if (!rep.step_history.empty() && rep.step_history.back() > 0.0) {
                const double ratio = step / rep.step_history.back();
                rep.contraction_ratios.push_back(ratio);
                growth = ratio > 1.0 ? growth + 1 : 0;
            }
            rep.step_history.push_back(step);
            rep.residual_history.push_back(res);
            rep.iterations = m;
            u = std::move(next);

            if (!std::isfinite(step) || !std::isfinite(res) || growth >= kGrowthStreak) {
                diverged = true;
                break;
            }
            if (step <= opts.tol && res <= opts.tol) {
                rep.converged = true;
                break;
            }
        }
        rep.solution = std::move(u);
        if (rep.converged) return rep;
        if (diverged && attempt < opts.max_relaxation_halvings) {
            omega *= 0.5;
            continue;
        }
        std::ostringstream msg;
        msg << (diverged ? "Picard iteration diverged" : "Picard iteration hit max_iter") << " with relaxation "
            << omega << " after " << rep.iterations << " iterations";
        rep.message = msg.str();
        return rep;
    }
}

BandedMatrix assemble_jacobian(const GridFunction& u, const StationaryOperator& op, double lambda) {
    check_lambda(lambda);
    if (!(u.grid() == op.grid())) throw ValidationError("iterate lives on a different grid than the operator");
    BandedMatrix j = op.matrix();
    const BandedMatrix& d1 = op.first_derivative();
    const std::vector<double> du = d1.apply(u.values());
    const int k = op.spec().k;
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (op.is_constraint_row(i)) continue;
        const double uk = ipow(u[i], k);
        j.at(i, i) += lambda * k * ipow(u[i], k - 1) * du[i];
        for (std::size_t c = d1.row_begin(i); c < d1.row_end(i); ++c) j.at(i, c) += lambda * uk * d1(i, c);
    }
    return j;
}

SolveReport solve_newton(const StationaryOperator& op, const GridFunction& f, const NewtonOptions& opts,
                         const std::optional<GridFunction>& u0, double lambda) {
    if (!(opts.tol > 0.0)) throw ValidationError("tolerance must be positive");
    check_lambda(lambda);
    SolveReport rep{u0 ? *u0 : GridFunction(op.grid())};
    rep.method = SolveMethod::newton;
    GridFunction& u = rep.solution;
    require_same_grid(u, f);

    GridFunction r = nonlinear_residual(u, op, f, lambda);
    double res = op.scaled_residual_inf(r.values());
    rep.residual_history.push_back(res);

    for (int it = 1; it <= opts.max_iter; ++it) {
        BandedMatrix jac = assemble_jacobian(u, op, lambda);
        std::vector<double> rhs(r.size());
        for (std::size_t i = 0; i < rhs.size(); ++i) {
            const double s = power_of_two_scale(jac.row_abs_max(i));
            jac.scale_row(i, s);
            rhs[i] = -r[i] * s;
        }
        std::vector<double> delta;
        try {
            delta = lu_factor(jac).solve(rhs);
        } catch (const SingularMatrixError& e) {
            rep.message = std::string("singular Jacobian at Newton iteration ") + std::to_string(it) +
                          "; retry with continuation (" + e.what() + ")";
            return rep;
        }
        const GridFunction step(op.grid(), std::move(delta));

        double t = 1.0;
        GridFunction trial = u + step;
        GridFunction r_trial = nonlinear_residual(trial, op, f, lambda);
        double res_trial = op.scaled_residual_inf(r_trial.values());
        int halvings = 0;
        while (!(res_trial <= res || res_trial <= opts.tol) && halvings < opts.max_step_halvings) {
            t *= 0.5;
            ++halvings;
            trial = u + t * step;
            r_trial = nonlinear_residual(trial, op, f, lambda);
            res_trial = op.scaled_residual_inf(r_trial.values());
        }
        rep.iterations = it;
        if (!(res_trial <= res || res_trial <= opts.tol)) {
            rep.message = "Newton line search failed to reduce the residual at iteration " + std::to_string(it);
            return rep;
        }
        const double step_norm = t * l2_norm(step);
        u = std::move(trial);
        r = std::move(r_trial);
        res = res_trial;
        rep.residual_history.push_back(res);
        rep.step_history.push_back(step_norm);
        if (step_norm <= opts.tol && res <= opts.tol) {
            rep.converged = true;
            return rep;
        }
    }
    rep.message = "Newton iteration hit max_iter=" + std::to_string(opts.max_iter);
    return rep;
}

SolveReport continuation_solve(const StationaryOperator& op, const GridFunction& f,
                               const ContinuationOptions& opts) {
    if (opts.steps < 1) throw ValidationError("continuation needs at least one step");
    const double nominal = 1.0 / opts.steps;
    NewtonOptions newton{opts.tol, opts.newton_max_iter, 30};

    SolveReport rep{GridFunction(op.grid())};
    rep.method = SolveMethod::continuation;
    double lambda_done = 0.0;
    double delta = nominal;
    int bisections = 0;
    int completed = 0;

    while (lambda_done < 1.0) {
        double target = (bisections == 0) ? static_cast<double>(completed + 1) * nominal : lambda_done + delta;
        if (target > 1.0 || 1.0 - target < 1e-12) target = 1.0;

        std::optional<GridFunction> start;
        if (lambda_done == 0.0) {
            start = op.solve_forcing(target * f);
        } else {
            start = rep.solution;
        }
        SolveReport step = solve_newton(op, f, newton, start, target);
        rep.iterations += step.iterations;
        if (step.converged) {
            lambda_done = target;
            rep.solution = std::move(step.solution);
            rep.lambda_path.push_back(target);
            rep.path_l2_norms.push_back(l2_norm(rep.solution));
            rep.residual_history.push_back(step.final_residual());
            if (!step.step_history.empty()) rep.step_history.push_back(step.step_history.back());
            if (bisections == 0) {
                ++completed;
            } else {
                // Resume the nominal schedule once the bisected stretch is crossed.
                const double next_nominal = static_cast<double>(completed + 1) * nominal;
                if (lambda_done >= next_nominal - 1e-12) {
                    completed = static_cast<int>(std::floor(lambda_done / nominal + 1e-9));
                    bisections = 0;
                    delta = nominal;
                }
            }
            continue;
        }
        if (bisections >= opts.max_bisections) {
            std::ostringstream msg;
            msg << "continuation stalled at lambda=" << lambda_done << " (failed at " << target
                << "): " << step.message;
            rep.message = msg.str();
            return rep;
        }
        ++bisections;
        delta = 0.5 * (target - lambda_done);
    }
    rep.converged = true;
    return rep;
}

SolveReport solve_with(const StationaryOperator& op, const GridFunction& f, SolveMethod method, double tol,
                       int max_iter) {
    switch (method) {
        case SolveMethod::picard: {
            PicardOptions o;
            o.tol = tol;
            if (max_iter > 0) o.max_iter = max_iter;
            return solve_picard(op, f, o);
        }
        case SolveMethod::newton: {
            NewtonOptions o;
            o.tol = tol;
            if (max_iter > 0) o.max_iter = max_iter;
            return solve_newton(op, f, o);
        }
        case SolveMethod::continuation: {
            ContinuationOptions o;
            o.tol = tol;
            if (max_iter > 0) o.newton_max_iter = max_iter;
            return continuation_solve(op, f, o);
        }
    }
    throw ValidationError("unknown solve method");
}

}  // namespace dispersive
