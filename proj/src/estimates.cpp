#include "dispersive/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dispersive/sobolev.hpp"

namespace dispersive {

std::string CheckResult::status() const {
    if (!applicable) return "N/A";
    if (pass) return "PASS";
    return advisory ? "ADVISORY" : "FAIL";
}

CheckResult make_check(std::string name, double lhs, double rhs, double allowance, bool advisory) {
    CheckResult c;
    c.name = std::move(name);
    c.lhs = lhs;
    c.rhs = rhs;
    c.margin = rhs - lhs;
    c.allowance = allowance;
    c.pass = lhs <= (1.0 + allowance) * rhs;
    c.advisory = advisory;
    return c;
}

CheckResult sup_bound_check(const GridFunction& u, double allowance) {
    const double sup = sup_norm(u);
    const double rhs = std::sqrt(2.0) * std::sqrt(l2_norm(u)) * std::sqrt(derivative_l2_norm(u, 1));
    CheckResult c = make_check("sup_norm_lemma", sup, rhs, allowance);
    bool vanishes = false;
    for (std::size_t i = 0; i < u.size() && !vanishes; ++i) {
        vanishes = std::abs(u[i]) <= 1e-10 * sup || (i > 0 && u[i - 1] * u[i] < 0.0);
    }
    if (!vanishes) {
        c.applicable = false;
        c.context = "u does not vanish on the grid";
    }
    return c;
}

std::vector<CheckResult> estimate_checks(const GridFunction& u, const ProblemSpec& spec, const GridFunction& f,
                                         double c_star, double allowance) {
    require_same_grid(u, f);
    spec.validate();
    const std::string grid_ctx =
        "N=" + std::to_string(u.grid().intervals()) + " L=" + std::to_string(u.grid().length());
    std::vector<CheckResult> out;

    CheckResult energy = make_check("l2_bound", l2_norm(u), l2_norm(f) / spec.a, allowance);
    energy.context = grid_ctx;
    out.push_back(energy);

    const double hl = sobolev_norm(u, spec.l);
    const double wf = std::sqrt(weighted_f2(f));
    if (!spec.is_critical()) {
        const double c2 = c2_constant(spec.l, spec.k, spec.a, c_star, weighted_f2(f));
        CheckResult c = make_check("weighted_hl_bound_regular", hl, c2 * wf, allowance, true);
        c.context = grid_ctx + " C2=" + std::to_string(c2) + " from C*>=" + std::to_string(c_star);
        out.push_back(c);
    } else {
        const double f_l2 = l2_norm(f);
        if (gamma_margin(spec.l, spec.a, c_star, f_l2) > 0.0) {
            const double gamma = gamma_l(spec.l, spec.a, c_star, f_l2);
            CheckResult c = make_check("weighted_hl_bound_critical", hl, wf / std::sqrt(2.0 * spec.a * gamma),
                                       allowance, true);
            c.context = grid_ctx + " gamma=" + std::to_string(gamma) + " from C*>=" + std::to_string(c_star);
            out.push_back(c);
        } else {
            CheckResult c = make_check("weighted_hl_bound_critical", hl, 0.0, allowance, true);
            c.applicable = false;
            c.context = grid_ctx + " ||f|| is not below the critical smallness bound";
            out.push_back(c);
        }
    }

    CheckResult lemma = sup_bound_check(u, std::min(allowance, 0.02));
    if (lemma.context.empty()) lemma.context = grid_ctx;
    out.push_back(lemma);
    return out;
}

namespace {

GridFunction solve_or_throw(const StationaryOperator& op, const GridFunction& f, double tol) {
    NewtonOptions nopts;
    nopts.tol = tol;
    SolveReport r = solve_newton(op, f, nopts, op.solve_forcing(f));
    if (r.converged) return r.solution;
    ContinuationOptions copts;
    copts.tol = tol;
    r = continuation_solve(op, f, copts);
    if (!r.converged) throw SolverError("continuous dependence: solve failed (" + r.message + ")");
    return r.solution;
}

}  // namespace

DependenceReport continuous_dependence(const StationaryOperator& op, const GridFunction& f1,
                                       const GridFunction& f2, double tol) {
    require_same_grid(f1, f2);
    DependenceReport rep;
    const GridFunction u1 = solve_or_throw(op, f1, tol);
    for (double s : {1.0, 0.5, 0.25}) {
        const GridFunction fs = f1 + s * (f2 - f1);
        const double df = l2_norm(f1 - fs);
        rep.scales.push_back(s);
        if (df == 0.0) {
            rep.ratios.push_back(0.0);
            continue;
        }
        const GridFunction us = solve_or_throw(op, fs, tol);
        rep.ratios.push_back(l2_norm(u1 - us) / df);
    }
    const auto [lo, hi] = std::minmax_element(rep.ratios.begin(), rep.ratios.end());
    rep.variation = *hi > 0.0 ? (*hi - *lo) / *hi : 0.0;

    PicardOptions popts;
    popts.tol = tol;
    const SolveReport pic = solve_picard(op, f1, popts);
    double s = 0.0;
    const double first = pic.step_history.empty() ? 0.0 : pic.step_history.front();
    for (std::size_t n = 1; n < pic.step_history.size() && n - 1 < pic.contraction_ratios.size(); ++n) {
        // ratios taken after the steps reach round-off say nothing about the map
        if (pic.step_history[n - 1] > 1e-8 * first) s = std::max(s, pic.contraction_ratios[n - 1]);
    }
    rep.picard_contraction = s;
    rep.advisory_bound = s < 1.0 ? 1.0 / (op.spec().a * (1.0 - s)) : std::numeric_limits<double>::infinity();
    return rep;
}

}  // namespace dispersive
