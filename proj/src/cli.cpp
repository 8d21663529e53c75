#include "dispersive/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>

#include "dispersive/analysis.hpp"
#include "dispersive/config.hpp"
#include "dispersive/errors.hpp"
#include "dispersive/evolution.hpp"
#include "dispersive/forcing.hpp"
#include "dispersive/output.hpp"
#include "dispersive/sobolev.hpp"
#include "dispersive/stencils.hpp"

namespace dispersive {

namespace {

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

// Non-convergence surfaces as this, mapped to exit code 2.
struct NotConverged : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string config;
    std::string out;
    std::string svg;
    std::string report;
    std::uint64_t seed = 0;
    bool seed_set = false;
    int trials = 200;
    std::optional<double> cstar;
    std::optional<double> k1;
    std::optional<double> k2;
    double safety = 2.0;

    // march
    double h = 0.01;
    int steps = 1;
    std::string u0 = "zero";

    // gn-estimate / thresholds
    int l = 1;
    int k = 1;
    double a = 1.0;
    double length = 1.0;
    int intervals = 256;
    std::optional<double> wf2;
    std::optional<int> k_index;
    std::optional<double> theta;

    // convergence
    int levels = 4;
};

RunConfig load(const Options& o) {
    RunConfig cfg = load_config(o.config);
    if (o.seed_set) cfg.seed = o.seed;
    cfg.out_path = o.out;
    cfg.svg_path = o.svg;
    cfg.report_path = o.report;
    return cfg;
}

SolveReport solve_config(const StationaryOperator& op, const RunConfig& cfg, const GridFunction& f) {
    SolveReport rep = solve_with(op, f, cfg.solver, cfg.tol, cfg.effective_max_iter());
    if (!rep.converged) {
        std::ostringstream msg;
        msg << to_string(cfg.solver) << " did not converge after " << rep.iterations
            << " iterations (residual " << num(rep.final_residual()) << ")";
        if (!rep.lambda_path.empty()) msg << ", reached lambda=" << num(rep.largest_lambda());
        if (!rep.message.empty()) msg << ": " << rep.message;
        throw NotConverged(msg.str());
    }
    return rep;
}

double c_star_for(const Options& o, int l, double length, const Grid& grid, std::uint64_t seed) {
    if (o.cstar) {
        if (!(*o.cstar > 0.0)) throw ValidationError("--cstar must be positive");
        return *o.cstar;
    }
    return estimate_c_star(l, length, grid, o.trials, seed).c_star_lower;
}

std::string check_line(const CheckResult& c) {
    return c.name + " " + num(c.lhs) + " " + num(c.rhs) + " " + num(c.margin) + " " + c.status();
}

double max_error(const GridFunction& u, const GridFunction& exact) { return sup_norm(u - exact); }

// ---------------------------------------------------------------------------

int cmd_solve(const Options& o, std::ostream& out) {
    const RunConfig cfg = load(o);
    const Grid grid(cfg.spec.length, cfg.intervals);
    const StationaryOperator op(cfg.spec, grid);
    const GridFunction f = sample_forcing(cfg.forcing, cfg.spec, grid);
    const SolveReport rep = solve_config(op, cfg, f);
    const GridFunction& u = rep.solution;

    std::ostringstream txt;
    txt << "problem L=" << num(cfg.spec.length) << " l=" << cfg.spec.l << " k=" << cfg.spec.k
        << " a=" << num(cfg.spec.a) << " N=" << cfg.intervals << " class=" << to_string(cfg.spec.classification())
        << "\n";
    txt << "forcing " << format_forcing(cfg.forcing) << "\n";
    txt << "solver " << to_string(rep.method) << " iterations=" << rep.iterations
        << " residual=" << num(rep.final_residual()) << "\n";
    txt << "norms l2=" << num(l2_norm(u)) << " sup=" << num(sup_norm(u))
        << " Dl_u(0)=" << num(boundary_derivative(u, cfg.spec.l, BoundaryEnd::left)) << "\n";
    txt << "energy_identity_residual " << num(energy_identity_residual(u, cfg.spec, f)) << "\n";

    std::optional<GridFunction> exact;
    if (is_manufactured(cfg.forcing)) {
        exact = manufactured_solution(cfg.spec, grid);
        const double err = max_error(u, *exact);
        txt << "max_error " << num(err) << "\n";
        const int coarse_n = cfg.intervals / 2;
        if (coarse_n >= min_intervals(cfg.spec.l)) {
            const Grid coarse(cfg.spec.length, coarse_n);
            const StationaryOperator cop(cfg.spec, coarse);
            const SolveReport crep = solve_config(cop, cfg, sample_forcing(cfg.forcing, cfg.spec, coarse));
            const double cerr = max_error(crep.solution, manufactured_solution(cfg.spec, coarse));
            txt << "max_error_N/2 " << num(cerr) << "\n";
            txt << "observed_order " << num(std::log2(cerr / err)) << "\n";
        }
    }

    const double c_star = c_star_for(o, cfg.spec.l, cfg.spec.length, grid, cfg.seed);
    txt << "c_star " << num(c_star) << (o.cstar ? " (given)\n" : " (estimated lower bound)\n");
    for (const CheckResult& c : estimate_checks(u, cfg.spec, f, c_star)) txt << check_line(c) << "\n";

    out << txt.str();
    if (!cfg.out_path.empty()) write_csv(u, cfg.out_path);
    if (!cfg.report_path.empty()) write_text_atomic(cfg.report_path, txt.str());
    if (!cfg.svg_path.empty()) {
        std::vector<Series> series{{"u", grid.nodes(), u.vector()}};
        if (exact) series.push_back({"exact", grid.nodes(), exact->vector()});
        write_svg_plot(series, cfg.svg_path, "stationary solution", "x", "u");
    }
    return exit_ok;
}

int cmd_march(const Options& o, std::ostream& out) {
    const RunConfig cfg = load(o);
    MarchConfig mc;
    mc.spec = cfg.spec;
    mc.grid = Grid(cfg.spec.length, cfg.intervals);
    mc.h = o.h;
    mc.steps = o.steps;
    mc.method = cfg.solver;
    mc.tol = cfg.tol;
    mc.max_iter = cfg.max_iter.value_or(0);
    mc.validate();
    const GridFunction u0 = sample_state(parse_forcing(o.u0), mc.step_spec(), mc.grid);
    const Trajectory tr = march(u0, mc);

    out << "n t l2 sup Dl_u(0)\n";
    for (std::size_t n = 0; n < tr.size(); ++n) {
        out << n << " " << num(tr.times[n]) << " " << num(tr.l2[n]) << " " << num(tr.sup[n]) << " "
            << num(tr.dl0[n]) << "\n";
    }
    if (!cfg.out_path.empty()) write_csv(tr, cfg.out_path);
    if (!cfg.svg_path.empty()) {
        write_svg_plot({{"||u^n||", tr.times, tr.l2}, {"sup |u^n|", tr.times, tr.sup}}, cfg.svg_path,
                       "march diagnostics", "t", "norm");
    }
    if (tr.failure) throw NotConverged("march stopped at " + *tr.failure);
    return exit_ok;
}

int cmd_verify(const Options& o, std::ostream& out) {
    const RunConfig cfg = load(o);
    const Grid grid(cfg.spec.length, cfg.intervals);
    const StationaryOperator op(cfg.spec, grid);
    const GridFunction f = sample_forcing(cfg.forcing, cfg.spec, grid);
    const SolveReport rep = solve_config(op, cfg, f);
    const GridFunction& u = rep.solution;

    const ConstantsReport cs = estimate_c_star(cfg.spec.l, cfg.spec.length, grid, o.trials, cfg.seed);
    const double c_star = o.cstar.value_or(cs.c_star_lower);
    out << "c_star " << num(c_star) << (o.cstar ? " (given)" : " (estimated lower bound)") << "\n";

    out << "checks\n";
    for (const CheckResult& c : estimate_checks(u, cfg.spec, f, c_star)) out << check_line(c) << "\n";
    out << "energy_identity_residual " << num(energy_identity_residual(u, cfg.spec, f)) << "\n";

    const double wf2 = weighted_f2(f);
    const double f_l2 = l2_norm(f);
    UniquenessInputs uniq{c_star, o.k1, o.k2, f_l2};
    if (cfg.spec.l == 1 && (!uniq.k1 || !uniq.k2)) {
        const ConstantsReport kr = estimate_k_constants(1, 1, 0.5, cfg.spec.length, grid, o.trials, cfg.seed);
        if (!uniq.k1) uniq.k1 = kr.k1_lower;
        if (!uniq.k2) uniq.k2 = kr.k2_lower;
    }
    const EstimateReport er = estimate_report(cfg.spec, c_star, wf2, f_l2, uniq);
    out << "constants beta=" << num(er.beta);
    if (er.c1) out << " C1=" << num(*er.c1) << " C2=" << num(*er.c2) << " C3=" << num(*er.c3);
    if (er.gamma) out << " gamma=" << num(*er.gamma);
    out << "\n";
    const double wf = std::sqrt(wf2);
    out << "forcing ||f||=" << num(f_l2) << " ((1+x),f^2)^(1/2)=" << num(wf) << "\n";
    for (const auto& [name, value] : er.thresholds) {
        const double guarded = value / o.safety;
        const double measured = name == "critical" ? f_l2 : wf;
        out << "threshold " << name << " " << num(value) << " safety " << num(guarded)
            << (measured < guarded ? " below" : " not-below") << "\n";
    }

    if (f_l2 > 0.0) {
        const GridFunction f2 = 1.01 * f;
        const DependenceReport dep = continuous_dependence(op, f, f2, cfg.tol);
        out << "dependence";
        for (std::size_t i = 0; i < dep.ratios.size(); ++i) out << " s=" << num(dep.scales[i]) << ":" << num(dep.ratios[i]);
        out << " variation=" << num(dep.variation) << " picard_contraction=" << num(dep.picard_contraction)
            << " advisory_bound=" << num(dep.advisory_bound) << "\n";
    }
    return exit_ok;
}

int cmd_gn_estimate(const Options& o, std::ostream& out) {
    if (!(o.length > 0.0)) throw ValidationError("--length must be positive");
    const Grid grid(o.length, o.intervals);
    if (o.k_index || o.theta) {
        if (!o.k_index || !o.theta) throw ValidationError("--i and --theta go together");
        const ConstantsReport r = estimate_k_constants(o.l, *o.k_index, *o.theta, o.length, grid, o.trials, o.seed);
        out << "l " << o.l << " i " << *o.k_index << " theta " << num(*o.theta) << " p "
            << num(k_exponent(o.l, *o.k_index, *o.theta)) << "\n";
        out << "k_ratio_lower " << num(*r.k1_lower) << "\n";
        out << "trials " << r.trials << " seed " << r.seed << "\n";
        out << "best " << r.best_trial << "\n";
        return exit_ok;
    }
    const ConstantsReport r = estimate_c_star(o.l, o.length, grid, o.trials, o.seed);
    out << "l " << r.l << " length " << num(r.length) << " N " << o.intervals << "\n";
    out << "c_star_lower " << num(r.c_star_lower) << "\n";
    out << "trials " << r.trials << " seed " << r.seed << "\n";
    out << "best " << r.best_trial << "\n";
    out << "history";
    for (std::size_t t = 1; t <= r.history.size(); t *= 2) out << " " << t << ":" << num(r.history[t - 1]);
    out << "\n";
    return exit_ok;
}

int cmd_thresholds(const Options& o, std::ostream& out) {
    if (!o.cstar) throw ValidationError("--cstar is required");
    if (!(o.safety >= 1.0)) throw ValidationError("--safety must be at least 1");
    ProblemSpec spec;
    spec.length = o.length;
    spec.l = o.l;
    spec.k = o.k;
    spec.a = o.a;
    spec.validate();
    const double c_star = *o.cstar;
    const double crit = critical_threshold(spec.l, spec.a, c_star);
    out << "critical_threshold " << num(crit) << "\n";
    out << "critical_threshold/safety " << num(crit / o.safety) << "\n";

    if (o.wf2 && !(*o.wf2 >= 0.0)) throw ValidationError("--wf2 must be non-negative");
    const double f_l2 = o.wf2 ? std::sqrt(*o.wf2) : 0.0;
    UniquenessInputs uniq{c_star, o.k1, o.k2, f_l2};
    if (spec.l == 1 && (!uniq.k1 || !uniq.k2)) {
        const Grid grid(spec.length, o.intervals);
        const ConstantsReport kr = estimate_k_constants(1, 1, 0.5, spec.length, grid, o.trials, o.seed);
        if (!uniq.k1) uniq.k1 = kr.k1_lower;
        if (!uniq.k2) uniq.k2 = kr.k2_lower;
        out << "K1=K2 estimated " << num(*kr.k1_lower) << "\n";
    }
    if (!spec.is_critical()) {
        out << "beta " << num(beta_constant(spec.a)) << "\n";
        out << "C1 " << num(c1_constant(spec.l, spec.k, c_star)) << "\n";
        out << "C3 " << num(c3_constant(spec.l, spec.k, spec.a, c_star)) << "\n";
        if (o.wf2) out << "C2 " << num(c2_constant(spec.l, spec.k, spec.a, c_star, *o.wf2)) << "\n";
    } else if (gamma_margin(spec.l, spec.a, c_star, f_l2) > 0.0) {
        out << "gamma " << num(gamma_l(spec.l, spec.a, c_star, f_l2)) << "\n";
    } else {
        out << "gamma undefined (forcing at or above the critical bound)\n";
        return exit_ok;
    }
    const ThresholdReport t = uniqueness_threshold(spec, uniq);
    out << "uniqueness_threshold [" << t.case_name << "] " << num(t.value) << "\n";
    out << "uniqueness_threshold/safety " << num(t.value / o.safety) << "\n";
    for (const auto& [name, value] : t.terms) out << "  " << name << " " << num(value) << "\n";
    return exit_ok;
}

int cmd_convergence(const Options& o, std::ostream& out) {
    const RunConfig cfg = load(o);
    if (o.levels < 2) throw ValidationError("--levels must be at least 2");
    const bool manufactured = is_manufactured(cfg.forcing);
    std::vector<int> ns;
    for (int i = 0; i < o.levels + (manufactured ? 0 : 1); ++i) ns.push_back(cfg.intervals << i);

    std::vector<GridFunction> sols;
    for (int n : ns) {
        const Grid grid(cfg.spec.length, n);
        const StationaryOperator op(cfg.spec, grid);
        sols.push_back(solve_config(op, cfg, sample_forcing(cfg.forcing, cfg.spec, grid)).solution);
    }
    std::vector<double> errors;
    if (manufactured) {
        out << "manufactured-solution study\nN max_error order\n";
        for (const GridFunction& u : sols) errors.push_back(max_error(u, manufactured_solution(cfg.spec, u.grid())));
    } else {
        out << "self-convergence study (difference to the next finer grid at shared nodes)\nN max_difference order\n";
        for (std::size_t i = 0; i + 1 < sols.size(); ++i) {
            double d = 0.0;
            for (std::size_t j = 0; j < sols[i].size(); ++j) d = std::max(d, std::abs(sols[i][j] - sols[i + 1][2 * j]));
            errors.push_back(d);
        }
    }
    for (std::size_t i = 0; i < errors.size(); ++i) {
        out << ns[i] << " " << num(errors[i]) << " ";
        out << (i == 0 ? std::string("-") : num(std::log2(errors[i - 1] / errors[i]))) << "\n";
    }
    return exit_ok;
}

}  // namespace

int run_command(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Solver and estimate checker for a u + sum (-1)^(j+1) D^(2j+1) u + u^k Du = f on (0, L)",
                 "dispersive"};
    app.require_subcommand(1);
    Options o;

    auto add_seed = [&](CLI::App* sub) {
        sub->add_option_function<std::uint64_t>(
            "--seed", [&](const std::uint64_t& s) { o.seed = s; o.seed_set = true; }, "random seed (default 0)");
    };
    auto add_constants = [&](CLI::App* sub) {
        sub->add_option("--trials", o.trials, "random starts for constant estimation")->check(CLI::PositiveNumber);
        sub->add_option("--cstar", o.cstar, "use this C* instead of estimating it");
    };

    CLI::App* solve = app.add_subcommand("solve", "stationary solve with estimate checks");
    solve->add_option("--config", o.config, "config file")->required();
    solve->add_option("--out", o.out, "solution CSV");
    solve->add_option("--svg", o.svg, "solution plot");
    solve->add_option("--report", o.report, "text report");
    add_constants(solve);
    add_seed(solve);

    CLI::App* march_cmd = app.add_subcommand("march", "implicit time march with a = 1/h, f = u_prev/h");
    march_cmd->add_option("--config", o.config, "config file (a is ignored)")->required();
    march_cmd->set_help_flag("--help", "Print this help message and exit");
    march_cmd->add_option("--h", o.h, "time step")->required();
    march_cmd->add_option("--steps", o.steps, "number of steps")->required();
    march_cmd->add_option("--u0", o.u0, "initial state descriptor, e.g. \"gauss 0.1 0.5 0.1\"");
    march_cmd->add_option("--out", o.out, "trajectory CSV");
    march_cmd->add_option("--svg", o.svg, "norm history plot");
    add_seed(march_cmd);

    CLI::App* verify = app.add_subcommand("verify", "solve and run every estimate check");
    verify->add_option("--config", o.config, "config file")->required();
    verify->add_option("--safety", o.safety, "safety factor dividing thresholds")->check(CLI::Range(1.0, 1e6));
    verify->add_option("--k1", o.k1, "K1 for the l = 1 uniqueness bound");
    verify->add_option("--k2", o.k2, "K2 for the l = 1 uniqueness bound");
    add_constants(verify);
    add_seed(verify);

    CLI::App* gn = app.add_subcommand("gn-estimate", "lower bound on the interpolation constant C*");
    gn->add_option("--l", o.l, "derivative order l")->required()->check(CLI::PositiveNumber);
    gn->add_option("--length", o.length, "interval length")->required();
    gn->add_option("--trials", o.trials, "random starts")->check(CLI::PositiveNumber);
    gn->add_option("--N", o.intervals, "grid intervals for the norms");
    gn->add_option("--i", o.k_index, "estimate K1/K2 for derivative index i instead");
    gn->add_option("--theta", o.theta, "interpolation exponent for --i");
    add_seed(gn);

    CLI::App* th = app.add_subcommand("thresholds", "smallness and uniqueness thresholds");
    th->add_option("--l", o.l, "l")->required();
    th->add_option("--k", o.k, "k")->required();
    th->add_option("--a", o.a, "a")->required();
    th->add_option("--cstar", o.cstar, "interpolation constant C*")->required();
    th->add_option("--wf2", o.wf2, "weighted forcing norm ((1+x), f^2)");
    th->add_option("--safety", o.safety, "safety factor dividing thresholds");
    th->add_option("--length", o.length, "interval length (for K estimation)");
    th->add_option("--k1", o.k1, "K1 (estimated when omitted, l = 1)");
    th->add_option("--k2", o.k2, "K2 (estimated when omitted, l = 1)");
    th->add_option("--trials", o.trials, "random starts for K estimation")->check(CLI::PositiveNumber);
    th->add_option("--N", o.intervals, "grid intervals for K estimation");
    add_seed(th);

    CLI::App* conv = app.add_subcommand("convergence", "grid refinement study");
    conv->add_option("--config", o.config, "config file")->required();
    conv->add_option("--levels", o.levels, "number of grids");
    add_seed(conv);

    try {
        std::vector<std::string> args;
        for (int i = argc - 1; i > 0; --i) args.emplace_back(argv[i]);
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return exit_ok;
        }
        err << "error: " << e.what() << "\n" << app.help();
        return exit_validation;
    }

    try {
        if (*solve) return cmd_solve(o, out);
        if (*march_cmd) return cmd_march(o, out);
        if (*verify) return cmd_verify(o, out);
        if (*gn) return cmd_gn_estimate(o, out);
        if (*th) return cmd_thresholds(o, out);
        if (*conv) return cmd_convergence(o, out);
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return exit_validation;
    } catch (const IoError& e) {
        err << "I/O error: " << e.what() << "\n";
        return exit_io;
    } catch (const NotConverged& e) {
        err << "not converged: " << e.what() << "\n";
        return exit_no_convergence;
    } catch (const SolverError& e) {
        err << "not converged: " << e.what() << "\n";
        return exit_no_convergence;
    } catch (const SingularMatrixError& e) {
        err << "not converged: " << e.what() << "\n";
        return exit_no_convergence;
    }
    err << app.help();
    return exit_validation;
}

}  // namespace dispersive
