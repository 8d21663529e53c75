// One line per acceptance criterion; exit status 1 if any criterion fails.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "dense_oracle.hpp"
#include "dispersive/analysis.hpp"
#include "dispersive/evolution.hpp"
#include "dispersive/forcing.hpp"
#include "dispersive/nonlinear_solver.hpp"
#include "dispersive/sobolev.hpp"

using namespace dispersive;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

// Newton from the linear solution, then continuation.
std::optional<SolveReport> solve_robust(const StationaryOperator& op, const GridFunction& f) {
    SolveReport r = solve_newton(op, f, {}, op.solve_forcing(f));
    if (r.converged) return r;
    r = continuation_solve(op, f);
    if (r.converged) return r;
    return std::nullopt;
}

struct SweepCase {
    ProblemSpec spec;
    std::string forcing;
};

std::vector<SweepCase> sweep_cases() {
    const std::vector<std::string> forcings{"gauss 0.5 0.5 0.1", "sine 1 0.5", "poly 0 2 -2"};
    const std::vector<double> as{0.5, 1.0, 2.0};
    std::vector<SweepCase> cases;
    int n = 0;
    for (int l = 1; l <= 3; ++l) {
        // k = 1, the midpoint and the critical 4l, plus one extra regular value for l = 1, 2
        std::vector<int> ks{1, 2 * l, 4 * l};
        if (l < 3) ks.push_back(4 * l - 1);
        for (int k : ks) {
            for (int rep = 0; rep < 2 && cases.size() < 20; ++rep, ++n) {
                cases.push_back({ProblemSpec{1.0, l, k, as[n % 3]}, forcings[(n / 3 + n) % 3]});
            }
        }
    }
    return cases;
}

struct SweepResult {
    SweepCase c;
    GridFunction f;
    std::optional<SolveReport> newton;
    std::optional<SolveReport> picard;
};

std::vector<SweepResult>& sweep() {
    static std::vector<SweepResult> results = [] {
        std::vector<SweepResult> out;
        const Grid g(1.0, 256);
        for (const SweepCase& c : sweep_cases()) {
            const StationaryOperator op(c.spec, g);
            GridFunction f = sample_forcing(parse_forcing(c.forcing), c.spec, g);
            SweepResult r{c, f, solve_robust(op, f), std::nullopt};
            const SolveReport p = solve_picard(op, f);
            if (p.converged) r.picard = p;
            out.push_back(std::move(r));
        }
        return out;
    }();
    return results;
}

// ---------------------------------------------------------------------------

Outcome manufactured_convergence() {
    const std::vector<std::pair<int, int>> lk{{1, 1}, {1, 2}, {2, 1}, {2, 3}};
    double lo = INFINITY, hi = -INFINITY;
    std::ostringstream os;
    for (auto [l, k] : lk) {
        const ProblemSpec spec{1.0, l, k, 1.0};
        std::vector<double> errs;
        for (int n : {64, 128, 256, 512}) {
            const Grid g(1.0, n);
            const StationaryOperator op(spec, g);
            const auto rep = solve_robust(op, sample_forcing(forcing::Manufactured{}, spec, g));
            if (!rep) return {false, "solve failed for l=" + std::to_string(l) + " k=" + std::to_string(k)};
            errs.push_back(sup_norm(rep->solution - manufactured_solution(spec, g)));
        }
        for (std::size_t i = 1; i < errs.size(); ++i) {
            const double order = std::log2(errs[i - 1] / errs[i]);
            lo = std::min(lo, order);
            hi = std::max(hi, order);
        }
        os << " (" << l << "," << k << ") err512=" << fmt(errs.back());
    }
    return {lo >= 1.7 && hi <= 2.3, "orders in [" + fmt(lo) + ", " + fmt(hi) + "]" + os.str()};
}

Outcome oracle_equivalence() {
    std::mt19937_64 rng(20240601);
    std::uniform_int_distribution<std::size_t> size(10, 200), band(0, 9);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::normal_distribution<double> g;
    double worst = 0.0;
    for (int t = 0; t < 200; ++t) {
        const std::size_t n = size(rng), kl = band(rng), ku = band(rng);
        BandedMatrix a(n, kl, ku);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = a.row_begin(i); j < a.row_end(i); ++j) a.at(i, j) = u(rng);
            a.at(i, i) += 2.0;
        }
        std::vector<double> b(n);
        for (double& v : b) v = g(rng);
        const std::vector<double> x = lu_factor(a).solve(b);
        const std::vector<double> y = oracle::dense_solve(a.to_dense(), b);
        double d = 0.0, s = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            d = std::max(d, std::abs(x[i] - y[i]));
            s = std::max(s, std::abs(y[i]));
        }
        worst = std::max(worst, d / s);
    }
    return {worst <= 1e-8, "200 systems, worst relative difference " + fmt(worst)};
}

Outcome estimate_one() {
    int converged = 0;
    double worst = 0.0;
    bool ok = true;
    for (const SweepResult& r : sweep()) {
        if (!r.newton) continue;
        ++converged;
        const double ratio = l2_norm(r.newton->solution) / (l2_norm(r.f) / r.c.spec.a);
        worst = std::max(worst, ratio);
        ok = ok && ratio <= 1.05;
    }
    const int total = static_cast<int>(sweep().size());
    return {ok && converged == total, std::to_string(converged) + "/" + std::to_string(total) +
                                          " converged, max ||u|| a/||f|| = " + fmt(worst)};
}

Outcome energy_identity() {
    double lo = INFINITY, hi = -INFINITY;
    for (int l : {1, 2}) {
        for (bool nonlinear : {false, true}) {
            const ProblemSpec spec{1.0, l, 2, 1.0};
            std::vector<double> res;
            for (int n : {128, 256}) {
                const Grid g(1.0, n);
                const StationaryOperator op(spec, g);
                const GridFunction f = sample_forcing(forcing::Gauss{1.0, 0.4, 0.12}, spec, g);
                GridFunction u = op.solve_forcing(f);
                if (nonlinear) {
                    const auto rep = solve_robust(op, f);
                    if (!rep) return {false, "nonlinear solve failed"};
                    u = rep->solution;
                }
                res.push_back(energy_identity_residual(u, spec, f));
            }
            lo = std::min(lo, res[0] / res[1]);
            hi = std::max(hi, res[0] / res[1]);
        }
    }
    return {lo >= 3.0 && hi <= 5.0, "reduction factors in [" + fmt(lo) + ", " + fmt(hi) + "] (l=1,2; linear and nonlinear)"};
}

Outcome sup_bound() {
    double worst = 0.0;
    bool ok = true;
    int n = 0;
    for (const SweepResult& r : sweep()) {
        if (!r.newton) continue;
        const CheckResult c = sup_bound_check(r.newton->solution, 0.02);
        ok = ok && c.pass && c.applicable;
        if (c.rhs > 0.0) worst = std::max(worst, c.lhs / c.rhs);
        ++n;
    }
    return {ok && n > 0, std::to_string(n) + " solutions, max sup/(sqrt2 ||u||^1/2 ||Du||^1/2) = " + fmt(worst)};
}

Outcome solver_agreement() {
    double worst = 0.0;
    int both = 0;
    for (const SweepResult& r : sweep()) {
        if (!r.newton || !r.picard) continue;
        ++both;
        worst = std::max(worst, sup_norm(r.newton->solution - r.picard->solution));
    }
    // Terminal residual decay on a case that needs several Newton steps.
    const ProblemSpec spec{1.0, 1, 2, 1.0};
    const Grid g(1.0, 256);
    const StationaryOperator op(spec, g);
    const SolveReport rep = solve_newton(op, sample_forcing(forcing::Gauss{300.0, 0.5, 0.1}, spec, g));
    bool superlinear = rep.converged;
    double last_ratio = 0.0;
    const auto& h = rep.residual_history;
    std::vector<double> ratios;
    for (std::size_t i = 1; i < h.size(); ++i) {
        if (h[i - 1] < 1e-1 && h[i] > 1e-13) ratios.push_back(h[i] / h[i - 1]);
    }
    for (std::size_t i = 1; i < ratios.size(); ++i) superlinear = superlinear && ratios[i] < ratios[i - 1];
    if (!ratios.empty()) last_ratio = ratios.back();
    superlinear = superlinear && ratios.size() >= 2 && last_ratio < 1e-2;
    return {both > 0 && worst <= 1e-7 && superlinear,
            std::to_string(both) + " cases with both converged, max difference " + fmt(worst) +
                "; Newton terminal residual ratios shrink to " + fmt(last_ratio) + " over " +
                std::to_string(rep.iterations) + " iterations"};
}

Outcome jacobian() {
    std::mt19937_64 rng(77);
    std::normal_distribution<double> g;
    std::uniform_int_distribution<int> pick(0, 3);
    double lo = INFINITY, hi = -INFINITY;
    // A long interval keeps the dx^-(2l+1) round-off in the linear part below the O(eps) term at eps = 1e-5.
    const double length = 20.0;
    for (int t = 0; t < 50; ++t) {
        const int l = 1 + t % 2;
        const int k = 1 + pick(rng) % (4 * l);
        const ProblemSpec spec{length, l, k, 1.0};
        const Grid grid(length, 64);
        const StationaryOperator op(spec, grid);
        auto smooth = [&](double amp) {
            std::vector<double> c(5);
            for (double& v : c) v = g(rng);
            return GridFunction::sample(grid, [&](double x) {
                double s = 0.0;
                for (std::size_t j = 0; j < c.size(); ++j) s += c[j] * std::sin((j + 1) * std::numbers::pi * x / length);
                return amp * s;
            });
        };
        const GridFunction u = smooth(0.5), v = smooth(2.5);
        const GridFunction f(grid);
        const std::vector<double> jv = assemble_jacobian(u, op, 1.0).apply(v.values());
        const GridFunction r0 = nonlinear_residual(u, op, f, 1.0);
        std::vector<double> errs;
        for (double eps : {1e-3, 1e-4, 1e-5}) {
            const GridFunction r1 = nonlinear_residual(u + eps * v, op, f, 1.0);
            double e = 0.0;
            for (std::size_t i = 0; i < u.size(); ++i) {
                e = std::max(e, std::abs((r1[i] - r0[i]) / eps - jv[i]) * op.row_scale(i));
            }
            errs.push_back(e);
        }
        for (std::size_t i = 1; i < errs.size(); ++i) {
            const double ratio = errs[i - 1] / errs[i];
            lo = std::min(lo, ratio);
            hi = std::max(hi, ratio);
        }
    }
    return {lo >= 5.0 && hi <= 20.0,
            "50 pairs, error reduction per 10x smaller eps in [" + fmt(lo) + ", " + fmt(hi) + "]"};
}

Outcome thresholds() {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(0.05, 10.0);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const double a = u(rng), c = u(rng);
        const double ref = std::sqrt(3.0) * a / c;
        worst = std::max(worst, std::abs(critical_threshold(1, a, c) - ref) / ref);
    }
    bool gamma_ok = true, mono_ok = true;
    std::uniform_real_distribution<double> s(0.1, 3.0);
    for (int i = 0; i < 100; ++i) {
        const double a = s(rng), c = s(rng), w = s(rng);
        const double f = critical_threshold(1, a, c) * s(rng) / 3.2;
        gamma_ok = gamma_ok && std::abs(gamma_l(1, a, c, f) - gamma_1(a, c, f)) <= 1e-12;
        for (int l = 1; l <= 3; ++l) {
            for (int k = 1; k < 4 * l; ++k) {
                mono_ok = mono_ok && c1_constant(l, k, c) <= c1_constant(l, k, 1.01 * c);
                mono_ok = mono_ok && c2_constant(l, k, a, c, w) <= c2_constant(l, k, a, c, 1.01 * w);
            }
        }
    }
    return {worst <= 1e-12 && gamma_ok && mono_ok,
            "max relative gap " + fmt(worst) + "; gamma forms agree: " + (gamma_ok ? "yes" : "no") +
                "; C1/C2 monotone: " + (mono_ok ? "yes" : "no")};
}

Outcome gn_constant() {
    const Grid g(1.0, 256);
    const ConstantsReport r = estimate_c_star(1, 1.0, g, 200, 0);
    const ConstantsReport more = estimate_c_star(1, 1.0, g, 400, 0);
    bool monotone = more.c_star_lower >= r.c_star_lower;
    for (std::size_t i = 1; i < more.history.size(); ++i) monotone = monotone && more.history[i] >= more.history[i - 1];
    const double bound = std::sqrt(2.0 / std::numbers::pi) - 1e-3;
    return {r.c_star_lower >= bound && monotone,
            "C* >= " + fmt(r.c_star_lower) + " (200 trials), " + fmt(more.c_star_lower) + " (400 trials); sine bound " +
                fmt(bound + 1e-3)};
}

Outcome critical_solvability() {
    std::ostringstream os;
    bool ok = true;
    for (int l : {1, 2}) {
        const ProblemSpec spec{1.0, l, 4 * l, 1.0};
        const Grid g(1.0, 256);
        const double c_star = estimate_c_star(l, 1.0, g, 200, 0).c_star_lower;
        const double target = 0.5 * critical_threshold(l, spec.a, c_star) / 2.0;
        GridFunction f = sample_forcing(forcing::Gauss{1.0, 0.5, 0.1}, spec, g);
        f *= target / l2_norm(f);
        const StationaryOperator op(spec, g);
        const SolveReport rep = continuation_solve(op, f);
        const bool reached = rep.converged && rep.largest_lambda() == 1.0;
        double gamma = 0.0;
        bool emitted = false;
        if (reached) {
            for (const CheckResult& c : estimate_checks(rep.solution, spec, f, c_star)) {
                if (c.name == "weighted_hl_bound_critical" && c.applicable) {
                    emitted = true;
                    os << " l=" << l << ": " << c.status();
                }
            }
            gamma = gamma_l(l, spec.a, c_star, l2_norm(f));
        }
        os << " lambda=" << fmt(rep.largest_lambda()) << " gamma=" << fmt(gamma) << ";";
        ok = ok && reached && emitted && gamma > 0.0;
    }
    return {ok, "k=4l, ||f|| = 0.5 x threshold/2:" + os.str()};
}

Outcome continuous_dependence_check() {
    std::ostringstream os;
    bool ok = true;
    for (int l : {1, 2}) {
        const ProblemSpec spec{1.0, l, l == 1 ? 2 : 1, 1.0};
        const Grid g(1.0, 256);
        const double c_star = estimate_c_star(l, 1.0, g, 200, 0).c_star_lower;
        UniquenessInputs in{c_star, std::nullopt, std::nullopt, 0.0};
        if (l == 1) {
            const ConstantsReport kr = estimate_k_constants(1, 1, 0.5, 1.0, g, 200, 0);
            in.k1 = kr.k1_lower;
            in.k2 = kr.k2_lower;
        }
        const double bound = uniqueness_threshold(spec, in).value / 2.0;
        GridFunction f1 = sample_forcing(forcing::Gauss{1.0, 0.5, 0.1}, spec, g);
        f1 *= 0.5 * bound / std::sqrt(weighted_f2(f1));
        GridFunction g2 = sample_forcing(forcing::Sine{2, 1.0}, spec, g);
        g2 *= 0.2 * bound / std::sqrt(weighted_f2(g2));
        const StationaryOperator op(spec, g);
        const DependenceReport d = continuous_dependence(op, f1, f1 + g2);
        os << " l=" << l << " threshold/2=" << fmt(bound) << " ratios";
        for (double r : d.ratios) os << " " << fmt(r);
        os << " variation " << fmt(d.variation) << ";";
        ok = ok && d.variation < 0.2 && std::sqrt(weighted_f2(f1 + g2)) < bound;
    }
    return {ok, os.str()};
}

Outcome evolution_decay() {
    MarchConfig c;
    c.spec = ProblemSpec{1.0, 1, 1, 1.0};
    c.grid = Grid(1.0, 256);
    c.h = 0.01;
    c.steps = 100;
    const GridFunction u0 = sample_forcing(forcing::Gauss{0.1, 0.5, 0.08}, c.spec, c.grid);
    const Trajectory tr = march(u0, c);
    bool ok = !tr.failure && tr.size() == 101;
    double worst = 0.0;
    for (std::size_t n = 1; n < tr.size(); ++n) worst = std::max(worst, tr.l2[n] / tr.l2[n - 1]);
    ok = ok && worst <= 1.02;
    const Trajectory zero = march(GridFunction(c.grid), c);
    bool zero_ok = !zero.failure && zero.size() == 101;
    for (const GridFunction& u : zero.states) zero_ok = zero_ok && sup_norm(u) == 0.0;
    return {ok && zero_ok, "max ||u^n||/||u^{n-1}|| = " + fmt(worst) + ", ||u^100|| = " +
                               fmt(tr.l2.empty() ? 0.0 : tr.l2.back()) + " from " + fmt(tr.l2.front()) +
                               "; zero state stays zero: " + (zero_ok ? "yes" : "no")};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"manufactured-solution convergence", manufactured_convergence},
        {"banded LU vs dense oracle", oracle_equivalence},
        {"L2 bound ||u|| <= ||f||/a on sweep", estimate_one},
        {"energy identity second order", energy_identity},
        {"sup-norm lemma on sweep", sup_bound},
        {"Picard/Newton agreement", solver_agreement},
        {"Jacobian finite-difference check", jacobian},
        {"threshold formula identities", thresholds},
        {"interpolation constant lower bound", gn_constant},
        {"critical-case solvability", critical_solvability},
        {"continuous dependence", continuous_dependence_check},
        {"evolution decay", evolution_decay},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        if (!o.pass) ++failed;
        std::printf("%s %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
