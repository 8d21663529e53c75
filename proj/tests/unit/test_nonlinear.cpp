#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "dispersive/forcing.hpp"
#include "dispersive/nonlinear_solver.hpp"

using namespace dispersive;

namespace {

GridFunction bump(const ProblemSpec& spec, const Grid& g, double amp) {
    return sample_forcing(forcing::Gauss{amp, 0.5, 0.1}, spec, g);
}

}  // namespace

TEST(Residual, TrivialCases) {
    const ProblemSpec spec{1.0, 1, 2, 1.0};
    const Grid g(1.0, 64);
    const StationaryOperator op(spec, g);
    const GridFunction f = bump(spec, g, 0.3);
    const GridFunction r = nonlinear_residual(GridFunction(g), op, f, 1.0);
    for (std::size_t i = 0; i < r.size(); ++i) {
        EXPECT_EQ(r[i], op.is_constraint_row(i) ? 0.0 : -f[i]);
    }
    EXPECT_EQ(sup_norm(nonlinear_residual(GridFunction(g), op, f, 0.0)), 0.0);
    EXPECT_THROW(nonlinear_residual(GridFunction(g), op, f, 1.5), ValidationError);
}

TEST(Residual, ManufacturedIsSecondOrder) {
    const ProblemSpec spec{1.0, 2, 3, 1.0};
    std::vector<double> res;
    for (int n : {64, 128}) {
        const Grid g(1.0, n);
        const StationaryOperator op(spec, g);
        const GridFunction f = sample_forcing(forcing::Manufactured{2}, spec, g);
        const GridFunction r = nonlinear_residual(manufactured_solution(spec, g), op, f, 1.0);
        double worst = 0.0;
        for (std::size_t i = 0; i < r.size(); ++i) {
            if (!op.is_constraint_row(i)) worst = std::max(worst, std::abs(r[i]));
        }
        res.push_back(worst);
    }
    EXPECT_GT(res[0] / res[1], 3.0);
}

TEST(Picard, FixedPointAndContraction) {
    const ProblemSpec spec{1.0, 1, 2, 1.0};
    const Grid g(1.0, 128);
    const StationaryOperator op(spec, g);
    EXPECT_LE(sup_norm(picard_step(GridFunction(g), op, bump(spec, g, 0.1)) -
                       op.solve_forcing(bump(spec, g, 0.1))),
              0.0);

    const SolveReport zero = solve_picard(op, GridFunction(g));
    EXPECT_TRUE(zero.converged);
    EXPECT_EQ(zero.iterations, 1);
    EXPECT_EQ(sup_norm(zero.solution), 0.0);

    const GridFunction f = bump(spec, g, 0.1);
    const SolveReport rep = solve_picard(op, f);
    ASSERT_TRUE(rep.converged) << rep.message;
    EXPECT_LE(rep.final_residual(), 1e-10);
    EXPECT_LE(sup_norm(picard_step(rep.solution, op, f) - rep.solution), 1e-10);

    const SolveReport small = solve_picard(op, 0.01 * f);
    ASSERT_FALSE(small.contraction_ratios.empty());
    EXPECT_LT(small.contraction_ratios.front(), 1.0);
}

TEST(Picard, DivergenceReportedGracefully) {
    const ProblemSpec spec{1.0, 1, 2, 1.0};
    const Grid g(1.0, 64);
    const StationaryOperator op(spec, g);
    PicardOptions o;
    o.max_iter = 60;
    const SolveReport rep = solve_picard(op, bump(spec, g, 4000.0), o);
    EXPECT_FALSE(rep.converged);
    EXPECT_FALSE(rep.message.empty());
}

TEST(Jacobian, ZeroStateIsLinearOperator) {
    const Grid g(1.0, 40);
    for (int k : {1, 2, 3}) {
        const StationaryOperator op(ProblemSpec{1.0, 1, k, 1.0}, g);
        const BandedMatrix j = assemble_jacobian(GridFunction(g), op, 1.0);
        EXPECT_EQ(j.to_dense(), op.matrix().widened(j.lower(), j.upper()).to_dense());
    }
}

TEST(Jacobian, FiniteDifferenceCheck) {
    const ProblemSpec spec{1.0, 2, 3, 1.0};
    const Grid g(1.0, 64);
    const StationaryOperator op(spec, g);
    const GridFunction f = bump(spec, g, 1.0);
    std::mt19937_64 rng(3);
    std::normal_distribution<double> n;
    for (int t = 0; t < 5; ++t) {
        GridFunction u(g), v(g);
        for (std::size_t i = 0; i < u.size(); ++i) {
            u[i] = n(rng);
            v[i] = n(rng);
        }
        const std::vector<double> jv = assemble_jacobian(u, op, 1.0).apply(v.values());
        const GridFunction r0 = nonlinear_residual(u, op, f, 1.0);
        std::vector<double> errs;
        for (double eps : {1e-3, 1e-4}) {
            const GridFunction r1 = nonlinear_residual(u + eps * v, op, f, 1.0);
            double e = 0.0;
            for (std::size_t i = 0; i < u.size(); ++i) {
                e = std::max(e, std::abs((r1[i] - r0[i]) / eps - jv[i]) * op.row_scale(i));
            }
            errs.push_back(e);
        }
        EXPECT_NEAR(errs[0] / errs[1], 10.0, 1.0);
    }
}

TEST(Newton, AgreesWithPicardAndIsFast) {
    const ProblemSpec spec{1.0, 1, 2, 1.0};
    const Grid g(1.0, 128);
    const StationaryOperator op(spec, g);
    const GridFunction f = bump(spec, g, 0.1);
    const SolveReport p = solve_picard(op, f);
    const SolveReport nz = solve_newton(op, f);
    ASSERT_TRUE(nz.converged) << nz.message;
    EXPECT_LE(sup_norm(p.solution - nz.solution), 1e-8);

    const SolveReport warm = solve_newton(op, f, {}, op.solve_forcing(f));
    ASSERT_TRUE(warm.converged);
    EXPECT_LE(warm.iterations, nz.iterations);

    const SolveReport z = solve_newton(op, GridFunction(g));
    EXPECT_TRUE(z.converged);
    EXPECT_EQ(sup_norm(z.solution), 0.0);
}

TEST(Newton, QuadraticTail) {
    const ProblemSpec spec{1.0, 1, 2, 1.0};
    const Grid g(1.0, 128);
    const StationaryOperator op(spec, g);
    const SolveReport rep = solve_newton(op, bump(spec, g, 3.0));
    ASSERT_TRUE(rep.converged);
    const auto& r = rep.residual_history;
    ASSERT_GE(r.size(), 3u);
    // Once in the asymptotic regime each residual is far below the previous one.
    for (std::size_t i = 1; i < r.size(); ++i) {
        if (r[i - 1] < 1e-2 && r[i] > 1e-13) EXPECT_LT(r[i], 0.1 * r[i - 1]);
    }
}

TEST(Continuation, PathBoundedAndComplete) {
    const ProblemSpec spec{1.0, 1, 3, 1.0};
    const Grid g(1.0, 128);
    const StationaryOperator op(spec, g);
    const GridFunction f = bump(spec, g, 2.0);
    const SolveReport rep = continuation_solve(op, f);
    ASSERT_TRUE(rep.converged) << rep.message;
    EXPECT_DOUBLE_EQ(rep.largest_lambda(), 1.0);
    for (std::size_t i = 0; i < rep.lambda_path.size(); ++i) {
        EXPECT_LE(rep.path_l2_norms[i], 1.05 * rep.lambda_path[i] * l2_norm(f) / spec.a);
    }
    const SolveReport newton = solve_newton(op, f);
    ASSERT_TRUE(newton.converged);
    EXPECT_LE(sup_norm(newton.solution - rep.solution), 1e-8);

    ContinuationOptions one;
    one.steps = 1;
    const SolveReport single = continuation_solve(op, f, one);
    ASSERT_TRUE(single.converged);
    const SolveReport direct = solve_newton(op, f, {}, op.solve_forcing(f));
    EXPECT_LE(sup_norm(single.solution - direct.solution), 1e-10);
}

TEST(SolveMethods, ParseAndDispatch) {
    EXPECT_EQ(parse_solve_method("picard"), SolveMethod::picard);
    EXPECT_EQ(to_string(SolveMethod::continuation), "continuation");
    EXPECT_THROW(parse_solve_method("bisection"), ValidationError);
}

TEST(EnergyIdentity, NonlinearSolution) {
    const ProblemSpec spec{1.0, 1, 1, 1.0};
    std::vector<double> res;
    for (int n : {128, 256}) {
        const Grid g(1.0, n);
        const StationaryOperator op(spec, g);
        const GridFunction f = bump(spec, g, 1.0);
        const SolveReport rep = solve_newton(op, f);
        ASSERT_TRUE(rep.converged);
        res.push_back(energy_identity_residual(rep.solution, spec, f));
    }
    EXPECT_GE(res[0] / res[1], 3.0);
    EXPECT_LE(res[0] / res[1], 5.0);
}
