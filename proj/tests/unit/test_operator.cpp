#include <gtest/gtest.h>

#include <cmath>

#include "dispersive/forcing.hpp"
#include "dispersive/stationary_operator.hpp"

using namespace dispersive;

TEST(ProblemSpec, Validation) {
    EXPECT_NO_THROW((ProblemSpec{1.0, 1, 4, 1.0}.validate()));
    EXPECT_THROW((ProblemSpec{1.0, 1, 5, 1.0}.validate()), ValidationError);
    EXPECT_THROW((ProblemSpec{1.0, 1, 0, 1.0}.validate()), ValidationError);
    EXPECT_THROW((ProblemSpec{0.0, 1, 1, 1.0}.validate()), ValidationError);
    EXPECT_THROW((ProblemSpec{1.0, 1, 1, -1.0}.validate()), ValidationError);
    try {
        ProblemSpec{1.0, 1, 5, 1.0}.validate();
    } catch (const ValidationError& e) {
        EXPECT_NE(std::string(e.what()).find("k must satisfy 1 ≤ k ≤ 4l"), std::string::npos);
    }
    EXPECT_TRUE((ProblemSpec{1.0, 2, 8, 1.0}.is_critical()));
    EXPECT_FALSE((ProblemSpec{1.0, 2, 7, 1.0}.is_critical()));
}

TEST(Operator, InteriorRowL1) {
    const Grid g(1.0, 40);
    const BandedMatrix a = assemble_operator(ProblemSpec{1.0, 1, 1, 1.0}, g);
    const double h3 = std::pow(g.spacing(), 3);
    const std::size_t i = 20;
    EXPECT_NEAR(a(i, i - 2) * h3, -0.5, 1e-12);
    EXPECT_NEAR(a(i, i - 1) * h3, 1.0, 1e-12);
    EXPECT_NEAR(a(i, i), 1.0, 1e-9);
    EXPECT_NEAR(a(i, i + 1) * h3, -1.0, 1e-12);
    EXPECT_NEAR(a(i, i + 2) * h3, 0.5, 1e-12);
    EXPECT_EQ(a(i, i + 3), 0.0);
}

TEST(Operator, InteriorRowL2OnQuintic) {
    const Grid g(1.0, 64);
    const double av = 1.5;
    const BandedMatrix a = assemble_operator(ProblemSpec{1.0, 2, 1, av}, g);
    const GridFunction x5 = GridFunction::sample(g, [](double t) { return std::pow(t, 5); });
    const std::vector<double> r = a.apply(x5.values());
    for (std::size_t i = 10; i < 55; ++i) {
        const double x = g.node(i);
        // The 5-point D^3 rule errs by dx^2/4 * u^(5) on quintics; the 7-point D^5 rule is exact.
        const double truncation = 30.0 * g.spacing() * g.spacing();
        EXPECT_NEAR(r[i], av * std::pow(x, 5) + 60 * x * x + truncation - 120, 1e-6);
    }
}

TEST(Operator, DoublingAChangesDiagonalOnly) {
    const Grid g(1.0, 40);
    const BandedMatrix a1 = assemble_operator(ProblemSpec{1.0, 2, 1, 1.0}, g);
    const BandedMatrix a2 = assemble_operator(ProblemSpec{1.0, 2, 1, 2.0}, g);
    const StationaryOperator op(ProblemSpec{1.0, 2, 1, 1.0}, g);
    const std::vector<double> d1 = a1.to_dense(), d2 = a2.to_dense();
    const std::size_t n = g.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const double diff = d2[i * n + j] - d1[i * n + j];
            if (i == j && !op.is_constraint_row(i)) {
                EXPECT_NEAR(diff, 1.0, 1e-9 * std::abs(d1[i * n + j]) + 1e-12);
            } else {
                EXPECT_EQ(diff, 0.0);
            }
        }
    }
}

TEST(Operator, TooSmallGrid) {
    EXPECT_THROW(StationaryOperator(ProblemSpec{1.0, 2, 1, 1.0}, Grid(1.0, 10)), ValidationError);
    EXPECT_EQ(min_intervals(2), 16);
}

TEST(LinearSolve, ZeroForcing) {
    const Grid g(1.0, 64);
    const LinearSolveReport r = linear_solve(ProblemSpec{1.0, 1, 1, 1.0}, g, GridFunction(g));
    EXPECT_EQ(sup_norm(r.solution), 0.0);
    EXPECT_EQ(energy_identity_residual(r.solution, ProblemSpec{}, GridFunction(g)), 0.0);
}

TEST(LinearSolve, ManufacturedSecondOrder) {
    for (int l = 1; l <= 3; ++l) {
        const ProblemSpec spec{1.0, l, 1, 1.0};
        std::vector<double> errs;
        for (int n : {64, 128, 256}) {
            const Grid g(1.0, n);
            const GridFunction f = sample_forcing(forcing::Manufactured{}, spec, g, false);
            const LinearSolveReport r = linear_solve(spec, g, f);
            errs.push_back(sup_norm(r.solution - manufactured_solution(spec, g)));
        }
        for (std::size_t i = 1; i < errs.size(); ++i) {
            const double order = std::log2(errs[i - 1] / errs[i]);
            EXPECT_GE(order, 1.7) << "l=" << l;
            EXPECT_LE(order, 2.3) << "l=" << l;
        }
    }
}

TEST(LinearSolve, EnergyIdentityAndEstimate) {
    const ProblemSpec spec{1.0, 2, 1, 1.0};
    std::vector<double> res;
    for (int n : {128, 256}) {
        const Grid g(1.0, n);
        const GridFunction f = sample_forcing(forcing::Gauss{1.0, 0.4, 0.15}, spec, g);
        const LinearSolveReport r = linear_solve(spec, g, f);
        res.push_back(r.energy_identity_residual);
        EXPECT_LE(l2_norm(r.solution), 1.05 * l2_norm(f) / spec.a);
        EXPECT_GT(r.empirical_c0, 0.0);
        const StationaryOperator op(spec, g);
        EXPECT_LE(op.scaled_residual_inf(op.apply(r.solution.values())), 1.0);
    }
    const double ratio = res[0] / res[1];
    EXPECT_GE(ratio, 3.0);
    EXPECT_LE(ratio, 5.0);
}

TEST(LinearSolve, Linearity) {
    const ProblemSpec spec{1.0, 1, 1, 0.5};
    const Grid g(1.0, 128);
    const StationaryOperator op(spec, g);
    const GridFunction f1 = sample_forcing(forcing::Sine{2, 1.0}, spec, g);
    const GridFunction f2 = sample_forcing(forcing::Gauss{0.3, 0.7, 0.1}, spec, g);
    const GridFunction u12 = op.solve_forcing(f1 + f2);
    const GridFunction sum = op.solve_forcing(f1) + op.solve_forcing(f2);
    EXPECT_LE(sup_norm(u12 - sum), 1e-9 * sup_norm(u12));
}

TEST(LinearSolve, BoundaryRowsSatisfied) {
    const ProblemSpec spec{1.0, 3, 1, 1.0};
    const Grid g(1.0, 128);
    const StationaryOperator op(spec, g);
    const GridFunction u = op.solve_forcing(sample_forcing(forcing::Gauss{1.0, 0.5, 0.1}, spec, g));
    const std::vector<double> au = op.apply(u.values());
    for (const ConstraintRow& r : op.constraints()) {
        EXPECT_LE(std::abs(au[r.row]) * op.row_scale(r.row), 1e-10);
    }
}
