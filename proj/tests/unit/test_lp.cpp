/*  Copyright 2026 The sparse-recovery Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.  */

#include <gtest/gtest.h>

#include <random>

#include "oracles/oracles.hpp"
#include "recovery/lp.hpp"

using namespace recovery;

namespace
{
    StandardLP make_lp(const Vector& c, const Matrix& g, const Vector& h)
    {
        return StandardLP{c, g, h};
    }

    void expect_kkt(const StandardLP& lp, const LPSolution& s, double tol)
    {
        ASSERT_EQ(s.status, LPStatus::optimal);
        EXPECT_LE((lp.h - lp.g * s.primal).norm() / (1.0 + lp.h.norm()), tol);
        EXPECT_LE((lp.c - lp.g.transpose() * s.dual_eq - s.dual_ineq).norm() / (1.0 + lp.c.norm()), tol);
        EXPECT_LE(s.primal.dot(s.dual_ineq) / (1.0 + std::abs(s.objective)), tol);
        EXPECT_GE(s.primal.minCoeff(), 0.0);
        EXPECT_GE(s.dual_ineq.minCoeff(), 0.0);
        EXPECT_DOUBLE_EQ(s.objective, lp.c.dot(s.primal));
    }
}

TEST(SolveLp, SinglePointFeasibleSet)
{
    const auto lp = make_lp(Vector::Ones(1), Matrix::Ones(1, 1), Vector::Ones(1));
    const LPSolution s = solve_lp(lp, 1e-9, 200);
    expect_kkt(lp, s, 1e-9);
    EXPECT_NEAR(s.primal[0], 1.0, 1e-8);
    EXPECT_NEAR(s.objective, 1.0, 1e-8);
}

TEST(SolveLp, ConstantObjectiveOnFeasibleSet)
{
    const auto lp = make_lp(Vector::Ones(2), Matrix::Ones(1, 2), Vector::Constant(1, 2.0));
    const LPSolution s = solve_lp(lp, 1e-9, 200);
    expect_kkt(lp, s, 1e-9);
    EXPECT_NEAR(s.objective, 2.0, 1e-8);
}

TEST(SolveLp, DetectsInfeasible)
{
    // x1 + x2 = -1 with x >= 0
    const auto lp = make_lp(Vector::Ones(2), Matrix::Ones(1, 2), Vector::Constant(1, -1.0));
    EXPECT_EQ(solve_lp(lp).status, LPStatus::infeasible);
}

TEST(SolveLp, DetectsUnbounded)
{
    Vector c(2);
    c << -1, 0;
    Matrix g(1, 2);
    g << 1, -1;
    EXPECT_EQ(solve_lp(make_lp(c, g, Vector::Zero(1))).status, LPStatus::unbounded);

    Vector c3(3);
    c3 << -1, -1, 0;
    Matrix g3(1, 3);
    g3 << 1, -1, 0;
    EXPECT_EQ(solve_lp(make_lp(c3, g3, Vector::Ones(1))).status, LPStatus::unbounded);
}

TEST(SolveLp, DependentRowsArePresolved)
{
    Matrix g(3, 3);
    g << 1, 1, 1,
         2, 2, 2,
         1, 0, -1;
    Vector h(3);
    h << 3, 6, 0;
    Vector c(3);
    c << 1, 2, 3;
    const auto lp = make_lp(c, g, h);
    const LPSolution s = solve_lp(lp);
    expect_kkt(lp, s, 1e-9);
    Matrix g2(2, 3);
    g2 << g.row(0), g.row(2);
    Vector h2(2);
    h2 << h[0], h[2];
    EXPECT_NEAR(s.objective, oracle::vertex_enumeration(c, g2, h2).objective, 1e-7);
}

TEST(SolveLp, InconsistentDependentRowsAreInfeasible)
{
    Matrix g(2, 2);
    g << 1, 1,
         2, 2;
    Vector h(2);
    h << 1, 3;
    EXPECT_EQ(solve_lp(make_lp(Vector::Ones(2), g, h)).status, LPStatus::infeasible);
}

TEST(SolveLp, RejectsBadArguments)
{
    const auto lp = make_lp(Vector::Ones(2), Matrix::Ones(1, 3), Vector::Ones(1));
    EXPECT_THROW(solve_lp(lp), Error);
    const auto ok = make_lp(Vector::Ones(1), Matrix::Ones(1, 1), Vector::Ones(1));
    EXPECT_THROW(solve_lp(ok, 0.0, 200), Error);
}

TEST(SolveLp, RandomSmallLpsMatchVertexEnumeration)
{
    std::mt19937_64 rng(101);
    for (int t = 0; t < 50; ++t) {
        const auto small = oracle::random_feasible_bounded_lp(rng);
        const auto lp = make_lp(small.c, small.g, small.h);
        const LPSolution s = solve_lp(lp, 1e-9, 200);
        expect_kkt(lp, s, 1e-8);
        const auto ref = oracle::vertex_enumeration(small.c, small.g, small.h);
        ASSERT_TRUE(ref.feasible);
        EXPECT_NEAR(s.objective, ref.objective, 1e-6) << "instance " << t;
    }
}

TEST(WeightedL1Min, ExampleLine)
{
    Matrix a(1, 2);
    a << 1, 2;
    SensingMatrix s(a);
    const Observation y(s, Vector::Constant(1, 2.0));

    // Basic solutions of x1 + 2 x2 = 2 are (2, 0) and (0, 1).
    const auto basics = oracle::basic_solutions(a, y.y());
    EXPECT_DOUBLE_EQ(oracle::weighted_l1_by_vertices(basics, Vector::Ones(2)), 1.0);

    const auto sol = weighted_l1_min(s, y, Vector::Ones(2));
    EXPECT_EQ(sol.status, LPStatus::optimal);
    EXPECT_NEAR(sol.x[0], 0.0, 1e-8);
    EXPECT_NEAR(sol.x[1], 1.0, 1e-8);
    EXPECT_NEAR(sol.objective, 1.0, 1e-8);
}

TEST(WeightedL1Min, ZeroObservation)
{
    std::mt19937_64 rng(3);
    SensingMatrix s(oracle::gaussian_matrix(4, 9, rng));
    const auto sol = weighted_l1_min(s, Observation(s, Vector::Zero(4)), Vector::Ones(9));
    EXPECT_TRUE(sol.x.isZero(0.0));
    EXPECT_EQ(sol.objective, 0.0);
}

TEST(WeightedL1Min, ZeroWeightTieBreakUsesFloor)
{
    Matrix a(1, 2);
    a << 1, 2;
    SensingMatrix s(a);
    Vector w(2);
    w << 1, 0;
    const auto sol = weighted_l1_min(s, Observation(s, Vector::Constant(1, 2.0)), w);
    EXPECT_NEAR(sol.x[0], 0.0, 1e-8);
    EXPECT_NEAR(sol.x[1], 1.0, 1e-8);
    EXPECT_NEAR(sol.objective, 0.0, 1e-8);
}

TEST(WeightedL1Min, RejectsNegativeWeights)
{
    SensingMatrix s(Matrix::Identity(2, 2));
    Vector w(2);
    w << 1, -1;
    EXPECT_THROW(weighted_l1_min(s, Observation(s, Vector::Ones(2)), w), Error);
}

TEST(WeightedL1Min, MatchesBasicSolutionOracle)
{
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> wd(0.0, 2.0);
    for (int t = 0; t < 30; ++t) {
        SensingMatrix s(oracle::gaussian_matrix(4, 8, rng));
        const Vector y = oracle::gaussian_matrix(4, 1, rng);
        Vector w(8);
        for (Index i = 0; i < 8; ++i) w[i] = 1e-3 + wd(rng);
        const auto sol = weighted_l1_min(s, Observation(s, y), w);
        const double ref = oracle::weighted_l1_by_vertices(oracle::basic_solutions(s.entries(), y), w);
        EXPECT_NEAR(sol.objective, ref, 1e-7 * (1.0 + ref));
        EXPECT_LE((s.entries() * sol.x - y).norm(), 1e-8 * (1.0 + y.norm()));
    }
}

TEST(WeightedL1MinProperty, DualCertificateForUnitWeights)
{
    std::mt19937_64 rng(18);
    for (int t = 0; t < 20; ++t) {
        SensingMatrix s(oracle::gaussian_matrix(10, 30, rng));
        const Vector y = oracle::gaussian_matrix(10, 1, rng);
        const auto sol = weighted_l1_min(s, Observation(s, y), Vector::Ones(30));
        const double l1 = sol.x.lpNorm<1>();
        EXPECT_LE((s.entries().transpose() * sol.dual).lpNorm<Eigen::Infinity>(), 1.0 + 1e-6);
        EXPECT_NEAR(sol.dual.dot(y), l1, 1e-6 * (1.0 + l1));
    }
}

TEST(WeightedL1MinProperty, PositiveScaling)
{
    std::mt19937_64 rng(19);
    for (int t = 0; t < 10; ++t) {
        SensingMatrix s(oracle::gaussian_matrix(8, 20, rng));
        const Vector y = oracle::gaussian_matrix(8, 1, rng);
        Vector w = Vector::Ones(20);
        w.head(5).setConstant(0.3);
        for (double alpha : {0.01, 3.0, 250.0}) {
            const Vector x1 = weighted_l1_min(s, Observation(s, y), w).x;
            const Vector xa = weighted_l1_min(s, Observation(s, alpha * y), w).x;
            EXPECT_LE((xa - alpha * x1).lpNorm<Eigen::Infinity>(), 1e-6 * alpha * (1.0 + x1.lpNorm<Eigen::Infinity>()));
        }
    }
}

TEST(WeightedL1MinProperty, DecreasingAWeightNeverIncreasesOptimum)
{
    std::mt19937_64 rng(20);
    std::uniform_real_distribution<double> wd(0.1, 2.0);
    for (int t = 0; t < 20; ++t) {
        SensingMatrix s(oracle::gaussian_matrix(6, 15, rng));
        const Observation y(s, oracle::gaussian_matrix(6, 1, rng));
        Vector w(15);
        for (Index i = 0; i < 15; ++i) w[i] = wd(rng);
        const double before = weighted_l1_min(s, y, w).objective;
        Vector lowered = w;
        lowered[static_cast<Index>(rng() % 15)] *= 0.25;
        const double after = weighted_l1_min(s, y, lowered).objective;
        EXPECT_LE(after, before + 1e-7 * (1.0 + before));
    }
}
