// Copyright 2026 The gatebound Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "gatebound/sdp.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <random>

#include "gatebound/diamond.hpp"

using namespace gatebound;

namespace {

SdpProblem scalar_problem() {
    SdpProblem p;
    p.blocks = {1};
    p.objective = {RealMatrix{{1.0}}};
    SdpConstraint c{{}, 3.0};
    c.matrix.add(0, 0, 0, 1.0);
    p.constraints.push_back(c);
    return p;
}

SdpProblem diagonal_pinned_problem() {
    SdpProblem p;
    p.blocks = {2};
    p.objective = {RealMatrix::identity(2)};
    SdpConstraint c0{{}, 1.0};
    c0.matrix.add(0, 0, 0, 1.0);
    SdpConstraint c1{{}, 2.0};
    c1.matrix.add(0, 1, 1, 1.0);
    p.constraints = {c0, c1};
    return p;
}

}  // namespace

TEST(sdp, scalar_equality) {
    SdpSolution s = SdpSolver().solve(scalar_problem());
    ASSERT_EQ(s.status, SdpStatus::Converged);
    EXPECT_NEAR(s.primal_value, 3.0, 1e-7);
    EXPECT_NEAR(s.dual_value, 3.0, 1e-7);
}

TEST(sdp, pinned_diagonal_matches_grid_search) {
    // Candidates X = [[1, t], [t, 2]] over a grid in t; PSD is checked by the
    // 2x2 minors and the objective is evaluated directly.
    double best = std::numeric_limits<double>::infinity();
    for (int k = -2000; k <= 2000; k++) {
        double t = 2.0 * k / 1000.0;
        RealMatrix x{{1.0, t}, {t, 2.0}};
        bool psd = x(0, 0) >= 0 && x(1, 1) >= 0 && x(0, 0) * x(1, 1) - x(0, 1) * x(1, 0) >= 0;
        if (psd) {
            best = std::min(best, x(0, 0) + x(1, 1));
        }
    }
    SdpSolution s = SdpSolver().solve(diagonal_pinned_problem());
    ASSERT_EQ(s.status, SdpStatus::Converged);
    EXPECT_NEAR(s.primal_value, best, 1e-7);
    EXPECT_NEAR(s.X[0](0, 1), 0.0, 1e-6);
}

TEST(sdp, trace_constrained_minimum_is_smallest_eigenvalue) {
    // min <C, X> with Tr X = 1 is the least eigenvalue of C. The oracle is
    // the closed-form root of the 2x2 characteristic polynomial.
    std::mt19937_64 rng(11);
    std::normal_distribution<double> normal;
    for (int trial = 0; trial < 5; trial++) {
        double a = normal(rng), b = normal(rng), c = normal(rng);
        SdpProblem p;
        p.blocks = {2};
        p.objective = {RealMatrix{{a, b}, {b, c}}};
        SdpConstraint tr{{}, 1.0};
        tr.matrix.add(0, 0, 0, 1.0);
        tr.matrix.add(0, 1, 1, 1.0);
        p.constraints = {tr};
        double expected = (a + c) / 2 - std::sqrt((a - c) * (a - c) / 4 + b * b);
        SdpSolution s = SdpSolver().solve(p);
        ASSERT_EQ(s.status, SdpStatus::Converged);
        EXPECT_NEAR(s.primal_value, expected, 1e-7);
    }
}

TEST(sdp, certificate_recheck_is_independent_of_solver_state) {
    SdpProblem p = diagonal_pinned_problem();
    SdpSolution s = SdpSolver().solve(p);
    CertificateCheck check = verify_certificate(p, s);
    EXPECT_TRUE(check.ok(SdpOptions{}));
    EXPECT_LE(check.primal_residual, 1e-8);
    EXPECT_LE(check.dual_residual, 1e-8);
    EXPECT_NEAR(check.primal_value, s.primal_value, 1e-12);

    // Tampering with the certificate is detected.
    s.y[0] += 1e-3;
    EXPECT_FALSE(verify_certificate(p, s).ok(SdpOptions{}));
}

TEST(sdp, weak_duality_on_every_iterate) {
    for (const SdpProblem &p : {scalar_problem(), diagonal_pinned_problem()}) {
        SdpSolution s = SdpSolver().solve(p);
        for (const auto &it : s.history) {
            EXPECT_LE(it.dual_value, it.primal_value + 1e-9) << "iteration " << it.iteration;
        }
    }
}

TEST(sdp, weak_duality_on_diamond_iterates) {
    ComplexMatrix j = unitary_error(0.3).choi() - identity_channel(2).choi();
    DiamondProgram program(j, 2);
    SdpSolution s = SdpSolver().solve(program.problem());
    ASSERT_EQ(s.status, SdpStatus::Converged);
    for (const auto &it : s.history) {
        EXPECT_LE(it.dual_value, it.primal_value + 1e-9) << "iteration " << it.iteration;
    }
}

TEST(sdp, deterministic_iterate_path) {
    ComplexMatrix j = amplitude_damping(0.3).choi() - identity_channel(2).choi();
    DiamondProgram program(j, 2);
    SdpSolution a = SdpSolver().solve(program.problem());
    SdpSolution b = SdpSolver().solve(program.problem());
    ASSERT_EQ(a.history.size(), b.history.size());
    for (size_t k = 0; k < a.history.size(); k++) {
        EXPECT_EQ(std::memcmp(&a.history[k].primal_value, &b.history[k].primal_value, sizeof(double)), 0);
        EXPECT_EQ(std::memcmp(&a.history[k].dual_value, &b.history[k].dual_value, sizeof(double)), 0);
    }
    ASSERT_EQ(a.y.size(), b.y.size());
    for (size_t i = 0; i < a.y.size(); i++) {
        EXPECT_EQ(std::memcmp(&a.y[i], &b.y[i], sizeof(double)), 0);
    }
}

TEST(sdp, diamond_encoding_of_small_unitary_rotation) {
    ComplexMatrix j = unitary_error(0.3).choi() - identity_channel(2).choi();
    DiamondProgram program(j, 2);
    SdpSolution s = SdpSolver().solve(program.problem());
    ASSERT_EQ(s.status, SdpStatus::Converged);
    EXPECT_NEAR(DiamondProgram::distance_from_objective(s.primal_value), std::sin(0.3), 1e-6);
    EXPECT_EQ(program.problem().constraints.size(), 2u * 2u * 2u * 2u + 1u);
}

TEST(sdp, iteration_cap_reports_status) {
    SdpOptions opts;
    opts.max_iter = 2;
    ComplexMatrix j = unitary_error(0.3).choi() - identity_channel(2).choi();
    DiamondProgram program(j, 2);
    SdpSolution s = SdpSolver(opts).solve(program.problem());
    EXPECT_EQ(s.status, SdpStatus::MaxIterations);
}

TEST(sdp, rejects_inconsistent_problem) {
    SdpProblem p = scalar_problem();
    p.blocks = {2};
    EXPECT_THROW(SdpSolver().solve(p), std::invalid_argument);
}
