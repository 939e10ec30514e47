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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <thread>
#include <vector>

#include "gatebound/channels.hpp"
#include "gatebound/diamond.hpp"
#include "gatebound/pauli.hpp"
#include "gatebound/random.hpp"

namespace gatebound {
namespace {

DiamondOptions forced_sdp() {
    DiamondOptions o;
    o.force_sdp = true;
    return o;
}

ComplexMatrix diag_phases(const std::vector<double> &phases) {
    std::vector<Complex> d;
    for (double p : phases) {
        d.push_back(std::polar(1.0, p));
    }
    return ComplexMatrix::diagonal(d);
}

TEST(Diamond, EqualChannelsAreAtDistanceZero) {
    Rng rng(61);
    Channel c = random_channel(2, 2, rng);
    DiamondResult r = diamond_distance(c, c);
    EXPECT_EQ(r.value, 0.0);
    EXPECT_FALSE(std::signbit(r.value));
    EXPECT_FALSE(r.inverse().has_value());
    EXPECT_EQ(diamond_distance(identity_channel(3), identity_channel(3)).value, 0.0);
}

TEST(Diamond, NamedChannelExamples) {
    DiamondResult u = diamond_distance(unitary_error(1e-2), identity_channel(2));
    EXPECT_EQ(u.method, DiamondMethod::UnitaryClosedForm);
    EXPECT_NEAR(u.value, 1.0e-2, 0.05e-2);
    DiamondResult cp = diamond_distance(generalized_cphase(4, 0.259), identity_channel(4));
    EXPECT_NEAR(cp.value, 0.129, 5e-4);
    DiamondResult dep = diamond_distance(depolarizing(1e-3), identity_channel(2));
    EXPECT_EQ(dep.method, DiamondMethod::PauliClosedForm);
    EXPECT_NEAR(dep.value, 7.5e-4, 1e-15);
    EXPECT_NEAR(*dep.inverse(), 1 / 7.5e-4, 1e-9);
}

TEST(UnitaryClosedForm, Examples) {
    EXPECT_EQ(unitary_diamond_distance(ComplexMatrix::identity(3)).value, 0.0);
    for (double theta : {0.0, 0.1, 0.5, 1.0, std::numbers::pi / 2, 2.0, 3.0, std::numbers::pi}) {
        EXPECT_NEAR(unitary_diamond_distance(diag_phases({theta, -theta})).value, std::sin(theta), 1e-12) << theta;
        EXPECT_NEAR(unitary_diamond_distance(diag_phases({0, 0, theta})).value, std::sin(theta / 2), 1e-12) << theta;
    }
    EXPECT_NEAR(unitary_diamond_distance(diag_phases({0, std::numbers::pi / 2, std::numbers::pi})).value, 1.0, 1e-12);
    EXPECT_THROW(unitary_diamond_distance(ComplexMatrix{{1, 1}, {0, 1}}), std::invalid_argument);
}

TEST(UnitaryClosedForm, ThreeLevelCoveringHalfCircleMatchesSdp) {
    Channel u = unitary_channel(diag_phases({0, std::numbers::pi / 2, std::numbers::pi}));
    DiamondResult r = diamond_distance(u, identity_channel(3), forced_sdp());
    EXPECT_EQ(r.method, DiamondMethod::Sdp);
    EXPECT_NEAR(r.value, 1.0, 1e-6);
}

TEST(UnitaryClosedForm, EigenvaluesOfRandomUnitaries) {
    Rng rng(62);
    for (size_t d : {2u, 3u, 5u}) {
        ComplexMatrix u = haar_unitary(d, rng);
        auto eig = unitary_eigenvalues(u);
        ASSERT_EQ(eig.size(), d);
        for (Complex z : eig) {
            EXPECT_NEAR(std::abs(z), 1, 1e-10);
            ComplexMatrix shifted = u - ComplexMatrix::identity(d) * z;
            // The smallest singular value of U - z I vanishes at an eigenvalue.
            auto sv = hermitian_eigenvalues(shifted.adjoint() * shifted);
            EXPECT_LT(sv.back(), 1e-10);
        }
    }
}

TEST(MethodAgreement, RandomUnitaries) {
    Rng rng(63);
    for (int k = 0; k < 20; k++) {
        size_t d = 2 + k % 3;
        Channel u = unitary_channel(haar_unitary(d, rng));
        DiamondResult closed = diamond_distance(u, identity_channel(d));
        ASSERT_EQ(closed.method, DiamondMethod::UnitaryClosedForm);
        DiamondResult sdp = diamond_distance(u, identity_channel(d), forced_sdp());
        EXPECT_NEAR(closed.value, sdp.value, 1e-6) << "trial " << k << ", d = " << d;
    }
}

TEST(MethodAgreement, RandomPauliChannels) {
    Rng rng(64);
    for (int k = 0; k < 20; k++) {
        size_t n = 1 + k % 2;
        Channel a = random_pauli_channel(n, rng).to_channel();
        Channel b = random_pauli_channel(n, rng).to_channel();
        DiamondResult closed = diamond_distance(a, b);
        ASSERT_EQ(closed.method, DiamondMethod::PauliClosedForm);
        DiamondResult sdp = diamond_distance(a, b, forced_sdp());
        EXPECT_NEAR(closed.value, sdp.value, 1e-6) << "trial " << k;
    }
}

TEST(PauliClosedForm, Examples) {
    EXPECT_EQ(pauli_diamond_distance(as_pauli_channel(identity_channel(2))).value, 0.0);
    for (double r : {0.01, 0.3, 1.0}) {
        EXPECT_NEAR(pauli_diamond_distance(as_pauli_channel(depolarizing(r))).value, 3 * r / 4, 1e-15);
    }
}

TEST(PauliDistance, Examples) {
    EXPECT_NEAR(pauli_distance(depolarizing(0.2)).value, 0, 1e-15);
    Rng rng(65);
    Channel c = random_channel(2, 2, rng);
    EXPECT_NEAR(pauli_distance(pauli_twirl(c)).value, 0, 1e-12);
    DiamondResult u = pauli_distance(unitary_error(0.2));
    EXPECT_GT(u.value, 0);
    EXPECT_LE(u.lower_certificate, u.value);
    EXPECT_LE(u.value, u.upper_certificate);
}

TEST(BruteForce, Examples) {
    EXPECT_EQ(brute_force_lower_bound(identity_channel(2), identity_channel(2), 10), 0.0);
    double u = brute_force_lower_bound(unitary_error(0.3), identity_channel(2), 2000);
    EXPECT_GE(u, 0.9 * std::sin(0.3));
    EXPECT_LE(u, std::sin(0.3) + 1e-12);
    EXPECT_LE(brute_force_lower_bound(depolarizing(0.1), identity_channel(2), 2000), 0.075 + 1e-8);
    EXPECT_THROW(brute_force_lower_bound(identity_channel(2), identity_channel(2), 0), std::invalid_argument);
    EXPECT_THROW(brute_force_lower_bound(identity_channel(2), identity_channel(3), 5), std::invalid_argument);
}

TEST(Sdp, SandwichedByBruteForceAndCertificates) {
    Rng rng(66);
    for (size_t d : {2u, 3u}) {
        for (int trial = 0; trial < 4; trial++) {
            Channel e = random_channel(d, 2, rng), f = random_channel(d, 1 + trial % 3, rng);
            DiamondResult r = diamond_distance(e, f);
            ASSERT_EQ(r.method, DiamondMethod::Sdp);
            ASSERT_TRUE(r.sdp.has_value());
            EXPECT_EQ(r.sdp->status, SdpStatus::Converged);
            EXPECT_LE(r.lower_certificate, r.value);
            EXPECT_LE(r.value, r.upper_certificate);
            EXPECT_LE(r.upper_certificate - r.lower_certificate, 1e-6);
            EXPECT_LE(brute_force_lower_bound(e, f, 300), r.value + 1e-7);
            EXPECT_LE(r.value, 1.0);
        }
    }
}

TEST(Sdp, IsSymmetricAndSatisfiesTriangleInequality) {
    Rng rng(67);
    for (int trial = 0; trial < 3; trial++) {
        Channel a = random_channel(2, 2, rng), b = random_channel(2, 2, rng), c = random_channel(2, 3, rng);
        double ab = diamond_distance(a, b).value, ba = diamond_distance(b, a).value;
        EXPECT_NEAR(ab, ba, 1e-7);
        EXPECT_LE(ab, diamond_distance(a, c).value + diamond_distance(c, b).value + 1e-7);
    }
}

TEST(Sdp, DimensionLimitsAndMismatch) {
    Rng rng(68);
    Channel big = random_channel(8, 1, rng);
    Channel big2 = random_channel(8, 2, rng);
    EXPECT_THROW(diamond_distance(big, big2), std::invalid_argument);
    EXPECT_THROW(diamond_distance(identity_channel(2), identity_channel(3)), std::invalid_argument);
    // Unitary pairs stay on the closed form at any size.
    ComplexMatrix u8 = haar_unitary(8, rng);
    EXPECT_EQ(diamond_distance(unitary_channel(u8), identity_channel(8)).method, DiamondMethod::UnitaryClosedForm);
}

TEST(Sdp, IterationLimitRaisesSolverErrorWithBracket) {
    Rng rng(69);
    Channel e = random_channel(2, 2, rng);
    DiamondOptions o;
    o.sdp.max_iter = 2;
    try {
        diamond_distance(e, identity_channel(2), o);
        FAIL() << "expected SolverError";
    } catch (const SolverError &err) {
        ASSERT_TRUE(err.partial().sdp.has_value());
        EXPECT_EQ(err.partial().sdp->status, SdpStatus::MaxIterations);
        EXPECT_EQ(err.partial().sdp->iterations, 2);
    }
}

TEST(Sdp, ObserverSeesEverySolve) {
    int calls = 0;
    DiamondOptions o = forced_sdp();
    o.on_sdp_solve = [&](const Channel &, const Channel &, const DiamondResult &r) {
        calls++;
        EXPECT_EQ(r.method, DiamondMethod::Sdp);
    };
    diamond_distance(depolarizing(0.1), identity_channel(2), o);
    diamond_distance(unitary_error(0.1), identity_channel(2), o);
    EXPECT_EQ(calls, 2);
    o.force_sdp = false;
    diamond_distance(unitary_error(0.1), identity_channel(2), o);
    EXPECT_EQ(calls, 2);
}

TEST(Sdp, ConcurrentSolvesMatchSequential) {
    Rng rng(70);
    std::vector<Channel> channels;
    for (int k = 0; k < 4; k++) {
        channels.push_back(random_channel(2, 2, rng));
    }
    std::vector<double> sequential, parallel(channels.size());
    for (const auto &c : channels) {
        sequential.push_back(diamond_distance(c, identity_channel(2)).value);
    }
    std::vector<std::thread> pool;
    for (size_t k = 0; k < channels.size(); k++) {
        pool.emplace_back([&, k] { parallel[k] = diamond_distance(channels[k], identity_channel(2)).value; });
    }
    for (auto &t : pool) {
        t.join();
    }
    EXPECT_EQ(sequential, parallel);
}

}  // namespace
}  // namespace gatebound
