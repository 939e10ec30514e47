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
#include <random>
#include <vector>

#include "gatebound/channels.hpp"
#include "gatebound/metrics.hpp"
#include "gatebound/pauli.hpp"
#include "gatebound/random.hpp"

namespace gatebound {
namespace {

ComplexMatrix ket_bra(size_t d, size_t i, size_t j) {
    ComplexMatrix m(d, d);
    m(i, j) = 1;
    return m;
}

TEST(TotalVariation, Examples) {
    ProbabilityDistribution a({1, 0}), b({0, 1}), u({0.5, 0.5});
    EXPECT_DOUBLE_EQ(total_variation_distance(a, b), 1.0);
    EXPECT_DOUBLE_EQ(total_variation_distance(a, u), 0.5);
    EXPECT_DOUBLE_EQ(total_variation_distance(u, u), 0.0);
    EXPECT_THROW(total_variation_distance(a, ProbabilityDistribution({1, 0, 0})), std::invalid_argument);
    EXPECT_THROW(ProbabilityDistribution({0.5, 0.6}), std::invalid_argument);
    EXPECT_THROW(ProbabilityDistribution({1.5, -0.5}), std::invalid_argument);
}

TEST(TotalVariation, IsAMetric) {
    Rng rng(41);
    for (int trial = 0; trial < 50; trial++) {
        ProbabilityDistribution p(random_simplex_point(6, rng)), q(random_simplex_point(6, rng)),
            r(random_simplex_point(6, rng));
        double pq = total_variation_distance(p, q);
        EXPECT_GE(pq, 0);
        EXPECT_LE(pq, 1);
        EXPECT_DOUBLE_EQ(pq, total_variation_distance(q, p));
        EXPECT_LE(pq, total_variation_distance(p, r) + total_variation_distance(r, q) + 1e-15);
    }
}

TEST(TraceDistance, Examples) {
    ComplexMatrix zero = ket_bra(2, 0, 0), one = ket_bra(2, 1, 1);
    ComplexMatrix mixed = ComplexMatrix::identity(2) * Complex(0.5);
    EXPECT_DOUBLE_EQ(trace_distance(zero, one), 1.0);
    EXPECT_DOUBLE_EQ(trace_distance(zero, mixed), 0.5);
    EXPECT_DOUBLE_EQ(trace_distance(mixed, mixed), 0.0);
    ComplexMatrix plus{{0.5, 0.5}, {0.5, 0.5}};
    EXPECT_NEAR(trace_distance(zero, plus), std::sqrt(0.5), 1e-15);
}

TEST(TraceDistance, RejectsNonStates) {
    ComplexMatrix zero = ket_bra(2, 0, 0);
    EXPECT_THROW(trace_distance(zero, ket_bra(2, 0, 1)), std::invalid_argument);
    EXPECT_THROW(trace_distance(zero, ComplexMatrix::identity(2)), std::invalid_argument);
    EXPECT_THROW(trace_distance(zero, ComplexMatrix{{1.5, 0}, {0, -0.5}}), std::invalid_argument);
}

TEST(TraceDistance, BoundsEveryTwoOutcomeMeasurement) {
    Rng rng(42);
    for (size_t d : {2u, 3u}) {
        for (int trial = 0; trial < 5; trial++) {
            ComplexMatrix rho = random_density_matrix(d, rng), sigma = random_density_matrix(d, rng);
            double t = trace_distance(rho, sigma);
            double best = 0;
            for (int s = 0; s < 20000; s++) {
                ComplexMatrix p = projector(haar_state(d, rng));
                double gap = std::abs((p * (rho - sigma)).trace().real());
                EXPECT_LE(gap, t + 1e-12);
                best = std::max(best, gap);
            }
            if (d == 2) {
                EXPECT_GT(best, t - 0.02);
            }
        }
    }
}

TEST(Fidelity, Examples) {
    EXPECT_DOUBLE_EQ(average_gate_fidelity(identity_channel(3)), 1.0);
    for (double r : {0.0, 1e-3, 0.2, 1.0}) {
        EXPECT_NEAR(average_gate_fidelity(depolarizing(r)), 1 - r / 2, 1e-15);
    }
    for (size_t d : {2u, 3u, 4u}) {
        const double theta = 0.4, dd = static_cast<double>(d);
        double tr2 = std::norm(Complex(dd - 1) + std::polar(1.0, theta));
        EXPECT_NEAR(average_gate_fidelity(generalized_cphase(d, theta)), (dd + tr2) / (dd + dd * dd), 1e-15);
    }
}

TEST(Fidelity, DepolarizedUnitaryFollowsMixtureFormula) {
    const double r = 1e-3, theta = 1e-2;
    Channel combined = compose(depolarizing(r), unitary_error(theta));
    double phi_u = average_gate_fidelity(unitary_error(theta));
    EXPECT_NEAR(average_gate_fidelity(combined), (1 - r) * phi_u + r / 2, 1e-15);
}

TEST(Fidelity, AgreesWithMonteCarloAverage) {
    Rng rng(43);
    std::mt19937_64 sampler(44);
    std::normal_distribution<double> normal;
    for (int c = 0; c < 5; c++) {
        Channel ch = random_channel(2, 1 + c % 3, rng);
        const int n = 100000;
        double sum = 0, sum2 = 0;
        for (int s = 0; s < n; s++) {
            Complex a(normal(sampler), normal(sampler)), b(normal(sampler), normal(sampler));
            double norm = std::sqrt(std::norm(a) + std::norm(b));
            a /= norm;
            b /= norm;
            double f = 0;
            for (const auto &k : ch.kraus()) {
                Complex amp = std::conj(a) * (k(0, 0) * a + k(0, 1) * b) + std::conj(b) * (k(1, 0) * a + k(1, 1) * b);
                f += std::norm(amp);
            }
            sum += f;
            sum2 += f * f;
        }
        double mean = sum / n;
        double stderr_ = std::sqrt((sum2 / n - mean * mean) / n);
        EXPECT_LE(std::abs(average_gate_fidelity(ch) - mean), 3 * stderr_) << "channel " << c;
    }
}

TEST(Fidelity, StaysInAttainableRange) {
    Rng rng(45);
    for (size_t d : {2u, 3u, 4u}) {
        for (int trial = 0; trial < 20; trial++) {
            double phi = average_gate_fidelity(random_channel(d, 1 + trial % 5, rng));
            EXPECT_GE(phi, 1 / (static_cast<double>(d) + 1) - 1e-12);
            EXPECT_LE(phi, 1 + 1e-12);
        }
    }
}

TEST(Fidelity, IsInvariantUnderTwirlAndLinearInMixtures) {
    Rng rng(46);
    for (size_t d : {2u, 4u}) {
        for (int trial = 0; trial < 5; trial++) {
            Channel a = random_channel(d, 2, rng), b = random_channel(d, 3, rng);
            EXPECT_NEAR(average_gate_fidelity(pauli_twirl(a)), average_gate_fidelity(a), 1e-12);
            double p = 0.37;
            EXPECT_NEAR(average_gate_fidelity(mix({{{p, a}, {1 - p, b}}})),
                        p * average_gate_fidelity(a) + (1 - p) * average_gate_fidelity(b), 1e-12);
        }
    }
}

TEST(InverseInfidelity, Examples) {
    EXPECT_NEAR(*inverse_infidelity(0.99), 100, 1e-10);
    EXPECT_NEAR(*inverse_infidelity(0.5), 2, 1e-15);
    EXPECT_FALSE(inverse_infidelity(1.0).has_value());
    EXPECT_FALSE(inverse_infidelity(1 - 1e-13).has_value());
    EXPECT_FALSE(inverse_infidelity(1 + 1e-13).has_value());
    EXPECT_THROW(inverse_infidelity(1.01), std::invalid_argument);
}

}  // namespace
}  // namespace gatebound
