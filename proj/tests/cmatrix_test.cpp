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
#include <vector>

#include "gatebound/cmatrix.hpp"
#include "gatebound/random.hpp"
#include "test_support.hpp"

namespace gatebound {
namespace {

ComplexMatrix pauli_x() { return {{0, 1}, {1, 0}}; }
ComplexMatrix pauli_z() { return {{1, 0}, {0, -1}}; }

ComplexMatrix random_matrix(size_t r, size_t c, Rng &rng) {
    std::normal_distribution<double> normal;
    ComplexMatrix m(r, c);
    for (auto &z : m.entries()) {
        z = Complex(normal(rng), normal(rng));
    }
    return m;
}

TEST(Kron, IdentityFactorsGiveIdentity) {
    EXPECT_EQ(max_abs_diff(kron(ComplexMatrix::identity(2), ComplexMatrix::identity(2)), ComplexMatrix::identity(4)),
              0.0);
}

TEST(Kron, PauliXWithIdentityHasBlockLayout) {
    ComplexMatrix k = kron(pauli_x(), ComplexMatrix::identity(2));
    ComplexMatrix expected{{0, 0, 1, 0}, {0, 0, 0, 1}, {1, 0, 0, 0}, {0, 1, 0, 0}};
    EXPECT_EQ(max_abs_diff(k, expected), 0.0);
}

TEST(Kron, ActsFactorwiseOnProductVectors) {
    Rng rng(11);
    ComplexMatrix a = random_matrix(2, 3, rng), b = random_matrix(3, 2, rng);
    ComplexMatrix u = random_matrix(3, 1, rng), v = random_matrix(2, 1, rng);
    EXPECT_LT(max_abs_diff(kron(a, b) * kron(u, v), kron(a * u, b * v)), 1e-12);
}

TEST(Kron, IsAssociativeAndMixedProductHolds) {
    Rng rng(12);
    ComplexMatrix a = random_matrix(2, 2, rng), b = random_matrix(3, 3, rng), c = random_matrix(2, 2, rng);
    EXPECT_LT(max_abs_diff(kron(kron(a, b), c), kron(a, kron(b, c))), 1e-12);
    ComplexMatrix a2 = random_matrix(2, 2, rng), b2 = random_matrix(3, 3, rng);
    EXPECT_LT(max_abs_diff(kron(a, b) * kron(a2, b2), kron(a * a2, b * b2)), 1e-12);
}

TEST(PartialTrace, ProductOperatorsReduceToScaledFactor) {
    Rng rng(13);
    ComplexMatrix a = random_matrix(2, 2, rng), b = random_matrix(3, 3, rng);
    ComplexMatrix ab = kron(a, b);
    EXPECT_LT(max_abs_diff(partial_trace(ab, {2, 3}, 0), a * b.trace()), 1e-12);
    EXPECT_LT(max_abs_diff(partial_trace(ab, {2, 3}, 1), b * a.trace()), 1e-12);
}

TEST(PartialTrace, MaximallyEntangledStateHasMixedMarginal) {
    ComplexMatrix omega(4, 4);
    for (size_t i : {0u, 3u}) {
        for (size_t j : {0u, 3u}) {
            omega(i, j) = 0.5;
        }
    }
    ComplexMatrix half = ComplexMatrix::identity(2) * Complex(0.5);
    EXPECT_LT(max_abs_diff(partial_trace(omega, {2, 2}, 0), half), 1e-15);
    EXPECT_LT(max_abs_diff(partial_trace(omega, {2, 2}, 1), half), 1e-15);
}

TEST(PartialTrace, PreservesTraceAndRejectsBadDims) {
    Rng rng(14);
    ComplexMatrix m = random_matrix(6, 6, rng);
    EXPECT_LT(std::abs(partial_trace(m, {2, 3}, 0).trace() - m.trace()), 1e-12);
    EXPECT_LT(std::abs(partial_trace(m, {3, 2}, 1).trace() - m.trace()), 1e-12);
    EXPECT_THROW(partial_trace(m, {2, 2}, 0), std::invalid_argument);
    EXPECT_THROW(partial_trace(m, {2, 3}, 2), std::invalid_argument);
}

TEST(Eigen, PauliZAndIdentity) {
    auto z = hermitian_eigendecomposition(pauli_z());
    EXPECT_DOUBLE_EQ(z.values[0], 1.0);
    EXPECT_DOUBLE_EQ(z.values[1], -1.0);
    EXPECT_LT(std::abs(std::abs(z.vectors(0, 0)) - 1), 1e-15);
    EXPECT_LT(std::abs(std::abs(z.vectors(1, 1)) - 1), 1e-15);
    for (size_t d : {1u, 3u, 5u}) {
        for (double v : hermitian_eigenvalues(ComplexMatrix::identity(d))) {
            EXPECT_DOUBLE_EQ(v, 1.0);
        }
    }
}

TEST(Eigen, TiesKeepDiagonalOrder) {
    std::vector<Complex> diag{1, 3, 3, 2};
    auto e = hermitian_eigendecomposition(ComplexMatrix::diagonal(diag));
    EXPECT_EQ(e.values, (std::vector<double>{3, 3, 2, 1}));
    EXPECT_DOUBLE_EQ(std::abs(e.vectors(1, 0)), 1.0);
    EXPECT_DOUBLE_EQ(std::abs(e.vectors(2, 1)), 1.0);
    EXPECT_DOUBLE_EQ(std::abs(e.vectors(3, 2)), 1.0);
    EXPECT_DOUBLE_EQ(std::abs(e.vectors(0, 3)), 1.0);
}

TEST(Eigen, MatchesCharacteristicPolynomialRoots) {
    Rng rng(15);
    for (size_t n : {2u, 3u, 4u, 6u}) {
        for (int trial = 0; trial < 3; trial++) {
            ComplexMatrix m = random_hermitian(n, rng);
            auto values = hermitian_eigenvalues(m);
            auto roots = testing::characteristic_roots(m);
            ASSERT_EQ(roots.size(), n) << "n = " << n;
            for (size_t k = 0; k < n; k++) {
                EXPECT_NEAR(values[k], roots[k], 1e-8) << "n = " << n << ", k = " << k;
            }
        }
    }
}

TEST(Eigen, ReconstructsInputWithUnitaryVectors) {
    Rng rng(16);
    for (size_t n : {2u, 4u, 8u, 16u}) {
        ComplexMatrix m = random_hermitian(n, rng);
        auto e = hermitian_eigendecomposition(m);
        EXPECT_TRUE(is_unitary(e.vectors, 1e-10));
        for (size_t k = 1; k < n; k++) {
            EXPECT_GE(e.values[k - 1], e.values[k]);
        }
        ComplexMatrix rebuilt = spectral_map(e, [](double x) { return x; });
        EXPECT_LT(max_abs_diff(rebuilt, m), 1e-10 * (1 + m.max_abs()));
    }
}

TEST(Eigen, RealSymmetricInput) {
    RealMatrix m{{2, 1}, {1, 2}};
    auto e = hermitian_eigendecomposition(m);
    EXPECT_NEAR(e.values[0], 3, 1e-14);
    EXPECT_NEAR(e.values[1], 1, 1e-14);
}

TEST(Eigen, RejectsNonHermitianInput) {
    ComplexMatrix m{{1, 2}, {0, 1}};
    EXPECT_THROW(hermitian_eigendecomposition(m), std::invalid_argument);
    EXPECT_THROW(hermitian_eigenvalues(ComplexMatrix(2, 3)), std::invalid_argument);
}

TEST(TraceNorm, Examples) {
    EXPECT_DOUBLE_EQ(trace_norm(pauli_z()), 2.0);
    EXPECT_DOUBLE_EQ(trace_norm(ComplexMatrix::identity(3)), 3.0);
    EXPECT_DOUBLE_EQ(trace_norm(ComplexMatrix(2, 2)), 0.0);
    EXPECT_NEAR(trace_norm(pauli_x()), 2.0, 1e-14);
}

TEST(TraceNorm, IsANorm) {
    Rng rng(17);
    for (int trial = 0; trial < 20; trial++) {
        ComplexMatrix a = random_hermitian(4, rng), b = random_hermitian(4, rng);
        EXPECT_LE(trace_norm(a + b), trace_norm(a) + trace_norm(b) + 1e-12);
        EXPECT_NEAR(trace_norm(a * Complex(-2.5)), 2.5 * trace_norm(a), 1e-12);
        EXPECT_GE(trace_norm(a), std::abs(a.trace()) - 1e-12);
    }
}

TEST(Cholesky, FactorsPositiveDefiniteAndRejectsIndefinite) {
    Rng rng(18);
    ComplexMatrix g = random_matrix(4, 4, rng);
    ComplexMatrix pd = g * g.adjoint() + ComplexMatrix::identity(4);
    ComplexMatrix lower;
    ASSERT_TRUE(cholesky(pd, lower));
    EXPECT_LT(max_abs_diff(lower * lower.adjoint(), pd), 1e-12);
    EXPECT_LT(max_abs_diff(lower * lower_triangular_inverse(lower), ComplexMatrix::identity(4)), 1e-12);
    EXPECT_FALSE(cholesky(pauli_z(), lower));
}

TEST(PsdSqrt, SquaresBack) {
    Rng rng(19);
    ComplexMatrix rho = random_density_matrix(3, rng);
    ComplexMatrix s = psd_sqrt(rho);
    EXPECT_LT(max_abs_diff(s * s, rho), 1e-12);
    EXPECT_TRUE(is_hermitian(s));
}

TEST(Predicates, HermitianAndUnitary) {
    EXPECT_TRUE(is_hermitian(pauli_x()));
    EXPECT_FALSE(is_hermitian(ComplexMatrix{{0, 1}, {0, 0}}));
    EXPECT_TRUE(is_unitary(pauli_x()));
    EXPECT_FALSE(is_unitary(ComplexMatrix::identity(2) * Complex(2)));
    EXPECT_FALSE(is_unitary(ComplexMatrix(2, 3)));
    Rng rng(20);
    EXPECT_TRUE(is_unitary(haar_unitary(5, rng), 1e-12));
}

}  // namespace
}  // namespace gatebound
