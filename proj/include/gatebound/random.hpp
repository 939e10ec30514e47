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

#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "gatebound/channels.hpp"
#include "gatebound/cmatrix.hpp"

namespace gatebound {

using Rng = std::mt19937_64;

/// Unit vector drawn from the unitarily invariant measure on C^n
/// (normalized complex Gaussian).
inline std::vector<Complex> haar_state(size_t n, Rng &rng) {
    std::normal_distribution<double> normal;
    std::vector<Complex> v(n);
    double norm2 = 0;
    for (auto &z : v) {
        z = Complex(normal(rng), normal(rng));
        norm2 += std::norm(z);
    }
    double inv = 1 / std::sqrt(norm2);
    for (auto &z : v) {
        z *= inv;
    }
    return v;
}

inline ComplexMatrix projector(const std::vector<Complex> &psi) {
    ComplexMatrix p(psi.size(), psi.size());
    for (size_t i = 0; i < psi.size(); i++) {
        for (size_t j = 0; j < psi.size(); j++) {
            p(i, j) = psi[i] * std::conj(psi[j]);
        }
    }
    return p;
}

/// Haar-random isometry C^cols -> C^rows (rows >= cols) by Gram-Schmidt on
/// Gaussian columns.
inline ComplexMatrix haar_isometry(size_t rows, size_t cols, Rng &rng) {
    std::normal_distribution<double> normal;
    ComplexMatrix v(rows, cols);
    for (size_t c = 0; c < cols; c++) {
        std::vector<Complex> col(rows);
        for (auto &z : col) {
            z = Complex(normal(rng), normal(rng));
        }
        // Two passes of modified Gram-Schmidt keep the columns orthonormal to
        // rounding.
        for (int pass = 0; pass < 2; pass++) {
            for (size_t prev = 0; prev < c; prev++) {
                Complex dot{};
                for (size_t r = 0; r < rows; r++) {
                    dot += std::conj(v(r, prev)) * col[r];
                }
                for (size_t r = 0; r < rows; r++) {
                    col[r] -= dot * v(r, prev);
                }
            }
        }
        double norm2 = 0;
        for (const auto &z : col) {
            norm2 += std::norm(z);
        }
        double inv = 1 / std::sqrt(norm2);
        for (size_t r = 0; r < rows; r++) {
            v(r, c) = col[r] * inv;
        }
    }
    return v;
}

inline ComplexMatrix haar_unitary(size_t n, Rng &rng) { return haar_isometry(n, n, rng); }

/// Random channel whose Kraus operators are the d x d blocks of a Haar
/// isometry C^d -> C^(d * kraus_count).
inline Channel random_channel(size_t dim, size_t kraus_count, Rng &rng) {
    ComplexMatrix v = haar_isometry(dim * kraus_count, dim, rng);
    std::vector<ComplexMatrix> kraus;
    for (size_t k = 0; k < kraus_count; k++) {
        ComplexMatrix a(dim, dim);
        for (size_t r = 0; r < dim; r++) {
            for (size_t c = 0; c < dim; c++) {
                a(r, c) = v(k * dim + r, c);
            }
        }
        kraus.push_back(std::move(a));
    }
    return Channel::from_kraus(dim, std::move(kraus));
}

/// Random Hermitian matrix with Gaussian entries.
inline ComplexMatrix random_hermitian(size_t n, Rng &rng) {
    std::normal_distribution<double> normal;
    ComplexMatrix m(n, n);
    for (size_t i = 0; i < n; i++) {
        m(i, i) = normal(rng);
        for (size_t j = i + 1; j < n; j++) {
            m(i, j) = Complex(normal(rng), normal(rng));
            m(j, i) = std::conj(m(i, j));
        }
    }
    return m;
}

/// Random full-rank density matrix G G^dagger / Tr(G G^dagger).
inline ComplexMatrix random_density_matrix(size_t n, Rng &rng) {
    std::normal_distribution<double> normal;
    ComplexMatrix g(n, n);
    for (auto &z : g.entries()) {
        z = Complex(normal(rng), normal(rng));
    }
    ComplexMatrix rho = g * g.adjoint();
    rho *= Complex(1 / rho.trace().real());
    return hermitian_part(rho);
}

/// Point drawn uniformly from the probability simplex of the given size.
inline std::vector<double> random_simplex_point(size_t n, Rng &rng) {
    std::exponential_distribution<double> expo;
    std::vector<double> p(n);
    double total = 0;
    for (auto &x : p) {
        x = expo(rng);
        total += x;
    }
    for (auto &x : p) {
        x /= total;
    }
    return p;
}

}  // namespace gatebound
