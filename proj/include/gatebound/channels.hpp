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
#include <memory>
#include <mutex>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gatebound/cmatrix.hpp"

namespace gatebound {

inline constexpr double kCptpTol = 1e-9;

/// Raised when a channel description is not completely positive and trace
/// preserving. Carries the name and size of the violating quantity.
class CptpViolation : public std::invalid_argument {
   public:
    CptpViolation(std::string quantity, double defect)
        : std::invalid_argument(describe(quantity, defect)), quantity_(std::move(quantity)), defect_(defect) {}

    const std::string &quantity() const { return quantity_; }
    double defect() const { return defect_; }

   private:
    static std::string describe(const std::string &quantity, double defect) {
        std::stringstream ss;
        ss << "not a CPTP map: " << quantity << " defect " << defect << " exceeds tolerance " << kCptpTol;
        return ss.str();
    }

    std::string quantity_;
    double defect_;
};

/// A completely positive trace-preserving map on d x d matrices, held as a
/// Kraus set. The Choi matrix is filled lazily and shared between copies.
class Channel {
   public:
    /// Validates sum_k A_k^dagger A_k = I within kCptpTol.
    static Channel from_kraus(size_t dim, std::vector<ComplexMatrix> kraus) {
        if (dim == 0) {
            throw std::invalid_argument("Channel: dimension must be positive");
        }
        if (kraus.empty()) {
            throw std::invalid_argument("Channel: Kraus set is empty");
        }
        ComplexMatrix sum(dim, dim);
        for (size_t k = 0; k < kraus.size(); k++) {
            const auto &a = kraus[k];
            if (a.rows() != dim || a.cols() != dim) {
                std::stringstream ss;
                ss << "Channel: Kraus operator " << k << " is " << a.rows() << "x" << a.cols() << ", expected " << dim
                   << "x" << dim;
                throw std::invalid_argument(ss.str());
            }
            sum += a.adjoint() * a;
        }
        double defect = max_abs_diff(sum, ComplexMatrix::identity(dim));
        if (defect > kCptpTol) {
            throw CptpViolation("trace preservation (sum of A^dagger A)", defect);
        }
        return Channel(dim, std::move(kraus));
    }

    /// Builds a channel from a Choi matrix in (output x input) ordering.
    /// Eigenvalues in [-kCptpTol, 0) are clipped; anything more negative is
    /// rejected as not completely positive.
    static Channel from_choi(size_t dim, const ComplexMatrix &choi) {
        if (choi.rows() != dim * dim || choi.cols() != dim * dim) {
            std::stringstream ss;
            ss << "Channel: Choi matrix is " << choi.rows() << "x" << choi.cols() << ", expected " << dim * dim << "x"
               << dim * dim;
            throw std::invalid_argument(ss.str());
        }
        double herm = hermitian_defect(choi);
        if (herm > kCptpTol) {
            throw CptpViolation("Choi matrix Hermiticity", herm);
        }
        auto eig = hermitian_eigendecomposition(choi);
        if (eig.values.back() < -kCptpTol) {
            throw CptpViolation("complete positivity (negative Choi eigenvalue)", -eig.values.back());
        }
        std::vector<ComplexMatrix> kraus;
        for (size_t k = 0; k < eig.values.size(); k++) {
            double lambda = eig.values[k];
            if (lambda <= 0) {
                continue;
            }
            double w = std::sqrt(lambda);
            ComplexMatrix a(dim, dim);
            for (size_t out = 0; out < dim; out++) {
                for (size_t in = 0; in < dim; in++) {
                    a(out, in) = w * eig.vectors(out * dim + in, k);
                }
            }
            kraus.push_back(std::move(a));
        }
        if (kraus.empty()) {
            throw CptpViolation("trace preservation (zero Choi matrix)", 1.0);
        }
        return from_kraus(dim, std::move(kraus));
    }

    size_t dim() const { return dim_; }
    const std::vector<ComplexMatrix> &kraus() const { return kraus_; }

    /// J = sum_ij Phi(E_ij) (x) E_ij, output factor first. Trace equals dim().
    const ComplexMatrix &choi() const {
        std::call_once(cache_->once, [this] { cache_->choi = compute_choi(); });
        return cache_->choi;
    }

    ComplexMatrix apply(const ComplexMatrix &rho) const {
        if (rho.rows() != dim_ || rho.cols() != dim_) {
            std::stringstream ss;
            ss << "Channel::apply: state is " << rho.rows() << "x" << rho.cols() << ", channel dimension is " << dim_;
            throw std::invalid_argument(ss.str());
        }
        ComplexMatrix out(dim_, dim_);
        for (const auto &a : kraus_) {
            out += a * rho * a.adjoint();
        }
        return out;
    }

    /// The unitary U when the channel is rho -> U rho U^dagger with a single
    /// Kraus operator; nullopt otherwise.
    std::optional<ComplexMatrix> single_unitary(double tol = kHermitianTol) const {
        if (kraus_.size() == 1 && is_unitary(kraus_[0], tol)) {
            return kraus_[0];
        }
        return std::nullopt;
    }

   private:
    struct ChoiCache {
        std::once_flag once;
        ComplexMatrix choi;
    };

    Channel(size_t dim, std::vector<ComplexMatrix> kraus)
        : dim_(dim), kraus_(std::move(kraus)), cache_(std::make_shared<ChoiCache>()) {}

    ComplexMatrix compute_choi() const {
        // J[(a,i),(b,j)] = sum_k A_k[a,i] conj(A_k[b,j]).
        const size_t n = dim_ * dim_;
        ComplexMatrix j(n, n);
        std::vector<Complex> v(n);
        for (const auto &a : kraus_) {
            for (size_t out = 0; out < dim_; out++) {
                for (size_t in = 0; in < dim_; in++) {
                    v[out * dim_ + in] = a(out, in);
                }
            }
            for (size_t r = 0; r < n; r++) {
                if (v[r] == Complex{}) {
                    continue;
                }
                for (size_t c = 0; c < n; c++) {
                    j(r, c) += v[r] * std::conj(v[c]);
                }
            }
        }
        return j;
    }

    size_t dim_;
    std::vector<ComplexMatrix> kraus_;
    std::shared_ptr<ChoiCache> cache_;
};

/// Weighted channel terms. As a convex mixture the weights must sum to one.
struct ChannelDecomposition {
    struct Term {
        double weight;
        Channel channel;
    };
    std::vector<Term> terms;
};

inline Channel identity_channel(size_t dim) { return Channel::from_kraus(dim, {ComplexMatrix::identity(dim)}); }

/// rho -> U rho U^dagger. Throws if u is not unitary within kHermitianTol.
inline Channel unitary_channel(const ComplexMatrix &u) {
    if (!is_unitary(u)) {
        throw std::invalid_argument("unitary_channel: operator is not unitary");
    }
    return Channel::from_kraus(u.rows(), {u});
}

/// outer o inner, Kraus set {A_i B_j}.
inline Channel compose(const Channel &outer, const Channel &inner) {
    if (outer.dim() != inner.dim()) {
        throw std::invalid_argument("compose: channel dimensions differ");
    }
    std::vector<ComplexMatrix> kraus;
    kraus.reserve(outer.kraus().size() * inner.kraus().size());
    for (const auto &a : outer.kraus()) {
        for (const auto &b : inner.kraus()) {
            kraus.push_back(a * b);
        }
    }
    return Channel::from_kraus(outer.dim(), std::move(kraus));
}

/// Convex mixture sum_k w_k E_k with Kraus set {sqrt(w_k) A_{k,i}}.
inline Channel mix(const ChannelDecomposition &decomposition) {
    if (decomposition.terms.empty()) {
        throw std::invalid_argument("mix: no terms");
    }
    const size_t dim = decomposition.terms.front().channel.dim();
    double total = 0;
    for (const auto &term : decomposition.terms) {
        if (!(term.weight >= 0)) {
            throw std::invalid_argument("mix: negative weight");
        }
        if (term.channel.dim() != dim) {
            throw std::invalid_argument("mix: channel dimensions differ");
        }
        total += term.weight;
    }
    if (std::abs(total - 1) > 1e-12) {
        std::stringstream ss;
        ss << "mix: weights sum to " << total << ", expected 1";
        throw std::invalid_argument(ss.str());
    }
    std::vector<ComplexMatrix> kraus;
    for (const auto &term : decomposition.terms) {
        if (term.weight == 0) {
            continue;
        }
        Complex w{std::sqrt(term.weight), 0};
        for (const auto &a : term.channel.kraus()) {
            kraus.push_back(a * w);
        }
    }
    return Channel::from_kraus(dim, std::move(kraus));
}

/// The actual implementation composed with the inverse of the ideal gate.
inline Channel discrepancy(const Channel &actual, const ComplexMatrix &ideal_unitary) {
    if (!is_unitary(ideal_unitary)) {
        throw std::invalid_argument("discrepancy: ideal gate is not unitary");
    }
    if (ideal_unitary.rows() != actual.dim()) {
        throw std::invalid_argument("discrepancy: ideal gate dimension differs from the channel");
    }
    return compose(actual, unitary_channel(ideal_unitary.adjoint()));
}

namespace detail {

inline ComplexMatrix pauli_x() { return {{0, 1}, {1, 0}}; }
inline ComplexMatrix pauli_y() { return {{0, Complex(0, -1)}, {Complex(0, 1), 0}}; }
inline ComplexMatrix pauli_z() { return {{1, 0}, {0, -1}}; }

inline void require_in_range(const char *what, double value, double lo, double hi) {
    if (!(value >= lo && value <= hi)) {
        std::stringstream ss;
        ss << what << " = " << value << " is outside [" << lo << ", " << hi << "]";
        throw std::invalid_argument(ss.str());
    }
}

}  // namespace detail

/// Single-qubit depolarizing noise rho -> (1 - r) rho + r I/2, r in [0, 4/3].
inline Channel depolarizing(double r) {
    detail::require_in_range("depolarizing: r", r, 0.0, 4.0 / 3.0);
    double wi = std::sqrt(std::max(0.0, 1 - 3 * r / 4));
    double wp = std::sqrt(r / 4);
    return Channel::from_kraus(2, {ComplexMatrix::identity(2) * Complex(wi), detail::pauli_x() * Complex(wp),
                                   detail::pauli_y() * Complex(wp), detail::pauli_z() * Complex(wp)});
}

/// Single-qubit unitary error diag(e^{i theta}, e^{-i theta}), theta in [0, pi].
inline Channel unitary_error(double theta) {
    detail::require_in_range("unitary_error: theta", theta, 0.0, std::numbers::pi);
    ComplexMatrix u{{std::polar(1.0, theta), 0}, {0, std::polar(1.0, -theta)}};
    return Channel::from_kraus(2, {u});
}

/// Relaxation toward |0> at rate r in [0, 1].
inline Channel amplitude_damping(double r) {
    detail::require_in_range("amplitude_damping: r", r, 0.0, 1.0);
    ComplexMatrix a0{{1, 0}, {0, std::sqrt(1 - r)}};
    ComplexMatrix a1{{0, std::sqrt(r)}, {0, 0}};
    return Channel::from_kraus(2, {a0, a1});
}

/// diag(1, ..., 1, e^{i theta}) in dimension d.
inline ComplexMatrix generalized_cphase_unitary(size_t dim, double theta) {
    if (dim < 2) {
        throw std::invalid_argument("generalized_cphase: dimension must be at least 2");
    }
    ComplexMatrix u = ComplexMatrix::identity(dim);
    u(dim - 1, dim - 1) = std::polar(1.0, theta);
    return u;
}

inline Channel generalized_cphase(size_t dim, double theta) {
    return Channel::from_kraus(dim, {generalized_cphase_unitary(dim, theta)});
}

/// An implementation paired with the unitary it is meant to realize.
struct GateImplementation {
    Channel actual;
    ComplexMatrix ideal;
};

/// (1 - lambda) U_pi + lambda identity, measured against U_pi.
inline GateImplementation lambda_mixture(size_t dim, double lambda) {
    detail::require_in_range("lambda_mixture: lambda", lambda, 0.0, 1.0);
    ComplexMatrix u = generalized_cphase_unitary(dim, std::numbers::pi);
    Channel actual = mix({{{1 - lambda, unitary_channel(u)}, {lambda, identity_channel(dim)}}});
    return {std::move(actual), std::move(u)};
}

}  // namespace gatebound
