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
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "gatebound/channels.hpp"
#include "gatebound/cmatrix.hpp"
#include "gatebound/random.hpp"

namespace gatebound {

/// Off-diagonal Pauli-basis process-matrix entries below this classify a
/// channel as Pauli.
inline constexpr double kPauliTol = 1e-9;

struct PauliOperator {
    std::string label;
    ComplexMatrix matrix;
};

/// Tensor product of single-qubit Paulis in label order, e.g. "XZ" = X (x) Z.
inline PauliOperator pauli_operator(const std::string &label) {
    if (label.empty()) {
        throw std::invalid_argument("pauli_operator: empty label");
    }
    ComplexMatrix m = ComplexMatrix::identity(1);
    for (char c : label) {
        switch (c) {
            case 'I':
                m = kron(m, ComplexMatrix::identity(2));
                break;
            case 'X':
                m = kron(m, detail::pauli_x());
                break;
            case 'Y':
                m = kron(m, detail::pauli_y());
                break;
            case 'Z':
                m = kron(m, detail::pauli_z());
                break;
            default:
                throw std::invalid_argument("pauli_operator: label '" + label + "' has a character outside IXYZ");
        }
    }
    return {label, std::move(m)};
}

/// All 4^n labels, lexicographic over I < X < Y < Z per qubit.
inline std::vector<std::string> pauli_labels(size_t qubits) {
    std::vector<std::string> labels{""};
    for (size_t q = 0; q < qubits; q++) {
        std::vector<std::string> next;
        next.reserve(labels.size() * 4);
        for (const auto &l : labels) {
            for (char c : {'I', 'X', 'Y', 'Z'}) {
                next.push_back(l + c);
            }
        }
        labels = std::move(next);
    }
    return labels;
}

/// n with 2^n == dim; throws when dim is not a power of two.
inline size_t qubit_count(size_t dim) {
    size_t n = 0;
    size_t d = 1;
    while (d < dim) {
        d *= 2;
        n++;
    }
    if (d != dim || dim < 2) {
        std::stringstream ss;
        ss << "dimension " << dim << " is not a power of two";
        throw std::invalid_argument(ss.str());
    }
    return n;
}

inline bool is_power_of_two(size_t dim) { return dim >= 2 && (dim & (dim - 1)) == 0; }

class PauliChannel {
   public:
    PauliChannel(size_t qubits, std::map<std::string, double> probs) : qubits_(qubits), probs_(std::move(probs)) {
        double total = 0;
        for (const auto &[label, p] : probs_) {
            if (label.size() != qubits_) {
                throw std::invalid_argument("PauliChannel: label '" + label + "' has the wrong length");
            }
            pauli_operator(label);
            if (!(p >= 0)) {
                throw std::invalid_argument("PauliChannel: negative probability for " + label);
            }
            total += p;
        }
        if (std::abs(total - 1) > 1e-12) {
            std::stringstream ss;
            ss << "PauliChannel: probabilities sum to " << total;
            throw std::invalid_argument(ss.str());
        }
    }

    size_t qubits() const { return qubits_; }
    size_t dim() const { return size_t{1} << qubits_; }
    const std::map<std::string, double> &probs() const { return probs_; }

    double probability(const std::string &label) const {
        auto it = probs_.find(label);
        return it == probs_.end() ? 0.0 : it->second;
    }

    Channel to_channel() const {
        std::vector<ComplexMatrix> kraus;
        for (const auto &[label, p] : probs_) {
            if (p > 0) {
                kraus.push_back(pauli_operator(label).matrix * Complex(std::sqrt(p)));
            }
        }
        return Channel::from_kraus(dim(), std::move(kraus));
    }

   private:
    size_t qubits_;
    std::map<std::string, double> probs_;
};

namespace detail {

/// Pauli-basis process matrix chi_{PQ} = sum_j Tr(P A_j) conj(Tr(Q A_j)) / d^2,
/// rows and columns in pauli_labels order.
inline ComplexMatrix pauli_process_matrix(const Channel &c, const std::vector<PauliOperator> &paulis) {
    const size_t m = paulis.size();
    const double d = static_cast<double>(c.dim());
    ComplexMatrix chi(m, m);
    std::vector<Complex> t(m);
    for (const auto &a : c.kraus()) {
        for (size_t k = 0; k < m; k++) {
            // Tr(P^dagger A) = sum_ij conj(P[i][j]) A[i][j].
            Complex s{};
            const auto &p = paulis[k].matrix;
            for (size_t i = 0; i < c.dim(); i++) {
                for (size_t j = 0; j < c.dim(); j++) {
                    if (p(i, j) != Complex{}) {
                        s += std::conj(p(i, j)) * a(i, j);
                    }
                }
            }
            t[k] = s / d;
        }
        for (size_t r = 0; r < m; r++) {
            for (size_t col = 0; col < m; col++) {
                chi(r, col) += t[r] * std::conj(t[col]);
            }
        }
    }
    return chi;
}

inline std::vector<PauliOperator> all_paulis(size_t qubits) {
    std::vector<PauliOperator> out;
    for (const auto &label : pauli_labels(qubits)) {
        out.push_back(pauli_operator(label));
    }
    return out;
}

inline std::map<std::string, double> diagonal_probabilities(const ComplexMatrix &chi,
                                                            const std::vector<PauliOperator> &paulis) {
    std::map<std::string, double> probs;
    double total = 0;
    for (size_t k = 0; k < paulis.size(); k++) {
        double p = std::max(0.0, chi(k, k).real());
        probs[paulis[k].label] = p;
        total += p;
    }
    for (auto &[label, p] : probs) {
        p /= total;
    }
    return probs;
}

}  // namespace detail

/// Uniform average of P^dagger E(P . P^dagger) P over all 4^n Paulis. The
/// cross terms of the Pauli expansion of each Kraus operator cancel in the
/// sum, leaving Kraus operators sqrt(chi_PP) P.
inline Channel pauli_twirl(const Channel &c) {
    size_t n = qubit_count(c.dim());
    auto paulis = detail::all_paulis(n);
    auto chi = detail::pauli_process_matrix(c, paulis);
    return PauliChannel(n, detail::diagonal_probabilities(chi, paulis)).to_channel();
}

/// The Pauli probabilities of c, or nullopt when c is not a Pauli channel
/// within kPauliTol.
inline std::optional<PauliChannel> try_as_pauli_channel(const Channel &c) {
    if (!is_power_of_two(c.dim())) {
        return std::nullopt;
    }
    size_t n = qubit_count(c.dim());
    auto paulis = detail::all_paulis(n);
    auto chi = detail::pauli_process_matrix(c, paulis);
    for (size_t r = 0; r < chi.rows(); r++) {
        for (size_t col = 0; col < chi.cols(); col++) {
            if (r != col && std::abs(chi(r, col)) > kPauliTol) {
                return std::nullopt;
            }
        }
    }
    return PauliChannel(n, detail::diagonal_probabilities(chi, paulis));
}

inline PauliChannel as_pauli_channel(const Channel &c) {
    auto p = try_as_pauli_channel(c);
    if (!p) {
        throw std::invalid_argument("as_pauli_channel: channel is not a Pauli channel within tolerance");
    }
    return *p;
}

/// 1 - p_{I...I}.
inline double pauli_error_rate(const PauliChannel &p) {
    return 1 - p.probability(std::string(p.qubits(), 'I'));
}

inline PauliChannel random_pauli_channel(size_t qubits, Rng &rng) {
    auto labels = pauli_labels(qubits);
    auto p = random_simplex_point(labels.size(), rng);
    std::map<std::string, double> probs;
    for (size_t k = 0; k < labels.size(); k++) {
        probs[labels[k]] = p[k];
    }
    return PauliChannel(qubits, std::move(probs));
}

}  // namespace gatebound
