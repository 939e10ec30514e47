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
#include <optional>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "gatebound/channels.hpp"
#include "gatebound/cmatrix.hpp"

namespace gatebound {

/// Infidelities at or below this are treated as an exact gate.
inline constexpr double kExactFidelityTol = 1e-12;

class ProbabilityDistribution {
   public:
    explicit ProbabilityDistribution(std::vector<double> probs) : probs_(std::move(probs)) {
        double total = 0;
        for (double p : probs_) {
            if (!(p >= 0)) {
                throw std::invalid_argument("ProbabilityDistribution: negative or NaN probability");
            }
            total += p;
        }
        if (std::abs(total - 1) > 1e-12) {
            std::stringstream ss;
            ss << "ProbabilityDistribution: probabilities sum to " << total;
            throw std::invalid_argument(ss.str());
        }
    }

    const std::vector<double> &probs() const { return probs_; }
    size_t size() const { return probs_.size(); }

   private:
    std::vector<double> probs_;
};

inline double total_variation_distance(const ProbabilityDistribution &mu, const ProbabilityDistribution &nu) {
    if (mu.size() != nu.size()) {
        throw std::invalid_argument("total_variation_distance: distributions have different lengths");
    }
    double s = 0;
    for (size_t k = 0; k < mu.size(); k++) {
        s += std::abs(mu.probs()[k] - nu.probs()[k]);
    }
    return s / 2;
}

namespace detail {

inline void require_density_matrix(const ComplexMatrix &rho, const char *name) {
    if (!is_hermitian(rho)) {
        throw std::invalid_argument(std::string("trace_distance: ") + name + " is not Hermitian");
    }
    if (std::abs(rho.trace() - Complex(1)) > 1e-9) {
        throw std::invalid_argument(std::string("trace_distance: ") + name + " does not have unit trace");
    }
    if (hermitian_eigenvalues(rho).back() < -1e-9) {
        throw std::invalid_argument(std::string("trace_distance: ") + name + " is not positive semidefinite");
    }
}

}  // namespace detail

/// Half the trace norm of rho - sigma.
inline double trace_distance(const ComplexMatrix &rho, const ComplexMatrix &sigma) {
    detail::require_density_matrix(rho, "rho");
    detail::require_density_matrix(sigma, "sigma");
    return trace_norm(rho - sigma) / 2;
}

/// Haar-averaged <psi| E(|psi><psi|) |psi>, from the Kraus traces:
/// (d + sum_k |Tr A_k|^2) / (d + d^2).
inline double average_gate_fidelity(const Channel &channel) {
    const double d = static_cast<double>(channel.dim());
    double s = 0;
    for (const auto &a : channel.kraus()) {
        s += std::norm(a.trace());
    }
    return (d + s) / (d + d * d);
}

/// (1 - phi)^-1, or nullopt for an exact gate (phi == 1 up to rounding).
inline std::optional<double> inverse_infidelity(double phi) {
    if (!(phi <= 1 + kExactFidelityTol)) {
        std::stringstream ss;
        ss << "inverse_infidelity: fidelity " << phi << " exceeds 1";
        throw std::invalid_argument(ss.str());
    }
    if (1 - phi <= kExactFidelityTol) {
        return std::nullopt;
    }
    return 1 / (1 - phi);
}

}  // namespace gatebound
