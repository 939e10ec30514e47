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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "gatebound/channels.hpp"
#include "gatebound/cmatrix.hpp"
#include "gatebound/pauli.hpp"
#include "gatebound/random.hpp"
#include "gatebound/sdp.hpp"

namespace gatebound {

enum class DiamondMethod { Sdp, UnitaryClosedForm, PauliClosedForm };

inline const char *to_string(DiamondMethod m) {
    switch (m) {
        case DiamondMethod::Sdp:
            return "SDP";
        case DiamondMethod::UnitaryClosedForm:
            return "UnitaryClosedForm";
        case DiamondMethod::PauliClosedForm:
            return "PauliClosedForm";
    }
    return "?";
}

/// Solver diagnostics re-verified from the returned certificate.
struct SdpHealth {
    SdpStatus status;
    int iterations;
    double gap;
    double primal_residual;
    double dual_residual;
    double min_eig_primal;
    double min_eig_dual;
};

/// Half the diamond norm of a channel difference, bracketed by certificates.
struct DiamondResult {
    double value = 0;
    /// Attained by an explicit input state.
    double lower_certificate = 0;
    /// From a feasible point of the dual program.
    double upper_certificate = 0;
    DiamondMethod method = DiamondMethod::Sdp;
    std::optional<SdpHealth> sdp;

    /// 1 / value; nullopt for a zero distance.
    std::optional<double> inverse() const {
        if (value <= 0) {
            return std::nullopt;
        }
        return 1 / value;
    }
};

struct DiamondOptions {
    /// Skip the closed-form fast paths.
    bool force_sdp = false;
    /// Permit the SDP path at d = 8.
    bool allow_large = false;
    SdpOptions sdp;
    /// Called after every successful SDP solve with the two channels.
    std::function<void(const Channel &, const Channel &, const DiamondResult &)> on_sdp_solve;
};

class SolverError : public std::runtime_error {
   public:
    SolverError(const std::string &what, DiamondResult partial)
        : std::runtime_error(what), partial_(std::move(partial)) {}
    const DiamondResult &partial() const { return partial_; }

   private:
    DiamondResult partial_;
};

class ConfigurationError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Eigenvalues of a unitary. The commuting Hermitian parts (U + U^dagger)/2
/// and (U - U^dagger)/2i are diagonalized jointly: first the real part, then
/// the imaginary part inside each (near-)degenerate eigenspace of the first.
inline std::vector<Complex> unitary_eigenvalues(const ComplexMatrix &u) {
    if (!is_unitary(u)) {
        throw std::invalid_argument("unitary_eigenvalues: operator is not unitary");
    }
    const size_t n = u.rows();
    ComplexMatrix ud = u.adjoint();
    ComplexMatrix re = hermitian_part((u + ud) * Complex(0.5));
    ComplexMatrix im = hermitian_part((u - ud) * Complex(0, -0.5));
    auto eig_re = hermitian_eigendecomposition(re);

    std::vector<Complex> out;
    size_t start = 0;
    while (start < n) {
        size_t end = start + 1;
        while (end < n && eig_re.values[end - 1] - eig_re.values[end] <= 1e-7) {
            end++;
        }
        const size_t g = end - start;
        ComplexMatrix basis(n, g);
        for (size_t r = 0; r < n; r++) {
            for (size_t c = 0; c < g; c++) {
                basis(r, c) = eig_re.vectors(r, start + c);
            }
        }
        auto eig_im = hermitian_eigendecomposition(hermitian_part(basis.adjoint() * im * basis));
        ComplexMatrix refined = basis * eig_im.vectors;
        for (size_t c = 0; c < g; c++) {
            Complex lambda{};
            for (size_t r = 0; r < n; r++) {
                Complex ur{};
                for (size_t k = 0; k < n; k++) {
                    ur += u(r, k) * refined(k, c);
                }
                lambda += std::conj(refined(r, c)) * ur;
            }
            out.push_back(lambda);
        }
        start = end;
    }
    return out;
}

/// Half the diamond norm between rho -> U rho U^dagger and the identity:
/// sin(arc / 2) where arc is the shortest arc of the unit circle holding
/// every eigenvalue of U, or 1 once that arc reaches pi.
inline DiamondResult unitary_diamond_distance(const ComplexMatrix &u) {
    auto eigenvalues = unitary_eigenvalues(u);
    std::vector<double> phases;
    for (const auto &z : eigenvalues) {
        double p = std::arg(z);
        if (p < 0) {
            p += 2 * std::numbers::pi;
        }
        phases.push_back(p);
    }
    std::sort(phases.begin(), phases.end());
    double largest_gap = phases.front() + 2 * std::numbers::pi - phases.back();
    for (size_t k = 1; k < phases.size(); k++) {
        largest_gap = std::max(largest_gap, phases[k] - phases[k - 1]);
    }
    double arc = std::max(0.0, 2 * std::numbers::pi - largest_gap);
    double value = arc >= std::numbers::pi ? 1.0 : std::sin(arc / 2);
    return {value, value, value, DiamondMethod::UnitaryClosedForm, std::nullopt};
}

/// Distance of a Pauli channel from the identity: 1 - p_I.
inline DiamondResult pauli_diamond_distance(const PauliChannel &p) {
    double value = pauli_error_rate(p);
    return {value, value, value, DiamondMethod::PauliClosedForm, std::nullopt};
}

namespace detail {

/// Which Hermitian basis element a constraint of the diamond program pins.
struct HermitianCoordinate {
    enum Kind : uint8_t { Diagonal, RealPart, ImagPart };
    size_t p;
    size_t q;
    Kind kind;
};

/// Adds embed(H) for the Hermitian H given by its full entry list. The real
/// embedding of A + iB is [[A, -B], [B, A]].
inline void add_embedded(SymmetricSparseMatrix &m, size_t block, size_t n,
                         const std::vector<std::tuple<size_t, size_t, Complex>> &entries, double scale) {
    for (const auto &[r, c, z] : entries) {
        m.add_entry(block, r, c, scale * z.real());
        m.add_entry(block, r + n, c + n, scale * z.real());
        m.add_entry(block, r + n, c, scale * z.imag());
        m.add_entry(block, r, c + n, -scale * z.imag());
    }
}

inline std::vector<std::tuple<size_t, size_t, Complex>> coordinate_entries(const HermitianCoordinate &h) {
    switch (h.kind) {
        case HermitianCoordinate::Diagonal:
            return {{h.p, h.p, Complex(1)}};
        case HermitianCoordinate::RealPart:
            return {{h.p, h.q, Complex(1)}, {h.q, h.p, Complex(1)}};
        case HermitianCoordinate::ImagPart:
            return {{h.p, h.q, Complex(0, 1)}, {h.q, h.p, Complex(0, -1)}};
    }
    return {};
}

/// Partial trace over the output factor of a coordinate basis element on
/// (output x input); empty when the output indices differ.
inline std::vector<std::tuple<size_t, size_t, Complex>> input_marginal(
    const std::vector<std::tuple<size_t, size_t, Complex>> &entries, size_t dim) {
    std::vector<std::tuple<size_t, size_t, Complex>> out;
    for (const auto &[r, c, z] : entries) {
        if (r / dim == c / dim) {
            out.emplace_back(r % dim, c % dim, z);
        }
    }
    return out;
}

inline ComplexMatrix unembed(const RealMatrix &x) {
    const size_t n = x.rows() / 2;
    ComplexMatrix out(n, n);
    for (size_t i = 0; i < n; i++) {
        for (size_t j = 0; j < n; j++) {
            out(i, j) = Complex((x(i, j) + x(i + n, j + n)) / 2, (x(i + n, j) - x(i, j + n)) / 2);
        }
    }
    return hermitian_part(out);
}

}  // namespace detail

/// Semidefinite program for half the diamond norm of a Hermiticity-preserving,
/// trace-annihilating map with Choi matrix J (output x input):
///
///     maximize <J, W>  s.t.  0 <= W <= I_out (x) rho,  rho >= 0,  Tr rho = 1
///
/// written in standard form over the blocks (W, S = I (x) rho - W, rho), each
/// complex Hermitian block embedded as a real symmetric block of twice the
/// size. The embedding doubles inner products, so the optimum of this
/// program is -2 times the distance.
class DiamondProgram {
   public:
    DiamondProgram(const ComplexMatrix &choi_difference, size_t dim) : choi_(choi_difference), dim_(dim) {
        const size_t n = dim * dim;
        if (choi_.rows() != n || choi_.cols() != n) {
            throw std::invalid_argument("DiamondProgram: Choi matrix does not match the dimension");
        }
        problem_.blocks = {2 * n, 2 * n, 2 * dim};
        problem_.objective = problem_.zeros();
        for (size_t i = 0; i < n; i++) {
            for (size_t j = 0; j < n; j++) {
                Complex z = choi_(i, j);
                problem_.objective[0](i, j) = -z.real();
                problem_.objective[0](i + n, j + n) = -z.real();
                problem_.objective[0](i + n, j) = -z.imag();
                problem_.objective[0](i, j + n) = z.imag();
            }
        }
        problem_.objective[0] = hermitian_part(problem_.objective[0]);

        for (size_t p = 0; p < n; p++) {
            coordinates_.push_back({p, p, detail::HermitianCoordinate::Diagonal});
            for (size_t q = p + 1; q < n; q++) {
                coordinates_.push_back({p, q, detail::HermitianCoordinate::RealPart});
                coordinates_.push_back({p, q, detail::HermitianCoordinate::ImagPart});
            }
        }
        for (const auto &h : coordinates_) {
            auto entries = detail::coordinate_entries(h);
            SdpConstraint c{{}, 0.0};
            detail::add_embedded(c.matrix, 0, n, entries, 1.0);
            detail::add_embedded(c.matrix, 1, n, entries, 1.0);
            detail::add_embedded(c.matrix, 2, dim, detail::input_marginal(entries, dim), -1.0);
            problem_.constraints.push_back(std::move(c));
        }
        SdpConstraint trace{{}, 2.0};
        for (size_t i = 0; i < dim; i++) {
            detail::add_embedded(trace.matrix, 2, dim, {{i, i, Complex(1)}}, 1.0);
        }
        problem_.constraints.push_back(std::move(trace));
    }

    const SdpProblem &problem() const { return problem_; }

    /// Distance estimate implied by a primal objective value.
    static double distance_from_objective(double primal_value) { return -primal_value / 2; }

    /// Exact optimum over W for the input density rho recovered from the
    /// primal certificate: the positive part of (I (x) sqrt(rho)) J
    /// (I (x) sqrt(rho)).
    double lower_certificate(const SdpSolution &sol) const {
        ComplexMatrix rho = detail::unembed(sol.X[2]);
        auto eig = hermitian_eigendecomposition(rho);
        double total = 0;
        for (double v : eig.values) {
            total += std::max(0.0, v);
        }
        if (!(total > 0)) {
            return 0;
        }
        ComplexMatrix root = spectral_map(eig, [&](double x) { return x > 0 ? std::sqrt(x / total) : 0.0; });
        ComplexMatrix lift = kron(ComplexMatrix::identity(dim_), root);
        double s = 0;
        for (double v : hermitian_eigenvalues(hermitian_part(lift * choi_ * lift))) {
            s += std::max(0.0, v);
        }
        return s;
    }

    /// Largest eigenvalue of Tr_out(Q) for the dual matrix Q = -sum y_i H_i,
    /// shifted by a multiple of the identity until Q >= 0 and Q >= J hold.
    double upper_certificate(const SdpSolution &sol) const {
        const size_t n = dim_ * dim_;
        ComplexMatrix q(n, n);
        for (size_t i = 0; i < coordinates_.size(); i++) {
            for (const auto &[r, c, z] : detail::coordinate_entries(coordinates_[i])) {
                q(r, c) -= sol.y[i] * z;
            }
        }
        q = hermitian_part(q);
        double shift = std::max({0.0, -hermitian_eigenvalues(q).back(), -hermitian_eigenvalues(q - choi_).back()});
        for (size_t i = 0; i < n; i++) {
            q(i, i) += shift;
        }
        return hermitian_eigenvalues(partial_trace(q, {dim_, dim_}, 1)).front();
    }

   private:
    ComplexMatrix choi_;
    size_t dim_;
    SdpProblem problem_;
    std::vector<detail::HermitianCoordinate> coordinates_;
};

namespace detail {

inline DiamondResult solve_diamond_program(const ComplexMatrix &choi_difference, size_t dim,
                                           const SdpOptions &options) {
    DiamondProgram program(choi_difference, dim);
    SdpSolver solver(options);
    SdpSolution sol = solver.solve(program.problem());
    CertificateCheck check = verify_certificate(program.problem(), sol);

    DiamondResult r;
    r.method = DiamondMethod::Sdp;
    r.lower_certificate = program.lower_certificate(sol);
    r.upper_certificate = program.upper_certificate(sol);
    double estimate = DiamondProgram::distance_from_objective(sol.primal_value);
    if (r.lower_certificate <= r.upper_certificate) {
        r.value = std::clamp(estimate, r.lower_certificate, r.upper_certificate);
    } else {
        r.value = (r.lower_certificate + r.upper_certificate) / 2;
    }
    // Also folds a negative zero into +0.
    r.value = r.value > 0 ? std::min(r.value, 1.0) : 0.0;
    r.sdp = SdpHealth{sol.status,        sol.iterations,  check.gap,      check.primal_residual,
                      check.dual_residual, check.min_eig_x, check.min_eig_z};
    if (sol.status != SdpStatus::Converged) {
        std::stringstream ss;
        ss << "diamond norm SDP did not converge (" << to_string(sol.status) << " after " << sol.iterations
           << " iterations, certified bracket [" << r.lower_certificate << ", " << r.upper_certificate << "])";
        throw SolverError(ss.str(), r);
    }
    return r;
}

/// Checks the SDP normalization against the closed form for one fixed
/// unitary. Runs once per process.
inline void calibrate_diamond_program() {
    static const std::string failure = [] {
        const double theta = 0.7;
        ComplexMatrix u = generalized_cphase_unitary(2, theta);
        ComplexMatrix diff = unitary_channel(u).choi() - identity_channel(2).choi();
        double expected = std::sin(theta / 2);
        try {
            double got = solve_diamond_program(diff, 2, SdpOptions{}).value;
            if (std::abs(got - expected) > 1e-6) {
                std::stringstream ss;
                ss << "diamond SDP calibration failed: got " << got << ", expected " << expected;
                return ss.str();
            }
        } catch (const std::exception &e) {
            return std::string("diamond SDP calibration failed: ") + e.what();
        }
        return std::string();
    }();
    if (!failure.empty()) {
        throw ConfigurationError(failure);
    }
}

}  // namespace detail

/// Diamond distance computed by the SDP regardless of channel structure.
inline DiamondResult sdp_diamond_distance(const Channel &e, const Channel &f, const DiamondOptions &options = {}) {
    if (e.dim() != f.dim()) {
        throw std::invalid_argument("diamond_distance: channel dimensions differ");
    }
    const size_t limit = options.allow_large ? 8 : 4;
    if (e.dim() > limit) {
        std::stringstream ss;
        ss << "diamond_distance: SDP path supports d <= " << limit << " (got " << e.dim() << ")"
           << (options.allow_large ? "" : "; d = 8 needs the large option");
        throw std::invalid_argument(ss.str());
    }
    detail::calibrate_diamond_program();
    DiamondResult r = detail::solve_diamond_program(e.choi() - f.choi(), e.dim(), options.sdp);
    if (options.on_sdp_solve) {
        options.on_sdp_solve(e, f, r);
    }
    return r;
}

/// Half the diamond norm of e - f. Pairs of unitary channels and pairs of
/// Pauli channels use closed forms unless options.force_sdp is set.
inline DiamondResult diamond_distance(const Channel &e, const Channel &f, const DiamondOptions &options = {}) {
    if (e.dim() != f.dim()) {
        throw std::invalid_argument("diamond_distance: channel dimensions differ");
    }
    if (!options.force_sdp) {
        auto ue = e.single_unitary();
        auto uf = f.single_unitary();
        if (ue && uf) {
            return unitary_diamond_distance(uf->adjoint() * *ue);
        }
        if (is_power_of_two(e.dim())) {
            auto pe = try_as_pauli_channel(e);
            auto pf = pe ? try_as_pauli_channel(f) : std::nullopt;
            if (pe && pf) {
                double tv = 0;
                for (const auto &label : pauli_labels(pe->qubits())) {
                    tv += std::abs(pe->probability(label) - pf->probability(label));
                }
                tv /= 2;
                return {tv, tv, tv, DiamondMethod::PauliClosedForm, std::nullopt};
            }
        }
    }
    return sdp_diamond_distance(e, f, options);
}

/// Distance between a channel and its Pauli twirl. Exactly zero for a
/// Pauli channel unless options.force_sdp is set.
inline DiamondResult pauli_distance(const Channel &c, const DiamondOptions &options = {}) {
    if (!options.force_sdp && try_as_pauli_channel(c)) {
        return {0.0, 0.0, 0.0, DiamondMethod::PauliClosedForm, std::nullopt};
    }
    return diamond_distance(c, pauli_twirl(c), options);
}

/// Best value of half the trace norm of ((e - f) (x) id)(|psi><psi|) over
/// `samples` Haar-random psi on system (x) ancilla. Always a lower bound.
inline double brute_force_lower_bound(const Channel &e, const Channel &f, size_t samples, uint64_t seed = 7) {
    if (e.dim() != f.dim()) {
        throw std::invalid_argument("brute_force_lower_bound: channel dimensions differ");
    }
    if (samples == 0) {
        throw std::invalid_argument("brute_force_lower_bound: samples must be positive");
    }
    const size_t d = e.dim();
    ComplexMatrix id = ComplexMatrix::identity(d);
    std::vector<ComplexMatrix> ke;
    std::vector<ComplexMatrix> kf;
    for (const auto &a : e.kraus()) {
        ke.push_back(kron(a, id));
    }
    for (const auto &a : f.kraus()) {
        kf.push_back(kron(a, id));
    }
    Rng rng(seed);
    double best = 0;
    for (size_t s = 0; s < samples; s++) {
        auto psi = haar_state(d * d, rng);
        ComplexMatrix diff(d * d, d * d);
        // (A (x) I) psi, accumulated as a rank-one update.
        auto add_branch = [&](const ComplexMatrix &op, double sign) {
            std::vector<Complex> v(d * d);
            for (size_t r = 0; r < d * d; r++) {
                Complex acc{};
                for (size_t k = 0; k < d * d; k++) {
                    acc += op(r, k) * psi[k];
                }
                v[r] = acc;
            }
            for (size_t r = 0; r < d * d; r++) {
                for (size_t c = 0; c < d * d; c++) {
                    diff(r, c) += sign * v[r] * std::conj(v[c]);
                }
            }
        };
        for (const auto &op : ke) {
            add_branch(op, 1.0);
        }
        for (const auto &op : kf) {
            add_branch(op, -1.0);
        }
        best = std::max(best, trace_norm(hermitian_part(diff)) / 2);
    }
    return best;
}

}  // namespace gatebound
