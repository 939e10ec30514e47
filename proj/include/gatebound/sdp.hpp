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

// Dense primal-dual interior-point solver for block-diagonal semidefinite
// programs in standard form:
//
//     minimize   <C, X>
//     subject to <A_i, X> = b_i,  X >= 0
//
// with dual
//
//     maximize   b^T y
//     subject to sum_i y_i A_i + Z = C,  Z >= 0.
//
// Search directions use the HKM symmetrization and a Mehrotra
// predictor-corrector step. The constraint matrices are held sparsely since
// every encoding in this project touches only a handful of entries per
// constraint.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "gatebound/cmatrix.hpp"

namespace gatebound {

using BlockMatrix = std::vector<RealMatrix>;

/// Symmetric block-diagonal matrix stored as a list of nonzeros. Both (r, c)
/// and (c, r) are present for off-diagonal entries.
class SymmetricSparseMatrix {
   public:
    struct Entry {
        uint32_t block;
        uint32_t row;
        uint32_t col;
        double value;
    };

    /// Adds `value` at (row, col) and, when row != col, at (col, row).
    void add(size_t block, size_t row, size_t col, double value) {
        if (value == 0) {
            return;
        }
        entries_.push_back({static_cast<uint32_t>(block), static_cast<uint32_t>(row), static_cast<uint32_t>(col), value});
        if (row != col) {
            entries_.push_back(
                {static_cast<uint32_t>(block), static_cast<uint32_t>(col), static_cast<uint32_t>(row), value});
        }
    }

    /// Adds a single entry without mirroring; the caller keeps the matrix
    /// symmetric.
    void add_entry(size_t block, size_t row, size_t col, double value) {
        if (value == 0) {
            return;
        }
        entries_.push_back({static_cast<uint32_t>(block), static_cast<uint32_t>(row), static_cast<uint32_t>(col), value});
    }

    const std::vector<Entry> &entries() const { return entries_; }

    double inner(const BlockMatrix &x) const {
        double s = 0;
        for (const auto &e : entries_) {
            s += e.value * x[e.block](e.row, e.col);
        }
        return s;
    }

    void accumulate_into(BlockMatrix &out, double scale) const {
        for (const auto &e : entries_) {
            out[e.block](e.row, e.col) += scale * e.value;
        }
    }

   private:
    std::vector<Entry> entries_;
};

struct SdpConstraint {
    SymmetricSparseMatrix matrix;
    double rhs;
};

struct SdpProblem {
    std::vector<size_t> blocks;
    BlockMatrix objective;
    std::vector<SdpConstraint> constraints;

    size_t total_dimension() const {
        size_t n = 0;
        for (size_t b : blocks) {
            n += b;
        }
        return n;
    }

    BlockMatrix zeros() const {
        BlockMatrix out;
        for (size_t b : blocks) {
            out.emplace_back(b, b);
        }
        return out;
    }

    /// Throws std::invalid_argument on inconsistent dimensions or asymmetric
    /// objective blocks.
    void validate() const {
        if (blocks.empty() || objective.size() != blocks.size()) {
            throw std::invalid_argument("SdpProblem: objective must have one matrix per block");
        }
        for (size_t b = 0; b < blocks.size(); b++) {
            if (blocks[b] == 0 || objective[b].rows() != blocks[b] || objective[b].cols() != blocks[b]) {
                throw std::invalid_argument("SdpProblem: objective block has the wrong size");
            }
            if (hermitian_defect(objective[b]) > 1e-12) {
                throw std::invalid_argument("SdpProblem: objective block is not symmetric");
            }
        }
        for (size_t i = 0; i < constraints.size(); i++) {
            for (const auto &e : constraints[i].matrix.entries()) {
                if (e.block >= blocks.size() || e.row >= blocks[e.block] || e.col >= blocks[e.block]) {
                    std::stringstream ss;
                    ss << "SdpProblem: constraint " << i << " has an entry outside its block";
                    throw std::invalid_argument(ss.str());
                }
            }
        }
    }
};

struct SdpOptions {
    int max_iter = 200;
    double feas_tol = 1e-8;
    double gap_tol = 1e-8;
    /// Post-hoc PSD check on returned certificates.
    double eig_tol = 1e-7;
    double step_fraction = 0.98;
};

enum class SdpStatus { Converged, MaxIterations, NumericalFailure };

inline const char *to_string(SdpStatus s) {
    switch (s) {
        case SdpStatus::Converged:
            return "Converged";
        case SdpStatus::MaxIterations:
            return "MaxIterations";
        case SdpStatus::NumericalFailure:
            return "NumericalFailure";
    }
    return "?";
}

struct SdpIterate {
    int iteration;
    double primal_value;
    double dual_value;
    double primal_residual;
    double dual_residual;
    double mu;
};

struct SdpSolution {
    BlockMatrix X;
    std::vector<double> y;
    BlockMatrix Z;
    double primal_value = 0;
    double dual_value = 0;
    /// |primal - dual| / (1 + |primal|).
    double gap = 0;
    SdpStatus status = SdpStatus::NumericalFailure;
    int iterations = 0;
    std::vector<SdpIterate> history;
};

namespace detail {

inline double block_inner(const BlockMatrix &a, const BlockMatrix &b) {
    double s = 0;
    for (size_t k = 0; k < a.size(); k++) {
        auto ea = a[k].entries();
        auto eb = b[k].entries();
        for (size_t i = 0; i < ea.size(); i++) {
            s += ea[i] * eb[i];
        }
    }
    return s;
}

inline double relative_gap(double primal, double dual) { return std::abs(primal - dual) / (1 + std::abs(primal)); }

inline double min_eigenvalue(const RealMatrix &m) {
    return jacobi_eigen(hermitian_part(m)).values.back();
}

/// Largest alpha with x + alpha dx still PSD; +inf when unbounded.
inline double max_step(const RealMatrix &x, const RealMatrix &dx) {
    RealMatrix lower;
    if (!cholesky(x, lower)) {
        return 0;
    }
    RealMatrix linv = lower_triangular_inverse(lower);
    double lmin = min_eigenvalue(linv * dx * linv.transpose());
    return lmin < 0 ? -1 / lmin : std::numeric_limits<double>::infinity();
}

}  // namespace detail

/// Independent re-check of a returned solution against the problem data.
struct CertificateCheck {
    double primal_residual = 0;
    double dual_residual = 0;
    double min_eig_x = 0;
    double min_eig_z = 0;
    double primal_value = 0;
    double dual_value = 0;
    double gap = 0;

    bool ok(const SdpOptions &options) const {
        return primal_residual <= options.feas_tol && dual_residual <= options.feas_tol &&
               min_eig_x >= -options.eig_tol && min_eig_z >= -options.eig_tol && gap <= options.gap_tol;
    }
};

inline CertificateCheck verify_certificate(const SdpProblem &problem, const SdpSolution &solution) {
    CertificateCheck check;
    for (const auto &c : problem.constraints) {
        check.primal_residual = std::max(check.primal_residual, std::abs(c.matrix.inner(solution.X) - c.rhs));
    }
    BlockMatrix residual = problem.objective;
    for (size_t i = 0; i < problem.constraints.size(); i++) {
        problem.constraints[i].matrix.accumulate_into(residual, -solution.y[i]);
    }
    for (size_t b = 0; b < residual.size(); b++) {
        check.dual_residual = std::max(check.dual_residual, max_abs_diff(residual[b], solution.Z[b]));
    }
    check.min_eig_x = std::numeric_limits<double>::infinity();
    check.min_eig_z = std::numeric_limits<double>::infinity();
    for (size_t b = 0; b < problem.blocks.size(); b++) {
        check.min_eig_x = std::min(check.min_eig_x, detail::min_eigenvalue(solution.X[b]));
        check.min_eig_z = std::min(check.min_eig_z, detail::min_eigenvalue(solution.Z[b]));
    }
    check.primal_value = detail::block_inner(problem.objective, solution.X);
    for (size_t i = 0; i < problem.constraints.size(); i++) {
        check.dual_value += problem.constraints[i].rhs * solution.y[i];
    }
    check.gap = detail::relative_gap(check.primal_value, check.dual_value);
    return check;
}

/// One solver instance owns its workspace; run one solve at a time per
/// instance. Distinct instances are independent.
class SdpSolver {
   public:
    explicit SdpSolver(SdpOptions options = {}) : options_(options) {}

    const SdpOptions &options() const { return options_; }

    SdpSolution solve(const SdpProblem &problem) {
        problem.validate();
        const size_t m = problem.constraints.size();
        const size_t nb = problem.blocks.size();
        const double n_total = static_cast<double>(problem.total_dimension());
        group_entries(problem);
        const bool independent = factor_gram(problem);

        double bmax = 0;
        for (const auto &c : problem.constraints) {
            bmax = std::max(bmax, std::abs(c.rhs));
        }
        double cmax = 0;
        for (const auto &c : problem.objective) {
            cmax = std::max(cmax, c.max_abs());
        }
        const double start = 1 + bmax + cmax;

        SdpSolution sol;
        sol.X = problem.zeros();
        sol.Z = problem.zeros();
        for (size_t b = 0; b < nb; b++) {
            sol.X[b] = RealMatrix::identity(problem.blocks[b]) * start;
            sol.Z[b] = RealMatrix::identity(problem.blocks[b]) * start;
        }
        sol.y.assign(m, 0.0);
        if (!independent) {
            // Dependent constraints make every Schur matrix singular.
            sol.status = SdpStatus::NumericalFailure;
            return sol;
        }

        std::vector<double> rp(m);
        BlockMatrix rd;
        for (int iter = 0;; iter++) {
            // Residuals and objective values of the current iterate.
            double primal_res = 0;
            for (size_t i = 0; i < m; i++) {
                rp[i] = problem.constraints[i].rhs - problem.constraints[i].matrix.inner(sol.X);
                primal_res = std::max(primal_res, std::abs(rp[i]));
            }
            rd = problem.objective;
            for (size_t i = 0; i < m; i++) {
                problem.constraints[i].matrix.accumulate_into(rd, -sol.y[i]);
            }
            double dual_res = 0;
            for (size_t b = 0; b < nb; b++) {
                rd[b] -= sol.Z[b];
                dual_res = std::max(dual_res, rd[b].max_abs());
            }
            sol.primal_value = detail::block_inner(problem.objective, sol.X);
            sol.dual_value = 0;
            for (size_t i = 0; i < m; i++) {
                sol.dual_value += problem.constraints[i].rhs * sol.y[i];
            }
            sol.gap = detail::relative_gap(sol.primal_value, sol.dual_value);
            const double mu = detail::block_inner(sol.X, sol.Z) / n_total;
            sol.history.push_back({iter, sol.primal_value, sol.dual_value, primal_res, dual_res, mu});
            sol.iterations = iter;

            if (primal_res <= options_.feas_tol && dual_res <= options_.feas_tol && sol.gap <= options_.gap_tol) {
                sol.status = SdpStatus::Converged;
                return sol;
            }
            if (iter >= options_.max_iter) {
                sol.status = SdpStatus::MaxIterations;
                return sol;
            }

            zinv_.resize(nb);
            for (size_t b = 0; b < nb; b++) {
                RealMatrix lower;
                if (!cholesky(sol.Z[b], lower)) {
                    sol.status = SdpStatus::NumericalFailure;
                    return sol;
                }
                RealMatrix linv = lower_triangular_inverse(lower);
                zinv_[b] = linv.transpose() * linv;
            }
            build_schur(problem, sol.X);
            if (!factor_schur()) {
                sol.status = SdpStatus::NumericalFailure;
                return sol;
            }

            // Predictor (affine scaling) direction.
            Direction affine = direction(problem, sol, rp, rd, 0.0, nullptr);
            double ap = std::min(1.0, max_step(sol.X, affine.dx));
            double ad = std::min(1.0, max_step(sol.Z, affine.dz));
            double mu_aff = 0;
            for (size_t b = 0; b < nb; b++) {
                RealMatrix xa = sol.X[b] + affine.dx[b] * ap;
                RealMatrix za = sol.Z[b] + affine.dz[b] * ad;
                mu_aff += detail::block_inner({xa}, {za});
            }
            mu_aff /= n_total;
            double sigma = std::clamp(std::pow(mu_aff / mu, 3), 0.0, 1.0);

            // Corrector with the second-order term dX_aff dZ_aff.
            BlockMatrix correction(nb);
            for (size_t b = 0; b < nb; b++) {
                correction[b] = affine.dx[b] * affine.dz[b];
            }
            Direction step = direction(problem, sol, rp, rd, sigma * mu, &correction);
            ap = std::min(1.0, options_.step_fraction * max_step(sol.X, step.dx));
            ad = std::min(1.0, options_.step_fraction * max_step(sol.Z, step.dz));
            if (!(ap > 0) || !(ad > 0)) {
                sol.status = SdpStatus::NumericalFailure;
                return sol;
            }
            for (size_t b = 0; b < nb; b++) {
                sol.X[b] = hermitian_part(sol.X[b] + step.dx[b] * ap);
                sol.Z[b] = hermitian_part(sol.Z[b] + step.dz[b] * ad);
            }
            for (size_t i = 0; i < m; i++) {
                sol.y[i] += ad * step.dy[i];
            }
        }
    }

   private:
    struct Direction {
        BlockMatrix dx;
        std::vector<double> dy;
        BlockMatrix dz;
    };

    struct BlockEntries {
        // Entries of one constraint that live in one block.
        uint32_t block;
        std::vector<SymmetricSparseMatrix::Entry> entries;
    };

    void group_entries(const SdpProblem &problem) {
        grouped_.assign(problem.constraints.size(), {});
        for (size_t i = 0; i < problem.constraints.size(); i++) {
            for (const auto &e : problem.constraints[i].matrix.entries()) {
                auto &groups = grouped_[i];
                auto it = std::find_if(groups.begin(), groups.end(), [&](const BlockEntries &g) {
                    return g.block == e.block;
                });
                if (it == groups.end()) {
                    groups.push_back({e.block, {e}});
                } else {
                    it->entries.push_back(e);
                }
            }
        }
    }

    /// M_ij = Tr(A_i X A_j Z^-1).
    void build_schur(const SdpProblem &problem, const BlockMatrix &x) {
        const size_t m = problem.constraints.size();
        schur_ = RealMatrix(m, m);
        for (size_t i = 0; i < m; i++) {
            for (size_t j = i; j < m; j++) {
                double s = 0;
                for (const auto &gi : grouped_[i]) {
                    for (const auto &gj : grouped_[j]) {
                        if (gi.block != gj.block) {
                            continue;
                        }
                        const RealMatrix &xb = x[gi.block];
                        const RealMatrix &zb = zinv_[gi.block];
                        for (const auto &e : gi.entries) {
                            for (const auto &f : gj.entries) {
                                s += e.value * f.value * xb(e.col, f.row) * zb(f.col, e.row);
                            }
                        }
                    }
                }
                schur_(i, j) = s;
                schur_(j, i) = s;
            }
        }
    }

    /// Newton direction for target sigma_mu * I, optionally with a
    /// second-order correction term subtracted from the complementarity
    /// residual.
    Direction direction(const SdpProblem &problem, const SdpSolution &sol, const std::vector<double> &rp,
                        const BlockMatrix &rd, double sigma_mu, const BlockMatrix *correction) {
        const size_t m = problem.constraints.size();
        const size_t nb = problem.blocks.size();
        // base = sigma_mu Z^-1 - X - corr Z^-1
        BlockMatrix base(nb);
        for (size_t b = 0; b < nb; b++) {
            base[b] = zinv_[b] * sigma_mu - sol.X[b];
            if (correction != nullptr) {
                base[b] -= (*correction)[b] * zinv_[b];
            }
        }
        std::vector<double> rhs(m);
        BlockMatrix t(nb);
        for (size_t b = 0; b < nb; b++) {
            t[b] = base[b] - sol.X[b] * rd[b] * zinv_[b];
        }
        for (size_t i = 0; i < m; i++) {
            rhs[i] = rp[i] - problem.constraints[i].matrix.inner(t);
        }
        solve_schur(rhs);

        Direction d;
        d.dy = std::move(rhs);
        d.dz = rd;
        for (size_t i = 0; i < m; i++) {
            problem.constraints[i].matrix.accumulate_into(d.dz, -d.dy[i]);
        }
        d.dx.resize(nb);
        for (size_t b = 0; b < nb; b++) {
            d.dx[b] = hermitian_part(base[b] - sol.X[b] * d.dz[b] * zinv_[b]);
        }
        project_primal(problem, d.dx, rp);
        return d;
    }

    /// G_ij = <A_i, A_j>, fixed for the whole solve.
    bool factor_gram(const SdpProblem &problem) {
        const size_t m = problem.constraints.size();
        RealMatrix gram(m, m);
        for (size_t i = 0; i < m; i++) {
            for (size_t j = i; j < m; j++) {
                double s = 0;
                for (const auto &gi : grouped_[i]) {
                    for (const auto &gj : grouped_[j]) {
                        if (gi.block != gj.block) {
                            continue;
                        }
                        for (const auto &e : gi.entries) {
                            for (const auto &f : gj.entries) {
                                if (e.row == f.row && e.col == f.col) {
                                    s += e.value * f.value;
                                }
                            }
                        }
                    }
                }
                gram(i, j) = s;
                gram(j, i) = s;
            }
        }
        return cholesky(gram, gram_lower_);
    }

    /// Removes the part of A(dX) - rp that rounding leaves behind once the
    /// iterates approach the boundary, by the least-norm correction
    /// dX += sum_i c_i A_i with G c = rp - A(dX).
    void project_primal(const SdpProblem &problem, BlockMatrix &dx, const std::vector<double> &rp) const {
        const size_t m = problem.constraints.size();
        std::vector<double> c(m);
        for (size_t i = 0; i < m; i++) {
            c[i] = rp[i] - problem.constraints[i].matrix.inner(dx);
        }
        forward_substitute<double>(gram_lower_, c);
        backward_substitute_adjoint<double>(gram_lower_, c);
        for (size_t i = 0; i < m; i++) {
            problem.constraints[i].matrix.accumulate_into(dx, c[i]);
        }
    }

    /// Cholesky of the Schur matrix. Near the optimum rounding can make it
    /// numerically indefinite; a growing diagonal shift is then tried and
    /// solve_schur refines against the unshifted matrix.
    bool factor_schur() {
        if (cholesky(schur_, schur_lower_)) {
            return true;
        }
        double scale = 0;
        for (size_t i = 0; i < schur_.rows(); i++) {
            scale = std::max(scale, std::abs(schur_(i, i)));
        }
        for (double shift = 1e-14; shift <= 1e-6; shift *= 10) {
            RealMatrix shifted = schur_;
            for (size_t i = 0; i < shifted.rows(); i++) {
                shifted(i, i) += shift * scale;
            }
            if (cholesky(shifted, schur_lower_)) {
                return true;
            }
        }
        return false;
    }

    void solve_schur(std::vector<double> &rhs) const {
        const size_t m = rhs.size();
        std::vector<double> x = rhs;
        forward_substitute<double>(schur_lower_, x);
        backward_substitute_adjoint<double>(schur_lower_, x);
        for (int round = 0; round < 2; round++) {
            std::vector<double> r(m);
            for (size_t i = 0; i < m; i++) {
                double s = rhs[i];
                for (size_t j = 0; j < m; j++) {
                    s -= schur_(i, j) * x[j];
                }
                r[i] = s;
            }
            forward_substitute<double>(schur_lower_, r);
            backward_substitute_adjoint<double>(schur_lower_, r);
            for (size_t i = 0; i < m; i++) {
                x[i] += r[i];
            }
        }
        rhs = std::move(x);
    }

    static double max_step(const BlockMatrix &x, const BlockMatrix &dx) {
        double alpha = std::numeric_limits<double>::infinity();
        for (size_t b = 0; b < x.size(); b++) {
            alpha = std::min(alpha, detail::max_step(x[b], dx[b]));
        }
        return alpha;
    }

    SdpOptions options_;
    std::vector<std::vector<BlockEntries>> grouped_;
    BlockMatrix zinv_;
    RealMatrix schur_;
    RealMatrix schur_lower_;
    RealMatrix gram_lower_;
};

}  // namespace gatebound
