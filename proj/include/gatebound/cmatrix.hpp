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
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gatebound {

using Complex = std::complex<double>;

/// Absolute tolerance on max |M[i][j] - conj(M[j][i])| for Hermitian inputs.
inline constexpr double kHermitianTol = 1e-9;

namespace detail {

inline double conj_of(double x) { return x; }
inline Complex conj_of(const Complex &z) { return std::conj(z); }
inline double real_of(double x) { return x; }
inline double real_of(const Complex &z) { return z.real(); }

}  // namespace detail

/// Dense row-major matrix. Used with `double` inside the SDP solver and with
/// `Complex` for states, gates and Choi matrices.
template <typename T>
class DenseMatrix {
   public:
    using value_type = T;

    DenseMatrix() = default;

    DenseMatrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols, T{}) {}

    DenseMatrix(size_t rows, size_t cols, std::vector<T> entries)
        : rows_(rows), cols_(cols), entries_(std::move(entries)) {
        if (entries_.size() != rows_ * cols_) {
            std::stringstream ss;
            ss << "DenseMatrix: " << entries_.size() << " entries given for a " << rows_ << "x" << cols_ << " matrix";
            throw std::invalid_argument(ss.str());
        }
    }

    DenseMatrix(std::initializer_list<std::initializer_list<T>> rows) {
        rows_ = rows.size();
        cols_ = rows_ == 0 ? 0 : rows.begin()->size();
        entries_.reserve(rows_ * cols_);
        for (const auto &row : rows) {
            if (row.size() != cols_) {
                throw std::invalid_argument("DenseMatrix: ragged initializer list");
            }
            entries_.insert(entries_.end(), row.begin(), row.end());
        }
    }

    static DenseMatrix identity(size_t n) {
        DenseMatrix m(n, n);
        for (size_t i = 0; i < n; i++) {
            m(i, i) = T{1};
        }
        return m;
    }

    static DenseMatrix diagonal(std::span<const T> values) {
        DenseMatrix m(values.size(), values.size());
        for (size_t i = 0; i < values.size(); i++) {
            m(i, i) = values[i];
        }
        return m;
    }

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }
    std::span<const T> entries() const { return entries_; }
    std::span<T> entries() { return entries_; }

    T &operator()(size_t r, size_t c) { return entries_[r * cols_ + c]; }
    const T &operator()(size_t r, size_t c) const { return entries_[r * cols_ + c]; }

    DenseMatrix adjoint() const {
        DenseMatrix out(cols_, rows_);
        for (size_t r = 0; r < rows_; r++) {
            for (size_t c = 0; c < cols_; c++) {
                out(c, r) = detail::conj_of((*this)(r, c));
            }
        }
        return out;
    }

    DenseMatrix transpose() const {
        DenseMatrix out(cols_, rows_);
        for (size_t r = 0; r < rows_; r++) {
            for (size_t c = 0; c < cols_; c++) {
                out(c, r) = (*this)(r, c);
            }
        }
        return out;
    }

    T trace() const {
        require_square("trace");
        T t{};
        for (size_t i = 0; i < rows_; i++) {
            t += (*this)(i, i);
        }
        return t;
    }

    double max_abs() const {
        double m = 0;
        for (const auto &e : entries_) {
            m = std::max(m, std::abs(e));
        }
        return m;
    }

    double frobenius_norm() const {
        double s = 0;
        for (const auto &e : entries_) {
            s += std::norm(e);
        }
        return std::sqrt(s);
    }

    DenseMatrix &operator+=(const DenseMatrix &other) {
        require_same_shape(other, "+=");
        for (size_t k = 0; k < entries_.size(); k++) {
            entries_[k] += other.entries_[k];
        }
        return *this;
    }

    DenseMatrix &operator-=(const DenseMatrix &other) {
        require_same_shape(other, "-=");
        for (size_t k = 0; k < entries_.size(); k++) {
            entries_[k] -= other.entries_[k];
        }
        return *this;
    }

    DenseMatrix &operator*=(T scalar) {
        for (auto &e : entries_) {
            e *= scalar;
        }
        return *this;
    }

    friend DenseMatrix operator+(DenseMatrix a, const DenseMatrix &b) { return a += b; }
    friend DenseMatrix operator-(DenseMatrix a, const DenseMatrix &b) { return a -= b; }
    friend DenseMatrix operator*(DenseMatrix a, T s) { return a *= s; }
    friend DenseMatrix operator*(T s, DenseMatrix a) { return a *= s; }
    friend DenseMatrix operator-(DenseMatrix a) { return a *= T{-1}; }

    friend DenseMatrix operator*(const DenseMatrix &a, const DenseMatrix &b) {
        if (a.cols_ != b.rows_) {
            std::stringstream ss;
            ss << "DenseMatrix: cannot multiply " << a.rows_ << "x" << a.cols_ << " by " << b.rows_ << "x" << b.cols_;
            throw std::invalid_argument(ss.str());
        }
        DenseMatrix out(a.rows_, b.cols_);
        for (size_t i = 0; i < a.rows_; i++) {
            T *out_row = &out.entries_[i * b.cols_];
            for (size_t k = 0; k < a.cols_; k++) {
                T aik = a(i, k);
                if (aik == T{}) {
                    continue;
                }
                const T *b_row = &b.entries_[k * b.cols_];
                for (size_t j = 0; j < b.cols_; j++) {
                    out_row[j] += aik * b_row[j];
                }
            }
        }
        return out;
    }

    bool operator==(const DenseMatrix &other) const = default;

    void require_square(const char *what) const {
        if (!is_square()) {
            std::stringstream ss;
            ss << what << ": expected a square matrix, got " << rows_ << "x" << cols_;
            throw std::invalid_argument(ss.str());
        }
    }

   private:
    void require_same_shape(const DenseMatrix &other, const char *what) const {
        if (rows_ != other.rows_ || cols_ != other.cols_) {
            std::stringstream ss;
            ss << "DenseMatrix " << what << ": shape mismatch " << rows_ << "x" << cols_ << " vs " << other.rows_
               << "x" << other.cols_;
            throw std::invalid_argument(ss.str());
        }
    }

    size_t rows_ = 0;
    size_t cols_ = 0;
    std::vector<T> entries_;
};

using ComplexMatrix = DenseMatrix<Complex>;
using RealMatrix = DenseMatrix<double>;

template <typename T>
double max_abs_diff(const DenseMatrix<T> &a, const DenseMatrix<T> &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw std::invalid_argument("max_abs_diff: shape mismatch");
    }
    double m = 0;
    auto ea = a.entries();
    auto eb = b.entries();
    for (size_t k = 0; k < ea.size(); k++) {
        m = std::max(m, std::abs(ea[k] - eb[k]));
    }
    return m;
}

/// Max |M[i][j] - conj(M[j][i])|.
template <typename T>
double hermitian_defect(const DenseMatrix<T> &m) {
    m.require_square("hermitian_defect");
    double worst = 0;
    for (size_t i = 0; i < m.rows(); i++) {
        for (size_t j = i; j < m.cols(); j++) {
            worst = std::max(worst, std::abs(m(i, j) - detail::conj_of(m(j, i))));
        }
    }
    return worst;
}

template <typename T>
bool is_hermitian(const DenseMatrix<T> &m, double tol = kHermitianTol) {
    return m.is_square() && hermitian_defect(m) <= tol;
}

template <typename T>
bool is_unitary(const DenseMatrix<T> &u, double tol = kHermitianTol) {
    if (!u.is_square()) {
        return false;
    }
    return max_abs_diff(u.adjoint() * u, DenseMatrix<T>::identity(u.rows())) <= tol;
}

/// (M + M^dagger) / 2.
template <typename T>
DenseMatrix<T> hermitian_part(const DenseMatrix<T> &m) {
    m.require_square("hermitian_part");
    DenseMatrix<T> out(m.rows(), m.cols());
    for (size_t i = 0; i < m.rows(); i++) {
        for (size_t j = 0; j < m.cols(); j++) {
            out(i, j) = (m(i, j) + detail::conj_of(m(j, i))) * 0.5;
        }
    }
    return out;
}

template <typename T>
DenseMatrix<T> kron(const DenseMatrix<T> &a, const DenseMatrix<T> &b) {
    DenseMatrix<T> out(a.rows() * b.rows(), a.cols() * b.cols());
    for (size_t ar = 0; ar < a.rows(); ar++) {
        for (size_t ac = 0; ac < a.cols(); ac++) {
            T s = a(ar, ac);
            if (s == T{}) {
                continue;
            }
            for (size_t br = 0; br < b.rows(); br++) {
                for (size_t bc = 0; bc < b.cols(); bc++) {
                    out(ar * b.rows() + br, ac * b.cols() + bc) = s * b(br, bc);
                }
            }
        }
    }
    return out;
}

/// Subsystem dimensions of a bipartite operator, first factor first.
struct Bipartition {
    size_t first;
    size_t second;
};

/// Traces out one factor of a bipartite operator. `keep` is 0 to keep the
/// first factor and 1 to keep the second.
template <typename T>
DenseMatrix<T> partial_trace(const DenseMatrix<T> &m, Bipartition dims, size_t keep) {
    size_t n = dims.first * dims.second;
    if (!m.is_square() || m.rows() != n || dims.first == 0 || dims.second == 0) {
        std::stringstream ss;
        ss << "partial_trace: matrix is " << m.rows() << "x" << m.cols() << " but dims are (" << dims.first << ", "
           << dims.second << ")";
        throw std::invalid_argument(ss.str());
    }
    if (keep > 1) {
        throw std::invalid_argument("partial_trace: keep must be 0 or 1");
    }
    const size_t da = dims.first;
    const size_t db = dims.second;
    if (keep == 0) {
        DenseMatrix<T> out(da, da);
        for (size_t i = 0; i < da; i++) {
            for (size_t j = 0; j < da; j++) {
                T s{};
                for (size_t k = 0; k < db; k++) {
                    s += m(i * db + k, j * db + k);
                }
                out(i, j) = s;
            }
        }
        return out;
    }
    DenseMatrix<T> out(db, db);
    for (size_t k = 0; k < db; k++) {
        for (size_t l = 0; l < db; l++) {
            T s{};
            for (size_t i = 0; i < da; i++) {
                s += m(i * db + k, i * db + l);
            }
            out(k, l) = s;
        }
    }
    return out;
}

template <typename T>
struct Eigensystem {
    /// Sorted descending; ties keep their original diagonal order.
    std::vector<double> values;
    /// Column k is the eigenvector for values[k].
    DenseMatrix<T> vectors;
};

namespace detail {

/// Cyclic Jacobi on a matrix that is already exactly Hermitian.
template <typename T>
Eigensystem<T> jacobi_eigen(DenseMatrix<T> a) {
    const size_t n = a.rows();
    DenseMatrix<T> v = DenseMatrix<T>::identity(n);

    auto off_norm2 = [&]() {
        double s = 0;
        for (size_t p = 0; p < n; p++) {
            for (size_t q = p + 1; q < n; q++) {
                s += std::norm(a(p, q));
            }
        }
        return s;
    };
    const double scale = a.frobenius_norm();

    for (int sweep = 0; sweep < 100; sweep++) {
        double off = off_norm2();
        if (off == 0 || std::sqrt(off) <= 1e-15 * scale) {
            break;
        }
        for (size_t p = 0; p < n; p++) {
            for (size_t q = p + 1; q < n; q++) {
                T b = a(p, q);
                double mag = std::abs(b);
                if (mag == 0) {
                    continue;
                }
                T phase = b / mag;
                double app = real_of(a(p, p));
                double aqq = real_of(a(q, q));
                double tau = (aqq - app) / (2 * mag);
                double t;
                if (std::abs(tau) > 1e150) {
                    t = 0.5 / tau;
                } else {
                    t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1 + tau * tau));
                }
                double c = 1 / std::sqrt(1 + t * t);
                double s = t * c;
                T gpp = T{c};
                T gpq = T{s};
                T gqp = -s * conj_of(phase);
                T gqq = c * conj_of(phase);

                for (size_t k = 0; k < n; k++) {
                    T akp = a(k, p);
                    T akq = a(k, q);
                    a(k, p) = akp * gpp + akq * gqp;
                    a(k, q) = akp * gpq + akq * gqq;
                }
                for (size_t k = 0; k < n; k++) {
                    T apk = a(p, k);
                    T aqk = a(q, k);
                    a(p, k) = conj_of(gpp) * apk + conj_of(gqp) * aqk;
                    a(q, k) = conj_of(gpq) * apk + conj_of(gqq) * aqk;
                }
                a(p, q) = T{};
                a(q, p) = T{};
                a(p, p) = T{real_of(a(p, p))};
                a(q, q) = T{real_of(a(q, q))};
                for (size_t k = 0; k < n; k++) {
                    T vkp = v(k, p);
                    T vkq = v(k, q);
                    v(k, p) = vkp * gpp + vkq * gqp;
                    v(k, q) = vkp * gpq + vkq * gqq;
                }
            }
        }
    }

    std::vector<size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](size_t i, size_t j) { return real_of(a(i, i)) > real_of(a(j, j)); });
    Eigensystem<T> out{std::vector<double>(n), DenseMatrix<T>(n, n)};
    for (size_t k = 0; k < n; k++) {
        out.values[k] = real_of(a(order[k], order[k]));
        for (size_t r = 0; r < n; r++) {
            out.vectors(r, k) = v(r, order[k]);
        }
    }
    return out;
}

}  // namespace detail

/// Eigendecomposition m = V diag(values) V^dagger of a Hermitian matrix by
/// cyclic Jacobi rotations. Throws std::invalid_argument when m is not
/// Hermitian within kHermitianTol.
template <typename T>
Eigensystem<T> hermitian_eigendecomposition(const DenseMatrix<T> &m) {
    m.require_square("hermitian_eigendecomposition");
    double defect = hermitian_defect(m);
    if (defect > kHermitianTol) {
        std::stringstream ss;
        ss << "hermitian_eigendecomposition: input is not Hermitian (defect " << defect << ")";
        throw std::invalid_argument(ss.str());
    }
    return detail::jacobi_eigen(hermitian_part(m));
}

template <typename T>
std::vector<double> hermitian_eigenvalues(const DenseMatrix<T> &m) {
    return hermitian_eigendecomposition(m).values;
}

/// Trace norm sum |lambda_i|. Only Hermitian inputs are supported.
template <typename T>
double trace_norm(const DenseMatrix<T> &m) {
    double s = 0;
    for (double v : hermitian_eigenvalues(m)) {
        s += std::abs(v);
    }
    return s;
}

/// Rebuilds V f(diag) V^dagger from an eigensystem.
template <typename T, typename F>
DenseMatrix<T> spectral_map(const Eigensystem<T> &eig, F &&f) {
    const size_t n = eig.values.size();
    DenseMatrix<T> out(n, n);
    for (size_t k = 0; k < n; k++) {
        double w = f(eig.values[k]);
        if (w == 0) {
            continue;
        }
        for (size_t i = 0; i < n; i++) {
            T vi = eig.vectors(i, k) * w;
            for (size_t j = 0; j < n; j++) {
                out(i, j) += vi * detail::conj_of(eig.vectors(j, k));
            }
        }
    }
    return out;
}

/// Square root of a positive semidefinite matrix; negative rounding noise in
/// the spectrum is clipped to zero.
template <typename T>
DenseMatrix<T> psd_sqrt(const DenseMatrix<T> &m) {
    return spectral_map(hermitian_eigendecomposition(m), [](double x) { return x > 0 ? std::sqrt(x) : 0.0; });
}

/// Lower-triangular L with m = L L^dagger. Returns false when m is not
/// numerically positive definite.
template <typename T>
bool cholesky(const DenseMatrix<T> &m, DenseMatrix<T> &lower) {
    m.require_square("cholesky");
    const size_t n = m.rows();
    lower = DenseMatrix<T>(n, n);
    for (size_t j = 0; j < n; j++) {
        double diag = detail::real_of(m(j, j));
        for (size_t k = 0; k < j; k++) {
            diag -= std::norm(lower(j, k));
        }
        if (!(diag > 0) || !std::isfinite(diag)) {
            return false;
        }
        double ljj = std::sqrt(diag);
        lower(j, j) = T{ljj};
        for (size_t i = j + 1; i < n; i++) {
            T s = m(i, j);
            for (size_t k = 0; k < j; k++) {
                s -= lower(i, k) * detail::conj_of(lower(j, k));
            }
            lower(i, j) = s / ljj;
        }
    }
    return true;
}

/// Solves L x = b in place for lower-triangular L.
template <typename T>
void forward_substitute(const DenseMatrix<T> &lower, std::span<T> b) {
    const size_t n = lower.rows();
    for (size_t i = 0; i < n; i++) {
        T s = b[i];
        for (size_t k = 0; k < i; k++) {
            s -= lower(i, k) * b[k];
        }
        b[i] = s / lower(i, i);
    }
}

/// Solves L^dagger x = b in place for lower-triangular L.
template <typename T>
void backward_substitute_adjoint(const DenseMatrix<T> &lower, std::span<T> b) {
    const size_t n = lower.rows();
    for (size_t ii = n; ii-- > 0;) {
        T s = b[ii];
        for (size_t k = ii + 1; k < n; k++) {
            s -= detail::conj_of(lower(k, ii)) * b[k];
        }
        b[ii] = s / detail::conj_of(lower(ii, ii));
    }
}

/// Inverse of a lower-triangular matrix.
template <typename T>
DenseMatrix<T> lower_triangular_inverse(const DenseMatrix<T> &lower) {
    const size_t n = lower.rows();
    DenseMatrix<T> inv(n, n);
    std::vector<T> col(n);
    for (size_t c = 0; c < n; c++) {
        std::fill(col.begin(), col.end(), T{});
        col[c] = T{1};
        forward_substitute<T>(lower, col);
        for (size_t r = 0; r < n; r++) {
            inv(r, c) = col[r];
        }
    }
    return inv;
}

}  // namespace gatebound
