// Copyright 2026 The imagres Authors
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

/**
 * @file
 * Dense complex matrices and the handful of decompositions the toolkit
 * needs: Hermitian eigendecomposition (cyclic Jacobi), trace norm, partial
 * trace, real orthonormal completion and the canonical block form of real
 * skew-symmetric matrices.
 *
 * Everything here is small and dense (dimension <= 64 in practice).
 */

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

namespace imagres {

using cplx = std::complex<double>;

/// Default absolute tolerance on matrix entries.
inline constexpr double kDefaultTol = 1e-10;

/// Raised when operand shapes do not fit together.
class DimensionError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when a value violates a documented invariant (Hermiticity,
/// positivity, normalization, orthogonality, ...).
class InvariantError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Row-major dense complex matrix.
class ComplexMatrix {
  public:
    ComplexMatrix() = default;

    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, cplx{0.0, 0.0}) {}

    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> data)
        : rows_(rows), cols_(cols), data_(std::move(data)) {
        if (data_.size() != rows_ * cols_) {
            throw DimensionError("ComplexMatrix: " + std::to_string(rows_) +
                                 "x" + std::to_string(cols_) + " needs " +
                                 std::to_string(rows_ * cols_) +
                                 " entries, got " +
                                 std::to_string(data_.size()));
        }
        for (const auto &z : data_) {
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
                throw InvariantError("ComplexMatrix: non-finite entry");
            }
        }
    }

    /// Nested-list construction, e.g. `ComplexMatrix{{1, 0}, {0, 1}}`.
    ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows) {
        rows_ = rows.size();
        cols_ = rows_ == 0 ? 0 : rows.begin()->size();
        data_.reserve(rows_ * cols_);
        for (const auto &r : rows) {
            if (r.size() != cols_) {
                throw DimensionError("ComplexMatrix: ragged initializer");
            }
            data_.insert(data_.end(), r.begin(), r.end());
        }
    }

    static ComplexMatrix identity(std::size_t n) {
        ComplexMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            m(i, i) = 1.0;
        }
        return m;
    }

    static ComplexMatrix zeros(std::size_t rows, std::size_t cols) {
        return ComplexMatrix(rows, cols);
    }

    /// Column vector from amplitudes.
    static ComplexMatrix column(std::span<const cplx> v) {
        return ComplexMatrix(v.size(), 1, std::vector<cplx>(v.begin(), v.end()));
    }

    /// Diagonal matrix.
    static ComplexMatrix diagonal(std::span<const cplx> d) {
        ComplexMatrix m(d.size(), d.size());
        for (std::size_t i = 0; i < d.size(); ++i) {
            m(i, i) = d[i];
        }
        return m;
    }

    [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
    [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
    [[nodiscard]] bool is_square() const noexcept { return rows_ == cols_; }

    cplx &operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const cplx &operator()(std::size_t r, std::size_t c) const {
        return data_[r * cols_ + c];
    }

    [[nodiscard]] std::span<const cplx> data() const noexcept { return data_; }
    [[nodiscard]] std::span<cplx> data() noexcept { return data_; }

    [[nodiscard]] std::string shape() const {
        return std::to_string(rows_) + "x" + std::to_string(cols_);
    }

    ComplexMatrix &operator+=(const ComplexMatrix &o) {
        require_same_shape(o, "+");
        for (std::size_t i = 0; i < data_.size(); ++i) {
            data_[i] += o.data_[i];
        }
        return *this;
    }
    ComplexMatrix &operator-=(const ComplexMatrix &o) {
        require_same_shape(o, "-");
        for (std::size_t i = 0; i < data_.size(); ++i) {
            data_[i] -= o.data_[i];
        }
        return *this;
    }
    ComplexMatrix &operator*=(cplx s) {
        for (auto &z : data_) {
            z *= s;
        }
        return *this;
    }

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix &b) {
        return a += b;
    }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix &b) {
        return a -= b;
    }
    friend ComplexMatrix operator*(ComplexMatrix a, cplx s) { return a *= s; }
    friend ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }

    friend bool operator==(const ComplexMatrix &a, const ComplexMatrix &b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

  private:
    void require_same_shape(const ComplexMatrix &o, const char *op) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) {
            throw DimensionError(std::string("operator") + op + ": " + shape() +
                                 " vs " + o.shape());
        }
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cplx> data_;
};

// ---------------------------------------------------------------------------
// Elementwise helpers and products

inline ComplexMatrix matmul(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.cols() != b.rows()) {
        throw DimensionError("matmul: " + a.shape() + " * " + b.shape());
    }
    ComplexMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const cplx aik = a(i, k);
            if (aik == cplx{}) {
                continue;
            }
            for (std::size_t j = 0; j < b.cols(); ++j) {
                out(i, j) += aik * b(k, j);
            }
        }
    }
    return out;
}

inline ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b) {
    return matmul(a, b);
}

inline ComplexMatrix conjugate(const ComplexMatrix &a) {
    ComplexMatrix out = a;
    for (auto &z : out.data()) {
        z = std::conj(z);
    }
    return out;
}

inline ComplexMatrix transpose(const ComplexMatrix &a) {
    ComplexMatrix out(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            out(j, i) = a(i, j);
        }
    }
    return out;
}

inline ComplexMatrix adjoint(const ComplexMatrix &a) {
    return conjugate(transpose(a));
}

/// Kronecker product; `a` indexes the slow (most significant) factor.
inline ComplexMatrix tensor(const ComplexMatrix &a, const ComplexMatrix &b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const cplx aij = a(i, j);
            if (aij == cplx{}) {
                continue;
            }
            for (std::size_t k = 0; k < b.rows(); ++k) {
                for (std::size_t l = 0; l < b.cols(); ++l) {
                    out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
                }
            }
        }
    }
    return out;
}

/// Left-to-right Kronecker product of several factors.
inline ComplexMatrix tensor(std::initializer_list<ComplexMatrix> factors) {
    ComplexMatrix out = ComplexMatrix::identity(1);
    for (const auto &f : factors) {
        out = tensor(out, f);
    }
    return out;
}

inline cplx trace(const ComplexMatrix &m) {
    if (!m.is_square()) {
        throw DimensionError("trace: non-square " + m.shape());
    }
    cplx t{};
    for (std::size_t i = 0; i < m.rows(); ++i) {
        t += m(i, i);
    }
    return t;
}

/// Real part of the entries.
inline ComplexMatrix real_part(const ComplexMatrix &m) {
    ComplexMatrix out = m;
    for (auto &z : out.data()) {
        z = z.real();
    }
    return out;
}

/// Imaginary part of the entries, stored as a real-valued ComplexMatrix.
inline ComplexMatrix imag_part(const ComplexMatrix &m) {
    ComplexMatrix out = m;
    for (auto &z : out.data()) {
        z = z.imag();
    }
    return out;
}

/// Largest entrywise modulus, `max_ij |m_ij|`.
inline double max_abs(const ComplexMatrix &m) {
    double best = 0.0;
    for (const auto &z : m.data()) {
        best = std::max(best, std::abs(z));
    }
    return best;
}

/// `max_ij |a_ij - b_ij|`.
inline double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionError("max_abs_diff: " + a.shape() + " vs " + b.shape());
    }
    double best = 0.0;
    for (std::size_t i = 0; i < a.data().size(); ++i) {
        best = std::max(best, std::abs(a.data()[i] - b.data()[i]));
    }
    return best;
}

/// Largest |Im| over the entries.
inline double max_imag(const ComplexMatrix &m) {
    double best = 0.0;
    for (const auto &z : m.data()) {
        best = std::max(best, std::abs(z.imag()));
    }
    return best;
}

inline double frobenius_norm(const ComplexMatrix &m) {
    double s = 0.0;
    for (const auto &z : m.data()) {
        s += std::norm(z);
    }
    return std::sqrt(s);
}

inline bool is_hermitian(const ComplexMatrix &m, double tol = kDefaultTol) {
    return m.is_square() && max_abs_diff(m, adjoint(m)) <= tol;
}

inline bool is_real(const ComplexMatrix &m, double tol = kDefaultTol) {
    return max_imag(m) <= tol;
}

/// `‖a† a − I‖_max`; works for isometries (tall matrices) too.
inline double unitarity_residual(const ComplexMatrix &a) {
    return max_abs_diff(adjoint(a) * a, ComplexMatrix::identity(a.cols()));
}

inline bool is_unitary(const ComplexMatrix &a, double tol = kDefaultTol) {
    return a.is_square() && unitarity_residual(a) <= tol &&
           max_abs_diff(a * adjoint(a), ComplexMatrix::identity(a.rows())) <= tol;
}

inline bool is_real_orthogonal(const ComplexMatrix &a, double tol = kDefaultTol) {
    return is_real(a, tol) && is_unitary(a, tol);
}

/// Column `j` as a standalone vector.
inline std::vector<cplx> column_of(const ComplexMatrix &m, std::size_t j) {
    std::vector<cplx> v(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        v[i] = m(i, j);
    }
    return v;
}

/// Outer product |u⟩⟨v|.
inline ComplexMatrix outer(std::span<const cplx> u, std::span<const cplx> v) {
    ComplexMatrix out(u.size(), v.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
        for (std::size_t j = 0; j < v.size(); ++j) {
            out(i, j) = u[i] * std::conj(v[j]);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Partial trace

/**
 * Reduced matrix on the subsystems listed in `keep`.
 *
 * `dims` lists the subsystem dimensions with the first entry as the slowest
 * index, matching `tensor`. The kept subsystems appear in ascending order in
 * the result regardless of the order in `keep`.
 */
inline ComplexMatrix partial_trace(const ComplexMatrix &m,
                                   std::span<const std::size_t> dims,
                                   std::span<const std::size_t> keep) {
    const std::size_t total =
        std::accumulate(dims.begin(), dims.end(), std::size_t{1},
                        std::multiplies<>());
    if (!m.is_square() || m.rows() != total) {
        std::ostringstream os;
        os << "partial_trace: matrix " << m.shape() << " does not match dims [";
        for (std::size_t i = 0; i < dims.size(); ++i) {
            os << (i ? ", " : "") << dims[i];
        }
        os << "]";
        throw DimensionError(os.str());
    }
    std::vector<bool> kept(dims.size(), false);
    for (auto k : keep) {
        if (k >= dims.size()) {
            throw DimensionError("partial_trace: subsystem index " +
                                 std::to_string(k) + " out of range");
        }
        kept[k] = true;
    }

    std::size_t keep_dim = 1;
    std::size_t trace_dim = 1;
    for (std::size_t s = 0; s < dims.size(); ++s) {
        (kept[s] ? keep_dim : trace_dim) *= dims[s];
    }

    // Split a full index into (kept index, traced index).
    auto split = [&](std::size_t idx) {
        std::size_t k = 0;
        std::size_t t = 0;
        std::size_t kstride = 1;
        std::size_t tstride = 1;
        for (std::size_t s = dims.size(); s-- > 0;) {
            const std::size_t digit = idx % dims[s];
            idx /= dims[s];
            if (kept[s]) {
                k += digit * kstride;
                kstride *= dims[s];
            } else {
                t += digit * tstride;
                tstride *= dims[s];
            }
        }
        return std::pair{k, t};
    };

    std::vector<std::pair<std::size_t, std::size_t>> parts(total);
    for (std::size_t i = 0; i < total; ++i) {
        parts[i] = split(i);
    }

    ComplexMatrix out(keep_dim, keep_dim);
    for (std::size_t i = 0; i < total; ++i) {
        for (std::size_t j = 0; j < total; ++j) {
            if (parts[i].second == parts[j].second) {
                out(parts[i].first, parts[j].first) += m(i, j);
            }
        }
    }
    return out;
}

inline ComplexMatrix partial_trace(const ComplexMatrix &m,
                                   std::initializer_list<std::size_t> dims,
                                   std::initializer_list<std::size_t> keep) {
    return partial_trace(m, std::span(dims.begin(), dims.size()),
                         std::span(keep.begin(), keep.size()));
}

// ---------------------------------------------------------------------------
// Hermitian eigendecomposition

struct EigenSystem {
    std::vector<double> values;  ///< descending
    ComplexMatrix vectors;       ///< column k belongs to values[k]
};

/**
 * Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi
 * rotations. Eigenvalues come back sorted in descending order and
 * `m = V diag(λ) V†` with `V` unitary.
 *
 * Throws InvariantError if `m` is not Hermitian within `tol`.
 */
inline EigenSystem hermitian_eig(const ComplexMatrix &m, double tol = kDefaultTol) {
    if (!m.is_square()) {
        throw DimensionError("hermitian_eig: non-square " + m.shape());
    }
    if (!is_hermitian(m, tol)) {
        throw InvariantError("hermitian_eig: matrix is not Hermitian (‖m − m†‖_max = " +
                             std::to_string(max_abs_diff(m, adjoint(m))) + ")");
    }
    const std::size_t n = m.rows();
    ComplexMatrix a = (m + adjoint(m)) * cplx{0.5};
    ComplexMatrix v = ComplexMatrix::identity(n);

    auto off_norm = [&] {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                if (i != j) {
                    s += std::norm(a(i, j));
                }
            }
        }
        return std::sqrt(s);
    };

    const double scale = std::max(frobenius_norm(a), 1e-300);
    constexpr int kMaxSweeps = 100;
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        if (off_norm() <= 1e-17 * scale) {
            break;
        }
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq_abs = std::abs(a(p, q));
                if (apq_abs <= 1e-300) {
                    continue;
                }
                const cplx phase = a(p, q) / apq_abs;  // e^{iφ}
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double theta = (aqq - app) / (2.0 * apq_abs);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;

                // J = diag(1, e^{-iφ}) · [[c, s], [-s, c]] on (p, q).
                const cplx jpp = c;
                const cplx jpq = s;
                const cplx jqp = -s * std::conj(phase);
                const cplx jqq = c * std::conj(phase);

                for (std::size_t k = 0; k < n; ++k) {  // a <- a J
                    const cplx akp = a(k, p);
                    const cplx akq = a(k, q);
                    a(k, p) = akp * jpp + akq * jqp;
                    a(k, q) = akp * jpq + akq * jqq;
                }
                for (std::size_t k = 0; k < n; ++k) {  // a <- J† a
                    const cplx apk = a(p, k);
                    const cplx aqk = a(q, k);
                    a(p, k) = std::conj(jpp) * apk + std::conj(jqp) * aqk;
                    a(q, k) = std::conj(jpq) * apk + std::conj(jqq) * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
                for (std::size_t k = 0; k < n; ++k) {  // v <- v J
                    const cplx vkp = v(k, p);
                    const cplx vkq = v(k, q);
                    v(k, p) = vkp * jpp + vkq * jqp;
                    v(k, q) = vkp * jpq + vkq * jqq;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return a(i, i).real() > a(j, j).real();
    });
    EigenSystem out{std::vector<double>(n), ComplexMatrix(n, n)};
    for (std::size_t k = 0; k < n; ++k) {
        out.values[k] = a(order[k], order[k]).real();
        for (std::size_t i = 0; i < n; ++i) {
            out.vectors(i, k) = v(i, order[k]);
        }
    }
    return out;
}

/// Schatten-1 norm of a Hermitian matrix: sum of |eigenvalues|.
inline double trace_norm(const ComplexMatrix &m, double tol = kDefaultTol) {
    const auto eig = hermitian_eig(m, tol);
    double s = 0.0;
    for (double l : eig.values) {
        s += std::abs(l);
    }
    return s;
}

// ---------------------------------------------------------------------------
// Real orthonormal completion

/**
 * Extend `k` real orthonormal columns in dimension `n` to a square real
 * orthogonal matrix. The input columns are copied verbatim into the first
 * `k` columns; the rest come from modified Gram–Schmidt (run twice) against
 * the canonical basis e_0, e_1, ... in order, skipping any candidate whose
 * residual norm falls below 1/(2√n).
 */
inline ComplexMatrix orthonormal_complete(const ComplexMatrix &columns,
                                          double tol = kDefaultTol) {
    const std::size_t n = columns.rows();
    const std::size_t k = columns.cols();
    if (k > n) {
        throw DimensionError("orthonormal_complete: " + std::to_string(k) +
                             " columns exceed dimension " + std::to_string(n));
    }
    if (!is_real(columns, tol)) {
        throw InvariantError("orthonormal_complete: input columns are not real");
    }
    if (unitarity_residual(columns) > tol) {
        throw InvariantError("orthonormal_complete: input columns are not orthonormal");
    }

    std::vector<std::vector<double>> basis;
    basis.reserve(n);
    for (std::size_t j = 0; j < k; ++j) {
        std::vector<double> col(n);
        for (std::size_t i = 0; i < n; ++i) {
            col[i] = columns(i, j).real();
        }
        basis.push_back(std::move(col));
    }

    const double threshold = 0.5 / std::sqrt(static_cast<double>(std::max<std::size_t>(n, 1)));
    for (std::size_t e = 0; e < n && basis.size() < n; ++e) {
        std::vector<double> r(n, 0.0);
        r[e] = 1.0;
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto &b : basis) {
                double dot = 0.0;
                for (std::size_t i = 0; i < n; ++i) {
                    dot += b[i] * r[i];
                }
                for (std::size_t i = 0; i < n; ++i) {
                    r[i] -= dot * b[i];
                }
            }
        }
        double norm = 0.0;
        for (double x : r) {
            norm += x * x;
        }
        norm = std::sqrt(norm);
        if (norm < threshold) {
            continue;
        }
        for (double &x : r) {
            x /= norm;
        }
        basis.push_back(std::move(r));
    }

    ComplexMatrix out(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < n; ++i) {
            out(i, j) = j < k ? columns(i, j) : cplx{basis[j][i], 0.0};
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Canonical form of real skew-symmetric matrices

/**
 * `orthogonal · A · orthogonalᵀ = ⊕_m blockValues[m]·[[0, −1], [1, 0]] ⊕ 0`.
 *
 * There are ⌊n/2⌋ blocks (trailing ones may be zero) and `residualDim = n mod 2`
 * unpaired dimensions at the end.
 */
struct SkewCanonicalForm {
    std::vector<double> blockValues;  ///< nonnegative, descending
    ComplexMatrix orthogonal;         ///< real, rows are the new basis
    std::size_t residualDim = 0;

    /// The block-diagonal matrix ⊕ a_m J ⊕ 0.
    [[nodiscard]] ComplexMatrix block_matrix() const {
        const std::size_t n = orthogonal.rows();
        ComplexMatrix b(n, n);
        for (std::size_t m = 0; m < blockValues.size(); ++m) {
            b(2 * m, 2 * m + 1) = -blockValues[m];
            b(2 * m + 1, 2 * m) = blockValues[m];
        }
        return b;
    }
};

namespace detail {

// Multiply an eigenvector by the phase that makes its first (near-)largest
// component real and positive, so that the real/imaginary split is
// reproducible.
inline void fix_phase(std::vector<cplx> &v) {
    double biggest = 0.0;
    for (const auto &z : v) {
        biggest = std::max(biggest, std::abs(z));
    }
    for (const auto &z : v) {
        if (std::abs(z) >= biggest - 1e-12) {
            const cplx ph = std::conj(z) / std::abs(z);
            for (auto &w : v) {
                w *= ph;
            }
            return;
        }
    }
}

}  // namespace detail

/**
 * Canonical form of a real skew-symmetric matrix.
 *
 * iA is Hermitian with eigenvalues ±a_m. For an eigenvector v = p + iq of
 * iA with eigenvalue a > 0 one has A p = a q and A q = −a p, and p ⟂ q with
 * |p| = |q| = 1/√2. The rows (√2 p, √2 q) therefore carry the block
 * a·[[0, −1], [1, 0]]. Any kernel directions are filled in by
 * orthonormal_complete and paired into zero blocks.
 */
inline SkewCanonicalForm skew_canonical(const ComplexMatrix &a, double tol = kDefaultTol) {
    if (!a.is_square()) {
        throw DimensionError("skew_canonical: non-square " + a.shape());
    }
    if (!is_real(a, tol)) {
        throw InvariantError("skew_canonical: input is not real");
    }
    if (max_abs_diff(transpose(a), a * cplx{-1.0}) > tol) {
        throw InvariantError("skew_canonical: input is not skew-symmetric");
    }
    const std::size_t n = a.rows();
    const ComplexMatrix ar = real_part(a);
    const ComplexMatrix ia = ar * cplx{0.0, 1.0};
    const auto eig = hermitian_eig(ia, tol);

    const double cutoff = std::max(1e-13, 1e-13 * max_abs(ar));
    std::vector<std::vector<double>> rows;
    rows.reserve(n);
    for (std::size_t k = 0; k < n / 2; ++k) {
        if (eig.values[k] <= cutoff) {
            break;
        }
        auto v = column_of(eig.vectors, k);
        detail::fix_phase(v);
        std::vector<double> p(n);
        std::vector<double> q(n);
        for (std::size_t i = 0; i < n; ++i) {
            p[i] = v[i].real();
            q[i] = v[i].imag();
        }
        rows.push_back(std::move(p));
        rows.push_back(std::move(q));
    }

    // Re-orthonormalize (degenerate eigenspaces come back with rounding-level
    // cross terms) and complete with the real kernel.
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t s = 0; s < r; ++s) {
                double dot = 0.0;
                for (std::size_t i = 0; i < n; ++i) {
                    dot += rows[s][i] * rows[r][i];
                }
                for (std::size_t i = 0; i < n; ++i) {
                    rows[r][i] -= dot * rows[s][i];
                }
            }
        }
        double norm = 0.0;
        for (double x : rows[r]) {
            norm += x * x;
        }
        norm = std::sqrt(norm);
        for (double &x : rows[r]) {
            x /= norm;
        }
    }
    ComplexMatrix partial(n, rows.size());
    for (std::size_t j = 0; j < rows.size(); ++j) {
        for (std::size_t i = 0; i < n; ++i) {
            partial(i, j) = rows[j][i];
        }
    }
    const ComplexMatrix completed = orthonormal_complete(partial, 1e-9);

    SkewCanonicalForm out;
    out.orthogonal = transpose(completed);
    out.residualDim = n % 2;
    const ComplexMatrix rotated = out.orthogonal * ar * transpose(out.orthogonal);
    for (std::size_t m = 0; m < n / 2; ++m) {
        // Blocks past the paired rows are kernel directions: exactly zero.
        out.blockValues.push_back(2 * m < rows.size() ? rotated(2 * m + 1, 2 * m).real()
                                                      : 0.0);
    }
    return out;
}

}  // namespace imagres
