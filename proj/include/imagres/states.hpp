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
 * Validated quantum states: density matrices, pure states and qubit Bloch
 * vectors, plus seeded generators for random and maximally imaginary states.
 */

#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "imagres/linalg.hpp"
#include "imagres/random.hpp"

namespace imagres {

/**
 * Normalized state vector.
 *
 * Construction rejects vectors whose squared norm differs from one by more
 * than 1e-12; nothing is renormalized behind the caller's back.
 */
class PureState {
  public:
    explicit PureState(std::vector<cplx> amplitudes, double tol = 1e-12)
        : amps_(std::move(amplitudes)) {
        if (amps_.empty()) {
            throw InvariantError("PureState: empty amplitude vector");
        }
        double norm2 = 0.0;
        for (const auto &z : amps_) {
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
                throw InvariantError("PureState: non-finite amplitude");
            }
            norm2 += std::norm(z);
        }
        if (std::abs(norm2 - 1.0) > tol) {
            throw InvariantError("PureState: not normalized (Σ|ψ_j|² = " +
                                 std::to_string(norm2) + ")");
        }
    }

    /// Computational basis state |index⟩.
    static PureState basis(std::size_t dim, std::size_t index) {
        std::vector<cplx> v(dim);
        v.at(index) = 1.0;
        return PureState(std::move(v));
    }

    [[nodiscard]] std::size_t dim() const noexcept { return amps_.size(); }
    [[nodiscard]] const std::vector<cplx> &amplitudes() const noexcept { return amps_; }
    [[nodiscard]] ComplexMatrix ket() const { return ComplexMatrix::column(amps_); }

  private:
    std::vector<cplx> amps_;
};

/// |+i⟩ = (|0⟩ + i|1⟩)/√2; also written |+̂⟩.
inline PureState plus_i() {
    const double h = std::numbers::sqrt2 / 2.0;
    return PureState({h, cplx{0.0, h}});
}

/// |−i⟩ = (|0⟩ − i|1⟩)/√2.
inline PureState minus_i() {
    const double h = std::numbers::sqrt2 / 2.0;
    return PureState({h, cplx{0.0, -h}});
}

/// |+⟩ = (|0⟩ + |1⟩)/√2.
inline PureState plus() {
    const double h = std::numbers::sqrt2 / 2.0;
    return PureState({h, h});
}

/**
 * Hermitian, positive semidefinite, unit-trace matrix.
 *
 * The checks run on construction with absolute tolerance `tol` (default
 * 1e-10) on entries, eigenvalues and the trace. Failures throw
 * InvariantError naming the violated property.
 */
class DensityMatrix {
  public:
    explicit DensityMatrix(ComplexMatrix m, double tol = kDefaultTol) : m_(std::move(m)) {
        if (!m_.is_square() || m_.rows() == 0) {
            throw DimensionError("DensityMatrix: needs a non-empty square matrix, got " +
                                 m_.shape());
        }
        const double herm = max_abs_diff(m_, adjoint(m_));
        if (herm > tol) {
            throw InvariantError("DensityMatrix: not Hermitian (‖m − m†‖_max = " +
                                 std::to_string(herm) + ")");
        }
        const cplx tr = trace(m_);
        if (std::abs(tr - 1.0) > tol) {
            throw InvariantError("DensityMatrix: trace is not one (tr = " +
                                 std::to_string(tr.real()) + ")");
        }
        const auto eig = hermitian_eig(m_, tol);
        if (eig.values.back() < -tol) {
            throw InvariantError("DensityMatrix: not positive semidefinite (λ_min = " +
                                 std::to_string(eig.values.back()) + ")");
        }
    }

    [[nodiscard]] std::size_t dim() const noexcept { return m_.rows(); }
    [[nodiscard]] const ComplexMatrix &matrix() const noexcept { return m_; }

    friend bool operator==(const DensityMatrix &a, const DensityMatrix &b) {
        return a.m_ == b.m_;
    }

  private:
    ComplexMatrix m_;
};

/// Qubit Bloch vector; construction requires ‖(x, y, z)‖ ≤ 1 + 1e-10.
struct BlochVector {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    BlochVector() = default;
    BlochVector(double x_, double y_, double z_, double tol = kDefaultTol)
        : x(x_), y(y_), z(z_) {
        if (!std::isfinite(x) || !std::isfinite(y) || !std::isfinite(z)) {
            throw InvariantError("BlochVector: non-finite coordinate");
        }
        if (x * x + y * y + z * z > 1.0 + tol) {
            throw InvariantError("BlochVector: outside the unit ball");
        }
    }

    [[nodiscard]] double norm() const { return std::sqrt(x * x + y * y + z * z); }
};

// ---------------------------------------------------------------------------

inline DensityMatrix from_pure(const PureState &psi) {
    return DensityMatrix(outer(psi.amplitudes(), psi.amplitudes()));
}

/// Entrywise complex conjugate ρ*.
inline DensityMatrix conj_state(const DensityMatrix &rho) {
    return DensityMatrix(conjugate(rho.matrix()));
}

/// (tr[ρX], tr[ρY], tr[ρZ]) for a qubit.
inline BlochVector bloch_of(const DensityMatrix &rho) {
    if (rho.dim() != 2) {
        throw DimensionError("bloch_of: needs a qubit, got dimension " +
                             std::to_string(rho.dim()));
    }
    const auto &m = rho.matrix();
    const cplx r01 = m(0, 1);
    const double x = 2.0 * r01.real();
    const double y = -2.0 * r01.imag();
    const double z = (m(0, 0) - m(1, 1)).real();
    return BlochVector(x, y, z);
}

/// ρ = (I + xX + yY + zZ)/2.
inline DensityMatrix state_of(const BlochVector &b) {
    if (b.x * b.x + b.y * b.y + b.z * b.z > 1.0 + kDefaultTol) {
        throw InvariantError("state_of: Bloch vector outside the unit ball");
    }
    return DensityMatrix(ComplexMatrix{{0.5 * (1.0 + b.z), 0.5 * cplx{b.x, -b.y}},
                                       {0.5 * cplx{b.x, b.y}, 0.5 * (1.0 - b.z)}});
}

/// Maximally mixed state I/d.
inline DensityMatrix maximally_mixed(std::size_t dim) {
    return DensityMatrix(ComplexMatrix::identity(dim) * cplx{1.0 / static_cast<double>(dim)});
}

/// Convex combination Σ w_k ρ_k (weights must sum to one).
inline DensityMatrix mix(std::span<const double> weights,
                         std::span<const DensityMatrix> states) {
    if (weights.size() != states.size() || states.empty()) {
        throw DimensionError("mix: weights and states differ in length");
    }
    ComplexMatrix acc(states[0].dim(), states[0].dim());
    for (std::size_t k = 0; k < states.size(); ++k) {
        acc += states[k].matrix() * cplx{weights[k]};
    }
    return DensityMatrix(std::move(acc));
}

// ---------------------------------------------------------------------------
// Generators

/// G G† / tr(G G†) with G a seeded complex Gaussian matrix (full support).
inline DensityMatrix gen_random_density(std::size_t dim, std::uint64_t seed) {
    if (dim == 0) {
        throw InvariantError("gen_random_density: dimension must be positive");
    }
    Rng rng(seed);
    const ComplexMatrix g = random_complex_gaussian(dim, dim, rng);
    ComplexMatrix m = g * adjoint(g);
    m *= cplx{1.0 / trace(m).real()};
    return DensityMatrix(std::move(m));
}

/// Random pure state as a density matrix.
inline DensityMatrix gen_random_pure(std::size_t dim, std::uint64_t seed) {
    Rng rng(seed);
    const auto v = random_pure_amplitudes(dim, rng);
    return DensityMatrix(outer(v, v));
}

/**
 * Maximally imaginary state built from a given real orthogonal `o` and
 * mixing weights: Σ_k w_k |v_k⟩⟨v_k| with |v_k⟩ = o(e_{2k} + i e_{2k+1})/√2.
 *
 * The |v_k⟩ satisfy v_jᵀ v_k = 0 for all j, k, so the support is orthogonal
 * to its own conjugate and tr[ρρ*] = 0.
 */
inline DensityMatrix max_imaginary_from(const ComplexMatrix &o, std::span<const double> weights) {
    const std::size_t dim = o.rows();
    if (!is_real_orthogonal(o, 1e-12)) {
        throw InvariantError("max_imaginary_from: basis is not real orthogonal");
    }
    if (weights.empty() || 2 * weights.size() > dim) {
        throw InvariantError("max_imaginary_from: rank must be in [1, dim/2]");
    }
    const double h = std::numbers::sqrt2 / 2.0;
    ComplexMatrix acc(dim, dim);
    for (std::size_t k = 0; k < weights.size(); ++k) {
        std::vector<cplx> v(dim);
        for (std::size_t i = 0; i < dim; ++i) {
            v[i] = h * cplx{o(i, 2 * k).real(), o(i, 2 * k + 1).real()};
        }
        acc += outer(v, v) * cplx{weights[k]};
    }
    return DensityMatrix(std::move(acc));
}

/// Seeded maximally imaginary state of the given rank (1 ≤ rank ≤ dim/2).
inline DensityMatrix gen_max_imaginary(std::size_t dim, std::size_t rank, std::uint64_t seed) {
    if (dim < 2) {
        throw InvariantError("gen_max_imaginary: dimension must be at least 2");
    }
    if (rank == 0 || 2 * rank > dim) {
        throw InvariantError("gen_max_imaginary: rank " + std::to_string(rank) +
                             " not in [1, " + std::to_string(dim / 2) + "]");
    }
    Rng rng(seed);
    const ComplexMatrix o = random_orthogonal(dim, rng);
    // Flat Dirichlet weights.
    std::vector<double> w(rank);
    double total = 0.0;
    for (auto &x : w) {
        double u = rng.uniform();
        while (u <= 0.0) {
            u = rng.uniform();
        }
        x = -std::log(u);
        total += x;
    }
    for (auto &x : w) {
        x /= total;
    }
    return max_imaginary_from(o, w);
}

}  // namespace imagres
