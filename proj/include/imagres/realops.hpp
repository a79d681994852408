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
 * Real operations: Kraus sets with real entries, the fixed family that pairs
 * basis levels (2m, 2m+1) onto a qubit, the state-dependent basis alignment
 * that makes that family optimal, and the real Stinespring dilation.
 */

#pragma once

#include <cmath>
#include <vector>

#include "imagres/linalg.hpp"
#include "imagres/measures.hpp"
#include "imagres/states.hpp"

namespace imagres {

/// Real Kraus operators K_m (outDim × inDim) with Σ K_mᵀ K_m = I.
class RealKrausSet {
  public:
    RealKrausSet(std::size_t in_dim, std::size_t out_dim, std::vector<ComplexMatrix> operators)
        : inDim_(in_dim), outDim_(out_dim), ops_(std::move(operators)) {
        if (ops_.empty()) {
            throw InvariantError("RealKrausSet: no operators");
        }
        ComplexMatrix acc(inDim_, inDim_);
        for (const auto &k : ops_) {
            if (k.rows() != outDim_ || k.cols() != inDim_) {
                throw DimensionError("RealKrausSet: operator " + k.shape() + ", expected " +
                                     std::to_string(outDim_) + "x" + std::to_string(inDim_));
            }
            if (max_imag(k) > 1e-14) {
                throw InvariantError("RealKrausSet: operator has an imaginary part");
            }
            acc += adjoint(k) * k;
        }
        if (max_abs_diff(acc, ComplexMatrix::identity(inDim_)) > 1e-12) {
            throw InvariantError("RealKrausSet: Σ K†K ≠ I (incomplete Kraus set)");
        }
    }

    [[nodiscard]] std::size_t in_dim() const noexcept { return inDim_; }
    [[nodiscard]] std::size_t out_dim() const noexcept { return outDim_; }
    [[nodiscard]] const std::vector<ComplexMatrix> &operators() const noexcept { return ops_; }

    friend bool operator==(const RealKrausSet &, const RealKrausSet &) = default;

  private:
    std::size_t inDim_;
    std::size_t outDim_;
    std::vector<ComplexMatrix> ops_;
};

/**
 * K_m = |1⟩⟨2m| + |0⟩⟨2m+1| for m < ⌊d/2⌋, plus K_{⌊d/2⌋} = |0⟩⟨d−1| when d
 * is odd. Every K_m maps into a qubit.
 */
inline RealKrausSet build_kraus(std::size_t d) {
    if (d < 2) {
        throw InvariantError("build_kraus: dimension must be at least 2");
    }
    std::vector<ComplexMatrix> ops;
    for (std::size_t m = 0; m < d / 2; ++m) {
        ComplexMatrix k(2, d);
        k(1, 2 * m) = 1.0;
        k(0, 2 * m + 1) = 1.0;
        ops.push_back(std::move(k));
    }
    if (d % 2 == 1) {
        ComplexMatrix k(2, d);
        k(0, d - 1) = 1.0;
        ops.push_back(std::move(k));
    }
    return RealKrausSet(d, 2, std::move(ops));
}

/**
 * Real orthogonal O such that Σ_m K_m (OρOᵀ) K_mᵀ reaches fidelity
 * ½ + ¼‖ρ − ρ*‖₁ with |+̂⟩.
 *
 * With Im(OρOᵀ) = OAOᵀ, block m of the channel contributes
 * ½(σ_{2m,2m} + σ_{2m+1,2m+1}) − (OAOᵀ)_{2m+1,2m} to ⟨+̂|Λ[ρ]|+̂⟩. The
 * canonical form puts +a_m at (2m+1, 2m); negating every second row flips
 * each block so it contributes +a_m instead, and Σ a_m = ¼‖ρ − ρ*‖₁.
 */
inline ComplexMatrix align_for_state(const DensityMatrix &rho) {
    const auto canon = skew_canonical(imag_part(rho.matrix()));
    ComplexMatrix o = canon.orthogonal;
    for (std::size_t m = 0; m < canon.blockValues.size(); ++m) {
        for (std::size_t j = 0; j < o.cols(); ++j) {
            o(2 * m + 1, j) = -o(2 * m + 1, j);
        }
    }
    return o;
}

/// Σ_m K_m (align · ρ · alignᵀ) K_mᵀ.
inline DensityMatrix apply_kraus(const RealKrausSet &k, const ComplexMatrix &align,
                                 const DensityMatrix &rho) {
    if (rho.dim() != k.in_dim() || align.rows() != k.in_dim() || !align.is_square()) {
        throw DimensionError("apply_kraus: Kraus input dimension " +
                             std::to_string(k.in_dim()) + ", alignment " + align.shape() +
                             ", state dimension " + std::to_string(rho.dim()));
    }
    if (!is_real_orthogonal(align, 1e-10)) {
        throw InvariantError("apply_kraus: alignment is not real orthogonal");
    }
    const ComplexMatrix sigma = align * rho.matrix() * transpose(align);
    ComplexMatrix out(k.out_dim(), k.out_dim());
    for (const auto &op : k.operators()) {
        out += op * sigma * transpose(op);
    }
    return DensityMatrix(std::move(out));
}

/// ⟨+̂|σ|+̂⟩ for a qubit state.
inline double fidelity_with_plus_hat(const DensityMatrix &sigma) {
    const auto &m = sigma.matrix();
    if (sigma.dim() != 2) {
        throw DimensionError("fidelity_with_plus_hat: needs a qubit");
    }
    // ⟨+̂| = (⟨0| − i⟨1|)/√2
    const cplx i{0.0, 1.0};
    return (0.5 * (m(0, 0) + m(1, 1) + i * m(0, 1) - i * m(1, 0))).real();
}

struct Conversion {
    DensityMatrix output;  ///< qubit
    double fidelity;       ///< ⟨+̂|output|+̂⟩
    RealKrausSet kraus;
    ComplexMatrix align;
};

/// Optimal real conversion of ρ towards |+̂⟩⟨+̂|.
inline Conversion convert_to_plus_hat(const DensityMatrix &rho) {
    auto kraus = build_kraus(std::max<std::size_t>(rho.dim(), 2));
    if (rho.dim() < 2) {
        // A 1-dimensional state is real; embed it as |0⟩.
        ComplexMatrix m(2, 2);
        m(0, 0) = 1.0;
        DensityMatrix q(std::move(m));
        auto align = ComplexMatrix::identity(2);
        auto out = apply_kraus(kraus, align, q);
        const double f = fidelity_with_plus_hat(out);
        return {std::move(out), f, std::move(kraus), std::move(align)};
    }
    auto align = align_for_state(rho);
    auto out = apply_kraus(kraus, align, rho);
    const double f = fidelity_with_plus_hat(out);
    return {std::move(out), f, std::move(kraus), std::move(align)};
}

// ---------------------------------------------------------------------------
// Dilation

/**
 * W = Σ_m K_m ⊗ |m⟩_E (output qubit is the slow factor), completed to a
 * square real orthogonal `unitary` whose first inDim columns are W.
 *
 * The input lives in the first inDim levels of an (outDim·envDim)-dimensional
 * space; the remaining padDim levels are never populated. Equivalently the
 * input register is ρ ⊕ 0 and the environment starts in |0⟩_E.
 */
struct RealDilation {
    ComplexMatrix isometry;
    ComplexMatrix unitary;
    std::size_t envDim = 0;
    std::size_t padDim = 0;
    std::size_t inDim = 0;
    std::size_t outDim = 0;

    /// ‖UᵀU − I‖_max.
    [[nodiscard]] double orthogonality_residual() const {
        return max_abs_diff(transpose(unitary) * unitary,
                            ComplexMatrix::identity(unitary.rows()));
    }

    /// ρ ↦ tr_E[U (ρ ⊕ 0) Uᵀ].
    [[nodiscard]] DensityMatrix apply(const DensityMatrix &rho) const {
        if (rho.dim() != inDim) {
            throw DimensionError("RealDilation::apply: state dimension " +
                                 std::to_string(rho.dim()) + ", expected " +
                                 std::to_string(inDim));
        }
        const std::size_t total = unitary.rows();
        ComplexMatrix embedded(total, total);
        for (std::size_t i = 0; i < inDim; ++i) {
            for (std::size_t j = 0; j < inDim; ++j) {
                embedded(i, j) = rho.matrix()(i, j);
            }
        }
        const ComplexMatrix evolved = unitary * embedded * transpose(unitary);
        return DensityMatrix(partial_trace(evolved, {outDim, envDim}, {0}));
    }
};

inline RealDilation dilate(const RealKrausSet &k) {
    const std::size_t e = k.operators().size();
    const std::size_t out = k.out_dim();
    const std::size_t d = k.in_dim();
    if (out * e < d) {
        throw DimensionError("dilate: output·environment smaller than input");
    }
    RealDilation dil;
    dil.envDim = e;
    dil.inDim = d;
    dil.outDim = out;
    dil.padDim = out * e - d;
    dil.isometry = ComplexMatrix(out * e, d);
    for (std::size_t m = 0; m < e; ++m) {
        const auto &op = k.operators()[m];
        for (std::size_t r = 0; r < out; ++r) {
            for (std::size_t c = 0; c < d; ++c) {
                dil.isometry(r * e + m, c) = op(r, c);
            }
        }
    }
    dil.unitary = orthonormal_complete(dil.isometry, 1e-12);
    return dil;
}

}  // namespace imagres
