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
 * Imaginarity measures and the universal/zero resource classifier.
 *
 * A state is a universal resource exactly when tr[ρρ*] = 0, equivalently
 * ‖ρ − ρ*‖₁ = 2. Every other state, however imaginary, is a zero resource.
 */

#pragma once

#include <cmath>
#include <string_view>

#include "imagres/linalg.hpp"
#include "imagres/states.hpp"

namespace imagres {

/// Threshold on tr[ρρ*] below which a state counts as maximally imaginary.
inline constexpr double kUniversalityTol = 1e-9;

enum class Verdict { Universal, Zero };

inline std::string_view to_string(Verdict v) {
    return v == Verdict::Universal ? "universal" : "zero";
}

struct ClassificationReport {
    double overlapConj = 0.0;    ///< tr[ρρ*] ∈ [0, 1]
    double imagTraceNorm = 0.0;  ///< ‖ρ − ρ*‖₁ ∈ [0, 2]
    double imagFidelity = 0.5;   ///< F_I ∈ [1/2, 1]
    double robustness = 0.0;     ///< robustness of imaginarity ∈ [0, 1]
    Verdict verdict = Verdict::Zero;
    double tolerance = kUniversalityTol;
};

/// tr[ρρ*] = Σ_jk ρ_jk · conj(ρ_kj).
inline double overlap_conj(const DensityMatrix &rho) {
    const auto &m = rho.matrix();
    cplx s{};
    for (std::size_t j = 0; j < m.rows(); ++j) {
        for (std::size_t k = 0; k < m.cols(); ++k) {
            s += m(j, k) * std::conj(m(k, j));
        }
    }
    return s.real();
}

/// ‖ρ − ρ*‖₁.
inline double imaginarity_trace_norm(const DensityMatrix &rho) {
    return trace_norm(rho.matrix() - conjugate(rho.matrix()));
}

/// Best fidelity with |+̂⟩ reachable by real operations: ½ + ¼‖ρ − ρ*‖₁.
inline double imaginarity_fidelity(const DensityMatrix &rho) {
    return 0.5 + 0.25 * imaginarity_trace_norm(rho);
}

/// Robustness of imaginarity, ½‖ρ − ρ*‖₁.
inline double robustness(const DensityMatrix &rho) {
    return 0.5 * imaginarity_trace_norm(rho);
}

inline ClassificationReport classify(const DensityMatrix &rho,
                                     double tolerance = kUniversalityTol) {
    ClassificationReport r;
    r.tolerance = tolerance;
    r.overlapConj = overlap_conj(rho);
    r.imagTraceNorm = imaginarity_trace_norm(rho);
    r.imagFidelity = 0.5 + 0.25 * r.imagTraceNorm;
    r.robustness = 0.5 * r.imagTraceNorm;
    r.verdict = r.overlapConj <= tolerance ? Verdict::Universal : Verdict::Zero;
    return r;
}

/// Qubit classifier: universal iff |y| ≥ 1 − tolerance (only |±i⟩ qualify).
inline Verdict classify_bloch(const BlochVector &b, double tolerance = kUniversalityTol) {
    return std::abs(b.y) >= 1.0 - tolerance ? Verdict::Universal : Verdict::Zero;
}

// ---------------------------------------------------------------------------
// Orthogonality vs. trace distance

struct OrthogonalityCheck {
    double overlap = 0.0;    ///< tr[ρσ]
    double traceDist = 0.0;  ///< ‖ρ − σ‖₁
    bool equivalenceHolds = false;
};

/**
 * Evaluates tr[ρσ] (direct product trace) and ‖ρ − σ‖₁ (eigenvalues)
 * independently and reports whether "overlap ≤ tol" and
 * "trace distance ≥ 2 − tol" agree.
 */
inline OrthogonalityCheck orthogonality_tracedist_oracle(const DensityMatrix &rho,
                                                         const DensityMatrix &sigma,
                                                         double tol = kDefaultTol) {
    if (rho.dim() != sigma.dim()) {
        throw DimensionError("orthogonality_tracedist_oracle: dimensions " +
                             std::to_string(rho.dim()) + " and " +
                             std::to_string(sigma.dim()));
    }
    OrthogonalityCheck out;
    out.overlap = trace(rho.matrix() * sigma.matrix()).real();
    out.traceDist = trace_norm(rho.matrix() - sigma.matrix());
    out.equivalenceHolds = (out.overlap <= tol) == (out.traceDist >= 2.0 - tol);
    return out;
}

struct DualWitness {
    ComplexMatrix M;  ///< projector onto the positive eigenspace of ρ − σ
    double value = 0.0;
};

/**
 * Optimal two-outcome measurement for distinguishing ρ from σ. With M the
 * projector onto the strictly positive eigenspace of ρ − σ (which is
 * traceless), 2·tr[(ρ − σ)M] = ‖ρ − σ‖₁.
 */
inline DualWitness dual_norm_witness(const DensityMatrix &rho, const DensityMatrix &sigma) {
    if (rho.dim() != sigma.dim()) {
        throw DimensionError("dual_norm_witness: dimensions " + std::to_string(rho.dim()) +
                             " and " + std::to_string(sigma.dim()));
    }
    const ComplexMatrix diff = rho.matrix() - sigma.matrix();
    const auto eig = hermitian_eig(diff);
    const std::size_t n = rho.dim();
    DualWitness w{ComplexMatrix(n, n), 0.0};
    for (std::size_t k = 0; k < n; ++k) {
        if (eig.values[k] > 0.0) {
            const auto v = column_of(eig.vectors, k);
            w.M += outer(v, v);
        }
    }
    w.value = 2.0 * trace(diff * w.M).real();
    return w;
}

}  // namespace imagres
