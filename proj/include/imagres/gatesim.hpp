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
 * Exact simulation of unitaries by real orthogonal circuits with a resource
 * state.
 *
 * A SimulationInstance claims that for every data state |ψ⟩
 *
 *     U (ρ ⊗ |0⟩⟨0| ⊗ |ψ⟩⟨ψ|) Uᵀ = ρ′ ⊗ |0′⟩⟨0′| ⊗ V|ψ⟩⟨ψ|V†
 *
 * with U real orthogonal. Registers are always ordered
 * [resource, ancilla, data], resource being the slowest tensor factor.
 */

#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <vector>

#include "imagres/gates.hpp"
#include "imagres/linalg.hpp"
#include "imagres/measures.hpp"
#include "imagres/random.hpp"
#include "imagres/realops.hpp"
#include "imagres/states.hpp"

namespace imagres {

/// Maximum allowed ‖UᵀU − I‖_max and ‖V†V − I‖_max for instances.
inline constexpr double kInstanceTol = 1e-12;

struct SimulationInstance {
    ComplexMatrix unitary;   ///< U on [resource, ancilla, data]
    DensityMatrix resource;  ///< ρ
    std::size_t ancillaDim;  ///< input ancilla is |0…0⟩ = e_0
    ComplexMatrix target;    ///< V on the data register
    DensityMatrix residual;  ///< ρ′
    PureState outAncilla;    ///< |0′⟩, real

    SimulationInstance(ComplexMatrix u, DensityMatrix rho, std::size_t ancilla_dim,
                       ComplexMatrix v, DensityMatrix rho_out, PureState out_ancilla)
        : unitary(std::move(u)), resource(std::move(rho)), ancillaDim(ancilla_dim),
          target(std::move(v)), residual(std::move(rho_out)),
          outAncilla(std::move(out_ancilla)) {
        if (ancillaDim == 0 || !target.is_square() || !unitary.is_square()) {
            throw DimensionError("SimulationInstance: bad register shapes");
        }
        if (unitary.rows() != resource.dim() * ancillaDim * target.rows()) {
            throw DimensionError("SimulationInstance: U is " + unitary.shape() +
                                 " but registers are " + std::to_string(resource.dim()) +
                                 "·" + std::to_string(ancillaDim) + "·" +
                                 std::to_string(target.rows()));
        }
        if (residual.dim() != resource.dim() || outAncilla.dim() != ancillaDim) {
            throw DimensionError("SimulationInstance: output registers differ from input");
        }
        if (!is_real_orthogonal(unitary, kInstanceTol)) {
            throw InvariantError("SimulationInstance: U is not real orthogonal");
        }
        if (!is_unitary(target, kInstanceTol)) {
            throw InvariantError("SimulationInstance: V is not unitary");
        }
        if (!is_real(outAncilla.ket(), kInstanceTol)) {
            throw InvariantError("SimulationInstance: output ancilla is not real");
        }
    }

    [[nodiscard]] std::size_t data_dim() const noexcept { return target.rows(); }
};

/// Data-register probes: basis vectors, then (e_j + e_k)/√2 and
/// (e_j + i e_k)/√2 for j < k. Their projectors span all Hermitian matrices.
inline std::vector<std::vector<cplx>> exact_probe_family(std::size_t n) {
    std::vector<std::vector<cplx>> probes;
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<cplx> v(n);
        v[j] = 1.0;
        probes.push_back(std::move(v));
    }
    const double h = 1.0 / std::numbers::sqrt2;
    for (const cplx phase : {cplx{1.0, 0.0}, cplx{0.0, 1.0}}) {
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t k = j + 1; k < n; ++k) {
                std::vector<cplx> v(n);
                v[j] = h;
                v[k] = h * phase;
                probes.push_back(std::move(v));
            }
        }
    }
    return probes;
}

struct VerificationReport {
    bool holds = false;
    double maxDeviation = 0.0;
    std::size_t probeCount = 0;
    std::vector<DensityMatrix> residuals;  ///< tr_{ancilla,data} of the output, per probe
};

/**
 * Evaluates both sides of the simulation identity on the exact probe family
 * plus `random_probes` seeded random data states. `holds` iff the largest
 * entrywise deviation over all probes is at most `tolerance`.
 */
inline VerificationReport verify_instance(const SimulationInstance &inst,
                                          double tolerance = kDefaultTol,
                                          std::size_t random_probes = 50,
                                          std::uint64_t seed = 0) {
    const std::size_t r = inst.resource.dim();
    const std::size_t a = inst.ancillaDim;
    const std::size_t n = inst.data_dim();

    auto probes = exact_probe_family(n);
    Rng rng(seed);
    for (std::size_t i = 0; i < random_probes; ++i) {
        probes.push_back(random_pure_amplitudes(n, rng));
    }

    std::vector<cplx> zero_anc(a);
    zero_anc[0] = 1.0;
    const ComplexMatrix rho_anc = tensor(inst.resource.matrix(), outer(zero_anc, zero_anc));
    const ComplexMatrix rho_out_anc =
        tensor(inst.residual.matrix(),
               outer(inst.outAncilla.amplitudes(), inst.outAncilla.amplitudes()));
    const ComplexMatrix ut = transpose(inst.unitary);
    const std::size_t dims[] = {r, a, n};
    const std::size_t keep[] = {0};

    VerificationReport rep;
    rep.probeCount = probes.size();
    for (const auto &psi : probes) {
        const ComplexMatrix proj = outer(psi, psi);
        const ComplexMatrix lhs = inst.unitary * tensor(rho_anc, proj) * ut;
        const ComplexMatrix vpsi = inst.target * ComplexMatrix::column(psi);
        const ComplexMatrix rhs = tensor(rho_out_anc, vpsi * adjoint(vpsi));
        rep.maxDeviation = std::max(rep.maxDeviation, max_abs_diff(lhs, rhs));
        rep.residuals.emplace_back(partial_trace(lhs, dims, keep));
    }
    rep.holds = rep.maxDeviation <= tolerance;
    return rep;
}

/// True iff every extracted residual agrees with the first within `tol`.
inline bool residual_independence_check(const VerificationReport &rep, double tol = 1e-12) {
    for (const auto &res : rep.residuals) {
        if (max_abs_diff(res.matrix(), rep.residuals.front().matrix()) > tol) {
            return false;
        }
    }
    return true;
}

/// Runs verify_instance first; an instance that does not verify is rejected.
inline bool residual_independence_check(const SimulationInstance &inst, double tol = 1e-12) {
    const auto rep = verify_instance(inst, kDefaultTol);
    if (!rep.holds) {
        throw InvariantError("residual_independence_check: instance does not verify");
    }
    return residual_independence_check(rep, tol);
}

struct HsConsistency {
    double lhs = 0.0;                ///< tr[ρρ*]
    std::vector<double> rhsValues;  ///< tr[ρ′ρ′*]·|⟨ψ|VᵀV|ψ⟩|² per sample
    bool holds = false;
};

/// Checks tr[ρρ*] = tr[ρ′ρ′*]·|⟨ψ|VᵀV|ψ⟩|² on seeded random |ψ⟩.
inline HsConsistency hs_consistency(const SimulationInstance &inst, std::size_t samples,
                                    std::uint64_t seed, double tol = kDefaultTol) {
    HsConsistency out;
    out.lhs = overlap_conj(inst.resource);
    const double res = overlap_conj(inst.residual);
    const ComplexMatrix gram = transpose(inst.target) * inst.target;
    Rng rng(seed);
    out.holds = true;
    for (std::size_t s = 0; s < samples; ++s) {
        const auto psi = random_pure_amplitudes(inst.data_dim(), rng);
        const ComplexMatrix ket = ComplexMatrix::column(psi);
        const cplx amp = (adjoint(ket) * gram * ket)(0, 0);
        const double rhs = res * std::norm(amp);
        out.rhsValues.push_back(rhs);
        out.holds = out.holds && std::abs(rhs - out.lhs) <= tol;
    }
    return out;
}

/// Instance with (ρ*, V*, ρ′*) and the same real U.
inline SimulationInstance conjugate_instance(const SimulationInstance &inst) {
    std::vector<cplx> anc = inst.outAncilla.amplitudes();
    for (auto &z : anc) {
        z = std::conj(z);
    }
    return SimulationInstance(inst.unitary, conj_state(inst.resource), inst.ancillaDim,
                              conjugate(inst.target), conj_state(inst.residual),
                              PureState(std::move(anc)));
}

/// U = I_resource ⊗ I_ancilla ⊗ O, V = e^{iφ}·O: simulable with any resource.
inline SimulationInstance real_target_instance(const DensityMatrix &rho, const ComplexMatrix &o,
                                               double global_phase = 0.0,
                                               std::size_t ancilla_dim = 1) {
    const ComplexMatrix u =
        tensor({ComplexMatrix::identity(rho.dim()), ComplexMatrix::identity(ancilla_dim), o});
    return SimulationInstance(u, rho, ancilla_dim, o * std::polar(1.0, global_phase), rho,
                              PureState::basis(ancilla_dim, 0));
}

// ---------------------------------------------------------------------------
// Phase rigidity

struct PhaseRigidityResult {
    ComplexMatrix gram;  ///< W = VᵀV
    bool isPhaseMultipleOfIdentity = false;
    double eta = 0.0;  ///< arg of the common diagonal, in (−π, π]
    std::optional<ComplexMatrix> realified;  ///< e^{−iη/2} V
    bool realifiedIsReal = false;
};

/**
 * Tests whether VᵀV = e^{iη} I. When it is, V′ = e^{−iη/2} V satisfies
 * V′ᵀV′ = I and, being unitary, is real orthogonal (up to an overall sign
 * from the η branch).
 */
inline PhaseRigidityResult phase_rigidity(const ComplexMatrix &v, double tolerance = kDefaultTol) {
    if (!is_unitary(v, std::max(tolerance, kInstanceTol))) {
        throw InvariantError("phase_rigidity: input is not unitary");
    }
    PhaseRigidityResult out;
    out.gram = transpose(v) * v;
    const std::size_t n = v.rows();
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
        for (std::size_t j = 0; j < n && ok; ++j) {
            if (i != j && std::abs(out.gram(i, j)) > tolerance) {
                ok = false;
            }
        }
        if (std::abs(out.gram(i, i) - out.gram(0, 0)) > tolerance) {
            ok = false;
        }
    }
    out.isPhaseMultipleOfIdentity = ok;
    if (!ok) {
        return out;
    }
    cplx mean{};
    for (std::size_t i = 0; i < n; ++i) {
        mean += out.gram(i, i);
    }
    out.eta = std::arg(mean);
    if (out.eta <= -std::numbers::pi) {
        out.eta = std::numbers::pi;
    }
    ComplexMatrix vp = v * std::polar(1.0, -out.eta / 2.0);
    out.realifiedIsReal = is_real(vp, tolerance) &&
                          max_abs_diff(transpose(vp) * vp, ComplexMatrix::identity(n)) <=
                              tolerance;
    out.realified = std::move(vp);
    return out;
}

// ---------------------------------------------------------------------------
// Gadgets

/**
 * S gate with a catalytic |+i⟩: U = I ⊗ |0⟩⟨0| + G† ⊗ |1⟩⟨1| on
 * [resource(2), data(2)] (ancilla register of dimension one). Since
 * G†|+i⟩ = i|+i⟩, U(|+i⟩ ⊗ |ψ⟩) = |+i⟩ ⊗ S|ψ⟩.
 */
inline SimulationInstance s_gadget(const DensityMatrix &catalyst = from_pure(plus_i())) {
    using namespace gates;
    const ComplexMatrix u = tensor(I2(), P0()) + tensor(Gdg(), P1());
    return SimulationInstance(u, catalyst, 1, S(), catalyst, PureState::basis(1, 0));
}

/// Λ(S) with a catalytic |+i⟩: U = I ⊗ (I₄ − |11⟩⟨11|) + G† ⊗ |11⟩⟨11|.
inline SimulationInstance cs_gadget(const DensityMatrix &catalyst = from_pure(plus_i())) {
    using namespace gates;
    const ComplexMatrix p11 = tensor(P1(), P1());
    const ComplexMatrix u =
        tensor(I2(), ComplexMatrix::identity(4) - p11) + tensor(Gdg(), p11);
    return SimulationInstance(u, catalyst, 1, CS(), catalyst, PureState::basis(1, 0));
}

struct GadgetCheck {
    double matrixDeviation = 0.0;  ///< deviation of the gate identity itself
    bool gadgetHolds = false;      ///< composed real circuit verifies
    double gadgetDeviation = 0.0;
};

/// Λ(Z) = Λ(S)², both as matrices and by running the Λ(S) gadget twice.
inline GadgetCheck cz_from_cs(double tolerance = 1e-12) {
    const auto cs = cs_gadget();
    const SimulationInstance twice(cs.unitary * cs.unitary, cs.resource, 1, gates::CZ(),
                                   cs.residual, cs.outAncilla);
    const auto rep = verify_instance(twice, tolerance);
    return {max_abs_diff(gates::CS() * gates::CS(), gates::CZ()), rep.holds, rep.maxDeviation};
}

/**
 * R_x(θ) = S† R_y(θ) S, as a matrix identity and as a real circuit:
 * U_Sᵀ (I ⊗ R_y(θ)) U_S with the S gadget's U_S, sharing one |+i⟩.
 */
inline GadgetCheck rx_from_s(double theta, double tolerance = 1e-12) {
    using namespace gates;
    const double dev = max_abs_diff(Sdg() * Ry(theta) * S(), Rx(theta));
    const auto s = s_gadget();
    const ComplexMatrix u = transpose(s.unitary) * tensor(I2(), Ry(theta)) * s.unitary;
    const SimulationInstance inst(u, s.resource, 1, Rx(theta), s.residual, s.outAncilla);
    const auto rep = verify_instance(inst, tolerance);
    return {dev, rep.holds, rep.maxDeviation};
}

// ---------------------------------------------------------------------------
// End-to-end

struct PipelineResult {
    ClassificationReport report;
    DensityMatrix converted;  ///< output of the optimal real conversion
    double bestFidelity;      ///< ⟨+̂|converted|+̂⟩
    std::optional<bool> gadgetVerified;  ///< only for universal resources
    double gadgetDeviation = 0.0;
};

/**
 * classify → convert to |+̂⟩ → use the converted qubit as the S gadget's
 * catalyst → verify. Zero resources stop after the conversion and report the
 * best achievable fidelity.
 */
inline PipelineResult theorem1_pipeline(const DensityMatrix &rho, std::uint64_t seed,
                                        double tolerance = kUniversalityTol,
                                        double gadget_tolerance = 1e-12) {
    const auto report = classify(rho, tolerance);
    auto conv = convert_to_plus_hat(rho);
    PipelineResult out{report, conv.output, conv.fidelity, std::nullopt, 0.0};
    if (report.verdict == Verdict::Universal) {
        const auto inst = s_gadget(conv.output);
        const auto rep = verify_instance(inst, gadget_tolerance, 50, seed);
        out.gadgetVerified = rep.holds;
        out.gadgetDeviation = rep.maxDeviation;
    }
    return out;
}

}  // namespace imagres
