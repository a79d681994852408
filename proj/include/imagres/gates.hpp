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

#pragma once

#include <cmath>
#include <numbers>

#include "imagres/linalg.hpp"

namespace imagres::gates {

inline ComplexMatrix I2() { return ComplexMatrix::identity(2); }

inline ComplexMatrix X() { return {{0.0, 1.0}, {1.0, 0.0}}; }

inline ComplexMatrix Y() { return {{0.0, cplx{0.0, -1.0}}, {cplx{0.0, 1.0}, 0.0}}; }

inline ComplexMatrix Z() { return {{1.0, 0.0}, {0.0, -1.0}}; }

inline ComplexMatrix H() {
    const double h = 1.0 / std::numbers::sqrt2;
    return {{h, h}, {h, -h}};
}

inline ComplexMatrix S() { return {{1.0, 0.0}, {0.0, cplx{0.0, 1.0}}}; }

inline ComplexMatrix Sdg() { return {{1.0, 0.0}, {0.0, cplx{0.0, -1.0}}}; }

/// Real rotation −iY = [[0, −1], [1, 0]]; G|±i⟩ = ∓i|±i⟩.
inline ComplexMatrix G() { return {{0.0, -1.0}, {1.0, 0.0}}; }

/// Gᵀ = [[0, 1], [−1, 0]]; G†|+i⟩ = i|+i⟩ and G†|−i⟩ = −i|−i⟩.
inline ComplexMatrix Gdg() { return {{0.0, 1.0}, {-1.0, 0.0}}; }

/// |0⟩⟨0| and |1⟩⟨1|.
inline ComplexMatrix P0() { return {{1.0, 0.0}, {0.0, 0.0}}; }
inline ComplexMatrix P1() { return {{0.0, 0.0}, {0.0, 1.0}}; }

/// Controlled-U on two qubits, control first: |0⟩⟨0| ⊗ I + |1⟩⟨1| ⊗ U.
inline ComplexMatrix controlled(const ComplexMatrix &u) {
    return tensor(P0(), ComplexMatrix::identity(u.rows())) + tensor(P1(), u);
}

/// Λ(S).
inline ComplexMatrix CS() { return controlled(S()); }

/// Λ(Z) = diag(1, 1, 1, −1).
inline ComplexMatrix CZ() { return controlled(Z()); }

/// CCZ = (I⊗I − |11⟩⟨11|) ⊗ I + |11⟩⟨11| ⊗ Z.
inline ComplexMatrix CCZ() {
    const ComplexMatrix p11 = tensor(P1(), P1());
    return tensor(ComplexMatrix::identity(4) - p11, I2()) + tensor(p11, Z());
}

/// exp(−iθY/2), real.
inline ComplexMatrix Ry(double theta) {
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    return {{c, -s}, {s, c}};
}

/// exp(−iθX/2).
inline ComplexMatrix Rx(double theta) {
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    return {{c, cplx{0.0, -s}}, {cplx{0.0, -s}, c}};
}

}  // namespace imagres::gates
