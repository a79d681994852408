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
#include <cstdint>
#include <numbers>
#include <random>

#include "imagres/linalg.hpp"

namespace imagres {

/**
 * Seeded generator used by every stochastic routine.
 *
 * The engine is std::mt19937_64 (fully specified by the standard). Uniform
 * and Gaussian variates are derived from its raw 64-bit output here rather
 * than through <random> distributions, whose algorithms are
 * implementation-defined, so a given seed produces identical numbers with
 * every standard library.
 */
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    /// Standard normal via Box–Muller.
    double gaussian() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        while (u1 <= 0.0) {
            u1 = uniform();
        }
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double phi = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(phi);
        has_spare_ = true;
        return r * std::cos(phi);
    }

    /// Complex normal with unit variance per component.
    cplx complex_gaussian() {
        const double re = gaussian();
        return {re, gaussian()};
    }

  private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

/// n×n matrix of complex standard normals.
inline ComplexMatrix random_complex_gaussian(std::size_t rows, std::size_t cols, Rng &rng) {
    ComplexMatrix g(rows, cols);
    for (auto &z : g.data()) {
        z = rng.complex_gaussian();
    }
    return g;
}

namespace detail {

// Gram–Schmidt on the columns of a square Gaussian matrix (the Q factor of a
// QR with positive diagonal R), which is Haar distributed.
inline ComplexMatrix gram_schmidt_columns(ComplexMatrix g) {
    const std::size_t n = g.rows();
    for (std::size_t j = 0; j < n; ++j) {
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t k = 0; k < j; ++k) {
                cplx dot{};
                for (std::size_t i = 0; i < n; ++i) {
                    dot += std::conj(g(i, k)) * g(i, j);
                }
                for (std::size_t i = 0; i < n; ++i) {
                    g(i, j) -= dot * g(i, k);
                }
            }
        }
        double norm = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            norm += std::norm(g(i, j));
        }
        norm = std::sqrt(norm);
        for (std::size_t i = 0; i < n; ++i) {
            g(i, j) /= norm;
        }
    }
    return g;
}

}  // namespace detail

/// Haar-random real orthogonal matrix.
inline ComplexMatrix random_orthogonal(std::size_t n, Rng &rng) {
    ComplexMatrix g(n, n);
    for (auto &z : g.data()) {
        z = rng.gaussian();
    }
    return detail::gram_schmidt_columns(std::move(g));
}

/// Haar-random unitary matrix.
inline ComplexMatrix random_unitary(std::size_t n, Rng &rng) {
    return detail::gram_schmidt_columns(random_complex_gaussian(n, n, rng));
}

/// Uniformly random unit vector in C^n.
inline std::vector<cplx> random_pure_amplitudes(std::size_t n, Rng &rng) {
    std::vector<cplx> v(n);
    double norm = 0.0;
    for (auto &z : v) {
        z = rng.complex_gaussian();
        norm += std::norm(z);
    }
    norm = std::sqrt(norm);
    for (auto &z : v) {
        z /= norm;
    }
    return v;
}

}  // namespace imagres
