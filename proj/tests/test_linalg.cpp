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

#include "imagres/linalg.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <numbers>

#include "gtest/gtest.h"

#include "imagres/gates.hpp"
#include "imagres/random.hpp"
#include "imagres/states.hpp"

using namespace imagres;

namespace {

const cplx kI{0.0, 1.0};

Eigen::MatrixXcd to_eigen(const ComplexMatrix &m) {
    Eigen::MatrixXcd e(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            e(i, j) = m(i, j);
        }
    }
    return e;
}

ComplexMatrix random_hermitian(std::size_t n, Rng &rng) {
    const auto g = random_complex_gaussian(n, n, rng);
    return (g + adjoint(g)) * cplx{0.5};
}

ComplexMatrix random_skew(std::size_t n, Rng &rng) {
    ComplexMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double x = rng.gaussian();
            a(i, j) = x;
            a(j, i) = -x;
        }
    }
    return a;
}

// Duality oracle: max over sums of eigenprojectors P of |tr[m(2P − I)]|,
// with the eigenvectors taken from Eigen rather than our Jacobi solver.
double trace_norm_by_duality(const ComplexMatrix &m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(to_eigen(m));
    const auto &vecs = es.eigenvectors();
    const std::size_t n = m.rows();
    const Eigen::MatrixXcd em = to_eigen(m);
    double best = 0.0;
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
        Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(n, n);
        for (std::size_t k = 0; k < n; ++k) {
            if (mask & (std::size_t{1} << k)) {
                p += vecs.col(k) * vecs.col(k).adjoint();
            }
        }
        const Eigen::MatrixXcd y = 2.0 * p - Eigen::MatrixXcd::Identity(n, n);
        best = std::max(best, std::abs((em * y).trace()));
    }
    return best;
}

}  // namespace

TEST(Matmul, IdentityAndInvolutions) {
    using namespace gates;
    EXPECT_LE(max_abs_diff(I2() * H(), H()), 1e-15);
    EXPECT_LE(max_abs_diff(H() * H(), I2()), 1e-15);
    EXPECT_LE(max_abs_diff(S() * S(), Z()), 0.0);
}

TEST(Matmul, RejectsShapeMismatch) {
    const ComplexMatrix a(2, 3);
    const ComplexMatrix b(2, 3);
    try {
        (void)matmul(a, b);
        FAIL() << "expected DimensionError";
    } catch (const DimensionError &e) {
        EXPECT_NE(std::string(e.what()).find("2x3 * 2x3"), std::string::npos);
    }
}

TEST(Matmul, Associativity) {
    Rng rng(11);
    for (int t = 0; t < 20; ++t) {
        const auto a = random_complex_gaussian(3, 4, rng);
        const auto b = random_complex_gaussian(4, 2, rng);
        const auto c = random_complex_gaussian(2, 5, rng);
        EXPECT_LE(max_abs_diff((a * b) * c, a * (b * c)), 1e-12);
    }
}

TEST(Conjugation, Basics) {
    using namespace gates;
    EXPECT_EQ(conjugate(S()), (ComplexMatrix{{1.0, 0.0}, {0.0, -kI}}));
    EXPECT_EQ(transpose(H()), H());
    EXPECT_LE(max_abs_diff(adjoint(CS()) * CS(), ComplexMatrix::identity(4)), 0.0);
    Rng rng(3);
    const auto m = random_complex_gaussian(3, 2, rng);
    EXPECT_EQ(adjoint(m), conjugate(transpose(m)));
}

TEST(Tensor, Basics) {
    using namespace gates;
    EXPECT_EQ(tensor(I2(), I2()), ComplexMatrix::identity(4));

    const auto t = tensor(P0(), Z());
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) {
            const cplx expect = (i < 2 && j < 2) ? Z()(i, j) : cplx{};
            EXPECT_EQ(t(i, j), expect) << i << "," << j;
        }
    }

    // Λ(S) = |0⟩⟨0| ⊗ I + |1⟩⟨1| ⊗ S, entry by entry.
    const ComplexMatrix cs_literal{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, kI}};
    EXPECT_EQ(tensor(P1(), S()) + tensor(P0(), I2()), cs_literal);
    EXPECT_EQ(CS(), cs_literal);
}

TEST(Tensor, MixedProductProperty) {
    Rng rng(5);
    for (int t = 0; t < 50; ++t) {
        const std::size_t n1 = 2 + t % 3;
        const std::size_t n2 = 2 + (t / 3) % 3;
        const auto a = random_complex_gaussian(n1, n1, rng);
        const auto b = random_complex_gaussian(n2, n2, rng);
        const auto c = random_complex_gaussian(n1, n1, rng);
        const auto d = random_complex_gaussian(n2, n2, rng);
        EXPECT_LE(max_abs_diff(tensor(a, b) * tensor(c, d), tensor(a * c, b * d)), 1e-12);
    }
}

TEST(PartialTrace, ProductStateFactorizes) {
    const auto rho = gen_random_density(3, 1).matrix();
    const auto sigma = gen_random_density(2, 2).matrix() * cplx{0.7};  // tr σ = 0.7
    const auto red = partial_trace(tensor(rho, sigma), {3, 2}, {0});
    EXPECT_LE(max_abs_diff(red, rho * cplx{0.7}), 1e-15);
    const auto red1 = partial_trace(tensor(rho, sigma), {3, 2}, {1});
    EXPECT_LE(max_abs_diff(red1, sigma), 1e-15);
}

TEST(PartialTrace, IdentityAndErrors) {
    EXPECT_EQ(partial_trace(ComplexMatrix::identity(4), {2, 2}, {1}),
              ComplexMatrix::identity(2) * cplx{2.0});
    EXPECT_THROW((void)partial_trace(ComplexMatrix::identity(4), {2, 3}, {0}), DimensionError);
    EXPECT_THROW((void)partial_trace(ComplexMatrix::identity(4), {2, 2}, {2}), DimensionError);
}

TEST(PartialTrace, MiddleSubsystemAndTracePreservation) {
    Rng rng(8);
    for (int t = 0; t < 20; ++t) {
        const auto m = random_complex_gaussian(12, 12, rng);
        const auto red = partial_trace(m, {2, 3, 2}, {0, 2});
        EXPECT_LE(std::abs(trace(red) - trace(m)), 1e-12);
        // Brute force over the traced middle index.
        for (std::size_t a = 0; a < 2; ++a) {
            for (std::size_t c = 0; c < 2; ++c) {
                for (std::size_t a2 = 0; a2 < 2; ++a2) {
                    for (std::size_t c2 = 0; c2 < 2; ++c2) {
                        cplx s{};
                        for (std::size_t b = 0; b < 3; ++b) {
                            s += m(a * 6 + b * 2 + c, a2 * 6 + b * 2 + c2);
                        }
                        EXPECT_LE(std::abs(red(a * 2 + c, a2 * 2 + c2) - s), 1e-13);
                    }
                }
            }
        }
    }
}

TEST(HermitianEig, SmallCases) {
    auto e = hermitian_eig(gates::Z());
    EXPECT_NEAR(e.values[0], 1.0, 1e-15);
    EXPECT_NEAR(e.values[1], -1.0, 1e-15);

    const auto p = from_pure(plus_i()).matrix();
    e = hermitian_eig(p);
    EXPECT_NEAR(e.values[0], 1.0, 1e-15);
    EXPECT_NEAR(e.values[1], 0.0, 1e-15);

    for (double y : {0.3, -0.8, 1.0}) {
        const auto rho = state_of(BlochVector(0.0, y, 0.0)).matrix();
        e = hermitian_eig(rho - conjugate(rho));
        EXPECT_NEAR(e.values[0], std::abs(y), 1e-15);
        EXPECT_NEAR(e.values[1], -std::abs(y), 1e-15);
    }
}

TEST(HermitianEig, RejectsNonHermitian) {
    const ComplexMatrix m{{0.0, 1.0}, {0.0, 0.0}};
    EXPECT_THROW((void)hermitian_eig(m), InvariantError);
    EXPECT_THROW((void)trace_norm(m), InvariantError);
}

TEST(HermitianEig, MatchesEigenOracleAndReconstructs) {
    Rng rng(1234);
    for (std::size_t n = 1; n <= 12; ++n) {
        for (int t = 0; t < 10; ++t) {
            const auto m = random_hermitian(n, rng);
            const auto e = hermitian_eig(m);
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(to_eigen(m));
            for (std::size_t k = 0; k < n; ++k) {
                // Eigen sorts ascending.
                EXPECT_NEAR(e.values[k], es.eigenvalues()(n - 1 - k), 1e-12);
                if (k > 0) {
                    EXPECT_GE(e.values[k - 1], e.values[k]);
                }
            }
            std::vector<cplx> d(e.values.begin(), e.values.end());
            const auto rec = e.vectors * ComplexMatrix::diagonal(d) * adjoint(e.vectors);
            EXPECT_LE(max_abs_diff(rec, m), 1e-12);
            EXPECT_LE(unitarity_residual(e.vectors), 1e-13);
        }
    }
}

TEST(HermitianEig, DegenerateSpectrum) {
    Rng rng(77);
    const auto u = random_unitary(6, rng);
    const std::vector<cplx> d{2.0, 2.0, 2.0, -1.0, -1.0, 0.0};
    const auto m = u * ComplexMatrix::diagonal(d) * adjoint(u);
    const auto e = hermitian_eig(m);
    const std::vector<double> sorted{2.0, 2.0, 2.0, 0.0, -1.0, -1.0};
    for (std::size_t k = 0; k < 6; ++k) {
        EXPECT_NEAR(e.values[k], sorted[k], 1e-13);
    }
    EXPECT_LE(unitarity_residual(e.vectors), 1e-13);
}

TEST(TraceNorm, KnownValues) {
    const auto p = from_pure(plus_i()).matrix();
    EXPECT_NEAR(trace_norm(p - conjugate(p)), 2.0, 1e-14);
    const auto real_state = gen_random_density(4, 9).matrix();
    const auto r = real_part(real_state) * cplx{1.0 / trace(real_part(real_state)).real()};
    EXPECT_EQ(trace_norm(r - conjugate(r)), 0.0);
    for (const auto &[x, y, z] : std::vector<std::array<double, 3>>{
             {0.1, 0.5, -0.2}, {0.0, -0.9, 0.1}, {0.6, 0.8, 0.0}}) {
        const auto rho = state_of(BlochVector(x, y, z)).matrix();
        EXPECT_NEAR(trace_norm(rho - conjugate(rho)), 2.0 * std::abs(y), 1e-14);
    }
}

TEST(TraceNorm, DualityOracle) {
    Rng rng(42);
    for (std::size_t n = 1; n <= 8; ++n) {
        for (int t = 0; t < 5; ++t) {
            const auto m = random_hermitian(n, rng);
            EXPECT_NEAR(trace_norm(m), trace_norm_by_duality(m), 1e-10) << "n=" << n;
        }
    }
    // Also on differences of states, the case the toolkit cares about.
    for (std::size_t n = 2; n <= 6; ++n) {
        const auto rho = gen_random_density(n, 100 + n).matrix();
        EXPECT_NEAR(trace_norm(rho - conjugate(rho)),
                    trace_norm_by_duality(rho - conjugate(rho)), 1e-10);
    }
}

TEST(OrthonormalComplete, FirstBasisVector) {
    ComplexMatrix e0(2, 1);
    e0(0, 0) = 1.0;
    const auto o = orthonormal_complete(e0);
    EXPECT_TRUE(is_real_orthogonal(o, 1e-12));
    EXPECT_EQ(o(0, 0), cplx{1.0});
    EXPECT_EQ(o(1, 0), cplx{0.0});
}

TEST(OrthonormalComplete, SquareInputIsUnchanged) {
    Rng rng(4);
    const auto q = random_orthogonal(4, rng);
    EXPECT_EQ(orthonormal_complete(q), q);
}

TEST(OrthonormalComplete, ExtendsThreeColumnsInDimensionFour) {
    // Stacked isometry of the d = 3 pairing channel: rows (out, env).
    ComplexMatrix w(4, 3);
    w(1 * 2 + 0, 0) = 1.0;  // K_0 |0⟩ = |1⟩, env 0
    w(0 * 2 + 0, 1) = 1.0;  // K_0 |1⟩ = |0⟩, env 0
    w(0 * 2 + 1, 2) = 1.0;  // K_1 |2⟩ = |0⟩, env 1
    const auto o = orthonormal_complete(w);
    EXPECT_LE(max_abs_diff(transpose(o) * o, ComplexMatrix::identity(4)), 1e-12);
    for (std::size_t j = 0; j < 3; ++j) {
        for (std::size_t i = 0; i < 4; ++i) {
            EXPECT_EQ(o(i, j), w(i, j));
        }
    }
    // Only the fourth basis vector is left over.
    EXPECT_NEAR(std::abs(o(3, 3).real()), 1.0, 1e-15);
}

TEST(OrthonormalComplete, RandomPartialBases) {
    Rng rng(99);
    for (std::size_t n = 1; n <= 9; ++n) {
        for (std::size_t k = 0; k <= n; ++k) {
            const auto q = random_orthogonal(n, rng);
            ComplexMatrix cols(n, k);
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = 0; j < k; ++j) {
                    cols(i, j) = q(i, j);
                }
            }
            const auto o = orthonormal_complete(cols);
            EXPECT_LE(max_abs_diff(transpose(o) * o, ComplexMatrix::identity(n)), 1e-12);
            EXPECT_EQ(max_imag(o), 0.0);
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = 0; j < k; ++j) {
                    EXPECT_EQ(o(i, j), cols(i, j));  // bitwise copy
                }
            }
        }
    }
}

TEST(OrthonormalComplete, RejectsBadInput) {
    ComplexMatrix c(2, 1);
    c(0, 0) = 2.0;
    EXPECT_THROW((void)orthonormal_complete(c), InvariantError);
    ComplexMatrix ci(2, 1);
    ci(0, 0) = kI;
    EXPECT_THROW((void)orthonormal_complete(ci), InvariantError);
    EXPECT_THROW((void)orthonormal_complete(ComplexMatrix(2, 3)), DimensionError);
}

TEST(SkewCanonical, AlreadyCanonical) {
    const double t = 0.7;
    const ComplexMatrix a{{0.0, -t}, {t, 0.0}};
    const auto f = skew_canonical(a);
    ASSERT_EQ(f.blockValues.size(), 1u);
    EXPECT_NEAR(f.blockValues[0], t, 1e-15);
    EXPECT_LE(max_abs_diff(f.orthogonal, ComplexMatrix::identity(2)), 1e-15);
    EXPECT_EQ(f.residualDim, 0u);
}

TEST(SkewCanonical, FlippedOrientation) {
    const double t = 1.3;
    const ComplexMatrix a{{0.0, t}, {-t, 0.0}};
    const auto f = skew_canonical(a);
    ASSERT_EQ(f.blockValues.size(), 1u);
    EXPECT_NEAR(f.blockValues[0], t, 1e-15);
    const ComplexMatrix reflect{{1.0, 0.0}, {0.0, -1.0}};
    EXPECT_LE(max_abs_diff(f.orthogonal, reflect), 1e-15);
    EXPECT_LE(max_abs_diff(f.orthogonal * a * transpose(f.orthogonal), f.block_matrix()), 1e-15);
}

TEST(SkewCanonical, ImaginaryPartOfTwoBlockState) {
    const double h = 1.0 / std::numbers::sqrt2;
    const std::vector<cplx> va{h, h * kI, 0.0, 0.0};
    const std::vector<cplx> vb{0.0, 0.0, h, h * kI};
    const auto rho = outer(va, va) * cplx{0.5} + outer(vb, vb) * cplx{0.5};
    const auto f = skew_canonical(imag_part(rho));
    ASSERT_EQ(f.blockValues.size(), 2u);
    EXPECT_NEAR(f.blockValues[0], 0.25, 1e-15);
    EXPECT_NEAR(f.blockValues[1], 0.25, 1e-15);
}

TEST(SkewCanonical, RandomReconstruction) {
    Rng rng(2024);
    for (int t = 0; t < 200; ++t) {
        const std::size_t n = 2 + t % 8;  // 2..9
        const auto a = random_skew(n, rng);
        const auto f = skew_canonical(a);
        const auto &o = f.orthogonal;
        EXPECT_LE(max_abs_diff(transpose(o) * o, ComplexMatrix::identity(n)), 1e-12);
        EXPECT_LE(max_abs_diff(transpose(o) * f.block_matrix() * o, a), 1e-10);
        EXPECT_EQ(f.blockValues.size(), n / 2);
        EXPECT_EQ(f.residualDim, n % 2);
        double sum = 0.0;
        for (std::size_t m = 0; m < f.blockValues.size(); ++m) {
            EXPECT_GE(f.blockValues[m], 0.0);
            if (m > 0) {
                EXPECT_GE(f.blockValues[m - 1], f.blockValues[m] - 1e-12);
            }
            sum += 2.0 * f.blockValues[m];
        }
        EXPECT_NEAR(sum, trace_norm(a * kI), 1e-10);
    }
}

TEST(SkewCanonical, RankDeficientAndDegenerate) {
    Rng rng(31);
    for (std::size_t n : {4u, 5u, 7u, 8u}) {
        // One repeated block value plus a nontrivial kernel.
        const auto q = random_orthogonal(n, rng);
        ComplexMatrix b(n, n);
        b(0, 1) = -0.4;
        b(1, 0) = 0.4;
        b(2, 3) = -0.4;
        b(3, 2) = 0.4;
        const auto a = transpose(q) * b * q;
        const auto f = skew_canonical(a);
        EXPECT_LE(max_abs_diff(transpose(f.orthogonal) * f.block_matrix() * f.orthogonal, a),
                  1e-10);
        EXPECT_NEAR(f.blockValues[0], 0.4, 1e-12);
        EXPECT_NEAR(f.blockValues[1], 0.4, 1e-12);
        for (std::size_t m = 2; m < f.blockValues.size(); ++m) {
            EXPECT_EQ(f.blockValues[m], 0.0);
        }
    }
    const auto zero = skew_canonical(ComplexMatrix(3, 3));
    EXPECT_EQ(zero.blockValues, std::vector<double>{0.0});
    EXPECT_TRUE(is_real_orthogonal(zero.orthogonal, 1e-15));
}

TEST(SkewCanonical, RejectsNonSkew) {
    EXPECT_THROW((void)skew_canonical(ComplexMatrix::identity(2)), InvariantError);
    EXPECT_THROW((void)skew_canonical(ComplexMatrix{{0.0, kI}, {kI, 0.0}}), InvariantError);
}
