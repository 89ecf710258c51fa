// Copyright 2026 The qfeedback Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qfeedback/measurement.hpp"
#include "qfeedback/operator.hpp"

namespace qfb {
namespace {

using testing::diag;
using testing::max_abs_diff;

const Complex kI(0.0, 1.0);

ComplexMatrix pauli_x() {
  ComplexMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

ComplexMatrix pauli_z() { return diag({1.0, -1.0}); }

ComplexMatrix pauli_y() {
  ComplexMatrix m(2, 2);
  m << 0, -kI, kI, 0;
  return m;
}

TEST(Tensor, PauliXZEntries) {
  const ComplexMatrix xz = tensor(pauli_x(), pauli_z());
  ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
  expected(0, 2) = 1.0;
  expected(1, 3) = -1.0;
  expected(2, 0) = 1.0;
  expected(3, 1) = -1.0;
  EXPECT_EQ(max_abs_diff(xz, expected), 0.0);
}

TEST(Tensor, IdentityAndDiagonal) {
  EXPECT_EQ(max_abs_diff(tensor(ComplexMatrix::Identity(2, 2), ComplexMatrix::Identity(3, 3)),
                         ComplexMatrix::Identity(6, 6)),
            0.0);
  EXPECT_EQ(max_abs_diff(tensor(diag({2.0, 3.0}), diag({5.0, 7.0})), diag({10.0, 14.0, 15.0, 21.0})), 0.0);
}

TEST(Tensor, MatchesLoopsAndIsAssociative) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const ComplexMatrix a = random_unitary(2, seed);
    const ComplexMatrix b = random_density(3, seed + 100).matrix();
    const ComplexMatrix c = random_unitary(2, seed + 200);
    EXPECT_LE(max_abs_diff(tensor(a, b), testing::kron_loops(a, b)), 1e-15);
    EXPECT_LE(max_abs_diff(tensor(tensor(a, b), c), tensor(a, tensor(b, c))), 1e-12);
    const std::vector<ComplexMatrix> factors{a, b, c};
    EXPECT_LE(max_abs_diff(tensor(factors), tensor(a, tensor(b, c))), 1e-12);
  }
}

TEST(PartialTrace, ProductState) {
  const ComplexMatrix ra = random_density(2, 11).matrix();
  const ComplexMatrix rb = random_density(3, 12).matrix();
  const CompositeSpace space({2, 3}, {"A", "B"});
  EXPECT_LE(max_abs_diff(partial_trace(tensor(ra, rb), space, {"A"}), ra), 1e-14);
  EXPECT_LE(max_abs_diff(partial_trace(tensor(ra, rb), space, {"B"}), rb), 1e-14);
}

TEST(PartialTrace, MaximallyMixedAndBell) {
  const CompositeSpace space({2, 2}, {"A", "B"});
  const ComplexMatrix half = ComplexMatrix::Identity(2, 2) / 2.0;
  const ComplexMatrix mixed = ComplexMatrix::Identity(4, 4) / 4.0;
  EXPECT_LE(max_abs_diff(partial_trace(mixed, space, {"A"}), half), 1e-15);
  EXPECT_LE(max_abs_diff(partial_trace(mixed, space, {"B"}), half), 1e-15);

  ComplexVector phi = ComplexVector::Zero(4);
  phi(0) = phi(3) = 1.0 / std::numbers::sqrt2;
  const ComplexMatrix bell = phi * phi.adjoint();
  EXPECT_LE(max_abs_diff(partial_trace(bell, space, {"A"}), half), 1e-15);
  EXPECT_LE(max_abs_diff(partial_trace(bell, space, {"B"}), half), 1e-15);
}

TEST(PartialTrace, MatchesLoopsAndPreservesTrace) {
  const CompositeSpace space({3, 4}, {"A", "B"});
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const ComplexMatrix rho = random_density(12, seed).matrix();
    const ComplexMatrix ra = partial_trace(rho, space, {"A"});
    const ComplexMatrix rb = partial_trace(rho, space, {"B"});
    EXPECT_LE(max_abs_diff(ra, testing::partial_trace_loops(rho, 3, 4, true)), 1e-14);
    EXPECT_LE(max_abs_diff(rb, testing::partial_trace_loops(rho, 3, 4, false)), 1e-14);
    EXPECT_LE(std::abs(ra.trace() - rho.trace()), 1e-10);
    EXPECT_LE(std::abs(rb.trace() - rho.trace()), 1e-10);
  }
}

TEST(PartialTrace, ThreeFactorsKeepOrder) {
  const ComplexMatrix a = random_density(2, 1).matrix();
  const ComplexMatrix b = random_density(3, 2).matrix();
  const ComplexMatrix c = random_density(2, 3).matrix();
  const CompositeSpace space({2, 3, 2}, {"S", "B1", "B2"});
  const ComplexMatrix full = tensor(tensor(a, b), c);
  EXPECT_LE(max_abs_diff(partial_trace(full, space, {"B2", "S"}), tensor(a, c)), 1e-14);
  EXPECT_LE(max_abs_diff(partial_trace(full, space, {"B1"}), b), 1e-14);
  EXPECT_THROW(partial_trace(full, space, {"X"}), std::out_of_range);
}

TEST(CompositeSpace, Embed) {
  const CompositeSpace space({2, 3}, {"S", "B"});
  EXPECT_EQ(space.total_dim(), 6);
  EXPECT_EQ(space.dim_of("B"), 3);
  EXPECT_LE(max_abs_diff(space.embed(pauli_x(), "S"), tensor(pauli_x(), ComplexMatrix::Identity(3, 3))), 0.0);
  const ComplexMatrix h = random_hamiltonian(3, 5).matrix();
  EXPECT_LE(max_abs_diff(space.embed(h, "B"), tensor(ComplexMatrix::Identity(2, 2), h)), 0.0);
  EXPECT_THROW(space.embed(h, "S"), DimensionMismatch);
}

TEST(Validation, KnownResiduals) {
  EXPECT_TRUE(validate_density(diag({0.5, 0.5})).ok());

  const auto trace = validate_density(diag({0.5, 0.4}));
  ASSERT_NE(trace.find("unit_trace"), nullptr);
  EXPECT_NEAR(trace.find("unit_trace")->residual, 0.1, 1e-15);

  const std::vector<ComplexMatrix> povm{0.6 * ComplexMatrix::Identity(2, 2), 0.3 * ComplexMatrix::Identity(2, 2)};
  const auto completeness = validate_povm(povm);
  ASSERT_NE(completeness.find("completeness"), nullptr);
  EXPECT_NEAR(completeness.find("completeness")->residual, 0.1, 1e-15);
}

TEST(Validation, RejectsNonHermitianAndNegative) {
  ComplexMatrix m = diag({0.5, 0.5});
  m(0, 1) = 0.1;
  EXPECT_NE(validate_hermitian(m).find("hermitian"), nullptr);
  EXPECT_THROW(HermitianOperator{m}, InvalidOperator);
  EXPECT_NE(validate_density(diag({1.2, -0.2})).find("positive_semidefinite"), nullptr);
  EXPECT_THROW(DensityOperator{diag({1.2, -0.2})}, InvalidOperator);
  EXPECT_NE(validate_hermitian(ComplexMatrix::Zero(2, 3)).find("square"), nullptr);
  try {
    DensityOperator{diag({0.5, 0.4})};
    FAIL() << "expected InvalidOperator";
  } catch (const InvalidOperator& e) {
    EXPECT_NE(e.report().find("unit_trace"), nullptr);
  }
}

TEST(Validation, SymmetrizesWithinTolerance) {
  ComplexMatrix m = pauli_y();
  m(0, 1) += 1e-12;
  const HermitianOperator h(m);
  EXPECT_EQ(max_abs_diff(h.matrix(), h.matrix().adjoint()), 0.0);
}

TEST(MatrixFunction, KnownValues) {
  EXPECT_LE(max_abs_diff(hermitian_exp(HermitianOperator::zero(3)).matrix(), ComplexMatrix::Identity(3, 3)), 1e-15);
  EXPECT_LE(max_abs_diff(hermitian_sqrt(HermitianOperator(diag({4.0, 9.0}))).matrix(), diag({2.0, 3.0})), 1e-14);
  const auto boltzmann = hermitian_matfunc(HermitianOperator(diag({0.0, 1.0})), [](double e) { return std::exp(-e); });
  EXPECT_LE(max_abs_diff(boltzmann.matrix(), diag({1.0, std::exp(-1.0)})), 1e-15);
}

TEST(MatrixFunction, ExpThenLogRoundTrip) {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const HermitianOperator h = random_hamiltonian(4, seed, 3.0);
    ASSERT_LE(eigenvalues(h.matrix()).cwiseAbs().maxCoeff(), 10.0);
    EXPECT_LE(max_abs_diff(hermitian_log(hermitian_exp(h)).matrix(), h.matrix()), 1e-8);
  }
}

TEST(MatrixFunction, SqrtClampAndReject) {
  const auto clamped = hermitian_sqrt(HermitianOperator(diag({1.0, -1e-12})));
  EXPECT_LE(max_abs_diff(clamped.matrix(), diag({1.0, 0.0})), 1e-15);
  EXPECT_THROW(hermitian_sqrt(HermitianOperator(diag({1.0, -1e-3}))), InvalidOperator);
  EXPECT_THROW(hermitian_log(HermitianOperator(diag({1.0, -1e-3}))), InvalidOperator);
}

TEST(MatrixFunction, SqrtSandwich) {
  const DensityOperator rho = random_density(3, 4);
  EXPECT_LE(max_abs_diff(matrix_sqrt_sandwich(HermitianOperator::identity(3), rho).matrix(), rho.matrix()), 1e-14);
  const ComplexMatrix p = diag({1.0, 0.0, 1.0});
  const DensityOperator diagonal = DensityOperator::diagonal(testing::rvec({0.5, 0.3, 0.2}));
  EXPECT_LE(max_abs_diff(matrix_sqrt_sandwich(HermitianOperator(p), diagonal).matrix(), p * diagonal.matrix() * p),
            1e-14);
}

TEST(Spectrum, AdjointProductsShareNonzeroSpectrum) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> normal;
  for (int trial = 0; trial < 50; ++trial) {
    ComplexMatrix l(3, 5);
    for (Index i = 0; i < l.rows(); ++i)
      for (Index j = 0; j < l.cols(); ++j) l(i, j) = Complex(normal(rng), normal(rng));
    const RealVector small = eigenvalues(l * l.adjoint());
    const RealVector large = eigenvalues(l.adjoint() * l);
    for (Index i = 0; i < 3; ++i) EXPECT_NEAR(small(i), large(i + 2), 1e-9);
    EXPECT_NEAR(large(0), 0.0, 1e-9);
    EXPECT_NEAR(large(1), 0.0, 1e-9);
  }
}

TEST(Entropy, OfSpectrum) {
  EXPECT_EQ(entropy_of_spectrum(testing::rvec({0.0, 1.0})), 0.0);
  EXPECT_NEAR(entropy_of_spectrum(testing::rvec({0.25, 0.25, 0.25, 0.25})), std::log(4.0), 1e-15);
  EXPECT_THROW(entropy_of_spectrum(testing::rvec({1.1, -0.1})), InvalidOperator);
}

} // namespace
} // namespace qfb
