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

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qfeedback/information.hpp"

namespace qfb {
namespace {

using testing::diag;
using testing::max_abs_diff;
using testing::rvec;
using testing::xlogx;

MeasurementChannel noisy_z(double eps) {
  return MeasurementChannel({diag({std::sqrt(1.0 - eps), std::sqrt(eps)}), diag({std::sqrt(eps), std::sqrt(1.0 - eps)})});
}

TEST(Entropy, VonNeumannExamples) {
  EXPECT_NEAR(von_neumann_entropy(DensityOperator::pure(random_unitary(3, 1).col(0))), 0.0, 1e-12);
  EXPECT_NEAR(von_neumann_entropy(DensityOperator::maximally_mixed(5)), std::log(5.0), 1e-14);
  EXPECT_NEAR(von_neumann_entropy(DensityOperator::diagonal(rvec({0.7, 0.3}))), 0.6108643020548935, 1e-15);
}

TEST(Entropy, ShannonExamples) {
  EXPECT_EQ(shannon_entropy(std::vector<double>{1.0, 0.0}), 0.0);
  EXPECT_NEAR(shannon_entropy(std::vector<double>{0.5, 0.5}), std::numbers::ln2, 1e-15);
  EXPECT_NEAR(shannon_entropy(std::vector<double>{0.5, 0.25, 0.25}), 1.5 * std::numbers::ln2, 1e-15);
}

TEST(Entropy, UnitaryInvariance) {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const auto rho = random_density(4, seed, 2);
    const ComplexMatrix u = random_unitary(4, seed + 50);
    EXPECT_NEAR(von_neumann_entropy(DensityOperator(u * rho.matrix() * u.adjoint())), von_neumann_entropy(rho), 1e-10);
  }
}

TEST(HTilde, KnownValues) {
  const std::vector<double> weights{0.5, 0.5};
  const auto rho = random_density(3, 8);
  EXPECT_NEAR(h_tilde(rho, MeasurementChannel::uninformative(3, weights)),
              von_neumann_entropy(rho) + std::numbers::ln2, 1e-12);
  const auto diagonal = DensityOperator::diagonal(rvec({0.7, 0.3}));
  EXPECT_NEAR(h_tilde(diagonal, MeasurementChannel::computational_basis(2)), -xlogx(0.7) - xlogx(0.3), 1e-12);
}

TEST(HTilde, DecomposedMatchesDirect) {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const auto rho = random_density(3, seed);
    const auto channel = random_channel(3, 2 + seed % 3, seed + 99);
    EXPECT_NEAR(h_tilde(rho, channel), h_tilde_direct(rho, channel), 1e-8);
  }
}

TEST(QcMutualInfo, Szilard) {
  const auto info = qc_mutual_info(DensityOperator::maximally_mixed(2), MeasurementChannel::computational_basis(2));
  EXPECT_NEAR(info.qc_mutual, std::numbers::ln2, 1e-12);
}

TEST(QcMutualInfo, UninformativeIsZero) {
  const std::vector<double> weights{0.2, 0.3, 0.5};
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const auto info = qc_mutual_info(random_density(3, seed), MeasurementChannel::uninformative(3, weights));
    EXPECT_NEAR(info.qc_mutual, 0.0, 1e-9);
  }
}

TEST(QcMutualInfo, NoisyClassicalMatchesJointDistribution) {
  const double eps = 0.1;
  const std::vector<double> q{0.7, 0.3};
  const std::vector<std::vector<double>> cond{{1.0 - eps, eps}, {eps, 1.0 - eps}};
  const auto info = qc_mutual_info(DensityOperator::diagonal(rvec({0.7, 0.3})), noisy_z(eps));
  EXPECT_NEAR(info.qc_mutual, testing::joint_mutual_information(q, cond), 1e-9);
}

TEST(ClassicalOracle, BinarySymmetricChannel) {
  RealMatrix bsc(2, 2);
  bsc << 0.9, 0.1, 0.1, 0.9;
  const std::vector<double> q{0.5, 0.5};
  const double expected = std::numbers::ln2 + xlogx(0.9) + xlogx(0.1);
  EXPECT_NEAR(classical_mutual_info_oracle(q, bsc), expected, 1e-15);
  EXPECT_NEAR(expected, 0.3680642071684971, 1e-15);
  EXPECT_NEAR(classical_mutual_info_oracle(q, bsc),
              testing::joint_mutual_information(q, {{0.9, 0.1}, {0.1, 0.9}}), 1e-15);
}

TEST(ClassicalOracle, Extremes) {
  const std::vector<double> q{0.2, 0.3, 0.5};
  RealMatrix perm = RealMatrix::Zero(3, 3);
  perm(0, 2) = perm(1, 0) = perm(2, 1) = 1.0;
  EXPECT_NEAR(classical_mutual_info_oracle(q, perm), -xlogx(0.2) - xlogx(0.3) - xlogx(0.5), 1e-15);
  RealMatrix flat(3, 2);
  flat << 0.4, 0.6, 0.4, 0.6, 0.4, 0.6;
  EXPECT_NEAR(classical_mutual_info_oracle(q, flat), 0.0, 1e-15);
  EXPECT_THROW(classical_mutual_info_oracle(std::vector<double>{0.5, 0.4}, RealMatrix::Identity(2, 2)),
               std::invalid_argument);
}

TEST(QcMutualInfo, BoundsAndDecomposition) {
  for (std::uint64_t seed = 1; seed <= 300; ++seed) {
    const Index dim = 2 + static_cast<Index>(seed % 3);
    const auto rho = random_density(dim, seed, 1 + static_cast<Index>(seed % static_cast<std::uint64_t>(dim)));
    const auto channel = random_channel(dim, 2 + seed % 3, seed * 31);
    const auto info = qc_mutual_info(rho, channel);
    EXPECT_GE(info.qc_mutual, -1e-9);
    EXPECT_LE(info.qc_mutual, info.shannon + 1e-9);
    EXPECT_NEAR(info.qc_mutual, info.holevo_chi - info.delta_s_meas, 1e-8);
    EXPECT_LE(info.h_tilde, info.s_rho + info.shannon + 1e-9);
  }
}

TEST(QcMutualInfo, NonDisturbingReducesToHolevo) {
  // Projective measurement commuting with rho leaves the average state unchanged.
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const ComplexMatrix u = random_unitary(3, seed);
    const auto p = random_distribution(3, seed + 3);
    const DensityOperator rho(u * diag({p[0], p[1], p[2]}) * u.adjoint());
    std::vector<ComplexMatrix> ops;
    for (Index k = 0; k < 3; ++k) ops.push_back(u.col(k) * u.col(k).adjoint());
    const auto info = qc_mutual_info(rho, MeasurementChannel(ops));
    EXPECT_NEAR(info.delta_s_meas, 0.0, 1e-9);
    EXPECT_NEAR(info.qc_mutual, info.holevo_chi, 1e-8);
  }
}

TEST(QcMutualInfo, RelabelingInvariant) {
  const auto rho = random_density(3, 4);
  const auto channel = random_channel(3, 3, 5);
  const std::vector<std::size_t> order{2, 0, 1};
  EXPECT_NEAR(qc_mutual_info(rho, channel).qc_mutual, qc_mutual_info(rho, channel.permuted(order)).qc_mutual, 1e-12);
}

TEST(SigmaPair, KnownValues) {
  const auto rho = random_density(3, 21);
  const auto unitary = MeasurementChannel({random_unitary(3, 22)});
  const auto single = sigma_pair(rho, unitary);
  EXPECT_LE(max_abs_diff(single.sigma1.matrix(), rho.matrix()), 1e-12);

  const std::vector<double> weights{0.25, 0.75};
  const auto flat = sigma_pair(rho, MeasurementChannel::uninformative(3, weights));
  EXPECT_LE(max_abs_diff(flat.sigma1.matrix(), testing::kron_loops(rho.matrix(), diag({0.25, 0.75}))), 1e-12);
}

TEST(SigmaPair, ProofIdentities) {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const Index dim = 2 + static_cast<Index>(seed % 3);
    const auto rho = random_density(dim, seed);
    const auto channel = random_channel(dim, 2 + seed % 3, seed + 1);
    const auto sp = sigma_pair(rho, channel);
    const double ht = h_tilde(rho, channel);
    EXPECT_NEAR(von_neumann_entropy(sp.sigma1), von_neumann_entropy(sp.sigma2), 1e-8);
    EXPECT_NEAR(von_neumann_entropy(sp.sigma2), ht, 1e-8);
    EXPECT_LE(max_abs_diff(partial_trace(sp.sigma1.matrix(), sp.space, {"Q"}), rho.matrix()), 1e-9);
    EXPECT_LE(max_abs_diff(partial_trace(sp.sigma1.matrix(), sp.space, {"R"}), sp.r_marginal.matrix()), 1e-9);
  }
}

TEST(Dij, DoublyStochastic) {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const Index dim = 2 + static_cast<Index>(seed % 3);
    const auto rho = random_density(dim, seed + 400);
    const RealMatrix d = dij_matrix(rho, random_channel(dim, 2 + seed % 2, seed));
    for (Index i = 0; i < dim; ++i) {
      EXPECT_NEAR(d.row(i).sum(), 1.0, 1e-8);
      EXPECT_NEAR(d.col(i).sum(), 1.0, 1e-8);
    }
    EXPECT_GE(d.minCoeff(), 0.0);
  }
}

TEST(Dij, ProjectiveCommutingIsPermutation) {
  const auto rho = DensityOperator::diagonal(rvec({0.5, 0.3, 0.2}));
  const RealMatrix d = dij_matrix(rho, MeasurementChannel::computational_basis(3));
  for (Index i = 0; i < 3; ++i) {
    EXPECT_NEAR(d.row(i).maxCoeff(), 1.0, 1e-12);
    EXPECT_NEAR(d.row(i).sum(), 1.0, 1e-12);
  }
}

TEST(Dij, CanonicalPhase) {
  const Spectrum s = canonical_eigh(random_density(4, 3).matrix());
  for (Index j = 0; j < 4; ++j) {
    Index i = 0;
    while (std::abs(s.vectors(i, j)) <= 1e-12) ++i;
    EXPECT_GT(s.vectors(i, j).real(), 0.0);
    EXPECT_EQ(s.vectors(i, j).imag(), 0.0);
  }
}

} // namespace
} // namespace qfb
