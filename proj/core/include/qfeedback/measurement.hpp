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

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qfeedback/operator.hpp"
#include "qfeedback/thermo.hpp"

namespace qfb {

/// Outcomes with probability at or below this are dropped from branch ensembles.
inline constexpr double kBranchFloor = 1e-12;
inline constexpr double kCommutatorTolerance = 1e-9;

/**
 * A discrete measurement given by one measurement operator M_k per outcome.
 * Completeness sum_k M_k^dagger M_k = 1 is enforced on construction.
 */
class MeasurementChannel {
 public:
  /// Labels default to "0", "1", ... when omitted.
  explicit MeasurementChannel(std::vector<ComplexMatrix> operators,
                              std::vector<std::string> outcome_labels = {});

  /// Single outcome with M = 1.
  static MeasurementChannel trivial(Index dim);
  /// Projective measurement in the computational basis.
  static MeasurementChannel computational_basis(Index dim);
  /// M_k = sqrt(w_k) * 1, so D_k = w_k * 1. Weights must sum to 1.
  static MeasurementChannel uninformative(Index dim, std::span<const double> weights);

  const std::vector<ComplexMatrix>& operators() const { return operators_; }
  const std::vector<std::string>& outcome_labels() const { return labels_; }
  std::size_t size() const { return operators_.size(); }
  Index dim() const { return operators_.front().rows(); }

  /// Same outcomes, each M_k replaced by its embedding on factor `label`.
  MeasurementChannel embedded(const CompositeSpace& space, const std::string& label) const;
  /// Outcome order permuted: result outcome i is this outcome order[i].
  MeasurementChannel permuted(std::span<const std::size_t> order) const;

 private:
  std::vector<ComplexMatrix> operators_;
  std::vector<std::string> labels_;
};

struct OutcomeDistribution {
  std::vector<double> probabilities;

  OutcomeDistribution() = default;
  /// Entries within [-1e-12, 1 + 1e-12] are clamped into [0, 1]; the sum
  /// must equal 1 within 1e-9. Throws std::invalid_argument otherwise.
  explicit OutcomeDistribution(std::vector<double> p);

  std::size_t size() const { return probabilities.size(); }
  double operator[](std::size_t k) const { return probabilities[k]; }
};

struct Branch {
  double probability = 0.0;
  /// Empty for outcomes at or below kBranchFloor.
  std::optional<DensityOperator> state;

  bool present() const { return state.has_value(); }
};

struct BranchEnsemble {
  std::vector<Branch> branches;

  std::size_t size() const { return branches.size(); }
  /// sum_k p_k rho^(k) over present branches.
  DensityOperator average() const;
};

struct MeasurementRecord {
  OutcomeDistribution distribution;
  BranchEnsemble branches;
};

/// D_k = M_k^dagger M_k.
std::vector<HermitianOperator> povm(const MeasurementChannel& channel);

/// p_k = tr(D_k rho) and post-measurement states M_k rho M_k^dagger / p_k.
MeasurementRecord measure(const DensityOperator& rho, const MeasurementChannel& channel);

/// True iff every POVM element commutes with rho within kCommutatorTolerance.
bool is_classical(const DensityOperator& rho, const MeasurementChannel& channel);
double max_commutator(const DensityOperator& rho, const MeasurementChannel& channel);

/*******************************************************************************
 * UNITARY EVOLUTION
 ******************************************************************************/

/// exp(-i h t / hbar).
ComplexMatrix unitary_from_hamiltonian(const HermitianOperator& h, double duration,
                                       const PhysicalConstants& constants = {});

struct HamiltonianSegment {
  HermitianOperator hamiltonian;
  double duration;
};

/**
 * Piecewise-constant replacement for the time-ordered exponential. Segments
 * are listed in time order; the returned product is U_n ... U_2 U_1.
 */
ComplexMatrix unitary_from_schedule(std::span<const HamiltonianSegment> segments,
                                    const PhysicalConstants& constants = {});

/// Max-abs residual of U^dagger U - 1.
double unitarity_residual(const ComplexMatrix& u);

/*******************************************************************************
 * RANDOM INSTANCES
 *
 * Every generator is a pure function of its arguments; the seed fully
 * determines the output.
 ******************************************************************************/

/// Haar-distributed unitary from the QR decomposition of a complex Ginibre
/// matrix, with the phases of R's diagonal folded into Q.
ComplexMatrix random_unitary(Index dim, std::uint64_t seed);

/// M_k = G_k (sum_j G_j^dagger G_j)^{-1/2} for complex Ginibre G_k.
MeasurementChannel random_channel(Index dim, std::size_t n_outcomes, std::uint64_t seed);

/// G G^dagger / tr for a dim x rank Ginibre G. rank = 0 means full rank.
DensityOperator random_density(Index dim, std::uint64_t seed, Index rank = 0);

/// GUE-style Hermitian matrix with entries of order `scale`.
HermitianOperator random_hamiltonian(Index dim, std::uint64_t seed, double scale = 1.0);

/// Uniform point on the probability simplex.
std::vector<double> random_distribution(std::size_t n, std::uint64_t seed);

/// Stateless 64-bit mixer; used to derive independent sub-seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

} // namespace qfb
