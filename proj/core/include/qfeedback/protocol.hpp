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

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qfeedback/information.hpp"
#include "qfeedback/measurement.hpp"
#include "qfeedback/thermo.hpp"

namespace qfb {

/**
 * A discrete feedback protocol on S (x) B_1 (x) ... (x) B_n.
 *
 *   1. rho_i = gibbs(H_i^S, T) (x) gibbs(H^{B_1}, T_1) (x) ...
 *   2. rho_1 = U_i rho_i U_i^dagger
 *   3. measurement {M_k} on S, outcome k with probability p_k
 *   4. outcome-conditioned unitary U_k
 *   5. outcome-independent U_f
 *
 * All unitaries act on the full space. The system is always the first tensor
 * factor. Endpoint energies and free energies are taken from H_i^S and H_f^S
 * alone, i.e. interaction terms vanish at the endpoints.
 */
struct ProtocolSpec {
  std::string system_label = "S";
  HermitianOperator system_hamiltonian_initial;
  HermitianOperator system_hamiltonian_final;
  double system_temperature = 1.0;
  std::vector<BathSpec> baths;
  ComplexMatrix stage2_unitary;
  MeasurementChannel channel;
  std::vector<ComplexMatrix> feedback_unitaries;
  ComplexMatrix stage5_unitary;
  PhysicalConstants constants;

  CompositeSpace space() const;
  Index system_dim() const { return system_hamiltonian_initial.dim(); }
  /// Throws std::invalid_argument (or DimensionMismatch) describing the first
  /// inconsistency found.
  void validate() const;
};

/// All unitaries identity, single-outcome channel with M = 1.
ProtocolSpec null_protocol(const HermitianOperator& system_hamiltonian, double temperature,
                           std::vector<BathSpec> baths = {});

/// Relabels outcomes: outcome i of the result is outcome order[i] of `spec`,
/// with feedback unitaries permuted consistently.
ProtocolSpec permute_outcomes(const ProtocolSpec& spec, std::span<const std::size_t> order);

/// sum_k U_f U_k M_k U_i rho U_i^dagger M_k^dagger U_k^dagger U_f^dagger, as one channel.
ComplexMatrix apply_total_channel(const ProtocolSpec& spec, const ComplexMatrix& rho_initial);

/// Heat and temperature of one bath. heat = E_initial - E_final, so a positive
/// value means energy flowed from the bath into the rest of the system.
struct BathHeat {
  std::string label;
  double temperature = 1.0;
  double heat = 0.0;
};

/**
 * The scalar bookkeeping every inequality check consumes. Filled either from a
 * simulated protocol or from closed-form quasi-static expressions.
 */
struct EnergyBalance {
  double k_B = 1.0;
  double temperature = 1.0; ///< initial and final temperature T of the system
  std::vector<BathHeat> baths;
  double delta_U_S = 0.0;
  double delta_F_S = 0.0;
  double W_ext = 0.0;
  double qc_mutual = 0.0;
  bool cyclic_hamiltonian = false; ///< H_i^S == H_f^S

  double total_heat() const;
  const BathHeat& bath(const std::string& label) const;
};

/// Quantities reported but never asserted.
struct ProtocolDiagnostics {
  /// max_abs(rho_f - E(rho_i)) between branch-wise and single-channel evaluation.
  double channel_residual = 0.0;
  /// max_k max_abs(rho_3^(k) - rho_3); zero for perfect feedback.
  double feedback_spread = 0.0;
  /// Trace distance between rho_f and the canonical final state.
  double canonical_trace_distance = 0.0;
  /// -tr(rho_f ln rho_f^can).
  double cross_entropy_canonical = 0.0;
  double entropy_rho_1 = 0.0;
  double entropy_rho_3 = 0.0;
  /// sum_k p_k S(rho_2^(k)) and sum_k p_k S(rho_3^(k)).
  double mean_branch_entropy_2 = 0.0;
  double mean_branch_entropy_3 = 0.0;
  /// max_k |S(rho_3^(k)) - S(rho_2^(k))|.
  double feedback_entropy_drift = 0.0;
};

struct ProtocolLedger {
  DensityOperator rho_i;
  DensityOperator rho_1;
  DensityOperator rho_f;
  OutcomeDistribution outcome_dist;
  BranchEnsemble branches_2;
  BranchEnsemble branches_3;
  /// Evaluated on the full-space rho_1 with the embedded channel M_k (x) 1.
  InformationReport info;
  double E_S_initial = 0.0;
  double E_S_final = 0.0;
  std::vector<double> E_bath_initial;
  std::vector<double> E_bath_final;
  EnergyBalance balance;
  double S_initial = 0.0;
  double S_final = 0.0;
  ProtocolDiagnostics diagnostics;
};

ProtocolLedger run(const ProtocolSpec& spec);

/*******************************************************************************
 * INEQUALITY VERIFIERS
 ******************************************************************************/

inline constexpr double kInequalityTolerance = 1e-8;

struct InequalityVerdict {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0; ///< rhs - lhs
  double tolerance = kInequalityTolerance;
  bool satisfied = true; ///< slack >= -tolerance
};

InequalityVerdict make_verdict(std::string name, double lhs, double rhs, double tolerance);

/// Raised when a verifier is applied to a ledger outside its domain.
class PreconditionError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// S(rho_i) - S(rho_f) <= I(rho_1 : X).
InequalityVerdict verify_entropy_inequality(const ProtocolLedger& ledger, double tolerance = kInequalityTolerance);

/// -dU + sum_m (T / T_m) Q_m <= -dF + k_B T I. Holds for any final state.
InequalityVerdict verify_exact_second_law(const EnergyBalance& balance, double tolerance = kInequalityTolerance);

/// Empty when the balance is a feedback-free cycle (I, dU, dF all ~ 0).
std::optional<std::string> clausius_precondition(const EnergyBalance& balance);
/// sum_m Q_m / T_m <= 0. Throws PreconditionError outside a feedback-free cycle.
InequalityVerdict verify_clausius(const EnergyBalance& balance, double tolerance = kInequalityTolerance);

std::optional<std::string> isothermal_precondition(const EnergyBalance& balance);
/// W_ext <= -dF + k_B T I for one bath at the system temperature.
InequalityVerdict verify_isothermal(const EnergyBalance& balance, double tolerance = kInequalityTolerance);

std::optional<std::string> two_bath_precondition(const EnergyBalance& balance, const std::string& hot_label,
                                                 const std::string& cold_label);
/// W_ext <= (1 - T_L / T_H) Q_H + k_B T_L I for a two-bath cycle.
InequalityVerdict verify_two_bath(const EnergyBalance& balance, const std::string& hot_label,
                                  const std::string& cold_label, double tolerance = kInequalityTolerance);

/// Every verifier whose preconditions hold. Two-bath checks use the hotter
/// bath as the hot reservoir.
std::vector<InequalityVerdict> verify_applicable(const EnergyBalance& balance,
                                                 double tolerance = kInequalityTolerance);
std::vector<InequalityVerdict> verify_applicable(const ProtocolLedger& ledger,
                                                 double tolerance = kInequalityTolerance);

} // namespace qfb
