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

#include <span>

#include "qfeedback/measurement.hpp"
#include "qfeedback/operator.hpp"

namespace qfb {

/// Entropies are in nats throughout.
double von_neumann_entropy(const DensityOperator& rho);
double shannon_entropy(std::span<const double> p);
inline double shannon_entropy(const OutcomeDistribution& p) { return shannon_entropy(p.probabilities); }

/**
 * Information content of a measurement on a quantum state. All fields in nats.
 *
 *   qc_mutual    = s_rho + shannon - h_tilde
 *   holevo_chi   = S(sum_k p_k rho_k) - sum_k p_k S(rho_k), rho_k = M_k rho M_k^dagger / p_k
 *   delta_s_meas = S(sum_k p_k rho_k) - s_rho
 *
 * and qc_mutual = holevo_chi - delta_s_meas up to round-off.
 */
struct InformationReport {
  double s_rho = 0.0;
  double shannon = 0.0;
  double h_tilde = 0.0;
  double qc_mutual = 0.0;
  double holevo_chi = 0.0;
  double delta_s_meas = 0.0;
};

/// H({p_k}) + sum_k p_k S(sqrt(D_k) rho sqrt(D_k) / p_k); null outcomes contribute 0.
double h_tilde(const DensityOperator& rho, const MeasurementChannel& channel);
/// -sum_k tr(A_k ln A_k) with A_k = sqrt(D_k) rho sqrt(D_k), evaluated directly from
/// the spectra of the unnormalized A_k. Cross-check for h_tilde().
double h_tilde_direct(const DensityOperator& rho, const MeasurementChannel& channel);

InformationReport qc_mutual_info(const DensityOperator& rho, const MeasurementChannel& channel);

/**
 * Mutual information of a classical channel: H(p) - sum_i q_i H(p(.|i)) with
 * p_k = sum_i q_i p(k|i). `conditional(i, k)` holds p(k|i).
 *
 * Throws std::invalid_argument if q or any row of `conditional` is not a
 * distribution within 1e-9.
 */
double classical_mutual_info_oracle(std::span<const double> q, const RealMatrix& conditional);

/**
 * The two block-diagonal states on Q (x) R used to bound the QC-mutual
 * information, with R spanned by one basis vector per outcome:
 *
 *   sigma1 = sum_k sqrt(rho) D_k sqrt(rho) (x) |k><k|
 *   sigma2 = sum_k sqrt(D_k) rho sqrt(D_k) (x) |k><k|
 *
 * r_marginal = sum_k p_k |k><k| = tr_Q(sigma1).
 */
struct SigmaPair {
  CompositeSpace space;
  DensityOperator sigma1;
  DensityOperator sigma2;
  DensityOperator r_marginal;
};

SigmaPair sigma_pair(const DensityOperator& rho, const MeasurementChannel& channel);

/// rho' = sum_k sqrt(D_k) rho sqrt(D_k).
DensityOperator averaged_sandwich(const DensityOperator& rho, const MeasurementChannel& channel);

/// Eigendecomposition with a fixed phase convention: the first component of
/// each eigenvector with modulus above 1e-12 is made real and positive.
Spectrum canonical_eigh(const ComplexMatrix& hermitian);

/**
 * d(i, j) = sum_k |<psi_i| sqrt(D_k) |psi'_j>|^2, where psi_i diagonalize rho
 * and psi'_j diagonalize rho' (both in canonical_eigh order). Doubly
 * stochastic for any choice of eigenbases.
 */
RealMatrix dij_matrix(const DensityOperator& rho, const MeasurementChannel& channel);

} // namespace qfb
