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

#include "qfeedback/information.hpp"

#include <cmath>
#include <numeric>

namespace qfb {

namespace {

void require_same_dim(const DensityOperator& rho, const MeasurementChannel& channel, const char* what) {
  if (rho.dim() != channel.dim())
    throw DimensionMismatch(std::string(what) + ": state and channel dimensions differ");
}

std::vector<ComplexMatrix> root_povm(const MeasurementChannel& channel) {
  std::vector<ComplexMatrix> roots;
  for (const auto& d : povm(channel)) roots.push_back(hermitian_sqrt(d).matrix());
  return roots;
}

std::vector<ComplexMatrix> sandwiches(const DensityOperator& rho, std::span<const ComplexMatrix> roots) {
  std::vector<ComplexMatrix> out;
  for (const auto& r : roots) out.push_back(hermitian_part(r * rho.matrix() * r));
  return out;
}

void require_distribution(std::span<const double> p, const char* what) {
  double sum = 0.0;
  for (double x : p) {
    if (x < -1e-12 || !std::isfinite(x)) throw std::invalid_argument(std::string(what) + ": negative probability");
    sum += x;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw std::invalid_argument(std::string(what) + ": not normalized");
}

} // namespace

double von_neumann_entropy(const DensityOperator& rho) { return entropy_of_spectrum(rho.spectrum()); }

double shannon_entropy(std::span<const double> p) {
  double h = 0.0;
  for (double x : p)
    if (x > kEigenvalueFloor) h -= x * std::log(x);
  return h;
}

double h_tilde(const DensityOperator& rho, const MeasurementChannel& channel) {
  require_same_dim(rho, channel, "h_tilde");
  const auto a = sandwiches(rho, root_povm(channel));
  std::vector<double> p;
  double conditional = 0.0;
  for (const auto& ak : a) {
    const double pk = ak.trace().real();
    p.push_back(pk);
    if (pk > kBranchFloor) conditional += pk * entropy_of_spectrum(eigenvalues(ak / pk));
  }
  return shannon_entropy(p) + conditional;
}

double h_tilde_direct(const DensityOperator& rho, const MeasurementChannel& channel) {
  require_same_dim(rho, channel, "h_tilde_direct");
  double h = 0.0;
  for (const auto& ak : sandwiches(rho, root_povm(channel))) h += entropy_of_spectrum(eigenvalues(ak));
  return h;
}

InformationReport qc_mutual_info(const DensityOperator& rho, const MeasurementChannel& channel) {
  require_same_dim(rho, channel, "qc_mutual_info");
  InformationReport r;
  const MeasurementRecord record = measure(rho, channel);
  r.s_rho = von_neumann_entropy(rho);
  r.shannon = shannon_entropy(record.distribution);
  r.h_tilde = h_tilde(rho, channel);
  r.qc_mutual = r.s_rho + r.shannon - r.h_tilde;

  double conditional = 0.0;
  for (const auto& b : record.branches.branches)
    if (b.present()) conditional += b.probability * von_neumann_entropy(*b.state);
  const double s_post = von_neumann_entropy(record.branches.average());
  r.holevo_chi = s_post - conditional;
  r.delta_s_meas = s_post - r.s_rho;
  return r;
}

double classical_mutual_info_oracle(std::span<const double> q, const RealMatrix& conditional) {
  if (static_cast<Index>(q.size()) != conditional.rows())
    throw DimensionMismatch("classical_mutual_info_oracle: prior and conditional sizes differ");
  require_distribution(q, "classical_mutual_info_oracle prior");
  for (Index i = 0; i < conditional.rows(); ++i) {
    const RealVector row = conditional.row(i).transpose();
    require_distribution(std::span<const double>(row.data(), static_cast<std::size_t>(row.size())),
                         "classical_mutual_info_oracle conditional row");
  }

  // Joint distribution J(i, k) = q_i p(k|i), marginal p_k = sum_i J(i, k).
  RealMatrix joint = conditional;
  for (Index i = 0; i < joint.rows(); ++i) joint.row(i) *= q[static_cast<std::size_t>(i)];
  const RealVector marginal = joint.colwise().sum().transpose();

  double h_outcome = 0.0;
  for (Index k = 0; k < marginal.size(); ++k)
    if (marginal(k) > 0.0) h_outcome -= marginal(k) * std::log(marginal(k));
  double h_noise = 0.0;
  for (Index i = 0; i < joint.rows(); ++i)
    for (Index k = 0; k < joint.cols(); ++k)
      if (conditional(i, k) > 0.0) h_noise -= joint(i, k) * std::log(conditional(i, k));
  return h_outcome - h_noise;
}

SigmaPair sigma_pair(const DensityOperator& rho, const MeasurementChannel& channel) {
  require_same_dim(rho, channel, "sigma_pair");
  const Index d = rho.dim();
  const Index n = static_cast<Index>(channel.size());
  const ComplexMatrix root_rho = hermitian_sqrt(rho.as_hermitian()).matrix();
  const auto dk = povm(channel);
  const auto roots = root_povm(channel);

  ComplexMatrix s1 = ComplexMatrix::Zero(d * n, d * n);
  ComplexMatrix s2 = ComplexMatrix::Zero(d * n, d * n);
  RealVector p(n);
  for (Index k = 0; k < n; ++k) {
    ComplexMatrix projector = ComplexMatrix::Zero(n, n);
    projector(k, k) = 1.0;
    const auto ku = static_cast<std::size_t>(k);
    const ComplexMatrix a1 = hermitian_part(root_rho * dk[ku].matrix() * root_rho);
    const ComplexMatrix a2 = hermitian_part(roots[ku] * rho.matrix() * roots[ku]);
    s1 += tensor(a1, projector);
    s2 += tensor(a2, projector);
    p(k) = a1.trace().real();
  }
  return SigmaPair{CompositeSpace({d, n}, {"Q", "R"}), DensityOperator(s1), DensityOperator(s2),
                   DensityOperator::diagonal(p)};
}

DensityOperator averaged_sandwich(const DensityOperator& rho, const MeasurementChannel& channel) {
  require_same_dim(rho, channel, "averaged_sandwich");
  ComplexMatrix sum = ComplexMatrix::Zero(rho.dim(), rho.dim());
  for (const auto& a : sandwiches(rho, root_povm(channel))) sum += a;
  return DensityOperator(sum);
}

Spectrum canonical_eigh(const ComplexMatrix& hermitian) {
  Spectrum s = eigh(hermitian);
  for (Index j = 0; j < s.vectors.cols(); ++j) {
    for (Index i = 0; i < s.vectors.rows(); ++i) {
      const double mag = std::abs(s.vectors(i, j));
      if (mag > 1e-12) {
        s.vectors.col(j) *= std::conj(s.vectors(i, j)) / mag;
        s.vectors(i, j) = Complex(s.vectors(i, j).real(), 0.0);
        break;
      }
    }
  }
  return s;
}

RealMatrix dij_matrix(const DensityOperator& rho, const MeasurementChannel& channel) {
  require_same_dim(rho, channel, "dij_matrix");
  const Spectrum before = canonical_eigh(rho.matrix());
  const Spectrum after = canonical_eigh(averaged_sandwich(rho, channel).matrix());
  const Index d = rho.dim();
  RealMatrix out = RealMatrix::Zero(d, d);
  for (const auto& root : root_povm(channel)) {
    const ComplexMatrix amplitudes = before.vectors.adjoint() * root * after.vectors;
    out += amplitudes.cwiseAbs2();
  }
  return out;
}

} // namespace qfb
