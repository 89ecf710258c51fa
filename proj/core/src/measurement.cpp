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

#include "qfeedback/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

namespace qfb {

MeasurementChannel::MeasurementChannel(std::vector<ComplexMatrix> operators,
                                       std::vector<std::string> outcome_labels)
    : operators_(std::move(operators)), labels_(std::move(outcome_labels)) {
  if (operators_.empty()) throw std::invalid_argument("MeasurementChannel: no measurement operators");
  const Index dim = operators_.front().rows();
  for (const auto& m : operators_)
    if (m.rows() != dim || m.cols() != dim || dim == 0)
      throw DimensionMismatch("MeasurementChannel: operators must share one square dimension");
  if (labels_.empty()) {
    for (std::size_t k = 0; k < operators_.size(); ++k) labels_.push_back(std::to_string(k));
  } else if (labels_.size() != operators_.size()) {
    throw std::invalid_argument("MeasurementChannel: one outcome label per operator required");
  }

  ComplexMatrix sum = ComplexMatrix::Zero(dim, dim);
  for (const auto& m : operators_) sum += m.adjoint() * m;
  const double residual = max_abs(sum - ComplexMatrix::Identity(dim, dim));
  if (residual > kCompletenessTolerance) {
    ValidationReport report;
    report.violations.push_back({"completeness", residual});
    throw InvalidOperator("MeasurementChannel", std::move(report));
  }
}

MeasurementChannel MeasurementChannel::trivial(Index dim) {
  return MeasurementChannel({ComplexMatrix::Identity(dim, dim)});
}

MeasurementChannel MeasurementChannel::computational_basis(Index dim) {
  std::vector<ComplexMatrix> ops;
  for (Index i = 0; i < dim; ++i) {
    ComplexMatrix p = ComplexMatrix::Zero(dim, dim);
    p(i, i) = 1.0;
    ops.push_back(std::move(p));
  }
  return MeasurementChannel(std::move(ops));
}

MeasurementChannel MeasurementChannel::uninformative(Index dim, std::span<const double> weights) {
  std::vector<ComplexMatrix> ops;
  for (double w : weights) {
    if (w < 0.0) throw std::invalid_argument("MeasurementChannel::uninformative: negative weight");
    ops.push_back(std::sqrt(w) * ComplexMatrix::Identity(dim, dim));
  }
  return MeasurementChannel(std::move(ops));
}

MeasurementChannel MeasurementChannel::embedded(const CompositeSpace& space, const std::string& label) const {
  std::vector<ComplexMatrix> ops;
  ops.reserve(operators_.size());
  for (const auto& m : operators_) ops.push_back(space.embed(m, label));
  return MeasurementChannel(std::move(ops), labels_);
}

MeasurementChannel MeasurementChannel::permuted(std::span<const std::size_t> order) const {
  if (order.size() != operators_.size())
    throw std::invalid_argument("MeasurementChannel::permuted: order has wrong length");
  std::vector<ComplexMatrix> ops;
  std::vector<std::string> labels;
  for (std::size_t k : order) {
    ops.push_back(operators_.at(k));
    labels.push_back(labels_.at(k));
  }
  return MeasurementChannel(std::move(ops), std::move(labels));
}

OutcomeDistribution::OutcomeDistribution(std::vector<double> p) : probabilities(std::move(p)) {
  double sum = 0.0;
  for (double& x : probabilities) {
    if (x < -1e-12 || x > 1.0 + 1e-12 || !std::isfinite(x))
      throw std::invalid_argument("OutcomeDistribution: probability outside [0, 1]");
    x = std::clamp(x, 0.0, 1.0);
    sum += x;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw std::invalid_argument("OutcomeDistribution: probabilities do not sum to 1");
}

DensityOperator BranchEnsemble::average() const {
  Index dim = 0;
  for (const auto& b : branches)
    if (b.present()) dim = b.state->dim();
  if (dim == 0) throw std::logic_error("BranchEnsemble::average: no present branches");
  ComplexMatrix sum = ComplexMatrix::Zero(dim, dim);
  for (const auto& b : branches)
    if (b.present()) sum += b.probability * b.state->matrix();
  // Dropped branches carry at most kBranchFloor each; renormalize them away.
  sum /= sum.trace().real();
  return DensityOperator(sum);
}

std::vector<HermitianOperator> povm(const MeasurementChannel& channel) {
  std::vector<HermitianOperator> out;
  out.reserve(channel.size());
  for (const auto& m : channel.operators()) out.push_back(make_hermitian_unchecked(hermitian_part(m.adjoint() * m)));
  return out;
}

MeasurementRecord measure(const DensityOperator& rho, const MeasurementChannel& channel) {
  if (rho.dim() != channel.dim()) throw DimensionMismatch("measure: state and channel dimensions differ");
  std::vector<double> p;
  std::vector<ComplexMatrix> unnormalized;
  for (const auto& m : channel.operators()) {
    ComplexMatrix post = hermitian_part(m * rho.matrix() * m.adjoint());
    p.push_back(post.trace().real());
    unnormalized.push_back(std::move(post));
  }
  MeasurementRecord record{OutcomeDistribution(std::move(p)), {}};
  for (std::size_t k = 0; k < unnormalized.size(); ++k) {
    Branch branch;
    branch.probability = record.distribution[k];
    if (branch.probability > kBranchFloor) branch.state.emplace(unnormalized[k] / unnormalized[k].trace().real());
    record.branches.branches.push_back(std::move(branch));
  }
  return record;
}

double max_commutator(const DensityOperator& rho, const MeasurementChannel& channel) {
  if (rho.dim() != channel.dim()) throw DimensionMismatch("is_classical: state and channel dimensions differ");
  double worst = 0.0;
  for (const auto& d : povm(channel)) {
    const ComplexMatrix c = rho.matrix() * d.matrix() - d.matrix() * rho.matrix();
    worst = std::max(worst, max_abs(c));
  }
  return worst;
}

bool is_classical(const DensityOperator& rho, const MeasurementChannel& channel) {
  return max_commutator(rho, channel) <= kCommutatorTolerance;
}

/*******************************************************************************
 * UNITARY EVOLUTION
 ******************************************************************************/

ComplexMatrix unitary_from_hamiltonian(const HermitianOperator& h, double duration,
                                       const PhysicalConstants& constants) {
  constants.check();
  const double scale = duration / constants.hbar;
  return spectral_map(eigh(h), [scale](double e) { return std::exp(Complex(0.0, -e * scale)); });
}

ComplexMatrix unitary_from_schedule(std::span<const HamiltonianSegment> segments,
                                    const PhysicalConstants& constants) {
  if (segments.empty()) throw std::invalid_argument("unitary_from_schedule: empty schedule");
  const Index dim = segments.front().hamiltonian.dim();
  ComplexMatrix u = ComplexMatrix::Identity(dim, dim);
  for (const auto& seg : segments) {
    if (seg.hamiltonian.dim() != dim) throw DimensionMismatch("unitary_from_schedule: segment dimensions differ");
    u = unitary_from_hamiltonian(seg.hamiltonian, seg.duration, constants) * u;
  }
  return u;
}

double unitarity_residual(const ComplexMatrix& u) {
  if (u.rows() != u.cols()) return std::numeric_limits<double>::infinity();
  return max_abs(u.adjoint() * u - ComplexMatrix::Identity(u.rows(), u.cols()));
}

/*******************************************************************************
 * RANDOM INSTANCES
 ******************************************************************************/

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  // splitmix64 finalizer over a combined state.
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace {

ComplexMatrix ginibre(Index rows, Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix g(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = Complex(re, im) / std::sqrt(2.0);
    }
  return g;
}

} // namespace

ComplexMatrix random_unitary(Index dim, std::uint64_t seed) {
  if (dim < 1) throw std::invalid_argument("random_unitary: dimension must be positive");
  std::mt19937_64 rng(seed);
  const ComplexMatrix z = ginibre(dim, dim, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(z);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(dim, dim);
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index j = 0; j < dim; ++j) {
    const double mag = std::abs(r(j, j));
    const Complex phase = mag > 0.0 ? r(j, j) / mag : Complex(1.0, 0.0);
    q.col(j) *= phase;
  }
  return q;
}

MeasurementChannel random_channel(Index dim, std::size_t n_outcomes, std::uint64_t seed) {
  if (dim < 1 || n_outcomes < 1) throw std::invalid_argument("random_channel: dim and n_outcomes must be positive");
  std::mt19937_64 rng(seed);
  std::vector<ComplexMatrix> g;
  ComplexMatrix total = ComplexMatrix::Zero(dim, dim);
  for (std::size_t k = 0; k < n_outcomes; ++k) {
    g.push_back(ginibre(dim, dim, rng));
    total += g.back().adjoint() * g.back();
  }
  const Spectrum s = eigh(hermitian_part(total));
  const ComplexMatrix inv_sqrt = spectral_map(s, [](double x) { return 1.0 / std::sqrt(x); });
  std::vector<ComplexMatrix> ops;
  for (auto& gk : g) ops.push_back(gk * inv_sqrt);
  return MeasurementChannel(std::move(ops));
}

DensityOperator random_density(Index dim, std::uint64_t seed, Index rank) {
  if (dim < 1) throw std::invalid_argument("random_density: dimension must be positive");
  if (rank <= 0 || rank > dim) rank = dim;
  std::mt19937_64 rng(seed);
  const ComplexMatrix g = ginibre(dim, rank, rng);
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityOperator(rho);
}

HermitianOperator random_hamiltonian(Index dim, std::uint64_t seed, double scale) {
  std::mt19937_64 rng(seed);
  const ComplexMatrix g = ginibre(dim, dim, rng);
  return make_hermitian_unchecked(scale * hermitian_part(g));
}

std::vector<double> random_distribution(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> p(n);
  for (auto& x : p) x = expo(rng);
  const double total = std::accumulate(p.begin(), p.end(), 0.0);
  for (auto& x : p) x /= total;
  return p;
}

} // namespace qfb
