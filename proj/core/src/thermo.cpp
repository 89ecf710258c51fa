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

#include "qfeedback/thermo.hpp"

#include <cmath>

namespace qfb {

namespace {

void require_positive_beta(double beta, const char* what) {
  if (!(beta > 0.0) || !std::isfinite(beta))
    throw std::invalid_argument(std::string(what) + ": inverse temperature must be positive and finite");
}

} // namespace

void PhysicalConstants::check() const {
  if (!(k_B > 0.0) || !(hbar > 0.0))
    throw std::invalid_argument("PhysicalConstants: k_B and hbar must be strictly positive");
}

double inverse_temperature(double temperature, const PhysicalConstants& constants) {
  constants.check();
  if (!(temperature > 0.0)) throw std::invalid_argument("temperature must be positive");
  return 1.0 / (constants.k_B * temperature);
}

DensityOperator gibbs_state(const HermitianOperator& h, double beta) {
  require_positive_beta(beta, "gibbs_state");
  const Spectrum s = eigh(h);
  const double ground = s.values(0);
  RealVector weights = (-beta * (s.values.array() - ground)).exp();
  weights /= weights.sum();
  ComplexMatrix rho = s.vectors * weights.cast<Complex>().asDiagonal() * s.vectors.adjoint();
  return DensityOperator(rho);
}

double log_partition_function(const HermitianOperator& h, double beta) {
  require_positive_beta(beta, "partition_function");
  const RealVector ev = eigenvalues(h.matrix());
  const double ground = ev(0);
  return -beta * ground + std::log((-beta * (ev.array() - ground)).exp().sum());
}

double partition_function(const HermitianOperator& h, double beta) {
  return std::exp(log_partition_function(h, beta));
}

double free_energy(const HermitianOperator& h, double beta) {
  return -log_partition_function(h, beta) / beta;
}

double internal_energy(const ComplexMatrix& rho, const HermitianOperator& h) {
  if (rho.rows() != h.dim() || rho.cols() != h.dim())
    throw DimensionMismatch("internal_energy: state and Hamiltonian dimensions differ");
  // tr(H rho) without forming the product.
  return (h.matrix().transpose().cwiseProduct(rho)).sum().real();
}

double internal_energy(const DensityOperator& rho, const HermitianOperator& h) {
  return internal_energy(rho.matrix(), h);
}

} // namespace qfb
