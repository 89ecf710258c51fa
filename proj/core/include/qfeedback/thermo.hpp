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

#include <string>

#include "qfeedback/operator.hpp"

namespace qfb {

/// Boltzmann and reduced Planck constants. Temperatures are in energy units
/// when k_B = 1.
struct PhysicalConstants {
  double k_B = 1.0;
  double hbar = 1.0;

  /// Throws std::invalid_argument unless both constants are strictly positive.
  void check() const;
};

struct BathSpec {
  std::string label;
  HermitianOperator hamiltonian;
  double temperature;
};

/// (k_B T)^-1. Throws std::invalid_argument for T <= 0.
double inverse_temperature(double temperature, const PhysicalConstants& constants = {});

/// exp(-beta H) / Z, evaluated with the lowest eigenvalue shifted to zero.
DensityOperator gibbs_state(const HermitianOperator& h, double beta);

/// ln tr exp(-beta H), stable for large beta |H|.
double log_partition_function(const HermitianOperator& h, double beta);
double partition_function(const HermitianOperator& h, double beta);

/// Helmholtz free energy -ln Z / beta.
double free_energy(const HermitianOperator& h, double beta);

/// tr(H rho). Throws DimensionMismatch if the dimensions differ.
double internal_energy(const DensityOperator& rho, const HermitianOperator& h);
double internal_energy(const ComplexMatrix& rho, const HermitianOperator& h);

} // namespace qfb
