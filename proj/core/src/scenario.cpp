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

#include "qfeedback/scenario.hpp"

#include <cmath>
#include <numbers>

namespace qfb {

double binary_entropy(double p) {
  double h = 0.0;
  if (p > 0.0) h -= p * std::log(p);
  if (p < 1.0) h -= (1.0 - p) * std::log1p(-p);
  return h;
}

AnalyticLedger szilard_scenario(double temperature, double measurement_error, const PhysicalConstants& constants) {
  constants.check();
  if (!(temperature > 0.0)) throw std::invalid_argument("szilard_scenario: temperature must be positive");
  if (!(measurement_error >= 0.0 && measurement_error <= 0.5))
    throw std::invalid_argument("szilard_scenario: measurement error must lie in [0, 0.5]");

  const double information = std::numbers::ln2 - binary_entropy(measurement_error);
  const double work = constants.k_B * temperature * information;

  AnalyticLedger ledger;
  ledger.scenario = "szilard";
  ledger.parameters = {{"temperature", temperature}, {"measurement_error", measurement_error}, {"k_B", constants.k_B}};
  ledger.balance.k_B = constants.k_B;
  ledger.balance.temperature = temperature;
  // Isothermal cycle: all extracted work is heat drawn from the single bath.
  ledger.balance.baths = {{"B", temperature, work}};
  ledger.balance.delta_U_S = 0.0;
  ledger.balance.delta_F_S = 0.0;
  ledger.balance.W_ext = work;
  ledger.balance.qc_mutual = information;
  ledger.balance.cyclic_hamiltonian = true;
  return ledger;
}

AnalyticLedger carnot_feedback_scenario(double t_hot, double t_cold, double q_hot, const PhysicalConstants& constants) {
  constants.check();
  if (!(t_cold > 0.0) || !(t_hot > t_cold))
    throw std::invalid_argument("carnot_feedback_scenario: need t_hot > t_cold > 0");
  const double szilard_heat = constants.k_B * t_hot * std::numbers::ln2;
  if (!(q_hot > szilard_heat))
    throw std::invalid_argument("carnot_feedback_scenario: q_hot must exceed k_B t_hot ln 2");

  const double carnot = 1.0 - t_cold / t_hot;
  const double work = carnot * (q_hot - szilard_heat) + szilard_heat;

  AnalyticLedger ledger;
  ledger.scenario = "carnot_feedback";
  ledger.parameters = {{"t_hot", t_hot}, {"t_cold", t_cold}, {"q_hot", q_hot}, {"k_B", constants.k_B}};
  ledger.balance.k_B = constants.k_B;
  ledger.balance.temperature = t_hot;
  ledger.balance.baths = {{"H", t_hot, q_hot}, {"L", t_cold, work - q_hot}};
  ledger.balance.delta_U_S = 0.0;
  ledger.balance.delta_F_S = 0.0;
  ledger.balance.W_ext = work;
  ledger.balance.qc_mutual = std::numbers::ln2;
  ledger.balance.cyclic_hamiltonian = true;
  return ledger;
}

} // namespace qfb
