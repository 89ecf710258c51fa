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
#include <utility>
#include <vector>

#include "qfeedback/protocol.hpp"
#include "qfeedback/thermo.hpp"

namespace qfb {

/**
 * Closed-form bookkeeping for an idealized quasi-static engine. Carries the
 * same EnergyBalance as a simulated ProtocolLedger so both go through the
 * same verifiers.
 */
struct AnalyticLedger {
  std::string scenario;
  std::string mode = "analytic";
  /// Input parameters in the order they were given.
  std::vector<std::pair<std::string, double>> parameters;
  EnergyBalance balance;
};

/**
 * One-molecule engine with a binary symmetric which-side measurement of error
 * rate `measurement_error`. After feedback the quasi-static isothermal
 * expansion extracts k_B T I, I = ln 2 + e ln e + (1 - e) ln(1 - e).
 *
 * The error-free case extracts k_B T ln 2. Throws std::invalid_argument for
 * an error rate outside [0, 0.5] or a non-positive temperature.
 */
AnalyticLedger szilard_scenario(double temperature, double measurement_error, const PhysicalConstants& constants = {});

/**
 * One-molecule Carnot cycle with an error-free Szilard step inserted into the
 * hot isotherm:
 *
 *   W_ext = (1 - T_L / T_H)(Q_H - k_B T_H ln 2) + k_B T_H ln 2
 *         = (1 - T_L / T_H) Q_H + k_B T_L ln 2
 *
 * Q_L = W_ext - Q_H. Baths are labelled "H" and "L".
 * Requires t_hot > t_cold > 0 and q_hot > k_B t_hot ln 2.
 */
AnalyticLedger carnot_feedback_scenario(double t_hot, double t_cold, double q_hot,
                                        const PhysicalConstants& constants = {});

/// Binary entropy in nats with 0 ln 0 = 0.
double binary_entropy(double p);

} // namespace qfb
