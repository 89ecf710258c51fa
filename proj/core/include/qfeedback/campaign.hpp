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
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qfeedback/protocol.hpp"

namespace qfb {

/**
 * What each campaign instance draws and checks.
 *
 *   protocol        random full protocol; entropy, exact second-law and
 *                   (single bath) isothermal bounds plus stage identities
 *   cycle           feedback-free two-bath cycle (system energy conserved);
 *                   Clausius and Carnot bounds
 *   feedback_cycle  cycle with an informative measurement diagonal in the
 *                   system energy basis; two-bath bound with I > 0
 *   information     random (rho, channel); 0 <= I <= H, decomposition
 *                   identity and the sigma / d_ij proof constructions
 *   extremal        one uninformative and one commuting projective channel
 *   classical       commuting channel against the classical oracle
 */
enum class CampaignFamily { protocol, cycle, feedback_cycle, information, extremal, classical };

std::string_view to_string(CampaignFamily family);
/// Throws std::invalid_argument for an unknown name.
CampaignFamily campaign_family_from_string(std::string_view name);

struct IntRange {
  int min = 1;
  int max = 1;
};

struct CampaignConfig {
  std::uint64_t seed = 1;
  std::size_t n_instances = 100;
  CampaignFamily family = CampaignFamily::protocol;
  std::vector<Index> system_dims{2};
  std::vector<Index> bath_dims{4};
  IntRange n_outcomes_range{2, 2};
  IntRange n_baths_range{1, 1};
  /// Applies to the thermodynamic inequalities; identity checks use fixed
  /// tolerances (1e-9 closed form, 1e-8 across two eigendecompositions).
  double tolerance = kInequalityTolerance;
  /// 0 selects std::thread::hardware_concurrency().
  unsigned threads = 0;
  bool keep_instances = false;

  void validate() const;
};

struct VerdictSummary {
  std::size_t checked = 0;
  std::size_t satisfied = 0;
  double worst_slack = 0.0;
  std::uint64_t arg_worst_seed = 0;
  double tolerance = 0.0;

  std::size_t violations() const { return checked - satisfied; }
};

struct InstanceRecord {
  std::size_t index = 0;
  std::uint64_t seed = 0;
  std::vector<InequalityVerdict> verdicts;
  std::optional<std::string> error;
};

struct CampaignReport {
  CampaignConfig config;
  std::map<std::string, VerdictSummary> verdicts;
  std::size_t instances_run = 0;
  std::size_t failures = 0;
  /// First few failure messages, in instance order.
  std::vector<std::string> failure_messages;
  /// Only filled when config.keep_instances is set.
  std::vector<InstanceRecord> instances;
  double wall_time_seconds = 0.0;

  std::size_t total_checked() const;
  std::size_t total_violations() const;
  bool ok() const { return failures == 0 && total_violations() == 0; }
};

/// Per-instance seed for instance `index`.
std::uint64_t instance_seed(std::uint64_t campaign_seed, std::size_t index);

/// Verdicts for one instance of `config.family`, drawn from `seed`.
std::vector<InequalityVerdict> run_instance(const CampaignConfig& config, std::uint64_t seed);

CampaignReport random_campaign(const CampaignConfig& config);

/// The random ProtocolSpec the protocol family would draw for `seed`.
ProtocolSpec random_protocol_spec(const CampaignConfig& config, std::uint64_t seed);

/// Equality check |a - b| <= tolerance expressed as a verdict (lhs = |a - b|, rhs = 0).
InequalityVerdict equality_verdict(std::string name, double a, double b, double tolerance);

} // namespace qfb
