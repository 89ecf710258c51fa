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


#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qfeedback/campaign.hpp"
#include "qfeedback/protocol.hpp"

namespace qfb {
namespace {

using testing::diag;
using testing::max_abs_diff;

HermitianOperator qubit_h() { return HermitianOperator(diag({0.0, 1.0})); }

std::vector<BathSpec> one_bath(double temperature = 1.0) {
  return {{"B", HermitianOperator(diag({0.0, 0.5, 1.0, 1.5})), temperature}};
}

ProtocolSpec random_single_bath(std::uint64_t seed) {
  CampaignConfig config;
  config.family = CampaignFamily::protocol;
  return random_protocol_spec(config, seed);
}

ProtocolSpec random_cycle(std::uint64_t seed, CampaignFamily family = CampaignFamily::cycle) {
  CampaignConfig config;
  config.family = family;
  config.n_baths_range = {2, 2};
  return random_protocol_spec(config, seed);
}

TEST(Run, NullProtocol) {
  const auto ledger = run(null_protocol(qubit_h(), 1.0, one_bath()));
  EXPECT_LE(max_abs_diff(ledger.rho_f.matrix(), ledger.rho_i.matrix()), 1e-14);
  EXPECT_NEAR(ledger.balance.bath("B").heat, 0.0, 1e-14);
  EXPECT_NEAR(ledger.balance.W_ext, 0.0, 1e-14);
  EXPECT_NEAR(ledger.info.qc_mutual, 0.0, 1e-14);
  EXPECT_TRUE(ledger.balance.cyclic_hamiltonian);
  for (const auto& v : verify_applicable(ledger)) {
    EXPECT_TRUE(v.satisfied) << v.name;
    EXPECT_NEAR(v.lhs, 0.0, 1e-14) << v.name;
    EXPECT_NEAR(v.rhs, 0.0, 1e-14) << v.name;
  }
  EXPECT_NEAR(verify_clausius(ledger.balance).lhs, 0.0, 1e-14);
}

TEST(Run, InitialStateIsCanonicalProduct) {
  const auto spec = null_protocol(qubit_h(), 0.8, one_bath(1.7));
  const auto ledger = run(spec);
  const ComplexMatrix expected = testing::kron_loops(gibbs_state(qubit_h(), 1.0 / 0.8).matrix(),
                                                     gibbs_state(spec.baths[0].hamiltonian, 1.0 / 1.7).matrix());
  EXPECT_LE(max_abs_diff(ledger.rho_i.matrix(), expected), 1e-14);
}

TEST(Run, ClosedSystemWork) {
  auto spec = null_protocol(qubit_h(), 1.0);
  spec.stage2_unitary = random_unitary(2, 3);
  const auto ledger = run(spec);
  EXPECT_NEAR(ledger.balance.W_ext, -ledger.balance.delta_U_S, 1e-14);
  EXPECT_GT(std::abs(ledger.balance.delta_U_S), 1e-3);
  const auto law = verify_exact_second_law(ledger.balance);
  EXPECT_NEAR(law.lhs, -ledger.balance.delta_U_S, 1e-14);
  EXPECT_NEAR(law.rhs, 0.0, 1e-14);
  EXPECT_TRUE(law.satisfied);
}

TEST(Run, BranchCompositionMatchesSingleChannel) {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const auto spec = random_single_bath(seed);
    const auto ledger = run(spec);
    EXPECT_LE(max_abs_diff(ledger.rho_f.matrix(), apply_total_channel(spec, ledger.rho_i.matrix())), 1e-9);
  }
}

TEST(Run, StageIdentities) {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const auto ledger = run(random_single_bath(seed));
    const auto& d = ledger.diagnostics;
    EXPECT_NEAR(d.entropy_rho_1, ledger.S_initial, 1e-9);
    EXPECT_LE(d.feedback_entropy_drift, 1e-9);
    EXPECT_GE(ledger.S_final, d.mean_branch_entropy_3 - 1e-9);
    const auto& b = ledger.balance;
    EXPECT_NEAR(b.W_ext - b.total_heat() + b.delta_U_S, 0.0, 1e-10);
    EXPECT_TRUE(verify_entropy_inequality(ledger).satisfied);
    EXPECT_TRUE(verify_exact_second_law(ledger.balance).satisfied);
  }
}

TEST(Run, EnergyBookkeeping) {
  const auto spec = random_single_bath(5);
  const auto ledger = run(spec);
  const CompositeSpace space = spec.space();
  const ComplexMatrix bath_i = partial_trace(ledger.rho_i.matrix(), space, {"B1"});
  const ComplexMatrix bath_f = partial_trace(ledger.rho_f.matrix(), space, {"B1"});
  const double q = (spec.baths[0].hamiltonian.matrix() * (bath_i - bath_f)).trace().real();
  EXPECT_NEAR(ledger.balance.baths[0].heat, q, 1e-12);
  EXPECT_NEAR(ledger.balance.delta_F_S,
              free_energy(spec.system_hamiltonian_final, inverse_temperature(spec.system_temperature)) -
                  free_energy(spec.system_hamiltonian_initial, inverse_temperature(spec.system_temperature)),
              1e-12);
}

TEST(Run, TrivialChannelWithUnitaries) {
  auto spec = null_protocol(qubit_h(), 1.0, one_bath());
  spec.stage2_unitary = random_unitary(8, 1);
  spec.stage5_unitary = random_unitary(8, 2);
  spec.feedback_unitaries = {random_unitary(8, 3)};
  const auto v = verify_entropy_inequality(run(spec));
  EXPECT_NEAR(v.lhs, 0.0, 1e-9);
  EXPECT_NEAR(v.rhs, 0.0, 1e-9);
}

TEST(Run, OutcomeRelabelingLeavesLedgerUnchanged) {
  CampaignConfig config;
  config.n_outcomes_range = {3, 3};
  const auto spec = random_protocol_spec(config, 12);
  const std::vector<std::size_t> order{2, 0, 1};
  const auto a = run(spec).balance;
  const auto b = run(permute_outcomes(spec, order)).balance;
  EXPECT_NEAR(a.W_ext, b.W_ext, 1e-10);
  EXPECT_NEAR(a.qc_mutual, b.qc_mutual, 1e-10);
  EXPECT_NEAR(a.delta_U_S, b.delta_U_S, 1e-10);
  EXPECT_NEAR(a.baths[0].heat, b.baths[0].heat, 1e-10);
}

TEST(Run, ScheduleStagesMatchUnitaries) {
  auto spec = null_protocol(qubit_h(), 1.0, one_bath());
  const HermitianOperator h = random_hamiltonian(8, 4);
  const std::vector<HamiltonianSegment> schedule{{h, 0.4}, {random_hamiltonian(8, 5), 0.2}};
  spec.stage2_unitary = unitary_from_schedule(schedule);
  EXPECT_NO_THROW(spec.validate());
  EXPECT_TRUE(verify_exact_second_law(run(spec).balance).satisfied);
}

TEST(Spec, ValidationErrors) {
  auto bad_unitary = null_protocol(qubit_h(), 1.0, one_bath());
  bad_unitary.stage2_unitary *= 1.1;
  EXPECT_THROW(bad_unitary.validate(), std::invalid_argument);

  auto wrong_dim = null_protocol(qubit_h(), 1.0, one_bath());
  wrong_dim.stage5_unitary = ComplexMatrix::Identity(4, 4);
  EXPECT_THROW(wrong_dim.validate(), std::invalid_argument);

  auto feedback_count = null_protocol(qubit_h(), 1.0, one_bath());
  feedback_count.feedback_unitaries.push_back(ComplexMatrix::Identity(8, 8));
  EXPECT_THROW(feedback_count.validate(), std::invalid_argument);

  EXPECT_THROW(run(null_protocol(qubit_h(), -1.0)), std::invalid_argument);
}

TEST(Verifiers, PreconditionErrors) {
  const auto ledger = run(random_single_bath(3));
  EXPECT_THROW(verify_two_bath(ledger.balance, "B1", "B2"), PreconditionError);
  EnergyBalance informative = ledger.balance;
  informative.qc_mutual = 0.5;
  EXPECT_THROW(verify_clausius(informative), PreconditionError);
  EnergyBalance hot_bath = ledger.balance;
  hot_bath.baths[0].temperature *= 2.0;
  EXPECT_THROW(verify_isothermal(hot_bath), PreconditionError);
}

TEST(Verifiers, ToleranceBoundary) {
  EXPECT_TRUE(make_verdict("x", 1.0 + 5e-9, 1.0, 1e-8).satisfied);
  EXPECT_FALSE(make_verdict("x", 1.0 + 2e-8, 1.0, 1e-8).satisfied);
  EXPECT_NEAR(make_verdict("x", 0.25, 1.0, 1e-8).slack, 0.75, 1e-15);
}

TEST(Verifiers, ViolationDetected) {
  EnergyBalance b;
  b.temperature = 1.0;
  b.baths = {{"B", 1.0, 1.0}};
  b.W_ext = 1.0;
  b.qc_mutual = 0.1;
  EXPECT_FALSE(verify_exact_second_law(b).satisfied);
  EXPECT_FALSE(verify_isothermal(b).satisfied);
}

TEST(Verifiers, FeedbackFreeCycles) {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const auto ledger = run(random_cycle(seed));
    const auto& b = ledger.balance;
    ASSERT_FALSE(clausius_precondition(b)) << *clausius_precondition(b);
    EXPECT_LE(verify_clausius(b).lhs, 1e-8);
    const bool first_hot = b.baths[0].temperature > b.baths[1].temperature;
    const auto& hot = b.baths[first_hot ? 0 : 1];
    const auto& cold = b.baths[first_hot ? 1 : 0];
    const auto carnot = verify_two_bath(b, hot.label, cold.label);
    EXPECT_TRUE(carnot.satisfied);
    EXPECT_NEAR(carnot.rhs, (1.0 - cold.temperature / hot.temperature) * hot.heat, 1e-12);
  }
}

TEST(Verifiers, FeedbackCycles) {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const auto ledger = run(random_cycle(seed, CampaignFamily::feedback_cycle));
    for (const auto& v : verify_applicable(ledger)) EXPECT_TRUE(v.satisfied) << v.name << " seed " << seed;
  }
}

TEST(Verifiers, UninformativeCycle) {
  auto spec = random_cycle(7);
  const std::vector<double> weights{0.4, 0.6};
  const auto u = spec.feedback_unitaries.front();
  spec.channel = MeasurementChannel::uninformative(spec.system_dim(), weights);
  spec.feedback_unitaries = {u, u};
  const auto ledger = run(spec);
  EXPECT_NEAR(ledger.info.qc_mutual, 0.0, 1e-9);
  EXPECT_LE(verify_clausius(ledger.balance).lhs, 1e-8);
}

} // namespace
} // namespace qfb
