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

#include "qfeedback/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qfb {

namespace {

// Input unitaries may come from text files with limited precision.
constexpr double kUnitaryInputTolerance = 1e-9;
constexpr double kCycleTolerance = 1e-9;

void require_unitary(const ComplexMatrix& u, Index dim, const std::string& what) {
  if (u.rows() != dim || u.cols() != dim)
    throw DimensionMismatch(what + ": expected " + std::to_string(dim) + "x" + std::to_string(dim));
  const double residual = unitarity_residual(u);
  if (residual > kUnitaryInputTolerance) {
    ValidationReport report;
    report.violations.push_back({"unitary", residual});
    throw InvalidOperator(what, std::move(report));
  }
}

ComplexMatrix conjugate(const ComplexMatrix& u, const ComplexMatrix& rho) {
  return hermitian_part(u * rho * u.adjoint());
}

double trace_norm_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  return 0.5 * eigenvalues(hermitian_part(a - b)).cwiseAbs().sum();
}

} // namespace

/*******************************************************************************
 * SPEC
 ******************************************************************************/

CompositeSpace ProtocolSpec::space() const {
  std::vector<Index> dims{system_hamiltonian_initial.dim()};
  std::vector<std::string> labels{system_label};
  for (const auto& b : baths) {
    dims.push_back(b.hamiltonian.dim());
    labels.push_back(b.label);
  }
  return CompositeSpace(std::move(dims), std::move(labels));
}

void ProtocolSpec::validate() const {
  constants.check();
  if (!(system_temperature > 0.0)) throw std::invalid_argument("ProtocolSpec: system temperature must be positive");
  for (const auto& b : baths)
    if (!(b.temperature > 0.0))
      throw std::invalid_argument("ProtocolSpec: bath '" + b.label + "' temperature must be positive");
  if (system_hamiltonian_final.dim() != system_hamiltonian_initial.dim())
    throw DimensionMismatch("ProtocolSpec: initial and final system Hamiltonians differ in dimension");
  if (channel.dim() != system_dim())
    throw DimensionMismatch("ProtocolSpec: measurement channel does not act on the system factor");
  if (feedback_unitaries.size() != channel.size())
    throw std::invalid_argument("ProtocolSpec: need exactly one feedback unitary per measurement outcome");

  const Index total = space().total_dim();
  require_unitary(stage2_unitary, total, "ProtocolSpec stage2_unitary");
  require_unitary(stage5_unitary, total, "ProtocolSpec stage5_unitary");
  for (std::size_t k = 0; k < feedback_unitaries.size(); ++k)
    require_unitary(feedback_unitaries[k], total, "ProtocolSpec feedback_unitaries[" + std::to_string(k) + "]");
}

ProtocolSpec null_protocol(const HermitianOperator& system_hamiltonian, double temperature,
                           std::vector<BathSpec> baths) {
  Index total = system_hamiltonian.dim();
  for (const auto& b : baths) total *= b.hamiltonian.dim();
  const ComplexMatrix id = ComplexMatrix::Identity(total, total);
  return ProtocolSpec{
      .system_label = "S",
      .system_hamiltonian_initial = system_hamiltonian,
      .system_hamiltonian_final = system_hamiltonian,
      .system_temperature = temperature,
      .baths = std::move(baths),
      .stage2_unitary = id,
      .channel = MeasurementChannel::trivial(system_hamiltonian.dim()),
      .feedback_unitaries = {id},
      .stage5_unitary = id,
      .constants = {},
  };
}

ProtocolSpec permute_outcomes(const ProtocolSpec& spec, std::span<const std::size_t> order) {
  ProtocolSpec out = spec;
  out.channel = spec.channel.permuted(order);
  out.feedback_unitaries.clear();
  for (std::size_t k : order) out.feedback_unitaries.push_back(spec.feedback_unitaries.at(k));
  return out;
}

ComplexMatrix apply_total_channel(const ProtocolSpec& spec, const ComplexMatrix& rho_initial) {
  const CompositeSpace space = spec.space();
  const Index total = space.total_dim();
  if (rho_initial.rows() != total || rho_initial.cols() != total)
    throw DimensionMismatch("apply_total_channel: state does not match the composite space");
  ComplexMatrix out = ComplexMatrix::Zero(total, total);
  const auto& ops = spec.channel.operators();
  for (std::size_t k = 0; k < ops.size(); ++k) {
    const ComplexMatrix kraus = spec.stage5_unitary * spec.feedback_unitaries[k] *
                                space.embed(ops[k], spec.system_label) * spec.stage2_unitary;
    out += kraus * rho_initial * kraus.adjoint();
  }
  return hermitian_part(out);
}

/*******************************************************************************
 * LEDGER
 ******************************************************************************/

double EnergyBalance::total_heat() const {
  return std::accumulate(baths.begin(), baths.end(), 0.0, [](double acc, const BathHeat& b) { return acc + b.heat; });
}

const BathHeat& EnergyBalance::bath(const std::string& label) const {
  for (const auto& b : baths)
    if (b.label == label) return b;
  throw std::out_of_range("EnergyBalance: unknown bath '" + label + "'");
}

ProtocolLedger run(const ProtocolSpec& spec) {
  spec.validate();
  const CompositeSpace space = spec.space();
  const double beta = inverse_temperature(spec.system_temperature, spec.constants);

  // Stage 1: canonical product state.
  std::vector<ComplexMatrix> factors{gibbs_state(spec.system_hamiltonian_initial, beta).matrix()};
  std::vector<ComplexMatrix> canonical_final{gibbs_state(spec.system_hamiltonian_final, beta).matrix()};
  for (const auto& b : spec.baths) {
    const double beta_m = inverse_temperature(b.temperature, spec.constants);
    factors.push_back(gibbs_state(b.hamiltonian, beta_m).matrix());
    canonical_final.push_back(factors.back());
  }
  DensityOperator rho_i(tensor(factors));

  // Stage 2.
  DensityOperator rho_1(conjugate(spec.stage2_unitary, rho_i.matrix()));

  // Stage 3.
  const MeasurementChannel embedded = spec.channel.embedded(space, spec.system_label);
  MeasurementRecord record = measure(rho_1, embedded);

  // Stage 4.
  BranchEnsemble branches_3;
  ProtocolDiagnostics diag;
  for (std::size_t k = 0; k < record.branches.size(); ++k) {
    const Branch& b2 = record.branches.branches[k];
    Branch b3;
    b3.probability = b2.probability;
    if (b2.present()) {
      b3.state.emplace(conjugate(spec.feedback_unitaries[k], b2.state->matrix()));
      const double s2 = von_neumann_entropy(*b2.state);
      const double s3 = von_neumann_entropy(*b3.state);
      diag.mean_branch_entropy_2 += b2.probability * s2;
      diag.mean_branch_entropy_3 += b3.probability * s3;
      diag.feedback_entropy_drift = std::max(diag.feedback_entropy_drift, std::abs(s3 - s2));
    }
    branches_3.branches.push_back(std::move(b3));
  }
  const DensityOperator rho_3 = branches_3.average();

  // Stage 5.
  DensityOperator rho_f(conjugate(spec.stage5_unitary, rho_3.matrix()));

  diag.channel_residual = max_abs(rho_f.matrix() - apply_total_channel(spec, rho_i.matrix()));
  for (const auto& b : branches_3.branches)
    if (b.present()) diag.feedback_spread = std::max(diag.feedback_spread, max_abs(b.state->matrix() - rho_3.matrix()));
  const ComplexMatrix rho_can = tensor(canonical_final);
  diag.canonical_trace_distance = trace_norm_distance(rho_f.matrix(), rho_can);
  diag.cross_entropy_canonical =
      -(rho_f.matrix() * hermitian_log(make_hermitian_unchecked(hermitian_part(rho_can))).matrix()).trace().real();
  diag.entropy_rho_1 = von_neumann_entropy(rho_1);
  diag.entropy_rho_3 = von_neumann_entropy(rho_3);

  // Energy bookkeeping on the reduced states.
  const std::vector<std::string> keep_system{spec.system_label};
  const ComplexMatrix sys_i = partial_trace(rho_i.matrix(), space, keep_system);
  const ComplexMatrix sys_f = partial_trace(rho_f.matrix(), space, keep_system);

  EnergyBalance balance;
  balance.k_B = spec.constants.k_B;
  balance.temperature = spec.system_temperature;
  balance.cyclic_hamiltonian = spec.system_hamiltonian_initial.matrix() == spec.system_hamiltonian_final.matrix();

  const double e_s_i = internal_energy(sys_i, spec.system_hamiltonian_initial);
  const double e_s_f = internal_energy(sys_f, spec.system_hamiltonian_final);
  std::vector<double> e_b_i, e_b_f;
  for (const auto& b : spec.baths) {
    const std::vector<std::string> keep{b.label};
    e_b_i.push_back(internal_energy(partial_trace(rho_i.matrix(), space, keep), b.hamiltonian));
    e_b_f.push_back(internal_energy(partial_trace(rho_f.matrix(), space, keep), b.hamiltonian));
    balance.baths.push_back({b.label, b.temperature, e_b_i.back() - e_b_f.back()});
  }
  balance.delta_U_S = e_s_f - e_s_i;
  balance.delta_F_S = free_energy(spec.system_hamiltonian_final, beta) - free_energy(spec.system_hamiltonian_initial, beta);
  balance.W_ext = balance.total_heat() - balance.delta_U_S;

  InformationReport info = qc_mutual_info(rho_1, embedded);
  balance.qc_mutual = info.qc_mutual;

  const double s_i = von_neumann_entropy(rho_i);
  const double s_f = von_neumann_entropy(rho_f);

  return ProtocolLedger{
      .rho_i = std::move(rho_i),
      .rho_1 = std::move(rho_1),
      .rho_f = std::move(rho_f),
      .outcome_dist = std::move(record.distribution),
      .branches_2 = std::move(record.branches),
      .branches_3 = std::move(branches_3),
      .info = info,
      .E_S_initial = e_s_i,
      .E_S_final = e_s_f,
      .E_bath_initial = std::move(e_b_i),
      .E_bath_final = std::move(e_b_f),
      .balance = std::move(balance),
      .S_initial = s_i,
      .S_final = s_f,
      .diagnostics = diag,
  };
}

/*******************************************************************************
 * INEQUALITY VERIFIERS
 ******************************************************************************/

InequalityVerdict make_verdict(std::string name, double lhs, double rhs, double tolerance) {
  InequalityVerdict v;
  v.name = std::move(name);
  v.lhs = lhs;
  v.rhs = rhs;
  v.slack = rhs - lhs;
  v.tolerance = tolerance;
  v.satisfied = v.slack >= -tolerance;
  return v;
}

InequalityVerdict verify_entropy_inequality(const ProtocolLedger& ledger, double tolerance) {
  return make_verdict("entropy_inequality", ledger.S_initial - ledger.S_final, ledger.info.qc_mutual, tolerance);
}

InequalityVerdict verify_exact_second_law(const EnergyBalance& balance, double tolerance) {
  double lhs = -balance.delta_U_S;
  for (const auto& b : balance.baths) lhs += balance.temperature / b.temperature * b.heat;
  const double rhs = -balance.delta_F_S + balance.k_B * balance.temperature * balance.qc_mutual;
  return make_verdict("exact_second_law", lhs, rhs, tolerance);
}

std::optional<std::string> clausius_precondition(const EnergyBalance& balance) {
  if (balance.qc_mutual > kCycleTolerance) return "not a feedback-free cycle: I(rho_1:X) > 0";
  if (std::abs(balance.delta_U_S) > kCycleTolerance) return "not a feedback-free cycle: dU^S != 0";
  if (std::abs(balance.delta_F_S) > kCycleTolerance) return "not a feedback-free cycle: dF^S != 0";
  return std::nullopt;
}

InequalityVerdict verify_clausius(const EnergyBalance& balance, double tolerance) {
  if (auto why = clausius_precondition(balance)) throw PreconditionError(*why);
  double lhs = 0.0;
  for (const auto& b : balance.baths) lhs += b.heat / b.temperature;
  return make_verdict("clausius", lhs, 0.0, tolerance);
}

std::optional<std::string> isothermal_precondition(const EnergyBalance& balance) {
  if (balance.baths.size() != 1) return "isothermal bound needs exactly one bath";
  const double t1 = balance.baths.front().temperature;
  if (std::abs(t1 - balance.temperature) > 1e-12 * std::max(1.0, balance.temperature))
    return "isothermal bound needs the bath at the system temperature";
  return std::nullopt;
}

InequalityVerdict verify_isothermal(const EnergyBalance& balance, double tolerance) {
  if (auto why = isothermal_precondition(balance)) throw PreconditionError(*why);
  const double rhs = -balance.delta_F_S + balance.k_B * balance.temperature * balance.qc_mutual;
  return make_verdict("isothermal", balance.W_ext, rhs, tolerance);
}

std::optional<std::string> two_bath_precondition(const EnergyBalance& balance, const std::string& hot_label,
                                                 const std::string& cold_label) {
  if (balance.baths.size() != 2) return "two-bath bound needs exactly two baths";
  const auto find = [&](const std::string& label) -> const BathHeat* {
    for (const auto& b : balance.baths)
      if (b.label == label) return &b;
    return nullptr;
  };
  const BathHeat* hot = find(hot_label);
  const BathHeat* cold = find(cold_label);
  if (!hot || !cold || hot == cold) return "two-bath bound needs distinct hot and cold bath labels";
  if (!(hot->temperature > cold->temperature)) return "two-bath bound needs T_H > T_L";
  if (!balance.cyclic_hamiltonian) return "two-bath bound needs H_i^S == H_f^S";
  if (std::abs(balance.delta_U_S) > kCycleTolerance) return "two-bath bound needs dU^S == 0";
  if (std::abs(balance.delta_F_S) > kCycleTolerance) return "two-bath bound needs dF^S == 0";
  return std::nullopt;
}

InequalityVerdict verify_two_bath(const EnergyBalance& balance, const std::string& hot_label,
                                  const std::string& cold_label, double tolerance) {
  if (auto why = two_bath_precondition(balance, hot_label, cold_label)) throw PreconditionError(*why);
  const BathHeat& hot = balance.bath(hot_label);
  const BathHeat& cold = balance.bath(cold_label);
  const double rhs =
      (1.0 - cold.temperature / hot.temperature) * hot.heat + balance.k_B * cold.temperature * balance.qc_mutual;
  return make_verdict("two_bath", balance.W_ext, rhs, tolerance);
}

std::vector<InequalityVerdict> verify_applicable(const EnergyBalance& balance, double tolerance) {
  std::vector<InequalityVerdict> out{verify_exact_second_law(balance, tolerance)};
  if (!clausius_precondition(balance)) out.push_back(verify_clausius(balance, tolerance));
  if (!isothermal_precondition(balance)) out.push_back(verify_isothermal(balance, tolerance));
  if (balance.baths.size() == 2) {
    const bool first_hot = balance.baths[0].temperature >= balance.baths[1].temperature;
    const auto& hot = balance.baths[first_hot ? 0 : 1].label;
    const auto& cold = balance.baths[first_hot ? 1 : 0].label;
    if (!two_bath_precondition(balance, hot, cold)) out.push_back(verify_two_bath(balance, hot, cold, tolerance));
  }
  return out;
}

std::vector<InequalityVerdict> verify_applicable(const ProtocolLedger& ledger, double tolerance) {
  std::vector<InequalityVerdict> out{verify_entropy_inequality(ledger, tolerance)};
  for (auto& v : verify_applicable(ledger.balance, tolerance)) out.push_back(std::move(v));
  return out;
}

} // namespace qfb
