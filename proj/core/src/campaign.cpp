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

#include "qfeedback/campaign.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <random>
#include <thread>

#include "qfeedback/information.hpp"

namespace qfb {

namespace {

constexpr double kClosedForm = 1e-9;
constexpr double kTwoSpectra = 1e-8;
constexpr std::size_t kMaxFailureMessages = 10;

/// Deterministic source of choices and sub-seeds for one instance.
class Draw {
 public:
  explicit Draw(std::uint64_t seed) : seed_(seed), rng_(seed) {}

  std::uint64_t next_seed() { return mix_seed(seed_, stream_++); }

  template <typename T>
  const T& pick(const std::vector<T>& values) {
    std::uniform_int_distribution<std::size_t> dist(0, values.size() - 1);
    return values[dist(rng_)];
  }
  int in_range(IntRange r) {
    std::uniform_int_distribution<int> dist(r.min, r.max);
    return dist(rng_);
  }
  double uniform(double lo, double hi) {
    std::uniform_real_distribution<double> dist(lo, hi);
    return dist(rng_);
  }
  std::mt19937_64& rng() { return rng_; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 rng_;
  std::uint64_t stream_ = 0;
};

std::vector<double> bath_temperatures(Draw& draw, std::size_t n) {
  std::vector<double> t;
  while (t.size() < n) {
    const double candidate = draw.uniform(0.5, 3.0);
    const bool distinct = std::all_of(t.begin(), t.end(), [&](double x) { return std::abs(x - candidate) > 0.05; });
    if (distinct) t.push_back(candidate);
  }
  return t;
}

std::vector<BathSpec> random_baths(const CampaignConfig& config, Draw& draw) {
  const auto n = static_cast<std::size_t>(draw.in_range(config.n_baths_range));
  const auto temps = bath_temperatures(draw, n);
  std::vector<BathSpec> baths;
  for (std::size_t m = 0; m < n; ++m) {
    const Index dim = draw.pick(config.bath_dims);
    baths.push_back({"B" + std::to_string(m + 1), random_hamiltonian(dim, draw.next_seed()), temps[m]});
  }
  return baths;
}

Index bath_space_dim(const std::vector<BathSpec>& baths) {
  Index d = 1;
  for (const auto& b : baths) d *= b.hamiltonian.dim();
  return d;
}

/// sum_s |e_s><e_s| (x) V_s with Haar V_s: commutes with H^S (x) 1.
ComplexMatrix system_energy_conserving_unitary(const Spectrum& system, Index bath_dim, Draw& draw) {
  const Index ds = system.vectors.cols();
  ComplexMatrix u = ComplexMatrix::Zero(ds * bath_dim, ds * bath_dim);
  for (Index s = 0; s < ds; ++s) {
    const ComplexMatrix projector = system.vectors.col(s) * system.vectors.col(s).adjoint();
    u += tensor(projector, random_unitary(bath_dim, draw.next_seed()));
  }
  return u;
}

/// Measurement operators diagonal in the system energy basis with random
/// phases. `conditional(s, k)` is the probability of outcome k given level s.
MeasurementChannel energy_diagonal_channel(const Spectrum& system, const RealMatrix& conditional, Draw& draw) {
  const Index ds = system.vectors.cols();
  std::uniform_real_distribution<double> angle(0.0, 2.0 * 3.14159265358979323846);
  std::vector<ComplexMatrix> ops;
  for (Index k = 0; k < conditional.cols(); ++k) {
    ComplexVector diag(ds);
    for (Index s = 0; s < ds; ++s) diag(s) = std::sqrt(conditional(s, k)) * std::polar(1.0, angle(draw.rng()));
    ops.push_back(system.vectors * diag.asDiagonal() * system.vectors.adjoint());
  }
  return MeasurementChannel(std::move(ops));
}

RealMatrix random_conditional(Index rows, Index cols, Draw& draw) {
  RealMatrix c(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    const auto row = random_distribution(static_cast<std::size_t>(cols), draw.next_seed());
    for (Index k = 0; k < cols; ++k) c(i, k) = row[static_cast<std::size_t>(k)];
  }
  return c;
}

ProtocolSpec draw_protocol(const CampaignConfig& config, Draw& draw) {
  const Index ds = draw.pick(config.system_dims);
  const auto n_out = static_cast<std::size_t>(draw.in_range(config.n_outcomes_range));
  auto baths = random_baths(config, draw);
  const Index total = ds * bath_space_dim(baths);

  HermitianOperator h_i = random_hamiltonian(ds, draw.next_seed());
  HermitianOperator h_f = draw.uniform(0.0, 1.0) < 0.5 ? h_i : random_hamiltonian(ds, draw.next_seed());
  // The system starts and ends at the temperature of the first bath.
  const double t_system = baths.empty() ? draw.uniform(0.5, 3.0) : baths.front().temperature;

  std::vector<ComplexMatrix> feedback;
  for (std::size_t k = 0; k < n_out; ++k) feedback.push_back(random_unitary(total, draw.next_seed()));
  return ProtocolSpec{
      .system_label = "S",
      .system_hamiltonian_initial = std::move(h_i),
      .system_hamiltonian_final = std::move(h_f),
      .system_temperature = t_system,
      .baths = std::move(baths),
      .stage2_unitary = random_unitary(total, draw.next_seed()),
      .channel = random_channel(ds, n_out, draw.next_seed()),
      .feedback_unitaries = std::move(feedback),
      .stage5_unitary = random_unitary(total, draw.next_seed()),
      .constants = {},
  };
}

ProtocolSpec draw_cycle(const CampaignConfig& config, Draw& draw, bool with_feedback) {
  const Index ds = draw.pick(config.system_dims);
  const auto n_out = static_cast<std::size_t>(draw.in_range(config.n_outcomes_range));
  auto baths = random_baths(config, draw);
  const Index bath_dim = bath_space_dim(baths);

  HermitianOperator h = random_hamiltonian(ds, draw.next_seed());
  const Spectrum levels = eigh(h);
  const double t_system = baths.front().temperature;

  MeasurementChannel channel = MeasurementChannel::trivial(ds);
  if (with_feedback) {
    channel = energy_diagonal_channel(levels, random_conditional(ds, static_cast<Index>(n_out), draw), draw);
  } else if (n_out > 1) {
    // Uninformative: every level has the same outcome distribution.
    const auto w = random_distribution(n_out, draw.next_seed());
    RealMatrix c(ds, static_cast<Index>(n_out));
    for (Index s = 0; s < ds; ++s)
      for (Index k = 0; k < c.cols(); ++k) c(s, k) = w[static_cast<std::size_t>(k)];
    channel = energy_diagonal_channel(levels, c, draw);
  }

  std::vector<ComplexMatrix> feedback;
  for (std::size_t k = 0; k < channel.size(); ++k)
    feedback.push_back(system_energy_conserving_unitary(levels, bath_dim, draw));
  return ProtocolSpec{
      .system_label = "S",
      .system_hamiltonian_initial = h,
      .system_hamiltonian_final = h,
      .system_temperature = t_system,
      .baths = std::move(baths),
      .stage2_unitary = system_energy_conserving_unitary(levels, bath_dim, draw),
      .channel = std::move(channel),
      .feedback_unitaries = std::move(feedback),
      .stage5_unitary = system_energy_conserving_unitary(levels, bath_dim, draw),
      .constants = {},
  };
}

void append_information_bounds(std::vector<InequalityVerdict>& out, const InformationReport& info) {
  out.push_back(make_verdict("qc_mutual_nonnegative", 0.0, info.qc_mutual, kClosedForm));
  out.push_back(make_verdict("qc_mutual_below_shannon", info.qc_mutual, info.shannon, kClosedForm));
}

std::vector<InequalityVerdict> protocol_checks(const ProtocolLedger& ledger, double tolerance) {
  std::vector<InequalityVerdict> out = verify_applicable(ledger, tolerance);
  const auto& d = ledger.diagnostics;
  const auto& b = ledger.balance;
  out.push_back(make_verdict("channel_composition", d.channel_residual, 0.0, kClosedForm));
  out.push_back(equality_verdict("stage2_entropy_preserved", d.entropy_rho_1, ledger.S_initial, kClosedForm));
  out.push_back(make_verdict("feedback_entropy_preserved", d.feedback_entropy_drift, 0.0, kClosedForm));
  out.push_back(make_verdict("convexity_step", d.mean_branch_entropy_3, d.entropy_rho_3, kClosedForm));
  out.push_back(equality_verdict("first_law_identity", b.W_ext - b.total_heat() + b.delta_U_S, 0.0, 1e-10));
  append_information_bounds(out, ledger.info);
  return out;
}

std::vector<InequalityVerdict> protocol_instance(const CampaignConfig& config, Draw& draw) {
  return protocol_checks(run(draw_protocol(config, draw)), config.tolerance);
}

std::vector<InequalityVerdict> cycle_instance(const CampaignConfig& config, Draw& draw, bool with_feedback) {
  const ProtocolSpec spec = draw_cycle(config, draw, with_feedback);
  const ProtocolLedger ledger = run(spec);
  const auto& b = ledger.balance;
  std::vector<InequalityVerdict> out;
  out.push_back(verify_entropy_inequality(ledger, config.tolerance));
  out.push_back(verify_exact_second_law(b, config.tolerance));
  out.push_back(equality_verdict("cycle_energy_conserved", b.delta_U_S, 0.0, kClosedForm));
  if (!with_feedback) out.push_back(verify_clausius(b, config.tolerance));
  if (b.baths.size() == 2) {
    const bool first_hot = b.baths[0].temperature > b.baths[1].temperature;
    out.push_back(verify_two_bath(b, b.baths[first_hot ? 0 : 1].label, b.baths[first_hot ? 1 : 0].label,
                                  config.tolerance));
  }
  append_information_bounds(out, ledger.info);
  return out;
}

std::vector<InequalityVerdict> information_instance(const CampaignConfig& config, Draw& draw) {
  const Index dim = draw.pick(config.system_dims);
  const auto n_out = static_cast<std::size_t>(draw.in_range(config.n_outcomes_range));
  const Index rank = static_cast<Index>(draw.in_range({1, static_cast<int>(dim)}));
  const DensityOperator rho = random_density(dim, draw.next_seed(), rank);
  const MeasurementChannel channel = random_channel(dim, n_out, draw.next_seed());

  std::vector<InequalityVerdict> out;
  const InformationReport info = qc_mutual_info(rho, channel);
  append_information_bounds(out, info);
  out.push_back(equality_verdict("decomposition_identity", info.qc_mutual, info.holevo_chi - info.delta_s_meas,
                                 kTwoSpectra));
  out.push_back(equality_verdict("h_tilde_direct_form", info.h_tilde, h_tilde_direct(rho, channel), kTwoSpectra));
  out.push_back(make_verdict("subadditivity_step", info.h_tilde, info.s_rho + info.shannon, kClosedForm));

  // p_k = tr(sqrt(rho) D_k sqrt(rho)) = tr(sqrt(D_k) rho sqrt(D_k)).
  const MeasurementRecord record = measure(rho, channel);
  const HermitianOperator root_rho = hermitian_sqrt(rho.as_hermitian());
  const auto elements = povm(channel);
  double trace_gap = 0.0;
  for (std::size_t k = 0; k < elements.size(); ++k) {
    const double t1 = (root_rho.matrix() * elements[k].matrix() * root_rho.matrix()).trace().real();
    const double t2 = matrix_sqrt_sandwich(elements[k], rho).matrix().trace().real();
    trace_gap = std::max({trace_gap, std::abs(t1 - record.distribution[k]), std::abs(t2 - record.distribution[k])});
  }
  out.push_back(make_verdict("sandwich_trace_identity", trace_gap, 0.0, kClosedForm));

  const SigmaPair sigma = sigma_pair(rho, channel);
  const double s1 = von_neumann_entropy(sigma.sigma1);
  const double s2 = von_neumann_entropy(sigma.sigma2);
  out.push_back(equality_verdict("sigma_entropies_equal", s1, s2, kTwoSpectra));
  out.push_back(equality_verdict("sigma2_entropy_is_h_tilde", s2, info.h_tilde, kTwoSpectra));
  out.push_back(make_verdict("sigma1_q_marginal",
                             max_abs(partial_trace(sigma.sigma1.matrix(), sigma.space, {"Q"}) - rho.matrix()), 0.0,
                             kClosedForm));
  out.push_back(make_verdict("sigma1_r_marginal",
                             max_abs(partial_trace(sigma.sigma1.matrix(), sigma.space, {"R"}) - sigma.r_marginal.matrix()),
                             0.0, kClosedForm));

  const RealMatrix d = dij_matrix(rho, channel);
  const double row_gap = (d.rowwise().sum().array() - 1.0).abs().maxCoeff();
  const double col_gap = (d.colwise().sum().array() - 1.0).abs().maxCoeff();
  out.push_back(make_verdict("dij_doubly_stochastic", std::max(row_gap, col_gap), 0.0, kTwoSpectra));
  out.push_back(make_verdict("dij_nonnegative", 0.0, d.minCoeff(), kClosedForm));
  out.push_back(make_verdict("averaging_increases_entropy", info.s_rho,
                             von_neumann_entropy(averaged_sandwich(rho, channel)), kClosedForm));
  return out;
}

/// rho = V diag(q) V^dagger with a minimum spectral gap, so the eigenbasis is
/// well defined.
DensityOperator nondegenerate_state(Index dim, const ComplexMatrix& basis, Draw& draw) {
  std::vector<double> q;
  for (int attempt = 0;; ++attempt) {
    q = random_distribution(static_cast<std::size_t>(dim), draw.next_seed());
    std::vector<double> sorted = q;
    std::sort(sorted.begin(), sorted.end());
    double gap = 1.0;
    for (std::size_t i = 1; i < sorted.size(); ++i) gap = std::min(gap, sorted[i] - sorted[i - 1]);
    if (gap > 1e-3 || attempt > 1000) break;
  }
  RealVector qv(dim);
  for (Index i = 0; i < dim; ++i) qv(i) = q[static_cast<std::size_t>(i)];
  return DensityOperator(basis * qv.cast<Complex>().asDiagonal() * basis.adjoint());
}

std::vector<InequalityVerdict> extremal_instance(const CampaignConfig& config, Draw& draw) {
  std::vector<InequalityVerdict> out;
  const Index dim = draw.pick(config.system_dims);

  {
    // D_k = w_k 1 realized with disturbing measurement operators sqrt(w_k) U_k.
    const auto n_out = static_cast<std::size_t>(draw.in_range(config.n_outcomes_range));
    const Index rank = static_cast<Index>(draw.in_range({1, static_cast<int>(dim)}));
    const DensityOperator rho = random_density(dim, draw.next_seed(), rank);
    const auto w = random_distribution(n_out, draw.next_seed());
    std::vector<ComplexMatrix> ops;
    for (std::size_t k = 0; k < n_out; ++k) ops.push_back(std::sqrt(w[k]) * random_unitary(dim, draw.next_seed()));
    const InformationReport info = qc_mutual_info(rho, MeasurementChannel(std::move(ops)));
    out.push_back(make_verdict("uninformative_zero_information", info.qc_mutual, 0.0, kClosedForm));
    out.push_back(make_verdict("qc_mutual_nonnegative", 0.0, info.qc_mutual, kClosedForm));
  }
  {
    // Projectors onto groups of rho's eigenvectors.
    const auto n_out = static_cast<Index>(std::min<Index>(draw.in_range(config.n_outcomes_range), dim));
    const ComplexMatrix basis = random_unitary(dim, draw.next_seed());
    const DensityOperator rho = nondegenerate_state(dim, basis, draw);
    std::vector<Index> order(static_cast<std::size_t>(dim));
    std::iota(order.begin(), order.end(), Index{0});
    std::shuffle(order.begin(), order.end(), draw.rng());
    std::vector<Index> group(static_cast<std::size_t>(dim));
    std::uniform_int_distribution<Index> any_group(0, n_out - 1);
    for (Index i = 0; i < dim; ++i) group[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = i < n_out ? i : any_group(draw.rng());
    std::vector<ComplexMatrix> ops(static_cast<std::size_t>(n_out), ComplexMatrix::Zero(dim, dim));
    for (Index i = 0; i < dim; ++i)
      ops[static_cast<std::size_t>(group[static_cast<std::size_t>(i)])] += basis.col(i) * basis.col(i).adjoint();
    const MeasurementChannel channel(std::move(ops));
    const InformationReport info = qc_mutual_info(rho, channel);
    out.push_back(equality_verdict("projective_full_information", info.qc_mutual, info.shannon, kClosedForm));
    out.push_back(make_verdict("projective_is_classical", max_commutator(rho, channel), 0.0, kClosedForm));
  }
  return out;
}

std::vector<InequalityVerdict> classical_instance(const CampaignConfig& config, Draw& draw) {
  const Index dim = draw.pick(config.system_dims);
  const auto n_out = static_cast<Index>(draw.in_range(config.n_outcomes_range));
  const ComplexMatrix basis = random_unitary(dim, draw.next_seed());
  const DensityOperator rho = nondegenerate_state(dim, basis, draw);
  const RealMatrix c = random_conditional(dim, n_out, draw);
  std::vector<ComplexMatrix> ops;
  for (Index k = 0; k < n_out; ++k) {
    const RealVector root = c.col(k).cwiseSqrt();
    ops.push_back(basis * root.cast<Complex>().asDiagonal() * basis.adjoint());
  }
  const MeasurementChannel channel(std::move(ops));

  // Prior and conditional read back from the state's own eigenbasis.
  const Spectrum s = eigh(rho.matrix());
  const auto elements = povm(channel);
  std::vector<double> q(static_cast<std::size_t>(dim));
  RealMatrix conditional(dim, n_out);
  for (Index i = 0; i < dim; ++i) {
    q[static_cast<std::size_t>(i)] = s.values(i);
    for (Index k = 0; k < n_out; ++k)
      conditional(i, k) =
          (s.vectors.col(i).adjoint() * elements[static_cast<std::size_t>(k)].matrix() * s.vectors.col(i))(0, 0).real();
  }

  std::vector<InequalityVerdict> out;
  const InformationReport info = qc_mutual_info(rho, channel);
  out.push_back(equality_verdict("classical_reduction", info.qc_mutual, classical_mutual_info_oracle(q, conditional),
                                 kClosedForm));
  out.push_back(make_verdict("classical_detected", max_commutator(rho, channel), 0.0, kClosedForm));
  double branch_commutator = 0.0;
  for (const auto& b : measure(rho, channel).branches.branches)
    if (b.present())
      branch_commutator =
          std::max(branch_commutator, max_abs(b.state->matrix() * rho.matrix() - rho.matrix() * b.state->matrix()));
  out.push_back(make_verdict("classical_branches_commute", branch_commutator, 0.0, kTwoSpectra));
  append_information_bounds(out, info);
  return out;
}

} // namespace

std::string_view to_string(CampaignFamily family) {
  switch (family) {
    case CampaignFamily::protocol: return "protocol";
    case CampaignFamily::cycle: return "cycle";
    case CampaignFamily::feedback_cycle: return "feedback_cycle";
    case CampaignFamily::information: return "information";
    case CampaignFamily::extremal: return "extremal";
    case CampaignFamily::classical: return "classical";
  }
  return "unknown";
}

CampaignFamily campaign_family_from_string(std::string_view name) {
  for (auto f : {CampaignFamily::protocol, CampaignFamily::cycle, CampaignFamily::feedback_cycle,
                 CampaignFamily::information, CampaignFamily::extremal, CampaignFamily::classical})
    if (to_string(f) == name) return f;
  throw std::invalid_argument("unknown campaign family '" + std::string(name) + "'");
}

void CampaignConfig::validate() const {
  if (n_instances < 1) throw std::invalid_argument("CampaignConfig: n_instances must be at least 1");
  if (system_dims.empty() || bath_dims.empty()) throw std::invalid_argument("CampaignConfig: dimension lists must be non-empty");
  for (Index d : system_dims)
    if (d < 1) throw std::invalid_argument("CampaignConfig: dimensions must be at least 1");
  for (Index d : bath_dims)
    if (d < 1) throw std::invalid_argument("CampaignConfig: dimensions must be at least 1");
  if (n_outcomes_range.min < 1 || n_outcomes_range.max < n_outcomes_range.min)
    throw std::invalid_argument("CampaignConfig: invalid outcome range");
  if (n_baths_range.min < 0 || n_baths_range.max < n_baths_range.min)
    throw std::invalid_argument("CampaignConfig: invalid bath range");
  if (!(tolerance >= 0.0)) throw std::invalid_argument("CampaignConfig: tolerance must be non-negative");
  if ((family == CampaignFamily::cycle || family == CampaignFamily::feedback_cycle) && n_baths_range.min < 1)
    throw std::invalid_argument("CampaignConfig: cycle families need at least one bath");
}

std::size_t CampaignReport::total_checked() const {
  std::size_t n = 0;
  for (const auto& [name, s] : verdicts) n += s.checked;
  return n;
}

std::size_t CampaignReport::total_violations() const {
  std::size_t n = 0;
  for (const auto& [name, s] : verdicts) n += s.violations();
  return n;
}

std::uint64_t instance_seed(std::uint64_t campaign_seed, std::size_t index) { return mix_seed(campaign_seed, index); }

InequalityVerdict equality_verdict(std::string name, double a, double b, double tolerance) {
  return make_verdict(std::move(name), std::abs(a - b), 0.0, tolerance);
}

ProtocolSpec random_protocol_spec(const CampaignConfig& config, std::uint64_t seed) {
  Draw draw(seed);
  switch (config.family) {
    case CampaignFamily::protocol: return draw_protocol(config, draw);
    case CampaignFamily::cycle: return draw_cycle(config, draw, false);
    case CampaignFamily::feedback_cycle: return draw_cycle(config, draw, true);
    default: throw std::invalid_argument("random_protocol_spec: family does not draw protocols");
  }
}

std::vector<InequalityVerdict> run_instance(const CampaignConfig& config, std::uint64_t seed) {
  Draw draw(seed);
  switch (config.family) {
    case CampaignFamily::protocol: return protocol_instance(config, draw);
    case CampaignFamily::cycle: return cycle_instance(config, draw, false);
    case CampaignFamily::feedback_cycle: return cycle_instance(config, draw, true);
    case CampaignFamily::information: return information_instance(config, draw);
    case CampaignFamily::extremal: return extremal_instance(config, draw);
    case CampaignFamily::classical: return classical_instance(config, draw);
  }
  throw std::logic_error("run_instance: unhandled family");
}

CampaignReport random_campaign(const CampaignConfig& config) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();

  std::vector<InstanceRecord> records(config.n_instances);
  const auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      InstanceRecord& r = records[i];
      r.index = i;
      r.seed = instance_seed(config.seed, i);
      try {
        r.verdicts = run_instance(config, r.seed);
      } catch (const std::exception& e) {
        r.error = e.what();
      }
    }
  };

  unsigned threads = config.threads ? config.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, config.n_instances));
  if (threads <= 1) {
    work(0, config.n_instances);
  } else {
    std::vector<std::jthread> pool;
    const std::size_t chunk = (config.n_instances + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
      const std::size_t begin = t * chunk;
      const std::size_t end = std::min(config.n_instances, begin + chunk);
      if (begin < end) pool.emplace_back(work, begin, end);
    }
  }

  // Reduce in instance order; ties in worst slack keep the earliest instance.
  CampaignReport report;
  report.config = config;
  report.instances_run = records.size();
  for (const auto& r : records) {
    if (r.error) {
      ++report.failures;
      if (report.failure_messages.size() < kMaxFailureMessages)
        report.failure_messages.push_back("instance " + std::to_string(r.index) + " (seed " + std::to_string(r.seed) +
                                          "): " + *r.error);
      continue;
    }
    for (const auto& v : r.verdicts) {
      auto [it, inserted] = report.verdicts.try_emplace(v.name);
      VerdictSummary& s = it->second;
      if (inserted || v.slack < s.worst_slack) {
        s.worst_slack = v.slack;
        s.arg_worst_seed = r.seed;
      }
      s.tolerance = v.tolerance;
      ++s.checked;
      if (v.satisfied) ++s.satisfied;
    }
  }
  if (config.keep_instances) report.instances = std::move(records);
  report.wall_time_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

} // namespace qfb
