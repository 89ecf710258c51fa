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


#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qfeedback/campaign.hpp"
#include "qfeedback/report.hpp"
#include "qfeedback/scenario.hpp"
#include "qfeedback/spec_io.hpp"

namespace {

constexpr int kExitViolations = 1;
constexpr int kExitError = 2;

struct OutputFlags {
  std::string format = "json";
  std::string out = "-";
  bool timing = false;
  bool no_states = false;
};

void add_output_flags(CLI::App* cmd, OutputFlags& flags) {
  cmd->add_option("--format", flags.format, "Report format")->check(CLI::IsMember({"json", "text"}));
  cmd->add_option("--out", flags.out, "Output path, - for stdout");
}

// "3" or "2-4".
qfb::IntRange parse_range(const std::string& text) {
  const auto dash = text.find('-');
  try {
    if (dash == std::string::npos) {
      const int v = std::stoi(text);
      return {v, v};
    }
    return {std::stoi(text.substr(0, dash)), std::stoi(text.substr(dash + 1))};
  } catch (const std::logic_error&) {
    throw CLI::ValidationError("range", "expected N or MIN-MAX, got '" + text + "'");
  }
}

struct CampaignFlags {
  std::uint64_t seed = 1;
  std::size_t instances = 100;
  std::vector<qfb::Index> dims{2};
  std::vector<qfb::Index> bath_dims{4};
  std::string outcomes = "2";
  std::string baths = "1";
  std::string family = "protocol";
  double tolerance = qfb::kInequalityTolerance;
  unsigned threads = 0;
  bool per_instance = false;

  qfb::CampaignConfig config() const {
    qfb::CampaignConfig c;
    c.seed = seed;
    c.n_instances = instances;
    c.family = qfb::campaign_family_from_string(family);
    c.system_dims = dims;
    c.bath_dims = bath_dims;
    c.n_outcomes_range = parse_range(outcomes);
    c.n_baths_range = parse_range(baths);
    c.tolerance = tolerance;
    c.threads = threads;
    c.keep_instances = per_instance;
    c.validate();
    return c;
  }
};

void add_draw_flags(CLI::App* cmd, CampaignFlags& flags) {
  cmd->add_option("--seed", flags.seed, "Campaign seed");
  cmd->add_option("--dims", flags.dims, "System dimensions to draw from")->delimiter(',');
  cmd->add_option("--bath-dims", flags.bath_dims, "Bath dimensions to draw from")->delimiter(',');
  cmd->add_option("--outcomes", flags.outcomes, "Outcome count, N or MIN-MAX");
  cmd->add_option("--baths", flags.baths, "Bath count, N or MIN-MAX");
  cmd->add_option("--family", flags.family,
                  "protocol, cycle, feedback_cycle, information, extremal or classical");
}

qfb::ReportOptions report_options(const OutputFlags& out, double tolerance) {
  qfb::ReportOptions options;
  options.include_timing = out.timing;
  options.include_states = !out.no_states;
  options.tolerance = tolerance;
  return options;
}

bool all_satisfied(const std::vector<qfb::InequalityVerdict>& verdicts) {
  for (const auto& v : verdicts)
    if (!v.satisfied) return false;
  return true;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum feedback second-law ledgers and randomized verification"};
  app.require_subcommand(1);

  qfb::PhysicalConstants constants;
  double tolerance = qfb::kInequalityTolerance;

  OutputFlags szilard_out;
  double szilard_temp = 1.0;
  double szilard_error = 0.0;
  auto* szilard = app.add_subcommand("szilard", "One-molecule engine with a noisy left/right measurement");
  szilard->add_option("--temp", szilard_temp, "Bath temperature");
  szilard->add_option("--error", szilard_error, "Measurement error probability in [0, 0.5]");
  szilard->add_option("--kB", constants.k_B, "Boltzmann constant");
  szilard->add_option("--tolerance", tolerance, "Inequality tolerance");
  add_output_flags(szilard, szilard_out);

  OutputFlags carnot_out;
  double t_hot = 2.0;
  double t_cold = 1.0;
  double q_hot = 10.0;
  auto* carnot = app.add_subcommand("carnot", "Two-bath cycle with an embedded Szilard step");
  carnot->add_option("--t-hot", t_hot, "Hot bath temperature");
  carnot->add_option("--t-cold", t_cold, "Cold bath temperature");
  carnot->add_option("--q-hot", q_hot, "Heat drawn from the hot bath");
  carnot->add_option("--kB", constants.k_B, "Boltzmann constant");
  carnot->add_option("--tolerance", tolerance, "Inequality tolerance");
  add_output_flags(carnot, carnot_out);

  OutputFlags campaign_out;
  CampaignFlags campaign_flags;
  auto* campaign = app.add_subcommand("campaign", "Randomized verification campaign");
  add_draw_flags(campaign, campaign_flags);
  campaign->add_option("--instances", campaign_flags.instances, "Number of instances");
  campaign->add_option("--tolerance", campaign_flags.tolerance, "Inequality tolerance");
  campaign->add_option("--threads", campaign_flags.threads, "Worker threads, 0 for all cores");
  campaign->add_flag("--per-instance", campaign_flags.per_instance, "Include per-instance verdicts");
  campaign->add_flag("--timing", campaign_out.timing, "Include wall time (breaks byte-identical reruns)");
  add_output_flags(campaign, campaign_out);

  OutputFlags verify_out;
  std::string spec_path;
  auto* verify = app.add_subcommand("verify-file", "Run a JSON protocol spec and check every applicable bound");
  verify->add_option("spec", spec_path, "Protocol spec JSON")->required();
  verify->add_option("--tolerance", tolerance, "Inequality tolerance");
  verify->add_flag("--no-states", verify_out.no_states, "Omit density matrices from the report");
  add_output_flags(verify, verify_out);

  CampaignFlags sample_flags;
  std::string sample_out = "-";
  auto* sample = app.add_subcommand("random-spec", "Write a random protocol spec as JSON");
  add_draw_flags(sample, sample_flags);
  sample->add_option("--out", sample_out, "Output path, - for stdout");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*szilard) {
      const auto ledger = qfb::szilard_scenario(szilard_temp, szilard_error, constants);
      const auto options = report_options(szilard_out, tolerance);
      qfb::emit_report(ledger, szilard_out.out, qfb::report_format_from_string(szilard_out.format), options);
      return all_satisfied(qfb::verify_applicable(ledger.balance, tolerance)) ? 0 : kExitViolations;
    }
    if (*carnot) {
      const auto ledger = qfb::carnot_feedback_scenario(t_hot, t_cold, q_hot, constants);
      const auto options = report_options(carnot_out, tolerance);
      qfb::emit_report(ledger, carnot_out.out, qfb::report_format_from_string(carnot_out.format), options);
      return all_satisfied(qfb::verify_applicable(ledger.balance, tolerance)) ? 0 : kExitViolations;
    }
    if (*campaign) {
      const auto report = qfb::random_campaign(campaign_flags.config());
      const auto options = report_options(campaign_out, campaign_flags.tolerance);
      qfb::emit_report(report, campaign_out.out, qfb::report_format_from_string(campaign_out.format), options);
      return report.ok() ? 0 : kExitViolations;
    }
    if (*verify) {
      const auto spec = qfb::read_protocol_spec(spec_path);
      const auto ledger = qfb::run(spec);
      const auto options = report_options(verify_out, tolerance);
      qfb::emit_report(ledger, verify_out.out, qfb::report_format_from_string(verify_out.format), options);
      return all_satisfied(qfb::verify_applicable(ledger, tolerance)) ? 0 : kExitViolations;
    }
    if (*sample) {
      const auto spec = qfb::random_protocol_spec(sample_flags.config(), sample_flags.seed);
      qfb::write_output(sample_out, qfb::dump(qfb::protocol_spec_to_json(spec)));
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "qfeedback: " << e.what() << "\n";
    return kExitError;
  }
  return 0;
}
