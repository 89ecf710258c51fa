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

#include "qfeedback/report.hpp"

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace qfb {

ReportFormat report_format_from_string(std::string_view name) {
  if (name == "json") return ReportFormat::json;
  if (name == "text") return ReportFormat::text;
  throw std::invalid_argument("unknown report format '" + std::string(name) + "'");
}

Json matrix_to_json(const ComplexMatrix& m) {
  Json rows = Json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(Json::array({m(i, j).real(), m(i, j).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

ComplexMatrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty() || !j.front().is_array())
    throw std::invalid_argument("matrix: expected a non-empty array of rows");
  const auto rows = static_cast<Index>(j.size());
  const auto cols = static_cast<Index>(j.front().size());
  ComplexMatrix m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    const Json& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Index>(row.size()) != cols)
      throw std::invalid_argument("matrix: rows must all have the same length");
    for (Index c = 0; c < cols; ++c) {
      const Json& entry = row[static_cast<std::size_t>(c)];
      if (entry.is_number()) {
        m(i, c) = Complex(entry.get<double>(), 0.0);
      } else if (entry.is_array() && entry.size() == 2 && entry[0].is_number() && entry[1].is_number()) {
        m(i, c) = Complex(entry[0].get<double>(), entry[1].get<double>());
      } else {
        throw std::invalid_argument("matrix: entries must be numbers or [re, im] pairs");
      }
    }
  }
  return m;
}

Json to_json(const InequalityVerdict& v) {
  return Json{{"name", v.name},           {"lhs", v.lhs},         {"rhs", v.rhs},
              {"slack", v.slack},         {"tolerance", v.tolerance}, {"satisfied", v.satisfied}};
}

Json to_json(const EnergyBalance& b) {
  Json baths = Json::array();
  for (const auto& m : b.baths) baths.push_back({{"label", m.label}, {"temperature", m.temperature}, {"Q", m.heat}});
  return Json{{"k_B", b.k_B},
              {"T", b.temperature},
              {"baths", std::move(baths)},
              {"delta_U_S", b.delta_U_S},
              {"delta_F_S", b.delta_F_S},
              {"W_ext", b.W_ext},
              {"I", b.qc_mutual},
              {"cyclic_hamiltonian", b.cyclic_hamiltonian}};
}

Json to_json(const InformationReport& info) {
  return Json{{"s_rho", info.s_rho},           {"shannon", info.shannon},
              {"h_tilde", info.h_tilde},       {"qc_mutual", info.qc_mutual},
              {"holevo_chi", info.holevo_chi}, {"delta_s_meas", info.delta_s_meas}};
}

namespace {

Json verdicts_json(const std::vector<InequalityVerdict>& verdicts) {
  Json out = Json::array();
  for (const auto& v : verdicts) out.push_back(to_json(v));
  return out;
}

Json branches_json(const BranchEnsemble& ensemble) {
  Json out = Json::array();
  for (const auto& b : ensemble.branches) {
    Json entry{{"probability", b.probability}, {"present", b.present()}};
    if (b.present()) entry["state"] = matrix_to_json(b.state->matrix());
    out.push_back(std::move(entry));
  }
  return out;
}

std::string fixed(double x, int precision = 12) {
  std::ostringstream os;
  os << std::setprecision(precision) << x;
  return os.str();
}

} // namespace

Json to_json(const AnalyticLedger& ledger, double tolerance) {
  Json params = Json::object();
  for (const auto& [name, value] : ledger.parameters) params[name] = value;
  Json j{{"schema_version", kSchemaVersion}, {"kind", "analytic_ledger"}, {"mode", ledger.mode},
         {"scenario", ledger.scenario},      {"parameters", std::move(params)}};
  const Json balance = to_json(ledger.balance);
  for (const auto& [key, value] : balance.items()) j[key] = value;
  j["verdicts"] = verdicts_json(verify_applicable(ledger.balance, tolerance));
  return j;
}

Json to_json(const ProtocolLedger& ledger, const ReportOptions& options, double tolerance) {
  const auto& d = ledger.diagnostics;
  Json j{{"schema_version", kSchemaVersion},
         {"kind", "protocol_ledger"},
         {"mode", "simulated"},
         {"outcome_probabilities", ledger.outcome_dist.probabilities},
         {"info", to_json(ledger.info)},
         {"E_S_initial", ledger.E_S_initial},
         {"E_S_final", ledger.E_S_final},
         {"E_bath_initial", ledger.E_bath_initial},
         {"E_bath_final", ledger.E_bath_final},
         {"balance", to_json(ledger.balance)},
         {"S_initial", ledger.S_initial},
         {"S_final", ledger.S_final},
         {"diagnostics",
          {{"channel_residual", d.channel_residual},
           {"feedback_spread", d.feedback_spread},
           {"canonical_trace_distance", d.canonical_trace_distance},
           {"cross_entropy_canonical", d.cross_entropy_canonical},
           {"entropy_rho_1", d.entropy_rho_1},
           {"entropy_rho_3", d.entropy_rho_3},
           {"mean_branch_entropy_2", d.mean_branch_entropy_2},
           {"mean_branch_entropy_3", d.mean_branch_entropy_3},
           {"feedback_entropy_drift", d.feedback_entropy_drift}}},
         {"verdicts", verdicts_json(verify_applicable(ledger, tolerance))}};
  if (options.include_states) {
    j["states"] = {{"rho_i", matrix_to_json(ledger.rho_i.matrix())},
                   {"rho_1", matrix_to_json(ledger.rho_1.matrix())},
                   {"rho_f", matrix_to_json(ledger.rho_f.matrix())},
                   {"branches_2", branches_json(ledger.branches_2)},
                   {"branches_3", branches_json(ledger.branches_3)}};
  }
  return j;
}

Json to_json(const CampaignConfig& config) {
  return Json{{"seed", config.seed},
              {"n_instances", config.n_instances},
              {"family", to_string(config.family)},
              {"system_dims", config.system_dims},
              {"bath_dims", config.bath_dims},
              {"n_outcomes_range", {config.n_outcomes_range.min, config.n_outcomes_range.max}},
              {"n_baths_range", {config.n_baths_range.min, config.n_baths_range.max}},
              {"tolerance", config.tolerance}};
}

Json to_json(const CampaignReport& report, const ReportOptions& options) {
  Json verdicts = Json::object();
  for (const auto& [name, s] : report.verdicts) {
    verdicts[name] = {{"checked", s.checked},
                      {"satisfied", s.satisfied},
                      {"violations", s.violations()},
                      {"worst_slack", s.worst_slack},
                      {"arg_worst_seed", s.arg_worst_seed},
                      {"tolerance", s.tolerance}};
  }
  Json j{{"schema_version", kSchemaVersion},
         {"kind", "campaign_report"},
         {"config", to_json(report.config)},
         {"instances_run", report.instances_run},
         {"total_checked", report.total_checked()},
         {"total_violations", report.total_violations()},
         {"failures", report.failures},
         {"failure_messages", report.failure_messages},
         {"verdicts", std::move(verdicts)}};
  if (!report.instances.empty()) {
    Json instances = Json::array();
    for (const auto& r : report.instances) {
      Json entry{{"index", r.index}, {"seed", r.seed}, {"verdicts", verdicts_json(r.verdicts)}};
      if (r.error) entry["error"] = *r.error;
      instances.push_back(std::move(entry));
    }
    j["instances"] = std::move(instances);
  }
  if (options.include_timing) j["wall_time_seconds"] = report.wall_time_seconds;
  return j;
}

std::string render_text(const std::vector<InequalityVerdict>& verdicts) {
  std::ostringstream os;
  os << std::left << std::setw(34) << "inequality" << std::setw(22) << "lhs" << std::setw(22) << "rhs"
     << std::setw(16) << "slack" << "status\n";
  for (const auto& v : verdicts) {
    os << std::left << std::setw(34) << v.name << std::setw(22) << fixed(v.lhs) << std::setw(22) << fixed(v.rhs)
       << std::setw(16) << fixed(v.slack, 6) << (v.satisfied ? "ok" : "VIOLATED") << "\n";
  }
  return os.str();
}

std::string render_text(const AnalyticLedger& ledger, double tolerance) {
  std::ostringstream os;
  const auto& b = ledger.balance;
  os << "scenario " << ledger.scenario << " (" << ledger.mode << ")\n";
  for (const auto& [name, value] : ledger.parameters) os << "  " << name << " = " << fixed(value) << "\n";
  os << "  I        = " << fixed(b.qc_mutual) << " nats\n";
  os << "  W_ext    = " << fixed(b.W_ext) << "\n";
  for (const auto& m : b.baths) os << "  Q[" << m.label << "]    = " << fixed(m.heat) << " (T = " << fixed(m.temperature) << ")\n";
  os << "  dU^S     = " << fixed(b.delta_U_S) << "\n  dF^S     = " << fixed(b.delta_F_S) << "\n\n";
  os << render_text(verify_applicable(b, tolerance));
  return os.str();
}

std::string render_text(const ProtocolLedger& ledger, double tolerance) {
  std::ostringstream os;
  const auto& b = ledger.balance;
  os << "simulated protocol ledger\n";
  os << "  outcomes  = " << ledger.outcome_dist.size() << "\n";
  os << "  I         = " << fixed(ledger.info.qc_mutual) << " nats (H = " << fixed(ledger.info.shannon) << ")\n";
  os << "  S_i, S_f  = " << fixed(ledger.S_initial) << ", " << fixed(ledger.S_final) << "\n";
  os << "  W_ext     = " << fixed(b.W_ext) << "\n";
  os << "  dU^S      = " << fixed(b.delta_U_S) << "\n  dF^S      = " << fixed(b.delta_F_S) << "\n";
  for (const auto& m : b.baths) os << "  Q[" << m.label << "]     = " << fixed(m.heat) << " (T = " << fixed(m.temperature) << ")\n";
  os << "  feedback spread          = " << fixed(ledger.diagnostics.feedback_spread) << "\n";
  os << "  distance to canonical    = " << fixed(ledger.diagnostics.canonical_trace_distance) << "\n\n";
  os << render_text(verify_applicable(ledger, tolerance));
  return os.str();
}

std::string render_text(const CampaignReport& report, const ReportOptions& options) {
  std::ostringstream os;
  const auto& c = report.config;
  os << "campaign family=" << to_string(c.family) << " seed=" << c.seed << " instances=" << report.instances_run
     << " failures=" << report.failures << "\n\n";
  os << std::left << std::setw(34) << "check" << std::setw(10) << "checked" << std::setw(12) << "violations"
     << std::setw(16) << "worst slack" << std::setw(12) << "tolerance" << "worst seed\n";
  for (const auto& [name, s] : report.verdicts) {
    os << std::left << std::setw(34) << name << std::setw(10) << s.checked << std::setw(12) << s.violations()
       << std::setw(16) << fixed(s.worst_slack, 6) << std::setw(12) << fixed(s.tolerance, 3) << s.arg_worst_seed
       << "\n";
  }
  for (const auto& msg : report.failure_messages) os << "failure: " << msg << "\n";
  if (options.include_timing) os << "\nwall time " << fixed(report.wall_time_seconds, 4) << " s\n";
  os << "\n" << (report.ok() ? "PASS" : "FAIL") << ": " << report.total_violations() << " violations in "
     << report.total_checked() << " checks\n";
  return os.str();
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

void write_output(const std::filesystem::path& path, std::string_view content) {
  if (path == "-") {
    std::cout << content;
    std::cout.flush();
    if (!std::cout) throw std::runtime_error("failed to write to stdout");
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  out << content;
  out.close();
  if (!out) throw std::runtime_error("failed writing '" + path.string() + "'");
}

template <>
std::string format_report(const AnalyticLedger& report, ReportFormat format, const ReportOptions& options) {
  return format == ReportFormat::json ? dump(to_json(report, options.tolerance))
                                      : render_text(report, options.tolerance);
}

template <>
std::string format_report(const ProtocolLedger& report, ReportFormat format, const ReportOptions& options) {
  return format == ReportFormat::json ? dump(to_json(report, options, options.tolerance))
                                      : render_text(report, options.tolerance);
}

template <>
std::string format_report(const CampaignReport& report, ReportFormat format, const ReportOptions& options) {
  return format == ReportFormat::json ? dump(to_json(report, options)) : render_text(report, options);
}

} // namespace qfb
