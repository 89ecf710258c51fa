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

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "qfeedback/campaign.hpp"
#include "qfeedback/protocol.hpp"
#include "qfeedback/scenario.hpp"

namespace qfb {

/// Insertion-ordered JSON, so key order in reports is fixed by the writer.
using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

enum class ReportFormat { json, text };

/// Throws std::invalid_argument for anything other than "json" or "text".
ReportFormat report_format_from_string(std::string_view name);

struct ReportOptions {
  /// Wall time varies run to run; left out unless asked for.
  bool include_timing = false;
  /// Full density matrices in protocol ledgers.
  bool include_states = true;
  /// Tolerance for verdicts computed while rendering a ledger.
  double tolerance = kInequalityTolerance;
};

/// Rows of [re, im] pairs, row-major.
Json matrix_to_json(const ComplexMatrix& m);
/// Accepts rows of [re, im] pairs or plain real numbers.
ComplexMatrix matrix_from_json(const Json& j);

Json to_json(const InequalityVerdict& v);
Json to_json(const EnergyBalance& b);
Json to_json(const InformationReport& info);
Json to_json(const AnalyticLedger& ledger, double tolerance = kInequalityTolerance);
Json to_json(const ProtocolLedger& ledger, const ReportOptions& options = {},
             double tolerance = kInequalityTolerance);
Json to_json(const CampaignConfig& config);
Json to_json(const CampaignReport& report, const ReportOptions& options = {});

std::string render_text(const std::vector<InequalityVerdict>& verdicts);
std::string render_text(const AnalyticLedger& ledger, double tolerance = kInequalityTolerance);
std::string render_text(const ProtocolLedger& ledger, double tolerance = kInequalityTolerance);
std::string render_text(const CampaignReport& report, const ReportOptions& options = {});

/// JSON is dumped with two-space indent and a trailing newline; doubles use
/// the shortest representation that round-trips.
std::string dump(const Json& j);

/**
 * Writes `content` to `path`, or to stdout when path is "-".
 * Throws std::runtime_error on I/O failure.
 */
void write_output(const std::filesystem::path& path, std::string_view content);

template <typename Report>
std::string format_report(const Report& report, ReportFormat format, const ReportOptions& options = {});

template <typename Report>
void emit_report(const Report& report, const std::filesystem::path& path, ReportFormat format,
                 const ReportOptions& options = {}) {
  write_output(path, format_report(report, format, options));
}

} // namespace qfb
