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


#include "qfeedback/spec_io.hpp"

#include <fstream>
#include <stdexcept>
#include <string>

namespace qfb {

namespace {

const Json& require(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw std::invalid_argument(where + ": missing \"" + key + "\"");
  return j.at(key);
}

double require_number(const Json& j, const char* key, const std::string& where) {
  const Json& v = require(j, key, where);
  if (!v.is_number()) throw std::invalid_argument(where + ": \"" + key + "\" must be a number");
  return v.get<double>();
}

ComplexMatrix matrix_at(const Json& j, const char* key, const std::string& where) {
  try {
    return matrix_from_json(require(j, key, where));
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(where + "." + key + ": " + e.what());
  }
}

HermitianOperator hermitian_at(const Json& j, const char* key, const std::string& where) {
  try {
    return HermitianOperator(matrix_at(j, key, where));
  } catch (const InvalidOperator& e) {
    throw std::invalid_argument(where + "." + key + ": " + e.what());
  }
}

ComplexMatrix stage_unitary(const Json& j, const std::string& where, const PhysicalConstants& constants) {
  if (j.contains("unitary")) return matrix_at(j, "unitary", where);
  if (j.contains("schedule")) {
    const Json& schedule = j.at("schedule");
    if (!schedule.is_array() || schedule.empty())
      throw std::invalid_argument(where + ".schedule: expected a non-empty array");
    std::vector<HamiltonianSegment> segments;
    for (std::size_t i = 0; i < schedule.size(); ++i) {
      const std::string at = where + ".schedule[" + std::to_string(i) + "]";
      segments.push_back({hermitian_at(schedule[i], "hamiltonian", at), require_number(schedule[i], "duration", at)});
    }
    return unitary_from_schedule(segments, constants);
  }
  throw std::invalid_argument(where + ": expected \"unitary\" or \"schedule\"");
}

} // namespace

Json protocol_spec_to_json(const ProtocolSpec& spec) {
  Json baths = Json::array();
  for (const auto& b : spec.baths)
    baths.push_back({{"label", b.label}, {"hamiltonian", matrix_to_json(b.hamiltonian.matrix())},
                     {"temperature", b.temperature}});
  Json operators = Json::array();
  for (const auto& m : spec.channel.operators()) operators.push_back(matrix_to_json(m));
  Json feedback = Json::array();
  for (const auto& u : spec.feedback_unitaries) feedback.push_back({{"unitary", matrix_to_json(u)}});
  return Json{{"schema_version", kSchemaVersion},
              {"constants", {{"k_B", spec.constants.k_B}, {"hbar", spec.constants.hbar}}},
              {"system",
               {{"label", spec.system_label},
                {"hamiltonian_initial", matrix_to_json(spec.system_hamiltonian_initial.matrix())},
                {"hamiltonian_final", matrix_to_json(spec.system_hamiltonian_final.matrix())},
                {"temperature", spec.system_temperature}}},
              {"baths", std::move(baths)},
              {"stage2", {{"unitary", matrix_to_json(spec.stage2_unitary)}}},
              {"measurement", {{"outcome_labels", spec.channel.outcome_labels()}, {"operators", std::move(operators)}}},
              {"feedback", std::move(feedback)},
              {"stage5", {{"unitary", matrix_to_json(spec.stage5_unitary)}}}};
}

ProtocolSpec protocol_spec_from_json(const Json& j) {
  if (!j.is_object()) throw std::invalid_argument("spec: expected a JSON object");
  if (j.contains("schema_version") && j.at("schema_version") != kSchemaVersion)
    throw std::invalid_argument("spec: unsupported schema_version " + j.at("schema_version").dump());

  PhysicalConstants constants;
  if (j.contains("constants")) {
    const Json& c = j.at("constants");
    if (c.contains("k_B")) constants.k_B = require_number(c, "k_B", "constants");
    if (c.contains("hbar")) constants.hbar = require_number(c, "hbar", "constants");
    constants.check();
  }

  const Json& system = require(j, "system", "spec");
  const HermitianOperator h_initial = hermitian_at(system, "hamiltonian_initial", "system");
  const HermitianOperator h_final =
      system.contains("hamiltonian_final") ? hermitian_at(system, "hamiltonian_final", "system") : h_initial;
  std::string label = "S";
  if (system.contains("label")) label = system.at("label").get<std::string>();

  std::vector<BathSpec> baths;
  if (j.contains("baths")) {
    const Json& list = j.at("baths");
    if (!list.is_array()) throw std::invalid_argument("baths: expected an array");
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string at = "baths[" + std::to_string(i) + "]";
      std::string bath_label = "B" + std::to_string(i + 1);
      if (list[i].contains("label")) bath_label = list[i].at("label").get<std::string>();
      baths.push_back({bath_label, hermitian_at(list[i], "hamiltonian", at), require_number(list[i], "temperature", at)});
    }
  }

  const Json& measurement = require(j, "measurement", "spec");
  const Json& ops = require(measurement, "operators", "measurement");
  if (!ops.is_array() || ops.empty()) throw std::invalid_argument("measurement.operators: expected a non-empty array");
  std::vector<ComplexMatrix> operators;
  for (const auto& m : ops) operators.push_back(matrix_from_json(m));
  std::vector<std::string> labels;
  if (measurement.contains("outcome_labels")) labels = measurement.at("outcome_labels").get<std::vector<std::string>>();

  std::vector<ComplexMatrix> feedback;
  const Json& fb = require(j, "feedback", "spec");
  if (!fb.is_array()) throw std::invalid_argument("feedback: expected an array");
  for (std::size_t i = 0; i < fb.size(); ++i)
    feedback.push_back(stage_unitary(fb[i], "feedback[" + std::to_string(i) + "]", constants));

  ProtocolSpec spec{
      .system_label = label,
      .system_hamiltonian_initial = h_initial,
      .system_hamiltonian_final = h_final,
      .system_temperature = require_number(system, "temperature", "system"),
      .baths = std::move(baths),
      .stage2_unitary = stage_unitary(require(j, "stage2", "spec"), "stage2", constants),
      .channel = MeasurementChannel(std::move(operators), std::move(labels)),
      .feedback_unitaries = std::move(feedback),
      .stage5_unitary = stage_unitary(require(j, "stage5", "spec"), "stage5", constants),
      .constants = constants,
  };
  spec.validate();
  return spec;
}

ProtocolSpec read_protocol_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw std::invalid_argument(path.string() + ": " + e.what());
  }
  return protocol_spec_from_json(j);
}

} // namespace qfb
