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

#include "qfeedback/protocol.hpp"
#include "qfeedback/report.hpp"

namespace qfb {

/**
 * JSON form of a ProtocolSpec:
 *
 *   {
 *     "schema_version": 1,
 *     "constants": {"k_B": 1, "hbar": 1},
 *     "system": {"label": "S", "hamiltonian_initial": M, "hamiltonian_final": M,
 *                "temperature": T},
 *     "baths": [{"label": "B1", "hamiltonian": M, "temperature": T1}, ...],
 *     "stage2": {"unitary": M} | {"schedule": [{"hamiltonian": M, "duration": t}, ...]},
 *     "measurement": {"outcome_labels": [...], "operators": [M, ...]},
 *     "feedback": [{"unitary": M} | {"schedule": [...]}, ...],
 *     "stage5": {"unitary": M} | {"schedule": [...]}
 *   }
 *
 * M is a row-major array of rows of [re, im] pairs. "hamiltonian_final"
 * defaults to "hamiltonian_initial"; "constants" and "outcome_labels" may be
 * omitted. Stage unitaries and schedules act on the full space.
 */
Json protocol_spec_to_json(const ProtocolSpec& spec);

/// Throws std::invalid_argument on malformed input; the result is validated.
ProtocolSpec protocol_spec_from_json(const Json& j);

ProtocolSpec read_protocol_spec(const std::filesystem::path& path);

} // namespace qfb
