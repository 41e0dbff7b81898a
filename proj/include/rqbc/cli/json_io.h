// Copyright 2026 The rqbc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef RQBC_CLI_JSON_IO_H_
#define RQBC_CLI_JSON_IO_H_

#include <json.hpp>

#include "rqbc/measurement.h"
#include "rqbc/protocol.h"
#include "rqbc/spectra.h"

namespace rqbc {

/// {"shape": "rectangular", "k_c": 10, "delta": 1, "tau0": 0}; tau0 optional.
void to_json(nlohmann::json &j, const SpectralAmplitude &amplitude);
SpectralAmplitude amplitude_from_json(const nlohmann::json &j);

/// {"k_min", "k_max", "panels", "nodes_per_panel"}.
void to_json(nlohmann::json &j, const GridSegment &segment);
void from_json(const nlohmann::json &j, GridSegment &segment);

/// Array of segments.
nlohmann::json grid_to_json(const KGrid &grid);
GridPtr grid_from_json(const nlohmann::json &j);

void to_json(nlohmann::json &j, const OutcomeDist &dist);
void to_json(nlohmann::json &j, const CommitTranscript &transcript);

}  // namespace rqbc

#endif  // RQBC_CLI_JSON_IO_H_
