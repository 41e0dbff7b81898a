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

#include "rqbc/cli/json_io.h"

#include <string>

namespace rqbc {

void to_json(nlohmann::json &j, const SpectralAmplitude &amplitude) {
    j = nlohmann::json{{"shape", std::string(shape_name(amplitude.shape()))},
                       {"k_c", amplitude.center()},
                       {"delta", amplitude.bandwidth()},
                       {"tau0", amplitude.tau0()}};
}

SpectralAmplitude amplitude_from_json(const nlohmann::json &j) {
    return SpectralAmplitude(parse_shape(j.at("shape").get<std::string>()), j.at("k_c").get<double>(),
                             j.at("delta").get<double>(), j.value("tau0", 0.0));
}

void to_json(nlohmann::json &j, const GridSegment &segment) {
    j = nlohmann::json{{"k_min", segment.k_min},
                       {"k_max", segment.k_max},
                       {"panels", segment.panels},
                       {"nodes_per_panel", segment.nodes_per_panel}};
}

void from_json(const nlohmann::json &j, GridSegment &segment) {
    segment.k_min = j.at("k_min").get<double>();
    segment.k_max = j.at("k_max").get<double>();
    segment.panels = j.at("panels").get<int>();
    segment.nodes_per_panel = j.at("nodes_per_panel").get<int>();
}

nlohmann::json grid_to_json(const KGrid &grid) {
    return nlohmann::json(grid.segments());
}

GridPtr grid_from_json(const nlohmann::json &j) {
    if (j.is_object()) {
        return make_grid(j.get<GridSegment>());
    }
    return std::make_shared<const KGrid>(j.get<std::vector<GridSegment>>());
}

void to_json(nlohmann::json &j, const OutcomeDist &dist) {
    j = nlohmann::json{{"p1", dist.p1}, {"p2", dist.p2}, {"p_perp", dist.p_perp}};
}

void to_json(nlohmann::json &j, const CommitTranscript &transcript) {
    const CommitConfig &c = transcript.config;
    nlohmann::json readings = nlohmann::json::array();
    for (size_t i = 0; i < transcript.readings.size(); ++i) {
        readings.push_back({{"channel", i},
                            {"outcome", std::string(outcome_name(transcript.readings[i].outcome))},
                            {"time", transcript.readings[i].time}});
    }
    j = nlohmann::json{
        {"config",
         {{"N", c.channels},
          {"psi1", c.psi1},
          {"psi2", c.psi2},
          {"T_open", c.t_open},
          {"t_probe", c.t_probe},
          {"family", std::string(family_name(c.family))},
          {"channel_length", c.channel_length},
          {"seed", c.seed}}},
        {"record", {{"bit", transcript.record.bit}, {"channel_bits", transcript.record.channel_bits}}},
        {"readings", std::move(readings)},
        {"opening", {{"bit", transcript.opening.bit}, {"channel_bits", transcript.opening.channel_bits}}},
        {"opening_time", transcript.opening_time},
        {"verdict", std::string(verdict_name(transcript.verdict))},
    };
}

}  // namespace rqbc
