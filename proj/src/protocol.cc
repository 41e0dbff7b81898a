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

#include "rqbc/protocol.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "rqbc/errors.h"

namespace rqbc {

namespace {

GridPtr protocol_grid(const CommitConfig &config) {
    std::array<Interval, 2> supports = {config.psi1.support(), config.psi2.support()};
    double horizon = std::max(config.t_open, config.t_probe) - config.channel_length;
    return grid_for_supports(supports, config.psi1.bandwidth(), std::max(0.0, horizon));
}

}  // namespace

void CommitConfig::validate() const {
    if (channels < 1) {
        throw std::invalid_argument("channel count N must be at least 1");
    }
    if (psi1.support().overlaps(psi2.support())) {
        throw std::invalid_argument("agreed states must have disjoint supports");
    }
    if (psi1.bandwidth() != psi2.bandwidth()) {
        throw std::invalid_argument("agreed states must share one bandwidth");
    }
    if (!(t_probe >= 0) || !(t_probe < t_open)) {
        throw std::invalid_argument("need 0 <= t_probe < T_open");
    }
    if (!(channel_length >= 0)) {
        throw std::invalid_argument("channel length must be non-negative");
    }
}

ProtocolSetup::ProtocolSetup(CommitConfig config)
    : config_((config.validate(), std::move(config))),
      grid_(protocol_grid(config_)),
      psi1_(sample(config_.psi1, grid_)),
      psi2_(sample(config_.psi2, grid_)) {
}

double ProtocolSetup::window_at(double t) const {
    return std::max(0.0, t - config_.channel_length);
}

Povm ProtocolSetup::povm(double t, PovmFamily family) const {
    WindowOperator window = build_window(grid_, window_at(t));
    if (family == PovmFamily::kSupport) {
        return support_povm(window, config_.psi1.support(), config_.psi2.support());
    }
    return state_povm(window, psi1_, psi2_);
}

double ProtocolSetup::identification_prob(double t) const {
    return detect_prob(build_window(grid_, window_at(t)), psi1_);
}

std::shared_ptr<const Emission> honest_emission(const ProtocolSetup &setup) {
    return std::make_shared<const Emission>(Emission{{setup.psi(0), setup.psi(1)}});
}

CommitRecord draw_record(int channels, int bit, Rng &rng) {
    if (channels < 1 || (bit != 0 && bit != 1)) {
        throw std::invalid_argument("draw_record needs N >= 1 and a bit");
    }
    CommitRecord record{bit, std::vector<int>(static_cast<size_t>(channels))};
    int parity = 0;
    for (int i = 0; i + 1 < channels; ++i) {
        record.channel_bits[static_cast<size_t>(i)] = rng.bit();
        parity ^= record.channel_bits[static_cast<size_t>(i)];
    }
    record.channel_bits.back() = parity ^ bit;
    return record;
}

MeasurementPlan plan_measurement(const ProtocolSetup &setup, const Emission &emission, double t,
                                 PovmFamily family) {
    if (!(t >= 0)) {
        throw std::invalid_argument("measurement time must be non-negative");
    }
    Povm povm = setup.povm(t, family);
    return {t, family, {outcome_dist(povm, emission.states[0]), outcome_dist(povm, emission.states[1])}};
}

std::string_view verdict_name(Verdict verdict) {
    switch (verdict) {
        case Verdict::kAccept:
            return "accept";
        case Verdict::kAbort:
            return "abort";
        case Verdict::kInconclusive:
            return "inconclusive";
    }
    return "?";
}

Session::Session(const ProtocolSetup &setup, std::shared_ptr<const Emission> emission, CommitRecord record)
    : setup_(&setup), emission_(std::move(emission)) {
    transcript_.config = setup.config();
    transcript_.record = std::move(record);
}

const TransmittedState &Session::channel_state(size_t i) const {
    return emission_->states[static_cast<size_t>(transcript_.record.channel_bits.at(i))];
}

const std::vector<ChannelReading> &Session::measure_all(double t, PovmFamily family, Rng &rng) {
    if (stage_ != Stage::kCommitted) {
        throw ProtocolError("channels were already measured");
    }
    return measure_all(plan_measurement(*setup_, *emission_, t, family), rng);
}

const std::vector<ChannelReading> &Session::measure_all(const MeasurementPlan &plan, Rng &rng) {
    if (stage_ != Stage::kCommitted) {
        throw ProtocolError("channels were already measured");
    }
    transcript_.readings.clear();
    for (int bit : transcript_.record.channel_bits) {
        transcript_.readings.push_back({sample_outcome(plan.by_channel_bit[static_cast<size_t>(bit)], rng), plan.time});
    }
    stage_ = Stage::kMeasured;
    return transcript_.readings;
}

Verdict Session::open_and_verify(Opening opening, double opening_time) {
    if (stage_ == Stage::kCommitted) {
        throw ProtocolError("opening before the receiver measured");
    }
    if (stage_ == Stage::kOpened) {
        throw ProtocolError("session already opened");
    }
    if (!(opening_time > setup_->config().t_open)) {
        throw ProtocolError("opening at t = " + std::to_string(opening_time) + " is not after T_open = " +
                            std::to_string(setup_->config().t_open));
    }
    if (opening.channel_bits.size() != channels()) {
        throw std::invalid_argument("opening must name one bit per channel");
    }
    stage_ = Stage::kOpened;
    transcript_.opening_time = opening_time;

    int parity = 0;
    for (int b : opening.channel_bits) {
        parity ^= b;
    }
    bool contradiction = parity != opening.bit;
    bool undetected = false;
    for (size_t i = 0; i < channels(); ++i) {
        Outcome seen = transcript_.readings[i].outcome;
        if (seen == Outcome::kPerp) {
            undetected = true;
            continue;
        }
        Outcome expected = opening.channel_bits[i] == 0 ? Outcome::kOne : Outcome::kTwo;
        contradiction = contradiction || seen != expected;
    }
    transcript_.opening = std::move(opening);
    transcript_.verdict = contradiction ? Verdict::kAbort : undetected ? Verdict::kInconclusive : Verdict::kAccept;
    return transcript_.verdict;
}

Session commit(const ProtocolSetup &setup, std::shared_ptr<const Emission> emission, int bit, Rng &rng) {
    if (!emission) {
        throw std::invalid_argument("null emission");
    }
    for (const auto &state : emission->states) {
        if (!same_grid(*grid_of(state), *setup.grid())) {
            throw std::invalid_argument("emitted states live on a different grid than the setup");
        }
    }
    return Session(setup, std::move(emission), draw_record(setup.config().channels, bit, rng));
}

Session commit(const ProtocolSetup &setup, int bit, Rng &rng) {
    return commit(setup, honest_emission(setup), bit, rng);
}

namespace {

void check_probability(double p) {
    if (!(p >= 0 && p <= 1)) {
        throw std::invalid_argument("probability " + std::to_string(p) + " outside [0, 1]");
    }
}

}  // namespace

double ident_prob_individual(double p, int channels) {
    check_probability(p);
    return std::pow(p, channels);
}

double ident_prob_collective(double p, int channels) {
    check_probability(p);
    return std::pow(p, channels / 2.0);
}

double guess_success(double p, int channels) {
    double all = ident_prob_individual(p, channels);
    return all + (1 - all) / 2;
}

std::vector<std::pair<double, double>> storage_security_curve(const ProtocolSetup &setup,
                                                              std::span<const double> times) {
    const int n = setup.config().channels;
    std::vector<std::pair<double, double>> curve;
    curve.reserve(times.size());
    for (double t : times) {
        if (!(t >= 0 && t <= setup.config().t_open)) {
            throw std::invalid_argument("storage curve time outside [0, T_open]");
        }
        double p = setup.identification_prob(t);
        double success = std::max(ident_prob_collective(p, n), guess_success(p, n));
        curve.emplace_back(t, std::clamp(1 - 2 * (success - 0.5), 0.0, 1.0));
    }
    return curve;
}

double inconclusive_penalty(const ProtocolSetup &setup) {
    return (1 - setup.identification_prob(setup.config().t_open)) * setup.config().channels;
}

}  // namespace rqbc
