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

#ifndef RQBC_PROTOCOL_H_
#define RQBC_PROTOCOL_H_

#include <array>
#include <cstdint>
#include <memory>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "rqbc/measurement.h"
#include "rqbc/random.h"
#include "rqbc/spectra.h"
#include "rqbc/window.h"

namespace rqbc {

/// Parameters both parties agree on before the commit.
struct CommitConfig {
    int channels = 1;
    /// psi1 encodes channel bit 0, psi2 channel bit 1.
    SpectralAmplitude psi1{Shape::kRectangular, 12, 1};
    SpectralAmplitude psi2{Shape::kRectangular, 10, 1};
    /// Opening is allowed only after this time.
    double t_open = 1000;
    /// Early-measurement time of a curious receiver.
    double t_probe = 0;
    PovmFamily family = PovmFamily::kState;
    uint64_t seed = 0;
    /// Constant propagation offset; the window opens after this delay.
    double channel_length = 0;

    /// Throws std::invalid_argument on violated invariants.
    void validate() const;
};

/// Shared, immutable numerical setup for one configuration: the grid and
/// the sampled agreed states.
class ProtocolSetup {
   public:
    explicit ProtocolSetup(CommitConfig config);

    const CommitConfig &config() const {
        return config_;
    }
    const GridPtr &grid() const {
        return grid_;
    }
    /// Agreed state for a channel bit.
    const SampledState &psi(int bit) const {
        return bit == 0 ? psi1_ : psi2_;
    }
    /// Window half-width available at time t.
    double window_at(double t) const;
    Povm povm(double t, PovmFamily family) const;
    /// p(t): probability that an honestly sent state is registered by time t.
    double identification_prob(double t) const;

   private:
    CommitConfig config_;
    GridPtr grid_;
    SampledState psi1_;
    SampledState psi2_;
};

/// States a sender puts on the wire for channel bit 0 and 1. Fixed before
/// the commit; sessions only ever hold a const view of it.
struct Emission {
    std::array<TransmittedState, 2> states;
};

std::shared_ptr<const Emission> honest_emission(const ProtocolSetup &setup);

struct CommitRecord {
    int bit = 0;
    std::vector<int> channel_bits;
};

/// Channel bits uniform over all patterns whose XOR equals `bit`.
CommitRecord draw_record(int channels, int bit, Rng &rng);

/// Outcome distributions per channel bit for a measurement at one time.
struct MeasurementPlan {
    double time = 0;
    PovmFamily family = PovmFamily::kState;
    std::array<OutcomeDist, 2> by_channel_bit;
};

MeasurementPlan plan_measurement(const ProtocolSetup &setup, const Emission &emission, double t,
                                 PovmFamily family);

struct ChannelReading {
    Outcome outcome = Outcome::kPerp;
    double time = 0;
};

/// A's classical disclosure.
struct Opening {
    int bit = 0;
    std::vector<int> channel_bits;
};

enum class Verdict {
    kAccept,
    kAbort,         // a definite outcome or the parity contradicts the opening
    kInconclusive,  // no contradiction, but some channel is still undetected
};

std::string_view verdict_name(Verdict verdict);

struct CommitTranscript {
    CommitConfig config;
    CommitRecord record;
    std::vector<ChannelReading> readings;
    Opening opening;
    double opening_time = 0;
    Verdict verdict = Verdict::kInconclusive;
};

/// One protocol run, enforcing commit -> measure -> open.
class Session {
   public:
    const CommitRecord &record() const {
        return transcript_.record;
    }
    /// State travelling in channel i.
    const TransmittedState &channel_state(size_t i) const;
    size_t channels() const {
        return transcript_.record.channel_bits.size();
    }

    /// Measures every channel independently with a POVM whose window is
    /// set by time t. Throws ProtocolError if the channels were already
    /// measured.
    const std::vector<ChannelReading> &measure_all(double t, PovmFamily family, Rng &rng);
    const std::vector<ChannelReading> &measure_all(const MeasurementPlan &plan, Rng &rng);

    /// Throws ProtocolError if nothing was measured yet, if the opening
    /// happens at or before T_open, or if the session was already opened.
    Verdict open_and_verify(Opening opening, double opening_time);

    const CommitTranscript &transcript() const {
        return transcript_;
    }

   private:
    friend Session commit(const ProtocolSetup &, std::shared_ptr<const Emission>, int, Rng &);
    Session(const ProtocolSetup &setup, std::shared_ptr<const Emission> emission, CommitRecord record);

    enum class Stage { kCommitted, kMeasured, kOpened };

    const ProtocolSetup *setup_;
    std::shared_ptr<const Emission> emission_;
    CommitTranscript transcript_;
    Stage stage_ = Stage::kCommitted;
};

/// A draws a record with parity `bit` and launches every channel at t = 0.
Session commit(const ProtocolSetup &setup, std::shared_ptr<const Emission> emission, int bit, Rng &rng);
Session commit(const ProtocolSetup &setup, int bit, Rng &rng);

/// p^N: all channels identified by individual measurements.
double ident_prob_individual(double p, int channels);

/// p^(N/2): credited success of a collective measurement.
double ident_prob_collective(double p, int channels);

/// p^N + (1 - p^N) / 2: identify when every channel fires, otherwise guess.
double guess_success(double p, int channels);

/// Rescaled adversary advantage, 1 at t = 0 and 0 once identification is
/// certain. `times` must lie in [0, T_open].
std::vector<std::pair<double, double>> storage_security_curve(const ProtocolSetup &setup,
                                                              std::span<const double> times);

/// Expected number of channels still undetected at T_open, (1 - p(T_open)) N.
double inconclusive_penalty(const ProtocolSetup &setup);

}  // namespace rqbc

#endif  // RQBC_PROTOCOL_H_
