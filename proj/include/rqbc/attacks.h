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

#ifndef RQBC_ATTACKS_H_
#define RQBC_ATTACKS_H_

#include <cstdint>
#include <memory>
#include <string_view>
#include <variant>
#include <vector>

#include "rqbc/measurement.h"
#include "rqbc/protocol.h"
#include "rqbc/spectra.h"

namespace rqbc {

struct Honest {};

/// Sender emits late by tau0; in spectral terms a phase exp(i k tau0).
struct Delayed {
    double tau0 = 0;
};

/// Sender emits (|psi1><psi1| + |psi2><psi2|) / 2 on every channel.
struct Mixed {};

/// Sender emits an arbitrary normalized state on every channel.
struct WrongState {
    SampledState state;
};

/// Receiver measures at t_probe, before the opening, and guesses the parity.
struct EarlyMeasure {
    double t_probe = 0;
};

using Strategy = std::variant<Honest, Delayed, Mixed, WrongState, EarlyMeasure>;

std::string_view strategy_name(const Strategy &strategy);

/// Throws std::invalid_argument for tau0 < 0 or t_probe outside [0, T_open).
void validate_strategy(const Strategy &strategy, const CommitConfig &config);

/// What the sender puts in a channel whose recorded bit is `claimed_bit`.
TransmittedState transmitted_state(const ProtocolSetup &setup, const Strategy &strategy, int claimed_bit);

std::shared_ptr<const Emission> emission_for(const ProtocolSetup &setup, const Strategy &strategy);

/// Probability q that one channel measured at time t betrays the strategy.
///
/// A definite outcome naming the other state always counts, in excess of
/// the honest rate. Under the state family the receiver also flags a
/// deficit of the claimed outcome relative to the honest rate, which is
/// how a phase-shifted (delayed) state shows up.
double per_channel_flag_prob(const ProtocolSetup &setup, const Strategy &strategy, PovmFamily family, double t,
                             int claimed_bit);
/// Same, reusing an already assembled POVM.
double per_channel_flag_prob(const ProtocolSetup &setup, const Strategy &strategy, const Povm &povm,
                             int claimed_bit);

/// 1 - (1 - q)^N with q averaged over both claimed bits.
double cheat_detection_prob(const ProtocolSetup &setup, const Strategy &strategy, int channels, PovmFamily family,
                            double t);

struct EarlyBinding {
    double p = 0;           // per-channel identification probability
    double individual = 0;  // p^N
    double collective = 0;  // p^(N/2)
    double guess = 0.5;     // p^N + (1 - p^N) / 2

    bool within(double eps) const {
        return individual <= 0.5 + eps && collective <= 0.5 + eps && guess <= 0.5 + eps;
    }
};

/// Receiver's chances of learning the committed bit at t_probe < T_open.
EarlyBinding early_binding_advantage(const ProtocolSetup &setup, double t_probe);

struct HorizonSolution {
    double bandwidth = 0;
    double p = 0;           // detection probability at t_c with this bandwidth
    double collective = 0;  // p^(N/2)
};

/// Largest bandwidth (within bisection tolerance) such that a state of
/// `shape` keeps p(t_c)^(N/2) <= 2 eps.
HorizonSolution solve_security_bandwidth(double eps, double t_c, int channels, Shape shape, double k_center);

/// p(t) of a single `shape` amplitude with the given bandwidth.
double single_state_detect_prob(Shape shape, double k_center, double bandwidth, double t);

struct RunSummary {
    uint64_t seed = 0;
    int bit = 0;
    Verdict verdict = Verdict::kInconclusive;
    bool aborted = false;
    bool all_identified = false;  // no channel ended in perp
    int guess = -1;               // receiver's parity guess, early-measure runs only
    bool success = false;
};

struct MonteCarloOptions {
    int64_t runs = 0;
    uint64_t seed = 0;
    int jobs = 1;
    bool keep_transcripts = false;
};

struct MonteCarloResult {
    std::vector<RunSummary> runs;
    std::vector<CommitTranscript> transcripts;
};

/// Independent protocol runs; run r draws from stream_seed(seed, r), so the
/// result does not depend on `jobs`.
///
/// Success means: honest, the run was accepted; sender-side cheats, the
/// run was not aborted; early-measure, the receiver guessed the bit.
MonteCarloResult simulate_runs(const ProtocolSetup &setup, const Strategy &strategy, const MonteCarloOptions &options);

/// Fraction of aborted runs.
double cheat_detection_monte_carlo(const ProtocolSetup &setup, const Strategy &strategy, int64_t runs, uint64_t seed,
                                   int jobs = 1);

}  // namespace rqbc

#endif  // RQBC_ATTACKS_H_
