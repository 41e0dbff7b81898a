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

#include "rqbc/attacks.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <exception>
#include <limits>
#include <stdexcept>
#include <string>
#include <thread>

#include "rqbc/errors.h"
#include "rqbc/window.h"

namespace rqbc {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};

Outcome claimed_outcome(int bit) {
    return bit == 0 ? Outcome::kOne : Outcome::kTwo;
}

Outcome other_outcome(int bit) {
    return bit == 0 ? Outcome::kTwo : Outcome::kOne;
}

}  // namespace

std::string_view strategy_name(const Strategy &strategy) {
    return std::visit(Overloaded{
                          [](const Honest &) { return std::string_view("honest"); },
                          [](const Delayed &) { return std::string_view("delayed"); },
                          [](const Mixed &) { return std::string_view("mixed"); },
                          [](const WrongState &) { return std::string_view("wrong_state"); },
                          [](const EarlyMeasure &) { return std::string_view("early_measure"); },
                      },
                      strategy);
}

void validate_strategy(const Strategy &strategy, const CommitConfig &config) {
    if (const auto *d = std::get_if<Delayed>(&strategy); d && !(d->tau0 >= 0)) {
        throw std::invalid_argument("delay tau0 must be non-negative");
    }
    if (const auto *e = std::get_if<EarlyMeasure>(&strategy); e && !(e->t_probe >= 0 && e->t_probe < config.t_open)) {
        throw std::invalid_argument("early measurement needs 0 <= t_probe < T_open");
    }
}

TransmittedState transmitted_state(const ProtocolSetup &setup, const Strategy &strategy, int claimed_bit) {
    if (claimed_bit != 0 && claimed_bit != 1) {
        throw std::invalid_argument("claimed bit must be 0 or 1");
    }
    validate_strategy(strategy, setup.config());
    const SpectralAmplitude &agreed = claimed_bit == 0 ? setup.config().psi1 : setup.config().psi2;
    return std::visit(Overloaded{
                          [&](const Honest &) -> TransmittedState { return setup.psi(claimed_bit); },
                          [&](const EarlyMeasure &) -> TransmittedState { return setup.psi(claimed_bit); },
                          [&](const Delayed &d) -> TransmittedState {
                              return sample(agreed.delayed(agreed.tau0() + d.tau0), setup.grid());
                          },
                          [&](const Mixed &) -> TransmittedState {
                              std::array<SampledState, 2> states = {setup.psi(0), setup.psi(1)};
                              std::array<double, 2> weights = {0.5, 0.5};
                              return DensityMatrix::mixture(states, weights);
                          },
                          [&](const WrongState &w) -> TransmittedState {
                              if (!same_grid(*w.state.grid(), *setup.grid())) {
                                  throw std::invalid_argument("wrong-state strategy lives on a different grid");
                              }
                              // Re-validates the norm of user-supplied values.
                              auto values = w.state.values();
                              return SampledState::from_values(setup.grid(), {values.begin(), values.end()});
                          },
                      },
                      strategy);
}

std::shared_ptr<const Emission> emission_for(const ProtocolSetup &setup, const Strategy &strategy) {
    if (std::holds_alternative<Honest>(strategy) || std::holds_alternative<EarlyMeasure>(strategy)) {
        validate_strategy(strategy, setup.config());
        return honest_emission(setup);
    }
    return std::make_shared<const Emission>(
        Emission{{transmitted_state(setup, strategy, 0), transmitted_state(setup, strategy, 1)}});
}

double per_channel_flag_prob(const ProtocolSetup &setup, const Strategy &strategy, PovmFamily family, double t,
                             int claimed_bit) {
    if (!(t >= 0)) {
        throw std::invalid_argument("flag probability needs t >= 0");
    }
    return per_channel_flag_prob(setup, strategy, setup.povm(t, family), claimed_bit);
}

double per_channel_flag_prob(const ProtocolSetup &setup, const Strategy &strategy, const Povm &povm,
                             int claimed_bit) {
    OutcomeDist sent = outcome_dist(povm, transmitted_state(setup, strategy, claimed_bit));
    OutcomeDist honest = outcome_dist(povm, setup.psi(claimed_bit));
    double wrong = sent[other_outcome(claimed_bit)] - honest[other_outcome(claimed_bit)];
    double q = wrong;
    if (povm.family() == PovmFamily::kState) {
        q = std::max(q, honest[claimed_outcome(claimed_bit)] - sent[claimed_outcome(claimed_bit)]);
    }
    return std::clamp(q, 0.0, 1.0);
}

double cheat_detection_prob(const ProtocolSetup &setup, const Strategy &strategy, int channels, PovmFamily family,
                            double t) {
    if (channels < 1) {
        throw std::invalid_argument("channel count must be positive");
    }
    double q = (per_channel_flag_prob(setup, strategy, family, t, 0) +
                per_channel_flag_prob(setup, strategy, family, t, 1)) /
               2;
    return 1 - std::pow(1 - q, channels);
}

EarlyBinding early_binding_advantage(const ProtocolSetup &setup, double t_probe) {
    if (!(t_probe >= 0 && t_probe < setup.config().t_open)) {
        throw std::invalid_argument("early measurement needs 0 <= t_probe < T_open");
    }
    const int n = setup.config().channels;
    EarlyBinding out;
    out.p = setup.identification_prob(t_probe);
    out.individual = ident_prob_individual(out.p, n);
    out.collective = ident_prob_collective(out.p, n);
    out.guess = guess_success(out.p, n);
    return out;
}

double single_state_detect_prob(Shape shape, double k_center, double bandwidth, double t) {
    SpectralAmplitude amplitude(shape, k_center, bandwidth);
    std::array<Interval, 1> support = {amplitude.support()};
    GridPtr grid = grid_for_supports(support, bandwidth, t);
    return detect_prob(build_window(grid, t), sample(amplitude, grid));
}

HorizonSolution solve_security_bandwidth(double eps, double t_c, int channels, Shape shape, double k_center) {
    if (!(eps > 0 && eps < 0.5) || !(t_c > 0) || channels < 1) {
        throw std::invalid_argument("security recipe needs 0 < eps < 1/2, t_c > 0, N >= 1");
    }
    // Small margin so the bound survives re-evaluation by another quadrature.
    const double target = std::pow(2 * eps, 2.0 / channels) * (1 - 1e-9);
    auto p_of = [&](double bandwidth) { return single_state_detect_prob(shape, k_center, bandwidth, t_c); };

    const double max_bandwidth = 1.999 * k_center;
    double hi = std::min(1.0 / t_c, max_bandwidth);
    while (p_of(hi) < target) {
        if (hi >= max_bandwidth) {
            throw std::invalid_argument("k_center too small: every admissible bandwidth meets the bound");
        }
        hi = std::min(2 * hi, max_bandwidth);
    }
    double lo = hi / 2;
    while (p_of(lo) > target) {
        lo /= 2;
    }
    for (int iter = 0; iter < 60 && hi - lo > 1e-12 * hi; ++iter) {
        double mid = std::sqrt(lo * hi);
        (p_of(mid) > target ? hi : lo) = mid;
    }
    HorizonSolution out;
    out.bandwidth = lo;
    out.p = p_of(lo);
    out.collective = ident_prob_collective(out.p, channels);
    return out;
}

MonteCarloResult simulate_runs(const ProtocolSetup &setup, const Strategy &strategy, const MonteCarloOptions &options) {
    if (options.runs < 0) {
        throw std::invalid_argument("run count must be non-negative");
    }
    MonteCarloResult result;
    result.runs.resize(static_cast<size_t>(options.runs));
    if (options.keep_transcripts) {
        result.transcripts.resize(static_cast<size_t>(options.runs));
    }
    if (options.runs == 0) {
        return result;
    }

    const CommitConfig &config = setup.config();
    auto emission = emission_for(setup, strategy);
    const auto *early = std::get_if<EarlyMeasure>(&strategy);
    const bool sender_cheats = !std::holds_alternative<Honest>(strategy) && !early;
    const MeasurementPlan plan =
        plan_measurement(setup, *emission, early ? early->t_probe : config.t_open, config.family);
    const double opening_time = std::nextafter(config.t_open, std::numeric_limits<double>::infinity());

    auto run_one = [&](int64_t r) {
        RunSummary summary;
        summary.seed = stream_seed(options.seed, static_cast<uint64_t>(r));
        Rng rng(summary.seed);
        summary.bit = rng.bit();
        Session session = commit(setup, emission, summary.bit, rng);
        const auto &readings = session.measure_all(plan, rng);
        summary.all_identified = std::none_of(readings.begin(), readings.end(),
                                              [](const ChannelReading &c) { return c.outcome == Outcome::kPerp; });
        if (early) {
            int parity = 0;
            for (const auto &c : readings) {
                parity ^= c.outcome == Outcome::kTwo ? 1 : 0;
            }
            summary.guess = summary.all_identified ? parity : rng.bit();
        }
        summary.verdict = session.open_and_verify({summary.bit, session.record().channel_bits}, opening_time);
        summary.aborted = summary.verdict == Verdict::kAbort;
        if (early) {
            summary.success = summary.guess == summary.bit;
        } else if (sender_cheats) {
            summary.success = !summary.aborted;
        } else {
            summary.success = summary.verdict == Verdict::kAccept;
        }
        result.runs[static_cast<size_t>(r)] = summary;
        if (options.keep_transcripts) {
            result.transcripts[static_cast<size_t>(r)] = session.transcript();
        }
    };

    const int jobs = static_cast<int>(std::clamp<int64_t>(options.jobs, 1, options.runs));
    if (jobs == 1) {
        for (int64_t r = 0; r < options.runs; ++r) {
            run_one(r);
        }
        return result;
    }
    std::vector<std::thread> workers;
    std::vector<std::exception_ptr> errors(static_cast<size_t>(jobs));
    for (int j = 0; j < jobs; ++j) {
        workers.emplace_back([&, j] {
            try {
                for (int64_t r = j; r < options.runs; r += jobs) {
                    run_one(r);
                }
            } catch (...) {
                errors[static_cast<size_t>(j)] = std::current_exception();
            }
        });
    }
    for (auto &w : workers) {
        w.join();
    }
    for (const auto &e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
    return result;
}

double cheat_detection_monte_carlo(const ProtocolSetup &setup, const Strategy &strategy, int64_t runs, uint64_t seed,
                                   int jobs) {
    if (runs <= 0) {
        throw std::invalid_argument("Monte Carlo needs at least one run");
    }
    auto result = simulate_runs(setup, strategy, {runs, seed, jobs, false});
    auto aborted = std::count_if(result.runs.begin(), result.runs.end(), [](const RunSummary &r) { return r.aborted; });
    return static_cast<double>(aborted) / static_cast<double>(runs);
}

}  // namespace rqbc
