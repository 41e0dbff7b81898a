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

#include "rqbc/cli/commands.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <thread>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "rqbc/attacks.h"
#include "rqbc/cli/json_io.h"
#include "rqbc/errors.h"
#include "rqbc/measurement.h"
#include "rqbc/oracle.h"
#include "rqbc/protocol.h"
#include "rqbc/spectra.h"
#include "rqbc/window.h"

namespace rqbc::cli {

namespace {

std::string num(double x) {
    return fmt::format("{:.15g}", x);
}

uint64_t master_seed(const ConfigDoc &config, const CommonOptions &options) {
    if (options.seed) {
        return *options.seed;
    }
    int64_t seed = config.integer("seed", 0);
    if (seed < 0) {
        config.fail("seed", "must be non-negative");
    }
    return static_cast<uint64_t>(seed);
}

void write_header(std::ostream &out, std::string_view command, uint64_t seed, const ConfigDoc &config,
                  const std::vector<std::pair<std::string, std::string>> &extra = {}) {
    out << "# rqbc " << kToolVersion << "\n";
    out << "# command: " << command << "\n";
    out << "# seed: " << seed << "\n";
    out << "# config_hash: " << config_hash(config.text()) << "\n";
    for (const auto &[key, value] : extra) {
        out << "# " << key << ": " << value << "\n";
    }
}

// Runs fn(i) for i in [0, n) on up to `jobs` threads.
void parallel_for(size_t n, int jobs, const std::function<void(size_t)> &fn) {
    size_t workers = std::min<size_t>(static_cast<size_t>(std::max(1, jobs)), n);
    if (workers <= 1) {
        for (size_t i = 0; i < n; ++i) {
            fn(i);
        }
        return;
    }
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> threads;
    for (size_t w = 0; w < workers; ++w) {
        threads.emplace_back([&, w] {
            try {
                for (size_t i = w; i < n; i += workers) {
                    fn(i);
                }
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto &t : threads) {
        t.join();
    }
    for (const auto &e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
}

template <class F>
auto with_key(const ConfigDoc &config, const std::string &key, F &&f) -> decltype(f()) {
    try {
        return f();
    } catch (const std::invalid_argument &e) {
        config.fail(key, e.what());
    }
}

Shape shape_key(const ConfigDoc &config, const std::string &key, const std::string &fallback) {
    std::string name = config.string(key, fallback);
    return with_key(config, key, [&] { return parse_shape(name); });
}

PovmFamily family_key(const ConfigDoc &config, const std::string &key, const std::string &fallback) {
    std::string name = config.string(key, fallback);
    return with_key(config, key, [&] { return parse_family(name); });
}

std::vector<double> sweep_times(const ConfigDoc &config) {
    std::vector<double> times;
    if (config.has("times")) {
        times = config.numbers("times");
    } else {
        double t_min = config.number("t_min", 0.0);
        double t_max = config.number("t_max", 100.0);
        int64_t points = config.integer("t_points", 50);
        std::string spacing = config.string("t_spacing", "linear");
        if (points < 1) {
            config.fail("t_points", "must be at least 1");
        }
        if (!(t_max >= t_min)) {
            config.fail("t_max", "must not be below t_min");
        }
        if (spacing != "linear" && spacing != "log") {
            config.fail("t_spacing", "expected 'linear' or 'log'");
        }
        if (spacing == "log" && !(t_min > 0)) {
            config.fail("t_min", "log spacing needs t_min > 0");
        }
        for (int64_t i = 0; i < points; ++i) {
            double f = points == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(points - 1);
            times.push_back(spacing == "log" ? t_min * std::pow(t_max / t_min, f) : t_min + (t_max - t_min) * f);
        }
    }
    for (double t : times) {
        if (!(t >= 0) || !std::isfinite(t)) {
            config.fail(config.has("times") ? "times" : "t_min", "window times must be finite and non-negative");
        }
    }
    if (times.empty()) {
        config.fail("times", "no window times");
    }
    return times;
}

void sweep_detect(const ConfigDoc &config, const SweepOptions &options, std::ostream &out, uint64_t seed) {
    std::vector<Shape> shapes;
    for (const auto &name : config.strings("shapes", std::vector<std::string>{"rectangular", "truncated-gaussian",
                                                                             "raised-cosine"})) {
        shapes.push_back(with_key(config, "shapes", [&] { return parse_shape(name); }));
    }
    const std::vector<double> deltas = config.numbers("deltas", std::vector<double>{1.0});
    const double k_c = config.number("k_c", 10.0);
    const std::vector<double> times = sweep_times(config);
    const double t_max = *std::max_element(times.begin(), times.end());
    const bool ascending = std::is_sorted(times.begin(), times.end());

    write_header(out, "sweep", seed, config, {{"table", "detect"}, {"k_c", num(k_c)}});
    out << "delta,T,shape,p_detect,p_perp,alpha_eff\n";

    std::ofstream spectrum;
    if (!options.spectrum_path.empty()) {
        spectrum.open(options.spectrum_path);
        if (!spectrum) {
            throw ConfigError(options.spectrum_path, 0, "cannot open spectrum output");
        }
        write_header(spectrum, "sweep-spectrum", seed, config);
        spectrum << "index,eigenvalue\n";
    }

    for (Shape shape : shapes) {
        for (double delta : deltas) {
            SpectralAmplitude amplitude =
                with_key(config, "deltas", [&] { return make_amplitude(shape, k_c, delta); });
            std::array<Interval, 1> support = {amplitude.support()};
            GridPtr grid = grid_for_supports(support, delta, t_max);
            SampledState state = sample(amplitude, grid);

            std::vector<double> p(times.size());
            std::vector<std::vector<double>> eigen(times.size());
            const bool dump = spectrum.is_open() && shape == shapes.front();
            parallel_for(times.size(), options.jobs, [&](size_t i) {
                WindowOperator window = build_window(grid, times[i]);
                p[i] = detect_prob(window, state);
                if (dump) {
                    eigen[i] = window_spectrum(window);
                }
            });
            for (size_t i = 0; i < times.size(); ++i) {
                if (ascending && i > 0 && p[i] < p[i - 1] - 1e-12) {
                    throw InvariantError("detection probability decreased with T at T = " + num(times[i]));
                }
                out << num(delta) << ',' << num(times[i]) << ',' << shape_name(shape) << ',' << num(p[i]) << ','
                    << num(1 - p[i]) << ',' << num(effective_angle(p[i])) << '\n';
                if (dump) {
                    spectrum << "# delta=" << num(delta) << " T=" << num(times[i]) << "\n";
                    for (size_t j = 0; j < eigen[i].size(); ++j) {
                        spectrum << j << ',' << num(eigen[i][j]) << '\n';
                    }
                }
            }
        }
    }
}

void sweep_outcomes(const ConfigDoc &config, const SweepOptions &options, std::ostream &out, uint64_t seed) {
    const Shape shape = shape_key(config, "shapes", "rectangular");
    const std::vector<double> deltas = config.numbers("deltas", std::vector<double>{1.0});
    const double k1 = config.number("k1", 12.0);
    const double k2 = config.number("k2", 10.0);
    const std::vector<double> times = sweep_times(config);
    const double t_max = *std::max_element(times.begin(), times.end());
    const std::string family_name_value = config.string("family", "both");
    std::vector<PovmFamily> families;
    if (family_name_value == "both") {
        families = {PovmFamily::kSupport, PovmFamily::kState};
    } else {
        families = {family_key(config, "family", "both")};
    }
    const std::string input = config.string("input", "psi1");
    if (input != "psi1" && input != "psi2" && input != "mixed") {
        config.fail("input", "expected psi1, psi2 or mixed");
    }

    write_header(out, "sweep", seed, config,
                 {{"table", "outcomes"}, {"shape", std::string(shape_name(shape))}, {"input", input}});
    out << "family,T,delta,k1,k2,p1,p2,p_perp\n";

    for (double delta : deltas) {
        auto [a1, a2] = with_key(config, "k1", [&] { return disjoint_pair(k1, k2, delta, shape); });
        std::array<Interval, 2> supports = {a1.support(), a2.support()};
        GridPtr grid = grid_for_supports(supports, delta, t_max);
        std::array<SampledState, 2> psi = {sample(a1, grid), sample(a2, grid)};
        std::array<double, 2> half = {0.5, 0.5};
        TransmittedState state = input == "psi1"   ? TransmittedState(psi[0])
                                 : input == "psi2" ? TransmittedState(psi[1])
                                                   : TransmittedState(DensityMatrix::mixture(psi, half));
        for (PovmFamily family : families) {
            std::vector<OutcomeDist> dist(times.size());
            parallel_for(times.size(), options.jobs, [&](size_t i) {
                WindowOperator window = build_window(grid, times[i]);
                Povm povm = family == PovmFamily::kSupport ? support_povm(window, a1.support(), a2.support())
                                                           : state_povm(window, psi[0], psi[1]);
                dist[i] = outcome_dist(povm, state);
            });
            for (size_t i = 0; i < times.size(); ++i) {
                out << family_name(family) << ',' << num(times[i]) << ',' << num(delta) << ',' << num(k1) << ','
                    << num(k2) << ',' << num(dist[i].p1) << ',' << num(dist[i].p2) << ',' << num(dist[i].p_perp)
                    << '\n';
            }
        }
    }
}

CommitConfig commit_config(const ConfigDoc &config, uint64_t seed) {
    CommitConfig c;
    int64_t n = config.integer("N", 1);
    if (n < 1 || n > 1'000'000) {
        config.fail("N", "channel count must be in [1, 1e6]");
    }
    c.channels = static_cast<int>(n);
    Shape shape = shape_key(config, "shape", "rectangular");
    double delta = config.number("delta", 1.0);
    double k1 = config.number("k1", 12.0);
    double k2 = config.number("k2", 10.0);
    auto pair = with_key(config, "delta", [&] { return disjoint_pair(k1, k2, delta, shape); });
    c.psi1 = pair.first;
    c.psi2 = pair.second;
    c.t_open = config.number("T_open", 1000.0);
    c.t_probe = config.number("t_probe", 0.0);
    c.family = family_key(config, "family", "state");
    c.channel_length = config.number("channel_length", 0.0);
    c.seed = seed;
    with_key(config, "T_open", [&] {
        c.validate();
        return 0;
    });
    return c;
}

Strategy strategy_from(const ConfigDoc &config, const std::string &kind, double param, const ProtocolSetup &setup) {
    if (kind == "honest") {
        return Honest{};
    }
    if (kind == "delayed") {
        return Delayed{param};
    }
    if (kind == "mixed") {
        return Mixed{};
    }
    if (kind == "early_measure") {
        return EarlyMeasure{param};
    }
    if (kind == "wrong_state") {
        SpectralAmplitude amplitude = with_key(config, "wrong_delta", [&] {
            return make_amplitude(parse_shape(config.string("wrong_shape", "rectangular")),
                                  config.number("wrong_k_c", setup.config().psi1.center()),
                                  config.number("wrong_delta", setup.config().psi1.bandwidth()),
                                  config.number("wrong_tau0", 0.0));
        });
        return WrongState{with_key(config, "wrong_k_c", [&] { return sample(amplitude, setup.grid()); })};
    }
    config.fail(config.has("adversary") ? "adversary" : "strategy",
                "unknown strategy '" + kind + "' (honest, delayed, mixed, wrong_state, early_measure)");
}

}  // namespace

void sweep(const ConfigDoc &config, const SweepOptions &options, std::ostream &out) {
    config.reject_unknown({"shapes", "deltas", "k_c", "times", "t_min", "t_max", "t_points", "t_spacing", "table",
                           "family", "k1", "k2", "input", "seed"});
    const uint64_t seed = master_seed(config, options);
    const std::string table = config.string("table", "detect");
    if (table == "detect") {
        sweep_detect(config, options, out, seed);
    } else if (table == "outcomes") {
        sweep_outcomes(config, options, out, seed);
    } else {
        config.fail("table", "expected 'detect' or 'outcomes'");
    }
}

void run(const ConfigDoc &config, const CommonOptions &options, std::ostream &out) {
    config.reject_unknown({"N", "shape", "delta", "k1", "k2", "T_open", "t_probe", "family", "adversary", "tau0",
                           "runs", "channel_length", "seed", "wrong_shape", "wrong_k_c", "wrong_delta",
                           "wrong_tau0"});
    const uint64_t seed = master_seed(config, options);
    const ProtocolSetup setup(commit_config(config, seed));
    const CommitConfig &c = setup.config();
    const std::string adversary = config.string("adversary", "honest");
    const double param = adversary == "early_measure" ? c.t_probe : config.number("tau0", 0.0);
    const Strategy strategy = strategy_from(config, adversary, param, setup);
    with_key(config, "tau0", [&] {
        validate_strategy(strategy, c);
        return 0;
    });
    const int64_t runs = config.integer("runs", 100);
    if (runs < 0) {
        config.fail("runs", "must be non-negative");
    }
    const bool json = options.format == "json";
    MonteCarloResult result = simulate_runs(setup, strategy, {runs, seed, options.jobs, json});

    const bool honest = std::holds_alternative<Honest>(strategy);
    int64_t successes = 0, aborts = 0;
    for (size_t r = 0; r < result.runs.size(); ++r) {
        const RunSummary &s = result.runs[r];
        successes += s.success;
        aborts += s.aborted;
        if (honest && c.family == PovmFamily::kSupport && s.aborted) {
            throw InvariantError("honest run " + std::to_string(r) + " aborted under the support family");
        }
        if (json) {
            const CommitRecord &record = result.transcripts[r].record;
            int parity = 0;
            for (int b : record.channel_bits) {
                parity ^= b;
            }
            if (parity != record.bit) {
                throw InvariantError("run " + std::to_string(r) + " broke the parity invariant");
            }
        }
    }

    const double p_probe = setup.identification_prob(c.t_probe);
    const double p_open = setup.identification_prob(c.t_open);
    if (!json) {
        double denom = runs > 0 ? static_cast<double>(runs) : 1.0;
        write_header(out, "run", seed, config,
                     {{"N", std::to_string(c.channels)},
                      {"adversary", adversary},
                      {"p_probe", num(p_probe)},
                      {"p_open", num(p_open)},
                      {"inconclusive_penalty", num(inconclusive_penalty(setup))},
                      {"runs", std::to_string(runs)},
                      {"success_rate", num(static_cast<double>(successes) / denom)},
                      {"abort_rate", num(static_cast<double>(aborts) / denom)}});
        out << "seed,N,T_probe,T_open,family,adversary,success,aborted\n";
        for (const RunSummary &s : result.runs) {
            out << s.seed << ',' << c.channels << ',' << num(c.t_probe) << ',' << num(c.t_open) << ','
                << family_name(c.family) << ',' << adversary << ',' << (s.success ? 1 : 0) << ','
                << (s.aborted ? 1 : 0) << '\n';
        }
        return;
    }

    if (!options.out.empty()) {
        std::filesystem::create_directories(options.out);
    }
    for (size_t r = 0; r < result.runs.size(); ++r) {
        const RunSummary &s = result.runs[r];
        nlohmann::json j = result.transcripts[r];
        j["tool_version"] = std::string(kToolVersion);
        j["master_seed"] = seed;
        j["config_hash"] = config_hash(config.text());
        j["run"] = r;
        j["seed"] = s.seed;
        j["adversary"] = adversary;
        j["success"] = s.success;
        j["aborted"] = s.aborted;
        if (s.guess >= 0) {
            j["guess"] = s.guess;
        }
        if (options.out.empty()) {
            out << j.dump() << '\n';
        } else {
            std::ofstream file(std::filesystem::path(options.out) / fmt::format("run_{:06d}.json", r));
            if (!file) {
                throw ConfigError(options.out, 0, "cannot write transcript");
            }
            file << j.dump(2) << '\n';
        }
    }
}

void attack(const ConfigDoc &config, const AttackOptions &options, std::ostream &out) {
    config.reject_unknown({"strategy", "tau0", "t_probe", "N", "times", "family", "shape", "delta", "k1", "k2",
                           "seed", "channel_length", "wrong_shape", "wrong_k_c", "wrong_delta", "wrong_tau0"});
    const uint64_t seed = master_seed(config, options);
    std::vector<std::string> kinds = options.strategy.empty() ? config.strings("strategy", std::vector<std::string>{"mixed"})
                                                              : std::vector<std::string>{options.strategy};
    std::vector<double> tau0s = options.tau0 ? std::vector<double>{*options.tau0}
                                             : config.numbers("tau0", std::vector<double>{2 * std::numbers::pi});
    std::vector<double> probes = config.numbers("t_probe", std::vector<double>{0.0});
    std::vector<double> ns = config.numbers("N", std::vector<double>{20});
    std::vector<double> times = config.numbers("times", std::vector<double>{1000});
    for (double n : ns) {
        if (!(n >= 1) || n != std::floor(n)) {
            config.fail("N", "channel counts must be positive integers");
        }
    }
    for (double t : times) {
        if (!(t >= 0)) {
            config.fail("times", "window times must be non-negative");
        }
    }
    const PovmFamily family = family_key(config, "family", "state");

    // Setup sized for the longest window; only its grid and states are used.
    CommitConfig c;
    {
        Shape shape = shape_key(config, "shape", "rectangular");
        double delta = config.number("delta", 1.0);
        auto pair = with_key(config, "delta",
                             [&] { return disjoint_pair(config.number("k1", 12.0), config.number("k2", 10.0), delta, shape); });
        c.psi1 = pair.first;
        c.psi2 = pair.second;
        double t_max = *std::max_element(times.begin(), times.end());
        double probe_max = *std::max_element(probes.begin(), probes.end());
        c.t_open = std::max({t_max, probe_max, 1 / delta}) * (1 + 1e-12);
        c.family = family;
        c.channel_length = config.number("channel_length", 0.0);
        c.seed = seed;
        with_key(config, "times", [&] {
            c.validate();
            return 0;
        });
    }
    const ProtocolSetup setup(c);

    struct Row {
        std::string kind;
        double param;
        Strategy strategy;
    };
    std::vector<Row> rows;
    for (const auto &kind : kinds) {
        if (kind == "delayed") {
            for (double tau0 : tau0s) {
                rows.push_back({kind, tau0, strategy_from(config, kind, tau0, setup)});
            }
        } else if (kind == "early_measure") {
            for (double probe : probes) {
                rows.push_back({kind, probe, strategy_from(config, kind, probe, setup)});
            }
        } else {
            rows.push_back({kind, 0.0, strategy_from(config, kind, 0.0, setup)});
        }
        with_key(config, kind == "delayed" ? "tau0" : "t_probe", [&] {
            validate_strategy(rows.back().strategy, c);
            return 0;
        });
    }

    // q[t][row]
    std::vector<std::vector<double>> q(times.size(), std::vector<double>(rows.size()));
    std::vector<double> p(times.size());
    parallel_for(times.size(), options.jobs, [&](size_t ti) {
        Povm povm = setup.povm(times[ti], family);
        p[ti] = setup.identification_prob(times[ti]);
        for (size_t ri = 0; ri < rows.size(); ++ri) {
            q[ti][ri] = (per_channel_flag_prob(setup, rows[ri].strategy, povm, 0) +
                         per_channel_flag_prob(setup, rows[ri].strategy, povm, 1)) /
                        2;
        }
    });

    write_header(out, "attack", seed, config, {{"family", std::string(family_name(family))}});
    out << "strategy,param,N,T,q,detection_prob,P_ind,P_coll,P_guess\n";
    for (size_t ri = 0; ri < rows.size(); ++ri) {
        for (double n : ns) {
            int channels = static_cast<int>(n);
            for (size_t ti = 0; ti < times.size(); ++ti) {
                double detection = 1 - std::pow(1 - q[ti][ri], channels);
                out << rows[ri].kind << ',' << num(rows[ri].param) << ',' << channels << ',' << num(times[ti]) << ','
                    << num(q[ti][ri]) << ',' << num(detection) << ',' << num(ident_prob_individual(p[ti], channels))
                    << ',' << num(ident_prob_collective(p[ti], channels)) << ','
                    << num(guess_success(p[ti], channels)) << '\n';
            }
        }
    }
}

bool validate(const ValidateOptions &options, std::ostream &out) {
    int checks = 0, failures = 0;
    auto verdict = [&](bool ok) {
        ++checks;
        failures += ok ? 0 : 1;
        return ok ? "PASS" : "FAIL";
    };
    out << "# rqbc " << kToolVersion << "\n# command: validate\n";

    // POVM validity for both families on the default pair.
    auto [a1, a2] = disjoint_pair(12, 10, 1, Shape::kRectangular);
    std::array<Interval, 2> supports = {a1.support(), a2.support()};
    bool corrupted = false;
    for (double t : {0.1, 1.0, 10.0, 100.0}) {
        GridPtr grid = grid_for_supports(supports, 1, t);
        std::array<SampledState, 2> psi = {sample(a1, grid), sample(a2, grid)};
        WindowOperator window = build_window(grid, t);
        for (PovmFamily family : {PovmFamily::kSupport, PovmFamily::kState}) {
            Povm povm = family == PovmFamily::kSupport ? support_povm(window, a1.support(), a2.support())
                                                       : state_povm(window, psi[0], psi[1]);
            std::array<Eigen::MatrixXcd, 3> elements = {povm.element(Outcome::kOne), povm.element(Outcome::kTwo),
                                                        povm.element(Outcome::kPerp)};
            if (options.inject_corruption && !corrupted) {
                Eigen::Index i = 0;
                elements[0].diagonal().real().maxCoeff(&i);
                elements[0](i, i) = -elements[0](i, i);
                corrupted = true;
            }
            oracle::PovmAudit audit = oracle::audit_povm(elements);
            out << "povm family=" << family_name(family) << " T_delta=" << num(t) << " nodes=" << grid->size()
                << " min_eig=(" << fmt::format("{:.3e}", audit.min_eigenvalue[0]) << ","
                << fmt::format("{:.3e}", audit.min_eigenvalue[1]) << ","
                << fmt::format("{:.3e}", audit.min_eigenvalue[2])
                << ") max_eig_sum=" << fmt::format("{:.3e}", audit.sum_max_eigenvalue)
                << " completeness=" << fmt::format("{:.3e}", audit.completeness_residual) << " "
                << verdict(audit.ok()) << "\n";
        }
    }

    // Kernel matrix against time-domain quadrature.
    for (Shape shape : {Shape::kRectangular, Shape::kTruncatedGaussian, Shape::kRaisedCosine}) {
        for (double delta : {0.5, 1.0, 2.0}) {
            SpectralAmplitude amplitude(shape, 10, delta);
            for (double t_delta : {0.1, 1.0, 10.0}) {
                double t = t_delta / delta;
                std::array<Interval, 1> support = {amplitude.support()};
                GridPtr grid = grid_for_supports(support, delta, t);
                double kernel = detect_prob(build_window(grid, t), sample(amplitude, grid));
                double reference = oracle::detect_prob_time_domain(amplitude, t);
                double rel = std::abs(kernel - reference) / reference;
                out << "oracle shape=" << shape_name(shape) << " delta=" << num(delta) << " T=" << num(t)
                    << " kernel=" << num(kernel) << " time_domain=" << num(reference)
                    << " rel_err=" << fmt::format("{:.3e}", rel) << " " << verdict(rel <= 1e-6) << "\n";
            }
        }
    }

    // Flat spectrum against the closed form.
    for (double t_delta : {1e-3, 1e-1, 1.0, 10.0, 1e2, 1e3}) {
        SpectralAmplitude amplitude(Shape::kRectangular, 10, 1);
        std::array<Interval, 1> support = {amplitude.support()};
        GridPtr grid = grid_for_supports(support, 1, t_delta);
        double kernel = detect_prob(build_window(grid, t_delta), sample(amplitude, grid));
        double closed = oracle::detect_prob_flat_closed_form(1, t_delta);
        double err = std::abs(kernel - closed);
        out << "closed_form T_delta=" << num(t_delta) << " kernel=" << num(kernel) << " closed=" << num(closed)
            << " abs_err=" << fmt::format("{:.3e}", err) << " " << verdict(err <= 1e-8) << "\n";
    }

    out << "summary: " << checks << " checks, " << failures << " failures\n";
    return failures == 0;
}

int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"Relativistic quantum bit commitment simulator"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kToolVersion));

    auto add_common = [](CLI::App *sub, CommonOptions &o) {
        sub->add_option("--config", o.config_path, "Configuration file (JSON or key = value)");
        sub->add_option("--seed", o.seed, "Master seed (overrides the config)");
        sub->add_option("--out", o.out, "Output path (a directory for json transcripts)");
        sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--jobs", o.jobs, "Worker threads")->check(CLI::PositiveNumber);
    };

    SweepOptions sweep_opts;
    auto *sweep_cmd = app.add_subcommand("sweep", "Detection probability versus window length");
    add_common(sweep_cmd, sweep_opts);
    sweep_cmd->add_option("--spectrum", sweep_opts.spectrum_path, "Write window eigenvalues (index, eigenvalue)");

    CommonOptions run_opts;
    auto *run_cmd = app.add_subcommand("run", "Protocol Monte Carlo");
    add_common(run_cmd, run_opts);

    AttackOptions attack_opts;
    auto *attack_cmd = app.add_subcommand("attack", "Cheating strategies and their detection");
    add_common(attack_cmd, attack_opts);
    attack_cmd->add_option("--strategy", attack_opts.strategy, "honest|delayed|mixed|wrong_state|early_measure");
    attack_cmd->add_option("--tau0", attack_opts.tau0, "Delay of the delayed strategy");

    ValidateOptions validate_opts;
    auto *validate_cmd = app.add_subcommand("validate", "POVM audits and oracle agreement");
    add_common(validate_cmd, validate_opts);
    validate_cmd->add_flag("--inject-corruption", validate_opts.inject_corruption)->group("");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    auto with_output = [&](const CommonOptions &o, bool to_directory, const std::function<void(std::ostream &)> &body) {
        if (o.out.empty() || to_directory) {
            body(out);
            return;
        }
        std::ofstream file(o.out, std::ios::binary);
        if (!file) {
            throw ConfigError(o.out, 0, "cannot open output file");
        }
        body(file);
    };
    auto load = [](const CommonOptions &o) {
        return o.config_path.empty() ? ConfigDoc::parse("", "<defaults>") : ConfigDoc::load(o.config_path);
    };

    try {
        if (sweep_cmd->parsed()) {
            ConfigDoc config = load(sweep_opts);
            with_output(sweep_opts, false, [&](std::ostream &o) { sweep(config, sweep_opts, o); });
        } else if (run_cmd->parsed()) {
            ConfigDoc config = load(run_opts);
            with_output(run_opts, run_opts.format == "json", [&](std::ostream &o) { run(config, run_opts, o); });
        } else if (attack_cmd->parsed()) {
            ConfigDoc config = load(attack_opts);
            with_output(attack_opts, false, [&](std::ostream &o) { attack(config, attack_opts, o); });
        } else if (validate_cmd->parsed()) {
            bool ok = true;
            with_output(validate_opts, false, [&](std::ostream &o) { ok = validate(validate_opts, o); });
            if (!ok) {
                err << "validate: checks failed\n";
                return kExitInvariant;
            }
        }
    } catch (const ConfigError &e) {
        err << e.what() << "\n";
        return kExitConfig;
    } catch (const InvariantError &e) {
        err << "invariant violation: " << e.what() << "\n";
        return kExitInvariant;
    } catch (const ProtocolError &e) {
        err << "protocol violation: " << e.what() << "\n";
        return kExitInvariant;
    } catch (const std::invalid_argument &e) {
        err << "configuration error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return kExitInvariant;
    }
    return kExitOk;
}

}  // namespace rqbc::cli
