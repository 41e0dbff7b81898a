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

#include <cmath>
#include <map>

#include "gtest/gtest.h"
#include "rqbc/errors.h"
#include "rqbc/oracle.h"

using namespace rqbc;

namespace {

CommitConfig config(int n, double t_open, PovmFamily family = PovmFamily::kSupport) {
    CommitConfig c;
    c.channels = n;
    c.t_open = t_open;
    c.family = family;
    return c;
}

int parity(const std::vector<int> &bits) {
    int p = 0;
    for (int b : bits) {
        p ^= b;
    }
    return p;
}

}  // namespace

TEST(protocol, config_validation) {
    EXPECT_NO_THROW(config(1, 10).validate());
    EXPECT_THROW(config(0, 10).validate(), std::invalid_argument);
    CommitConfig c = config(2, 10);
    c.t_probe = 10;
    EXPECT_THROW(c.validate(), std::invalid_argument);
    c.t_probe = -1;
    EXPECT_THROW(c.validate(), std::invalid_argument);
    c = config(2, 10);
    c.psi1 = make_amplitude(Shape::kRectangular, 10.5, 1);
    EXPECT_THROW(c.validate(), std::invalid_argument);
    c.psi1 = make_amplitude(Shape::kRectangular, 12, 2);
    EXPECT_THROW(c.validate(), std::invalid_argument);
    c = config(2, 10);
    c.channel_length = -1;
    EXPECT_THROW(c.validate(), std::invalid_argument);
}

TEST(protocol, single_channel_carries_bit) {
    ProtocolSetup setup(config(1, 10));
    Rng rng(1);
    Session s = commit(setup, 0, rng);
    ASSERT_EQ(s.channels(), 1u);
    EXPECT_EQ(s.record().channel_bits[0], 0);
    const auto &state = std::get<SampledState>(s.channel_state(0));
    EXPECT_NEAR(std::abs(overlap(state, setup.psi(0)) - 1.0), 0, 1e-12);
}

TEST(protocol, parity_and_uniformity) {
    Rng rng(2024);
    const int n = 100000;
    std::map<std::vector<int>, int> counts;
    for (int i = 0; i < n; ++i) {
        CommitRecord r = draw_record(3, 1, rng);
        ASSERT_EQ(parity(r.channel_bits), 1);
        ++counts[r.channel_bits];
    }
    ASSERT_EQ(counts.size(), 4u);
    const double sigma = std::sqrt(n * 0.25 * 0.75);
    for (const auto &[bits, count] : counts) {
        EXPECT_LE(std::abs(count - n / 4.0), 3 * sigma);
    }
    for (int trial = 0; trial < 1000; ++trial) {
        int bit = trial % 2;
        EXPECT_EQ(parity(draw_record(1 + trial % 7, bit, rng).channel_bits), bit);
    }
}

TEST(protocol, seeded_record_repeats) {
    Rng a(77), b(77);
    EXPECT_EQ(draw_record(9, 1, a).channel_bits, draw_record(9, 1, b).channel_bits);
}

TEST(protocol, zero_window_all_perp) {
    ProtocolSetup setup(config(6, 10));
    Rng rng(3);
    Session s = commit(setup, 1, rng);
    for (const auto &reading : s.measure_all(0, PovmFamily::kState, rng)) {
        EXPECT_EQ(reading.outcome, Outcome::kPerp);
        EXPECT_EQ(reading.time, 0);
    }
}

TEST(protocol, long_window_identifies) {
    ProtocolSetup setup(config(4, 1000));
    for (PovmFamily family : {PovmFamily::kSupport, PovmFamily::kState}) {
        MeasurementPlan plan = plan_measurement(setup, *honest_emission(setup), 1000, family);
        EXPECT_GE(plan.by_channel_bit[0].p1, 0.99);
        EXPECT_GE(plan.by_channel_bit[1].p2, 0.99);
    }
}

TEST(protocol, honest_support_never_contradicts) {
    ProtocolSetup setup(config(5, 20));
    auto emission = honest_emission(setup);
    for (double t : {0.5, 3.0, 20.0}) {
        Rng rng(static_cast<uint64_t>(t * 10));
        for (int run = 0; run < 500; ++run) {
            Session s = commit(setup, emission, run % 2, rng);
            const auto &readings = s.measure_all(t, PovmFamily::kSupport, rng);
            for (size_t i = 0; i < readings.size(); ++i) {
                Outcome wrong = s.record().channel_bits[i] == 0 ? Outcome::kTwo : Outcome::kOne;
                ASSERT_NE(readings[i].outcome, wrong);
            }
            Verdict v = s.open_and_verify({s.record().bit, s.record().channel_bits}, 21);
            ASSERT_NE(v, Verdict::kAbort);
        }
    }
}

TEST(protocol, flipped_claim_aborts) {
    ProtocolSetup setup(config(3, 1000));
    Rng rng(11);
    for (int attempt = 0; attempt < 50; ++attempt) {
        Session s = commit(setup, 0, rng);
        const auto &readings = s.measure_all(1000, PovmFamily::kSupport, rng);
        auto it = std::find_if(readings.begin(), readings.end(),
                               [](const ChannelReading &r) { return r.outcome != Outcome::kPerp; });
        if (it == readings.end()) {
            continue;
        }
        Opening lie{1, s.record().channel_bits};
        lie.channel_bits[static_cast<size_t>(it - readings.begin())] ^= 1;
        EXPECT_EQ(s.open_and_verify(lie, 1001), Verdict::kAbort);
        return;
    }
    FAIL() << "no definite outcome in 50 attempts";
}

TEST(protocol, parity_mismatch_aborts) {
    ProtocolSetup setup(config(2, 10));
    Rng rng(4);
    Session s = commit(setup, 0, rng);
    s.measure_all(0, PovmFamily::kSupport, rng);
    EXPECT_EQ(s.open_and_verify({1, s.record().channel_bits}, 11), Verdict::kAbort);
}

TEST(protocol, ordering_enforced) {
    ProtocolSetup setup(config(2, 10));
    Rng rng(5);
    Session s = commit(setup, 1, rng);
    Opening honest{s.record().bit, s.record().channel_bits};
    EXPECT_THROW(s.open_and_verify(honest, 11), ProtocolError);
    s.measure_all(10, PovmFamily::kSupport, rng);
    EXPECT_THROW(s.measure_all(10, PovmFamily::kSupport, rng), ProtocolError);
    EXPECT_THROW(s.open_and_verify(honest, 5), ProtocolError);
    EXPECT_THROW(s.open_and_verify(honest, 10), ProtocolError);
    EXPECT_NO_THROW(s.open_and_verify(honest, 10.5));
    EXPECT_THROW(s.open_and_verify(honest, 12), ProtocolError);
}

TEST(protocol, verdict_requires_all_definite) {
    ProtocolSetup setup(config(3, 10));
    Rng rng(6);
    Session s = commit(setup, 0, rng);
    s.measure_all(0, PovmFamily::kSupport, rng);
    EXPECT_EQ(s.open_and_verify({0, s.record().channel_bits}, 11), Verdict::kInconclusive);
}

TEST(protocol, channel_length_shifts_window) {
    CommitConfig c = config(1, 50);
    c.channel_length = 5;
    ProtocolSetup setup(c);
    EXPECT_EQ(setup.window_at(3), 0);
    EXPECT_EQ(setup.window_at(12), 7);
    ProtocolSetup direct(config(1, 50));
    EXPECT_NEAR(setup.identification_prob(12), direct.identification_prob(7), 1e-12);
}

TEST(protocol, identification_formulas) {
    EXPECT_EQ(ident_prob_individual(1, 7), 1);
    EXPECT_NEAR(ident_prob_individual(0.5, 10), 9.765625e-4, 1e-18);
    EXPECT_EQ(ident_prob_collective(1, 7), 1);
    EXPECT_NEAR(ident_prob_collective(0.5, 10), 0.03125, 1e-16);
    EXPECT_EQ(guess_success(0, 5), 0.5);
    EXPECT_EQ(guess_success(1, 5), 1);
    EXPECT_NEAR(guess_success(0.3, 4), 0.50405, 1e-15);
    EXPECT_THROW(ident_prob_individual(1.5, 2), std::invalid_argument);
}

TEST(protocol, identification_matches_exhaustive) {
    for (int n = 1; n <= 4; ++n) {
        for (double p : {0.1, 0.3, 0.5, 0.9}) {
            oracle::ParityTable table = oracle::parity_exhaustive(n, p);
            EXPECT_NEAR(ident_prob_individual(p, n), table.all_detected, 1e-14);
            EXPECT_NEAR(guess_success(p, n), table.guess_success, 1e-14);
        }
    }
}

TEST(protocol, storage_security_curve) {
    ProtocolSetup setup(config(4, 1000));
    std::vector<double> times = {0, 0.01, 0.1, 1, 10, 100, 1000};
    auto curve = storage_security_curve(setup, times);
    ASSERT_EQ(curve.size(), times.size());
    EXPECT_EQ(curve.front().second, 1);
    EXPECT_LT(curve.back().second, 0.01);
    for (size_t i = 1; i < curve.size(); ++i) {
        EXPECT_EQ(curve[i].first, times[i]);
        EXPECT_LE(curve[i].second, curve[i - 1].second);
    }
    std::vector<double> bad = {1001};
    EXPECT_THROW(storage_security_curve(setup, bad), std::invalid_argument);
}

TEST(protocol, inconclusive_penalty) {
    ProtocolSetup setup(config(4, 100));
    EXPECT_NEAR(inconclusive_penalty(setup), (1 - setup.identification_prob(100)) * 4, 1e-15);
}
