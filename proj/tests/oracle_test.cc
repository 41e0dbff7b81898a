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

#include "rqbc/oracle.h"

#include <cmath>
#include <numbers>

#include <gsl/gsl_sf_expint.h>

#include "gtest/gtest.h"
#include "rqbc/measurement.h"
#include "rqbc/window.h"

using namespace rqbc;

TEST(oracle, sine_integral_matches_gsl) {
    for (double x : {0.0, 1e-6, 0.01, 0.5, 1.0, 2.0, 3.9, 4.0, 4.1, 7.5, 20.0, 123.4, 1e3, 1e4, 1e6}) {
        EXPECT_NEAR(oracle::sine_integral(x), gsl_sf_Si(x), 1e-14 * std::max(1.0, std::abs(gsl_sf_Si(x)))) << x;
        EXPECT_EQ(oracle::sine_integral(-x), -oracle::sine_integral(x));
    }
}

TEST(oracle, flat_closed_form) {
    EXPECT_EQ(oracle::detect_prob_flat_closed_form(1, 0), 0);
    EXPECT_NEAR(oracle::detect_prob_flat_closed_form(1, 1), (2 * gsl_sf_Si(1) - 2 * (1 - std::cos(1.0))) / std::numbers::pi,
                1e-15);
    EXPECT_GE(oracle::detect_prob_flat_closed_form(1, 1e4), 0.999);
    EXPECT_NEAR(oracle::detect_prob_flat_closed_form(1, 0.01) / (0.01 / std::numbers::pi), 1, 1e-2);
    // Depends only on the product delta * T.
    EXPECT_NEAR(oracle::detect_prob_flat_closed_form(4, 0.25), oracle::detect_prob_flat_closed_form(1, 1), 1e-15);
}

TEST(oracle, time_domain_zero_window) {
    SpectralAmplitude a = make_amplitude(Shape::kRectangular, 10, 1);
    EXPECT_EQ(oracle::detect_prob_time_domain(a, 0), 0);
}

TEST(oracle, time_domain_flat) {
    SpectralAmplitude a = make_amplitude(Shape::kRectangular, 10, 1);
    EXPECT_NEAR(oracle::detect_prob_time_domain(a, 1), oracle::detect_prob_flat_closed_form(1, 1), 1e-10);
}

TEST(oracle, time_amplitude_rectangle) {
    const double delta = 1;
    SpectralAmplitude a = make_amplitude(Shape::kRectangular, 10, delta);
    for (double tau : {-4.0, 0.0, 0.3, 9.0}) {
        double x = delta * tau / 2;
        double sinc = x == 0 ? 1 : std::sin(x) / x;
        Complex expected = std::sqrt(delta / (2 * std::numbers::pi)) * sinc * std::polar(1.0, -10 * tau);
        EXPECT_NEAR(std::abs(oracle::time_amplitude(a, tau) - expected), 0, 1e-12) << tau;
    }
}

TEST(oracle, kernel_agreement_grid) {
    for (Shape shape : {Shape::kRectangular, Shape::kTruncatedGaussian, Shape::kRaisedCosine}) {
        for (double delta : {0.5, 2.0}) {
            for (double t_delta : {0.3, 3.0}) {
                double t = t_delta / delta;
                SpectralAmplitude a = make_amplitude(shape, 10, delta);
                std::array<Interval, 1> support = {a.support()};
                GridPtr grid = grid_for_supports(support, delta, t);
                double kernel = detect_prob(build_window(grid, t), sample(a, grid));
                double reference = oracle::detect_prob_time_domain(a, t);
                EXPECT_NEAR(kernel / reference, 1, 1e-6);
            }
        }
    }
}

TEST(oracle, audit_flags_corruption) {
    auto [a1, a2] = disjoint_pair(12, 10, 1, Shape::kRectangular);
    std::array<Interval, 2> supports = {a1.support(), a2.support()};
    GridPtr grid = grid_for_supports(supports, 1);
    Povm povm = support_povm(grid, a1.support(), a2.support(), 3);
    std::array<Eigen::MatrixXcd, 3> elements = {povm.element(Outcome::kOne), povm.element(Outcome::kTwo),
                                                povm.element(Outcome::kPerp)};
    oracle::PovmAudit clean = oracle::audit_povm(elements);
    EXPECT_TRUE(clean.ok());
    EXPECT_LE(clean.completeness_residual, 1e-8);
    EXPECT_LE(clean.hermiticity_residual, 1e-12);

    Eigen::Index i = 0;
    elements[0].diagonal().real().maxCoeff(&i);
    elements[0](i, i) = -elements[0](i, i);
    oracle::PovmAudit bad = oracle::audit_povm(elements);
    EXPECT_FALSE(bad.ok());
    EXPECT_LT(bad.min_eigenvalue[0], -1e-9);
}

TEST(oracle, state_povm_perp_positive) {
    auto [a1, a2] = disjoint_pair(12, 10, 1, Shape::kTruncatedGaussian);
    std::array<Interval, 2> supports = {a1.support(), a2.support()};
    GridPtr grid = grid_for_supports(supports, 1, 10);
    SampledState s1 = sample(a1, grid), s2 = sample(a2, grid);
    for (double t : {0.1, 1.0, 10.0}) {
        Povm povm = state_povm(s1, s2, t);
        EXPECT_GE(oracle::audit_povm(povm.elements()).min_eigenvalue[2], -1e-9);
    }
}

TEST(oracle, parity_exhaustive) {
    EXPECT_NEAR(oracle::parity_exhaustive(1, 0.3).all_detected, 0.3, 1e-15);
    EXPECT_NEAR(oracle::parity_exhaustive(3, 0.5).all_detected, 0.125, 1e-15);
    oracle::ParityTable t = oracle::parity_exhaustive(4, 0.3);
    EXPECT_NEAR(t.all_detected, 0.0081, 1e-15);
    EXPECT_NEAR(t.guess_success, 0.50405, 1e-15);
    ASSERT_EQ(t.pattern_probability.size(), 16u);
    double total = 0;
    for (double q : t.pattern_probability) {
        total += q;
    }
    EXPECT_NEAR(total, 1, 1e-15);
    EXPECT_THROW(oracle::parity_exhaustive(5, 0.3), std::invalid_argument);
}
