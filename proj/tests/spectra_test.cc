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

#include "rqbc/spectra.h"

#include <cmath>
#include <numbers>

#include "gtest/gtest.h"
#include "rqbc/oracle.h"

using namespace rqbc;

namespace {

GridPtr grid_over(const SpectralAmplitude &a, int panels = 4) {
    return make_grid({a.support().lo, a.support().hi, panels});
}

}  // namespace

TEST(spectra, rectangular_values) {
    SpectralAmplitude a = make_amplitude(Shape::kRectangular, 10, 1);
    EXPECT_EQ(a.support(), (Interval{9.5, 10.5}));
    EXPECT_NEAR(std::abs(a(10.2) - Complex(1, 0)), 0, 1e-15);
    EXPECT_EQ(a(9.4), Complex(0, 0));
    EXPECT_EQ(a(10.6), Complex(0, 0));

    SpectralAmplitude b = make_amplitude(Shape::kRectangular, 10, 1, 0.5);
    for (double k : {9.6, 10.0, 10.4}) {
        EXPECT_NEAR(std::abs(b(k) - std::polar(1.0, 0.5 * k)), 0, 1e-15);
    }

    SpectralAmplitude c = make_amplitude(Shape::kRectangular, 10, 4);
    EXPECT_NEAR(std::norm(c(11)), 0.25, 1e-15);
}

TEST(spectra, make_amplitude_rejects_unphysical) {
    EXPECT_THROW(make_amplitude(Shape::kRectangular, 10, 0), std::invalid_argument);
    EXPECT_THROW(make_amplitude(Shape::kRectangular, 10, -1), std::invalid_argument);
    EXPECT_THROW(make_amplitude(Shape::kRaisedCosine, 1, 2), std::invalid_argument);
    EXPECT_THROW(make_amplitude(Shape::kRaisedCosine, 1, 3), std::invalid_argument);
}

TEST(spectra, shapes_normalized) {
    // Adaptive quadrature of |psi|^2 over the support, independent of the grid code.
    for (Shape shape : {Shape::kRectangular, Shape::kTruncatedGaussian, Shape::kRaisedCosine}) {
        for (double delta : {0.5, 1.0, 3.0}) {
            SpectralAmplitude a = make_amplitude(shape, 10, delta);
            double n = 0;
            int m = 20000;
            double h = delta / m;
            for (int i = 0; i < m; ++i) {
                double k = a.support().lo + (i + 0.5) * h;
                n += std::norm(a(k)) * h;
            }
            EXPECT_NEAR(n, 1, 1e-7) << shape_name(shape) << " " << delta;
            SampledState s = sample(a, grid_over(a));
            EXPECT_NEAR(s.renormalization(), 1, 1e-10);
        }
    }
}

TEST(spectra, shape_names_round_trip) {
    for (Shape shape : {Shape::kRectangular, Shape::kTruncatedGaussian, Shape::kRaisedCosine}) {
        EXPECT_EQ(parse_shape(shape_name(shape)), shape);
    }
    EXPECT_THROW(parse_shape("triangle"), std::invalid_argument);
}

TEST(spectra, disjoint_pair) {
    auto [a, b] = disjoint_pair(12, 10, 1, Shape::kRectangular);
    EXPECT_EQ(a.support(), (Interval{11.5, 12.5}));
    EXPECT_EQ(b.support(), (Interval{9.5, 10.5}));
    EXPECT_FALSE(a.support().overlaps(b.support()));

    auto [c, d] = disjoint_pair(11, 10, 1, Shape::kRectangular);
    EXPECT_EQ(c.support().lo, d.support().hi);
    EXPECT_FALSE(c.support().overlaps(d.support()));

    EXPECT_THROW(disjoint_pair(10.5, 10, 1, Shape::kRectangular), std::invalid_argument);
}

TEST(spectra, gauss_legendre_integrates_polynomials) {
    auto [x, w] = gauss_legendre(64);
    ASSERT_EQ(x.size(), 64u);
    for (int d = 0; d <= 127; d += 9) {
        double s = 0;
        for (size_t i = 0; i < x.size(); ++i) {
            s += w[i] * std::pow(x[i], d);
        }
        double exact = d % 2 ? 0.0 : 2.0 / (d + 1);
        EXPECT_NEAR(s, exact, 1e-13) << d;
    }
}

TEST(spectra, grid_invariants) {
    KGrid grid({{9, 10, 3}, {10, 12.5, 5}});
    auto nodes = grid.nodes();
    auto weights = grid.weights();
    ASSERT_EQ(grid.size(), 8u * 64);
    double total = 0;
    for (size_t i = 0; i < nodes.size(); ++i) {
        EXPECT_GT(weights[i], 0);
        if (i) {
            EXPECT_GT(nodes[i], nodes[i - 1]);
        }
        total += weights[i];
    }
    EXPECT_NEAR(total / 3.5, 1, 1e-12);
    EXPECT_EQ(grid.k_min(), 9);
    EXPECT_EQ(grid.k_max(), 12.5);
    EXPECT_THROW(KGrid({{9, 10, 1}, {10.5, 11, 1}}), std::invalid_argument);
}

TEST(spectra, sample_rectangular_256_nodes) {
    SpectralAmplitude a = make_amplitude(Shape::kRectangular, 10, 1);
    GridPtr grid = grid_over(a, 4);
    ASSERT_EQ(grid->size(), 256u);
    SampledState s = sample(a, grid);
    double n = 0;
    for (size_t i = 0; i < grid->size(); ++i) {
        n += grid->weights()[i] * std::norm(s.values()[i]);
    }
    EXPECT_NEAR(n, 1, 1e-10);
}

TEST(spectra, sample_rejects_bad_grids) {
    SpectralAmplitude a = make_amplitude(Shape::kRectangular, 10, 1);
    EXPECT_THROW(sample(a, make_grid({9.5, 10, 4})), std::invalid_argument);
    EXPECT_THROW(sample(a, make_grid({9.5, 10.5, 1})), std::invalid_argument);
}

TEST(spectra, phase_leaves_modulus) {
    SpectralAmplitude a = make_amplitude(Shape::kTruncatedGaussian, 10, 1);
    GridPtr grid = grid_over(a);
    SampledState s0 = sample(a, grid);
    SampledState s1 = sample(a.delayed(0.5), grid);
    for (size_t i = 0; i < grid->size(); ++i) {
        EXPECT_NEAR(std::norm(s0.values()[i]), std::norm(s1.values()[i]), 1e-14);
    }
}

TEST(spectra, overlap_properties) {
    for (Shape shape : {Shape::kRectangular, Shape::kTruncatedGaussian, Shape::kRaisedCosine}) {
        auto [a, b] = disjoint_pair(12, 10, 1, shape);
        std::array<Interval, 2> supports = {a.support(), b.support()};
        GridPtr grid = grid_for_supports(supports, 1);
        SampledState sa = sample(a, grid);
        SampledState sb = sample(b, grid);
        EXPECT_EQ(overlap(sa, sb), Complex(0, 0));
        EXPECT_NEAR(std::abs(overlap(sa, sa) - 1.0), 0, 1e-8);

        SampledState sc = sample(a.delayed(0.7), grid);
        Complex ac = overlap(sa, sc);
        Complex ca = overlap(sc, sa);
        EXPECT_NEAR(std::abs(ac - std::conj(ca)), 0, 1e-15);
        EXPECT_LE(std::abs(ac), 1 + 1e-12);
    }
}

TEST(spectra, overlap_with_delayed_rectangle) {
    const double delta = 1, tau = 0.5;
    SpectralAmplitude a = make_amplitude(Shape::kRectangular, 10, delta);
    GridPtr grid = grid_over(a);
    Complex got = overlap(sample(a, grid), sample(a.delayed(tau), grid));
    // (1/delta) * integral of exp(i tau k) over (9.5, 10.5).
    Complex expected = (std::polar(1.0, tau * 10.5) - std::polar(1.0, tau * 9.5)) / (Complex(0, tau) * delta);
    EXPECT_NEAR(std::abs(got - expected), 0, 1e-12);
    double x = delta * tau / 2;
    EXPECT_NEAR(std::abs(got), std::sin(x) / x, 1e-12);
}

TEST(spectra, overlap_rejects_mismatched_grids) {
    SpectralAmplitude a = make_amplitude(Shape::kRectangular, 10, 1);
    SampledState s1 = sample(a, grid_over(a, 4));
    SampledState s2 = sample(a, grid_over(a, 5));
    EXPECT_THROW(overlap(s1, s2), std::invalid_argument);
}

TEST(spectra, from_values_checks_norm) {
    SpectralAmplitude a = make_amplitude(Shape::kRectangular, 10, 1);
    GridPtr grid = grid_over(a);
    std::vector<Complex> ones(grid->size(), Complex(1, 0));
    EXPECT_NO_THROW(SampledState::from_values(grid, ones));
    std::vector<Complex> twos(grid->size(), Complex(2, 0));
    EXPECT_THROW(SampledState::from_values(grid, twos), std::invalid_argument);
}

TEST(spectra, rectangular_time_profile_envelope) {
    const double delta = 2;
    SpectralAmplitude a = make_amplitude(Shape::kRectangular, 10, delta);
    SampledState s = sample(a, grid_over(a));
    std::vector<double> taus = {-7.3, -1, 0, 0.4, 2.5, 11};
    auto psi = time_profile(s, taus);
    for (size_t j = 0; j < taus.size(); ++j) {
        double x = delta * taus[j] / 2;
        double sinc = x == 0 ? 1 : std::sin(x) / x;
        EXPECT_NEAR(std::norm(psi[j]), delta / (2 * std::numbers::pi) * sinc * sinc, 1e-12) << taus[j];
        EXPECT_NEAR(std::abs(psi[j] - oracle::time_amplitude(a, taus[j])), 0, 1e-10);
    }
}

TEST(spectra, parseval) {
    const double delta = 1;
    SpectralAmplitude a = make_amplitude(Shape::kRaisedCosine, 10, delta);
    SampledState s = sample(a, grid_over(a));
    // Midpoint rule; |psi(tau)|^2 is smooth on this scale.
    const double half = 200 / delta;
    const int m = 40000;
    const double h = 2 * half / m;
    std::vector<double> taus(m);
    for (int j = 0; j < m; ++j) {
        taus[j] = -half + (j + 0.5) * h;
    }
    double energy = 0;
    for (Complex v : time_profile(s, taus)) {
        energy += std::norm(v) * h;
    }
    EXPECT_NEAR(energy, 1, 1e-3);
}

TEST(spectra, parseval_rectangular_wide_range) {
    // The sinc^2 tail leaves about 2 / (pi * delta * half) outside the range.
    // The k grid must resolve exp(-i k tau) out to the edge of the range.
    const double half = 1000;
    SpectralAmplitude a = make_amplitude(Shape::kRectangular, 10, 1);
    std::array<Interval, 1> support = {a.support()};
    SampledState s = sample(a, grid_for_supports(support, 1, 4 * half));
    const int m = 40000;
    const double h = 2 * half / m;
    std::vector<double> taus(m);
    for (int j = 0; j < m; ++j) {
        taus[j] = -half + (j + 0.5) * h;
    }
    double energy = 0;
    for (Complex v : time_profile(s, taus)) {
        energy += std::norm(v) * h;
    }
    EXPECT_NEAR(energy, 1, 1e-3);
}

TEST(spectra, delay_shifts_time_profile) {
    SpectralAmplitude a = make_amplitude(Shape::kTruncatedGaussian, 10, 1);
    GridPtr grid = grid_over(a);
    SampledState s0 = sample(a, grid);
    SampledState s2 = sample(a.delayed(2), grid);
    std::vector<double> taus = {-3, -0.5, 0, 1, 4};
    std::vector<double> shifted;
    for (double t : taus) {
        shifted.push_back(t + 2);
    }
    auto p0 = time_profile(s0, taus);
    auto p2 = time_profile(s2, shifted);
    for (size_t j = 0; j < taus.size(); ++j) {
        EXPECT_NEAR(std::norm(p0[j]), std::norm(p2[j]), 1e-13);
    }
}

TEST(spectra, panels_grow_with_window) {
    EXPECT_EQ(panels_per_bandwidth(0), 4);
    EXPECT_EQ(panels_per_bandwidth(100), 4);
    EXPECT_EQ(panels_per_bandwidth(1e4), 63);
    std::array<Interval, 1> support = {Interval{9.5, 10.5}};
    EXPECT_LE(grid_for_supports(support, 1, 1e4)->size(), 4096u);
}
