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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace rqbc {

namespace {

constexpr double kPi = std::numbers::pi;

// Truncation point of the gaussian shape, in standard deviations of |psi|^2.
constexpr double kGaussianSigmas = 3.0;

double shape_profile(Shape shape, double x, double bandwidth) {
    switch (shape) {
        case Shape::kRectangular:
            return 1.0;
        case Shape::kTruncatedGaussian: {
            double sigma = bandwidth / (2 * kGaussianSigmas);
            return std::exp(-x * x / (4 * sigma * sigma));
        }
        case Shape::kRaisedCosine: {
            double c = std::cos(kPi * x / bandwidth);
            return c * c;
        }
    }
    return 0.0;
}

// Integral of shape_profile^2 over the support.
double profile_energy(Shape shape, double bandwidth) {
    switch (shape) {
        case Shape::kRectangular:
            return bandwidth;
        case Shape::kTruncatedGaussian: {
            double sigma = bandwidth / (2 * kGaussianSigmas);
            return sigma * std::sqrt(2 * kPi) * std::erf(kGaussianSigmas / std::sqrt(2.0));
        }
        case Shape::kRaisedCosine:
            return 3 * bandwidth / 8;
    }
    return 1.0;
}

}  // namespace

std::string_view shape_name(Shape shape) {
    switch (shape) {
        case Shape::kRectangular:
            return "rectangular";
        case Shape::kTruncatedGaussian:
            return "truncated-gaussian";
        case Shape::kRaisedCosine:
            return "raised-cosine";
    }
    return "unknown";
}

Shape parse_shape(std::string_view name) {
    if (name == "rectangular") {
        return Shape::kRectangular;
    }
    if (name == "truncated-gaussian") {
        return Shape::kTruncatedGaussian;
    }
    if (name == "raised-cosine") {
        return Shape::kRaisedCosine;
    }
    throw std::invalid_argument("unknown amplitude shape '" + std::string(name) + "'");
}

SpectralAmplitude::SpectralAmplitude(Shape shape, double k_center, double bandwidth, double tau0)
    : shape_(shape), k_center_(k_center), bandwidth_(bandwidth), tau0_(tau0) {
    if (!(bandwidth > 0) || !std::isfinite(bandwidth)) {
        throw std::invalid_argument("bandwidth must be positive, got " + std::to_string(bandwidth));
    }
    if (!(k_center - bandwidth / 2 > 0) || !std::isfinite(k_center)) {
        throw std::invalid_argument("support (" + std::to_string(k_center - bandwidth / 2) + ", " +
                                    std::to_string(k_center + bandwidth / 2) +
                                    ") must lie in k > 0");
    }
    if (!std::isfinite(tau0)) {
        throw std::invalid_argument("tau0 must be finite");
    }
    scale_ = 1.0 / std::sqrt(profile_energy(shape, bandwidth));
}

Complex SpectralAmplitude::operator()(double k) const {
    if (!support().contains(k)) {
        return 0.0;
    }
    double magnitude = scale_ * shape_profile(shape_, k - k_center_, bandwidth_);
    if (tau0_ == 0) {
        return magnitude;
    }
    return std::polar(magnitude, k * tau0_);
}

SpectralAmplitude SpectralAmplitude::delayed(double tau0) const {
    return SpectralAmplitude(shape_, k_center_, bandwidth_, tau0);
}

SpectralAmplitude make_amplitude(Shape shape, double k_center, double bandwidth, double tau0) {
    return SpectralAmplitude(shape, k_center, bandwidth, tau0);
}

std::pair<SpectralAmplitude, SpectralAmplitude> disjoint_pair(double k1, double k2, double bandwidth,
                                                              Shape shape) {
    if (std::abs(k1 - k2) < bandwidth) {
        throw std::invalid_argument("supports overlap: |k1 - k2| = " + std::to_string(std::abs(k1 - k2)) +
                                    " < bandwidth " + std::to_string(bandwidth));
    }
    return {SpectralAmplitude(shape, k1, bandwidth), SpectralAmplitude(shape, k2, bandwidth)};
}

std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n) {
    if (n < 1) {
        throw std::invalid_argument("Gauss-Legendre order must be positive");
    }
    std::vector<double> x(n), w(n);
    int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        // Newton iteration on P_n from the Tricomi initial guess.
        double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double dp = 0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1, p1 = 0;
            for (int j = 0; j < n; ++j) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1) * z * p1 - j * p2) / (j + 1);
            }
            dp = n * (z * p0 - p1) / (z * z - 1);
            double dz = p0 / dp;
            z -= dz;
            if (std::abs(dz) < 1e-16) {
                break;
            }
        }
        // Recompute the derivative at the converged root.
        double p0 = 1, p1 = 0;
        for (int j = 0; j < n; ++j) {
            double p2 = p1;
            p1 = p0;
            p0 = ((2.0 * j + 1) * z * p1 - j * p2) / (j + 1);
        }
        dp = n * (z * p0 - p1) / (z * z - 1);
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = w[n - 1 - i] = 2 / ((1 - z * z) * dp * dp);
    }
    if (n % 2 == 1) {
        x[n / 2] = 0;
    }
    return {x, w};
}

KGrid::KGrid(std::vector<GridSegment> segments) : segments_(std::move(segments)) {
    if (segments_.empty()) {
        throw std::invalid_argument("grid needs at least one segment");
    }
    for (size_t s = 0; s < segments_.size(); ++s) {
        const auto &seg = segments_[s];
        if (!(seg.k_max > seg.k_min) || seg.panels < 1 || seg.nodes_per_panel < 1) {
            throw std::invalid_argument("malformed grid segment");
        }
        if (s > 0 && segments_[s - 1].k_max != seg.k_min) {
            throw std::invalid_argument("grid segments must be contiguous");
        }
        auto [x, w] = gauss_legendre(seg.nodes_per_panel);
        double h = (seg.k_max - seg.k_min) / seg.panels;
        for (int p = 0; p < seg.panels; ++p) {
            double a = seg.k_min + p * h;
            for (size_t j = 0; j < x.size(); ++j) {
                nodes_.push_back(a + h * (x[j] + 1) / 2);
                weights_.push_back(h * w[j] / 2);
            }
        }
    }
    sqrt_weights_.resize(static_cast<Eigen::Index>(weights_.size()));
    for (size_t i = 0; i < weights_.size(); ++i) {
        sqrt_weights_[static_cast<Eigen::Index>(i)] = std::sqrt(weights_[i]);
    }
}

GridPtr make_grid(const GridSegment &segment) {
    return std::make_shared<const KGrid>(std::vector<GridSegment>{segment});
}

int panels_per_bandwidth(double t_delta) {
    return std::max(4, static_cast<int>(std::ceil(t_delta / 160.0)));
}

GridPtr grid_for_supports(std::span<const Interval> supports, double bandwidth, double max_window) {
    if (supports.empty() || !(bandwidth > 0)) {
        throw std::invalid_argument("grid_for_supports needs supports and a positive bandwidth");
    }
    std::vector<Interval> sorted(supports.begin(), supports.end());
    std::sort(sorted.begin(), sorted.end(), [](const Interval &a, const Interval &b) { return a.lo < b.lo; });
    for (size_t i = 1; i < sorted.size(); ++i) {
        if (sorted[i].lo < sorted[i - 1].hi) {
            throw std::invalid_argument("supports overlap");
        }
    }
    std::vector<double> breaks;
    for (const auto &s : sorted) {
        if (breaks.empty() || s.lo > breaks.back()) {
            breaks.push_back(s.lo);
        }
        breaks.push_back(s.hi);
    }
    int density = panels_per_bandwidth(max_window * bandwidth);
    std::vector<GridSegment> segments;
    for (size_t i = 1; i < breaks.size(); ++i) {
        double len = breaks[i] - breaks[i - 1];
        int panels = std::max(1, static_cast<int>(std::ceil(len / bandwidth * density - 1e-9)));
        segments.push_back({breaks[i - 1], breaks[i], panels, 64});
    }
    return std::make_shared<const KGrid>(std::move(segments));
}

SampledState::SampledState(GridPtr grid, std::vector<Complex> values, double renormalization)
    : grid_(std::move(grid)), values_(std::move(values)), renormalization_(renormalization) {
}

SampledState SampledState::from_values(GridPtr grid, std::vector<Complex> values) {
    if (!grid || values.size() != grid->size()) {
        throw std::invalid_argument("state values do not match the grid size");
    }
    double norm2 = 0;
    auto w = grid->weights();
    for (size_t i = 0; i < values.size(); ++i) {
        norm2 += w[i] * std::norm(values[i]);
    }
    if (std::abs(norm2 - 1) > 1e-8) {
        throw std::invalid_argument("state is not normalized: quadrature norm^2 = " + std::to_string(norm2));
    }
    return SampledState(std::move(grid), std::move(values), 1.0);
}

Eigen::VectorXcd SampledState::weighted() const {
    Eigen::VectorXcd u(static_cast<Eigen::Index>(values_.size()));
    const auto &sw = grid_->sqrt_weights();
    for (Eigen::Index i = 0; i < u.size(); ++i) {
        u[i] = sw[i] * values_[static_cast<size_t>(i)];
    }
    return u;
}

SampledState sample(const SpectralAmplitude &amplitude, const GridPtr &grid) {
    if (!grid) {
        throw std::invalid_argument("null grid");
    }
    Interval support = amplitude.support();
    double slack = 1e-12 * std::max(1.0, std::abs(support.hi));
    if (grid->k_min() > support.lo + slack || grid->k_max() < support.hi - slack) {
        throw std::invalid_argument("grid [" + std::to_string(grid->k_min()) + ", " +
                                    std::to_string(grid->k_max()) + "] does not cover the support");
    }
    double max_gap = amplitude.bandwidth() / 64;
    auto nodes = grid->nodes();
    double prev = support.lo;
    for (double k : nodes) {
        if (!support.contains(k)) {
            continue;
        }
        if (k - prev > max_gap) {
            throw std::invalid_argument("grid too coarse inside the support: spacing " + std::to_string(k - prev) +
                                        " > delta/64");
        }
        prev = k;
    }
    if (support.hi - prev > max_gap) {
        throw std::invalid_argument("grid too coarse inside the support");
    }

    std::vector<Complex> values(nodes.size());
    auto w = grid->weights();
    double norm2 = 0;
    for (size_t i = 0; i < nodes.size(); ++i) {
        values[i] = amplitude(nodes[i]);
        norm2 += w[i] * std::norm(values[i]);
    }
    if (!(norm2 > 0)) {
        throw std::invalid_argument("sampled amplitude vanishes on the grid");
    }
    double factor = 1 / std::sqrt(norm2);
    for (auto &v : values) {
        v *= factor;
    }
    return SampledState(grid, std::move(values), factor);
}

bool same_grid(const KGrid &a, const KGrid &b) {
    return &a == &b || a == b;
}

Complex overlap(const SampledState &a, const SampledState &b) {
    if (!same_grid(*a.grid(), *b.grid())) {
        throw std::invalid_argument("overlap of states on different grids");
    }
    auto w = a.grid()->weights();
    auto va = a.values();
    auto vb = b.values();
    Complex sum = 0;
    for (size_t i = 0; i < w.size(); ++i) {
        sum += w[i] * std::conj(va[i]) * vb[i];
    }
    return sum;
}

std::vector<Complex> time_profile(const SampledState &state, std::span<const double> taus) {
    auto k = state.grid()->nodes();
    auto w = state.grid()->weights();
    auto v = state.values();
    const double norm = 1 / std::sqrt(2 * kPi);
    std::vector<Complex> out;
    out.reserve(taus.size());
    for (double tau : taus) {
        Complex sum = 0;
        for (size_t i = 0; i < k.size(); ++i) {
            if (v[i] != 0.0) {
                sum += w[i] * v[i] * std::polar(1.0, -k[i] * tau);
            }
        }
        out.push_back(norm * sum);
    }
    return out;
}

}  // namespace rqbc
