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

#include "rqbc/window.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>

#include "rqbc/errors.h"

namespace rqbc {

WindowOperator::WindowOperator(GridPtr grid, double half_width, double center)
    : grid_(std::move(grid)), half_width_(half_width), center_(center) {
    auto k = grid_->nodes();
    const auto &sw = grid_->sqrt_weights();
    const auto n = static_cast<Eigen::Index>(k.size());
    kernel_.resize(n, n);
    const double inv_pi = 1 / std::numbers::pi;
    for (Eigen::Index j = 0; j < n; ++j) {
        // Removable singularity: sin(x T) / x -> T.
        kernel_(j, j) = sw[j] * sw[j] * half_width_ * inv_pi;
        for (Eigen::Index i = j + 1; i < n; ++i) {
            double dk = k[static_cast<size_t>(i)] - k[static_cast<size_t>(j)];
            double value = sw[i] * sw[j] * std::sin(dk * half_width_) / dk * inv_pi;
            kernel_(i, j) = value;
            kernel_(j, i) = value;
        }
    }
}

Eigen::VectorXcd WindowOperator::to_centered(const Eigen::VectorXcd &u) const {
    if (center_ == 0) {
        return u;
    }
    auto k = grid_->nodes();
    Eigen::VectorXcd out(u.size());
    for (Eigen::Index i = 0; i < u.size(); ++i) {
        out[i] = std::polar(1.0, -k[static_cast<size_t>(i)] * center_) * u[i];
    }
    return out;
}

Eigen::MatrixXcd WindowOperator::dense() const {
    Eigen::MatrixXcd out = kernel_.cast<Complex>();
    if (center_ != 0) {
        auto k = grid_->nodes();
        for (Eigen::Index j = 0; j < out.cols(); ++j) {
            for (Eigen::Index i = 0; i < out.rows(); ++i) {
                out(i, j) *= std::polar(1.0, (k[static_cast<size_t>(i)] - k[static_cast<size_t>(j)]) * center_);
            }
        }
    }
    return out;
}

Eigen::VectorXcd WindowOperator::apply(const Eigen::VectorXcd &u) const {
    if (u.size() != kernel_.rows()) {
        throw std::invalid_argument("vector does not live on the window grid");
    }
    Eigen::VectorXcd c = to_centered(u);
    Eigen::VectorXd re = kernel_ * c.real();
    Eigen::VectorXd im = kernel_ * c.imag();
    Eigen::VectorXcd out(u.size());
    out.real() = re;
    out.imag() = im;
    if (center_ == 0) {
        return out;
    }
    auto k = grid_->nodes();
    for (Eigen::Index i = 0; i < out.size(); ++i) {
        out[i] *= std::polar(1.0, k[static_cast<size_t>(i)] * center_);
    }
    return out;
}

double WindowOperator::quadratic_form(const Eigen::VectorXcd &u) const {
    if (u.size() != kernel_.rows()) {
        throw std::invalid_argument("vector does not live on the window grid");
    }
    Eigen::VectorXcd c = to_centered(u);
    Eigen::VectorXd re = c.real();
    Eigen::VectorXd im = c.imag();
    // K is real symmetric, so the imaginary cross terms cancel.
    return re.dot(kernel_ * re) + im.dot(kernel_ * im);
}

WindowOperator build_window(GridPtr grid, double half_width) {
    if (!grid) {
        throw std::invalid_argument("null grid");
    }
    if (!(half_width >= 0) || !std::isfinite(half_width)) {
        throw std::invalid_argument("window half-width must be non-negative, got " + std::to_string(half_width));
    }
    return WindowOperator(std::move(grid), half_width, 0.0);
}

WindowOperator build_offset_window(GridPtr grid, double t_begin, double t_end) {
    if (!grid) {
        throw std::invalid_argument("null grid");
    }
    if (!(t_end >= t_begin) || !std::isfinite(t_begin) || !std::isfinite(t_end)) {
        throw std::invalid_argument("window end precedes its beginning");
    }
    return WindowOperator(std::move(grid), (t_end - t_begin) / 2, (t_begin + t_end) / 2);
}

double clamp_probability(double p, double tolerance) {
    if (!(p >= -tolerance) || !(p <= 1 + tolerance)) {
        throw InvariantError("probability " + std::to_string(p) + " outside [0, 1]");
    }
    return std::clamp(p, 0.0, 1.0);
}

double detect_prob(const WindowOperator &window, const SampledState &state) {
    if (!same_grid(*window.grid(), *state.grid())) {
        throw std::invalid_argument("state and window live on different grids");
    }
    return clamp_probability(window.quadratic_form(state.weighted()));
}

double perp_prob(const WindowOperator &window, const SampledState &state) {
    return 1 - detect_prob(window, state);
}

std::vector<double> window_spectrum(const WindowOperator &window) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(window.centered_kernel(), Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw InvariantError("eigensolver failed on the window kernel");
    }
    const auto &ev = solver.eigenvalues();
    std::vector<double> out(ev.data(), ev.data() + ev.size());
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

}  // namespace rqbc
