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

#ifndef RQBC_WINDOW_H_
#define RQBC_WINDOW_H_

#include <vector>

#include <Eigen/Dense>

#include "rqbc/spectra.h"

namespace rqbc {

/// Time-window operator W for the detection window (center - T, center + T).
///
/// In weighted coordinates u_i = sqrt(w_i) psi(k_i) its matrix is
///   W_ij = sqrt(w_i w_j) exp(i (k_i - k_j) center) sin((k_i - k_j) T) / (pi (k_i - k_j)),
/// and u^H W u is the probability that the photon is registered inside the
/// window. The centered real kernel is stored; the center enters as a
/// diagonal phase.
class WindowOperator {
   public:
    const GridPtr &grid() const {
        return grid_;
    }
    double half_width() const {
        return half_width_;
    }
    double center() const {
        return center_;
    }
    /// Real symmetric kernel of the window centered at zero.
    const Eigen::MatrixXd &centered_kernel() const {
        return kernel_;
    }
    /// Full Hermitian matrix including the center phase.
    Eigen::MatrixXcd dense() const;

    Eigen::VectorXcd apply(const Eigen::VectorXcd &u) const;
    double quadratic_form(const Eigen::VectorXcd &u) const;

   private:
    friend WindowOperator build_window(GridPtr grid, double half_width);
    friend WindowOperator build_offset_window(GridPtr grid, double t_begin, double t_end);
    WindowOperator(GridPtr grid, double half_width, double center);

    // exp(-i k center) * u
    Eigen::VectorXcd to_centered(const Eigen::VectorXcd &u) const;

    GridPtr grid_;
    double half_width_;
    double center_;
    Eigen::MatrixXd kernel_;
};

/// Symmetric window (-T, T). Throws std::invalid_argument for T < 0.
WindowOperator build_window(GridPtr grid, double half_width);

/// Window (t_begin, t_end). Throws std::invalid_argument if t_end < t_begin.
WindowOperator build_offset_window(GridPtr grid, double t_begin, double t_end);

/// Probability that `state` is registered inside the window.
double detect_prob(const WindowOperator &window, const SampledState &state);

/// 1 - detect_prob.
double perp_prob(const WindowOperator &window, const SampledState &state);

/// Eigenvalues of W, descending.
std::vector<double> window_spectrum(const WindowOperator &window);

/// Clamps a probability carrying quadrature noise into [0, 1]. Throws
/// InvariantError if it leaves the range by more than `tolerance`.
double clamp_probability(double p, double tolerance = 1e-9);

}  // namespace rqbc

#endif  // RQBC_WINDOW_H_
