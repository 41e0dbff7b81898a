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

#ifndef RQBC_ORACLE_H_
#define RQBC_ORACLE_H_

#include <array>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "rqbc/spectra.h"

// Brute-force cross-checks. Nothing here touches the window or measurement
// code; the library links against spectra only.
namespace rqbc::oracle {

/// Si(x) = int_0^x sin(t)/t dt. Power series below 4, continued fraction
/// for E1(ix) above.
double sine_integral(double x);

/// Detection probability of the flat spectrum of width delta in (-T, T):
/// (2 Si(delta T) - 2 (1 - cos(delta T)) / (delta T)) / pi.
double detect_prob_flat_closed_form(double bandwidth, double half_width);

/// psi(tau) of the continuous amplitude, by adaptive k-quadrature.
Complex time_amplitude(const SpectralAmplitude &amplitude, double tau);

/// int_{t_begin}^{t_end} |psi(tau)|^2 dtau by adaptive Gauss-Kronrod.
double detect_prob_time_domain(const SpectralAmplitude &amplitude, double t_begin, double t_end);
double detect_prob_time_domain(const SpectralAmplitude &amplitude, double half_width);

struct PovmAudit {
    std::array<double, 3> min_eigenvalue{};
    std::array<double, 3> max_eigenvalue{};
    double sum_min_eigenvalue = 0;
    double sum_max_eigenvalue = 0;
    double completeness_residual = 0;  // max |(sum M) - I| entrywise
    double hermiticity_residual = 0;

    bool ok(double eig_tol = 1e-9, double completeness_tol = 1e-8) const;
};

/// Dense eigendecomposition of every element and of their sum.
PovmAudit audit_povm(std::span<const Eigen::MatrixXcd> elements);

struct ParityTable {
    int channels = 0;
    double p = 0;
    /// Probability of each detection pattern; bit i set means channel i fired.
    std::vector<double> pattern_probability;
    double all_detected = 0;
    /// Receiver decodes the parity when every channel fired, else flips a coin.
    double guess_success = 0;
};

/// Enumerates committed bit, channel bits, detection patterns and the coin.
/// Needs 1 <= N <= 4.
ParityTable parity_exhaustive(int channels, double p);

}  // namespace rqbc::oracle

#endif  // RQBC_ORACLE_H_
