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

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace rqbc::oracle {

namespace {

constexpr double kPi = std::numbers::pi;

double si_series(double x) {
    double x2 = x * x;
    double term = x;  // (-1)^n x^(2n+1) / (2n+1)!
    double sum = x;
    for (int n = 1; n < 60; ++n) {
        term *= -x2 / ((2.0 * n) * (2.0 * n + 1));
        double add = term / (2.0 * n + 1);
        sum += add;
        if (std::abs(add) < 1e-17 * std::abs(sum)) {
            break;
        }
    }
    return sum;
}

// Modified Lentz evaluation of E1(ix) exp(ix); Si(x) = pi/2 + Im(E1(ix)).
double si_continued_fraction(double x) {
    using C = std::complex<double>;
    const double tiny = 1e-300;
    C b(1.0, x);
    C c(1.0 / tiny, 0.0);
    C d = 1.0 / b;
    C h = d;
    for (int i = 2; i < 100000; ++i) {
        double a = -static_cast<double>(i - 1) * (i - 1);
        b += 2.0;
        d = 1.0 / (a * d + b);
        c = b + a / c;
        C del = c * d;
        h *= del;
        if (std::abs(del.real() - 1) + std::abs(del.imag()) < 1e-16) {
            break;
        }
    }
    h *= C(std::cos(x), -std::sin(x));
    return kPi / 2 + h.imag();
}

}  // namespace

double sine_integral(double x) {
    if (x < 0) {
        return -sine_integral(-x);
    }
    if (x == 0) {
        return 0;
    }
    return x < 4 ? si_series(x) : si_continued_fraction(x);
}

double detect_prob_flat_closed_form(double bandwidth, double half_width) {
    if (!(bandwidth >= 0) || !(half_width >= 0)) {
        throw std::invalid_argument("closed form needs non-negative bandwidth and half-width");
    }
    double x = bandwidth * half_width;
    if (x == 0) {
        return 0;
    }
    double s = std::sin(x / 2);
    return (2 * sine_integral(x) - 4 * s * s / x) / kPi;
}

Complex time_amplitude(const SpectralAmplitude &amplitude, double tau) {
    using boost::math::quadrature::gauss_kronrod;
    const Interval support = amplitude.support();
    const double kc = amplitude.center();
    // Integrate with the carrier exp(-i k_c tau) factored out.
    auto shifted = [&](double k) { return amplitude(k) * std::polar(1.0, -(k - kc) * tau); };
    double re = gauss_kronrod<double, 61>::integrate([&](double k) { return shifted(k).real(); }, support.lo,
                                                      support.hi, 10, 1e-12);
    double im = gauss_kronrod<double, 61>::integrate([&](double k) { return shifted(k).imag(); }, support.lo,
                                                      support.hi, 10, 1e-12);
    return Complex(re, im) * std::polar(1.0, -kc * tau) / std::sqrt(2 * kPi);
}

double detect_prob_time_domain(const SpectralAmplitude &amplitude, double t_begin, double t_end) {
    using boost::math::quadrature::gauss_kronrod;
    if (!(t_end >= t_begin)) {
        throw std::invalid_argument("time window end precedes its beginning");
    }
    if (t_end == t_begin) {
        return 0;
    }
    auto density = [&](double tau) { return std::norm(time_amplitude(amplitude, tau)); };
    // Panels of width ~1/delta keep each Gauss-Kronrod call on a smooth piece.
    const double scale = 2 / amplitude.bandwidth();
    const int panels = std::max(1, static_cast<int>(std::ceil((t_end - t_begin) / scale)));
    const double h = (t_end - t_begin) / panels;
    double total = 0;
    for (int i = 0; i < panels; ++i) {
        double a = t_begin + i * h;
        double error = 0;
        total += gauss_kronrod<double, 31>::integrate(density, a, a + h, 15, 1e-12, &error);
    }
    return total;
}

double detect_prob_time_domain(const SpectralAmplitude &amplitude, double half_width) {
    if (!(half_width >= 0)) {
        throw std::invalid_argument("half-width must be non-negative");
    }
    return detect_prob_time_domain(amplitude, -half_width, half_width);
}

bool PovmAudit::ok(double eig_tol, double completeness_tol) const {
    for (double m : min_eigenvalue) {
        if (!(m >= -eig_tol)) {
            return false;
        }
    }
    return completeness_residual <= completeness_tol && hermiticity_residual <= completeness_tol;
}

PovmAudit audit_povm(std::span<const Eigen::MatrixXcd> elements) {
    if (elements.size() != 3) {
        throw std::invalid_argument("audit expects three POVM elements");
    }
    PovmAudit audit;
    const Eigen::Index n = elements[0].rows();
    Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(n, n);
    for (size_t i = 0; i < 3; ++i) {
        const auto &m = elements[i];
        audit.hermiticity_residual = std::max(audit.hermiticity_residual, (m - m.adjoint()).cwiseAbs().maxCoeff());
        // Eigen reads the lower triangle only; symmetrize so a corrupted
        // upper entry is not silently ignored.
        Eigen::MatrixXcd hermitian = (m + m.adjoint()) / 2.0;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(hermitian, Eigen::EigenvaluesOnly);
        audit.min_eigenvalue[i] = solver.eigenvalues().minCoeff();
        audit.max_eigenvalue[i] = solver.eigenvalues().maxCoeff();
        sum += m;
    }
    Eigen::MatrixXcd hermitian_sum = (sum + sum.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(hermitian_sum, Eigen::EigenvaluesOnly);
    audit.sum_min_eigenvalue = solver.eigenvalues().minCoeff();
    audit.sum_max_eigenvalue = solver.eigenvalues().maxCoeff();
    sum.diagonal().array() -= 1.0;
    audit.completeness_residual = sum.cwiseAbs().maxCoeff();
    return audit;
}

ParityTable parity_exhaustive(int channels, double p) {
    if (channels < 1 || channels > 4) {
        throw std::invalid_argument("exhaustive parity table supports 1 <= N <= 4");
    }
    if (!(p >= 0 && p <= 1)) {
        throw std::invalid_argument("probability outside [0, 1]");
    }
    ParityTable table;
    table.channels = channels;
    table.p = p;
    const unsigned patterns = 1u << channels;
    table.pattern_probability.assign(patterns, 0.0);
    for (unsigned detected = 0; detected < patterns; ++detected) {
        double prob = 1;
        for (int i = 0; i < channels; ++i) {
            prob *= (detected >> i) & 1u ? p : 1 - p;
        }
        table.pattern_probability[detected] = prob;
    }
    table.all_detected = table.pattern_probability[patterns - 1];

    // Committed bit and coin are fair; channel bits uniform given the parity.
    const double per_record = 1.0 / (2 * (patterns / 2));
    for (int bit = 0; bit < 2; ++bit) {
        for (unsigned bits = 0; bits < patterns; ++bits) {
            if (static_cast<int>(std::popcount(bits) & 1) != bit) {
                continue;
            }
            for (unsigned detected = 0; detected < patterns; ++detected) {
                for (int coin = 0; coin < 2; ++coin) {
                    int guess = coin;
                    if (detected == patterns - 1) {
                        guess = std::popcount(bits) & 1;
                    }
                    if (guess == bit) {
                        table.guess_success += per_record * table.pattern_probability[detected] * 0.5;
                    }
                }
            }
        }
    }
    return table;
}

}  // namespace rqbc::oracle
