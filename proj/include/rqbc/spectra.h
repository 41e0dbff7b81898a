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

#ifndef RQBC_SPECTRA_H_
#define RQBC_SPECTRA_H_

#include <complex>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace rqbc {

using Complex = std::complex<double>;

/// Open wavenumber interval (lo, hi).
struct Interval {
    double lo = 0;
    double hi = 0;

    double width() const {
        return hi - lo;
    }
    bool contains(double k) const {
        return k > lo && k < hi;
    }
    bool overlaps(const Interval &other) const {
        return lo < other.hi && other.lo < hi;
    }
    bool operator==(const Interval &) const = default;
};

enum class Shape { kRectangular, kTruncatedGaussian, kRaisedCosine };

std::string_view shape_name(Shape shape);
/// Accepts "rectangular", "truncated-gaussian", "raised-cosine".
Shape parse_shape(std::string_view name);

/// Normalized single-photon spectral amplitude with compact support
/// (k_c - delta/2, k_c + delta/2). Units use c = 1, so wavenumber and
/// angular frequency coincide.
///
/// A nonzero `tau0` multiplies the amplitude by exp(i k tau0), which
/// delays the time profile by tau0.
class SpectralAmplitude {
   public:
    /// Throws std::invalid_argument if delta <= 0 or the support reaches k <= 0.
    SpectralAmplitude(Shape shape, double k_center, double bandwidth, double tau0 = 0);

    Shape shape() const {
        return shape_;
    }
    double center() const {
        return k_center_;
    }
    double bandwidth() const {
        return bandwidth_;
    }
    double tau0() const {
        return tau0_;
    }
    Interval support() const {
        return {k_center_ - bandwidth_ / 2, k_center_ + bandwidth_ / 2};
    }

    /// psi(k); zero outside the open support.
    Complex operator()(double k) const;

    /// Same amplitude with a different phase delay.
    SpectralAmplitude delayed(double tau0) const;

    bool operator==(const SpectralAmplitude &) const = default;

   private:
    Shape shape_;
    double k_center_;
    double bandwidth_;
    double tau0_;
    double scale_;  // makes the squared modulus integrate to one
};

SpectralAmplitude make_amplitude(Shape shape, double k_center, double bandwidth, double tau0 = 0);

/// Two amplitudes of equal shape and bandwidth centered at k1 and k2.
/// Throws std::invalid_argument if |k1 - k2| < delta.
std::pair<SpectralAmplitude, SpectralAmplitude> disjoint_pair(double k1, double k2, double bandwidth,
                                                              Shape shape);

/// Uniform composite Gauss-Legendre layout over [k_min, k_max].
struct GridSegment {
    double k_min = 0;
    double k_max = 0;
    int panels = 1;
    int nodes_per_panel = 64;

    bool operator==(const GridSegment &) const = default;
};

/// Gauss-Legendre nodes and weights on [-1, 1], nodes ascending.
std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n);

/// Quadrature grid on a wavenumber range, a concatenation of segments.
class KGrid {
   public:
    /// Segments must be contiguous and ascending.
    explicit KGrid(std::vector<GridSegment> segments);

    std::span<const double> nodes() const {
        return nodes_;
    }
    std::span<const double> weights() const {
        return weights_;
    }
    size_t size() const {
        return nodes_.size();
    }
    double k_min() const {
        return segments_.front().k_min;
    }
    double k_max() const {
        return segments_.back().k_max;
    }
    const std::vector<GridSegment> &segments() const {
        return segments_;
    }
    /// Square roots of the weights; maps amplitudes to the coordinates in
    /// which the identity operator is the identity matrix.
    const Eigen::VectorXd &sqrt_weights() const {
        return sqrt_weights_;
    }

    bool operator==(const KGrid &other) const {
        return segments_ == other.segments_;
    }

   private:
    std::vector<GridSegment> segments_;
    std::vector<double> nodes_;
    std::vector<double> weights_;
    Eigen::VectorXd sqrt_weights_;
};

using GridPtr = std::shared_ptr<const KGrid>;

GridPtr make_grid(const GridSegment &segment);

/// Default panel density: 64-node panels, at least four per bandwidth and
/// more once T * delta exceeds 640 so the sinc kernel stays resolved.
int panels_per_bandwidth(double t_delta);

/// Grid whose panel boundaries include every support edge, covering the
/// supports and the gaps between them.
GridPtr grid_for_supports(std::span<const Interval> supports, double bandwidth, double max_window = 0);

/// Amplitude values on grid nodes, renormalized so sum w |v|^2 = 1.
class SampledState {
   public:
    /// Wraps raw node values. Throws std::invalid_argument if the quadrature
    /// norm differs from one by more than 1e-8 or sizes disagree.
    static SampledState from_values(GridPtr grid, std::vector<Complex> values);

    const GridPtr &grid() const {
        return grid_;
    }
    std::span<const Complex> values() const {
        return values_;
    }
    /// Factor applied to the raw samples to reach unit norm.
    double renormalization() const {
        return renormalization_;
    }
    /// sqrt(w_i) * psi(k_i).
    Eigen::VectorXcd weighted() const;

   private:
    friend SampledState sample(const SpectralAmplitude &, const GridPtr &);
    SampledState(GridPtr grid, std::vector<Complex> values, double renormalization);

    GridPtr grid_;
    std::vector<Complex> values_;
    double renormalization_ = 1;
};

/// Throws std::invalid_argument if the grid misses part of the support or
/// is coarser than delta/64 inside it.
SampledState sample(const SpectralAmplitude &amplitude, const GridPtr &grid);

bool same_grid(const KGrid &a, const KGrid &b);

/// sum w_i conj(a_i) b_i.
Complex overlap(const SampledState &a, const SampledState &b);

/// Unitary-convention time profile psi(tau) = (2 pi)^(-1/2) int psi(k) exp(-i k tau) dk.
std::vector<Complex> time_profile(const SampledState &state, std::span<const double> taus);

}  // namespace rqbc

#endif  // RQBC_SPECTRA_H_
