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

#ifndef RQBC_MEASUREMENT_H_
#define RQBC_MEASUREMENT_H_

#include <array>
#include <span>
#include <string_view>
#include <variant>

#include <Eigen/Dense>

#include "rqbc/random.h"
#include "rqbc/spectra.h"
#include "rqbc/window.h"

namespace rqbc {

enum class PovmFamily {
    kSupport,  // P_E W P_E per support; blind to spectral phase as T -> infinity
    kState,    // W |psi><psi| W per agreed state; phase-sensitive
};

std::string_view family_name(PovmFamily family);
PovmFamily parse_family(std::string_view name);

enum class Outcome { kOne, kTwo, kPerp };

std::string_view outcome_name(Outcome outcome);

/// Mixed state on a grid, stored in weighted coordinates (trace one).
class DensityMatrix {
   public:
    /// Throws std::invalid_argument unless rho is Hermitian with unit trace
    /// within 1e-8.
    DensityMatrix(GridPtr grid, Eigen::MatrixXcd rho);

    /// sum_i weight_i |psi_i><psi_i|; weights must sum to one.
    static DensityMatrix mixture(std::span<const SampledState> states, std::span<const double> weights);

    const GridPtr &grid() const {
        return grid_;
    }
    const Eigen::MatrixXcd &matrix() const {
        return rho_;
    }

   private:
    GridPtr grid_;
    Eigen::MatrixXcd rho_;
};

/// What a channel carries: a pure sampled state or a density matrix.
using TransmittedState = std::variant<SampledState, DensityMatrix>;

const GridPtr &grid_of(const TransmittedState &state);

/// Three-outcome POVM {M_1, M_2, M_perp} on a grid, in weighted coordinates.
class Povm {
   public:
    Povm(PovmFamily family, double half_width, GridPtr grid, std::array<Eigen::MatrixXcd, 3> elements);

    PovmFamily family() const {
        return family_;
    }
    double half_width() const {
        return half_width_;
    }
    const GridPtr &grid() const {
        return grid_;
    }
    const Eigen::MatrixXcd &element(Outcome outcome) const {
        return elements_[static_cast<size_t>(outcome)];
    }
    std::span<const Eigen::MatrixXcd> elements() const {
        return elements_;
    }

   private:
    PovmFamily family_;
    double half_width_;
    GridPtr grid_;
    std::array<Eigen::MatrixXcd, 3> elements_;
};

/// M_i = P_{E_i} W P_{E_i}, M_perp = I - M_1 - M_2. Throws
/// std::invalid_argument if the supports overlap.
Povm support_povm(const WindowOperator &window, const Interval &e1, const Interval &e2);
Povm support_povm(GridPtr grid, const Interval &e1, const Interval &e2, double half_width);

/// M_i = W |psi_i><psi_i| W, M_perp = I - M_1 - M_2. Throws
/// std::invalid_argument if the states are not orthogonal (|<psi1|psi2>| > 1e-8),
/// InvariantError if M_perp fails to be positive.
Povm state_povm(const WindowOperator &window, const SampledState &psi1, const SampledState &psi2);
Povm state_povm(const SampledState &psi1, const SampledState &psi2, double half_width);

struct OutcomeDist {
    double p1 = 0;
    double p2 = 0;
    double p_perp = 1;

    double operator[](Outcome outcome) const {
        switch (outcome) {
            case Outcome::kOne:
                return p1;
            case Outcome::kTwo:
                return p2;
            case Outcome::kPerp:
                return p_perp;
        }
        return 0;
    }
};

OutcomeDist outcome_dist(const Povm &povm, const SampledState &state);
OutcomeDist outcome_dist(const Povm &povm, const DensityMatrix &rho);
OutcomeDist outcome_dist(const Povm &povm, const TransmittedState &state);

/// One draw; consumes exactly one uniform from `rng`.
Outcome sample_outcome(const OutcomeDist &dist, Rng &rng);

/// arccos(1 - p): zero for indistinguishable, pi/2 for orthogonal.
double effective_angle(double p);

}  // namespace rqbc

#endif  // RQBC_MEASUREMENT_H_
