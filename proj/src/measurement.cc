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

#include "rqbc/measurement.h"

#include <cmath>
#include <stdexcept>
#include <string>

#include "rqbc/errors.h"

namespace rqbc {

namespace {

Eigen::VectorXd support_indicator(const KGrid &grid, const Interval &e) {
    auto k = grid.nodes();
    Eigen::VectorXd d(static_cast<Eigen::Index>(k.size()));
    for (size_t i = 0; i < k.size(); ++i) {
        d[static_cast<Eigen::Index>(i)] = e.contains(k[i]) ? 1.0 : 0.0;
    }
    return d;
}

Eigen::MatrixXcd completion(const Eigen::MatrixXcd &m1, const Eigen::MatrixXcd &m2) {
    Eigen::MatrixXcd perp = -m1 - m2;
    perp.diagonal().array() += 1.0;
    return perp;
}

OutcomeDist normalize(double p1, double p2, double p_perp) {
    p1 = clamp_probability(p1);
    p2 = clamp_probability(p2);
    p_perp = clamp_probability(p_perp);
    double sum = p1 + p2 + p_perp;
    if (std::abs(sum - 1) > 1e-8) {
        throw InvariantError("outcome probabilities sum to " + std::to_string(sum));
    }
    return {p1 / sum, p2 / sum, p_perp / sum};
}

}  // namespace

std::string_view family_name(PovmFamily family) {
    return family == PovmFamily::kSupport ? "support" : "state";
}

PovmFamily parse_family(std::string_view name) {
    if (name == "support") {
        return PovmFamily::kSupport;
    }
    if (name == "state") {
        return PovmFamily::kState;
    }
    throw std::invalid_argument("unknown POVM family '" + std::string(name) + "'");
}

std::string_view outcome_name(Outcome outcome) {
    switch (outcome) {
        case Outcome::kOne:
            return "1";
        case Outcome::kTwo:
            return "2";
        case Outcome::kPerp:
            return "perp";
    }
    return "?";
}

DensityMatrix::DensityMatrix(GridPtr grid, Eigen::MatrixXcd rho) : grid_(std::move(grid)), rho_(std::move(rho)) {
    const auto n = static_cast<Eigen::Index>(grid_->size());
    if (rho_.rows() != n || rho_.cols() != n) {
        throw std::invalid_argument("density matrix does not match the grid size");
    }
    Complex trace = rho_.trace();
    if (std::abs(trace - Complex(1.0)) > 1e-8) {
        throw std::invalid_argument("density matrix trace " + std::to_string(trace.real()) + " is not one");
    }
    if ((rho_ - rho_.adjoint()).cwiseAbs().maxCoeff() > 1e-12) {
        throw std::invalid_argument("density matrix is not Hermitian");
    }
}

DensityMatrix DensityMatrix::mixture(std::span<const SampledState> states, std::span<const double> weights) {
    if (states.empty() || states.size() != weights.size()) {
        throw std::invalid_argument("mixture needs one weight per state");
    }
    const GridPtr &grid = states.front().grid();
    const auto n = static_cast<Eigen::Index>(grid->size());
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(n, n);
    for (size_t s = 0; s < states.size(); ++s) {
        if (!same_grid(*states[s].grid(), *grid)) {
            throw std::invalid_argument("mixture components live on different grids");
        }
        if (weights[s] < 0) {
            throw std::invalid_argument("negative mixture weight");
        }
        Eigen::VectorXcd u = states[s].weighted();
        rho += weights[s] * (u * u.adjoint());
    }
    return DensityMatrix(grid, std::move(rho));
}

const GridPtr &grid_of(const TransmittedState &state) {
    return std::visit([](const auto &s) -> const GridPtr & { return s.grid(); }, state);
}

Povm::Povm(PovmFamily family, double half_width, GridPtr grid, std::array<Eigen::MatrixXcd, 3> elements)
    : family_(family), half_width_(half_width), grid_(std::move(grid)), elements_(std::move(elements)) {
    const auto n = static_cast<Eigen::Index>(grid_->size());
    for (const auto &m : elements_) {
        if (m.rows() != n || m.cols() != n) {
            throw std::invalid_argument("POVM element does not match the grid size");
        }
    }
}

Povm support_povm(const WindowOperator &window, const Interval &e1, const Interval &e2) {
    if (e1.overlaps(e2)) {
        throw std::invalid_argument("support POVM needs disjoint supports");
    }
    const KGrid &grid = *window.grid();
    Eigen::MatrixXcd w = window.dense();
    Eigen::VectorXd d1 = support_indicator(grid, e1);
    Eigen::VectorXd d2 = support_indicator(grid, e2);
    Eigen::MatrixXcd m1 = d1.asDiagonal() * w * d1.asDiagonal();
    Eigen::MatrixXcd m2 = d2.asDiagonal() * w * d2.asDiagonal();
    Eigen::MatrixXcd perp = completion(m1, m2);
    return Povm(PovmFamily::kSupport, window.half_width(), window.grid(),
                {std::move(m1), std::move(m2), std::move(perp)});
}

Povm support_povm(GridPtr grid, const Interval &e1, const Interval &e2, double half_width) {
    return support_povm(build_window(std::move(grid), half_width), e1, e2);
}

Povm state_povm(const WindowOperator &window, const SampledState &psi1, const SampledState &psi2) {
    if (!same_grid(*psi1.grid(), *window.grid()) || !same_grid(*psi2.grid(), *window.grid())) {
        throw std::invalid_argument("states and window live on different grids");
    }
    if (std::abs(overlap(psi1, psi2)) > 1e-8) {
        throw std::invalid_argument("state POVM needs orthogonal states");
    }
    Eigen::VectorXcd a = window.apply(psi1.weighted());
    Eigen::VectorXcd b = window.apply(psi2.weighted());
    // M_1 + M_2 has the same nonzero spectrum as the 2x2 Gram matrix of a, b.
    Eigen::Matrix2cd gram;
    gram << a.squaredNorm(), a.dot(b), b.dot(a), b.squaredNorm();
    double top = Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd>(gram, Eigen::EigenvaluesOnly).eigenvalues()[1];
    if (top > 1 + 1e-9) {
        throw InvariantError("state POVM completion is not positive: top eigenvalue " + std::to_string(top));
    }
    Eigen::MatrixXcd m1 = a * a.adjoint();
    Eigen::MatrixXcd m2 = b * b.adjoint();
    Eigen::MatrixXcd perp = completion(m1, m2);
    return Povm(PovmFamily::kState, window.half_width(), window.grid(),
                {std::move(m1), std::move(m2), std::move(perp)});
}

Povm state_povm(const SampledState &psi1, const SampledState &psi2, double half_width) {
    return state_povm(build_window(psi1.grid(), half_width), psi1, psi2);
}

OutcomeDist outcome_dist(const Povm &povm, const SampledState &state) {
    if (!same_grid(*povm.grid(), *state.grid())) {
        throw std::invalid_argument("state and POVM live on different grids");
    }
    Eigen::VectorXcd u = state.weighted();
    auto expect = [&u](const Eigen::MatrixXcd &m) { return u.dot(m * u).real(); };
    return normalize(expect(povm.element(Outcome::kOne)), expect(povm.element(Outcome::kTwo)),
                     expect(povm.element(Outcome::kPerp)));
}

OutcomeDist outcome_dist(const Povm &povm, const DensityMatrix &rho) {
    if (!same_grid(*povm.grid(), *rho.grid())) {
        throw std::invalid_argument("density matrix and POVM live on different grids");
    }
    const auto &r = rho.matrix();
    auto expect = [&r](const Eigen::MatrixXcd &m) { return r.cwiseProduct(m.transpose()).sum().real(); };
    return normalize(expect(povm.element(Outcome::kOne)), expect(povm.element(Outcome::kTwo)),
                     expect(povm.element(Outcome::kPerp)));
}

OutcomeDist outcome_dist(const Povm &povm, const TransmittedState &state) {
    return std::visit([&povm](const auto &s) { return outcome_dist(povm, s); }, state);
}

Outcome sample_outcome(const OutcomeDist &dist, Rng &rng) {
    double u = rng.uniform();
    if (u < dist.p1) {
        return Outcome::kOne;
    }
    if (u < dist.p1 + dist.p2) {
        return Outcome::kTwo;
    }
    return Outcome::kPerp;
}

double effective_angle(double p) {
    if (!(p >= 0 && p <= 1)) {
        throw std::invalid_argument("effective_angle needs p in [0, 1]");
    }
    return std::acos(1 - p);
}

}  // namespace rqbc
