// SPDX-License-Identifier: Apache-2.0
//
// passkit: pinching-antenna system design toolkit
// Copyright (C) 2026 passkit contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "passkit/oracles.hpp"

#include "passkit/admm/continuous.hpp"
#include "passkit/channel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace passkit::oracles {

Grid1dResult grid_oracle_1d(const SystemGeometry& geom, const MotionModel& motion,
                            const UserSet& users, double resolution) {
    if (geom.M != 1 || geom.N != 1 || geom.K != 1)
        throw std::invalid_argument("grid_oracle_1d: needs M = N = K = 1");
    if (!(resolution > 0.0)) throw std::invalid_argument("grid_oracle_1d: resolution > 0");

    const double beta = geom.beta();
    const double frame = motion.T1 + motion.T2;
    const double xinit = motion.X_init(0, 0);
    const double lo = std::max(0.0, xinit - motion.max_travel());
    const double hi = std::min(geom.D, xinit + motion.max_travel());
    const Eigen::Vector2d user = users.positions.row(0).transpose();

    auto power_at = [&](double x) {
        const double r = pa_user_distance(geom, 0, x, user);
        const double pt = users.gamma(0) * users.sigma2(0) * r * r / (beta * beta);
        return motion.T2 / frame * pt + motion.P_motor * std::abs(x - xinit) / (motion.v * frame);
    };

    Grid1dResult best;
    best.x_opt = lo;
    best.power_opt = power_at(lo);
    for (double x = lo; x < hi; x += resolution) {
        const double p = power_at(x);
        if (p < best.power_opt) {
            best.power_opt = p;
            best.x_opt = x;
        }
    }
    const double ph = power_at(hi);
    if (ph < best.power_opt) {
        best.power_opt = ph;
        best.x_opt = hi;
    }
    return best;
}

namespace {

// Candidate radiation-ratio rows for the nested scan. N = 1 is exactly
// optimal at full power (scaling a waveguide's row up never raises the
// minimum beamforming power); N = 2 scans the unit quarter-circle; larger N
// falls back to a coarse coordinate scan over angles.
std::vector<VectorXd> alpha_row_candidates(int N) {
    std::vector<VectorXd> out;
    if (N == 1) {
        out.push_back(VectorXd::Ones(1));
        return out;
    }
    if (N == 2) {
        const int steps = 32;
        for (int i = 0; i <= steps; ++i) {
            const double phi = 0.5 * std::numbers::pi * i / steps;
            VectorXd v(2);
            v << std::cos(phi), std::sin(phi);
            out.push_back(v);
        }
        return out;
    }
    const int steps = 8;
    // coarse simplex of directions, normalized
    std::vector<VectorXd> dirs;
    VectorXd v = VectorXd::Ones(N);
    dirs.push_back(v.normalized());
    for (int n = 0; n < N; ++n) {
        for (int i = 1; i <= steps; ++i) {
            VectorXd u = VectorXd::Ones(N);
            u(n) = 1.0 + 3.0 * i / steps;
            dirs.push_back(u.normalized());
            u(n) = std::max(0.0, 1.0 - double(i) / steps);
            dirs.push_back(u.normalized());
        }
    }
    return dirs;
}

} // namespace

DiscreteOracleResult exhaustive_discrete_oracle(const SystemGeometry& geom,
                                                const MotionModel& motion,
                                                const UserSet& users,
                                                const bcd::DiscreteGrid& grid,
                                                double solver_tol, long enumeration_cap) {
    const int MN = geom.antenna_count();
    const int Nt = grid.N_tilde;
    double total = std::pow(double(Nt), MN);
    if (total > double(enumeration_cap))
        throw std::invalid_argument("exhaustive_discrete_oracle: enumeration too large");

    // per-waveguide ratio candidates, combined row-wise
    std::vector<std::vector<VectorXd>> row_cands;
    for (int m = 0; m < geom.M; ++m) row_cands.push_back(alpha_row_candidates(geom.N));

    const double frame = motion.T1 + motion.T2;
    DiscreteOracleResult best;
    best.power_opt = std::numeric_limits<double>::infinity();

    std::vector<int> sel(static_cast<size_t>(MN), 0);
    bool done = false;
    while (!done) {
        ++best.designs_checked;
        // spacing feasibility (range and movement hold by construction)
        bool ok = true;
        for (int m = 0; m < geom.M && ok; ++m)
            for (int n = 1; n < geom.N && ok; ++n) {
                const double xr = grid.cand_x(geom.flat(m, n), sel[static_cast<size_t>(geom.flat(m, n))]);
                const double xl =
                    grid.cand_x(geom.flat(m, n - 1), sel[static_cast<size_t>(geom.flat(m, n - 1))]);
                if (xr - xl < geom.delta_min - 1e-12) ok = false;
            }
        if (ok) {
            std::vector<VectorXcd> channels;
            channels.reserve(static_cast<size_t>(geom.K));
            for (int k = 0; k < geom.K; ++k) {
                VectorXcd h(MN);
                for (int i = 0; i < MN; ++i)
                    h(i) = grid.cand_channels[static_cast<size_t>(k)](
                        i * Nt + sel[static_cast<size_t>(i)]);
                channels.push_back(std::move(h));
            }
            double motion_power = 0.0;
            for (int i = 0; i < MN; ++i)
                motion_power += motion.P_motor * grid.disp(i, sel[static_cast<size_t>(i)]) /
                                (motion.v * frame);

            // nested scan over ratio rows (exact for N = 1)
            std::vector<size_t> pick(static_cast<size_t>(geom.M), 0);
            bool adone = false;
            while (!adone) {
                MatrixXd alpha(geom.M, geom.N);
                for (int m = 0; m < geom.M; ++m)
                    alpha.row(m) = row_cands[static_cast<size_t>(m)][pick[static_cast<size_t>(m)]]
                                       .transpose();
                MatrixXcd W;
                if (admm::min_power_beamformer(geom, channels, alpha, users, solver_tol, W) ==
                    conic::SolveStatus::optimal) {
                    const double p = motion.T2 / frame * W.squaredNorm() + motion_power;
                    if (p < best.power_opt) {
                        best.power_opt = p;
                        best.feasible = true;
                        best.selection.assign(sel.begin(), sel.end());
                        best.W = W;
                        best.alpha = alpha;
                    }
                }
                // advance ratio odometer
                adone = true;
                for (size_t m = 0; m < pick.size(); ++m) {
                    if (++pick[m] < row_cands[m].size()) {
                        adone = false;
                        break;
                    }
                    pick[m] = 0;
                }
            }
        }
        // advance selection odometer
        done = true;
        for (int i = 0; i < MN; ++i) {
            if (++sel[static_cast<size_t>(i)] < Nt) {
                done = false;
                break;
            }
            sel[static_cast<size_t>(i)] = 0;
        }
    }
    return best;
}

double finite_diff_check(const std::function<double(double)>& f,
                         const std::function<double(double)>& grad_f,
                         const std::vector<double>& points, double step) {
    if (!(step > 0.0)) throw std::invalid_argument("finite_diff_check: step > 0");
    double worst = 0.0;
    for (double x : points) {
        const double d = (f(x + step) - f(x - step)) / (2.0 * step);
        const double g = grad_f(x);
        const double denom = std::max({std::abs(g), std::abs(d), 1e-12});
        worst = std::max(worst, std::abs(d - g) / denom);
    }
    return worst;
}

} // namespace passkit::oracles
