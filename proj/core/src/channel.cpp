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

#include "passkit/channel.hpp"

#include <algorithm>
#include <cmath>

namespace passkit {

double pa_user_distance(const SystemGeometry& geom, int m, double x,
                        const Eigen::Vector2d& user) {
    const double dx = x - user(0);
    const double dy = geom.y[static_cast<size_t>(m)] - user(1);
    return std::sqrt(dx * dx + dy * dy + geom.h * geom.h);
}

double propagation_phase(const SystemGeometry& geom, int m, double x,
                         const Eigen::Vector2d& user) {
    const double r = pa_user_distance(geom, m, x, user);
    return geom.wavenumber() * (r + geom.n_eff * x);
}

VectorXcd effective_channel(const SystemGeometry& geom, const MatrixXd& X,
                            const Eigen::Vector2d& user) {
    VectorXcd t(geom.antenna_count());
    const double beta = geom.beta();
    for (int m = 0; m < geom.M; ++m) {
        for (int n = 0; n < geom.N; ++n) {
            const double x = X(m, n);
            const double r = pa_user_distance(geom, m, x, user);
            const double phase = geom.wavenumber() * (r + geom.n_eff * x);
            t(geom.flat(m, n)) = std::polar(beta / r, phase);
        }
    }
    return t;
}

std::vector<VectorXcd> effective_channels(const SystemGeometry& geom,
                                          const MatrixXd& X, const UserSet& users) {
    std::vector<VectorXcd> out;
    out.reserve(static_cast<size_t>(geom.K));
    for (int k = 0; k < geom.K; ++k)
        out.push_back(effective_channel(geom, X, users.positions.row(k).transpose()));
    return out;
}

VectorXcd waveguide_channel_row(const SystemGeometry& geom, const VectorXcd& t,
                                const MatrixXd& alpha) {
    VectorXcd row = VectorXcd::Zero(geom.M);
    for (int m = 0; m < geom.M; ++m)
        for (int n = 0; n < geom.N; ++n)
            row(m) += std::conj(t(geom.flat(m, n))) * alpha(m, n);
    return row;
}

cplx beam_gain(const SystemGeometry& geom, const VectorXcd& t, const MatrixXd& alpha,
               const VectorXcd& w) {
    return waveguide_channel_row(geom, t, alpha).transpose() * w;
}

VectorXd sinr(const SystemGeometry& geom, const std::vector<VectorXcd>& channels,
              const MatrixXd& alpha, const MatrixXcd& W, const VectorXd& sigma2) {
    const int K = static_cast<int>(channels.size());
    VectorXd out(K);
    for (int k = 0; k < K; ++k) {
        const VectorXcd row = waveguide_channel_row(geom, channels[static_cast<size_t>(k)], alpha);
        double signal = 0.0;
        double interference = 0.0;
        for (int j = 0; j < W.cols(); ++j) {
            const double p = std::norm(cplx(row.transpose() * W.col(j)));
            if (j == k)
                signal = p;
            else
                interference += p;
        }
        out(k) = signal / (interference + sigma2(k));
    }
    return out;
}

double motion_energy(double x, double x_init, const MotionModel& motion) {
    return motion.P_motor * std::abs(x - x_init) / motion.v;
}

double total_motion_energy(const MatrixXd& X, const MotionModel& motion) {
    return motion.P_motor * (X - motion.X_init).array().abs().sum() / motion.v;
}

double average_power(const MatrixXcd& W, const MatrixXd& X, const MotionModel& motion) {
    const double frame = motion.T1 + motion.T2;
    return motion.T2 / frame * W.squaredNorm() + total_motion_energy(X, motion) / frame;
}

double FeasibilityReport::worst() const {
    return std::max({sinr_shortfall, alpha_norm_excess, alpha_negative, spacing_deficit,
                     range_excess, movement_excess});
}

FeasibilityReport audit_feasibility(const SystemGeometry& geom, const MotionModel& motion,
                                    const UserSet& users, const AntennaState& state,
                                    const MatrixXcd& W) {
    FeasibilityReport rep;

    const auto channels = effective_channels(geom, state.X, users);
    const VectorXd gammas = sinr(geom, channels, state.alpha, W, users.sigma2);
    for (int k = 0; k < geom.K; ++k) {
        const double shortfall = (users.gamma(k) - gammas(k)) / users.gamma(k);
        rep.sinr_shortfall = std::max(rep.sinr_shortfall, shortfall);
    }

    for (int m = 0; m < geom.M; ++m) {
        rep.alpha_norm_excess =
            std::max(rep.alpha_norm_excess, state.alpha.row(m).squaredNorm() - 1.0);
        for (int n = 0; n < geom.N; ++n) {
            rep.alpha_negative = std::max(rep.alpha_negative, -state.alpha(m, n));
            const double x = state.X(m, n);
            rep.range_excess = std::max({rep.range_excess, -x, x - geom.D});
            rep.movement_excess = std::max(
                rep.movement_excess, std::abs(x - motion.X_init(m, n)) - motion.max_travel());
            if (n > 0)
                rep.spacing_deficit = std::max(
                    rep.spacing_deficit, geom.delta_min - (x - state.X(m, n - 1)));
        }
    }
    return rep;
}

} // namespace passkit
