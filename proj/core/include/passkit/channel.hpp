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

#pragma once

#include "passkit/geometry.hpp"

namespace passkit {

// Physical model of the pinching-antenna system. Every optimizer, baseline
// and oracle evaluates designs through these functions; nothing else defines
// the physics.
//
// Phase convention: the effective channel element for antenna (m,n) and a
// user at distance r is
//     beta * exp(+j * (2*pi/lambda_c) * (r + n_eff * x)) / r,
// i.e. the combined in-waveguide and free-space propagation with a positive
// exponent. SINR is invariant under conjugation, so a single convention is
// used throughout.

/// Distance between antenna (m,n) at x and user k on the ground.
double pa_user_distance(const SystemGeometry& geom, int m, double x,
                        const Eigen::Vector2d& user);

/// Propagation phase (2*pi/lambda_c) * (r + n_eff * x) for one antenna.
double propagation_phase(const SystemGeometry& geom, int m, double x,
                         const Eigen::Vector2d& user);

/// Effective channel vector of user k, length M*N, element (m*N + n) as above.
VectorXcd effective_channel(const SystemGeometry& geom, const MatrixXd& X,
                            const Eigen::Vector2d& user);

/// All K effective channels for the given placement.
std::vector<VectorXcd> effective_channels(const SystemGeometry& geom,
                                          const MatrixXd& X, const UserSet& users);

/// Per-waveguide compressed channel: entry m equals sum_n conj(t[(m,n)]) * alpha(m,n),
/// so that t^H A w = row(t, alpha)^T w.
VectorXcd waveguide_channel_row(const SystemGeometry& geom, const VectorXcd& t,
                                const MatrixXd& alpha);

/// t_k^H A w for one user/beam pair.
cplx beam_gain(const SystemGeometry& geom, const VectorXcd& t, const MatrixXd& alpha,
               const VectorXcd& w);

/// SINR of every user for channels t (length-MN vectors), ratios alpha and
/// beamformer W.
VectorXd sinr(const SystemGeometry& geom, const std::vector<VectorXcd>& channels,
              const MatrixXd& alpha, const MatrixXcd& W, const VectorXd& sigma2);

/// Energy spent moving one antenna from x_init to x (J).
double motion_energy(double x, double x_init, const MotionModel& motion);

/// Total motion energy over all antennas (J).
double total_motion_energy(const MatrixXd& X, const MotionModel& motion);

/// Two-phase average power: transmit power weighted by T2/(T1+T2) plus
/// motion energy spread over the frame.
double average_power(const MatrixXcd& W, const MatrixXd& X, const MotionModel& motion);

/// Worst-case violation of each design constraint. All measures are >= 0;
/// zero means satisfied.
struct FeasibilityReport {
    double sinr_shortfall = 0.0;    // max_k (Gamma_k - sinr_k) / Gamma_k
    double alpha_norm_excess = 0.0; // max_m ||alpha_m||^2 - 1
    double alpha_negative = 0.0;    // max_mn (-alpha_mn)
    double spacing_deficit = 0.0;   // max_mn delta_min - (x_{m,n} - x_{m,n-1})  (m)
    double range_excess = 0.0;      // max_mn distance outside [0, D]  (m)
    double movement_excess = 0.0;   // max_mn |x - x_init| - v*T1  (m)

    double worst() const;
    bool feasible(double tol) const { return worst() <= tol; }
};

/// Audits a design against the true channels (never against solver proxies).
FeasibilityReport audit_feasibility(const SystemGeometry& geom, const MotionModel& motion,
                                    const UserSet& users, const AntennaState& state,
                                    const MatrixXcd& W);

} // namespace passkit
