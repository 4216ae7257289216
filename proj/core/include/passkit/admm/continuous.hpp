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

#include "passkit/channel.hpp"
#include "passkit/conic/problem.hpp"
#include "passkit/geometry.hpp"
#include "passkit/report.hpp"

namespace passkit::admm {

/// Splitting-method solver state for the continuous-movement design. The
/// channel expression is split through the phase auxiliaries theta and the
/// per-user channel proxies t, coupled back by quadratic penalties with
/// multipliers mu and lambda.
struct AdmmState {
    MatrixXcd W;                    // M x K beamformer
    MatrixXd X;                     // M x N positions
    MatrixXd alpha;                 // M x N radiation ratios
    VectorXd theta;                 // K*M*N phase auxiliaries
    std::vector<VectorXcd> t;       // K channel proxies of length M*N
    VectorXd mu;                    // K*M*N dual of theta = phi
    std::vector<VectorXcd> lambda;  // K duals of R_k t_k = u_k
    double rho1 = 0.0, rho2 = 0.0;  // penalty weights
    int iter = 0;
};

struct AdmmSettings {
    double rho1_init = 1e3;
    double rho2_init = 1e5;
    double epsilon = 1.25; // penalty growth per iteration (1 disables growth)
    double rho_max = 1e9;
    double varsigma1 = 1e-4; // consensus residual tolerance
    double varsigma2 = 1e-4; // relative objective-change tolerance
    int max_iter = 200;
    double solver_tol = 1e-8;

    bool optimize_alpha = true;      // false: equal-radiation design
    bool include_motion_cost = true; // false: transmit-power-only design

    void validate() const;
};

/// Lipschitz bound of the phase-penalty gradient: 2*beta*|r*t + lambda/rho2|.
double lipschitz_constant(double beta, cplx rt_plus_dual);

/// d/dtheta of |r t - beta e^{j theta} + lambda/rho2|^2.
double phase_penalty_gradient(double beta, cplx rt_plus_dual, double theta);

/// |r t - beta e^{j theta} + lambda/rho2|^2 for one antenna/user pair.
double phase_penalty_value(double beta, cplx rt_plus_dual, double theta);

class ContinuousSolver {
public:
    ContinuousSolver(SystemGeometry geom, MotionModel motion, UserSet users,
                     AdmmSettings settings);

    /// State anchored at the preinstalled placement (phase/proxy auxiliaries
    /// consistent, duals zero, beamformer zero).
    AdmmState init_state() const;
    /// Same, anchored at an arbitrary feasible placement.
    AdmmState init_state_at(const MatrixXd& X0) const;

    /// Candidate initial placements inside the reachable box: the
    /// preinstalled layout, a per-antenna path-loss clamp toward the nearest
    /// user, and a greedy phase-coherent placement.
    std::vector<MatrixXd> initial_placements() const;

    // Block updates in sweep order. Exposed individually for tests.
    conic::SolveStatus update_beamformer(AdmmState& s) const;
    int update_t(AdmmState& s) const; // returns count of users that kept their proxy
    void update_alpha(AdmmState& s) const;
    void update_theta(AdmmState& s) const;
    void update_positions(AdmmState& s) const;
    void update_duals(AdmmState& s) const;
    void scale_penalties(AdmmState& s) const;

    /// One full primal sweep (no dual/penalty update); returns t fallbacks.
    int sweep_once(AdmmState& s) const;

    /// ||theta - phi||^2 + sum_k ||R_k t_k - u_k||^2 at the current state.
    double consensus_residual(const AdmmState& s) const;
    /// Augmented Lagrangian value (finite part; feasibility is maintained by
    /// construction).
    double augmented_lagrangian(const AdmmState& s) const;
    /// Optimization objective: average power with the solver's motion model.
    double objective(const AdmmState& s) const;

    /// Phase targets phi(X), index (k*M + m)*N + n.
    VectorXd phase_vector(const MatrixXd& X) const;
    /// Distances r_{k,m,n} as a K*M*N vector in the same ordering.
    VectorXd distance_vector(const MatrixXd& X) const;

    /// Algorithm 1 from every candidate placement; best audited design wins.
    SolveReport run() const;
    /// Algorithm 1 from one placement.
    SolveReport run_from(const MatrixXd& X0) const;

    const SystemGeometry& geometry() const { return geom_; }
    const MotionModel& motion() const { return motion_; }
    const UserSet& users() const { return users_; }
    const AdmmSettings& settings() const { return settings_; }

private:
    SystemGeometry geom_;
    MotionModel motion_; // motor power zeroed when motion cost is excluded
    UserSet users_;
    AdmmSettings settings_;
    MotionModel report_motion_; // unmodified, used for reported power and audits

    int flat_kmn(int k, int m, int n) const {
        return (k * geom_.M + m) * geom_.N + n;
    }

    conic::SolveStatus solve_beamformer(const std::vector<VectorXcd>& channels,
                                        const MatrixXd& alpha, MatrixXcd& W) const;

    friend struct ContinuousTestHook;
};

/// Solves problem (29)-style power minimization for fixed channels/ratios;
/// shared with baselines and the discrete rounding step. On success W meets
/// every SINR target exactly (a final scale polish removes solver slack).
conic::SolveStatus min_power_beamformer(const SystemGeometry& geom,
                                        const std::vector<VectorXcd>& channels,
                                        const MatrixXd& alpha, const UserSet& users,
                                        double solver_tol, MatrixXcd& W);

} // namespace passkit::admm
