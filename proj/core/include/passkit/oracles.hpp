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

#include "passkit/bcd/grid.hpp"
#include "passkit/geometry.hpp"

#include <functional>

namespace passkit::oracles {

// Independent brute-force references used by the test suites. These scan or
// enumerate designs directly through the physical model and never call into
// the iterative optimizers.

struct Grid1dResult {
    double x_opt = 0.0;
    double power_opt = 0.0;
};

/// Exhaustive 1-D scan for the single-waveguide, single-antenna, single-user
/// case: transmit power has the closed form Gamma*sigma2*r^2/beta^2, motion
/// cost follows the movement model.
Grid1dResult grid_oracle_1d(const SystemGeometry& geom, const MotionModel& motion,
                            const UserSet& users, double resolution);

struct DiscreteOracleResult {
    bool feasible = false;
    std::vector<int> selection; // candidate index per antenna (flat m*N+n)
    MatrixXcd W;
    MatrixXd alpha;
    double power_opt = 0.0;
    long designs_checked = 0;
};

/// Enumerates every spacing-feasible candidate selection, solving the
/// beamforming problem per selection (ratios optimized by coordinate scan
/// for N > 1). Caller must keep N_tilde^(M*N) within the enumeration cap.
DiscreteOracleResult exhaustive_discrete_oracle(const SystemGeometry& geom,
                                                const MotionModel& motion,
                                                const UserSet& users,
                                                const bcd::DiscreteGrid& grid,
                                                double solver_tol = 1e-8,
                                                long enumeration_cap = 100000);

/// Max relative deviation between an analytic gradient and central
/// differences over the given sample points.
double finite_diff_check(const std::function<double(double)>& f,
                         const std::function<double(double)>& grad_f,
                         const std::vector<double>& points, double step);

} // namespace passkit::oracles
