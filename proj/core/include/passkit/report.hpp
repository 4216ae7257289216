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
#include "passkit/geometry.hpp"

#include <limits>
#include <string>
#include <vector>

namespace passkit {

enum class RunStatus {
    converged,
    iteration_limit,
    qos_infeasible,
    rounding_failed,
    failed,
};

std::string to_string(RunStatus s);

struct IterationRecord {
    int iteration = 0;
    double objective = 0.0;     // f1 (continuous) or relaxed f5~ (discrete)
    double residual = 0.0;      // ADMM consensus residual (continuous only)
    double max_violation = 0.0; // audit worst violation at this iterate
    double wall_time_s = 0.0;   // cumulative
    double penalty = 0.0;       // rho1 (continuous) or zeta (discrete)
};

/// Everything a run reports. The audited power is recomputed through the
/// physical model, never copied from a solver objective.
struct SolveReport {
    std::string algorithm;
    RunStatus status = RunStatus::failed;

    std::vector<IterationRecord> trajectory;

    AntennaState final_state;
    MatrixXcd final_W;
    std::vector<int> selected_candidates; // discrete: winning index per antenna

    double audited_power_w = std::numeric_limits<double>::quiet_NaN();
    double audited_power_dbm = std::numeric_limits<double>::quiet_NaN();
    FeasibilityReport audit;

    double wall_time_s = 0.0;
    int iterations = 0;
    int t_update_fallbacks = 0; // continuous: users that kept a previous proxy

    bool usable() const {
        return status == RunStatus::converged || status == RunStatus::iteration_limit;
    }
};

} // namespace passkit
