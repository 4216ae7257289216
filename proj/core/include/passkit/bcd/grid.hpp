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

namespace passkit::bcd {

/// Candidate positions for discrete antenna movement, with precomputed
/// channels and displacements. Candidate index layout: row = flat antenna
/// index m*N + n, column = candidate index.
struct DiscreteGrid {
    int N_tilde = 1;
    MatrixXd cand_x;                    // (M*N) x N_tilde candidate x (m)
    MatrixXd disp;                      // (M*N) x N_tilde |cand - x_init| (m)
    std::vector<VectorXcd> cand_channels; // per user: length M*N*N_tilde

    int flat(const SystemGeometry& geom, int m, int n, int nt) const {
        return (m * geom.N + n) * N_tilde + nt;
    }
};

/// Uniformly spaced candidates over each antenna's reachable interval
/// [max(0, x'-vT1), min(D, x'+vT1)]; N_tilde = 1 degenerates to the
/// preinstalled position. Channels match effective_channel at each candidate.
DiscreteGrid build_grid(const SystemGeometry& geom, const MotionModel& motion,
                        const UserSet& users, int N_tilde);

} // namespace passkit::bcd
