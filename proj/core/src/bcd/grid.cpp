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

#include "passkit/bcd/grid.hpp"

#include "passkit/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace passkit::bcd {

DiscreteGrid build_grid(const SystemGeometry& geom, const MotionModel& motion,
                        const UserSet& users, int N_tilde) {
    if (N_tilde < 1) throw std::invalid_argument("build_grid: N_tilde must be >= 1");
    geom.validate();
    motion.validate(geom);
    users.validate(geom);

    DiscreteGrid g;
    g.N_tilde = N_tilde;
    const int MN = geom.antenna_count();
    g.cand_x.resize(MN, N_tilde);
    g.disp.resize(MN, N_tilde);

    for (int m = 0; m < geom.M; ++m) {
        for (int n = 0; n < geom.N; ++n) {
            const double xi = motion.X_init(m, n);
            const double lo = std::max(0.0, xi - motion.max_travel());
            const double hi = std::min(geom.D, xi + motion.max_travel());
            const int row = geom.flat(m, n);
            for (int nt = 0; nt < N_tilde; ++nt) {
                const double x =
                    (N_tilde == 1) ? std::clamp(xi, 0.0, geom.D)
                                   : lo + (hi - lo) * nt / double(N_tilde - 1);
                g.cand_x(row, nt) = x;
                g.disp(row, nt) = std::abs(x - xi);
            }
        }
    }

    g.cand_channels.reserve(static_cast<size_t>(geom.K));
    const double beta = geom.beta();
    for (int k = 0; k < geom.K; ++k) {
        const Eigen::Vector2d user = users.positions.row(k).transpose();
        VectorXcd h(MN * N_tilde);
        for (int m = 0; m < geom.M; ++m)
            for (int n = 0; n < geom.N; ++n)
                for (int nt = 0; nt < N_tilde; ++nt) {
                    const double x = g.cand_x(geom.flat(m, n), nt);
                    const double r = pa_user_distance(geom, m, x, user);
                    h(g.flat(geom, m, n, nt)) =
                        std::polar(beta / r, propagation_phase(geom, m, x, user));
                }
        g.cand_channels.push_back(std::move(h));
    }
    return g;
}

} // namespace passkit::bcd
