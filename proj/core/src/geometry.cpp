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

#include "passkit/geometry.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace passkit {

namespace {

[[noreturn]] void fail(const std::string& what) {
    throw std::invalid_argument(what);
}

} // namespace

double SystemGeometry::beta() const {
    return lambda_c() / (4.0 * std::numbers::pi);
}

double SystemGeometry::wavenumber() const {
    return 2.0 * std::numbers::pi / lambda_c();
}

void SystemGeometry::validate() const {
    if (M < 1 || N < 1 || K < 1) fail("SystemGeometry: M, N, K must be >= 1");
    if (!(D > 0.0)) fail("SystemGeometry: waveguide length D must be > 0");
    if (!(h > 0.0)) fail("SystemGeometry: height h must be > 0");
    if (static_cast<int>(y.size()) != M) fail("SystemGeometry: y must list one coordinate per waveguide");
    if (!(f_c > 0.0)) fail("SystemGeometry: carrier frequency must be > 0");
    if (!(n_eff > 0.0)) fail("SystemGeometry: effective refractive index must be > 0");
    if (delta_min < 0.0) fail("SystemGeometry: delta_min must be >= 0");
    if ((N - 1) * delta_min > D) {
        std::ostringstream os;
        os << "SystemGeometry: " << N << " antennas with spacing " << delta_min
           << " m do not fit on a " << D << " m waveguide";
        fail(os.str());
    }
}

void MotionModel::validate(const SystemGeometry& geom) const {
    if (P_motor < 0.0) fail("MotionModel: motor power must be >= 0");
    if (!(v > 0.0)) fail("MotionModel: movement speed must be > 0");
    if (!(T1 > 0.0) || !(T2 > 0.0)) fail("MotionModel: phase durations must be > 0");
    if (X_init.rows() != geom.M || X_init.cols() != geom.N)
        fail("MotionModel: X_init must be M x N");
    for (int m = 0; m < geom.M; ++m) {
        for (int n = 0; n < geom.N; ++n) {
            const double x = X_init(m, n);
            if (x < 0.0 || x > geom.D) fail("MotionModel: X_init outside [0, D]");
            if (n > 0 && x - X_init(m, n - 1) < geom.delta_min)
                fail("MotionModel: X_init rows must be increasing with gaps >= delta_min");
        }
    }
}

void UserSet::validate(const SystemGeometry& geom) const {
    if (positions.rows() != geom.K || positions.cols() != 2)
        fail("UserSet: positions must be K x 2");
    if (sigma2.size() != geom.K || gamma.size() != geom.K)
        fail("UserSet: sigma2 and gamma must have K entries");
    if ((sigma2.array() <= 0.0).any()) fail("UserSet: noise powers must be > 0");
    if ((gamma.array() <= 0.0).any()) fail("UserSet: SINR thresholds must be > 0");
}

void AntennaState::validate(const SystemGeometry& geom, const MotionModel& motion) const {
    if (X.rows() != geom.M || X.cols() != geom.N) fail("AntennaState: X must be M x N");
    if (alpha.rows() != geom.M || alpha.cols() != geom.N) fail("AntennaState: alpha must be M x N");
    const double tol = 1e-9;
    for (int m = 0; m < geom.M; ++m) {
        if (alpha.row(m).squaredNorm() > 1.0 + tol)
            fail("AntennaState: per-waveguide radiation power exceeds the feed power");
        for (int n = 0; n < geom.N; ++n) {
            if (alpha(m, n) < -tol) fail("AntennaState: radiation ratios must be >= 0");
            const double x = X(m, n);
            if (x < -tol || x > geom.D + tol) fail("AntennaState: position outside [0, D]");
            if (n > 0 && x - X(m, n - 1) < geom.delta_min - tol)
                fail("AntennaState: adjacent spacing below delta_min");
            if (std::abs(x - motion.X_init(m, n)) > motion.max_travel() + tol)
                fail("AntennaState: movement exceeds v*T1");
        }
    }
}

void Beamformer::validate() const {
    if (!W.allFinite()) fail("Beamformer: entries must be finite");
}

double watts_to_dbm(double watts) {
    return 10.0 * std::log10(watts * 1000.0);
}

double dbm_to_watts(double dbm) {
    return std::pow(10.0, dbm / 10.0) / 1000.0;
}

double db_to_linear(double db) {
    return std::pow(10.0, db / 10.0);
}

} // namespace passkit
