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

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace passkit {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;
using Eigen::VectorXd;
using cplx = std::complex<double>;

/// Speed of light in vacuum (m/s).
inline constexpr double kSpeedOfLight = 299792458.0;

/// Static deployment: waveguide layout, carrier constants and spacing limits.
///
/// Waveguides run parallel to the x-axis at height h; waveguide m spans from
/// its feed point (0, y[m], h) to (D, y[m], h). Antenna (m,n) sits at
/// (X(m,n), y[m], h).
struct SystemGeometry {
    int M = 1;              // waveguides (one RF chain each)
    int N = 1;              // antennas per waveguide
    int K = 1;              // users
    double D = 1.0;         // waveguide length (m)
    double h = 1.0;         // deployment height (m)
    std::vector<double> y;  // y-coordinate per waveguide (m)
    double f_c = 28e9;      // carrier frequency (Hz)
    double n_eff = 1.4;     // effective refractive index of the waveguide
    double delta_min = 0.0; // minimum adjacent-antenna spacing (m)

    double lambda_c() const { return kSpeedOfLight / f_c; }
    double lambda_g() const { return lambda_c() / n_eff; }
    /// Spherical-wave amplitude constant beta = lambda_c / (4*pi).
    double beta() const;
    /// Free-space wavenumber 2*pi / lambda_c.
    double wavenumber() const;

    int antenna_count() const { return M * N; }
    /// Flat index of antenna (m,n) in length-MN vectors.
    int flat(int m, int n) const { return m * N + n; }

    /// Throws std::invalid_argument when any invariant is violated
    /// (including the degenerate D < (N-1)*delta_min layout).
    void validate() const;
};

/// Two-phase movement model: antennas move during T1, transmit during T2.
struct MotionModel {
    double P_motor = 0.1; // motor power draw while moving (W)
    double v = 1.0;       // movement speed (m/s)
    double T1 = 0.1;      // movement phase duration (s)
    double T2 = 0.9;      // transmission phase duration (s)
    MatrixXd X_init;      // M x N initial x-coordinates (m)

    double max_travel() const { return v * T1; }
    void validate(const SystemGeometry& geom) const;
};

/// Served users: ground positions, noise powers and linear SINR targets.
struct UserSet {
    MatrixXd positions; // K x 2, row k = (x_k, y_k); users are at z = 0
    VectorXd sigma2;    // noise power per user (W)
    VectorXd gamma;     // SINR threshold per user (linear)

    int count() const { return static_cast<int>(positions.rows()); }
    void validate(const SystemGeometry& geom) const;
};

/// Antenna placement and per-antenna radiation power ratios.
struct AntennaState {
    MatrixXd X;     // M x N x-coordinates (m)
    MatrixXd alpha; // M x N radiation ratios, alpha >= 0, row squared norms <= 1

    void validate(const SystemGeometry& geom, const MotionModel& motion) const;
};

/// Per-waveguide feed weights; column k serves user k.
struct Beamformer {
    MatrixXcd W; // M x K

    void validate() const;
};

/// dBm <-> W conversions (powers are watts everywhere except I/O).
double watts_to_dbm(double watts);
double dbm_to_watts(double dbm);
/// dB -> linear ratio.
double db_to_linear(double db);

} // namespace passkit
