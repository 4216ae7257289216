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

#include "passkit/admm/continuous.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace passkit::admm {

using conic::LinExpr;
using conic::ProblemBuilder;
using conic::SolveOptions;
using conic::SolveStatus;

void AdmmSettings::validate() const {
    if (!(rho1_init > 0.0) || !(rho2_init > 0.0))
        throw std::invalid_argument("AdmmSettings: penalty weights must be > 0");
    if (epsilon < 1.0)
        throw std::invalid_argument("AdmmSettings: penalty scaling factor must be >= 1");
    if (!(rho_max >= rho1_init) || !(rho_max >= rho2_init))
        throw std::invalid_argument("AdmmSettings: rho_max below initial penalties");
    if (!(varsigma1 > 0.0) || !(varsigma2 > 0.0))
        throw std::invalid_argument("AdmmSettings: tolerances must be > 0");
    if (max_iter < 1) throw std::invalid_argument("AdmmSettings: max_iter must be >= 1");
    if (!(solver_tol > 0.0)) throw std::invalid_argument("AdmmSettings: solver_tol must be > 0");
}

double lipschitz_constant(double beta, cplx rt_plus_dual) {
    return 2.0 * beta * std::abs(rt_plus_dual);
}

double phase_penalty_gradient(double beta, cplx rt_plus_dual, double theta) {
    const double L = lipschitz_constant(beta, rt_plus_dual);
    return L * std::sin(theta - std::arg(rt_plus_dual));
}

double phase_penalty_value(double beta, cplx rt_plus_dual, double theta) {
    return std::norm(rt_plus_dual - std::polar(beta, theta));
}

namespace {

// Restores exact SINR feasibility after a solve: scaling W up by a common
// factor raises every SINR strictly (noise does not scale), so a factor just
// above 1 removes the solver's terminal slack.
void polish_beamformer(const SystemGeometry& geom, const std::vector<VectorXcd>& channels,
                       const MatrixXd& alpha, const UserSet& users, MatrixXcd& W) {
    double scale2 = 1.0;
    for (int k = 0; k < geom.K; ++k) {
        const VectorXcd row = waveguide_channel_row(geom, channels[static_cast<size_t>(k)], alpha);
        double signal = 0.0, interference = 0.0;
        for (int j = 0; j < W.cols(); ++j) {
            const double p = std::norm(cplx(row.transpose() * W.col(j)));
            if (j == k)
                signal += p;
            else
                interference += p;
        }
        const double margin = signal - users.gamma(k) * interference;
        if (margin <= 0.0) return; // interference-limited shortfall; leave as-is
        scale2 = std::max(scale2, users.gamma(k) * users.sigma2(k) / margin);
    }
    if (scale2 > 1.0 && scale2 < 1.01) W *= std::sqrt(scale2) * (1.0 + 1e-14);
}

struct GainCoeffs {
    // t^H A w_j as linear expressions in the stacked [wr; wi] variables
    // (column-major M x K each).
    static LinExpr re_gain(const SystemGeometry& geom, const VectorXcd& row, int j,
                           int wr0, int wi0) {
        LinExpr e;
        for (int m = 0; m < geom.M; ++m) {
            e.add(wr0 + j * geom.M + m, row(m).real());
            e.add(wi0 + j * geom.M + m, -row(m).imag());
        }
        return e;
    }
    static LinExpr im_gain(const SystemGeometry& geom, const VectorXcd& row, int j,
                           int wr0, int wi0) {
        LinExpr e;
        for (int m = 0; m < geom.M; ++m) {
            e.add(wi0 + j * geom.M + m, row(m).real());
            e.add(wr0 + j * geom.M + m, row(m).imag());
        }
        return e;
    }
};

} // namespace

conic::SolveStatus min_power_beamformer(const SystemGeometry& geom,
                                        const std::vector<VectorXcd>& channels,
                                        const MatrixXd& alpha, const UserSet& users,
                                        double solver_tol, MatrixXcd& W) {
    const int M = geom.M, K = geom.K;
    ProblemBuilder pb;
    const int wr0 = pb.add_free(M * K);
    const int wi0 = pb.add_free(M * K);
    const int pw = pb.add_free(1);

    std::vector<VectorXcd> rows;
    rows.reserve(static_cast<size_t>(K));
    double hscale = 0.0;
    for (int k = 0; k < K; ++k) {
        rows.push_back(waveguide_channel_row(geom, channels[static_cast<size_t>(k)], alpha));
        hscale = std::max(hscale, rows.back().cwiseAbs().maxCoeff());
    }
    if (hscale <= 0.0) return SolveStatus::primal_infeasible; // dead channels
    // SINR constraints are invariant under dividing channels and noise
    // amplitude by a common factor; normalizing keeps the cone data O(1).
    for (auto& row : rows) row /= hscale;

    for (int k = 0; k < K; ++k) {
        const VectorXcd& row = rows[static_cast<size_t>(k)];
        std::vector<LinExpr> soc;
        LinExpr top = GainCoeffs::re_gain(geom, row, k, wr0, wi0);
        top *= std::sqrt(1.0 + 1.0 / users.gamma(k));
        soc.push_back(top);
        for (int j = 0; j < K; ++j) {
            soc.push_back(GainCoeffs::re_gain(geom, row, j, wr0, wi0));
            soc.push_back(GainCoeffs::im_gain(geom, row, j, wr0, wi0));
        }
        soc.push_back(LinExpr(std::sqrt(users.sigma2(k)) / hscale));
        pb.add_soc_of(soc);
        pb.add_eq(GainCoeffs::im_gain(geom, row, k, wr0, wi0));
    }

    std::vector<LinExpr> wvars;
    wvars.reserve(static_cast<size_t>(2 * M * K));
    for (int i = 0; i < M * K; ++i) wvars.emplace_back(wr0 + i, 1.0);
    for (int i = 0; i < M * K; ++i) wvars.emplace_back(wi0 + i, 1.0);
    pb.add_quad_le(wvars, LinExpr(pw, 1.0));
    pb.add_objective(pw, 1.0);

    SolveOptions opts;
    opts.tol = solver_tol;
    const auto sol = conic::solve(pb.build(), opts);
    if (sol.status == SolveStatus::primal_infeasible ||
        sol.status == SolveStatus::dual_infeasible)
        return sol.status;
    if (sol.x.size() == 0) return SolveStatus::numerical_limit;

    MatrixXcd Wc(M, K);
    for (int j = 0; j < K; ++j)
        for (int m = 0; m < M; ++m)
            Wc(m, j) = cplx(sol.x(wr0 + j * M + m), sol.x(wi0 + j * M + m));
    polish_beamformer(geom, channels, alpha, users, Wc);

    if (sol.status != SolveStatus::optimal) {
        // accept a truncated solve only if it actually meets the targets
        const VectorXd gam = sinr(geom, channels, alpha, Wc, users.sigma2);
        for (int k = 0; k < K; ++k)
            if (gam(k) < users.gamma(k) * (1.0 - 1e-9)) return SolveStatus::numerical_limit;
    }
    W = std::move(Wc);
    return SolveStatus::optimal;
}

ContinuousSolver::ContinuousSolver(SystemGeometry geom, MotionModel motion, UserSet users,
                                   AdmmSettings settings)
    : geom_(std::move(geom)), motion_(std::move(motion)), users_(std::move(users)),
      settings_(settings), report_motion_(motion_) {
    geom_.validate();
    motion_.validate(geom_);
    users_.validate(geom_);
    settings_.validate();
    if (!settings_.include_motion_cost) motion_.P_motor = 0.0;
}

VectorXd ContinuousSolver::phase_vector(const MatrixXd& X) const {
    VectorXd phi(geom_.K * geom_.M * geom_.N);
    for (int k = 0; k < geom_.K; ++k) {
        const Eigen::Vector2d user = users_.positions.row(k).transpose();
        for (int m = 0; m < geom_.M; ++m)
            for (int n = 0; n < geom_.N; ++n)
                phi(flat_kmn(k, m, n)) = propagation_phase(geom_, m, X(m, n), user);
    }
    return phi;
}

VectorXd ContinuousSolver::distance_vector(const MatrixXd& X) const {
    VectorXd r(geom_.K * geom_.M * geom_.N);
    for (int k = 0; k < geom_.K; ++k) {
        const Eigen::Vector2d user = users_.positions.row(k).transpose();
        for (int m = 0; m < geom_.M; ++m)
            for (int n = 0; n < geom_.N; ++n)
                r(flat_kmn(k, m, n)) = pa_user_distance(geom_, m, X(m, n), user);
    }
    return r;
}

AdmmState ContinuousSolver::init_state() const { return init_state_at(motion_.X_init); }

AdmmState ContinuousSolver::init_state_at(const MatrixXd& X0) const {
    AdmmState s;
    s.X = X0;
    s.alpha = MatrixXd::Constant(geom_.M, geom_.N, 1.0 / std::sqrt(double(geom_.N)));
    s.W = MatrixXcd::Zero(geom_.M, geom_.K);
    s.theta = phase_vector(s.X);
    s.t = effective_channels(geom_, s.X, users_);
    s.mu = VectorXd::Zero(geom_.K * geom_.M * geom_.N);
    s.lambda.assign(static_cast<size_t>(geom_.K), VectorXcd::Zero(geom_.M * geom_.N));
    s.rho1 = settings_.rho1_init;
    s.rho2 = settings_.rho2_init;
    s.iter = 0;
    AntennaState check{s.X, s.alpha};
    check.validate(geom_, motion_);
    return s;
}

std::vector<MatrixXd> ContinuousSolver::initial_placements() const {
    const int M = geom_.M, N = geom_.N, K = geom_.K;
    std::vector<MatrixXd> out;
    out.push_back(motion_.X_init);

    auto reachable = [&](int m, int n, double& lo, double& hi) {
        lo = std::max(0.0, motion_.X_init(m, n) - motion_.max_travel());
        hi = std::min(geom_.D, motion_.X_init(m, n) + motion_.max_travel());
    };
    auto respace = [&](MatrixXd& X) {
        for (int m = 0; m < M; ++m) {
            for (int n = 1; n < N; ++n) {
                double lo, hi;
                reachable(m, n, lo, hi);
                lo = std::max(lo, X(m, n - 1) + geom_.delta_min);
                X(m, n) = std::clamp(X(m, n), lo, std::max(lo, hi));
            }
        }
    };

    // Per-antenna clamp toward the user it is closest to.
    {
        MatrixXd X = motion_.X_init;
        for (int m = 0; m < M; ++m) {
            for (int n = 0; n < N; ++n) {
                int kbest = 0;
                double rbest = std::numeric_limits<double>::infinity();
                for (int k = 0; k < K; ++k) {
                    const double r = pa_user_distance(geom_, m, X(m, n),
                                                      users_.positions.row(k).transpose());
                    if (r < rbest) { rbest = r; kbest = k; }
                }
                double lo, hi;
                reachable(m, n, lo, hi);
                X(m, n) = std::clamp(users_.positions(kbest, 0), lo, hi);
            }
        }
        respace(X);
        out.push_back(X);
    }

    // Greedy phase-coherent placement: each waveguide stacks its antennas
    // coherently toward its nearest user, scanning the reachable interval at
    // sub-wavelength resolution.
    {
        MatrixXd X = motion_.X_init;
        const double step = geom_.lambda_c() / 50.0;
        for (int m = 0; m < M; ++m) {
            int anchor = 0;
            double rbest = std::numeric_limits<double>::infinity();
            for (int k = 0; k < K; ++k) {
                for (int n = 0; n < N; ++n) {
                    const double r = pa_user_distance(geom_, m, motion_.X_init(m, n),
                                                      users_.positions.row(k).transpose());
                    if (r < rbest) { rbest = r; anchor = k; }
                }
            }
            const Eigen::Vector2d user = users_.positions.row(anchor).transpose();
            cplx acc(0.0, 0.0);
            for (int n = 0; n < N; ++n) {
                double lo, hi;
                reachable(m, n, lo, hi);
                if (n > 0) lo = std::max(lo, X(m, n - 1) + geom_.delta_min);
                auto term_at = [&](double x) {
                    const double r = pa_user_distance(geom_, m, x, user);
                    return std::polar(1.0 / r, propagation_phase(geom_, m, x, user));
                };
                double best_val = -1.0;
                for (double x = lo; x <= hi + 0.5 * step; x += step)
                    best_val = std::max(best_val, std::abs(acc + term_at(std::min(x, hi))));
                // coherence peaks repeat every guided wavelength; take the one
                // nearest the preinstalled spot to keep the motion bill small
                double best_x = std::clamp(X(m, n), lo, std::max(lo, hi));
                double best_dist = std::numeric_limits<double>::infinity();
                for (double x = lo; x <= hi + 0.5 * step; x += step) {
                    const double xc = std::min(x, hi);
                    if (std::abs(acc + term_at(xc)) >= 0.99 * best_val) {
                        const double d = std::abs(xc - motion_.X_init(m, n));
                        if (d < best_dist) {
                            best_dist = d;
                            best_x = xc;
                        }
                    }
                }
                X(m, n) = best_x;
                acc += term_at(best_x);
            }
        }
        respace(X);
        out.push_back(X);
    }

    // drop duplicates (e.g. zero travel budget collapses all candidates)
    std::vector<MatrixXd> unique;
    for (const auto& X : out) {
        bool dup = false;
        for (const auto& Y : unique)
            if ((X - Y).cwiseAbs().maxCoeff() < 1e-9) dup = true;
        if (!dup) unique.push_back(X);
    }
    return unique;
}

conic::SolveStatus ContinuousSolver::solve_beamformer(const std::vector<VectorXcd>& channels,
                                                      const MatrixXd& alpha,
                                                      MatrixXcd& W) const {
    return min_power_beamformer(geom_, channels, alpha, users_, settings_.solver_tol, W);
}

conic::SolveStatus ContinuousSolver::update_beamformer(AdmmState& s) const {
    MatrixXcd W;
    const auto st = solve_beamformer(s.t, s.alpha, W);
    if (st == SolveStatus::optimal) s.W = std::move(W);
    return st;
}

int ContinuousSolver::update_t(AdmmState& s) const {
    const int M = geom_.M, N = geom_.N, K = geom_.K, MN = M * N;
    const double beta = geom_.beta();
    const VectorXd rvec = distance_vector(s.X);
    int fallbacks = 0;

    for (int k = 0; k < K; ++k) {
        // Work in units of beta: t = beta * that keeps all cone data O(1).
        // residual target b = (u_k - lambda_k/rho2)/beta against R_k that
        VectorXcd b(MN);
        for (int m = 0; m < M; ++m)
            for (int n = 0; n < N; ++n)
                b(geom_.flat(m, n)) = (std::polar(beta, s.theta(flat_kmn(k, m, n))) -
                                       s.lambda[static_cast<size_t>(k)](geom_.flat(m, n)) / s.rho2) /
                                      beta;

        ProblemBuilder pb;
        const int tr0 = pb.add_free(MN);
        const int ti0 = pb.add_free(MN);
        const int obj = pb.add_free(1);

        // objective ||R that - b||^2 <= obj
        std::vector<LinExpr> quad;
        quad.reserve(static_cast<size_t>(2 * MN));
        for (int i = 0; i < MN; ++i) {
            const double r = rvec(k * MN + i);
            quad.push_back(LinExpr(tr0 + i, r) += LinExpr(-b(i).real()));
            quad.push_back(LinExpr(ti0 + i, r) += LinExpr(-b(i).imag()));
        }
        pb.add_quad_le(quad, LinExpr(obj, 1.0));
        pb.add_objective(obj, 1.0);

        // linearized SINR restriction at the previous proxy, in that units
        // coefficient of conj(that_mn) in that^H A w_j is alpha_mn * w(m, j)
        auto gain_re = [&](int j) {
            LinExpr e;
            for (int m = 0; m < M; ++m)
                for (int n = 0; n < N; ++n) {
                    const cplx a = s.alpha(m, n) * s.W(m, j);
                    e.add(tr0 + geom_.flat(m, n), a.real());
                    e.add(ti0 + geom_.flat(m, n), a.imag());
                }
            return e;
        };
        auto gain_im = [&](int j) {
            LinExpr e;
            for (int m = 0; m < M; ++m)
                for (int n = 0; n < N; ++n) {
                    const cplx a = s.alpha(m, n) * s.W(m, j);
                    e.add(tr0 + geom_.flat(m, n), a.imag());
                    e.add(ti0 + geom_.flat(m, n), -a.real());
                }
            return e;
        };

        const cplx cbar =
            beam_gain(geom_, s.t[static_cast<size_t>(k)], s.alpha, s.W.col(k)) / beta;
        const double gam = users_.gamma(k);
        LinExpr lin;
        {
            LinExpr re = gain_re(k), im = gain_im(k);
            re *= 2.0 * cbar.real();
            im *= 2.0 * cbar.imag();
            lin += re;
            lin += im;
            lin.constant += -std::norm(cbar) - users_.sigma2(k) * gam / (beta * beta);
        }
        std::vector<LinExpr> iquad;
        for (int j = 0; j < K; ++j) {
            if (j == k) continue;
            LinExpr re = gain_re(j), im = gain_im(j);
            re *= std::sqrt(gam);
            im *= std::sqrt(gam);
            iquad.push_back(re);
            iquad.push_back(im);
        }
        pb.add_quad_le(iquad, lin);

        SolveOptions opts;
        opts.tol = settings_.solver_tol;
        const auto sol = conic::solve(pb.build(), opts);
        if (!sol.ok()) {
            ++fallbacks; // previous proxy stays feasible for the exact constraint
            continue;
        }
        VectorXcd tk(MN);
        for (int i = 0; i < MN; ++i) tk(i) = beta * cplx(sol.x(tr0 + i), sol.x(ti0 + i));
        s.t[static_cast<size_t>(k)] = std::move(tk);
    }
    return fallbacks;
}

void ContinuousSolver::update_alpha(AdmmState& s) const {
    const int M = geom_.M, N = geom_.N, K = geom_.K;

    // quadratic-transform auxiliaries at the current ratios
    VectorXd q(K);
    std::vector<cplx> c0(static_cast<size_t>(K));
    double qmax = 0.0;
    for (int k = 0; k < K; ++k) {
        const VectorXcd row = waveguide_channel_row(geom_, s.t[static_cast<size_t>(k)], s.alpha);
        double interference = 0.0;
        for (int j = 0; j < K; ++j) {
            const double p = std::norm(cplx(row.transpose() * s.W.col(j)));
            if (j != k) interference += p;
        }
        c0[static_cast<size_t>(k)] = row.transpose() * s.W.col(k);
        q(k) = std::abs(c0[static_cast<size_t>(k)]) / (interference + users_.sigma2(k));
        qmax = std::max(qmax, q(k));
    }
    if (qmax < 1e-30) return; // degenerate (W = 0): objective is flat, keep ratios

    // normalize gains so cone data sits near O(1)
    double sc = 0.0;
    for (int k = 0; k < K; ++k) sc = std::max(sc, std::abs(c0[static_cast<size_t>(k)]));
    if (sc <= 0.0) return;

    ProblemBuilder pb;
    const int a0 = pb.add_nonneg(M * N);
    const int psi0 = pb.add_free(K); // psi in units of sc
    const int quad = pb.add_free(1);

    // per-user gain coefficient of alpha_mn toward beam j: conj(t_mn) w(m,j),
    // divided by the gain scale
    auto gain = [&](int k, int j) {
        std::vector<cplx> e(static_cast<size_t>(M * N));
        for (int m = 0; m < M; ++m)
            for (int n = 0; n < N; ++n)
                e[static_cast<size_t>(geom_.flat(m, n))] =
                    std::conj(s.t[static_cast<size_t>(k)](geom_.flat(m, n))) * s.W(m, j) / sc;
        return e;
    };
    // weights q~ = q * sc make the transformed objective scale-free
    VectorXd qn = q * sc;
    const double obj_scale = 1.0 / std::max(1.0, qn.maxCoeff() * qn.maxCoeff());

    std::vector<LinExpr> qlist;
    for (int k = 0; k < K; ++k) {
        for (int j = 0; j < K; ++j) {
            if (j == k) continue;
            const auto e = gain(k, j);
            LinExpr re, im;
            for (int i = 0; i < M * N; ++i) {
                re.add(a0 + i, qn(k) * e[static_cast<size_t>(i)].real());
                im.add(a0 + i, qn(k) * e[static_cast<size_t>(i)].imag());
            }
            re *= std::sqrt(obj_scale);
            im *= std::sqrt(obj_scale);
            qlist.push_back(re);
            qlist.push_back(im);
        }
    }
    if (!qlist.empty()) {
        pb.add_quad_le(qlist, LinExpr(quad, 1.0));
        pb.add_objective(quad, 1.0);
    }

    for (int m = 0; m < M; ++m) {
        std::vector<LinExpr> soc;
        soc.push_back(LinExpr(1.0));
        for (int n = 0; n < N; ++n) soc.push_back(LinExpr(a0 + geom_.flat(m, n), 1.0));
        pb.add_soc_of(soc);
    }

    for (int k = 0; k < K; ++k) {
        const auto e = gain(k, k);
        const cplx c = c0[static_cast<size_t>(k)] / sc;
        LinExpr lin(-std::norm(c));
        for (int i = 0; i < M * N; ++i) {
            const cplx ei = e[static_cast<size_t>(i)];
            lin.add(a0 + i, 2.0 * (c.real() * ei.real() + c.imag() * ei.imag()));
        }
        pb.add_quad_le({LinExpr(psi0 + k, 1.0)}, lin);
        pb.add_objective(psi0 + k, -2.0 * qn(k) * obj_scale);
    }

    SolveOptions opts;
    opts.tol = settings_.solver_tol;
    const auto sol = conic::solve(pb.build(), opts);
    if (!sol.ok()) return; // keep previous ratios

    MatrixXd alpha(M, N);
    for (int m = 0; m < M; ++m)
        for (int n = 0; n < N; ++n)
            alpha(m, n) = std::max(0.0, sol.x(a0 + geom_.flat(m, n)));
    for (int m = 0; m < M; ++m) {
        const double nrm = alpha.row(m).norm();
        if (nrm > 1.0) alpha.row(m) /= nrm;
    }
    s.alpha = alpha;
}

void ContinuousSolver::update_theta(AdmmState& s) const {
    const double beta = geom_.beta();
    const VectorXd phi = phase_vector(s.X);
    const VectorXd rvec = distance_vector(s.X);
    const int MN = geom_.M * geom_.N;
    for (int k = 0; k < geom_.K; ++k) {
        for (int i = 0; i < MN; ++i) {
            const int idx = k * MN + i;
            const cplx rt = rvec(idx) * s.t[static_cast<size_t>(k)](i) +
                            s.lambda[static_cast<size_t>(k)](i) / s.rho2;
            const double L = lipschitz_constant(beta, rt);
            const double g = phase_penalty_gradient(beta, rt, s.theta(idx));
            s.theta(idx) = (2.0 * s.rho1 * (phi(idx) - s.mu(idx) / s.rho1) +
                            s.rho2 * L * s.theta(idx) - s.rho2 * g) /
                           (2.0 * s.rho1 + s.rho2 * L);
        }
    }
}

void ContinuousSolver::update_positions(AdmmState& s) const {
    const int M = geom_.M, N = geom_.N, K = geom_.K;
    const double beta = geom_.beta();
    const double wq = geom_.wavenumber();
    const double cmot = motion_.P_motor / ((motion_.T1 + motion_.T2) * motion_.v);
    // normalize the objective by rho1/2 (the dominant phase-consistency
    // weight) so cone data stays O(1) as the penalties grow
    const double scale = 2.0 / s.rho1;
    const double wpen = s.rho2 / s.rho1; // weight of the proxy-penalty terms

    ProblemBuilder pb;
    const int x0 = pb.add_free(M * N);
    const int xi0 = pb.add_nonneg(K * M * N);
    const int e0 = pb.add_nonneg(M * N); // |x - x_init| epigraph
    const int qv = pb.add_free(1);

    std::vector<LinExpr> quad;
    quad.reserve(static_cast<size_t>(2 * K * M * N));

    for (int m = 0; m < M; ++m) {
        for (int n = 0; n < N; ++n) {
            const int xi = x0 + geom_.flat(m, n);
            const double xinit = motion_.X_init(m, n);
            // motion epigraph + movement limit
            pb.add_ge0(LinExpr(e0 + geom_.flat(m, n), 1.0).add(xi, -1.0) += LinExpr(xinit));
            pb.add_ge0(LinExpr(e0 + geom_.flat(m, n), 1.0).add(xi, 1.0) += LinExpr(-xinit));
            pb.add_le0(LinExpr(e0 + geom_.flat(m, n), 1.0) += LinExpr(-motion_.max_travel()));
            pb.add_objective(e0 + geom_.flat(m, n), scale * cmot);
            // waveguide range
            pb.add_ge0(LinExpr(xi, 1.0));
            pb.add_le0(LinExpr(xi, 1.0) += LinExpr(-geom_.D));
            if (n > 0)
                pb.add_ge0(LinExpr(xi, 1.0).add(x0 + geom_.flat(m, n - 1), -1.0) +=
                           LinExpr(-geom_.delta_min));
        }
    }

    for (int k = 0; k < K; ++k) {
        const Eigen::Vector2d user = users_.positions.row(k).transpose();
        for (int m = 0; m < M; ++m) {
            const double dy = geom_.y[static_cast<size_t>(m)] - user(1);
            const double dconst = std::sqrt(dy * dy + geom_.h * geom_.h);
            for (int n = 0; n < N; ++n) {
                const int idx = flat_kmn(k, m, n);
                const int xi = x0 + geom_.flat(m, n);
                const int xiv = xi0 + idx;
                const double ktheta = s.theta(idx) + s.mu(idx) / s.rho1;
                const double x_prev = s.X(m, n);
                const double r_prev = pa_user_distance(geom_, m, x_prev, user);
                const double slope = (x_prev - user(0)) / r_prev;

                // C10a as a second-order cone on the exact distance
                {
                    std::vector<LinExpr> soc;
                    LinExpr top;
                    top.add(xiv, 1.0 / wq);
                    top.add(xi, -geom_.n_eff);
                    top.constant = ktheta / wq;
                    soc.push_back(top);
                    soc.push_back(LinExpr(xi, 1.0) += LinExpr(-user(0)));
                    soc.push_back(LinExpr(dconst));
                    pb.add_soc_of(soc);
                }
                // C10b with the tangent lower bound of the distance
                {
                    LinExpr lhs;
                    lhs.add(xi, wq * (slope + geom_.n_eff));
                    lhs.add(xiv, 1.0);
                    lhs.constant = wq * (r_prev - slope * x_prev) - ktheta;
                    pb.add_ge0(lhs);
                }
                // penalty expansion around the residual target
                const cplx tkmn = s.t[static_cast<size_t>(k)](geom_.flat(m, n));
                const cplx lam = s.lambda[static_cast<size_t>(k)](geom_.flat(m, n));
                const cplx Lam = lam / s.rho2 - std::polar(beta, s.theta(idx));
                const double amag = std::abs(tkmn) * std::sqrt(wpen);
                const double bcoef = wpen * 2.0 * std::abs(Lam) * std::abs(tkmn) *
                                     std::cos(std::arg(tkmn) - std::arg(Lam));
                quad.push_back(LinExpr(xi, amag) += LinExpr(-amag * user(0)));
                if (bcoef >= 0.0) {
                    const int rv = pb.add_free(1);
                    std::vector<LinExpr> soc;
                    soc.push_back(LinExpr(rv, 1.0));
                    soc.push_back(LinExpr(xi, 1.0) += LinExpr(-user(0)));
                    soc.push_back(LinExpr(dconst));
                    pb.add_soc_of(soc);
                    pb.add_objective(rv, bcoef);
                } else {
                    LinExpr rt;
                    rt.add(xi, slope);
                    rt.constant = r_prev - slope * x_prev;
                    rt *= bcoef;
                    pb.add_objective(rt);
                }
                quad.push_back(LinExpr(xiv, 1.0));
            }
        }
    }
    pb.add_quad_le(quad, LinExpr(qv, 1.0));
    pb.add_objective(qv, 1.0);

    SolveOptions opts;
    opts.tol = settings_.solver_tol;
    const auto sol = conic::solve(pb.build(), opts);
    if (!sol.ok()) return; // previous positions stay feasible

    MatrixXd X(M, N);
    for (int m = 0; m < M; ++m) {
        for (int n = 0; n < N; ++n) {
            double x = sol.x(x0 + geom_.flat(m, n));
            const double lo = std::max(0.0, motion_.X_init(m, n) - motion_.max_travel());
            const double hi = std::min(geom_.D, motion_.X_init(m, n) + motion_.max_travel());
            X(m, n) = std::clamp(x, lo, hi);
        }
    }
    s.X = X;
}

void ContinuousSolver::update_duals(AdmmState& s) const {
    const VectorXd phi = phase_vector(s.X);
    const VectorXd rvec = distance_vector(s.X);
    const double beta = geom_.beta();
    const int MN = geom_.M * geom_.N;
    s.mu += s.rho1 * (s.theta - phi);
    for (int k = 0; k < geom_.K; ++k) {
        for (int i = 0; i < MN; ++i) {
            const int idx = k * MN + i;
            const cplx resid = rvec(idx) * s.t[static_cast<size_t>(k)](i) -
                               std::polar(beta, s.theta(idx));
            s.lambda[static_cast<size_t>(k)](i) += s.rho2 * resid;
        }
    }
}

void ContinuousSolver::scale_penalties(AdmmState& s) const {
    s.rho1 = std::min(settings_.epsilon * s.rho1, settings_.rho_max);
    s.rho2 = std::min(settings_.epsilon * s.rho2, settings_.rho_max);
}

int ContinuousSolver::sweep_once(AdmmState& s) const {
    update_beamformer(s);
    const int fb = update_t(s);
    if (settings_.optimize_alpha) update_alpha(s);
    update_theta(s);
    update_positions(s);
    return fb;
}

double ContinuousSolver::consensus_residual(const AdmmState& s) const {
    const VectorXd phi = phase_vector(s.X);
    const VectorXd rvec = distance_vector(s.X);
    const double beta = geom_.beta();
    const int MN = geom_.M * geom_.N;
    double res = (s.theta - phi).squaredNorm();
    for (int k = 0; k < geom_.K; ++k)
        for (int i = 0; i < MN; ++i) {
            const int idx = k * MN + i;
            res += std::norm(rvec(idx) * s.t[static_cast<size_t>(k)](i) -
                             std::polar(beta, s.theta(idx)));
        }
    return res;
}

double ContinuousSolver::objective(const AdmmState& s) const {
    return average_power(s.W, s.X, motion_);
}

double ContinuousSolver::augmented_lagrangian(const AdmmState& s) const {
    const VectorXd phi = phase_vector(s.X);
    const VectorXd rvec = distance_vector(s.X);
    const double beta = geom_.beta();
    const int MN = geom_.M * geom_.N;
    double L = objective(s);
    L += 0.5 * s.rho1 * (s.theta - phi + s.mu / s.rho1).squaredNorm();
    L -= 0.5 / s.rho1 * s.mu.squaredNorm();
    for (int k = 0; k < geom_.K; ++k) {
        for (int i = 0; i < MN; ++i) {
            const int idx = k * MN + i;
            const cplx resid = rvec(idx) * s.t[static_cast<size_t>(k)](i) -
                               std::polar(beta, s.theta(idx)) +
                               s.lambda[static_cast<size_t>(k)](i) / s.rho2;
            L += 0.5 * s.rho2 * std::norm(resid);
            L -= 0.5 / s.rho2 * std::norm(s.lambda[static_cast<size_t>(k)](i));
        }
    }
    return L;
}

SolveReport ContinuousSolver::run() const {
    using clock = std::chrono::steady_clock;
    const auto start = clock::now();
    const auto candidates = initial_placements();
    SolveReport best;
    bool have = false;
    for (const auto& X0 : candidates) {
        SolveReport rep = run_from(X0);
        // Pick by the optimization objective (motion-free for the
        // transmit-only design); ties and failures resolve to earlier
        // candidates, keeping the preinstalled run the default.
        const double score = average_power(rep.final_W, rep.final_state.X, motion_);
        const double best_score =
            have ? average_power(best.final_W, best.final_state.X, motion_)
                 : std::numeric_limits<double>::infinity();
        const bool ok = rep.usable() && rep.audit.feasible(1e-6);
        const bool best_ok = have && best.usable() && best.audit.feasible(1e-6);
        if (!have || (ok && !best_ok) || (ok == best_ok && score < best_score)) {
            best = std::move(rep);
            have = true;
        }
    }
    best.wall_time_s = std::chrono::duration<double>(clock::now() - start).count();
    return best;
}

SolveReport ContinuousSolver::run_from(const MatrixXd& X0) const {
    using clock = std::chrono::steady_clock;
    const auto start = clock::now();
    auto elapsed = [&] {
        return std::chrono::duration<double>(clock::now() - start).count();
    };

    SolveReport rep;
    rep.algorithm = settings_.optimize_alpha
                        ? (settings_.include_motion_cost ? "continuous" : "transmit-only-pass")
                        : "equal-radiation-pass";

    AdmmState s = init_state_at(X0);
    MatrixXd alpha_backup = s.alpha;
    double f_prev = std::numeric_limits<double>::infinity();
    RunStatus status = RunStatus::iteration_limit;

    for (int it = 1; it <= settings_.max_iter; ++it) {
        s.iter = it;
        auto wst = update_beamformer(s);
        if (wst == SolveStatus::primal_infeasible) {
            if (it == 1) {
                rep.status = RunStatus::qos_infeasible;
                rep.iterations = 0;
                rep.final_state = {s.X, s.alpha};
                rep.final_W = s.W;
                rep.wall_time_s = elapsed();
                return rep;
            }
            // a ratio update can overshoot the proxies' feasible set; back out
            s.alpha = alpha_backup;
            wst = update_beamformer(s);
            if (wst == SolveStatus::primal_infeasible) {
                status = RunStatus::qos_infeasible;
                break;
            }
        }
        rep.t_update_fallbacks += update_t(s);
        alpha_backup = s.alpha;
        if (settings_.optimize_alpha) update_alpha(s);
        update_theta(s);
        update_positions(s);

        const double residual = consensus_residual(s);
        update_duals(s);
        scale_penalties(s);

        const double f1 = objective(s);
        IterationRecord rec;
        rec.iteration = it;
        rec.objective = f1;
        rec.residual = residual;
        rec.penalty = s.rho1;
        rec.wall_time_s = elapsed();
        {
            AntennaState st{s.X, s.alpha};
            rec.max_violation = audit_feasibility(geom_, motion_, users_, st, s.W).worst();
        }
        rep.trajectory.push_back(rec);

        const double rel_change = std::abs(f1 - f_prev) / std::max(f_prev, 1e-30);
        if (residual <= settings_.varsigma1 && rel_change <= settings_.varsigma2) {
            status = RunStatus::converged;
            rep.iterations = it;
            break;
        }
        f_prev = f1;
        rep.iterations = it;
    }

    // Final design: beamformer re-solved against the true channels of the
    // final placement so the audit holds without proxy error.
    const auto channels = effective_channels(geom_, s.X, users_);
    MatrixXcd Wf;
    if (min_power_beamformer(geom_, channels, s.alpha, users_, settings_.solver_tol, Wf) ==
        SolveStatus::optimal) {
        s.W = std::move(Wf);
    } else if (status == RunStatus::converged) {
        status = RunStatus::qos_infeasible;
    }

    rep.status = status;
    rep.final_state = {s.X, s.alpha};
    rep.final_W = s.W;
    rep.audit = audit_feasibility(geom_, report_motion_, users_, rep.final_state, s.W);
    // Reported power always includes the true motion cost, even when the
    // optimization objective excluded it.
    rep.audited_power_w = average_power(s.W, s.X, report_motion_);
    rep.audited_power_dbm = watts_to_dbm(rep.audited_power_w);
    rep.wall_time_s = elapsed();
    return rep;
}

} // namespace passkit::admm
