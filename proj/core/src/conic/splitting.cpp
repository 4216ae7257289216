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
//
// Operator-splitting solver on the homogeneous self-dual embedding
// (O'Donoghue et al. style). The primal-form program
//     min c'x  s.t.  A x = b,  x in K
// is rewritten as
//     min c'x  s.t.  At x + s = bt,   At = [A; -Sel],  bt = [b; 0],
// with s in C = {0}^m x K. Each iteration applies one cached sparse
// factorization solve and one cone projection, so PSD blocks of a few
// hundred rows stay tractable. Accuracy is moderate (1e-6..1e-7); the
// interior-point backend covers the high-accuracy SOC work.

#include "passkit/conic/solver_backends.hpp"

#include "passkit/conic/embed.hpp"

#include <Eigen/SparseCholesky>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#ifdef PASSKIT_HAVE_LAPACKE
#include <lapacke.h>
#endif

namespace passkit::conic {

namespace {

constexpr double kRelax = 1.5;
constexpr int kCheckEvery = 10;

void project_soc(Eigen::Ref<Eigen::VectorXd> u) {
    const int d = static_cast<int>(u.size());
    const double t = u(0);
    const double nrm = u.tail(d - 1).norm();
    if (nrm <= t) return;
    if (nrm <= -t) {
        u.setZero();
        return;
    }
    const double a = 0.5 * (1.0 + t / nrm);
    u(0) = a * nrm;
    u.tail(d - 1) *= a;
}

// Eigendecomposition-based projection onto the PSD cone in svec coordinates.
void project_psd(Eigen::Ref<Eigen::VectorXd> u, int side) {
    Eigen::MatrixXd S = svec_unpack(u, side);
#ifdef PASSKIT_HAVE_LAPACKE
    if (side >= 16) {
        Eigen::VectorXd evals(side);
        // LAPACK overwrites S with eigenvectors (column-major, lower)
        const int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'L', side, S.data(),
                                        side, evals.data());
        if (info == 0) {
            Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(side, side);
            for (int i = 0; i < side; ++i) {
                if (evals(i) > 0.0)
                    acc.noalias() += evals(i) * S.col(i) * S.col(i).transpose();
            }
            u = svec_pack(acc);
            return;
        }
        S = svec_unpack(u, side); // restore and fall through
    }
#endif
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(S);
    Eigen::VectorXd evals = eig.eigenvalues().cwiseMax(0.0);
    Eigen::MatrixXd proj =
        eig.eigenvectors() * evals.asDiagonal() * eig.eigenvectors().transpose();
    u = svec_pack(proj);
}

struct ConeRows {
    // rows of the SCS-form slack vector, after the m equality rows
    std::vector<Segment> cones; // offsets relative to the cone-row block
    int total = 0;
};

void project_cone_rows(const ConeRows& rows, Eigen::Ref<Eigen::VectorXd> u) {
    for (const auto& seg : rows.cones) {
        switch (seg.kind) {
        case SegmentKind::nonneg:
            u.segment(seg.offset, seg.dim) = u.segment(seg.offset, seg.dim).cwiseMax(0.0);
            break;
        case SegmentKind::soc:
            project_soc(u.segment(seg.offset, seg.dim));
            break;
        case SegmentKind::psd:
            project_psd(u.segment(seg.offset, seg.dim), seg.side);
            break;
        case SegmentKind::free_vars:
            break;
        }
    }
}

} // namespace

ConicSolution solve_splitting(const ConicProblem& problem, const SolveOptions& options) {
    const int n = problem.num_vars();
    const int m = problem.num_rows();
    const double tol = options.tol > 0 ? options.tol : 1e-6;
    const int max_iter = options.max_iter > 0 ? options.max_iter : 50000;

    // cone rows: one per conic coordinate of x, in segment order
    ConeRows rows;
    std::vector<int> cone_var; // cone row -> variable
    for (const auto& seg : problem.cone.segments) {
        if (seg.kind == SegmentKind::free_vars) continue;
        Segment r = seg;
        r.offset = rows.total;
        rows.cones.push_back(r);
        for (int i = 0; i < seg.dim; ++i) cone_var.push_back(seg.offset + i);
        rows.total += seg.dim;
    }
    const int mt = m + rows.total;

    // Build At = [A; -Sel] with Ruiz equilibration. Row scales inside a
    // SOC/PSD block stay uniform so cone membership is preserved; columns are
    // free because x is unconstrained in this form.
    Eigen::SparseMatrix<double> At(mt, n);
    {
        std::vector<Eigen::Triplet<double>> trip;
        trip.reserve(problem.A.nonZeros() + cone_var.size());
        for (int k = 0; k < problem.A.outerSize(); ++k)
            for (Eigen::SparseMatrix<double>::InnerIterator it(problem.A, k); it; ++it)
                trip.emplace_back(static_cast<int>(it.row()), static_cast<int>(it.col()),
                                  it.value());
        for (int j = 0; j < rows.total; ++j)
            trip.emplace_back(m + j, cone_var[static_cast<size_t>(j)], -1.0);
        At.setFromTriplets(trip.begin(), trip.end());
        At.makeCompressed();
    }

    Eigen::VectorXd row_scale = Eigen::VectorXd::Ones(mt);
    Eigen::VectorXd col_scale = Eigen::VectorXd::Ones(n);
    for (int round = 0; round < 8; ++round) {
        Eigen::VectorXd rmax = Eigen::VectorXd::Zero(mt);
        Eigen::VectorXd cmax = Eigen::VectorXd::Zero(n);
        for (int k = 0; k < At.outerSize(); ++k) {
            for (Eigen::SparseMatrix<double>::InnerIterator it(At, k); it; ++it) {
                const double a = std::abs(it.value());
                rmax(it.row()) = std::max(rmax(it.row()), a);
                cmax(it.col()) = std::max(cmax(it.col()), a);
            }
        }
        Eigen::VectorXd rdiv = Eigen::VectorXd::Ones(mt);
        for (int i = 0; i < m; ++i)
            if (rmax(i) > 0.0) rdiv(i) = std::sqrt(rmax(i));
        for (const auto& seg : rows.cones) {
            if (seg.kind == SegmentKind::nonneg) {
                for (int i = 0; i < seg.dim; ++i) {
                    const double g = rmax(m + seg.offset + i);
                    if (g > 0.0) rdiv(m + seg.offset + i) = std::sqrt(g);
                }
            } else {
                const double g = rmax.segment(m + seg.offset, seg.dim).maxCoeff();
                if (g > 0.0)
                    rdiv.segment(m + seg.offset, seg.dim).setConstant(std::sqrt(g));
            }
        }
        Eigen::VectorXd cdiv = Eigen::VectorXd::Ones(n);
        for (int j = 0; j < n; ++j)
            if (cmax(j) > 0.0) cdiv(j) = std::sqrt(cmax(j));
        for (int k = 0; k < At.outerSize(); ++k)
            for (Eigen::SparseMatrix<double>::InnerIterator it(At, k); it; ++it)
                it.valueRef() /= rdiv(it.row()) * cdiv(it.col());
        row_scale = row_scale.cwiseQuotient(rdiv);
        col_scale = col_scale.cwiseQuotient(cdiv);
    }

    Eigen::VectorXd bt = Eigen::VectorXd::Zero(mt);
    bt.head(m) = problem.b;
    bt = row_scale.cwiseProduct(bt);
    Eigen::VectorXd c = col_scale.cwiseProduct(problem.c);
    const double b_scale = 1.0 / std::max(1.0, bt.norm());
    const double c_scale = 1.0 / std::max(1.0, c.norm());
    bt *= b_scale;
    c *= c_scale;
    const double bnorm = 1.0 + bt.norm();
    const double cnorm = 1.0 + c.norm();

    // Cached factorization of I + At' At (SPD).
    Eigen::SparseMatrix<double> normal = Eigen::SparseMatrix<double>(At.transpose()) * At;
    for (int i = 0; i < n; ++i) normal.coeffRef(i, i) += 1.0;
    normal.makeCompressed();
    Eigen::SimplicialLLT<Eigen::SparseMatrix<double>> llt(normal);
    ConicSolution out;
    if (llt.info() != Eigen::Success) {
        out.status = SolveStatus::numerical_limit;
        return out;
    }

    auto solve_M = [&](const Eigen::VectorXd& w1, const Eigen::VectorXd& w2) {
        // M = [[I, At'],[-At, I]]
        Eigen::VectorXd z1 = llt.solve(w1 - At.transpose() * w2);
        Eigen::VectorXd z2 = w2 + At * z1;
        return std::make_pair(std::move(z1), std::move(z2));
    };

    Eigen::VectorXd h(n + mt);
    h.head(n) = c;
    h.tail(mt) = bt;
    const auto [g1, g2] = solve_M(c, bt);
    Eigen::VectorXd g(n + mt);
    g.head(n) = g1;
    g.tail(mt) = g2;
    const double hg = 1.0 + h.dot(g);

    // iterates u = (x, y, tau), v = (0, s, kappa)
    Eigen::VectorXd ux = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd uy = Eigen::VectorXd::Zero(mt);
    double utau = 1.0;
    Eigen::VectorXd vx = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd vy = Eigen::VectorXd::Zero(mt);
    double vkappa = 1.0;

    if (options.warm_start && options.warm_start->x.size() == n) {
        ux = options.warm_start->x.cwiseQuotient(col_scale) * b_scale;
        if (options.warm_start->y.size() == m)
            uy.head(m) = options.warm_start->y.cwiseQuotient(row_scale.head(m)) * c_scale;
        for (int j = 0; j < rows.total; ++j)
            vy(m + j) = row_scale(m + j) * b_scale *
                        options.warm_start->x(cone_var[static_cast<size_t>(j)]);
        vkappa = 0.0;
    }

    SolveStatus status = SolveStatus::iteration_limit;
    int iter = 0;
    double best = std::numeric_limits<double>::infinity();
    Eigen::VectorXd best_x, best_y;
    double final_res = std::numeric_limits<double>::infinity();

    for (iter = 1; iter <= max_iter; ++iter) {
        // linear step: ut = (I+Q)^{-1} (u+v)
        Eigen::VectorXd w1 = ux + vx;
        Eigen::VectorXd w2 = uy + vy;
        const double w3 = utau + vkappa;
        const auto [t1, t2] = solve_M(w1 - c * w3, w2 - bt * w3);
        Eigen::VectorXd tfull(n + mt);
        tfull.head(n) = t1;
        tfull.tail(mt) = t2;
        const double corr = h.dot(tfull) / hg;
        Eigen::VectorXd zx = t1 - g1 * corr;
        Eigen::VectorXd zy = t2 - g2 * corr;
        const double ztau = w3 + c.dot(zx) + bt.dot(zy);

        // over-relaxation
        const Eigen::VectorXd rx = kRelax * zx + (1.0 - kRelax) * ux;
        const Eigen::VectorXd ry = kRelax * zy + (1.0 - kRelax) * uy;
        const double rtau = kRelax * ztau + (1.0 - kRelax) * utau;

        // cone projection of u, Moreau update of v
        Eigen::VectorXd px = rx - vx; // free block: projection is identity
        Eigen::VectorXd py = ry - vy;
        project_cone_rows(rows, py.tail(rows.total));
        double ptau = std::max(0.0, rtau - vkappa);

        vx += px - rx;
        vy += py - ry;
        vkappa += ptau - rtau;
        ux = std::move(px);
        uy = std::move(py);
        utau = ptau;

        if (iter % kCheckEvery != 0 && iter != max_iter) continue;

        const double tau = utau;
        if (tau > 1e-9) {
            const Eigen::VectorXd x = ux / tau;
            const Eigen::VectorXd y = uy / tau;
            Eigen::VectorXd s = Eigen::VectorXd::Zero(mt);
            s.tail(rows.total) = vy.tail(rows.total) / tau;
            const double pres = (At * x + s - bt).norm() / bnorm;
            const double dres = (At.transpose() * y + c).norm() / cnorm;
            const double cx = c.dot(x);
            const double by = bt.dot(y);
            const double gap = std::abs(cx + by) / (1.0 + std::abs(cx) + std::abs(by));
            const double metric = std::max({pres, dres, gap});
            final_res = metric;
            if (metric < best) {
                best = metric;
                best_x = x;
                best_y = y;
            }
            if (pres <= tol && dres <= tol && gap <= tol) {
                status = SolveStatus::optimal;
                best_x = x;
                best_y = y;
                break;
            }
        }

        // certificates from the unnormalized iterate
        const double bty = bt.dot(uy);
        if (bty < -1e-12) {
            const double res = (At.transpose() * uy).norm();
            if (res * std::max(1.0, bt.norm()) <= -bty * tol) {
                status = SolveStatus::primal_infeasible;
                break;
            }
        }
        const double ctx = c.dot(ux);
        if (ctx < -1e-12) {
            Eigen::VectorXd s = Eigen::VectorXd::Zero(mt);
            s.tail(rows.total) = vy.tail(rows.total);
            const double res = (At * ux + s).norm();
            if (res * std::max(1.0, c.norm()) <= -ctx * tol) {
                status = SolveStatus::dual_infeasible;
                break;
            }
        }
    }

    out.iterations = std::min(iter, max_iter);
    out.max_residual = final_res;
    out.status = status;
    if (status == SolveStatus::primal_infeasible || status == SolveStatus::dual_infeasible)
        return out;
    if (best_x.size() == 0) {
        out.status = SolveStatus::numerical_limit;
        return out;
    }
    out.x = col_scale.cwiseProduct(best_x) / b_scale;
    out.y = row_scale.head(m).cwiseProduct(best_y.head(m)) / c_scale;
    out.objective = problem.c.dot(out.x);
    return out;
}

} // namespace passkit::conic
