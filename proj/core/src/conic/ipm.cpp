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
// Primal-dual interior-point method on the homogeneous self-dual embedding
// for cone programs with free, nonnegative and second-order cone segments
// (PSD blocks are handled by the splitting backend).
//
// Internally the primal-form problem
//     min c'x  s.t.  A x = b,  x in K
// is treated in the form
//     min c'x  s.t.  A x = b,  G x + s = 0,  s in K_bar,
// where G selects the conic coordinates of x (G = -Sel) so that s equals the
// conic part of x. Newton directions come from one sparse quasi-definite KKT
// factorization per iteration with Nesterov-Todd scaling blocks:
//
//     [ dI   A'   G'      ] [dx]   [rx]
//     [ A   -dI   0       ] [dy] = [ry]
//     [ G    0   -W^2-dI  ] [dz]   [rz]
//
// Static regularization d keeps the LDL' factorization stable; solutions are
// polished with iterative refinement against the unregularized system.

#include "passkit/conic/solver_backends.hpp"

#include <Eigen/SparseCholesky>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace passkit::conic {

namespace {

constexpr double kStaticReg = 1e-8;
constexpr double kStepDamp = 0.99;
constexpr int kRefineRounds = 2;

struct SocScaling {
    Eigen::VectorXd wbar; // scaling point, jdet = 1
    Eigen::VectorXd v;    // Jordan square root of wbar
    double eta = 1.0;     // magnitude (jdet(s)/jdet(z))^(1/4)
};

// Jordan-algebra helpers for a single second-order cone.
double jdet(const Eigen::VectorXd& u) {
    return u(0) * u(0) - u.tail(u.size() - 1).squaredNorm();
}

Eigen::VectorXd jmul(const Eigen::VectorXd& u, const Eigen::VectorXd& v) {
    Eigen::VectorXd r(u.size());
    r(0) = u.dot(v);
    r.tail(r.size() - 1) =
        u(0) * v.tail(v.size() - 1) + v(0) * u.tail(u.size() - 1);
    return r;
}

// Solves lambda o x = r.
Eigen::VectorXd jdiv(const Eigen::VectorXd& lambda, const Eigen::VectorXd& r) {
    const auto l1 = lambda.tail(lambda.size() - 1);
    const auto r1 = r.tail(r.size() - 1);
    const double det = jdet(lambda);
    Eigen::VectorXd x(lambda.size());
    x(0) = (lambda(0) * r(0) - l1.dot(r1)) / det;
    x.tail(x.size() - 1) = (r1 - x(0) * l1) / lambda(0);
    return x;
}

// P(v) u = 2 v (v'u) - J u  with jdet(v) = 1.
Eigen::VectorXd quad_rep_apply(const Eigen::VectorXd& v, const Eigen::VectorXd& u) {
    const double vu = v.dot(u);
    Eigen::VectorXd r = 2.0 * vu * v;
    r(0) -= u(0);
    r.tail(r.size() - 1) += u.tail(u.size() - 1);
    return r;
}

Eigen::VectorXd jinv(const Eigen::VectorXd& v) { // for jdet(v) = 1
    Eigen::VectorXd r = v;
    r.tail(r.size() - 1) = -r.tail(r.size() - 1);
    return r;
}

// Largest step a such that u + a*du stays in the cone (infinite if never
// leaving). u is strictly interior.
double max_step_soc(const Eigen::VectorXd& u, const Eigen::VectorXd& du) {
    const auto u1 = u.tail(u.size() - 1);
    const auto d1 = du.tail(du.size() - 1);
    const double a = du(0) * du(0) - d1.squaredNorm();
    const double b = 2.0 * (u(0) * du(0) - u1.dot(d1));
    const double c = u(0) * u(0) - u1.squaredNorm();
    // first positive root of a t^2 + b t + c = 0
    const double inf = std::numeric_limits<double>::infinity();
    if (std::abs(a) < 1e-300) {
        if (b >= 0.0) return inf;
        return -c / b;
    }
    const double disc = b * b - 4.0 * a * c;
    if (disc < 0.0) return a > 0.0 ? inf : 0.0;
    const double sq = std::sqrt(disc);
    // numerically stable root pair
    const double q = -0.5 * (b + (b >= 0.0 ? sq : -sq));
    double r1 = q / a;
    double r2 = (q != 0.0) ? c / q : inf;
    if (r1 > r2) std::swap(r1, r2);
    if (r1 > 0.0) return r1;
    if (r2 > 0.0) return r2;
    return inf;
}

struct ConeView {
    // conic coordinates of x in segment order (nonneg first block kept as
    // segments appear; each entry refers to the variable index in x)
    std::vector<Segment> cones; // only nonneg/soc segments, offsets into x
    std::vector<int> cone_of_coord; // cone row -> index in `cones`
    std::vector<int> coord_var;     // cone row -> variable index
    std::vector<int> cone_row_start; // per cone, first cone row
    int mc = 0;
    double degree = 0.0;
};

ConeView make_cone_view(const ConeLayout& layout) {
    ConeView v;
    for (const auto& seg : layout.segments) {
        if (seg.kind == SegmentKind::free_vars) continue;
        if (seg.kind == SegmentKind::psd)
            throw std::invalid_argument("interior-point backend does not take PSD blocks");
        v.cone_row_start.push_back(v.mc);
        for (int i = 0; i < seg.dim; ++i) {
            v.cone_of_coord.push_back(static_cast<int>(v.cones.size()));
            v.coord_var.push_back(seg.offset + i);
        }
        v.cones.push_back(seg);
        v.mc += seg.dim;
        v.degree += (seg.kind == SegmentKind::nonneg) ? seg.dim : 1.0;
    }
    return v;
}

// identity element of the cone product
Eigen::VectorXd cone_identity(const ConeView& view) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(view.mc);
    int row = 0;
    for (const auto& seg : view.cones) {
        if (seg.kind == SegmentKind::nonneg) {
            e.segment(row, seg.dim).setOnes();
        } else {
            e(row) = 1.0;
        }
        row += seg.dim;
    }
    return e;
}

double min_eig(const ConeView& view, const Eigen::VectorXd& u) {
    double m = std::numeric_limits<double>::infinity();
    int row = 0;
    for (const auto& seg : view.cones) {
        if (seg.kind == SegmentKind::nonneg) {
            m = std::min(m, u.segment(row, seg.dim).minCoeff());
        } else {
            m = std::min(m, u(row) - u.segment(row + 1, seg.dim - 1).norm());
        }
        row += seg.dim;
    }
    return m;
}

double max_step(const ConeView& view, const Eigen::VectorXd& u, const Eigen::VectorXd& du) {
    double a = std::numeric_limits<double>::infinity();
    int row = 0;
    for (const auto& seg : view.cones) {
        if (seg.kind == SegmentKind::nonneg) {
            for (int i = 0; i < seg.dim; ++i)
                if (du(row + i) < 0.0) a = std::min(a, -u(row + i) / du(row + i));
        } else {
            a = std::min(a, max_step_soc(u.segment(row, seg.dim), du.segment(row, seg.dim)));
        }
        row += seg.dim;
    }
    return a;
}

struct Scaling {
    Eigen::VectorXd nonneg_w2;        // per nonneg coordinate s/z
    std::vector<SocScaling> soc;      // per SOC segment
    Eigen::VectorXd lambda;           // scaled point, all cones
};

bool compute_scaling(const ConeView& view, const Eigen::VectorXd& s,
                     const Eigen::VectorXd& z, Scaling& sc) {
    sc.nonneg_w2.resize(view.mc);
    sc.soc.clear();
    sc.lambda.resize(view.mc);
    int row = 0;
    for (const auto& seg : view.cones) {
        if (seg.kind == SegmentKind::nonneg) {
            for (int i = 0; i < seg.dim; ++i) {
                const double si = s(row + i), zi = z(row + i);
                if (si <= 0.0 || zi <= 0.0) return false;
                sc.nonneg_w2(row + i) = si / zi;
                sc.lambda(row + i) = std::sqrt(si * zi);
            }
        } else {
            const Eigen::VectorXd sseg = s.segment(row, seg.dim);
            const Eigen::VectorXd zseg = z.segment(row, seg.dim);
            const double ds = jdet(sseg), dz = jdet(zseg);
            if (ds <= 0.0 || dz <= 0.0 || sseg(0) <= 0.0 || zseg(0) <= 0.0) return false;
            const Eigen::VectorXd sb = sseg / std::sqrt(ds);
            const Eigen::VectorXd zb = zseg / std::sqrt(dz);
            const double gamma = std::sqrt((1.0 + sb.dot(zb)) / 2.0);
            SocScaling ss;
            ss.wbar = (sb + jinv(zb)) / (2.0 * gamma);
            ss.v = ss.wbar;
            ss.v(0) += 1.0;
            ss.v /= std::sqrt(2.0 * (ss.wbar(0) + 1.0));
            ss.eta = std::pow(ds / dz, 0.25);
            sc.lambda.segment(row, seg.dim) = ss.eta * quad_rep_apply(ss.v, zseg);
            sc.soc.push_back(std::move(ss));
        }
        row += seg.dim;
    }
    return true;
}

// W z (scaled space mapping) and W^{-1} s applied per cone.
Eigen::VectorXd apply_w(const ConeView& view, const Scaling& sc, const Eigen::VectorXd& u) {
    Eigen::VectorXd r(view.mc);
    int row = 0, isoc = 0;
    for (const auto& seg : view.cones) {
        if (seg.kind == SegmentKind::nonneg) {
            r.segment(row, seg.dim) =
                sc.nonneg_w2.segment(row, seg.dim).cwiseSqrt().cwiseProduct(u.segment(row, seg.dim));
        } else {
            const auto& ss = sc.soc[static_cast<size_t>(isoc++)];
            r.segment(row, seg.dim) = ss.eta * quad_rep_apply(ss.v, u.segment(row, seg.dim));
        }
        row += seg.dim;
    }
    return r;
}

Eigen::VectorXd apply_w_inv(const ConeView& view, const Scaling& sc, const Eigen::VectorXd& u) {
    Eigen::VectorXd r(view.mc);
    int row = 0, isoc = 0;
    for (const auto& seg : view.cones) {
        if (seg.kind == SegmentKind::nonneg) {
            r.segment(row, seg.dim) =
                u.segment(row, seg.dim).cwiseQuotient(sc.nonneg_w2.segment(row, seg.dim).cwiseSqrt());
        } else {
            const auto& ss = sc.soc[static_cast<size_t>(isoc++)];
            r.segment(row, seg.dim) =
                quad_rep_apply(jinv(ss.v), u.segment(row, seg.dim)) / ss.eta;
        }
        row += seg.dim;
    }
    return r;
}

// Jordan product in the cone product algebra.
Eigen::VectorXd cone_mul(const ConeView& view, const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    Eigen::VectorXd r(view.mc);
    int row = 0;
    for (const auto& seg : view.cones) {
        if (seg.kind == SegmentKind::nonneg) {
            r.segment(row, seg.dim) =
                a.segment(row, seg.dim).cwiseProduct(b.segment(row, seg.dim));
        } else {
            r.segment(row, seg.dim) = jmul(a.segment(row, seg.dim), b.segment(row, seg.dim));
        }
        row += seg.dim;
    }
    return r;
}

Eigen::VectorXd cone_div(const ConeView& view, const Eigen::VectorXd& lambda,
                         const Eigen::VectorXd& r) {
    Eigen::VectorXd x(view.mc);
    int row = 0;
    for (const auto& seg : view.cones) {
        if (seg.kind == SegmentKind::nonneg) {
            x.segment(row, seg.dim) =
                r.segment(row, seg.dim).cwiseQuotient(lambda.segment(row, seg.dim));
        } else {
            x.segment(row, seg.dim) = jdiv(lambda.segment(row, seg.dim), r.segment(row, seg.dim));
        }
        row += seg.dim;
    }
    return x;
}

class KktSystem {
public:
    KktSystem(const Eigen::SparseMatrix<double>& A, const ConeView& view)
        : A_(A), view_(view), n_(static_cast<int>(A.cols())),
          m_(static_cast<int>(A.rows())), mc_(view.mc) {
        build_pattern();
    }

    bool factorize(const Scaling& sc) {
        fill_values(sc);
        if (first_) {
            ldlt_.analyzePattern(K_);
            first_ = false;
        }
        ldlt_.factorize(K_);
        return ldlt_.info() == Eigen::Success;
    }

    // Solves the unregularized KKT system with iterative refinement.
    Eigen::VectorXd solve(const Eigen::VectorXd& rhs, const Scaling& sc) const {
        Eigen::VectorXd u = ldlt_.solve(rhs);
        for (int round = 0; round < kRefineRounds; ++round) {
            Eigen::VectorXd r = rhs - apply_unregularized(u, sc);
            u += ldlt_.solve(r);
        }
        return u;
    }

    int n() const { return n_; }
    int m() const { return m_; }
    int mc() const { return mc_; }

private:
    const Eigen::SparseMatrix<double>& A_;
    const ConeView& view_;
    int n_, m_, mc_;
    Eigen::SparseMatrix<double> K_;
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>, Eigen::Lower> ldlt_;
    bool first_ = true;
    std::vector<Eigen::Triplet<double>> pattern_;

    void build_pattern() {
        pattern_.clear();
        const int dim = n_ + m_ + mc_;
        for (int i = 0; i < n_; ++i) pattern_.emplace_back(i, i, kStaticReg);
        for (int k = 0; k < A_.outerSize(); ++k)
            for (Eigen::SparseMatrix<double>::InnerIterator it(A_, k); it; ++it)
                pattern_.emplace_back(n_ + static_cast<int>(it.row()),
                                      static_cast<int>(it.col()), it.value());
        for (int i = 0; i < m_; ++i) pattern_.emplace_back(n_ + i, n_ + i, -kStaticReg);
        // G = -Sel rows
        for (int j = 0; j < mc_; ++j)
            pattern_.emplace_back(n_ + m_ + j, view_.coord_var[static_cast<size_t>(j)], -1.0);
        // -W^2 blocks: diagonal for nonneg, dense lower blocks for SOC
        int row = 0;
        for (const auto& seg : view_.cones) {
            if (seg.kind == SegmentKind::nonneg) {
                for (int i = 0; i < seg.dim; ++i)
                    pattern_.emplace_back(n_ + m_ + row + i, n_ + m_ + row + i, -1.0);
            } else {
                for (int cjj = 0; cjj < seg.dim; ++cjj)
                    for (int cii = cjj; cii < seg.dim; ++cii)
                        pattern_.emplace_back(n_ + m_ + row + cii, n_ + m_ + row + cjj, -1.0);
            }
            row += seg.dim;
        }
        K_.resize(dim, dim);
        K_.setFromTriplets(pattern_.begin(), pattern_.end());
        K_.makeCompressed();
    }

    void fill_values(const Scaling& sc) {
        // Rebuild through triplets; the pattern is identical every iteration
        // so analyzePattern is reused.
        size_t idx = 0;
        for (int i = 0; i < n_; ++i) pattern_[idx++] = {i, i, kStaticReg};
        for (int k = 0; k < A_.outerSize(); ++k)
            for (Eigen::SparseMatrix<double>::InnerIterator it(A_, k); it; ++it)
                pattern_[idx++] = {n_ + static_cast<int>(it.row()),
                                   static_cast<int>(it.col()), it.value()};
        for (int i = 0; i < m_; ++i) pattern_[idx++] = {n_ + i, n_ + i, -kStaticReg};
        for (int j = 0; j < mc_; ++j)
            pattern_[idx++] = {n_ + m_ + j, view_.coord_var[static_cast<size_t>(j)], -1.0};
        int row = 0, isoc = 0;
        for (const auto& seg : view_.cones) {
            if (seg.kind == SegmentKind::nonneg) {
                for (int i = 0; i < seg.dim; ++i)
                    pattern_[idx++] = {n_ + m_ + row + i, n_ + m_ + row + i,
                                       -sc.nonneg_w2(row + i) - kStaticReg};
            } else {
                const auto& ss = sc.soc[static_cast<size_t>(isoc++)];
                // W^2 = eta^2 (2 wbar wbar' - J)^... expanded via P(wbar):
                // W^2 u = eta^2 (2 wbar (wbar'u) - J u)
                Eigen::MatrixXd W2 =
                    2.0 * ss.wbar * ss.wbar.transpose();
                W2(0, 0) -= 1.0;
                for (int i = 1; i < seg.dim; ++i) W2(i, i) += 1.0;
                W2 *= ss.eta * ss.eta;
                for (int cjj = 0; cjj < seg.dim; ++cjj)
                    for (int cii = cjj; cii < seg.dim; ++cii)
                        pattern_[idx++] = {n_ + m_ + row + cii, n_ + m_ + row + cjj,
                                           -W2(cii, cjj) - (cii == cjj ? kStaticReg : 0.0)};
            }
            row += seg.dim;
        }
        K_.setFromTriplets(pattern_.begin(), pattern_.end());
    }

    Eigen::VectorXd apply_unregularized(const Eigen::VectorXd& u, const Scaling& sc) const {
        const auto ux = u.head(n_);
        const auto uy = u.segment(n_, m_);
        const auto uz = u.tail(mc_);
        Eigen::VectorXd r(n_ + m_ + mc_);
        // x rows: A' uy + G' uz
        Eigen::VectorXd rx = A_.transpose() * uy;
        for (int j = 0; j < mc_; ++j) rx(view_.coord_var[static_cast<size_t>(j)]) -= uz(j);
        r.head(n_) = rx;
        r.segment(n_, m_) = A_ * ux;
        // z rows: G ux - W^2 uz
        Eigen::VectorXd rz(mc_);
        for (int j = 0; j < mc_; ++j) rz(j) = -ux(view_.coord_var[static_cast<size_t>(j)]);
        int row = 0, isoc = 0;
        for (const auto& seg : view_.cones) {
            if (seg.kind == SegmentKind::nonneg) {
                rz.segment(row, seg.dim) -=
                    sc.nonneg_w2.segment(row, seg.dim).cwiseProduct(uz.segment(row, seg.dim));
            } else {
                const auto& ss = sc.soc[static_cast<size_t>(isoc++)];
                Eigen::VectorXd t = uz.segment(row, seg.dim);
                Eigen::VectorXd w2t = 2.0 * ss.wbar.dot(t) * ss.wbar;
                w2t(0) -= t(0);
                w2t.tail(seg.dim - 1) += t.tail(seg.dim - 1);
                rz.segment(row, seg.dim) -= ss.eta * ss.eta * w2t;
            }
            row += seg.dim;
        }
        r.tail(mc_) = rz;
        return r;
    }
};

struct ScaledData {
    Eigen::SparseMatrix<double> A;
    Eigen::VectorXd b, c;
    Eigen::VectorXd col_scale; // D
    Eigen::VectorXd row_scale; // E
    double b_scale = 1.0, c_scale = 1.0;
};

// Ruiz equilibration with cone-uniform column groups.
ScaledData equilibrate(const ConicProblem& p) {
    const int n = p.num_vars();
    const int m = p.num_rows();
    ScaledData d;
    d.A = p.A;
    d.col_scale = Eigen::VectorXd::Ones(n);
    d.row_scale = Eigen::VectorXd::Ones(m);

    for (int round = 0; round < 8; ++round) {
        Eigen::VectorXd cmax = Eigen::VectorXd::Zero(n);
        Eigen::VectorXd rmax = Eigen::VectorXd::Zero(m);
        for (int k = 0; k < d.A.outerSize(); ++k) {
            for (Eigen::SparseMatrix<double>::InnerIterator it(d.A, k); it; ++it) {
                const double a = std::abs(it.value());
                cmax(it.col()) = std::max(cmax(it.col()), a);
                rmax(it.row()) = std::max(rmax(it.row()), a);
            }
        }
        // group columns by cone segment: SOC/PSD segments share one scalar
        Eigen::VectorXd cdiv = Eigen::VectorXd::Ones(n);
        for (const auto& seg : p.cone.segments) {
            if (seg.kind == SegmentKind::soc || seg.kind == SegmentKind::psd) {
                const double g = cmax.segment(seg.offset, seg.dim).maxCoeff();
                if (g > 0.0) cdiv.segment(seg.offset, seg.dim).setConstant(std::sqrt(g));
            } else {
                for (int i = 0; i < seg.dim; ++i)
                    if (cmax(seg.offset + i) > 0.0)
                        cdiv(seg.offset + i) = std::sqrt(cmax(seg.offset + i));
            }
        }
        Eigen::VectorXd rdiv = Eigen::VectorXd::Ones(m);
        for (int i = 0; i < m; ++i)
            if (rmax(i) > 0.0) rdiv(i) = std::sqrt(rmax(i));
        for (int k = 0; k < d.A.outerSize(); ++k)
            for (Eigen::SparseMatrix<double>::InnerIterator it(d.A, k); it; ++it)
                it.valueRef() /= rdiv(it.row()) * cdiv(it.col());
        d.col_scale = d.col_scale.cwiseQuotient(cdiv);
        d.row_scale = d.row_scale.cwiseQuotient(rdiv);
    }
    d.b = d.row_scale.cwiseProduct(p.b);
    d.c = d.col_scale.cwiseProduct(p.c);
    d.b_scale = 1.0 / std::max(1.0, d.b.lpNorm<Eigen::Infinity>());
    d.c_scale = 1.0 / std::max(1.0, d.c.lpNorm<Eigen::Infinity>());
    d.b *= d.b_scale;
    d.c *= d.c_scale;
    return d;
}

} // namespace

ConicSolution solve_interior_point(const ConicProblem& problem, const SolveOptions& options) {
    const int n = problem.num_vars();
    const int m = problem.num_rows();
    const ConeView view = make_cone_view(problem.cone);
    const int mc = view.mc;
    const double tol = options.tol > 0 ? options.tol : 1e-8;
    const int max_iter = options.max_iter > 0 ? options.max_iter : 100;

    ConicSolution out;
    if (mc == 0) {
        // Pure equality problem; not produced by any builder.
        out.status = SolveStatus::numerical_limit;
        return out;
    }

    const ScaledData data = equilibrate(problem);
    const Eigen::SparseMatrix<double>& A = data.A;
    const Eigen::VectorXd& b = data.b;
    const Eigen::VectorXd& c = data.c;
    const double bnorm = std::max(1.0, b.norm());
    const double cnorm = std::max(1.0, c.norm());

    KktSystem kkt(A, view);
    const Eigen::VectorXd e = cone_identity(view);
    const double degree = view.degree + 1.0;

    auto gather_cone = [&](const Eigen::VectorXd& x) {
        Eigen::VectorXd u(mc);
        for (int j = 0; j < mc; ++j) u(j) = x(view.coord_var[static_cast<size_t>(j)]);
        return u;
    };

    // --- initialization with identity scaling
    Scaling sc;
    sc.nonneg_w2 = Eigen::VectorXd::Ones(mc);
    sc.lambda = Eigen::VectorXd::Zero(mc);
    for (const auto& seg : view.cones) {
        if (seg.kind == SegmentKind::soc) {
            SocScaling ss;
            ss.wbar = Eigen::VectorXd::Zero(seg.dim);
            ss.wbar(0) = 1.0;
            ss.v = ss.wbar;
            ss.eta = 1.0;
            sc.soc.push_back(ss);
        }
    }
    if (!kkt.factorize(sc)) {
        out.status = SolveStatus::numerical_limit;
        return out;
    }

    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n + m + mc);
    rhs.segment(n, m) = b;
    Eigen::VectorXd init1 = kkt.solve(rhs, sc);
    Eigen::VectorXd x = init1.head(n);
    Eigen::VectorXd s = -init1.tail(mc); // s = -z-part equals Sel x - h
    {
        const double me = min_eig(view, s);
        if (me <= 0.0) s += (1.0 - me) * e;
    }

    rhs.setZero();
    rhs.head(n) = -c;
    Eigen::VectorXd init2 = kkt.solve(rhs, sc);
    Eigen::VectorXd y = init2.segment(n, m);
    Eigen::VectorXd z = init2.tail(mc);
    {
        const double me = min_eig(view, z);
        if (me <= 0.0) z += (1.0 - me) * e;
    }

    double tau = 1.0, kappa = 1.0;

    double best_metric = std::numeric_limits<double>::infinity();
    Eigen::VectorXd best_x = x, best_y = y;
    double best_tau = tau;

    SolveStatus status = SolveStatus::iteration_limit;
    int iter = 0;
    double final_res = std::numeric_limits<double>::infinity();

    for (iter = 0; iter < max_iter; ++iter) {
        // residuals of the homogeneous embedding
        const Eigen::VectorXd xc = gather_cone(x);
        // rx = A'y + G'z + c*tau with G = -Sel
        Eigen::VectorXd rx = A.transpose() * y;
        for (int j = 0; j < mc; ++j) rx(view.coord_var[static_cast<size_t>(j)]) -= z(j);
        rx += c * tau;
        Eigen::VectorXd ry = A * x - b * tau;
        Eigen::VectorXd rz = -xc + s; // G x + s - h tau with h = 0
        const double rtau = c.dot(x) + b.dot(y) + kappa;

        const double gap = s.dot(z);
        const double mu = (gap + tau * kappa) / degree;

        // convergence checks on the de-homogenized point
        const double pobj = c.dot(x) / tau;
        const double dobj = -b.dot(y) / tau;
        const double pres = std::max((A * (x / tau) - b).norm() / bnorm,
                                     (rz / tau).norm() / std::max(1.0, std::sqrt(double(mc))));
        Eigen::VectorXd dres_vec = A.transpose() * (y / tau) + c;
        for (int j = 0; j < mc; ++j)
            dres_vec(view.coord_var[static_cast<size_t>(j)]) -= z(j) / tau;
        const double dres = dres_vec.norm() / cnorm;
        const double absgap = gap / (tau * tau);
        const double relgap = absgap / std::max(1.0, std::min(std::abs(pobj), std::abs(dobj)));

        const double metric = std::max({pres, dres, relgap});
        if (metric < best_metric) {
            best_metric = metric;
            best_x = x;
            best_y = y;
            best_tau = tau;
        }
        final_res = best_metric;

        if (pres <= tol && dres <= tol && (relgap <= tol || absgap <= tol * tol)) {
            status = SolveStatus::optimal;
            best_x = x; best_y = y; best_tau = tau; final_res = metric;
            break;
        }

        // infeasibility certificates
        const double by = b.dot(y);
        if (by < -1e-12) {
            Eigen::VectorXd inf_res = A.transpose() * y;
            for (int j = 0; j < mc; ++j)
                inf_res(view.coord_var[static_cast<size_t>(j)]) -= z(j);
            if (inf_res.norm() * bnorm <= -by * tol * 10.0 && tau <= 1e-6 * kappa) {
                status = SolveStatus::primal_infeasible;
                break;
            }
        }
        const double cx = c.dot(x);
        if (cx < -1e-12) {
            const double unb_res = std::max((A * x).norm(), (s - xc).norm());
            if (unb_res * cnorm <= -cx * tol * 10.0 && tau <= 1e-6 * kappa) {
                status = SolveStatus::dual_infeasible;
                break;
            }
        }

        // NT scaling and factorization
        if (!compute_scaling(view, s, z, sc) || !kkt.factorize(sc)) {
            status = SolveStatus::numerical_limit;
            break;
        }

        // constant-column solve
        rhs.head(n) = -c;
        rhs.segment(n, m) = b;
        rhs.tail(mc).setZero(); // h = 0
        const Eigen::VectorXd u1 = kkt.solve(rhs, sc);
        const double dot1 = c.dot(u1.head(n)) + b.dot(u1.segment(n, m));

        auto direction = [&](const Eigen::VectorXd& dx_t, const Eigen::VectorXd& dy_t,
                             const Eigen::VectorXd& dz_t, double dtau_t,
                             const Eigen::VectorXd& dlam, double dkappa_t,
                             Eigen::VectorXd& DX, Eigen::VectorXd& DY, Eigen::VectorXd& DZ,
                             Eigen::VectorXd& DS, double& DTAU, double& DKAPPA) {
            const Eigen::VectorXd wdl = apply_w(view, sc, dlam);
            rhs.head(n) = dx_t;
            rhs.segment(n, m) = dy_t;
            rhs.tail(mc) = dz_t - wdl;
            const Eigen::VectorXd u2 = kkt.solve(rhs, sc);
            const double dot2 = c.dot(u2.head(n)) + b.dot(u2.segment(n, m));
            DTAU = (dtau_t - dkappa_t / tau - dot2) / (dot1 - kappa / tau);
            DX = u2.head(n) + DTAU * u1.head(n);
            DY = u2.segment(n, m) + DTAU * u1.segment(n, m);
            DZ = u2.tail(mc) + DTAU * u1.tail(mc);
            // ds = W'dlam - W^2 dz
            DS = apply_w(view, sc, dlam - apply_w(view, sc, DZ));
            DKAPPA = (dkappa_t - kappa * DTAU) / tau;
        };

        // affine direction
        Eigen::VectorXd dxa, dya, dza, dsa;
        double dtaua, dkappaa;
        direction(-rx, -ry, -rz, -rtau, -sc.lambda, -tau * kappa,
                  dxa, dya, dza, dsa, dtaua, dkappaa);

        double alpha_aff = std::min({max_step(view, s, dsa), max_step(view, z, dza)});
        if (dtaua < 0.0) alpha_aff = std::min(alpha_aff, -tau / dtaua);
        if (dkappaa < 0.0) alpha_aff = std::min(alpha_aff, -kappa / dkappaa);
        alpha_aff = std::min(1.0, alpha_aff);
        const double sigma = std::pow(std::max(0.0, 1.0 - alpha_aff), 3.0);

        // combined direction with Mehrotra correction
        const Eigen::VectorXd ws_inv_dsa = apply_w_inv(view, sc, dsa);
        const Eigen::VectorXd w_dza = apply_w(view, sc, dza);
        Eigen::VectorXd comp = -cone_mul(view, sc.lambda, sc.lambda) -
                               cone_mul(view, ws_inv_dsa, w_dza) + sigma * mu * e;
        const Eigen::VectorXd dlam = cone_div(view, sc.lambda, comp);
        const double dkappa_t = sigma * mu - tau * kappa - dtaua * dkappaa;
        const double scale1m = 1.0 - sigma;

        Eigen::VectorXd dx, dy, dz, ds;
        double dtau, dkappa;
        direction(-scale1m * rx, -scale1m * ry, -scale1m * rz, -scale1m * rtau,
                  dlam, dkappa_t, dx, dy, dz, ds, dtau, dkappa);

        double alpha = std::min({max_step(view, s, ds), max_step(view, z, dz)});
        if (dtau < 0.0) alpha = std::min(alpha, -tau / dtau);
        if (dkappa < 0.0) alpha = std::min(alpha, -kappa / dkappa);
        alpha = std::min(1.0, kStepDamp * alpha);
        if (!std::isfinite(alpha) || alpha <= 1e-12) {
            status = SolveStatus::numerical_limit;
            break;
        }

        x += alpha * dx;
        y += alpha * dy;
        z += alpha * dz;
        s += alpha * ds;
        tau += alpha * dtau;
        kappa += alpha * dkappa;

        if (tau <= 0.0 || kappa < 0.0 || !std::isfinite(tau)) {
            status = SolveStatus::numerical_limit;
            break;
        }
    }

    out.iterations = iter;
    out.max_residual = final_res;

    if (status == SolveStatus::primal_infeasible || status == SolveStatus::dual_infeasible) {
        out.status = status;
        return out;
    }
    if (status == SolveStatus::iteration_limit && best_metric <= tol * 100.0) {
        // close enough to report, but flag honestly
        status = SolveStatus::iteration_limit;
    }

    // de-homogenize and unscale
    Eigen::VectorXd xs = best_x / best_tau;
    Eigen::VectorXd ys = best_y / best_tau;
    out.x = data.col_scale.cwiseProduct(xs) / data.b_scale;
    out.y = data.row_scale.cwiseProduct(ys) / data.c_scale;
    out.objective = problem.c.dot(out.x);
    out.status = status;
    return out;
}

} // namespace passkit::conic
