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
#include <Eigen/Sparse>
#include <optional>
#include <string>
#include <vector>

namespace passkit::conic {

// Conic program in primal standard form:
//
//     minimize    c^T x
//     subject to  A x = b
//                 x in K = product of ordered segments
//
// Segment kinds: free, nonnegative orthant, second-order cone
// ([t; u] with ||u|| <= t) and PSD cone (side s, stored as the scaled
// lower-triangle svec of length s*(s+1)/2 so that inner products are
// preserved). Every variable belongs to exactly one segment.

enum class SegmentKind { free_vars, nonneg, soc, psd };

struct Segment {
    SegmentKind kind;
    int offset; // first variable index
    int dim;    // variable count (for psd: side*(side+1)/2)
    int side;   // psd matrix side, 0 otherwise
};

struct ConeLayout {
    std::vector<Segment> segments;
    int num_vars = 0;

    int add(SegmentKind kind, int dim_or_side);
    bool has_psd() const;
    /// Barrier degree: nonneg coordinates count 1 each, each SOC counts 1,
    /// each PSD block counts its side.
    double degree() const;
};

struct ConicProblem {
    ConeLayout cone;
    Eigen::SparseMatrix<double> A; // m x n, n == cone.num_vars
    Eigen::VectorXd b;
    Eigen::VectorXd c;
    // Optional elementwise bounds; empty vectors mean "none", NaN entries
    // mean "no bound for this variable". Rewritten into slack rows by solve().
    Eigen::VectorXd lb;
    Eigen::VectorXd ub;

    int num_vars() const { return cone.num_vars; }
    int num_rows() const { return static_cast<int>(A.rows()); }

    /// Throws std::invalid_argument on inconsistent dimensions or data.
    void validate() const;
};

enum class SolveStatus {
    optimal,
    primal_infeasible,
    dual_infeasible,
    numerical_limit,
    iteration_limit,
};

std::string to_string(SolveStatus s);

struct ConicSolution {
    SolveStatus status = SolveStatus::numerical_limit;
    Eigen::VectorXd x; // primal values
    Eigen::VectorXd y; // multipliers of A x = b
    double objective = 0.0;
    double max_residual = 0.0; // worst of primal/dual residual and gap
    int iterations = 0;

    bool ok() const { return status == SolveStatus::optimal; }
};

/// Warm-start hint (used by the splitting backend; the interior-point
/// backend self-initializes, which never degrades a feasible hint's status).
struct WarmStart {
    Eigen::VectorXd x;
    Eigen::VectorXd y;
};

enum class Backend { automatic, interior_point, splitting };

struct SolveOptions {
    double tol = 1e-8;
    int max_iter = 0; // 0 = backend default
    Backend backend = Backend::automatic;
    std::optional<WarmStart> warm_start;
};

/// Solves the problem. PSD cones route to the splitting backend, everything
/// else to the interior-point backend; options.backend overrides.
ConicSolution solve(const ConicProblem& problem, const SolveOptions& options = {});

// ---------------------------------------------------------------------------
// Incremental construction helper shared by all subproblem builders.

/// Sparse affine expression: constant + sum coef * x[idx].
struct LinExpr {
    double constant = 0.0;
    std::vector<std::pair<int, double>> terms;

    LinExpr() = default;
    /*implicit*/ LinExpr(double c) : constant(c) {}
    LinExpr(int idx, double coef) { terms.emplace_back(idx, coef); }

    LinExpr& add(int idx, double coef) {
        if (coef != 0.0) terms.emplace_back(idx, coef);
        return *this;
    }
    LinExpr& operator+=(const LinExpr& o);
    LinExpr& operator*=(double s);
};

class ProblemBuilder {
public:
    int add_free(int count);
    int add_nonneg(int count);
    /// Raw SOC segment [t; u]; returns the index of t.
    int add_soc(int dim);
    /// PSD segment; returns its svec offset.
    int add_psd(int side);

    /// Equality row: expr == 0 (the constant moves to the rhs).
    void add_eq(const LinExpr& expr);
    /// ||exprs[1:]|| <= exprs[0] via a fresh SOC segment plus tie rows.
    void add_soc_of(const std::vector<LinExpr>& exprs);
    /// sum u_i^2 <= lin via the rotated embedding ||[2u; lin-1]|| <= lin+1.
    void add_quad_le(const std::vector<LinExpr>& u, const LinExpr& lin);
    /// expr >= 0 via a nonnegative slack.
    void add_ge0(const LinExpr& expr);
    /// expr <= 0.
    void add_le0(const LinExpr& expr);

    void add_objective(int idx, double coef);
    void add_objective(const LinExpr& expr); // constant part is dropped

    int num_vars() const { return layout_.num_vars; }
    int num_rows() const { return static_cast<int>(rhs_.size()); }

    ConicProblem build() const;

private:
    ConeLayout layout_;
    std::vector<Eigen::Triplet<double>> triplets_;
    std::vector<double> rhs_;
    std::vector<std::pair<int, double>> obj_;
};

} // namespace passkit::conic
