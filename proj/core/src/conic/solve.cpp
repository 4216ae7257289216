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

#include "passkit/conic/solver_backends.hpp"

#include <cmath>
#include <vector>

namespace passkit::conic {

namespace {

bool has_bounds(const ConicProblem& p) {
    auto any_finite = [](const Eigen::VectorXd& v) {
        for (int i = 0; i < v.size(); ++i)
            if (std::isfinite(v(i))) return true;
        return false;
    };
    return (p.lb.size() && any_finite(p.lb)) || (p.ub.size() && any_finite(p.ub));
}

// Rewrites variable bounds as extra nonnegative slacks plus equality rows.
ConicProblem expand_bounds(const ConicProblem& p) {
    std::vector<std::pair<int, double>> lo, hi; // (var, bound)
    for (int i = 0; i < p.lb.size(); ++i)
        if (std::isfinite(p.lb(i))) lo.emplace_back(i, p.lb(i));
    for (int i = 0; i < p.ub.size(); ++i)
        if (std::isfinite(p.ub(i))) hi.emplace_back(i, p.ub(i));

    ConicProblem q;
    q.cone = p.cone;
    const int extra = static_cast<int>(lo.size() + hi.size());
    const int slack0 = q.cone.add(SegmentKind::nonneg, extra);
    const int m = p.num_rows();
    q.A.resize(m + extra, q.cone.num_vars);
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(p.A.nonZeros() + 2 * static_cast<size_t>(extra));
    for (int k = 0; k < p.A.outerSize(); ++k)
        for (Eigen::SparseMatrix<double>::InnerIterator it(p.A, k); it; ++it)
            trip.emplace_back(static_cast<int>(it.row()), static_cast<int>(it.col()), it.value());
    q.b.resize(m + extra);
    q.b.head(m) = p.b;
    int row = m, slack = slack0;
    for (const auto& [var, bound] : lo) { // x - s = lb
        trip.emplace_back(row, var, 1.0);
        trip.emplace_back(row, slack, -1.0);
        q.b(row) = bound;
        ++row, ++slack;
    }
    for (const auto& [var, bound] : hi) { // x + s = ub
        trip.emplace_back(row, var, 1.0);
        trip.emplace_back(row, slack, 1.0);
        q.b(row) = bound;
        ++row, ++slack;
    }
    q.A.setFromTriplets(trip.begin(), trip.end());
    q.A.makeCompressed();
    q.c = Eigen::VectorXd::Zero(q.cone.num_vars);
    q.c.head(p.num_vars()) = p.c;
    return q;
}

} // namespace

ConicSolution solve(const ConicProblem& problem, const SolveOptions& options) {
    problem.validate();

    if (has_bounds(problem)) {
        ConicProblem expanded = expand_bounds(problem);
        SolveOptions opts = options;
        if (opts.warm_start) opts.warm_start.reset(); // indices shift; drop the hint
        ConicSolution sol = solve(expanded, opts);
        if (sol.x.size() > 0) {
            sol.x.conservativeResize(problem.num_vars());
            sol.y.conservativeResize(problem.num_rows());
            sol.objective = problem.c.dot(sol.x);
        }
        return sol;
    }

    Backend backend = options.backend;
    if (backend == Backend::automatic)
        backend = problem.cone.has_psd() ? Backend::splitting : Backend::interior_point;
    if (backend == Backend::interior_point && problem.cone.has_psd())
        backend = Backend::splitting;

    return backend == Backend::interior_point ? solve_interior_point(problem, options)
                                              : solve_splitting(problem, options);
}

} // namespace passkit::conic
