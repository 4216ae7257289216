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

#include "passkit/conic/problem.hpp"

#include <cmath>
#include <stdexcept>

namespace passkit::conic {

int ConeLayout::add(SegmentKind kind, int dim_or_side) {
    Segment seg;
    seg.kind = kind;
    seg.offset = num_vars;
    if (kind == SegmentKind::psd) {
        seg.side = dim_or_side;
        seg.dim = dim_or_side * (dim_or_side + 1) / 2;
    } else {
        seg.side = 0;
        seg.dim = dim_or_side;
    }
    segments.push_back(seg);
    num_vars += seg.dim;
    return seg.offset;
}

bool ConeLayout::has_psd() const {
    for (const auto& s : segments)
        if (s.kind == SegmentKind::psd) return true;
    return false;
}

double ConeLayout::degree() const {
    double deg = 0.0;
    for (const auto& s : segments) {
        switch (s.kind) {
        case SegmentKind::nonneg: deg += s.dim; break;
        case SegmentKind::soc: deg += 1.0; break;
        case SegmentKind::psd: deg += s.side; break;
        case SegmentKind::free_vars: break;
        }
    }
    return deg;
}

void ConicProblem::validate() const {
    if (cone.num_vars != static_cast<int>(A.cols()))
        throw std::invalid_argument("ConicProblem: A column count does not match the cone layout");
    if (b.size() != A.rows())
        throw std::invalid_argument("ConicProblem: rhs length does not match A");
    if (c.size() != A.cols())
        throw std::invalid_argument("ConicProblem: objective length does not match A");
    for (const auto& s : cone.segments) {
        if (s.kind == SegmentKind::soc && s.dim < 2)
            throw std::invalid_argument("ConicProblem: second-order cones need dim >= 2");
        if (s.kind == SegmentKind::psd && s.side < 1)
            throw std::invalid_argument("ConicProblem: PSD blocks need side >= 1");
        if (s.dim < 0) throw std::invalid_argument("ConicProblem: negative segment size");
    }
    if (!b.allFinite() || !c.allFinite())
        throw std::invalid_argument("ConicProblem: data must be finite");
    for (int k = 0; k < A.outerSize(); ++k)
        for (Eigen::SparseMatrix<double>::InnerIterator it(A, k); it; ++it)
            if (!std::isfinite(it.value()))
                throw std::invalid_argument("ConicProblem: A must be finite");
    if (lb.size() != 0 && lb.size() != A.cols())
        throw std::invalid_argument("ConicProblem: lb has wrong length");
    if (ub.size() != 0 && ub.size() != A.cols())
        throw std::invalid_argument("ConicProblem: ub has wrong length");
}

std::string to_string(SolveStatus s) {
    switch (s) {
    case SolveStatus::optimal: return "optimal";
    case SolveStatus::primal_infeasible: return "primal-infeasible";
    case SolveStatus::dual_infeasible: return "dual-infeasible";
    case SolveStatus::numerical_limit: return "numerical-limit";
    case SolveStatus::iteration_limit: return "iteration-limit";
    }
    return "unknown";
}

LinExpr& LinExpr::operator+=(const LinExpr& o) {
    constant += o.constant;
    terms.insert(terms.end(), o.terms.begin(), o.terms.end());
    return *this;
}

LinExpr& LinExpr::operator*=(double s) {
    constant *= s;
    for (auto& t : terms) t.second *= s;
    return *this;
}

int ProblemBuilder::add_free(int count) { return layout_.add(SegmentKind::free_vars, count); }
int ProblemBuilder::add_nonneg(int count) { return layout_.add(SegmentKind::nonneg, count); }
int ProblemBuilder::add_soc(int dim) { return layout_.add(SegmentKind::soc, dim); }
int ProblemBuilder::add_psd(int side) { return layout_.add(SegmentKind::psd, side); }

void ProblemBuilder::add_eq(const LinExpr& expr) {
    const int row = static_cast<int>(rhs_.size());
    for (const auto& [idx, coef] : expr.terms)
        if (coef != 0.0) triplets_.emplace_back(row, idx, coef);
    rhs_.push_back(-expr.constant);
}

void ProblemBuilder::add_soc_of(const std::vector<LinExpr>& exprs) {
    const int dim = static_cast<int>(exprs.size());
    const int t = add_soc(dim);
    for (int i = 0; i < dim; ++i) {
        LinExpr row = exprs[static_cast<size_t>(i)];
        row.add(t + i, -1.0);
        add_eq(row);
    }
}

void ProblemBuilder::add_quad_le(const std::vector<LinExpr>& u, const LinExpr& lin) {
    std::vector<LinExpr> exprs;
    exprs.reserve(u.size() + 2);
    LinExpr top = lin;
    top.constant += 1.0;
    exprs.push_back(top);
    for (const auto& e : u) {
        LinExpr twice = e;
        twice *= 2.0;
        exprs.push_back(twice);
    }
    LinExpr bottom = lin;
    bottom.constant -= 1.0;
    exprs.push_back(bottom);
    add_soc_of(exprs);
}

void ProblemBuilder::add_ge0(const LinExpr& expr) {
    const int s = add_nonneg(1);
    LinExpr row = expr;
    row.add(s, -1.0);
    add_eq(row);
}

void ProblemBuilder::add_le0(const LinExpr& expr) {
    LinExpr neg = expr;
    neg *= -1.0;
    add_ge0(neg);
}

void ProblemBuilder::add_objective(int idx, double coef) {
    if (coef != 0.0) obj_.emplace_back(idx, coef);
}

void ProblemBuilder::add_objective(const LinExpr& expr) {
    for (const auto& [idx, coef] : expr.terms) add_objective(idx, coef);
}

ConicProblem ProblemBuilder::build() const {
    ConicProblem p;
    p.cone = layout_;
    p.A.resize(static_cast<Eigen::Index>(rhs_.size()), layout_.num_vars);
    p.A.setFromTriplets(triplets_.begin(), triplets_.end());
    p.A.makeCompressed();
    p.b = Eigen::Map<const Eigen::VectorXd>(rhs_.data(), static_cast<Eigen::Index>(rhs_.size()));
    p.c = Eigen::VectorXd::Zero(layout_.num_vars);
    for (const auto& [idx, coef] : obj_) p.c(idx) += coef;
    p.validate();
    return p;
}

} // namespace passkit::conic
