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

#include "passkit/conic/embed.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace passkit::conic {

namespace {
const double kSqrt2 = std::numbers::sqrt2;
}

int svec_len(int side) { return side * (side + 1) / 2; }

int svec_index(int side, int i, int j) {
    if (i < j) std::swap(i, j);
    // column j occupies side - j entries starting at offset of its head
    return j * side - j * (j - 1) / 2 + (i - j);
}

double svec_entry_scale(int i, int j) { return i == j ? 1.0 : 1.0 / kSqrt2; }

Eigen::VectorXd svec_pack(const Eigen::MatrixXd& S) {
    const int n = static_cast<int>(S.rows());
    Eigen::VectorXd v(svec_len(n));
    for (int j = 0; j < n; ++j)
        for (int i = j; i < n; ++i)
            v(svec_index(n, i, j)) = (i == j) ? S(i, j) : kSqrt2 * S(i, j);
    return v;
}

Eigen::MatrixXd svec_unpack(const Eigen::VectorXd& v, int side) {
    Eigen::MatrixXd S(side, side);
    for (int j = 0; j < side; ++j) {
        for (int i = j; i < side; ++i) {
            const double val = v(svec_index(side, i, j));
            S(i, j) = (i == j) ? val : val / kSqrt2;
            S(j, i) = S(i, j);
        }
    }
    return S;
}

Eigen::MatrixXd embed_hermitian(const Eigen::MatrixXcd& H) {
    const int L = static_cast<int>(H.rows());
    Eigen::MatrixXd S(2 * L, 2 * L);
    S.topLeftCorner(L, L) = H.real();
    S.bottomRightCorner(L, L) = H.real();
    S.topRightCorner(L, L) = -H.imag();
    S.bottomLeftCorner(L, L) = H.imag();
    return S;
}

Eigen::MatrixXcd unembed_hermitian(const Eigen::MatrixXd& S) {
    const int L = static_cast<int>(S.rows()) / 2;
    Eigen::MatrixXd re = 0.5 * (S.topLeftCorner(L, L) + S.bottomRightCorner(L, L));
    Eigen::MatrixXd im = 0.5 * (S.bottomLeftCorner(L, L) - S.topRightCorner(L, L));
    Eigen::MatrixXcd H(L, L);
    H.real() = re;
    H.imag() = im;
    return H;
}

HermitianBlockTies::HermitianBlockTies(ProblemBuilder& builder, int psd_offset, int complex_side)
    : builder_(builder), offset_(psd_offset), L_(complex_side) {}

int HermitianBlockTies::entry_var(int a, int b) const {
    return offset_ + svec_index(2 * L_, a, b);
}

LinExpr HermitianBlockTies::entry_expr(int a, int b) const {
    if (a < b) std::swap(a, b);
    return LinExpr(entry_var(a, b), svec_entry_scale(a, b));
}

void HermitianBlockTies::tie(int i, int j, const LinExpr& re, const LinExpr& im) {
    if (i < j) throw std::invalid_argument("HermitianBlockTies: tie expects i >= j");
    // Re H_ij sits at (i, j) and (L+i, L+j); both copies are tied.
    {
        LinExpr row = entry_expr(i, j);
        LinExpr target = re;
        target *= -1.0;
        row += target;
        builder_.add_eq(row);
    }
    {
        LinExpr row = entry_expr(L_ + i, L_ + j);
        LinExpr target = re;
        target *= -1.0;
        row += target;
        builder_.add_eq(row);
    }
    if (i == j) {
        // Im H_ii must vanish; the embedding stores -Im H_ii at (L+i, i).
        LinExpr row = entry_expr(L_ + i, i);
        builder_.add_eq(row);
        if (!im.terms.empty() || im.constant != 0.0) {
            LinExpr imrow = im;
            builder_.add_eq(imrow);
        }
        return;
    }
    // -Im H_ij at (L+j, i) and +Im H_ij at (L+i, j).
    {
        LinExpr row = entry_expr(L_ + j, i);
        LinExpr target = im;
        row += target;
        builder_.add_eq(row);
    }
    {
        LinExpr row = entry_expr(L_ + i, j);
        LinExpr target = im;
        target *= -1.0;
        row += target;
        builder_.add_eq(row);
    }
}

void HermitianBlockTies::tie_const(int i, int j, std::complex<double> value) {
    tie(i, j, LinExpr(value.real()), LinExpr(value.imag()));
}

LinExpr HermitianBlockTies::trace_expr(int diag_begin, int diag_end) const {
    LinExpr expr;
    for (int i = diag_begin; i < diag_end; ++i) {
        // Both embedded copies carry Re H_ii; average them.
        expr.add(entry_var(i, i), 0.5);
        expr.add(entry_var(L_ + i, L_ + i), 0.5);
    }
    return expr;
}

} // namespace passkit::conic
