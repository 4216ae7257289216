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

#include "passkit/conic/problem.hpp"

#include <complex>

namespace passkit::conic {

// Canonical complex-to-real embeddings used at the solver boundary.
//
// A complex Hermitian matrix H of side L maps to the real symmetric matrix
//     embed(H) = [ Re H  -Im H ]
//                [ Im H   Re H ]
// of side 2L; H >= 0 iff embed(H) >= 0, and trace doubles. Complex vectors
// stack as [Re; Im] inside second-order cones.

/// svec length for a symmetric matrix of the given side.
int svec_len(int side);

/// Index of the (i, j) lower-triangle entry (i >= j) in column-major svec
/// packing.
int svec_index(int side, int i, int j);

/// Coefficient that converts an svec entry back to the matrix entry:
/// 1 on the diagonal, 1/sqrt(2) off it.
double svec_entry_scale(int i, int j);

/// Packs a symmetric matrix into svec form (off-diagonals scaled by sqrt(2)).
Eigen::VectorXd svec_pack(const Eigen::MatrixXd& S);

/// Inverse of svec_pack.
Eigen::MatrixXd svec_unpack(const Eigen::VectorXd& v, int side);

/// Real 2L x 2L embedding of a complex Hermitian matrix.
Eigen::MatrixXd embed_hermitian(const Eigen::MatrixXcd& H);

/// Extracts the Hermitian matrix back from its real embedding (averages the
/// duplicated blocks, so it is exact on structured input and a projection on
/// nearly-structured input).
Eigen::MatrixXcd unembed_hermitian(const Eigen::MatrixXd& S);

/// Helper for building LMI constraints over a realified PSD segment: ties the
/// complex entry (i, j) of the underlying Hermitian matrix (side L) to affine
/// expressions for its real and imaginary parts. All duplicated positions of
/// the embedding are tied, so any PSD-feasible point corresponds to a genuine
/// Hermitian matrix on the structured entries.
class HermitianBlockTies {
public:
    HermitianBlockTies(ProblemBuilder& builder, int psd_offset, int complex_side);

    /// H(i, j) == re + 1i * im for i >= j; i == j requires im == 0.
    void tie(int i, int j, const LinExpr& re, const LinExpr& im);
    /// H(i, j) == constant.
    void tie_const(int i, int j, std::complex<double> value);

    /// Affine expression for Re H(i,i) summed over a diagonal index range
    /// (used for trace constraints); accounts for the doubled trace of the
    /// embedding by averaging the two copies.
    LinExpr trace_expr(int diag_begin, int diag_end) const;

    /// svec variable index of the real-embedding entry (a, b), a >= b.
    int entry_var(int a, int b) const;

private:
    ProblemBuilder& builder_;
    int offset_;
    int L_;

    LinExpr entry_expr(int a, int b) const; // includes svec scaling
};

} // namespace passkit::conic
