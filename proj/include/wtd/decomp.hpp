// SPDX-License-Identifier: Apache-2.0
//
// wtd - MIMO wiretap decompositions, secrecy capacity and layered transceiver planning
// Copyright (C) 2026 The wtd authors
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

#ifndef WTD_DECOMP_HPP
#define WTD_DECOMP_HPP

#include "wtd/core.hpp"

#include <cstddef>

namespace wtd
{
    // A = U T V^H with U (M x M) and V (N x N) unitary and T generalized upper-triangular.
    // All triangular factors produced here carry strictly positive real diagonals;
    // phases are absorbed into U.
    struct GtdFactors
    {
        Matrix u;
        Matrix t;
        Matrix v;

        RealVector diagonal() const; // real parts of T_ii, i < N
        Matrix reconstruct() const { return u * t * v.adjoint(); }
    };

    // A = U L with L lower-triangular (bottom-aligned when M > N) and positive diagonal.
    struct QlFactors
    {
        Matrix u;
        Matrix l;
    };

    // A1 = U1 L1 X^H, A2 = U2 L2 X^H with L1^H L1 + L2^H L2 = I and
    // diag(L1) ./ diag(L2) non-increasing (the generalized singular values).
    struct GsvdDiagonalFactors
    {
        Matrix u1;
        Matrix u2;
        Matrix x;
        Matrix l1;
        Matrix l2;

        RealVector ratios() const;
    };

    // A_k = U_k T_k VA^H for k = 1, 2 with shared right unitary factor.
    struct JointTriangularization
    {
        Matrix u1;
        Matrix u2;
        Matrix va;
        Matrix t1;
        Matrix t2;
        RealVector diag1; // b_i
        RealVector diag2; // e_i

        RealVector ratios() const { return diag1.cwiseQuotient(diag2); }
    };

    // Upper-triangular QR with V = I; U is the full M x M unitary.
    GtdFactors qr(const Matrix &a);

    QlFactors ql(const Matrix &a);

    // T is generalized diagonal with non-increasing singular values. Any shape is
    // accepted; rank deficiency shows up as zero singular values.
    GtdFactors svd(const Matrix &a);

    struct MajorizationCheck
    {
        bool holds = true;
        std::size_t violating_prefix = 0; // 1-based, 0 when `holds`
    };

    /// Multiplicative majorization x >= y: ordered prefix products of x dominate
    /// those of y and the total products agree (relative slack tol::majorization).
    MajorizationCheck check_majorization(const RealVector &x, const RealVector &y);
    bool majorizes(const RealVector &x, const RealVector &y);

    /// Generalized triangular decomposition with prescribed diagonal `target`
    /// (in the given order). Starts from the SVD and walks a chain of paired
    /// Givens rotations; each step fixes one diagonal entry while keeping the
    /// trailing block diagonal. Throws MajorizationError if sigma(A) does not
    /// majorize `target`.
    GtdFactors gtd(const Matrix &a, const RealVector &target);

    /// GTD whose diagonal is the geometric mean of the singular values.
    GtdFactors gmd(const Matrix &a);

    /// Generalized singular values of (A1, A2), non-increasing.
    RealVector gsv_values(const Matrix &a1, const Matrix &a2);

    GsvdDiagonalFactors gsvd_diagonal(const Matrix &a1, const Matrix &a2);

    /// Triangular GSVD: QL of X turns the diagonal form into a joint
    /// triangularization whose diagonal ratios are the generalized singular values.
    JointTriangularization gsvd_triangular(const Matrix &a1, const Matrix &a2);

    /// T_k from qr(A_k VA) for an arbitrary unitary VA.
    JointTriangularization joint_triangularize(const Matrix &a1, const Matrix &a2, const Matrix &va);
}

#endif
