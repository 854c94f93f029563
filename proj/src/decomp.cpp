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

#include "wtd/decomp.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <vector>

namespace wtd
{
    namespace
    {
        void require_tall(const Matrix &a, const char *op)
        {
            if (a.rows() == 0 || a.cols() == 0)
                fail(ErrorCode::domain, std::string(op) + ": empty matrix");
            if (a.rows() < a.cols())
                fail(ErrorCode::domain, std::string(op) + ": fewer rows than columns");
            if (!a.allFinite())
                fail(ErrorCode::domain, std::string(op) + ": non-finite entry");
        }

        Matrix reversal(Eigen::Index n)
        {
            Matrix j = Matrix::Zero(n, n);
            for (Eigen::Index i = 0; i < n; ++i)
                j(i, n - 1 - i) = 1.0;
            return j;
        }

        // Indices that order `v` non-increasingly; ties keep computation order.
        std::vector<Eigen::Index> descending_order(const RealVector &v)
        {
            std::vector<Eigen::Index> idx(static_cast<std::size_t>(v.size()));
            std::iota(idx.begin(), idx.end(), Eigen::Index(0));
            std::stable_sort(idx.begin(), idx.end(), [&](Eigen::Index a, Eigen::Index b)
                             { return v(a) > v(b); });
            return idx;
        }

        // Solution of the Hermitian-definite pencil (A1^H A1, A2^H A2) through
        // A2 = Q2 R: lambda are the eigenvalues of (A1 R^-1)^H (A1 R^-1) in
        // non-increasing order, w the matching orthonormal eigenvectors.
        struct Pencil
        {
            Matrix q2; // first N columns of the unitary factor of A2
            Matrix r;  // N x N upper-triangular, positive diagonal
            RealVector lambda;
            Matrix w;
        };

        Pencil solve_pencil(const Matrix &a1, const Matrix &a2, const char *op)
        {
            require_tall(a1, op);
            require_tall(a2, op);
            if (a1.cols() != a2.cols())
                fail(ErrorCode::domain, std::string(op) + ": column counts differ");

            const Eigen::Index n = a1.cols();
            qr(a1); // rank gate for A1
            const GtdFactors f2 = qr(a2);

            Pencil p;
            p.q2 = f2.u.leftCols(n);
            p.r = f2.t.topRows(n);
            const Matrix m = p.r.triangularView<Eigen::Upper>().solve<Eigen::OnTheRight>(a1);
            const Matrix c = m.adjoint() * m;

            Eigen::SelfAdjointEigenSolver<Matrix> eig(c);
            if (eig.info() != Eigen::Success)
                fail(ErrorCode::numerical_failure, std::string(op) + ": eigensolver did not converge");

            const auto order = descending_order(eig.eigenvalues());
            p.lambda.resize(n);
            p.w.resize(n, n);
            for (Eigen::Index i = 0; i < n; ++i)
            {
                p.lambda(i) = eig.eigenvalues()(order[std::size_t(i)]);
                p.w.col(i) = eig.eigenvectors().col(order[std::size_t(i)]);
            }
            if (!(p.lambda.minCoeff() > 0.0))
                fail(ErrorCode::rank_deficient, std::string(op) + ": zero generalized singular value");
            return p;
        }
    }

    RealVector GtdFactors::diagonal() const
    {
        const Eigen::Index n = std::min(t.rows(), t.cols());
        RealVector d(n);
        for (Eigen::Index i = 0; i < n; ++i)
            d(i) = t(i, i).real();
        return d;
    }

    RealVector GsvdDiagonalFactors::ratios() const
    {
        const Eigen::Index n = x.cols();
        RealVector r(n);
        for (Eigen::Index i = 0; i < n; ++i)
            r(i) = l1(i, i).real() / l2(i, i).real();
        return r;
    }

    GtdFactors qr(const Matrix &a)
    {
        require_tall(a, "qr");
        const Eigen::Index m = a.rows();
        const Eigen::Index n = a.cols();

        Eigen::HouseholderQR<Matrix> house(a);
        GtdFactors f;
        f.u = house.householderQ();
        f.t = house.matrixQR().triangularView<Eigen::Upper>();
        f.v = Matrix::Identity(n, n);

        const double scale = a.norm();
        for (Eigen::Index i = 0; i < n; ++i)
        {
            const double mag = std::abs(f.t(i, i));
            if (!(mag > tol::rank * scale))
            {
                std::ostringstream msg;
                msg << "qr: rank deficient (|R(" << i << "," << i << ")| = " << mag << ")";
                fail(ErrorCode::rank_deficient, msg.str());
            }
            const cplx phase = f.t(i, i) / mag;
            f.t.row(i) *= std::conj(phase);
            f.t(i, i) = mag;
            f.u.col(i) *= phase;
        }
        (void)m;
        return f;
    }

    QlFactors ql(const Matrix &a)
    {
        require_tall(a, "ql");
        const Eigen::Index m = a.rows();
        const Eigen::Index n = a.cols();
        const Matrix jm = reversal(m);
        const Matrix jn = reversal(n);

        // A J_n = Q R  =>  A = (Q J_m)(J_m R J_n).
        const GtdFactors f = qr(a * jn);
        QlFactors out;
        out.u = f.u * jm;
        out.l = jm * f.t * jn;
        return out;
    }

    GtdFactors svd(const Matrix &a)
    {
        if (a.rows() == 0 || a.cols() == 0)
            fail(ErrorCode::domain, "svd: empty matrix");
        if (!a.allFinite())
            fail(ErrorCode::domain, "svd: non-finite entry");

        Eigen::JacobiSVD<Matrix> dec(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
        if (dec.info() != Eigen::Success)
            fail(ErrorCode::numerical_failure, "svd: did not converge");

        GtdFactors f;
        f.u = dec.matrixU();
        f.v = dec.matrixV();
        f.t = generalized_diagonal(a.rows(), a.cols(), dec.singularValues());
        return f;
    }

    MajorizationCheck check_majorization(const RealVector &x, const RealVector &y)
    {
        if (x.size() != y.size() || x.size() == 0)
            fail(ErrorCode::domain, "majorizes: vectors must have equal, nonzero length");
        if (!(x.minCoeff() > 0.0) || !(y.minCoeff() > 0.0) || !x.allFinite() || !y.allFinite())
            fail(ErrorCode::domain, "majorizes: entries must be positive and finite");

        RealVector lx = x.array().log();
        RealVector ly = y.array().log();
        std::sort(lx.data(), lx.data() + lx.size(), std::greater<>());
        std::sort(ly.data(), ly.data() + ly.size(), std::greater<>());

        const std::size_t n = std::size_t(x.size());
        double px = 0.0, py = 0.0;
        for (std::size_t l = 0; l < n; ++l)
        {
            px += lx(Eigen::Index(l));
            py += ly(Eigen::Index(l));
            const double slack = tol::majorization * std::max({1.0, std::abs(px), std::abs(py)});
            if (l + 1 < n && px < py - slack)
                return {false, l + 1};
            if (l + 1 == n && std::abs(px - py) > slack)
                return {false, n};
        }
        return {};
    }

    bool majorizes(const RealVector &x, const RealVector &y)
    {
        return check_majorization(x, y).holds;
    }

    GtdFactors gtd(const Matrix &a, const RealVector &target)
    {
        require_tall(a, "gtd");
        const Eigen::Index m = a.rows();
        const Eigen::Index n = a.cols();
        if (target.size() != n)
            fail(ErrorCode::domain, "gtd: target length must equal the column count");
        if (!(target.minCoeff() > 0.0) || !target.allFinite())
            fail(ErrorCode::domain, "gtd: target entries must be positive and finite");

        GtdFactors s = svd(a);
        const RealVector sigma = s.diagonal();
        if (!(sigma(n - 1) > tol::rank * sigma(0)))
            fail(ErrorCode::rank_deficient, "gtd: matrix is not of full column rank");

        const MajorizationCheck gate = check_majorization(sigma, target);
        if (!gate.holds)
        {
            std::ostringstream msg;
            msg << "gtd: singular values do not majorize the target; prefix " << gate.violating_prefix
                << (gate.violating_prefix == std::size_t(n) ? " (total products differ)" : " violates the ordered product bound");
            throw MajorizationError(gate.violating_prefix, msg.str());
        }

        // Square working block; rows >= n of T stay zero.
        Matrix r = s.t.topRows(n);
        Matrix &u = s.u;
        Matrix &v = s.v;

        auto swap_index = [&](Eigen::Index i, Eigen::Index j)
        {
            if (i == j)
                return;
            r.row(i).swap(r.row(j));
            r.col(i).swap(r.col(j));
            u.col(i).swap(u.col(j));
            v.col(i).swap(v.col(j));
        };

        for (Eigen::Index k = 0; k + 1 < n; ++k)
        {
            const double goal = target(k);

            // The trailing block is diagonal. Pick two entries adjacent in
            // sorted order that bracket the goal.
            RealVector trailing(n - k);
            for (Eigen::Index i = k; i < n; ++i)
                trailing(i - k) = r(i, i).real();
            const auto order = descending_order(trailing);

            Eigen::Index p = order.front() + k, q = order[1] + k;
            if (goal < trailing(order.front()))
            {
                p = order[order.size() - 2] + k;
                q = order.back() + k;
                for (std::size_t j = 0; j + 1 < order.size(); ++j)
                    if (trailing(order[j]) >= goal && goal >= trailing(order[j + 1]))
                    {
                        p = order[j] + k;
                        q = order[j + 1] + k;
                        break;
                    }
            }

            swap_index(k, p);
            if (q == k)
                q = p;
            swap_index(k + 1, q);

            const double d1 = r(k, k).real();
            const double d2 = r(k + 1, k + 1).real();
            double c = 1.0, sn = 0.0;
            if (std::abs(d1 - d2) > 0.0)
            {
                const double c2 = std::clamp((goal * goal - d2 * d2) / (d1 * d1 - d2 * d2), 0.0, 1.0);
                c = std::sqrt(c2);
                sn = std::sqrt(1.0 - c2);
            }
            // Realized diagonal entry; equals `goal` unless the slack clamp engaged.
            const double rk = std::sqrt(c * c * d1 * d1 + sn * sn * d2 * d2);

            Eigen::Matrix2cd g1, g2;
            g1 << c, -sn, sn, c;
            g2 << c * d1 / rk, -sn * d2 / rk, sn * d2 / rk, c * d1 / rk;

            r.middleCols(k, 2) = r.middleCols(k, 2) * g1;
            r.middleRows(k, 2) = g2.transpose() * r.middleRows(k, 2);
            u.middleCols(k, 2) = u.middleCols(k, 2) * g2;
            v.middleCols(k, 2) = v.middleCols(k, 2) * g1;

            r(k + 1, k) = 0.0;
            r(k, k) = rk;
            r(k + 1, k + 1) = d1 * d2 / rk;
        }

        s.t = Matrix::Zero(m, n);
        s.t.topRows(n) = r.triangularView<Eigen::Upper>();
        return s;
    }

    GtdFactors gmd(const Matrix &a)
    {
        require_tall(a, "gmd");
        const RealVector sigma = svd(a).diagonal();
        if (!(sigma(sigma.size() - 1) > tol::rank * sigma(0)))
            fail(ErrorCode::rank_deficient, "gmd: matrix is not of full column rank");
        const double mean = std::exp(sigma.array().log().mean());
        return gtd(a, RealVector::Constant(a.cols(), mean));
    }

    RealVector gsv_values(const Matrix &a1, const Matrix &a2)
    {
        return solve_pencil(a1, a2, "gsv_values").lambda.array().sqrt();
    }

    GsvdDiagonalFactors gsvd_diagonal(const Matrix &a1, const Matrix &a2)
    {
        const Pencil p = solve_pencil(a1, a2, "gsvd_diagonal");
        const Eigen::Index n = a1.cols();

        // Y = R^-1 W S with S = (I + Lambda)^-1/2 gives the normalization
        // L1^H L1 + L2^H L2 = I; X = Y^-H = R^H W S^-1.
        const RealVector scale = (1.0 + p.lambda.array()).rsqrt();
        const RealVector d1 = p.lambda.array().sqrt() * scale.array();
        const RealVector d2 = scale;

        const Matrix m = p.r.triangularView<Eigen::Upper>().solve<Eigen::OnTheRight>(a1);
        Matrix u1 = m * p.w;
        for (Eigen::Index i = 0; i < n; ++i)
            u1.col(i) /= std::sqrt(p.lambda(i));
        const Matrix u2 = p.q2 * p.w;

        GsvdDiagonalFactors f;
        f.u1 = complete_unitary(u1);
        f.u2 = complete_unitary(u2);
        f.l1 = generalized_diagonal(a1.rows(), n, d1);
        f.l2 = generalized_diagonal(a2.rows(), n, d2);
        f.x = p.r.adjoint() * p.w * scale.cwiseInverse().asDiagonal();
        return f;
    }

    JointTriangularization gsvd_triangular(const Matrix &a1, const Matrix &a2)
    {
        const GsvdDiagonalFactors d = gsvd_diagonal(a1, a2);
        const Eigen::Index n = a1.cols();

        // X = Q L  =>  X^H = L^H Q^H with L^H upper-triangular.
        const QlFactors xl = ql(d.x);
        const Matrix t = xl.l.adjoint();

        JointTriangularization j;
        j.u1 = d.u1;
        j.u2 = d.u2;
        j.va = xl.u;
        j.t1 = Matrix::Zero(a1.rows(), n);
        j.t2 = Matrix::Zero(a2.rows(), n);
        j.diag1.resize(n);
        j.diag2.resize(n);
        for (Eigen::Index i = 0; i < n; ++i)
        {
            const double s1 = d.l1(i, i).real();
            const double s2 = d.l2(i, i).real();
            for (Eigen::Index c = i; c < n; ++c)
            {
                j.t1(i, c) = s1 * t(i, c);
                j.t2(i, c) = s2 * t(i, c);
            }
            j.t1(i, i) = s1 * t(i, i).real();
            j.t2(i, i) = s2 * t(i, i).real();
            j.diag1(i) = j.t1(i, i).real();
            j.diag2(i) = j.t2(i, i).real();
        }
        return j;
    }

    JointTriangularization joint_triangularize(const Matrix &a1, const Matrix &a2, const Matrix &va)
    {
        require_tall(a1, "joint_triangularize");
        require_tall(a2, "joint_triangularize");
        if (a1.cols() != a2.cols())
            fail(ErrorCode::domain, "joint_triangularize: column counts differ");
        if (va.rows() != a1.cols() || va.cols() != a1.cols())
            fail(ErrorCode::domain, "joint_triangularize: VA must be N x N");
        if (unitarity_error(va) > tol::unitary_input)
            fail(ErrorCode::domain, "joint_triangularize: VA is not unitary");

        const GtdFactors f1 = qr(a1 * va);
        const GtdFactors f2 = qr(a2 * va);

        JointTriangularization j;
        j.u1 = f1.u;
        j.u2 = f2.u;
        j.va = va;
        j.t1 = f1.t;
        j.t2 = f2.t;
        j.diag1 = f1.diagonal();
        j.diag2 = f2.diagonal();
        return j;
    }
}
