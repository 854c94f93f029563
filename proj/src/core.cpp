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

#include "wtd/core.hpp"

#include <Eigen/QR>

namespace wtd
{
    const char *to_string(ErrorCode code) noexcept
    {
        switch (code)
        {
        case ErrorCode::domain:
            return "DomainError";
        case ErrorCode::rank_deficient:
            return "RankDeficient";
        case ErrorCode::majorization:
            return "MajorizationError";
        case ErrorCode::not_psd:
            return "NotPSD";
        case ErrorCode::numerical_failure:
            return "NumericalFailure";
        case ErrorCode::insufficient_samples:
            return "InsufficientSamples";
        }
        return "UnknownError";
    }

    void fail(ErrorCode code, const std::string &what)
    {
        throw Error(code, what);
    }

    double unitarity_error(const Matrix &u)
    {
        if (u.rows() != u.cols())
            return std::numeric_limits<double>::infinity();
        return (u.adjoint() * u - Matrix::Identity(u.cols(), u.cols())).norm();
    }

    double hermitian_error(const Matrix &a)
    {
        if (a.rows() != a.cols())
            return std::numeric_limits<double>::infinity();
        return (a - a.adjoint()).norm();
    }

    double relative_residual(const Matrix &approx, const Matrix &exact)
    {
        const double scale = exact.norm();
        const double diff = (approx - exact).norm();
        return scale > 0.0 ? diff / scale : diff;
    }

    bool is_generalized_upper_triangular(const Matrix &t)
    {
        for (Eigen::Index j = 0; j < t.cols(); ++j)
            for (Eigen::Index i = j + 1; i < t.rows(); ++i)
                if (t(i, j) != cplx(0.0, 0.0))
                    return false;
        return true;
    }

    Matrix generalized_diagonal(Eigen::Index rows, Eigen::Index cols, const RealVector &diag)
    {
        Matrix out = Matrix::Zero(rows, cols);
        const Eigen::Index n = std::min({rows, cols, diag.size()});
        for (Eigen::Index i = 0; i < n; ++i)
            out(i, i) = diag(i);
        return out;
    }

    Matrix complete_unitary(const Matrix &cols)
    {
        const Eigen::Index m = cols.rows();
        const Eigen::Index n = cols.cols();
        if (n > m)
            fail(ErrorCode::domain, "complete_unitary: more columns than rows");
        if (n == m)
            return cols;
        Eigen::HouseholderQR<Matrix> house(cols);
        Matrix u = house.householderQ();
        u.leftCols(n) = cols;
        return u;
    }
}
