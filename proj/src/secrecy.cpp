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

#include "wtd/secrecy.hpp"
#include "wtd/decomp.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace wtd
{
    namespace
    {
        void require_channel(const Matrix &h, Eigen::Index n, const char *op)
        {
            if (h.cols() != n)
                fail(ErrorCode::domain, std::string(op) + ": channel column count does not match the covariance dimension");
            if (h.rows() == 0)
                fail(ErrorCode::domain, std::string(op) + ": channel has no rows");
            if (!h.allFinite())
                fail(ErrorCode::domain, std::string(op) + ": non-finite channel entry");
        }

        double log2_det_pd(const Matrix &a)
        {
            Eigen::LLT<Matrix> llt(a);
            if (llt.info() != Eigen::Success)
                fail(ErrorCode::numerical_failure, "log-determinant of a non positive definite matrix");
            double s = 0.0;
            for (Eigen::Index i = 0; i < a.rows(); ++i)
                s += std::log2(llt.matrixLLT()(i, i).real());
            return 2.0 * s;
        }

        double positive_log_sum(const RealVector &mu, double sign)
        {
            double s = 0.0;
            for (Eigen::Index i = 0; i < mu.size(); ++i)
                s += std::max(0.0, sign * 2.0 * std::log2(mu(i)));
            return s;
        }
    }

    Covariance::Covariance(const Matrix &k)
    {
        if (k.rows() != k.cols() || k.rows() == 0)
            fail(ErrorCode::domain, "covariance must be a non-empty square matrix");
        if (!k.allFinite())
            fail(ErrorCode::domain, "covariance has a non-finite entry");
        if (hermitian_error(k) > tol::hermitian * std::max(1.0, k.norm()))
            fail(ErrorCode::domain, "covariance is not Hermitian");

        k_ = 0.5 * (k + k.adjoint());
        Eigen::SelfAdjointEigenSolver<Matrix> eig(k_);
        if (eig.info() != Eigen::Success)
            fail(ErrorCode::numerical_failure, "covariance eigendecomposition failed");
        eig_ = eig.eigenvalues();
        if (eig_.minCoeff() < -tol::psd_clamp)
            fail(ErrorCode::not_psd, "covariance has a negative eigenvalue");
        eig_ = eig_.cwiseMax(0.0);
        root_ = eig.eigenvectors() * eig_.cwiseSqrt().asDiagonal() * eig.eigenvectors().adjoint();
    }

    Covariance Covariance::identity(Eigen::Index n)
    {
        return Covariance(Matrix::Identity(n, n));
    }

    Covariance Covariance::zero(Eigen::Index n)
    {
        return Covariance(Matrix::Zero(n, n));
    }

    bool Covariance::dominated_by(const Covariance &kbar, double slack) const
    {
        if (kbar.dim() != dim())
            return false;
        Eigen::SelfAdjointEigenSolver<Matrix> eig(kbar.matrix() - k_, Eigen::EigenvaluesOnly);
        return eig.eigenvalues().minCoeff() >= -slack;
    }

    Matrix matrix_sqrt(const Matrix &k)
    {
        return Covariance(k).sqrt();
    }

    Matrix effective_mmse_matrix(const Matrix &h, const Matrix &b)
    {
        if (b.rows() != b.cols())
            fail(ErrorCode::domain, "effective_mmse_matrix: B must be square");
        require_channel(h, b.cols(), "effective_mmse_matrix");
        const Eigen::Index n = b.cols();
        Matrix g(h.rows() + n, n);
        g.topRows(h.rows()) = h * b;
        g.bottomRows(n) = Matrix::Identity(n, n);
        return g;
    }

    double gaussian_mi(const Matrix &h, const Covariance &k)
    {
        require_channel(h, k.dim(), "gaussian_mi");
        const Matrix hb = h * k.sqrt();
        return log2_det_pd(Matrix::Identity(h.rows(), h.rows()) + hb * hb.adjoint());
    }

    double secrecy_mi_difference(const Matrix &hb, const Matrix &he, const Covariance &k)
    {
        return gaussian_mi(hb, k) - gaussian_mi(he, k);
    }

    RealVector channel_gsv(const Matrix &hb, const Matrix &he, const Covariance &k)
    {
        return gsv_values(effective_mmse_matrix(hb, k.sqrt()), effective_mmse_matrix(he, k.sqrt()));
    }

    SecrecyResult secrecy_capacity_cov(const Matrix &hb, const Matrix &he, const Covariance &kbar)
    {
        const Matrix &b = kbar.sqrt();
        const JointTriangularization j =
            gsvd_triangular(effective_mmse_matrix(hb, b), effective_mmse_matrix(he, b));

        SecrecyResult res;
        res.gsv = j.ratios();
        res.va = j.va;
        for (Eigen::Index i = 0; i < res.gsv.size(); ++i)
            if (res.gsv(i) * res.gsv(i) > 1.0 + tol::gsv_unity)
                ++res.lb;
        res.capacity_bits = positive_log_sum(res.gsv, 1.0);

        const Matrix vb = j.va.leftCols(Eigen::Index(res.lb));
        res.k_star = Covariance(b * vb * vb.adjoint() * b.adjoint());
        return res;
    }

    TruncationReport verify_truncation(const Matrix &hb, const Matrix &he, const Covariance &kbar)
    {
        const SecrecyResult res = secrecy_capacity_cov(hb, he, kbar);
        TruncationReport rep;
        rep.lb = res.lb;
        rep.gsv_kbar = res.gsv;
        rep.gsv_kstar = channel_gsv(hb, he, res.k_star);
        for (Eigen::Index i = 0; i < res.gsv.size(); ++i)
        {
            const double expected = std::size_t(i) < res.lb ? res.gsv(i) : 1.0;
            rep.max_deviation = std::max(rep.max_deviation, std::abs(rep.gsv_kstar(i) - expected));
        }
        rep.passed = rep.max_deviation <= 1e-7;
        return rep;
    }

    Covariance sample_dominated_covariance(const Covariance &kbar, RandomStream &rs)
    {
        const Eigen::Index n = kbar.dim();
        const Matrix q = haar_unitary(rs, n);
        RealVector u(n);
        for (Eigen::Index i = 0; i < n; ++i)
            u(i) = rs.uniform();
        const Matrix w = q * u.asDiagonal() * q.adjoint();
        return Covariance(kbar.sqrt() * w * kbar.sqrt());
    }

    MonotonicityReport gsv_monotonicity_check(const Matrix &hb, const Matrix &he, const Covariance &kbar,
                                              std::size_t samples, std::uint64_t seed)
    {
        if (samples == 0)
            fail(ErrorCode::domain, "gsv_monotonicity_check: samples must be positive");

        const RealVector ref = channel_gsv(hb, he, kbar).array().log().abs();
        MonotonicityReport rep;
        rep.samples = samples;
        rep.worst_margin = std::numeric_limits<double>::infinity();
        for (std::size_t s = 0; s < samples; ++s)
        {
            RandomStream rs(seed, stream_id::dominated_sampler, s);
            const Covariance k = sample_dominated_covariance(kbar, rs);
            const RealVector cur = channel_gsv(hb, he, k).array().log().abs();
            const double margin = (ref - cur).minCoeff();
            rep.worst_margin = std::min(rep.worst_margin, margin);
            if (margin < -1e-8)
            {
                ++rep.violations;
                if (!rep.witness)
                    rep.witness = k.matrix();
            }
        }
        return rep;
    }

    BroadcastRegion broadcast_region(const Matrix &hb, const Matrix &hc, const Covariance &kbar)
    {
        BroadcastRegion r;
        r.gsv = channel_gsv(hb, hc, kbar);
        r.rb_max = positive_log_sum(r.gsv, 1.0);
        r.rc_max = positive_log_sum(r.gsv, -1.0);
        return r;
    }

    double scalar_secrecy_capacity(cplx hb, cplx he)
    {
        return std::max(0.0, std::log2(1.0 + std::norm(hb)) - std::log2(1.0 + std::norm(he)));
    }

    PowerSearchResult power_constrained_capacity(const Matrix &hb, const Matrix &he, double power,
                                                 std::size_t budget, std::uint64_t seed)
    {
        if (!(power > 0.0) || !std::isfinite(power))
            fail(ErrorCode::domain, "power_constrained_capacity: power must be positive");
        if (budget == 0)
            fail(ErrorCode::domain, "power_constrained_capacity: budget must be positive");
        const Eigen::Index n = hb.cols();
        require_channel(hb, n, "power_constrained_capacity");
        require_channel(he, n, "power_constrained_capacity");

        PowerSearchResult best;
        best.capacity_lower_bound = -1.0;

        auto to_kbar = [&](const Matrix &c)
        {
            const Matrix cc = c * c.adjoint();
            return Covariance(power / cc.trace().real() * cc);
        };
        // Returns nullopt once the budget is exhausted.
        auto evaluate = [&](const Matrix &c) -> std::optional<double>
        {
            if (best.evaluations >= budget)
                return std::nullopt;
            ++best.evaluations;
            if (!(c.norm() > 0.0))
                return -1.0;
            Covariance kbar = to_kbar(c);
            const double cap = secrecy_capacity_cov(hb, he, kbar).capacity_bits;
            if (cap > best.capacity_lower_bound)
            {
                best.capacity_lower_bound = cap;
                best.best_kbar = std::move(kbar);
            }
            return cap;
        };

        constexpr double initial_step = 0.5;
        constexpr double final_step = 1e-5;

        for (std::uint64_t restart = 0;; ++restart)
        {
            Matrix c(n, n);
            if (restart == 0)
                c = Matrix::Identity(n, n);
            else
            {
                RandomStream rs(seed, stream_id::power_restart, restart);
                for (Eigen::Index j = 0; j < n; ++j)
                    for (Eigen::Index i = 0; i < n; ++i)
                        c(i, j) = rs.complex_normal();
            }
            c /= c.norm();

            auto value = evaluate(c);
            if (!value)
                return best;
            double current = *value;

            for (double step = initial_step; step >= final_step;)
            {
                bool improved = false;
                for (Eigen::Index idx = 0; idx < 2 * n * n; ++idx)
                {
                    const Eigen::Index entry = idx / 2;
                    const cplx dir = idx % 2 == 0 ? cplx(1.0, 0.0) : cplx(0.0, 1.0);
                    for (const double sgn : {1.0, -1.0})
                    {
                        Matrix trial = c;
                        trial(entry % n, entry / n) += sgn * step * dir;
                        trial /= trial.norm();
                        const auto v = evaluate(trial);
                        if (!v)
                            return best;
                        if (*v > current + 1e-14)
                        {
                            current = *v;
                            c = trial;
                            improved = true;
                            break;
                        }
                    }
                }
                if (!improved)
                    step *= 0.5;
            }
        }
    }
}
