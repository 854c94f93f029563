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

#include "oracles.hpp"

#include "wtd/decomp.hpp"
#include "wtd/secrecy.hpp"

#include <gtest/gtest.h>

#include <numbers>

using namespace wtd;
using oracle::Gen;

namespace
{
    struct Instance
    {
        Matrix hb, he;
    };

    Instance random_instance(Gen &g, int n, int nb, int ne)
    {
        return {g.complex(nb, n), g.complex(ne, n)};
    }

    Matrix diag(std::initializer_list<double> v)
    {
        Matrix m = Matrix::Zero(Eigen::Index(v.size()), Eigen::Index(v.size()));
        Eigen::Index i = 0;
        for (double x : v)
            m(i, i) = x, ++i;
        return m;
    }

    ErrorCode code_of(const std::function<void()> &f)
    {
        try
        {
            f();
        }
        catch (const Error &e)
        {
            return e.code();
        }
        ADD_FAILURE() << "no exception";
        return ErrorCode::numerical_failure;
    }
}

TEST(MatrixSqrt, Examples)
{
    EXPECT_LE((matrix_sqrt(Matrix::Identity(3, 3)) - Matrix::Identity(3, 3)).norm(), 1e-15);
    EXPECT_LE((matrix_sqrt(diag({4, 0})) - diag({2, 0})).norm(), 1e-15);
}

TEST(MatrixSqrt, RandomPsdReconstructs)
{
    Gen g(40);
    for (int it = 0; it < 20; ++it)
    {
        const Matrix k = g.psd(4, g.integer(1, 4));
        const Matrix b = matrix_sqrt(k);
        EXPECT_LE((b * b.adjoint() - k).norm(), 1e-9 * std::max(1.0, k.norm()));
        EXPECT_LE(hermitian_error(b), 1e-12 * std::max(1.0, b.norm()));
    }
}

TEST(MatrixSqrt, ClampsTinyNegativeAndRejectsNegative)
{
    const Matrix b = matrix_sqrt(diag({1.0, -5e-11}));
    EXPECT_EQ(b(1, 1), cplx(0.0));
    EXPECT_EQ(code_of([] { matrix_sqrt(diag({1.0, -1e-6})); }), ErrorCode::not_psd);
    Matrix nh = Matrix::Identity(2, 2);
    nh(0, 1) = 0.5;
    EXPECT_EQ(code_of([&] { matrix_sqrt(nh); }), ErrorCode::domain);
}

TEST(Covariance, Domination)
{
    const Covariance kbar = Covariance::identity(2);
    EXPECT_TRUE(Covariance(diag({0.5, 1.0})).dominated_by(kbar));
    EXPECT_FALSE(Covariance(diag({0.5, 1.1})).dominated_by(kbar));
    EXPECT_TRUE(Covariance(diag({0.5, 1.0 + 5e-9})).dominated_by(kbar));
}

TEST(EffectiveMmse, Examples)
{
    const Matrix g0 = effective_mmse_matrix(Matrix::Zero(2, 3), Matrix::Identity(3, 3));
    EXPECT_EQ(g0.rows(), 5);
    EXPECT_LE((svd(g0).diagonal() - RealVector::Ones(3)).cwiseAbs().maxCoeff(), 1e-14);

    const Matrix g1 = effective_mmse_matrix(Matrix::Ones(1, 1), Matrix::Ones(1, 1));
    EXPECT_NEAR(svd(g1).diagonal()(0), std::sqrt(2.0), 1e-15);
}

TEST(EffectiveMmse, SingularValuesShiftByOne)
{
    Gen g(41);
    for (int it = 0; it < 20; ++it)
    {
        const int n = g.integer(1, 4), m = g.integer(1, 5);
        const Matrix h = g.complex(m, n), b = matrix_sqrt(g.psd(n));
        const RealVector sg = oracle::singular_values(effective_mmse_matrix(h, b));
        const RealVector sh = oracle::singular_values(h * b);
        for (int i = 0; i < n; ++i)
            EXPECT_NEAR(sg(i) * sg(i), 1.0 + sh(i) * sh(i), 1e-9 * (1.0 + sh(0) * sh(0)));
    }
    EXPECT_THROW(effective_mmse_matrix(Matrix::Ones(2, 3), Matrix::Identity(2, 2)), Error);
}

TEST(GaussianMi, Examples)
{
    Gen g(42);
    EXPECT_EQ(gaussian_mi(g.complex(3, 2), Covariance::zero(2)), 0.0);
    EXPECT_NEAR(gaussian_mi(Matrix::Ones(1, 1), Covariance::identity(1)), 1.0, 1e-15);
}

TEST(GaussianMi, EqualsTriangularDiagonalSum)
{
    Gen g(43);
    for (int it = 0; it < 20; ++it)
    {
        const int n = g.integer(1, 4);
        const Matrix h = g.complex(g.integer(1, 5), n);
        const Covariance k(g.psd(n));
        const double mi = gaussian_mi(h, k);
        const RealVector d = qr(effective_mmse_matrix(h, k.sqrt())).diagonal();
        EXPECT_NEAR(mi, 2.0 * d.array().log2().sum(), 1e-9);
        EXPECT_NEAR(mi, oracle::mi(h, k.matrix()), 1e-9);
        EXPECT_GE(mi, 0.0);
    }
}

TEST(SecrecyMiDifference, Examples)
{
    Gen g(44);
    const Matrix h = g.complex(3, 2);
    const Covariance k(g.psd(2));
    EXPECT_NEAR(secrecy_mi_difference(h, h, k), 0.0, 1e-14);
    EXPECT_NEAR(secrecy_mi_difference(h, Matrix::Zero(2, 2), k), gaussian_mi(h, k), 1e-14);
}

TEST(SecrecyMiDifference, IndependentOfPrecoder)
{
    Gen g(45);
    for (int inst = 0; inst < 5; ++inst)
    {
        const int n = g.integer(2, 4);
        const auto [hb, he] = random_instance(g, n, g.integer(1, 4), g.integer(1, 4));
        const Covariance k(g.psd(n));
        const double ref = secrecy_mi_difference(hb, he, k);
        const Matrix gb = effective_mmse_matrix(hb, k.sqrt()), ge = effective_mmse_matrix(he, k.sqrt());
        for (int it = 0; it < 50; ++it)
        {
            const auto j = joint_triangularize(gb, ge, g.unitary(n));
            const double s = 2.0 * (j.diag1.array().log2() - j.diag2.array().log2()).sum();
            EXPECT_NEAR(s, ref, 1e-8);
        }
    }
}

TEST(ChannelGsv, Examples)
{
    Gen g(46);
    const auto [hb, he] = random_instance(g, 3, 2, 4);
    EXPECT_LE((channel_gsv(hb, he, Covariance::zero(3)) - RealVector::Ones(3)).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LE((channel_gsv(hb, hb, Covariance(g.psd(3))) - RealVector::Ones(3)).cwiseAbs().maxCoeff(), 1e-10);

    const Covariance k(g.psd(3));
    const RealVector mu = channel_gsv(hb, Matrix::Zero(1, 3), k);
    const RealVector s = oracle::singular_values(hb * k.sqrt());
    for (int i = 0; i < 3; ++i)
        EXPECT_NEAR(mu(i) * mu(i), 1.0 + s(i) * s(i), 1e-9 * (1.0 + s(0) * s(0)));
}

TEST(SecrecyCapacity, IdenticalChannelsGiveZero)
{
    Gen g(47);
    const Matrix h = g.complex(2, 2);
    const auto res = secrecy_capacity_cov(h, h, Covariance::identity(2));
    EXPECT_NEAR(res.capacity_bits, 0.0, 1e-9);
    EXPECT_EQ(res.lb, 0u);
    EXPECT_LE(res.k_star.matrix().norm(), 1e-9);
}

TEST(SecrecyCapacity, SilentEavesdropperGivesPointToPoint)
{
    Gen g(48);
    const Matrix hb = g.complex(3, 2);
    const Covariance kbar = Covariance::identity(2);
    const auto res = secrecy_capacity_cov(hb, Matrix::Zero(2, 2), kbar);
    EXPECT_NEAR(res.capacity_bits, gaussian_mi(hb, kbar), 1e-9);
    EXPECT_EQ(res.lb, 2u);
}

TEST(SecrecyCapacity, ScalarChannel)
{
    const auto res = secrecy_capacity_cov(Matrix::Constant(1, 1, 2.0), Matrix::Ones(1, 1), Covariance::identity(1));
    EXPECT_NEAR(res.capacity_bits, std::log2(2.5), 1e-12);
}

TEST(SecrecyCapacity, DominatesSampledCovariancesAndIsAchieved)
{
    Gen g(49);
    for (int inst = 0; inst < 3; ++inst)
    {
        const auto [hb, he] = random_instance(g, 2, 2, 2);
        const Covariance kbar = Covariance::identity(2);
        const auto res = secrecy_capacity_cov(hb, he, kbar);

        EXPECT_NEAR(res.capacity_bits, oracle::capacity(hb, he, kbar.matrix()), 1e-9);
        EXPECT_NEAR(secrecy_mi_difference(hb, he, res.k_star), res.capacity_bits, 1e-8);
        EXPECT_TRUE(res.k_star.dominated_by(kbar));
        EXPECT_GE(res.capacity_bits, 0.0);

        double worst = -1e9;
        for (std::uint64_t s = 0; s < 10000; ++s)
        {
            RandomStream rs(1234 + inst, 1, s);
            const Covariance k = sample_dominated_covariance(kbar, rs);
            worst = std::max(worst, secrecy_mi_difference(hb, he, k) - res.capacity_bits);
        }
        EXPECT_LE(worst, 1e-8);
    }
}

TEST(SecrecyCapacity, MatchesDiagonalFormCovariance)
{
    Gen g(50);
    for (int inst = 0; inst < 10; ++inst)
    {
        const int n = g.integer(2, 4);
        const auto [hb, he] = random_instance(g, n, g.integer(1, 4), g.integer(1, 4));
        const Covariance kbar(g.psd(n));
        const auto res = secrecy_capacity_cov(hb, he, kbar);
        const Matrix b = kbar.sqrt();

        const auto d = gsvd_diagonal(effective_mmse_matrix(hb, b), effective_mmse_matrix(he, b));
        const Matrix y = d.x.adjoint().inverse();
        const Matrix yb = y.leftCols(Eigen::Index(res.lb));
        Matrix alt = Matrix::Zero(n, n);
        if (res.lb > 0)
            alt = b * yb * (yb.adjoint() * yb).inverse() * yb.adjoint() * b.adjoint();
        EXPECT_LE((alt - res.k_star.matrix()).norm(), 1e-8 * std::max(1.0, kbar.matrix().norm())) << inst;
    }
}

TEST(SecrecyCapacity, GsvsAtOptimumAreAtLeastOne)
{
    Gen g(51);
    for (int inst = 0; inst < 20; ++inst)
    {
        const int n = g.integer(2, 4);
        const auto [hb, he] = random_instance(g, n, g.integer(1, 4), g.integer(1, 4));
        const auto res = secrecy_capacity_cov(hb, he, Covariance(g.psd(n)));
        EXPECT_GE(channel_gsv(hb, he, res.k_star).minCoeff(), 1.0 - 1e-7);
    }
}

TEST(Truncation, AllGsvsAboveOne)
{
    Gen g(52);
    const Matrix hb = g.complex(3, 3);
    const Covariance kbar = Covariance::identity(3);
    const auto rep = verify_truncation(hb, Matrix::Zero(1, 3), kbar);
    EXPECT_EQ(rep.lb, 3u);
    EXPECT_TRUE(rep.passed);
    EXPECT_LE((secrecy_capacity_cov(hb, Matrix::Zero(1, 3), kbar).k_star.matrix() - kbar.matrix()).norm(), 1e-9);
}

TEST(Truncation, NoGsvAboveOne)
{
    Gen g(53);
    const auto rep = verify_truncation(Matrix::Zero(2, 3), g.complex(2, 3), Covariance::identity(3));
    EXPECT_EQ(rep.lb, 0u);
    EXPECT_TRUE(rep.passed);
    EXPECT_LE((rep.gsv_kstar - RealVector::Ones(3)).cwiseAbs().maxCoeff(), 1e-7);
}

TEST(Truncation, MixedGsvsAreClipped)
{
    Gen g(54);
    int mixed = 0;
    for (int inst = 0; inst < 20; ++inst)
    {
        const auto [hb, he] = random_instance(g, 3, 3, 3);
        const auto rep = verify_truncation(hb, he, Covariance::identity(3));
        EXPECT_TRUE(rep.passed) << rep.max_deviation;
        EXPECT_LE(rep.max_deviation, 1e-7);
        if (rep.lb > 0 && rep.lb < 3)
            ++mixed;
    }
    EXPECT_GT(mixed, 0);
}

TEST(Monotonicity, NoViolationsOnRandomInstance)
{
    Gen g(55);
    const auto [hb, he] = random_instance(g, 3, 3, 3);
    const auto rep = gsv_monotonicity_check(hb, he, Covariance::identity(3), 1000, 9);
    EXPECT_EQ(rep.samples, 1000u);
    EXPECT_EQ(rep.violations, 0u);
    EXPECT_FALSE(rep.witness.has_value());
    EXPECT_GE(rep.worst_margin, -1e-8);
}

TEST(Monotonicity, EndpointsOfTheOrderInterval)
{
    Gen g(56);
    const auto [hb, he] = random_instance(g, 3, 2, 2);
    const Covariance kbar(g.psd(3));
    const RealVector at_kbar = channel_gsv(hb, he, kbar);
    EXPECT_LE((channel_gsv(hb, he, Covariance(kbar.matrix())) - at_kbar).norm(), 1e-12);
    EXPECT_LE((channel_gsv(hb, he, Covariance::zero(3)).array().log().abs()).maxCoeff(), 1e-12);
}

TEST(Monotonicity, RejectsZeroSamples)
{
    EXPECT_THROW(gsv_monotonicity_check(Matrix::Ones(1, 1), Matrix::Ones(1, 1), Covariance::identity(1), 0, 1), Error);
}

TEST(Monotonicity, DifferentialSign)
{
    Gen g(57);
    int checked = 0;
    for (int inst = 0; inst < 20; ++inst)
    {
        const int n = g.integer(2, 4);
        const auto [hb, he] = random_instance(g, n, g.integer(1, 4), g.integer(1, 4));
        const Covariance k(g.psd(n));
        const RealVector mu = channel_gsv(hb, he, k);

        Matrix dk = g.psd(n);
        dk *= 1e-6 / dk.norm();
        const RealVector mu2 = channel_gsv(hb, he, Covariance(k.matrix() + dk));
        for (int i = 0; i < n; ++i)
        {
            bool skip = std::abs(mu(i) - 1.0) <= 1e-3;
            for (int j = 0; j < n; ++j)
                skip = skip || (j != i && std::abs(mu(i) - mu(j)) <= 1e-3);
            if (skip)
                continue;
            const double change = mu2(i) - mu(i);
            EXPECT_EQ(change > 0.0, mu(i) > 1.0) << inst << " " << i;
            EXPECT_NE(change, 0.0);
            ++checked;
        }
    }
    EXPECT_GT(checked, 20);
}

TEST(Monotonicity, FirstOrderPerturbation)
{
    // d(mu^2)_i = (mu_i^2 - 1) y^H B^-1 dK B^-1 y / (y^H G_E^H G_E y) for the
    // generalized eigenvector y of (G_B^H G_B, G_E^H G_E).
    Gen g(58);
    for (int inst = 0; inst < 10; ++inst)
    {
        const int n = 3;
        const auto [hb, he] = random_instance(g, n, 3, 3);
        const Covariance k(g.psd(n) + Matrix::Identity(n, n));
        const Matrix b = k.sqrt();
        const Matrix gb = effective_mmse_matrix(hb, b), ge = effective_mmse_matrix(he, b);
        const auto d = gsvd_diagonal(gb, ge);
        const Matrix y = d.x.adjoint().inverse();
        const RealVector mu = d.ratios();

        Matrix dk = g.psd(n);
        dk *= 1e-6 / dk.norm();
        const RealVector mu2 = channel_gsv(hb, he, Covariance(k.matrix() + dk));
        const Matrix binv = b.inverse();
        for (int i = 0; i < n; ++i)
        {
            const auto yi = y.col(i);
            const double num = (yi.adjoint() * binv * dk * binv * yi)(0, 0).real();
            const double den = (yi.adjoint() * ge.adjoint() * ge * yi)(0, 0).real();
            const double predicted = (mu(i) * mu(i) - 1.0) * num / den;
            const double actual = mu2(i) * mu2(i) - mu(i) * mu(i);
            EXPECT_NEAR(actual, predicted, 1e-3 * std::abs(predicted) + 1e-12) << inst << " " << i;
        }
    }
}

TEST(BroadcastRegion, Examples)
{
    Gen g(59);
    const Matrix h = g.complex(2, 2);
    const Covariance kbar = Covariance::identity(2);
    const auto same = broadcast_region(h, h, kbar);
    EXPECT_NEAR(same.rb_max, 0.0, 1e-9);
    EXPECT_NEAR(same.rc_max, 0.0, 1e-9);

    const auto silent = broadcast_region(h, Matrix::Zero(2, 2), kbar);
    EXPECT_NEAR(silent.rb_max, gaussian_mi(h, kbar), 1e-9);
    EXPECT_NEAR(silent.rc_max, 0.0, 1e-12);
}

TEST(BroadcastRegion, RoleSwap)
{
    Gen g(60);
    for (int inst = 0; inst < 20; ++inst)
    {
        const int n = g.integer(1, 4);
        const auto [hb, hc] = random_instance(g, n, g.integer(1, 4), g.integer(1, 4));
        const Covariance kbar(g.psd(n));
        const auto r = broadcast_region(hb, hc, kbar);
        const auto swapped = broadcast_region(hc, hb, kbar);
        EXPECT_NEAR(r.rb_max, secrecy_capacity_cov(hb, hc, kbar).capacity_bits, 1e-9);
        EXPECT_NEAR(r.rc_max, secrecy_capacity_cov(hc, hb, kbar).capacity_bits, 1e-9);
        EXPECT_NEAR(r.rb_max, swapped.rc_max, 1e-9);
        for (int i = 0; i < n; ++i)
            EXPECT_NEAR(std::log2(r.gsv(i)), -std::log2(swapped.gsv(n - 1 - i)), 1e-8);
    }
}

TEST(ScalarSecrecy, Examples)
{
    EXPECT_NEAR(scalar_secrecy_capacity(2.0, 1.0), std::log2(5.0 / 2.0), 1e-15);
    EXPECT_NEAR(scalar_secrecy_capacity(2.0, 1.0), 1.3219, 1e-4);
    EXPECT_EQ(scalar_secrecy_capacity(1.0, 1.0), 0.0);
    EXPECT_EQ(scalar_secrecy_capacity(1.0, 2.0), 0.0);
    EXPECT_NEAR(scalar_secrecy_capacity(cplx(0.0, 2.0), cplx(1.0, 0.0)), std::log2(2.5), 1e-15);
}

TEST(PowerSearch, ScalarWithoutEavesdropper)
{
    const Matrix hb = Matrix::Constant(1, 1, cplx(0.6, -0.8));
    const auto r = power_constrained_capacity(hb, Matrix::Zero(1, 1), 3.0, 50, 1);
    EXPECT_NEAR(r.capacity_lower_bound, std::log2(1.0 + 3.0), 1e-12);
    EXPECT_NEAR(r.best_kbar.trace(), 3.0, 1e-12);
}

TEST(PowerSearch, IdenticalChannels)
{
    Gen g(61);
    const Matrix h = g.complex(2, 2);
    EXPECT_NEAR(power_constrained_capacity(h, h, 2.0, 200, 1).capacity_lower_bound, 0.0, 1e-9);
}

TEST(PowerSearch, CertifiedAndMonotoneInBudget)
{
    Gen g(62);
    const auto [hb, he] = random_instance(g, 2, 2, 2);
    double prev = -1.0;
    for (std::size_t budget : {1u, 10u, 50u, 200u, 1000u, 3000u})
    {
        const auto r = power_constrained_capacity(hb, he, 2.0, budget, 5);
        EXPECT_LE(r.evaluations, budget);
        EXPECT_GE(r.capacity_lower_bound, prev);
        prev = r.capacity_lower_bound;
        // The bound is the exact capacity of the returned constraint.
        EXPECT_NEAR(secrecy_capacity_cov(hb, he, r.best_kbar).capacity_bits, r.capacity_lower_bound, 1e-12);
        EXPECT_NEAR(r.best_kbar.trace(), 2.0, 1e-9);
    }
    // The isotropic constraint is the first candidate.
    EXPECT_NEAR(power_constrained_capacity(hb, he, 2.0, 1, 5).capacity_lower_bound,
                secrecy_capacity_cov(hb, he, Covariance(Matrix::Identity(2, 2))).capacity_bits, 1e-12);
}

TEST(PowerSearch, RejectsNonPositivePower)
{
    EXPECT_THROW(power_constrained_capacity(Matrix::Ones(1, 1), Matrix::Ones(1, 1), 0.0, 10, 1), Error);
}

TEST(Sampler, StaysInsideOrderInterval)
{
    Gen g(63);
    const Covariance kbar(g.psd(3));
    for (std::uint64_t s = 0; s < 200; ++s)
    {
        RandomStream rs(77, 2, s);
        const Covariance k = sample_dominated_covariance(kbar, rs);
        EXPECT_TRUE(k.dominated_by(kbar, 1e-10));
        EXPECT_GE(k.eigenvalues().minCoeff(), 0.0);
    }
}
