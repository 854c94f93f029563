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
#include "wtd/scheme.hpp"

#include <gtest/gtest.h>

using namespace wtd;
using oracle::Gen;

namespace
{
    const PrecoderMode all_modes[] = {PrecoderMode::gsvd, PrecoderMode::svd_eve, PrecoderMode::svd_bob,
                                      PrecoderMode::gmd_bob};

    void expect_sic_invariants(const Matrix &hb, const Covariance &k, const SicPlan &p)
    {
        const Eigen::Index n = k.dim();
        const Matrix expected = p.t_b - p.t_b.adjoint().inverse();
        EXPECT_LE((expected - p.t_tilde).cwiseAbs().maxCoeff(), 1e-9);
        for (Eigen::Index i = 0; i < n; ++i)
        {
            EXPECT_NEAR(p.diag_b(i) * p.diag_b(i), 1.0 + p.sinr(i), 1e-9 * std::max(1.0, p.sinr(i)));
            EXPECT_NEAR(p.t_tilde(i, i).real(), p.diag_b(i) - 1.0 / p.diag_b(i), 1e-9);
            for (Eigen::Index l = i + 1; l < n; ++l)
                EXPECT_LE(std::abs(p.t_tilde(i, l) - p.t_b(i, l)), 1e-9);
        }
        EXPECT_NEAR(p.rates_bits.sum(), gaussian_mi(hb, k), 1e-8);
    }
}

TEST(PrecoderMode, ParseAndPrint)
{
    for (auto m : all_modes)
        EXPECT_EQ(parse_precoder_mode(to_string(m)), m);
    try
    {
        parse_precoder_mode("zf");
        FAIL();
    }
    catch (const Error &e)
    {
        EXPECT_EQ(e.code(), ErrorCode::domain);
    }
}

TEST(SelectPrecoder, SvdBobRemovesFeedback)
{
    Gen g(70);
    const Matrix hb = g.complex(3, 3), he = g.complex(2, 3);
    const Covariance k(g.psd(3));
    const Matrix va = select_precoder(hb, he, k, PrecoderMode::svd_bob);
    EXPECT_LE(unitarity_error(va), 1e-9);
    const auto j = joint_triangularize(effective_mmse_matrix(hb, k.sqrt()), effective_mmse_matrix(he, k.sqrt()), va);
    EXPECT_LE(oracle::max_abs_off_diagonal(j.t1), 1e-9);
}

TEST(SelectPrecoder, GmdBobEqualizesDiagonal)
{
    Gen g(71);
    const Matrix hb = g.complex(4, 3), he = g.complex(2, 3);
    const Covariance k(g.psd(3));
    const auto plan = build_sic_plan(hb, k, select_precoder(hb, he, k, PrecoderMode::gmd_bob));
    EXPECT_LE(plan.diag_b.maxCoeff() / plan.diag_b.minCoeff(), 1.0 + 1e-7);
}

TEST(SelectPrecoder, SvdEveMatchesEavesdropperSingularValues)
{
    Gen g(72);
    const Matrix hb = g.complex(3, 3), he = g.complex(2, 3);
    const Covariance k(g.psd(3));
    const Matrix va = select_precoder(hb, he, k, PrecoderMode::svd_eve);
    const auto fe = qr(effective_mmse_matrix(he, k.sqrt()) * va);
    EXPECT_LE(oracle::max_abs_off_diagonal(fe.t), 1e-9);
    const RealVector d = oracle::singular_values(he * k.sqrt());
    for (int i = 0; i < 3; ++i)
        EXPECT_NEAR(fe.diagonal()(i) * fe.diagonal()(i), 1.0 + d(i) * d(i), 1e-9);
}

TEST(SelectPrecoder, GsvdGivesGsvRatios)
{
    Gen g(73);
    const Matrix hb = g.complex(3, 3), he = g.complex(3, 3);
    const Covariance k(g.psd(3));
    const Matrix va = select_precoder(hb, he, k, PrecoderMode::gsvd);
    const auto j = joint_triangularize(effective_mmse_matrix(hb, k.sqrt()), effective_mmse_matrix(he, k.sqrt()), va);
    EXPECT_LE((j.ratios() - channel_gsv(hb, he, k)).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(SicPlan, SilentChannel)
{
    const auto p = build_sic_plan(Matrix::Zero(2, 3), Covariance::identity(3), Matrix::Identity(3, 3));
    EXPECT_LE((p.diag_b - RealVector::Ones(3)).cwiseAbs().maxCoeff(), 1e-14);
    EXPECT_LE(p.sinr.cwiseAbs().maxCoeff(), 0.0);
    EXPECT_LE(p.rates_bits.cwiseAbs().maxCoeff(), 1e-14);
}

TEST(SicPlan, ScalarChannel)
{
    const cplx h(1.5, -0.5);
    const auto p = build_sic_plan(Matrix::Constant(1, 1, h), Covariance::identity(1), Matrix::Identity(1, 1));
    EXPECT_NEAR(p.sinr(0), std::norm(h), 1e-12);
    EXPECT_NEAR(p.rates_bits(0), std::log2(1.0 + std::norm(h)), 1e-12);
}

TEST(SicPlan, RandomInstancesAndPrecoders)
{
    Gen g(74);
    for (int it = 0; it < 30; ++it)
    {
        const int n = g.integer(1, 4);
        const Matrix hb = g.complex(g.integer(1, 4), n);
        const Covariance k(g.psd(n, g.integer(1, n)));
        expect_sic_invariants(hb, k, build_sic_plan(hb, k, g.unitary(n)));
    }
}

TEST(SicPlan, RejectsNonUnitaryPrecoder)
{
    EXPECT_THROW(build_sic_plan(Matrix::Ones(2, 2), Covariance::identity(2), 2.0 * Matrix::Identity(2, 2)), Error);
}

TEST(WiretapPlan, IdenticalChannels)
{
    Gen g(75);
    const Matrix h = g.complex(2, 2);
    for (auto m : all_modes)
    {
        const auto w = build_wiretap_plan(h, h, Covariance::identity(2), m);
        EXPECT_LE(w.secret_rates_bits.cwiseAbs().maxCoeff(), 1e-9);
    }
}

TEST(WiretapPlan, SilentEavesdropperWithSvd)
{
    Gen g(76);
    const Matrix hb = g.complex(3, 2);
    const Covariance kbar = Covariance::identity(2);
    const auto w = build_wiretap_plan(hb, Matrix::Zero(1, 2), kbar, PrecoderMode::svd_bob);
    const RealVector s = oracle::singular_values(hb);
    for (int i = 0; i < 2; ++i)
        EXPECT_NEAR(w.secret_rates_bits(i), std::log2(1.0 + s(i) * s(i)), 1e-9);
    EXPECT_LE(w.fictitious_rates_bits.cwiseAbs().maxCoeff(), 1e-12);
}

TEST(WiretapPlan, ModeInvarianceAndRateIdentities)
{
    Gen g(77);
    for (int inst = 0; inst < 20; ++inst)
    {
        const int n = g.integer(2, 4);
        const Matrix hb = g.complex(g.integer(1, 4), n), he = g.complex(g.integer(1, 4), n);
        const Covariance kbar(g.psd(n));
        const double cap = secrecy_capacity_cov(hb, he, kbar).capacity_bits;
        for (auto m : all_modes)
        {
            const auto w = build_wiretap_plan(hb, he, kbar, m);
            EXPECT_NEAR(w.total_secret_rate(), cap, 1e-8) << to_string(m);
            EXPECT_NEAR(w.capacity_bits, cap, 1e-12);
            expect_sic_invariants(hb, w.k_star, w.base);
            for (int i = 0; i < n; ++i)
            {
                EXPECT_NEAR(w.fictitious_rates_bits(i), 2.0 * std::log2(w.diag_e(i)), 1e-12);
                EXPECT_NEAR(w.eve_sinr(i), w.diag_e(i) * w.diag_e(i) - 1.0, 1e-12);
            }
            if (m == PrecoderMode::svd_eve)
            {
                const RealVector d = oracle::singular_values(he * w.k_star.sqrt());
                for (int i = 0; i < std::min<int>(n, int(he.rows())); ++i)
                    EXPECT_NEAR(w.diag_e(i) * w.diag_e(i), 1.0 + d(i) * d(i), 1e-9);
            }
            if (m == PrecoderMode::gmd_bob)
                EXPECT_LE(w.base.diag_b.maxCoeff() / w.base.diag_b.minCoeff() - 1.0, 1e-7);
        }
    }
}

TEST(WiretapPlan, EpsilonBackOff)
{
    Gen g(78);
    const Matrix hb = g.complex(2, 2), he = 0.3 * g.complex(2, 2);
    const Covariance kbar = Covariance::identity(2);
    const double eps = 1e-3;
    const auto nominal = build_wiretap_plan(hb, he, kbar, PrecoderMode::svd_eve);
    const auto backed = build_wiretap_plan(hb, he, kbar, PrecoderMode::svd_eve, {eps});
    for (int i = 0; i < 2; ++i)
    {
        if (nominal.secret_rates_bits(i) > 2 * eps)
            EXPECT_NEAR(backed.secret_rates_bits(i), nominal.secret_rates_bits(i) - 2 * eps, 1e-12);
        EXPECT_NEAR(backed.fictitious_rates_bits(i), nominal.fictitious_rates_bits(i) + eps, 1e-12);
    }
    const auto other = build_wiretap_plan(hb, he, kbar, PrecoderMode::gsvd, {eps});
    const auto other0 = build_wiretap_plan(hb, he, kbar, PrecoderMode::gsvd);
    if (other0.secret_rates_bits(0) > eps)
        EXPECT_NEAR(other.secret_rates_bits(0), other0.secret_rates_bits(0) - eps, 1e-12);
    EXPECT_THROW(build_wiretap_plan(hb, he, kbar, PrecoderMode::gsvd, {-1.0}), Error);
}

TEST(DpcPlan, UnitGainStreamHasZeroAlpha)
{
    Gen g(79);
    // A zero-power stream (truncated GSV) has b = 1.
    for (int inst = 0; inst < 20; ++inst)
    {
        const Matrix hb = g.complex(3, 3), he = g.complex(3, 3);
        const auto d = build_dpc_plan(hb, he, Covariance::identity(3));
        for (int k = 0; k < 3; ++k)
        {
            if (std::abs(d.base.diag_b(k) - 1.0) < 1e-12)
                EXPECT_NEAR(d.alpha(k), 0.0, 1e-11);
            EXPECT_GE(d.alpha(k), -1e-12);
            EXPECT_LT(d.alpha(k), 1.0);
        }
    }
}

TEST(DpcPlan, NoInterferenceWithSvdBob)
{
    Gen g(80);
    const Matrix hb = g.complex(3, 3), he = 0.2 * g.complex(2, 3);
    const auto d = build_dpc_plan(hb, he, Covariance::identity(3), PrecoderMode::svd_bob);
    EXPECT_LE(d.presubtraction.cwiseAbs().maxCoeff(), 1e-9);
    for (int k = 0; k < 3; ++k)
        EXPECT_NEAR(d.auxiliary_rates_bits(k), 2.0 * std::log2(d.base.diag_b(k)), 1e-9);
}

TEST(DpcPlan, RatesMatchSicPath)
{
    Gen g(81);
    for (int inst = 0; inst < 20; ++inst)
    {
        const int n = g.integer(2, 4);
        const Matrix hb = g.complex(g.integer(1, 4), n), he = g.complex(g.integer(1, 4), n);
        const Covariance kbar(g.psd(n));
        for (auto m : all_modes)
        {
            const auto d = build_dpc_plan(hb, he, kbar, m);
            const auto w = build_wiretap_plan(hb, he, kbar, m);
            for (int k = 0; k < n; ++k)
            {
                const double b2 = d.base.diag_b(k) * d.base.diag_b(k);
                const double e2 = d.diag_e(k) * d.diag_e(k);
                EXPECT_NEAR(d.rates_bits(k), w.secret_rates_bits(k), 1e-9);
                EXPECT_NEAR(d.rates_bits(k), std::max(0.0, std::log2(b2 / e2)), 1e-9);
                EXPECT_NEAR(d.alpha(k), (b2 - 1.0) / b2, 1e-12);
                double interference = 0.0;
                for (int l = k + 1; l < n; ++l)
                    interference += std::norm(d.base.t_b(k, l));
                EXPECT_NEAR(d.auxiliary_rates_bits(k), std::log2(b2 + interference), 1e-9);
                for (int l = 0; l < n; ++l)
                    EXPECT_EQ(d.presubtraction(k, l), l > k ? d.base.t_tilde(k, l) : cplx(0.0));
            }
        }
    }
}

TEST(DpcPlan, AuxiliaryRateMatchesKnownInterferenceFormula)
{
    // For y = x + s + z with x ~ CN(0,P), s ~ CN(0,Q), z ~ CN(0,1) and
    // u = x + a s with a = P/(P+1): I(u;y) = log2(1+P) + log2((P + a^2 Q)/P).
    // Here P = b^2 - 1 and Q = interference, both normalised by the
    // effective gain, which reproduces log2(b^2 + interference).
    Gen g(82);
    const Matrix hb = g.complex(3, 3), he = 0.4 * g.complex(3, 3);
    const auto d = build_dpc_plan(hb, he, Covariance::identity(3), PrecoderMode::gsvd);
    for (int k = 0; k < 3; ++k)
    {
        const double b = d.base.diag_b(k);
        const double gain = b - 1.0 / b;
        if (gain < 1e-6)
            continue;
        double interference = 0.0;
        for (int l = k + 1; l < 3; ++l)
            interference += std::norm(d.base.t_tilde(k, l));
        // Normalise the noise to unit variance: effective noise variance is gain^2 / sinr.
        const double sinr = b * b - 1.0;
        const double noise = gain * gain / sinr;
        const double p = gain * gain / noise;
        const double q = interference / noise;
        const double a = p / (p + 1.0);
        // Costa auxiliary with u = x + a s, evaluated with log-determinants.
        Eigen::Matrix2d cov;
        cov << p + a * a * q, p + a * q, p + a * q, p + q + 1.0;
        const double iuy = std::log2(cov(0, 0)) + std::log2(cov(1, 1)) - std::log2(cov.determinant());
        const double iu_s = std::log2((p + a * a * q) / p);
        EXPECT_NEAR(iuy, std::log2(1.0 + p) + iu_s, 1e-9);
        // In the normalised units interference / noise = q with unit gain p;
        // b^2 + |T|^2 over the unit-noise scaling equals (1 + p) (p + a^2 q)/p.
        EXPECT_NEAR(iuy, d.auxiliary_rates_bits(k), 1e-9) << k;
    }
}

TEST(BroadcastPlan, SilentSecondUser)
{
    Gen g(83);
    const Matrix hb = g.complex(3, 2);
    const Covariance kbar = Covariance::identity(2);
    const auto p = build_broadcast_plan(hb, Matrix::Zero(2, 2), kbar);
    EXPECT_EQ(p.lb, 2u);
    EXPECT_EQ(p.lc, 0u);
    EXPECT_NEAR(p.bob_total(), gaussian_mi(hb, kbar), 1e-9);
}

TEST(BroadcastPlan, IdenticalUsers)
{
    Gen g(84);
    const Matrix h = g.complex(2, 2);
    const auto p = build_broadcast_plan(h, h, Covariance::identity(2));
    EXPECT_NEAR(p.bob_total(), 0.0, 1e-9);
    EXPECT_NEAR(p.charlie_total(), 0.0, 1e-9);
}

TEST(BroadcastPlan, CornersAndSinrs)
{
    Gen g(85);
    for (int inst = 0; inst < 30; ++inst)
    {
        const int n = g.integer(1, 4);
        const Matrix hb = g.complex(g.integer(1, 4), n), hc = g.complex(g.integer(1, 4), n);
        const Covariance kbar(g.psd(n));
        const auto p = build_broadcast_plan(hb, hc, kbar);
        const auto r = broadcast_region(hb, hc, kbar);
        EXPECT_EQ(p.lb + p.lc, std::size_t(n));
        EXPECT_NEAR(p.bob_total(), r.rb_max, 1e-8);
        EXPECT_NEAR(p.charlie_total(), r.rc_max, 1e-8);
        EXPECT_NEAR(p.bob_total(), secrecy_capacity_cov(hb, hc, kbar).capacity_bits, 1e-8);
        EXPECT_NEAR(p.charlie_total(), secrecy_capacity_cov(hc, hb, kbar).capacity_bits, 1e-8);
        for (std::size_t i = 0; i < p.lb; ++i)
            EXPECT_NEAR(p.sinr_b(Eigen::Index(i)), p.diag_b(Eigen::Index(i)) * p.diag_b(Eigen::Index(i)) - 1.0,
                        1e-9 * std::max(1.0, p.sinr_b(Eigen::Index(i))));
        for (std::size_t r2 = 0; r2 < p.lc; ++r2)
        {
            const double c = p.diag_c(Eigen::Index(p.lb + r2));
            EXPECT_NEAR(p.sinr_c(Eigen::Index(r2)), c * c - 1.0, 1e-9 * std::max(1.0, c * c));
        }
    }
}
