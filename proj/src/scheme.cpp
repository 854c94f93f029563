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

#include "wtd/scheme.hpp"
#include "wtd/decomp.hpp"

#include <algorithm>
#include <cmath>

namespace wtd
{
    namespace
    {
        // SINR of row r whose desired stream is column `stream` of t_tilde;
        // columns before `stream` act as interference, the rest is cancelled.
        double row_sinr(const Matrix &t_tilde, const Matrix &noise, Eigen::Index r, Eigen::Index stream)
        {
            const double num = std::norm(t_tilde(r, stream));
            if (num == 0.0)
                return 0.0;
            double den = noise(r, r).real();
            for (Eigen::Index l = 0; l < stream; ++l)
                den += std::norm(t_tilde(r, l));
            return num / den;
        }

        double positive_part(double x) { return std::max(0.0, x); }

        void require_unitary(const Matrix &va, Eigen::Index n, const char *op)
        {
            if (va.rows() != n || va.cols() != n)
                fail(ErrorCode::domain, std::string(op) + ": VA must be N_A x N_A");
            if (unitarity_error(va) > tol::unitary_input)
                fail(ErrorCode::domain, std::string(op) + ": VA is not unitary");
        }
    }

    PrecoderMode parse_precoder_mode(std::string_view name)
    {
        if (name == "gsvd")
            return PrecoderMode::gsvd;
        if (name == "svd_eve")
            return PrecoderMode::svd_eve;
        if (name == "svd_bob")
            return PrecoderMode::svd_bob;
        if (name == "gmd_bob")
            return PrecoderMode::gmd_bob;
        fail(ErrorCode::domain, "unknown precoder mode '" + std::string(name) + "'");
    }

    const char *to_string(PrecoderMode mode) noexcept
    {
        switch (mode)
        {
        case PrecoderMode::gsvd:
            return "gsvd";
        case PrecoderMode::svd_eve:
            return "svd_eve";
        case PrecoderMode::svd_bob:
            return "svd_bob";
        case PrecoderMode::gmd_bob:
            return "gmd_bob";
        }
        return "unknown";
    }

    Matrix select_precoder(const Matrix &hb, const Matrix &he, const Covariance &k, PrecoderMode mode)
    {
        const Matrix gb = effective_mmse_matrix(hb, k.sqrt());
        const Matrix ge = effective_mmse_matrix(he, k.sqrt());
        switch (mode)
        {
        case PrecoderMode::gsvd:
            return gsvd_triangular(gb, ge).va;
        case PrecoderMode::svd_eve:
            return svd(ge).v;
        case PrecoderMode::svd_bob:
            return svd(gb).v;
        case PrecoderMode::gmd_bob:
            return gmd(gb).v;
        }
        fail(ErrorCode::domain, "unknown precoder mode");
    }

    SicPlan build_sic_plan(const Matrix &hb, const Covariance &k, const Matrix &va)
    {
        const Eigen::Index n = k.dim();
        require_unitary(va, n, "build_sic_plan");
        const Eigen::Index nb = hb.rows();

        const Matrix g = effective_mmse_matrix(hb, k.sqrt());
        const GtdFactors f = qr(g * va);

        SicPlan p;
        p.va = va;
        p.b_sqrt = k.sqrt();
        p.t_b = f.t.topRows(n);
        p.diag_b = f.diagonal();
        p.u_tilde = f.u.topLeftCorner(nb, n);
        p.t_tilde = p.u_tilde.adjoint() * hb * p.b_sqrt * va;

        const Matrix noise = p.noise_covariance();
        p.sinr.resize(n);
        p.rates_bits.resize(n);
        for (Eigen::Index i = 0; i < n; ++i)
        {
            p.sinr(i) = row_sinr(p.t_tilde, noise, i, i);
            p.rates_bits(i) = 2.0 * std::log2(p.diag_b(i));
        }
        return p;
    }

    WiretapPlan build_wiretap_plan(const Matrix &hb, const Matrix &he, const Covariance &kbar,
                                   PrecoderMode mode, const PlanOptions &options)
    {
        if (!(options.epsilon >= 0.0))
            fail(ErrorCode::domain, "epsilon must be non-negative");

        const SecrecyResult res = secrecy_capacity_cov(hb, he, kbar);
        const Covariance &k = res.k_star;
        const Matrix va = select_precoder(hb, he, k, mode);

        WiretapPlan w;
        w.mode = mode;
        w.epsilon = options.epsilon;
        w.capacity_bits = res.capacity_bits;
        w.k_star = k;
        w.base = build_sic_plan(hb, k, va);

        const GtdFactors fe = qr(effective_mmse_matrix(he, k.sqrt()) * va);
        const Eigen::Index n = k.dim();
        w.t_e = fe.t.topRows(n);
        w.diag_e = fe.diagonal();

        // The eavesdropper-SVD construction trades one extra back-off on R_k for
        // a larger fictitious rate.
        const bool eve_svd = mode == PrecoderMode::svd_eve;
        const double secret_backoff = (eve_svd ? 2.0 : 1.0) * options.epsilon;
        const double fictitious_shift = eve_svd ? options.epsilon : -options.epsilon;

        w.secret_rates_bits.resize(n);
        w.fictitious_rates_bits.resize(n);
        w.eve_sinr.resize(n);
        for (Eigen::Index i = 0; i < n; ++i)
        {
            const double b2 = w.base.diag_b(i) * w.base.diag_b(i);
            const double e2 = w.diag_e(i) * w.diag_e(i);
            w.secret_rates_bits(i) = positive_part(std::log2(b2 / e2) - secret_backoff);
            w.fictitious_rates_bits(i) = positive_part(std::log2(e2) + fictitious_shift);
            w.eve_sinr(i) = e2 - 1.0;
        }
        return w;
    }

    DpcPlan build_dpc_plan(const Matrix &hb, const Matrix &he, const Covariance &kbar,
                           PrecoderMode mode, const PlanOptions &options)
    {
        const WiretapPlan w = build_wiretap_plan(hb, he, kbar, mode, {});
        const Eigen::Index n = w.k_star.dim();

        DpcPlan d;
        d.mode = mode;
        d.epsilon = options.epsilon;
        d.base = w.base;
        d.diag_e = w.diag_e;
        d.k_star = w.k_star;
        d.presubtraction = w.base.t_tilde.triangularView<Eigen::StrictlyUpper>();

        d.alpha.resize(n);
        d.rates_bits.resize(n);
        d.fictitious_rates_bits.resize(n);
        d.auxiliary_rates_bits.resize(n);
        for (Eigen::Index k = 0; k < n; ++k)
        {
            const double b2 = w.base.diag_b(k) * w.base.diag_b(k);
            const double e2 = d.diag_e(k) * d.diag_e(k);
            double interference = 0.0;
            for (Eigen::Index l = k + 1; l < n; ++l)
                interference += std::norm(w.base.t_b(k, l));
            d.alpha(k) = (b2 - 1.0) / b2;
            d.rates_bits(k) = positive_part(std::log2(b2 / e2) - options.epsilon);
            d.fictitious_rates_bits(k) = positive_part(std::log2(e2) - options.epsilon);
            d.auxiliary_rates_bits(k) = positive_part(std::log2(b2 + interference) - options.epsilon);
        }
        return d;
    }

    BroadcastPlan build_broadcast_plan(const Matrix &hb, const Matrix &hc, const Covariance &kbar)
    {
        const Matrix &b = kbar.sqrt();
        const JointTriangularization j =
            gsvd_triangular(effective_mmse_matrix(hb, b), effective_mmse_matrix(hc, b));
        const Eigen::Index n = kbar.dim();
        const RealVector mu = j.ratios();

        BroadcastPlan p;
        for (Eigen::Index i = 0; i < n; ++i)
            if (mu(i) * mu(i) > 1.0 + tol::gsv_unity)
                ++p.lb;
        p.lc = std::size_t(n) - p.lb;
        const auto lb = Eigen::Index(p.lb);
        const auto lc = Eigen::Index(p.lc);

        p.va = j.va;
        p.b_sqrt = b;
        p.t_b = j.t1.topRows(n);
        p.t_c = j.t2.topRows(n);
        p.diag_b = j.diag1;
        p.diag_c = j.diag2;
        p.u_tilde_b = j.u1.block(0, 0, hb.rows(), lb);
        p.u_tilde_c = j.u2.block(0, lb, hc.rows(), lc);
        p.t_tilde_b = p.u_tilde_b.adjoint() * hb * b * j.va;
        p.t_tilde_c = p.u_tilde_c.adjoint() * hc * b * j.va;

        const Matrix noise_b = p.u_tilde_b.adjoint() * p.u_tilde_b;
        const Matrix noise_c = p.u_tilde_c.adjoint() * p.u_tilde_c;
        p.sinr_b.resize(lb);
        p.alpha_b.resize(lb);
        p.bob_rates_bits.resize(lb);
        for (Eigen::Index i = 0; i < lb; ++i)
        {
            const double b2 = p.diag_b(i) * p.diag_b(i);
            p.sinr_b(i) = row_sinr(p.t_tilde_b, noise_b, i, i);
            p.alpha_b(i) = (b2 - 1.0) / b2;
            p.bob_rates_bits(i) = positive_part(2.0 * std::log2(mu(i)));
        }
        p.sinr_c.resize(lc);
        p.alpha_c.resize(lc);
        p.charlie_rates_bits.resize(lc);
        for (Eigen::Index r = 0; r < lc; ++r)
        {
            const Eigen::Index i = lb + r;
            const double c2 = p.diag_c(i) * p.diag_c(i);
            p.sinr_c(r) = row_sinr(p.t_tilde_c, noise_c, r, i);
            p.alpha_c(r) = (c2 - 1.0) / c2;
            p.charlie_rates_bits(r) = positive_part(-2.0 * std::log2(mu(i)));
        }
        return p;
    }
}
