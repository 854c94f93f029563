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

#ifndef WTD_SECRECY_HPP
#define WTD_SECRECY_HPP

#include "wtd/core.hpp"
#include "wtd/rng.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>

namespace wtd
{
    // Hermitian PSD input covariance. The stored matrix is the Hermitian part
    // of the input; eigenvalues in [-tol::psd_clamp, 0) are clamped to zero
    // when forming the square root.
    class Covariance
    {
    public:
        Covariance() = default;
        explicit Covariance(const Matrix &k);

        static Covariance identity(Eigen::Index n);
        static Covariance zero(Eigen::Index n);

        const Matrix &matrix() const noexcept { return k_; }
        const Matrix &sqrt() const noexcept { return root_; } // Hermitian B with B B^H = K
        const RealVector &eigenvalues() const noexcept { return eig_; }
        Eigen::Index dim() const noexcept { return k_.rows(); }
        double trace() const { return k_.trace().real(); }

        // kbar - K >= -slack * I
        bool dominated_by(const Covariance &kbar, double slack = 1e-8) const;

    private:
        Matrix k_;
        Matrix root_;
        RealVector eig_;
    };

    Matrix matrix_sqrt(const Matrix &k);

    // G = [H B; I].
    Matrix effective_mmse_matrix(const Matrix &h, const Matrix &b);

    // log2 |I + H K H^H|
    double gaussian_mi(const Matrix &h, const Covariance &k);

    double secrecy_mi_difference(const Matrix &hb, const Matrix &he, const Covariance &k);

    // mu_i(H_B, H_E, K) = mu_i(G_B, G_E), non-increasing.
    RealVector channel_gsv(const Matrix &hb, const Matrix &he, const Covariance &k);

    struct SecrecyResult
    {
        RealVector gsv;
        std::size_t lb = 0;
        double capacity_bits = 0.0;
        Covariance k_star;
        Matrix va; // right factor of the triangular GSVD of (G_B, G_E) at kbar
    };

    SecrecyResult secrecy_capacity_cov(const Matrix &hb, const Matrix &he, const Covariance &kbar);

    struct TruncationReport
    {
        bool passed = false;
        double max_deviation = 0.0;
        std::size_t lb = 0;
        RealVector gsv_kbar;
        RealVector gsv_kstar;
    };

    TruncationReport verify_truncation(const Matrix &hb, const Matrix &he, const Covariance &kbar);

    // K = Kbar^1/2 W Kbar^1/2 with W = Q diag(u) Q^H, Q Haar, u uniform on [0,1]^N.
    Covariance sample_dominated_covariance(const Covariance &kbar, RandomStream &rs);

    struct MonotonicityReport
    {
        std::size_t samples = 0;
        std::size_t violations = 0;
        double worst_margin = 0.0; // min over samples and i of |log mu_i(Kbar)| - |log mu_i(K)|
        std::optional<Matrix> witness;
    };

    MonotonicityReport gsv_monotonicity_check(const Matrix &hb, const Matrix &he, const Covariance &kbar,
                                              std::size_t samples, std::uint64_t seed);

    struct BroadcastRegion
    {
        double rb_max = 0.0;
        double rc_max = 0.0;
        RealVector gsv; // mu_i(H_B, H_C, Kbar)
    };

    BroadcastRegion broadcast_region(const Matrix &hb, const Matrix &hc, const Covariance &kbar);

    double scalar_secrecy_capacity(cplx hb, cplx he);

    struct PowerSearchResult
    {
        double capacity_lower_bound = 0.0;
        Covariance best_kbar;
        std::size_t evaluations = 0;
    };

    // Random-restart coordinate search over Kbar = P C C^H / tr(C C^H). The
    // candidate sequence depends only on (H_B, H_E, P, seed); `budget` caps the
    // number of evaluated candidates, so the result is non-decreasing in it.
    PowerSearchResult power_constrained_capacity(const Matrix &hb, const Matrix &he, double power,
                                                 std::size_t budget, std::uint64_t seed);

    // Substream ids used by the Monte Carlo checks in this module.
    namespace stream_id
    {
        inline constexpr std::uint32_t dominated_sampler = 7;
        inline constexpr std::uint32_t power_restart = 100;
    }
}

#endif
