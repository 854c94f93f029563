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

#ifndef WTD_SCHEME_HPP
#define WTD_SCHEME_HPP

#include "wtd/core.hpp"
#include "wtd/secrecy.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace wtd
{
    enum class PrecoderMode
    {
        gsvd,
        svd_eve,
        svd_bob,
        gmd_bob
    };

    PrecoderMode parse_precoder_mode(std::string_view name); // DomainError on unknown names
    const char *to_string(PrecoderMode mode) noexcept;

    struct PlanOptions
    {
        double epsilon = 0.0; // rate back-off; 0 gives the nominal rates
    };

    struct SicPlan
    {
        Matrix va;
        Matrix b_sqrt;
        Matrix u_tilde; // first N_B rows, first N_A columns of U_B
        Matrix t_tilde; // U~^H H_B K^1/2 VA
        Matrix t_b;     // [T_B], the N_A x N_A upper block
        RealVector diag_b;
        RealVector sinr;
        RealVector rates_bits;

        Matrix noise_covariance() const { return u_tilde.adjoint() * u_tilde; }
    };

    struct WiretapPlan
    {
        PrecoderMode mode = PrecoderMode::gsvd;
        double epsilon = 0.0;
        SicPlan base;
        Matrix t_e; // [T_E]
        RealVector diag_e;
        RealVector secret_rates_bits;     // [log2(b^2/e^2)]+ less the back-off
        RealVector fictitious_rates_bits; // log2 e^2 adjusted by the back-off
        RealVector eve_sinr;              // e^2 - 1
        double capacity_bits = 0.0;
        Covariance k_star;

        double total_secret_rate() const { return secret_rates_bits.sum(); }
    };

    struct DpcPlan
    {
        PrecoderMode mode = PrecoderMode::gsvd;
        double epsilon = 0.0;
        SicPlan base;
        RealVector diag_e;
        Matrix presubtraction; // strictly upper part of T~_B
        RealVector alpha;
        RealVector rates_bits;            // R_k
        RealVector fictitious_rates_bits; // R~_k
        RealVector auxiliary_rates_bits;  // R^U_k
        Covariance k_star;
    };

    struct BroadcastPlan
    {
        std::size_t lb = 0;
        std::size_t lc = 0;
        Matrix va;
        Matrix b_sqrt;
        Matrix t_b; // [T_B]
        Matrix t_c; // [T_C]
        RealVector diag_b;
        RealVector diag_c;
        Matrix u_tilde_b; // N_B x lb, upper-left block of U_B
        Matrix u_tilde_c; // N_C x lc, columns lb.. of the first N_C rows of U_C
        Matrix t_tilde_b; // lb x N_A
        Matrix t_tilde_c; // lc x N_A
        RealVector sinr_b;
        RealVector sinr_c;
        RealVector bob_rates_bits;
        RealVector charlie_rates_bits;
        RealVector alpha_b;
        RealVector alpha_c;

        double bob_total() const { return bob_rates_bits.sum(); }
        double charlie_total() const { return charlie_rates_bits.sum(); }
    };

    Matrix select_precoder(const Matrix &hb, const Matrix &he, const Covariance &k, PrecoderMode mode);

    SicPlan build_sic_plan(const Matrix &hb, const Covariance &k, const Matrix &va);

    WiretapPlan build_wiretap_plan(const Matrix &hb, const Matrix &he, const Covariance &kbar,
                                   PrecoderMode mode, const PlanOptions &options = {});

    DpcPlan build_dpc_plan(const Matrix &hb, const Matrix &he, const Covariance &kbar,
                           PrecoderMode mode = PrecoderMode::gsvd, const PlanOptions &options = {});

    BroadcastPlan build_broadcast_plan(const Matrix &hb, const Matrix &hc, const Covariance &kbar);

    // ---- Monte Carlo ----

    struct SimulationOptions
    {
        std::uint64_t samples = 100000;
        std::uint64_t seed = 1;
        unsigned threads = 0; // 0: hardware concurrency
        bool genie = true;
    };

    // Per-row statistics of one receiver link.
    struct StreamStatistics
    {
        std::string user;   // "bob", "charlie"
        std::size_t stream; // 0-based stream index
        double analytic_sinr = 0.0;
        double empirical_sinr = 0.0;
        double relative_error = 0.0;
        double standard_error = 0.0; // of empirical_sinr
        bool within_band = true;     // |empirical - analytic| <= 3 standard errors
        // Present only for dirty-paper links.
        double alpha = 0.0;
        double empirical_alpha = 0.0;
        double residual_at_alpha = 0.0;
        double residual_low = 0.0;  // at 0.9 alpha
        double residual_high = 0.0; // at 1.1 alpha
    };

    struct LeakageStatistics
    {
        std::size_t stream;
        double analytic_bits = 0.0; // log2 e_k^2
        double empirical_bits = 0.0;
        double standard_error = 0.0;
        double band = 0.0;
        bool within_band = true;
    };

    struct SimulationReport
    {
        std::uint64_t samples = 0;
        std::uint64_t seed = 0;
        bool genie = true;
        bool dirty_paper = false;
        std::vector<StreamStatistics> streams;
        std::vector<LeakageStatistics> leakage;
        double empirical_mi_bits = 0.0; // sum of log2(1 + empirical SINR) over rows
        double analytic_mi_bits = 0.0;

        // Band failures only count in genie mode.
        bool bands_ok() const;
    };

    SimulationReport simulate_sic(const SicPlan &plan, const Matrix &hb, const SimulationOptions &options);
    SimulationReport simulate_leakage(const WiretapPlan &plan, const Matrix &he, const SimulationOptions &options);
    SimulationReport simulate_dpc(const DpcPlan &plan, const Matrix &hb, const SimulationOptions &options);
    SimulationReport simulate_broadcast(const BroadcastPlan &plan, const Matrix &hb, const Matrix &hc,
                                        const SimulationOptions &options);

    namespace stream_id
    {
        inline constexpr std::uint32_t symbol = 0;        // + stream index
        inline constexpr std::uint32_t bob_noise = 1000;  // + antenna index
        inline constexpr std::uint32_t eve_noise = 2000;  // + antenna index
        inline constexpr std::uint32_t charlie_noise = 3000;
    }
}

#endif
