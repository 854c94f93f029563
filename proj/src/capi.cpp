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

#include "wtd/wtd.h"

#include "wtd/decomp.hpp"
#include "wtd/scheme.hpp"
#include "wtd/secrecy.hpp"

#include <algorithm>
#include <memory>
#include <new>
#include <string>
#include <vector>

struct wtd_matrix
{
    wtd::Matrix m;
};

struct wtd_result
{
    struct Entry
    {
        std::string key;
        wtd_value_kind kind = WTD_VALUE_NONE;
        double scalar = 0.0;
        std::vector<double> vec;
        wtd::Matrix mat;
        std::string text;
    };
    std::vector<Entry> entries;

    const Entry *find(const char *key) const
    {
        if (!key)
            return nullptr;
        for (const auto &e : entries)
            if (e.key == key)
                return &e;
        return nullptr;
    }

    Entry &add(const std::string &key, wtd_value_kind kind)
    {
        entries.push_back({});
        entries.back().key = key;
        entries.back().kind = kind;
        return entries.back();
    }

    void scalar(const std::string &key, double v) { add(key, WTD_VALUE_SCALAR).scalar = v; }
    void vector(const std::string &key, const wtd::RealVector &v)
    {
        add(key, WTD_VALUE_VECTOR).vec.assign(v.data(), v.data() + v.size());
    }
    void vector(const std::string &key, std::vector<double> v) { add(key, WTD_VALUE_VECTOR).vec = std::move(v); }
    void matrix(const std::string &key, const wtd::Matrix &m) { add(key, WTD_VALUE_MATRIX).mat = m; }
    void text(const std::string &key, std::string t) { add(key, WTD_VALUE_TEXT).text = std::move(t); }
};

namespace
{
    thread_local std::string last_error;
    thread_local std::size_t last_index = 0;

    wtd_status set_error(wtd_status s, const char *what, std::size_t index = 0)
    {
        last_error = what ? what : "";
        last_index = index;
        return s;
    }

    wtd_status status_of(wtd::ErrorCode c)
    {
        switch (c)
        {
        case wtd::ErrorCode::domain:
            return WTD_ERR_DOMAIN;
        case wtd::ErrorCode::rank_deficient:
            return WTD_ERR_RANK_DEFICIENT;
        case wtd::ErrorCode::majorization:
            return WTD_ERR_MAJORIZATION;
        case wtd::ErrorCode::not_psd:
            return WTD_ERR_NOT_PSD;
        case wtd::ErrorCode::numerical_failure:
            return WTD_ERR_NUMERICAL;
        case wtd::ErrorCode::insufficient_samples:
            return WTD_ERR_INSUFFICIENT_SAMPLES;
        }
        return WTD_ERR_INTERNAL;
    }

    // Must be called from inside a catch block.
    wtd_status translate_exception() noexcept
    {
        try
        {
            throw;
        }
        catch (const wtd::MajorizationError &e)
        {
            return set_error(WTD_ERR_MAJORIZATION, e.what(), e.prefix());
        }
        catch (const wtd::Error &e)
        {
            return set_error(status_of(e.code()), e.what());
        }
        catch (const std::bad_alloc &)
        {
            return set_error(WTD_ERR_OUT_OF_MEMORY, "out of memory");
        }
        catch (const std::exception &e)
        {
            return set_error(WTD_ERR_INTERNAL, e.what());
        }
        catch (...)
        {
            return set_error(WTD_ERR_INTERNAL, "unknown exception");
        }
    }

    struct InvalidArgument
    {
        const char *what;
    };

#define WTD_API_BEGIN \
    try               \
    {                 \
        last_error.clear(); \
        last_index = 0;
#define WTD_API_END                                                \
    return WTD_OK;                                                 \
    }                                                              \
    catch (const InvalidArgument &ia)                              \
    {                                                              \
        return set_error(WTD_ERR_INVALID_ARGUMENT, ia.what);       \
    }                                                              \
    catch (...)                                                    \
    {                                                              \
        return translate_exception();                              \
    }

    void require(bool ok, const char *what)
    {
        if (!ok)
            throw InvalidArgument{what};
    }

    wtd::Covariance covariance_or_identity(const wtd_matrix *kbar, Eigen::Index n)
    {
        if (!kbar)
            return wtd::Covariance::identity(n);
        if (kbar->m.rows() != n || kbar->m.cols() != n)
            wtd::fail(wtd::ErrorCode::domain, "kbar must be N_A x N_A");
        return wtd::Covariance(kbar->m);
    }

    wtd::PrecoderMode mode_or_default(const char *mode)
    {
        if (!mode)
            return wtd::PrecoderMode::gsvd;
        try
        {
            return wtd::parse_precoder_mode(mode);
        }
        catch (const wtd::Error &e)
        {
            throw InvalidArgument{e.what()};
        }
    }

    void require_pair(const wtd_matrix *a, const wtd_matrix *b)
    {
        require(a && b, "channel matrix is null");
        if (a->m.cols() != b->m.cols())
            wtd::fail(wtd::ErrorCode::domain, "channel matrices must have the same column count");
    }

    void put_gtd(wtd_result &r, const wtd::Matrix &a, const wtd::GtdFactors &f)
    {
        r.matrix("u", f.u);
        r.matrix("t", f.t);
        r.matrix("v", f.v);
        r.vector("diagonal", f.diagonal());
        r.scalar("reconstruction_residual", wtd::relative_residual(f.reconstruct(), a));
        r.scalar("unitarity_u", wtd::unitarity_error(f.u));
        r.scalar("unitarity_v", wtd::unitarity_error(f.v));
    }

    void put_stream_table(wtd_result &r, const wtd::SimulationReport &rep)
    {
        std::vector<double> stream, user, an, em, rel, se, band;
        for (const auto &s : rep.streams)
        {
            stream.push_back(double(s.stream));
            user.push_back(s.user == "charlie" ? 1.0 : 0.0);
            an.push_back(s.analytic_sinr);
            em.push_back(s.empirical_sinr);
            rel.push_back(s.relative_error);
            se.push_back(s.standard_error);
            band.push_back(s.within_band ? 1.0 : 0.0);
        }
        r.vector("stream", stream);
        r.vector("user", user);
        r.vector("analytic_sinr", an);
        r.vector("empirical_sinr", em);
        r.vector("relative_error", rel);
        r.vector("standard_error", se);
        r.vector("within_band", band);
        if (rep.dirty_paper)
        {
            std::vector<double> a, ea, r0, rl, rh;
            for (const auto &s : rep.streams)
            {
                a.push_back(s.alpha);
                ea.push_back(s.empirical_alpha);
                r0.push_back(s.residual_at_alpha);
                rl.push_back(s.residual_low);
                rh.push_back(s.residual_high);
            }
            r.vector("alpha", a);
            r.vector("empirical_alpha", ea);
            r.vector("residual_at_alpha", r0);
            r.vector("residual_at_0.9_alpha", rl);
            r.vector("residual_at_1.1_alpha", rh);
        }
        r.scalar("analytic_mi_bits", rep.analytic_mi_bits);
        r.scalar("empirical_mi_bits", rep.empirical_mi_bits);
    }
}

extern "C"
{
    const char *wtd_version(void)
    {
        return "1.0.0";
    }

    const char *wtd_status_string(wtd_status status)
    {
        switch (status)
        {
        case WTD_OK:
            return "ok";
        case WTD_ERR_INVALID_ARGUMENT:
            return "invalid argument";
        case WTD_ERR_DOMAIN:
            return "domain error";
        case WTD_ERR_RANK_DEFICIENT:
            return "rank deficient";
        case WTD_ERR_MAJORIZATION:
            return "majorization violated";
        case WTD_ERR_NOT_PSD:
            return "not positive semidefinite";
        case WTD_ERR_NUMERICAL:
            return "numerical failure";
        case WTD_ERR_INSUFFICIENT_SAMPLES:
            return "insufficient samples";
        case WTD_ERR_OUT_OF_MEMORY:
            return "out of memory";
        case WTD_ERR_INTERNAL:
            return "internal error";
        }
        return "unknown status";
    }

    const char *wtd_last_error(void)
    {
        return last_error.c_str();
    }

    size_t wtd_last_error_index(void)
    {
        return last_index;
    }

    wtd_status wtd_matrix_new(size_t rows, size_t cols, const double *interleaved, wtd_matrix **out)
    {
        WTD_API_BEGIN
        require(out != nullptr, "output pointer is null");
        *out = nullptr;
        require(rows > 0 && cols > 0, "matrix dimensions must be positive");
        require(interleaved != nullptr, "matrix data is null");
        auto m = new wtd_matrix{wtd::Matrix(Eigen::Index(rows), Eigen::Index(cols))};
        for (size_t i = 0; i < rows; ++i)
            for (size_t j = 0; j < cols; ++j)
            {
                const size_t k = 2 * (i * cols + j);
                m->m(Eigen::Index(i), Eigen::Index(j)) = {interleaved[k], interleaved[k + 1]};
            }
        *out = m;
        WTD_API_END
    }

    wtd_status wtd_matrix_identity(size_t n, wtd_matrix **out)
    {
        WTD_API_BEGIN
        require(out != nullptr, "output pointer is null");
        require(n > 0, "matrix dimensions must be positive");
        *out = new wtd_matrix{wtd::Matrix::Identity(Eigen::Index(n), Eigen::Index(n))};
        WTD_API_END
    }

    void wtd_matrix_free(wtd_matrix *m)
    {
        delete m;
    }

    size_t wtd_matrix_rows(const wtd_matrix *m)
    {
        return m ? size_t(m->m.rows()) : 0;
    }

    size_t wtd_matrix_cols(const wtd_matrix *m)
    {
        return m ? size_t(m->m.cols()) : 0;
    }

    wtd_status wtd_matrix_data(const wtd_matrix *m, double *out, size_t capacity)
    {
        WTD_API_BEGIN
        require(m && out, "null argument");
        const size_t rows = size_t(m->m.rows()), cols = size_t(m->m.cols());
        require(capacity >= 2 * rows * cols, "buffer too small");
        for (size_t i = 0; i < rows; ++i)
            for (size_t j = 0; j < cols; ++j)
            {
                const auto z = m->m(Eigen::Index(i), Eigen::Index(j));
                out[2 * (i * cols + j)] = z.real();
                out[2 * (i * cols + j) + 1] = z.imag();
            }
        WTD_API_END
    }

    void wtd_result_free(wtd_result *r)
    {
        delete r;
    }

    size_t wtd_result_size(const wtd_result *r)
    {
        return r ? r->entries.size() : 0;
    }

    const char *wtd_result_key(const wtd_result *r, size_t index)
    {
        if (!r || index >= r->entries.size())
            return nullptr;
        return r->entries[index].key.c_str();
    }

    wtd_value_kind wtd_result_kind(const wtd_result *r, const char *key)
    {
        const auto *e = r ? r->find(key) : nullptr;
        return e ? e->kind : WTD_VALUE_NONE;
    }

    wtd_status wtd_result_scalar(const wtd_result *r, const char *key, double *out)
    {
        WTD_API_BEGIN
        require(r && out, "null argument");
        const auto *e = r->find(key);
        require(e && e->kind == WTD_VALUE_SCALAR, "no scalar with this key");
        *out = e->scalar;
        WTD_API_END
    }

    wtd_status wtd_result_vector(const wtd_result *r, const char *key, double *out, size_t capacity, size_t *length)
    {
        WTD_API_BEGIN
        require(r && length, "null argument");
        const auto *e = r->find(key);
        require(e && e->kind == WTD_VALUE_VECTOR, "no vector with this key");
        *length = e->vec.size();
        if (out)
        {
            require(capacity >= e->vec.size(), "buffer too small");
            std::copy(e->vec.begin(), e->vec.end(), out);
        }
        WTD_API_END
    }

    wtd_status wtd_result_matrix(const wtd_result *r, const char *key, wtd_matrix **out)
    {
        WTD_API_BEGIN
        require(r && out, "null argument");
        const auto *e = r->find(key);
        require(e && e->kind == WTD_VALUE_MATRIX, "no matrix with this key");
        *out = new wtd_matrix{e->mat};
        WTD_API_END
    }

    const char *wtd_result_text(const wtd_result *r, const char *key)
    {
        const auto *e = r ? r->find(key) : nullptr;
        return e && e->kind == WTD_VALUE_TEXT ? e->text.c_str() : nullptr;
    }

    wtd_status wtd_decompose(const char *kind, const wtd_matrix *a, const wtd_matrix *a2, const double *target,
                             size_t target_length, wtd_result **out)
    {
        WTD_API_BEGIN
        require(kind && a && out, "null argument");
        *out = nullptr;
        auto r = std::make_unique<wtd_result>();
        const std::string k = kind;
        r->text("kind", k);
        if (k == "qr")
            put_gtd(*r, a->m, wtd::qr(a->m));
        else if (k == "svd")
            put_gtd(*r, a->m, wtd::svd(a->m));
        else if (k == "gmd")
            put_gtd(*r, a->m, wtd::gmd(a->m));
        else if (k == "gtd")
        {
            require(target != nullptr && target_length > 0, "gtd requires a target diagonal");
            const wtd::RealVector t = Eigen::Map<const wtd::RealVector>(target, Eigen::Index(target_length));
            r->vector("target", t);
            put_gtd(*r, a->m, wtd::gtd(a->m, t));
        }
        else if (k == "ql")
        {
            const auto f = wtd::ql(a->m);
            const Eigen::Index off = a->m.rows() - a->m.cols();
            wtd::RealVector d(a->m.cols());
            for (Eigen::Index i = 0; i < d.size(); ++i)
                d(i) = f.l(off + i, i).real();
            r->matrix("u", f.u);
            r->matrix("l", f.l);
            r->vector("diagonal", d);
            r->scalar("reconstruction_residual", wtd::relative_residual(f.u * f.l, a->m));
            r->scalar("unitarity_u", wtd::unitarity_error(f.u));
        }
        else if (k == "gsvd")
        {
            require(a2 != nullptr, "gsvd requires a second matrix");
            const auto d = wtd::gsvd_diagonal(a->m, a2->m);
            const auto j = wtd::gsvd_triangular(a->m, a2->m);
            const Eigen::Index n = a->m.cols();
            r->vector("gsv", d.ratios());
            r->matrix("u1", d.u1);
            r->matrix("u2", d.u2);
            r->matrix("x", d.x);
            r->matrix("l1", d.l1);
            r->matrix("l2", d.l2);
            r->scalar("normalization_residual",
                      (d.l1.adjoint() * d.l1 + d.l2.adjoint() * d.l2 - wtd::Matrix::Identity(n, n)).norm());
            r->scalar("reconstruction_residual_1", wtd::relative_residual(d.u1 * d.l1 * d.x.adjoint(), a->m));
            r->scalar("reconstruction_residual_2", wtd::relative_residual(d.u2 * d.l2 * d.x.adjoint(), a2->m));
            r->matrix("va", j.va);
            r->matrix("t1", j.t1);
            r->matrix("t2", j.t2);
            r->vector("diag1", j.diag1);
            r->vector("diag2", j.diag2);
            r->scalar("triangular_residual_1", wtd::relative_residual(j.u1 * j.t1 * j.va.adjoint(), a->m));
            r->scalar("triangular_residual_2", wtd::relative_residual(j.u2 * j.t2 * j.va.adjoint(), a2->m));
        }
        else
            throw InvalidArgument{"unknown decomposition kind"};
        *out = r.release();
        WTD_API_END
    }

    wtd_status wtd_capacity(const wtd_matrix *hb, const wtd_matrix *he, const wtd_matrix *kbar, const char *mode,
                            wtd_result **out)
    {
        WTD_API_BEGIN
        require(out != nullptr, "output pointer is null");
        *out = nullptr;
        require_pair(hb, he);
        const auto k = covariance_or_identity(kbar, hb->m.cols());
        const auto pm = mode_or_default(mode);
        const auto res = wtd::secrecy_capacity_cov(hb->m, he->m, k);
        const auto plan = wtd::build_wiretap_plan(hb->m, he->m, k, pm);

        auto r = std::make_unique<wtd_result>();
        r->scalar("capacity_bits", res.capacity_bits);
        r->scalar("lb", double(res.lb));
        r->vector("gsv", res.gsv);
        r->matrix("k_star", res.k_star.matrix());
        r->scalar("mi_difference_at_k_star", wtd::secrecy_mi_difference(hb->m, he->m, res.k_star));
        r->text("mode", wtd::to_string(pm));
        r->vector("b", plan.base.diag_b);
        r->vector("e", plan.diag_e);
        r->vector("bob_sinr", plan.base.sinr);
        r->vector("eve_sinr", plan.eve_sinr);
        r->vector("secret_rates_bits", plan.secret_rates_bits);
        r->vector("fictitious_rates_bits", plan.fictitious_rates_bits);
        r->scalar("total_secret_rate_bits", plan.total_secret_rate());
        *out = r.release();
        WTD_API_END
    }

    wtd_status wtd_power_capacity(const wtd_matrix *hb, const wtd_matrix *he, double power, size_t budget,
                                  uint64_t seed, wtd_result **out)
    {
        WTD_API_BEGIN
        require(out != nullptr, "output pointer is null");
        *out = nullptr;
        require_pair(hb, he);
        const auto res = wtd::power_constrained_capacity(hb->m, he->m, power, budget, seed);
        auto r = std::make_unique<wtd_result>();
        r->scalar("power", power);
        r->scalar("budget", double(budget));
        r->scalar("evaluations", double(res.evaluations));
        r->scalar("capacity_lower_bound_bits", res.capacity_lower_bound);
        r->matrix("best_kbar", res.best_kbar.matrix());
        *out = r.release();
        WTD_API_END
    }

    wtd_status wtd_region(const wtd_matrix *hb, const wtd_matrix *hc, const wtd_matrix *kbar, wtd_result **out)
    {
        WTD_API_BEGIN
        require(out != nullptr, "output pointer is null");
        *out = nullptr;
        require_pair(hb, hc);
        const auto k = covariance_or_identity(kbar, hb->m.cols());
        const auto region = wtd::broadcast_region(hb->m, hc->m, k);
        const auto plan = wtd::build_broadcast_plan(hb->m, hc->m, k);
        auto r = std::make_unique<wtd_result>();
        r->scalar("rb_max_bits", region.rb_max);
        r->scalar("rc_max_bits", region.rc_max);
        r->vector("gsv", region.gsv);
        r->scalar("lb", double(plan.lb));
        r->scalar("lc", double(plan.lc));
        r->vector("b", plan.diag_b);
        r->vector("c", plan.diag_c);
        r->vector("bob_rates_bits", plan.bob_rates_bits);
        r->vector("charlie_rates_bits", plan.charlie_rates_bits);
        *out = r.release();
        WTD_API_END
    }

    void wtd_sim_options_init(wtd_sim_options *opt)
    {
        if (!opt)
            return;
        opt->samples = 100000;
        opt->seed = 1;
        opt->threads = 0;
        opt->genie = 1;
        opt->epsilon = 0.0;
    }

    wtd_status wtd_simulate(const char *scheme, const wtd_matrix *hb, const wtd_matrix *he, const wtd_matrix *kbar,
                            const char *mode, const wtd_sim_options *opt, wtd_result **out)
    {
        WTD_API_BEGIN
        require(scheme && hb && opt && out, "null argument");
        *out = nullptr;
        const std::string s = scheme;
        const Eigen::Index n = hb->m.cols();
        const auto k = covariance_or_identity(kbar, n);
        const auto pm = mode_or_default(mode);

        wtd::SimulationOptions so;
        so.samples = opt->samples;
        so.seed = opt->seed;
        so.threads = opt->threads;
        so.genie = opt->genie != 0;
        const wtd::PlanOptions po{opt->epsilon};

        auto r = std::make_unique<wtd_result>();
        r->text("scheme", s);
        r->scalar("samples", double(so.samples));
        r->scalar("seed", double(so.seed));

        bool bands = true;
        if (s == "sic")
        {
            const wtd::Matrix eve = he ? he->m : wtd::Matrix::Zero(1, n);
            if (eve.cols() != n)
                wtd::fail(wtd::ErrorCode::domain, "channel matrices must have the same column count");
            const auto plan = wtd::build_sic_plan(hb->m, k, wtd::select_precoder(hb->m, eve, k, pm));
            const auto rep = wtd::simulate_sic(plan, hb->m, so);
            r->text("mode", wtd::to_string(pm));
            r->scalar("genie", so.genie ? 1.0 : 0.0);
            r->vector("b", plan.diag_b);
            r->vector("rates_bits", plan.rates_bits);
            put_stream_table(*r, rep);
            bands = rep.bands_ok();
        }
        else if (s == "wiretap")
        {
            require_pair(hb, he);
            const auto plan = wtd::build_wiretap_plan(hb->m, he->m, k, pm, po);
            wtd::SimulationOptions genie = so;
            genie.genie = true;
            const auto bob = wtd::simulate_sic(plan.base, hb->m, genie);
            const auto eve = wtd::simulate_leakage(plan, he->m, genie);
            r->text("mode", wtd::to_string(pm));
            r->scalar("genie", 1.0);
            r->scalar("capacity_bits", plan.capacity_bits);
            r->vector("b", plan.base.diag_b);
            r->vector("e", plan.diag_e);
            r->vector("secret_rates_bits", plan.secret_rates_bits);
            r->vector("fictitious_rates_bits", plan.fictitious_rates_bits);
            put_stream_table(*r, bob);
            std::vector<double> an, em, se, band, ok;
            for (const auto &l : eve.leakage)
            {
                an.push_back(l.analytic_bits);
                em.push_back(l.empirical_bits);
                se.push_back(l.standard_error);
                band.push_back(l.band);
                ok.push_back(l.within_band ? 1.0 : 0.0);
            }
            r->vector("leakage_analytic_bits", an);
            r->vector("leakage_empirical_bits", em);
            r->vector("leakage_standard_error", se);
            r->vector("leakage_band", band);
            r->vector("leakage_within_band", ok);
            bands = bob.bands_ok() && eve.bands_ok();
        }
        else if (s == "dpc")
        {
            require_pair(hb, he);
            const auto plan = wtd::build_dpc_plan(hb->m, he->m, k, pm, po);
            const auto rep = wtd::simulate_dpc(plan, hb->m, so);
            r->text("mode", wtd::to_string(pm));
            r->scalar("genie", 1.0);
            r->vector("b", plan.base.diag_b);
            r->vector("e", plan.diag_e);
            r->vector("rates_bits", plan.rates_bits);
            r->vector("fictitious_rates_bits", plan.fictitious_rates_bits);
            r->vector("auxiliary_rates_bits", plan.auxiliary_rates_bits);
            r->matrix("presubtraction", plan.presubtraction);
            put_stream_table(*r, rep);
            bands = rep.bands_ok();
        }
        else if (s == "broadcast")
        {
            require_pair(hb, he);
            const auto plan = wtd::build_broadcast_plan(hb->m, he->m, k);
            const auto rep = wtd::simulate_broadcast(plan, hb->m, he->m, so);
            r->scalar("genie", 1.0);
            r->scalar("lb", double(plan.lb));
            r->scalar("lc", double(plan.lc));
            r->vector("bob_rates_bits", plan.bob_rates_bits);
            r->vector("charlie_rates_bits", plan.charlie_rates_bits);
            put_stream_table(*r, rep);
            bands = rep.bands_ok();
        }
        else
            throw InvalidArgument{"unknown scheme"};

        r->scalar("bands_ok", bands ? 1.0 : 0.0);
        *out = r.release();
        WTD_API_END
    }

    wtd_status wtd_scalar_secrecy_capacity(double hb_re, double hb_im, double he_re, double he_im, double *out)
    {
        WTD_API_BEGIN
        require(out != nullptr, "output pointer is null");
        *out = wtd::scalar_secrecy_capacity({hb_re, hb_im}, {he_re, he_im});
        WTD_API_END
    }
}
