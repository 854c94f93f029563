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

#include "wtd/rng.hpp"
#include "wtd/scheme.hpp"

#include <Eigen/Cholesky>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <thread>

namespace wtd
{
    namespace
    {
        // One receiver with a combiner and a feedback/presubtraction matrix.
        // Row r of t_tilde carries stream rows[r]; streams after it are removed
        // before detection.
        struct Link
        {
            std::string user;
            Matrix h;
            std::uint32_t noise_stream;
            Matrix u_tilde;
            Matrix t_tilde;
            std::vector<Eigen::Index> rows;
            RealVector analytic_sinr;
            RealVector alpha; // empty unless dirty-paper
        };

        struct RowMoments
        {
            double x2 = 0.0, x4 = 0.0; // |x|^2, |x|^4
            double n2 = 0.0, n4 = 0.0; // residual after ideal removal of the desired term
            double y2 = 0.0;           // |y'|^2
            double xy = 0.0;           // Re(conj(y') g x)

            RowMoments &operator+=(const RowMoments &o)
            {
                x2 += o.x2;
                x4 += o.x4;
                n2 += o.n2;
                n4 += o.n4;
                y2 += o.y2;
                xy += o.xy;
                return *this;
            }
        };

        struct BlockMoments
        {
            std::uint64_t count = 0;
            std::vector<std::vector<RowMoments>> rows; // per link, per row
            Matrix joint;                              // sum of v v^H, v = (x~, y_E)
        };

        struct Engine
        {
            Matrix precoder; // K^1/2 VA
            std::vector<Link> links;
            bool genie = true;
            const Matrix *eve = nullptr;
        };

        std::uint64_t block_size(std::uint64_t samples)
        {
            const std::uint64_t target = (samples + 31) / 32;
            return std::clamp<std::uint64_t>(target, 64, 2048);
        }

        unsigned thread_count(const SimulationOptions &opt, std::size_t blocks)
        {
            unsigned t = opt.threads ? opt.threads : std::max(1u, std::thread::hardware_concurrency());
            return unsigned(std::min<std::size_t>(t, blocks));
        }

        void run_block(const Engine &eng, const SimulationOptions &opt, std::uint64_t first, std::uint64_t last,
                       BlockMoments &out)
        {
            const Eigen::Index n = eng.precoder.cols();
            out.count = last - first;
            out.rows.resize(eng.links.size());
            for (std::size_t l = 0; l < eng.links.size(); ++l)
                out.rows[l].assign(eng.links[l].rows.size(), {});
            Eigen::Index d = 0;
            if (eng.eve)
            {
                d = n + eng.eve->rows();
                out.joint = Matrix::Zero(d, d);
            }

            ComplexVector xt(n), x, y, yt, xhat(n), v(d);
            for (std::uint64_t s = first; s < last; ++s)
            {
                for (Eigen::Index i = 0; i < n; ++i)
                    xt(i) = RandomStream(opt.seed, stream_id::symbol + std::uint32_t(i), s).complex_normal();
                x = eng.precoder * xt;

                for (std::size_t l = 0; l < eng.links.size(); ++l)
                {
                    const Link &lk = eng.links[l];
                    y = lk.h * x;
                    for (Eigen::Index a = 0; a < y.size(); ++a)
                        y(a) += RandomStream(opt.seed, lk.noise_stream + std::uint32_t(a), s).complex_normal();
                    yt = lk.u_tilde.adjoint() * y;

                    xhat = xt;
                    for (Eigen::Index r = Eigen::Index(lk.rows.size()) - 1; r >= 0; --r)
                    {
                        const Eigen::Index i = lk.rows[std::size_t(r)];
                        cplx yp = yt(r);
                        for (Eigen::Index k = i + 1; k < n; ++k)
                            yp -= lk.t_tilde(r, k) * xhat(k);
                        const cplx g = lk.t_tilde(r, i);
                        const cplx resid = yp - g * xt(i);

                        RowMoments &m = out.rows[l][std::size_t(r)];
                        const double ax = std::norm(xt(i));
                        const double an = std::norm(resid);
                        m.x2 += ax;
                        m.x4 += ax * ax;
                        m.n2 += an;
                        m.n4 += an * an;
                        m.y2 += std::norm(yp);
                        m.xy += (std::conj(yp) * g * xt(i)).real();

                        if (!eng.genie)
                        {
                            // Linear MMSE reconstruction from the analytic effective noise.
                            const double sinr = lk.analytic_sinr(r);
                            const double g2 = std::norm(g);
                            xhat(i) = g2 > 0.0 ? std::conj(g) * yp / (g2 + g2 / sinr) : cplx(0.0);
                        }
                    }
                }

                if (eng.eve)
                {
                    y = (*eng.eve) * x;
                    for (Eigen::Index a = 0; a < y.size(); ++a)
                        y(a) += RandomStream(opt.seed, stream_id::eve_noise + std::uint32_t(a), s).complex_normal();
                    v.head(n) = xt;
                    v.tail(y.size()) = y;
                    out.joint.noalias() += v * v.adjoint();
                }
            }
        }

        std::vector<BlockMoments> run(const Engine &eng, const SimulationOptions &opt)
        {
            const std::uint64_t bs = block_size(opt.samples);
            const std::size_t blocks = std::size_t((opt.samples + bs - 1) / bs);
            std::vector<BlockMoments> out(blocks);

            std::atomic<std::size_t> next{0};
            auto worker = [&]
            {
                for (std::size_t b; (b = next.fetch_add(1)) < blocks;)
                    run_block(eng, opt, b * bs, std::min<std::uint64_t>((b + 1) * bs, opt.samples), out[b]);
            };

            const unsigned nt = thread_count(opt, blocks);
            if (nt <= 1)
                worker();
            else
            {
                std::vector<std::jthread> pool;
                for (unsigned t = 0; t < nt; ++t)
                    pool.emplace_back(worker);
            }
            return out;
        }

        // log2 det of the principal submatrix on `idx`; empty index set gives 0.
        double log2_det_sub(const Matrix &s, const std::vector<Eigen::Index> &idx)
        {
            if (idx.empty())
                return 0.0;
            const auto k = Eigen::Index(idx.size());
            Matrix sub(k, k);
            for (Eigen::Index a = 0; a < k; ++a)
                for (Eigen::Index b = 0; b < k; ++b)
                    sub(a, b) = s(idx[std::size_t(a)], idx[std::size_t(b)]);
            Eigen::LLT<Matrix> llt(sub);
            if (llt.info() != Eigen::Success)
                fail(ErrorCode::numerical_failure, "empirical covariance is not positive definite");
            double acc = 0.0;
            for (Eigen::Index a = 0; a < k; ++a)
                acc += std::log2(llt.matrixLLT()(a, a).real());
            return 2.0 * acc;
        }

        // I(x_k; y | x_{k+1..n-1}) in bits from a second-moment matrix over (x, y).
        double conditional_mi(const Matrix &s, Eigen::Index n, Eigen::Index k)
        {
            std::vector<Eigen::Index> z, xz, yz, xyz;
            for (Eigen::Index j = k + 1; j < n; ++j)
                z.push_back(j);
            std::vector<Eigen::Index> ys;
            for (Eigen::Index j = n; j < s.rows(); ++j)
                ys.push_back(j);
            xz = z;
            xz.push_back(k);
            yz = z;
            yz.insert(yz.end(), ys.begin(), ys.end());
            xyz = yz;
            xyz.push_back(k);
            return log2_det_sub(s, xz) + log2_det_sub(s, yz) - log2_det_sub(s, xyz) - log2_det_sub(s, z);
        }

        SimulationReport summarize(const Engine &eng, const SimulationOptions &opt,
                                   const std::vector<BlockMoments> &blocks, bool dirty_paper)
        {
            SimulationReport rep;
            rep.samples = opt.samples;
            rep.seed = opt.seed;
            rep.genie = eng.genie;
            rep.dirty_paper = dirty_paper;
            const double cnt = double(opt.samples);

            for (std::size_t l = 0; l < eng.links.size(); ++l)
            {
                const Link &lk = eng.links[l];
                for (std::size_t r = 0; r < lk.rows.size(); ++r)
                {
                    RowMoments m;
                    for (const BlockMoments &b : blocks)
                        m += b.rows[l][r];

                    StreamStatistics st;
                    st.user = lk.user;
                    st.stream = std::size_t(lk.rows[r]);
                    st.analytic_sinr = lk.analytic_sinr(Eigen::Index(r));
                    const double g2 = std::norm(lk.t_tilde(Eigen::Index(r), lk.rows[r]));
                    const double px = m.x2 / cnt;
                    const double pn = m.n2 / cnt;
                    st.empirical_sinr = g2 > 0.0 && pn > 0.0 ? g2 * px / pn : 0.0;

                    // Delta method on the ratio of two independent sample means.
                    const double vx = std::max(0.0, m.x4 / cnt - px * px);
                    const double vn = std::max(0.0, m.n4 / cnt - pn * pn);
                    double rel_var = 0.0;
                    if (px > 0.0)
                        rel_var += vx / (cnt * px * px);
                    if (pn > 0.0)
                        rel_var += vn / (cnt * pn * pn);
                    st.standard_error = st.empirical_sinr * std::sqrt(rel_var);

                    const double diff = std::abs(st.empirical_sinr - st.analytic_sinr);
                    st.relative_error = st.analytic_sinr > 0.0 ? diff / st.analytic_sinr : diff;
                    st.within_band = diff <= 3.0 * st.standard_error + 1e-9 * std::max(1.0, st.analytic_sinr);

                    if (dirty_paper)
                    {
                        const double a = lk.alpha(Eigen::Index(r));
                        const double gx2 = g2 * m.x2;
                        auto residual = [&](double c)
                        { return (gx2 - 2.0 * c * m.xy + c * c * m.y2) / cnt; };
                        st.alpha = a;
                        st.empirical_alpha = m.y2 > 0.0 ? m.xy / m.y2 : 0.0;
                        st.residual_at_alpha = residual(a);
                        st.residual_low = residual(0.9 * a);
                        st.residual_high = residual(1.1 * a);
                    }

                    rep.empirical_mi_bits += std::log2(1.0 + st.empirical_sinr);
                    rep.analytic_mi_bits += std::log2(1.0 + st.analytic_sinr);
                    rep.streams.push_back(std::move(st));
                }
            }
            return rep;
        }

        void check_samples(const SimulationOptions &opt)
        {
            if (opt.samples == 0)
                fail(ErrorCode::domain, "samples must be positive");
        }

        void check_channel(const Matrix &h, const Matrix &combiner, Eigen::Index n, const char *op)
        {
            if (h.cols() != n || h.rows() != combiner.rows())
                fail(ErrorCode::domain, std::string(op) + ": channel dimensions do not match the plan");
        }

        Link bob_link(const SicPlan &plan, const Matrix &hb)
        {
            const Eigen::Index n = plan.va.cols();
            Link lk;
            lk.user = "bob";
            lk.h = hb;
            lk.noise_stream = stream_id::bob_noise;
            lk.u_tilde = plan.u_tilde;
            lk.t_tilde = plan.t_tilde;
            for (Eigen::Index i = 0; i < n; ++i)
                lk.rows.push_back(i);
            lk.analytic_sinr = plan.sinr;
            return lk;
        }
    }

    bool SimulationReport::bands_ok() const
    {
        if (!genie)
            return true;
        for (const auto &s : streams)
            if (!s.within_band)
                return false;
        for (const auto &l : leakage)
            if (!l.within_band)
                return false;
        return true;
    }

    SimulationReport simulate_sic(const SicPlan &plan, const Matrix &hb, const SimulationOptions &options)
    {
        check_samples(options);
        check_channel(hb, plan.u_tilde, plan.va.cols(), "simulate_sic");
        Engine eng;
        eng.precoder = plan.b_sqrt * plan.va;
        eng.genie = options.genie;
        eng.links.push_back(bob_link(plan, hb));
        return summarize(eng, options, run(eng, options), false);
    }

    SimulationReport simulate_dpc(const DpcPlan &plan, const Matrix &hb, const SimulationOptions &options)
    {
        check_samples(options);
        check_channel(hb, plan.base.u_tilde, plan.base.va.cols(), "simulate_dpc");
        Engine eng;
        eng.precoder = plan.base.b_sqrt * plan.base.va;
        eng.genie = true; // presubtraction at the transmitter is exact
        eng.links.push_back(bob_link(plan.base, hb));
        eng.links.back().alpha = plan.alpha;
        SimulationOptions opt = options;
        opt.genie = true;
        return summarize(eng, opt, run(eng, opt), true);
    }

    SimulationReport simulate_broadcast(const BroadcastPlan &plan, const Matrix &hb, const Matrix &hc,
                                        const SimulationOptions &options)
    {
        check_samples(options);
        const Eigen::Index n = plan.va.cols();
        check_channel(hb, plan.u_tilde_b, n, "simulate_broadcast");
        check_channel(hc, plan.u_tilde_c, n, "simulate_broadcast");

        Engine eng;
        eng.precoder = plan.b_sqrt * plan.va;
        eng.genie = true;

        Link bob;
        bob.user = "bob";
        bob.h = hb;
        bob.noise_stream = stream_id::bob_noise;
        bob.u_tilde = plan.u_tilde_b;
        bob.t_tilde = plan.t_tilde_b;
        for (std::size_t i = 0; i < plan.lb; ++i)
            bob.rows.push_back(Eigen::Index(i));
        bob.analytic_sinr = plan.sinr_b;
        bob.alpha = plan.alpha_b;

        Link charlie;
        charlie.user = "charlie";
        charlie.h = hc;
        charlie.noise_stream = stream_id::charlie_noise;
        charlie.u_tilde = plan.u_tilde_c;
        charlie.t_tilde = plan.t_tilde_c;
        for (std::size_t i = 0; i < plan.lc; ++i)
            charlie.rows.push_back(Eigen::Index(plan.lb + i));
        charlie.analytic_sinr = plan.sinr_c;
        charlie.alpha = plan.alpha_c;

        eng.links.push_back(std::move(bob));
        eng.links.push_back(std::move(charlie));
        SimulationOptions opt = options;
        opt.genie = true;
        return summarize(eng, opt, run(eng, opt), true);
    }

    SimulationReport simulate_leakage(const WiretapPlan &plan, const Matrix &he, const SimulationOptions &options)
    {
        check_samples(options);
        const Eigen::Index n = plan.base.va.cols();
        if (he.cols() != n)
            fail(ErrorCode::domain, "simulate_leakage: channel dimensions do not match the plan");
        const Eigen::Index d = n + he.rows();
        if (options.samples < std::uint64_t(10 * d * d))
            fail(ErrorCode::insufficient_samples,
                 "simulate_leakage: need at least " + std::to_string(10 * d * d) + " samples");

        Engine eng;
        eng.precoder = plan.base.b_sqrt * plan.base.va;
        eng.genie = true;
        eng.eve = &he;

        SimulationOptions opt = options;
        opt.genie = true;
        const auto blocks = run(eng, opt);
        SimulationReport rep = summarize(eng, opt, blocks, false);

        Matrix total = Matrix::Zero(d, d);
        for (const auto &b : blocks)
            total += b.joint;
        total /= double(opt.samples);

        // Batch means over contiguous groups of blocks.
        const std::size_t batches = std::min<std::size_t>(32, blocks.size());
        std::vector<Matrix> batch(batches, Matrix::Zero(d, d));
        std::vector<double> batch_count(batches, 0.0);
        for (std::size_t b = 0; b < blocks.size(); ++b)
        {
            const std::size_t g = b * batches / blocks.size();
            batch[g] += blocks[b].joint;
            batch_count[g] += double(blocks[b].count);
        }

        const double bias = double(he.rows()) / (double(opt.samples) * std::numbers::ln2);
        for (Eigen::Index k = 0; k < n; ++k)
        {
            LeakageStatistics ls;
            ls.stream = std::size_t(k);
            ls.analytic_bits = 2.0 * std::log2(plan.diag_e(k));
            ls.empirical_bits = conditional_mi(total, n, k);
            if (batches > 1)
            {
                std::vector<double> vals;
                for (std::size_t g = 0; g < batches; ++g)
                    vals.push_back(conditional_mi(batch[g] / batch_count[g], n, k));
                double mean = 0.0;
                for (double v : vals)
                    mean += v;
                mean /= double(batches);
                double var = 0.0;
                for (double v : vals)
                    var += (v - mean) * (v - mean);
                var /= double(batches - 1);
                ls.standard_error = std::sqrt(var / double(batches));
            }
            // Three standard errors plus the first-order upward bias of the
            // plug-in estimator, N_E / (n ln 2) bits.
            ls.band = 3.0 * ls.standard_error + bias;
            ls.within_band = std::abs(ls.empirical_bits - ls.analytic_bits) <= ls.band;
            rep.leakage.push_back(ls);
        }
        return rep;
    }
}
