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
#include "wtd/decomp.hpp"

#include <cmath>
#include <numbers>

namespace wtd
{
    namespace
    {
        constexpr std::uint32_t philox_m0 = 0xD2511F53u;
        constexpr std::uint32_t philox_m1 = 0xCD9E8D57u;
        constexpr std::uint32_t philox_w0 = 0x9E3779B9u;
        constexpr std::uint32_t philox_w1 = 0xBB67AE85u;

        inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t &hi, std::uint32_t &lo) noexcept
        {
            const std::uint64_t p = std::uint64_t(a) * std::uint64_t(b);
            hi = std::uint32_t(p >> 32);
            lo = std::uint32_t(p);
        }

        // 53-bit uniform strictly inside (0, 1).
        inline double to_unit(std::uint32_t hi, std::uint32_t lo) noexcept
        {
            const std::uint64_t bits = ((std::uint64_t(hi) << 32) | lo) >> 11;
            return (double(bits) + 0.5) * 0x1.0p-53;
        }
    }

    std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> c, std::array<std::uint32_t, 2> k) noexcept
    {
        for (int round = 0; round < 10; ++round)
        {
            std::uint32_t hi0, lo0, hi1, lo1;
            mulhilo(philox_m0, c[0], hi0, lo0);
            mulhilo(philox_m1, c[2], hi1, lo1);
            c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
            k[0] += philox_w0;
            k[1] += philox_w1;
        }
        return c;
    }

    RandomStream::RandomStream(std::uint64_t seed, std::uint32_t stream, std::uint64_t index) noexcept
        : key_{std::uint32_t(seed), std::uint32_t(seed >> 32)}, index_(index), stream_(stream)
    {
    }

    std::array<std::uint32_t, 4> RandomStream::next() noexcept
    {
        return philox4x32({std::uint32_t(index_), std::uint32_t(index_ >> 32), stream_, draw_++}, key_);
    }

    double RandomStream::uniform() noexcept
    {
        const auto w = next();
        return to_unit(w[0], w[1]);
    }

    cplx RandomStream::complex_normal() noexcept
    {
        const auto w = next();
        const double u1 = to_unit(w[0], w[1]);
        const double u2 = to_unit(w[2], w[3]);
        // |z|^2 = -ln u1 is Exp(1).
        const double radius = std::sqrt(-std::log(u1));
        const double angle = 2.0 * std::numbers::pi * u2;
        return {radius * std::cos(angle), radius * std::sin(angle)};
    }

    double RandomStream::normal() noexcept
    {
        return std::sqrt(2.0) * complex_normal().real();
    }

    Matrix haar_unitary(RandomStream &rs, Eigen::Index n)
    {
        Matrix z(n, n);
        for (Eigen::Index j = 0; j < n; ++j)
            for (Eigen::Index i = 0; i < n; ++i)
                z(i, j) = rs.complex_normal();
        // qr() fixes R to a positive diagonal, which is what makes Q Haar.
        return qr(z).u;
    }
}
