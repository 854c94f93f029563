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

#ifndef WTD_RNG_HPP
#define WTD_RNG_HPP

#include "wtd/core.hpp"

#include <array>
#include <cstdint>

namespace wtd
{
    // Philox4x32-10 block function. Counter-based: the output depends only
    // on (key, counter), so any sample can be regenerated independently.
    std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter, std::array<std::uint32_t, 2> key) noexcept;

    // Deterministic substream addressed by (seed, stream, index). Successive
    // draws advance a private draw counter.
    class RandomStream
    {
    public:
        RandomStream(std::uint64_t seed, std::uint32_t stream, std::uint64_t index) noexcept;

        double uniform() noexcept;       // in (0, 1)
        cplx complex_normal() noexcept;  // CN(0,1): re, im each N(0, 1/2)
        double normal() noexcept;        // N(0,1)

    private:
        std::array<std::uint32_t, 4> next() noexcept;

        std::array<std::uint32_t, 2> key_;
        std::uint64_t index_;
        std::uint32_t stream_;
        std::uint32_t draw_ = 0;
    };

    // Haar-distributed N x N unitary (QR of a complex Gaussian matrix with phase fix).
    Matrix haar_unitary(RandomStream &rs, Eigen::Index n);
}

#endif
