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

#ifndef WTD_TOOLS_PROBLEM_HPP
#define WTD_TOOLS_PROBLEM_HPP

#include "wtd/wtd.h"

#include <json.hpp>

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace wtd_cli
{
    struct MatrixDeleter
    {
        void operator()(wtd_matrix *m) const noexcept { wtd_matrix_free(m); }
    };
    struct ResultDeleter
    {
        void operator()(wtd_result *r) const noexcept { wtd_result_free(r); }
    };
    using MatrixPtr = std::unique_ptr<wtd_matrix, MatrixDeleter>;
    using ResultPtr = std::unique_ptr<wtd_result, ResultDeleter>;

    // Malformed input; the message names the offending field.
    class InputError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    struct ProblemFile
    {
        std::string path;
        std::string digest; // FNV-1a 64 of the raw bytes, hex
        MatrixPtr h_b;
        MatrixPtr h_e;      // also filled from "h_c"
        MatrixPtr kbar;     // null means identity
        MatrixPtr a;
        MatrixPtr a2;
        std::vector<double> target;
        std::optional<double> power;
        std::optional<std::string> mode;
        std::optional<std::uint64_t> samples;
        std::optional<std::uint64_t> seed;
        std::optional<std::uint64_t> budget;
        std::optional<double> epsilon;
        std::optional<bool> genie;
    };

    ProblemFile load_problem(const std::string &path);

    // Complex matrix from nested rows; entries are numbers or [re, im] pairs.
    MatrixPtr parse_matrix(const nlohmann::json &j, const std::string &field);

    std::string fnv1a64_hex(const std::string &bytes);
}

#endif
