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

#ifndef WTD_TOOLS_REPORT_HPP
#define WTD_TOOLS_REPORT_HPP

#include "problem.hpp"

#include <json.hpp>

#include <string>

namespace wtd_cli
{
    using Report = nlohmann::ordered_json;

    // Every entry of `r` in insertion order. Matrices are written in the same
    // nested [re, im] layout the input files use.
    Report to_json(const wtd_result *r);

    Report matrix_json(const wtd_matrix *m);

    // Per-stream table: all vector entries whose length matches the stream
    // column (or the longest vector when there is none).
    std::string to_csv(const wtd_result *r);
}

#endif
