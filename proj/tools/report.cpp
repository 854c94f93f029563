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

#include "report.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <iterator>
#include <sstream>
#include <vector>

namespace wtd_cli
{
    namespace
    {
        std::vector<double> vector_of(const wtd_result *r, const char *key)
        {
            std::size_t n = 0;
            wtd_result_vector(r, key, nullptr, 0, &n);
            std::vector<double> v(n);
            if (n)
                wtd_result_vector(r, key, v.data(), n, &n);
            return v;
        }

        // Scalars that are counts by construction are written as integers.
        bool is_count_key(const std::string &key)
        {
            static const char *const keys[] = {"lb", "lc", "samples", "seed", "budget", "evaluations", "genie", "bands_ok"};
            return std::find(std::begin(keys), std::end(keys), key) != std::end(keys);
        }

        std::string format_double(double v)
        {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.17g", v);
            return buf;
        }
    }

    Report matrix_json(const wtd_matrix *m)
    {
        const std::size_t rows = wtd_matrix_rows(m), cols = wtd_matrix_cols(m);
        std::vector<double> data(2 * rows * cols);
        wtd_matrix_data(m, data.data(), data.size());
        Report out = Report::array();
        for (std::size_t i = 0; i < rows; ++i)
        {
            Report row = Report::array();
            for (std::size_t j = 0; j < cols; ++j)
                row.push_back({data[2 * (i * cols + j)], data[2 * (i * cols + j) + 1]});
            out.push_back(std::move(row));
        }
        return out;
    }

    Report to_json(const wtd_result *r)
    {
        Report out = Report::object();
        for (std::size_t i = 0; i < wtd_result_size(r); ++i)
        {
            const char *key = wtd_result_key(r, i);
            switch (wtd_result_kind(r, key))
            {
            case WTD_VALUE_SCALAR:
            {
                double v = 0.0;
                wtd_result_scalar(r, key, &v);
                if (is_count_key(key))
                    out[key] = static_cast<std::uint64_t>(v);
                else
                    out[key] = v;
                break;
            }
            case WTD_VALUE_VECTOR:
                out[key] = vector_of(r, key);
                break;
            case WTD_VALUE_MATRIX:
            {
                wtd_matrix *m = nullptr;
                if (wtd_result_matrix(r, key, &m) == WTD_OK)
                {
                    MatrixPtr owned(m);
                    out[key] = matrix_json(m);
                }
                break;
            }
            case WTD_VALUE_TEXT:
                out[key] = wtd_result_text(r, key);
                break;
            case WTD_VALUE_NONE:
                break;
            }
        }
        return out;
    }

    std::string to_csv(const wtd_result *r)
    {
        std::vector<std::string> keys;
        std::size_t rows = 0;
        if (wtd_result_kind(r, "stream") == WTD_VALUE_VECTOR)
            rows = vector_of(r, "stream").size();
        else
            for (std::size_t i = 0; i < wtd_result_size(r); ++i)
            {
                const char *key = wtd_result_key(r, i);
                if (wtd_result_kind(r, key) == WTD_VALUE_VECTOR)
                    rows = std::max(rows, vector_of(r, key).size());
            }

        std::vector<std::vector<double>> cols;
        for (std::size_t i = 0; i < wtd_result_size(r); ++i)
        {
            const char *key = wtd_result_key(r, i);
            if (wtd_result_kind(r, key) != WTD_VALUE_VECTOR)
                continue;
            auto v = vector_of(r, key);
            if (v.size() != rows || rows == 0)
                continue;
            keys.push_back(key);
            cols.push_back(std::move(v));
        }

        std::ostringstream os;
        for (std::size_t c = 0; c < keys.size(); ++c)
            os << (c ? "," : "") << keys[c];
        os << '\n';
        for (std::size_t row = 0; row < rows; ++row)
        {
            for (std::size_t c = 0; c < cols.size(); ++c)
                os << (c ? "," : "") << format_double(cols[c][row]);
            os << '\n';
        }
        return os.str();
    }
}
