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

#include "problem.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <sstream>

namespace wtd_cli
{
    namespace
    {
        using nlohmann::json;

        double number(const json &j, const std::string &field)
        {
            if (!j.is_number())
                throw InputError("field '" + field + "': expected a number");
            const double v = j.get<double>();
            if (!std::isfinite(v))
                throw InputError("field '" + field + "': non-finite number");
            return v;
        }

        std::uint64_t count(const json &j, const std::string &field)
        {
            if (!j.is_number_integer() || (j.is_number_integer() && !j.is_number_unsigned() && j.get<std::int64_t>() < 0))
                throw InputError("field '" + field + "': expected a non-negative integer");
            return j.get<std::uint64_t>();
        }
    }

    std::string fnv1a64_hex(const std::string &bytes)
    {
        std::uint64_t h = 0xcbf29ce484222325ull;
        for (unsigned char c : bytes)
        {
            h ^= c;
            h *= 0x100000001b3ull;
        }
        char buf[17];
        std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
        return buf;
    }

    MatrixPtr parse_matrix(const json &j, const std::string &field)
    {
        std::vector<std::vector<std::pair<double, double>>> rows;
        auto entry = [&](const json &e, std::size_t r, std::size_t c) -> std::pair<double, double>
        {
            const std::string where = field + "[" + std::to_string(r) + "][" + std::to_string(c) + "]";
            if (e.is_number())
                return {number(e, where), 0.0};
            if (e.is_array() && e.size() == 2)
                return {number(e[0], where), number(e[1], where)};
            throw InputError("field '" + where + "': expected a number or an [re, im] pair");
        };

        if (j.is_number())
            rows.push_back({{number(j, field), 0.0}});
        else if (j.is_array() && !j.empty())
        {
            for (std::size_t r = 0; r < j.size(); ++r)
            {
                const json &row = j[r];
                if (!row.is_array() || row.empty())
                    throw InputError("field '" + field + "': row " + std::to_string(r) + " must be a non-empty array");
                rows.emplace_back();
                for (std::size_t c = 0; c < row.size(); ++c)
                    rows.back().push_back(entry(row[c], r, c));
                if (rows.back().size() != rows.front().size())
                    throw InputError("field '" + field + "': row " + std::to_string(r) + " has " +
                                     std::to_string(rows.back().size()) + " entries, expected " +
                                     std::to_string(rows.front().size()));
            }
        }
        else
            throw InputError("field '" + field + "': expected a matrix as an array of rows");

        const std::size_t m = rows.size(), n = rows.front().size();
        std::vector<double> data;
        data.reserve(2 * m * n);
        for (const auto &row : rows)
            for (const auto &[re, im] : row)
            {
                data.push_back(re);
                data.push_back(im);
            }
        wtd_matrix *out = nullptr;
        if (wtd_matrix_new(m, n, data.data(), &out) != WTD_OK)
            throw InputError("field '" + field + "': " + wtd_last_error());
        return MatrixPtr(out);
    }

    ProblemFile load_problem(const std::string &path)
    {
        std::ifstream in(path, std::ios::binary);
        if (!in)
            throw InputError("cannot open input file '" + path + "'");
        const std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

        json j;
        try
        {
            j = json::parse(bytes);
        }
        catch (const json::parse_error &e)
        {
            throw InputError(std::string("input is not valid JSON: ") + e.what());
        }
        if (!j.is_object())
            throw InputError("input must be a JSON object");

        ProblemFile p;
        p.path = path;
        p.digest = fnv1a64_hex(bytes);

        if (j.contains("h_b"))
            p.h_b = parse_matrix(j["h_b"], "h_b");
        if (j.contains("h_e") && j.contains("h_c"))
            throw InputError("field 'h_c': give either h_e or h_c, not both");
        if (j.contains("h_e"))
            p.h_e = parse_matrix(j["h_e"], "h_e");
        else if (j.contains("h_c"))
            p.h_e = parse_matrix(j["h_c"], "h_c");
        if (j.contains("kbar"))
        {
            const json &k = j["kbar"];
            if (k.is_string())
            {
                if (k.get<std::string>() != "identity")
                    throw InputError("field 'kbar': the only keyword accepted is \"identity\"");
            }
            else
                p.kbar = parse_matrix(k, "kbar");
        }
        if (j.contains("a"))
            p.a = parse_matrix(j["a"], "a");
        if (j.contains("a2"))
            p.a2 = parse_matrix(j["a2"], "a2");
        if (j.contains("target"))
        {
            if (!j["target"].is_array())
                throw InputError("field 'target': expected an array of positive numbers");
            for (std::size_t i = 0; i < j["target"].size(); ++i)
                p.target.push_back(number(j["target"][i], "target[" + std::to_string(i) + "]"));
        }
        if (j.contains("power"))
            p.power = number(j["power"], "power");
        if (j.contains("epsilon"))
            p.epsilon = number(j["epsilon"], "epsilon");
        if (j.contains("mode"))
        {
            if (!j["mode"].is_string())
                throw InputError("field 'mode': expected a string");
            p.mode = j["mode"].get<std::string>();
        }
        if (j.contains("genie"))
        {
            if (!j["genie"].is_boolean())
                throw InputError("field 'genie': expected true or false");
            p.genie = j["genie"].get<bool>();
        }
        if (j.contains("samples"))
            p.samples = count(j["samples"], "samples");
        if (j.contains("seed"))
            p.seed = count(j["seed"], "seed");
        if (j.contains("budget"))
            p.budget = count(j["budget"], "budget");
        return p;
    }
}
