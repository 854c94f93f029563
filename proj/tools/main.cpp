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

// wtd command-line front end: decompose | capacity | region | simulate.
// Exit codes: 0 ok, 1 input error, 2 majorization infeasible, 3 simulation band failure.

#include "problem.hpp"
#include "report.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace
{
    using namespace wtd_cli;

    constexpr int exit_ok = 0;
    constexpr int exit_input = 1;
    constexpr int exit_majorization = 2;
    constexpr int exit_band = 3;

    struct Flags
    {
        std::string input;
        std::string kind;
        std::string scheme;
        std::optional<std::string> mode;
        std::optional<std::uint64_t> samples;
        std::optional<std::uint64_t> seed;
        std::optional<double> power;
        std::optional<std::uint64_t> budget;
        std::string csv;
        std::string out;
    };

    // Raised when a library call fails; carries the status for the exit code.
    struct CallError
    {
        wtd_status status;
        std::string message;
        std::size_t index;
    };

    void check(wtd_status s)
    {
        if (s != WTD_OK)
            throw CallError{s, wtd_last_error(), wtd_last_error_index()};
    }

    const wtd_matrix *need(const MatrixPtr &m, const char *field)
    {
        if (!m)
            throw InputError(std::string("field '") + field + "' is required");
        return m.get();
    }

    unsigned thread_cap()
    {
        const char *env = std::getenv("WTD_THREADS");
        if (!env || !*env)
            return 0;
        char *end = nullptr;
        const unsigned long v = std::strtoul(env, &end, 10);
        if (*end != '\0' || v == 0 || v > 4096)
            throw InputError("environment variable WTD_THREADS must be a positive integer");
        return unsigned(v);
    }

    Report header(const std::string &name, const Flags &f, const ProblemFile &p)
    {
        Report r = Report::object();
        r["tool"] = "wtd";
        r["version"] = wtd_version();
        Report cmd = Report::object();
        cmd["name"] = name;
        cmd["input"] = f.input;
        r["command"] = cmd;
        r["input_digest"] = "fnv1a64:" + p.digest;
        return r;
    }

    void emit(const Report &report, const Flags &f, const wtd_result *table)
    {
        const std::string text = report.dump(2) + "\n";
        if (f.out.empty())
            std::cout << text;
        else
        {
            std::ofstream os(f.out, std::ios::binary);
            if (!os || !(os << text))
                throw InputError("cannot write output file '" + f.out + "'");
        }
        if (!f.csv.empty())
        {
            std::ofstream os(f.csv, std::ios::binary);
            if (!os || !(os << to_csv(table)))
                throw InputError("cannot write CSV file '" + f.csv + "'");
        }
    }

    int cmd_decompose(const Flags &f)
    {
        const ProblemFile p = load_problem(f.input);
        const MatrixPtr &a = p.a ? p.a : p.h_b;
        const MatrixPtr &a2 = p.a2 ? p.a2 : p.h_e;
        if (!a)
            throw InputError("field 'a' (or 'h_b') is required");
        if (f.kind == "gsvd" && !a2)
            throw InputError("field 'a2' (or 'h_e') is required for kind gsvd");
        if (f.kind == "gtd" && p.target.empty())
            throw InputError("field 'target' is required for kind gtd");

        wtd_result *raw = nullptr;
        check(wtd_decompose(f.kind.c_str(), a.get(), a2.get(), p.target.data(), p.target.size(), &raw));
        ResultPtr res(raw);

        Report r = header("decompose", f, p);
        r["command"]["kind"] = f.kind;
        r["results"] = to_json(res.get());
        emit(r, f, res.get());
        return exit_ok;
    }

    int cmd_capacity(const Flags &f)
    {
        const ProblemFile p = load_problem(f.input);
        const std::string mode = f.mode.value_or(p.mode.value_or("gsvd"));

        wtd_result *raw = nullptr;
        check(wtd_capacity(need(p.h_b, "h_b"), need(p.h_e, "h_e"), p.kbar.get(), mode.c_str(), &raw));
        ResultPtr res(raw);

        Report r = header("capacity", f, p);
        r["command"]["mode"] = mode;
        r["results"] = to_json(res.get());

        const std::optional<double> power = f.power ? f.power : p.power;
        if (power)
        {
            const std::uint64_t budget = f.budget.value_or(p.budget.value_or(2000));
            const std::uint64_t seed = f.seed.value_or(p.seed.value_or(1));
            wtd_result *praw = nullptr;
            check(wtd_power_capacity(p.h_b.get(), p.h_e.get(), *power, budget, seed, &praw));
            ResultPtr pres(praw);
            r["command"]["power"] = *power;
            r["command"]["budget"] = budget;
            r["command"]["seed"] = seed;
            r["power_search"] = to_json(pres.get());
        }
        emit(r, f, res.get());
        return exit_ok;
    }

    int cmd_region(const Flags &f)
    {
        const ProblemFile p = load_problem(f.input);
        wtd_result *raw = nullptr;
        check(wtd_region(need(p.h_b, "h_b"), need(p.h_e, "h_c"), p.kbar.get(), &raw));
        ResultPtr res(raw);

        Report r = header("region", f, p);
        r["results"] = to_json(res.get());
        emit(r, f, res.get());
        return exit_ok;
    }

    int cmd_simulate(const Flags &f)
    {
        const ProblemFile p = load_problem(f.input);
        const std::string mode = f.mode.value_or(p.mode.value_or("gsvd"));

        wtd_sim_options opt;
        wtd_sim_options_init(&opt);
        opt.samples = f.samples.value_or(p.samples.value_or(opt.samples));
        opt.seed = f.seed.value_or(p.seed.value_or(opt.seed));
        opt.threads = thread_cap();
        opt.genie = p.genie.value_or(true) ? 1 : 0;
        opt.epsilon = p.epsilon.value_or(0.0);
        if (opt.samples == 0)
            throw InputError("field 'samples' must be at least 1");

        wtd_result *raw = nullptr;
        check(wtd_simulate(f.scheme.c_str(), need(p.h_b, "h_b"), p.h_e.get(), p.kbar.get(), mode.c_str(), &opt, &raw));
        ResultPtr res(raw);

        Report r = header("simulate", f, p);
        r["command"]["scheme"] = f.scheme;
        r["command"]["mode"] = mode;
        r["command"]["samples"] = opt.samples;
        r["command"]["seed"] = opt.seed;
        r["results"] = to_json(res.get());
        emit(r, f, res.get());

        double ok = 0.0;
        wtd_result_scalar(res.get(), "bands_ok", &ok);
        if (ok == 0.0)
        {
            std::cerr << "wtd: simulation outside its 3-standard-error band\n";
            return exit_band;
        }
        return exit_ok;
    }
}

int main(int argc, char **argv)
{
    CLI::App app{"MIMO wiretap decompositions, secrecy capacity and layered transceiver planning"};
    app.set_version_flag("--version", std::string(wtd_version()));
    app.require_subcommand(1);

    Flags f;
    auto common = [&](CLI::App *sub)
    {
        sub->add_option("--input", f.input, "Problem file (JSON)")->required();
        sub->add_option("--out", f.out, "Write the report here instead of stdout");
        sub->add_option("--csv", f.csv, "Also write the per-stream table as CSV");
    };

    auto *dec = app.add_subcommand("decompose", "Factor a matrix or a matrix pair");
    common(dec);
    dec->add_option("--kind", f.kind, "qr|ql|svd|gmd|gtd|gsvd")
        ->required()
        ->check(CLI::IsMember({"qr", "ql", "svd", "gmd", "gtd", "gsvd"}));

    auto *cap = app.add_subcommand("capacity", "Secrecy capacity under a covariance constraint");
    common(cap);
    cap->add_option("--mode", f.mode, "Precoder for the per-stream table");
    cap->add_option("--power", f.power, "Also search over total-power constraints");
    cap->add_option("--budget", f.budget, "Candidate evaluations for the power search");
    cap->add_option("--seed", f.seed, "Seed for the power search");

    auto *reg = app.add_subcommand("region", "Confidential broadcast capacity region");
    common(reg);

    auto *sim = app.add_subcommand("simulate", "Monte Carlo check of a layered scheme");
    common(sim);
    sim->add_option("--scheme", f.scheme, "sic|wiretap|dpc|broadcast")
        ->required()
        ->check(CLI::IsMember({"sic", "wiretap", "dpc", "broadcast"}));
    sim->add_option("--mode", f.mode, "gsvd|svd_eve|svd_bob|gmd_bob");
    sim->add_option("--samples", f.samples, "Number of channel uses");
    sim->add_option("--seed", f.seed, "Random seed");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_input;
    }

    try
    {
        if (*dec)
            return cmd_decompose(f);
        if (*cap)
            return cmd_capacity(f);
        if (*reg)
            return cmd_region(f);
        return cmd_simulate(f);
    }
    catch (const InputError &e)
    {
        std::cerr << "wtd: input error: " << e.what() << "\n";
        return exit_input;
    }
    catch (const CallError &e)
    {
        std::cerr << "wtd: " << wtd_status_string(e.status) << ": " << e.message << "\n";
        if (e.status == WTD_ERR_MAJORIZATION)
        {
            std::cerr << "wtd: violating prefix: " << e.index << "\n";
            return exit_majorization;
        }
        return exit_input;
    }
    catch (const std::exception &e)
    {
        std::cerr << "wtd: error: " << e.what() << "\n";
        return exit_input;
    }
}
