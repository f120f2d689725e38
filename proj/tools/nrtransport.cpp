// Copyright 2026 The nrtransport Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// nrtransport run <config|name> | validate <suite> | list-scenarios
//
// Exit status: 0 success, 2 usage or config error, 3 numerical error,
// 4 validation failure.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <thread>

#include <CLI11.hpp>

#include "nrt/errors.hpp"
#include "nrt/scenario.hpp"
#include "nrt/validation.hpp"

namespace {

constexpr int exit_config = 2;
constexpr int exit_numeric = 3;
constexpr int exit_validation = 4;

int run(const std::string& target, const std::filesystem::path& out_dir, const nrt::RunOptions& opt)
{
    const auto path = nrt::resolve_scenario(target);
    const auto cfg = nrt::load_config(path);
    const auto table = nrt::run_scenario(cfg, opt);

    std::filesystem::create_directories(out_dir);
    const auto out_path = out_dir / cfg.output_file;
    std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw nrt::ConfigError("--out-dir", "cannot write " + out_path.string());
    nrt::write_csv(out, table);
    out.close();
    std::cout << out_path.string() << '\n';
    return 0;
}

int validate(const std::string& suite, const nrt::ValidationOptions& opt)
{
    static const std::map<std::string, nrt::Suite> suites{
        {"limits", nrt::Suite::limits},
        {"oracles", nrt::Suite::oracles},
        {"symmetry", nrt::Suite::symmetry},
        {"all", nrt::Suite::all},
    };
    const auto report = nrt::run_validation(suites.at(suite), opt);
    nrt::write_report(std::cout, report);
    return report.passed() ? 0 : exit_validation;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Photon-mediated transport between emitters above a drift-biased plasmonic interface"};
    app.require_subcommand(1);
    app.fallthrough();

    unsigned threads = std::max(1u, std::thread::hardware_concurrency());
    std::optional<double> tolerance;
    std::string out_dir = ".";
    app.add_option("--threads", threads, "Worker threads for sweeps")->check(CLI::Range(1u, 1024u));
    app.add_option("--tolerance", tolerance, "Relative tolerance of the Green's function quadrature")
        ->check(CLI::Range(1e-12, 1e-2));

    auto* run_cmd = app.add_subcommand("run", "Run a scenario and write its CSV output");
    std::string target;
    run_cmd->add_option("config", target, "Config file or bundled scenario name")->required();
    run_cmd->add_option("--out-dir", out_dir, "Directory for the CSV output");

    auto* val_cmd = app.add_subcommand("validate", "Run a validation suite");
    std::string suite;
    int points = 60;
    val_cmd->add_option("suite", suite, "limits | oracles | symmetry | all")
        ->required()
        ->check(CLI::IsMember({"limits", "oracles", "symmetry", "all"}));
    val_cmd->add_option("--points", points, "Grid size of the distance sweeps")->check(CLI::Range(2, 10000));

    auto* list_cmd = app.add_subcommand("list-scenarios", "List the bundled scenarios");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_config;
    }

    try {
        if (*run_cmd) {
            nrt::RunOptions opt;
            opt.threads = threads;
            opt.tolerance = tolerance;
            return run(target, out_dir, opt);
        }
        if (*val_cmd) {
            nrt::ValidationOptions opt;
            opt.threads = threads;
            opt.points = points;
            if (tolerance)
                opt.quadrature_rel_tol = *tolerance;
            return validate(suite, opt);
        }
        if (*list_cmd) {
            for (const auto& s : nrt::bundled_scenarios())
                std::cout << s.name << '\t' << s.description << '\n';
            return 0;
        }
    } catch (const nrt::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return exit_config;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return exit_config;
    } catch (const std::exception& e) {
        std::cerr << "numerical error in " << (*run_cmd ? "run " + target : "validate " + suite) << ": " << e.what()
                  << '\n';
        return exit_numeric;
    }
    return 0;
}
