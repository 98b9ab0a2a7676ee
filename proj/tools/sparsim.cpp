// Copyright 2026 The sparsim Authors
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


#include <iostream>
#include <map>

#include "CLI11.hpp"
#include "sparsim/cli.hpp"
#include "sparsim/version.hpp"

int main(int argc, char** argv) {
    using namespace sparsim;

    CLI::App app{"sparsim: sparse and dense quantum circuit simulator"};
    app.set_version_flag("--version", std::string(version()));
    app.require_subcommand(1);

    const std::map<std::string, EngineKind> engines{
        {"bitwise", EngineKind::bitwise}, {"dense", EngineKind::dense}, {"density", EngineKind::density}};

    cli::RunCommand run_cmd;
    auto* run = app.add_subcommand("run", "Execute a circuit file");
    run->add_option("file", run_cmd.file, "Circuit file")->required();
    run->add_option("--engine", run_cmd.engine, "bitwise, dense or density")
        ->transform(CLI::CheckedTransformer(engines, CLI::ignore_case));
    run->add_option("--seed", run_cmd.seed, "PRNG seed; 0 seeds from the OS");
    run->add_option("--shots", run_cmd.shots, "Number of executions; 0 prints the final state only");
    run->add_flag("--dump-state", run_cmd.dump_state, "Print the final state of the last shot");

    cli::BenchCommand bench_cmd;
    auto* bench = app.add_subcommand("bench", "Time a builtin circuit family and print CSV");
    bench->add_option("scenario", bench_cmd.scenario, "ghz, superpos, entangled_registers or superpos_measure")
        ->required();
    bench->add_option("--n", bench_cmd.sizes, "Sizes, e.g. 2..20 or 8,16,32")->required();
    bench->add_option("--engines", bench_cmd.engines, "Comma-separated engine list");
    bench->add_option("--repeats", bench_cmd.repeats, "Repeats per cell");
    bench->add_option("--seed", bench_cmd.seed, "PRNG seed");

    std::string fit_path;
    auto* fit = app.add_subcommand("fit", "Classify the scaling of benchmark CSV series");
    fit->add_option("csv", fit_path, "CSV written by bench")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : cli::kExitInput;
    }

    if (*run) {
        return cli::cmd_run(run_cmd, std::cout, std::cerr);
    }
    if (*bench) {
        return cli::cmd_bench(bench_cmd, std::cout, std::cerr);
    }
    return cli::cmd_fit(fit_path, std::cout, std::cerr);
}
