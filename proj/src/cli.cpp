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


#include "sparsim/cli.hpp"

#include <fstream>
#include <sstream>

#include "sparsim/bench.hpp"
#include "sparsim/errors.hpp"

namespace sparsim::cli {

namespace {

std::optional<std::string> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        return std::nullopt;
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Maps library exceptions onto exit codes. Anything unexpected counts as
// an internal failure.
template <class Fn>
int guarded(std::ostream& err, Fn&& fn) {
    try {
        return fn();
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const CapacityError& e) {
        err << "error: " << e.what() << '\n';
        return kExitCapacity;
    } catch (const InvariantError& e) {
        err << "internal error: " << e.what() << '\n';
        return kExitInternal;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return kExitInternal;
    }
}

}  // namespace

int cmd_run(const RunCommand& cmd, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const auto text = read_file(cmd.file);
        if (!text) {
            err << "error: cannot read '" << cmd.file << "'\n";
            return kExitInput;
        }
        const Circuit circuit = parse(*text);
        RunOptions options;
        options.capacity = DenseCapacity::from_env();
        options.check_invariants = true;

        if (cmd.shots == 0) {
            write_dump(out, run(circuit, cmd.engine, cmd.seed, options).state);
            return kExitOk;
        }
        std::optional<RunResult> last;
        for (unsigned shot = 0; shot < cmd.shots; ++shot) {
            const std::uint64_t seed = cmd.seed == 0 ? 0 : cmd.seed + shot;
            last = run(circuit, cmd.engine, seed, options);
            out << last->record.to_string() << '\n';
        }
        if (cmd.dump_state) {
            write_dump(out, last->state);
        }
        return kExitOk;
    });
}

int cmd_bench(const BenchCommand& cmd, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        BenchConfig config;
        const auto family = parse_builtin_family(cmd.scenario);
        if (!family) {
            err << "error: unknown scenario '" << cmd.scenario
                << "' (expected ghz, superpos, entangled_registers or superpos_measure)\n";
            return kExitInput;
        }
        config.scenario = *family;
        config.sizes = parse_n_range(cmd.sizes);
        config.engines = parse_engine_list(cmd.engines);
        config.repeats = cmd.repeats;
        config.seed = cmd.seed;
        config.capacity = DenseCapacity::from_env();

        out << kCsvHeader << '\n';
        run_bench(config, [&out](const BenchRecord& r) { out << format_csv_row(r) << '\n' << std::flush; });
        return kExitOk;
    });
}

int cmd_fit(const std::string& csv_path, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        std::ifstream in(csv_path);
        if (!in) {
            err << "error: cannot read '" << csv_path << "'\n";
            return kExitInput;
        }
        const auto records = read_csv(in);
        const auto reports = fit_scaling(records);
        write_fit_report(out, reports);
        int code = kExitOk;
        for (const auto& r : reports) {
            if (!r.fit) {
                err << "error: " << r.scenario << '/' << engine_kind_name(r.engine) << ": " << r.error << '\n';
                code = kExitInput;
            }
        }
        return code;
    });
}

}  // namespace sparsim::cli
