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


#pragma once

#include <cstdint>
#include <ostream>
#include <string>

#include "sparsim/circuit.hpp"

/// Command implementations behind the `sparsim` executable. Each returns the
/// process exit code and writes only to the given streams.
namespace sparsim::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 1;      ///< parse error, missing file, bad arguments
inline constexpr int kExitCapacity = 2;   ///< register does not fit the engine
inline constexpr int kExitInternal = 3;   ///< invariant violation

struct RunCommand {
    std::string file;
    EngineKind engine = EngineKind::bitwise;
    /// 0 draws a seed from the OS; otherwise shot k uses seed + k.
    std::uint64_t seed = 0;
    /// 0: execute once and print only the final state.
    unsigned shots = 1;
    bool dump_state = false;
};

struct BenchCommand {
    std::string scenario;
    std::string sizes;
    std::string engines = "bitwise";
    unsigned repeats = 5;
    std::uint64_t seed = 1;
};

int cmd_run(const RunCommand& cmd, std::ostream& out, std::ostream& err);
int cmd_bench(const BenchCommand& cmd, std::ostream& out, std::ostream& err);
int cmd_fit(const std::string& csv_path, std::ostream& out, std::ostream& err);

}  // namespace sparsim::cli
