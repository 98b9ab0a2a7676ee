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

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "sparsim/engine_bitwise.hpp"
#include "sparsim/engine_dense.hpp"
#include "sparsim/gatelib.hpp"
#include "sparsim/state.hpp"

/// Line-oriented circuit text format.
///
///     # comment
///     qubits 3
///     h 0
///     cnot 1 0          # target first, then one or more controls
///     cphase 0.785 2 0  # angle theta (phase e^{i theta}), target, controls
///     rz 1.5707963 1
///     gate perm 2       # user gate: <row> <col> <re> <im> lines, then endgate
///     0 0 1 0
///     1 1 1 0
///     2 3 1 0
///     3 2 1 0
///     endgate
///     apply perm 1
///     qft 0 2
///     measure 0
///     measure_all
///
/// Keywords are case-insensitive. Angles are radians. Gates must be defined
/// before their first `apply`.
namespace sparsim {

enum class Opcode {
    H, X, Y, Z, S, T, RX, RY, RZ, U1, U2, U3,
    CNOT, CPHASE, SWAP, QFT, APPLY, MEASURE, MEASURE_ALL,
};

std::string_view opcode_name(Opcode op);

/// Operand layout by opcode:
///   single-qubit gates: qubits = {q}, params = angles in the order written
///   CNOT:    qubits = {target, controls...}
///   CPHASE:  qubits = {target, controls...}, params = {theta}
///   SWAP:    qubits = {a, b}
///   QFT:     qubits = {first, last}
///   APPLY:   qubits = {q}, gate_ref = name
///   MEASURE: qubits = {q}
struct Instruction {
    Opcode op;
    std::vector<Qubit> qubits;
    std::vector<double> params;
    std::string gate_ref;
    std::size_t line = 0;  ///< source line, 0 when built in code

    friend bool operator==(const Instruction& a, const Instruction& b) {
        return a.op == b.op && a.qubits == b.qubits && a.params == b.params && a.gate_ref == b.gate_ref;
    }
};

/// One `<row> <col> <re> <im>` line of a gate definition.
struct GateEntry {
    BasisKey row;
    BasisKey col;
    Amplitude value;

    friend bool operator==(const GateEntry&, const GateEntry&) = default;
};

struct GateDefinition {
    std::string name;
    unsigned arity;
    std::vector<GateEntry> entries;
    SparseGate gate;

    /// Builds the SparseGate from the entries; throws GateError.
    static GateDefinition make(std::string name, unsigned arity, std::vector<GateEntry> entries);

    friend bool operator==(const GateDefinition& a, const GateDefinition& b) {
        return a.name == b.name && a.arity == b.arity && a.entries == b.entries;
    }
};

struct Circuit {
    unsigned num_qubits = 0;
    std::vector<Instruction> instructions;
    /// In definition order.
    std::vector<GateDefinition> gate_defs;

    const GateDefinition* find_gate(std::string_view name) const;

    friend bool operator==(const Circuit&, const Circuit&) = default;
};

enum class ParseErrc {
    missing_header,
    invalid_register_size,
    unknown_opcode,
    arity_mismatch,
    qubit_out_of_range,
    malformed_number,
    duplicate_gate,
    undefined_gate,
    invalid_gate_definition,
    invalid_operands,
};

/// Snake-case name of the code, e.g. "qubit_out_of_range".
std::string_view parse_errc_name(ParseErrc code);
std::optional<ParseErrc> parse_errc_from_name(std::string_view name);

/// what() reads "line <n>: <message>".
class ParseError : public std::runtime_error {
  public:
    ParseError(ParseErrc code, std::size_t line, const std::string& message);

    ParseErrc code() const noexcept { return code_; }
    std::size_t line() const noexcept { return line_; }
    const std::string& message() const noexcept { return message_; }

  private:
    ParseErrc code_;
    std::size_t line_;
    std::string message_;
};

Circuit parse(std::string_view text);
/// Canonical text: header, gate definitions, then instructions. Floats are
/// printed with 17 significant digits so parse(to_text(c)) == c.
std::string to_text(const Circuit& c);

/// Checks a programmatically built circuit against the same rules the
/// parser enforces. Throws ParseError (line taken from the instruction).
void validate(const Circuit& c);

enum class BuiltinFamily { ghz, superpos, entangled_registers, superpos_measure };

std::optional<BuiltinFamily> parse_builtin_family(std::string_view name);
std::string_view builtin_family_name(BuiltinFamily family);

/// ghz:                 H 0, then CNOT i <- 0 for i in 1..n-1
/// superpos:            H on every qubit
/// entangled_registers: 2n qubits; H on 0..n-1, then CNOT n+i <- i
/// superpos_measure:    superpos followed by MEASURE_ALL
Circuit emit_builtin(BuiltinFamily family, unsigned n);

enum class EngineKind { bitwise, dense, density };

std::optional<EngineKind> parse_engine_kind(std::string_view name);
std::string_view engine_kind_name(EngineKind kind);

struct RunOptions {
    DenseCapacity capacity{};
#ifdef NDEBUG
    bool check_invariants = false;
#else
    bool check_invariants = true;
#endif
};

using FinalState = std::variant<SparseState, DenseState, DensityMatrix>;

struct RunResult {
    FinalState state;
    MeasurementRecord record;
    /// The record rendered as a string, when anything was measured.
    std::optional<std::string> outcome;
};

/// Executes every instruction in order on a fresh engine. Throws
/// CapacityError when the engine cannot hold the register, and
/// InvariantError when check_invariants finds a broken norm or trace.
RunResult run(const Circuit& c, EngineKind kind, std::uint64_t seed, const RunOptions& options = {});

/// Executes one instruction; for callers that drive an engine themselves.
void execute(BitwiseEngine& engine, const Circuit& c, const Instruction& instr);
void execute(DenseEngine& engine, const Circuit& c, const Instruction& instr);
void execute(DensityEngine& engine, const Circuit& c, const Instruction& instr);

void write_dump(std::ostream& out, const FinalState& state);

}  // namespace sparsim
