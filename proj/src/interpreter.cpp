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

#include <cmath>
#include <span>

#include "sparsim/circuit.hpp"
#include "sparsim/errors.hpp"

namespace sparsim {

namespace {

std::optional<GateKind> gate_kind_of(Opcode op) {
    switch (op) {
        case Opcode::H: return GateKind::H;
        case Opcode::X: return GateKind::X;
        case Opcode::Y: return GateKind::Y;
        case Opcode::Z: return GateKind::Z;
        case Opcode::S: return GateKind::S;
        case Opcode::T: return GateKind::T;
        case Opcode::RX: return GateKind::RX;
        case Opcode::RY: return GateKind::RY;
        case Opcode::RZ: return GateKind::RZ;
        case Opcode::U1: return GateKind::U1;
        case Opcode::U2: return GateKind::U2;
        case Opcode::U3: return GateKind::U3;
        default: return std::nullopt;
    }
}

GateParams params_of(GateKind kind, const std::vector<double>& p) {
    switch (kind) {
        case GateKind::RX:
        case GateKind::RY:
        case GateKind::RZ: return {.theta = p.at(0)};
        case GateKind::U1: return {.lambda = p.at(0)};
        case GateKind::U2: return {.phi = p.at(0), .lambda = p.at(1)};
        case GateKind::U3: return {.theta = p.at(0), .phi = p.at(1), .lambda = p.at(2)};
        default: return {};
    }
}

template <class Engine>
void dispatch(Engine& engine, const Circuit& c, const Instruction& instr) {
    const auto& q = instr.qubits;
    switch (instr.op) {
        case Opcode::H:
            engine.hadamard(q.at(0));
            return;
        case Opcode::CNOT:
            engine.cnot(q.at(0), std::span<const Qubit>(q).subspan(1));
            return;
        case Opcode::CPHASE:
            engine.cphase(std::polar(1.0, instr.params.at(0)), q.at(0), std::span<const Qubit>(q).subspan(1));
            return;
        case Opcode::SWAP:
            engine.swap(q.at(0), q.at(1));
            return;
        case Opcode::QFT:
            engine.qft(q.at(0), q.at(1));
            return;
        case Opcode::APPLY: {
            const GateDefinition* def = c.find_gate(instr.gate_ref);
            if (def == nullptr) {
                throw ParseError(ParseErrc::undefined_gate, instr.line,
                                 "gate '" + instr.gate_ref + "' is not defined");
            }
            engine.apply_gate(def->gate, q.at(0));
            return;
        }
        case Opcode::MEASURE:
            engine.measure(q.at(0));
            return;
        case Opcode::MEASURE_ALL:
            engine.measure_all();
            return;
        default:
            break;
    }
    const auto kind = gate_kind_of(instr.op);
    if (!kind) {
        throw std::logic_error("unhandled opcode");
    }
    engine.apply_gate(standard(*kind, params_of(*kind, instr.params)), q.at(0));
}

void check_norm(double norm_squared, std::size_t line) {
    if (!(std::abs(norm_squared - 1.0) <= kNormTolerance)) {
        throw InvariantError("state norm drifted to " + std::to_string(std::sqrt(norm_squared)) +
                             " after instruction on line " + std::to_string(line));
    }
}

void check_state(const BitwiseEngine& e, std::size_t line) {
    check_norm(e.state().norm_squared(), line);
    if (e.map_size() > 0 && !key_fits(e.map_size() - 1, e.num_qubits())) {
        throw InvariantError("map holds more keys than the register has basis states");
    }
}

void check_state(const DenseEngine& e, std::size_t line) { check_norm(e.state().norm_squared(), line); }

void check_state(const DensityEngine& e, std::size_t line) {
    const auto& rho = e.state();
    if (!(std::abs(rho.trace() - 1.0) <= kNormTolerance) || !(rho.hermiticity_deviation() <= 1e-10)) {
        throw InvariantError("density matrix lost unit trace or Hermiticity after instruction on line " +
                             std::to_string(line));
    }
}

template <class Engine>
RunResult run_on(Engine engine, const Circuit& c, const RunOptions& options) {
    for (const auto& instr : c.instructions) {
        execute(engine, c, instr);
        if (options.check_invariants) {
            check_state(engine, instr.line);
        }
    }
    RunResult result{engine.state(), engine.record(), std::nullopt};
    if (result.record.any_measured()) {
        result.outcome = result.record.to_string();
    }
    return result;
}

}  // namespace

void execute(BitwiseEngine& engine, const Circuit& c, const Instruction& instr) { dispatch(engine, c, instr); }
void execute(DenseEngine& engine, const Circuit& c, const Instruction& instr) { dispatch(engine, c, instr); }
void execute(DensityEngine& engine, const Circuit& c, const Instruction& instr) { dispatch(engine, c, instr); }

RunResult run(const Circuit& c, EngineKind kind, std::uint64_t seed, const RunOptions& options) {
    switch (kind) {
        case EngineKind::bitwise:
            return run_on(BitwiseEngine(c.num_qubits, seed), c, options);
        case EngineKind::dense:
            return run_on(DenseEngine(c.num_qubits, seed, options.capacity), c, options);
        case EngineKind::density:
            return run_on(DensityEngine(c.num_qubits, seed, options.capacity), c, options);
    }
    throw std::logic_error("unknown engine kind");
}

void write_dump(std::ostream& out, const FinalState& state) {
    std::visit([&out](const auto& s) { write_dump(out, s); }, state);
}

}  // namespace sparsim
