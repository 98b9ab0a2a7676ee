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
#include <random>
#include <sstream>

#include "doctest.h"
#include "golden.hpp"
#include "helpers.hpp"
#include "sparsim/circuit.hpp"
#include "sparsim/errors.hpp"

using namespace sparsim;

namespace {

Instruction ins(Opcode op, std::vector<Qubit> q, std::vector<double> p = {}, std::string ref = {}) {
    return Instruction{.op = op, .qubits = std::move(q), .params = std::move(p), .gate_ref = std::move(ref)};
}

ParseError parse_error(std::string_view text) {
    try {
        parse(text);
    } catch (const ParseError& e) {
        return e;
    }
    FAIL("expected a parse error");
    throw std::logic_error("unreachable");
}

const std::filesystem::path kGolden = SPARSIM_TEST_DATA_DIR;

}  // namespace

TEST_CASE("parse basic programs") {
    const Circuit ghz = parse("qubits 2\nh 0\ncnot 1 0\n");
    CHECK(ghz.num_qubits == 2);
    CHECK(ghz.instructions == std::vector<Instruction>{ins(Opcode::H, {0}), ins(Opcode::CNOT, {1, 0})});
    CHECK(ghz.instructions[1].line == 3);

    const Circuit rz = parse("qubits 1\nrz 1.5707963 0\n");
    REQUIRE(rz.instructions.size() == 1);
    CHECK(rz.instructions[0] == ins(Opcode::RZ, {0}, {1.5707963}));

    const ParseError e = parse_error("qubits 2\nh 5\n");
    CHECK(e.code() == ParseErrc::qubit_out_of_range);
    CHECK(e.line() == 2);
    CHECK(std::string(e.what()) == "line 2: qubit 5 out of range");
}

TEST_CASE("parse gate definitions") {
    const Circuit c = parse(testing_support::read_text(kGolden / "parser/valid/user_permutation.qc"));
    REQUIRE(c.gate_defs.size() == 1);
    CHECK(c.gate_defs[0].name == "cyc");
    CHECK(c.gate_defs[0].arity == 2);
    CHECK(c.gate_defs[0].entries.size() == 4);
    CHECK(c.find_gate("cyc") != nullptr);
    CHECK(c.find_gate("nope") == nullptr);
    CHECK(c.instructions == std::vector<Instruction>{ins(Opcode::APPLY, {0}, {}, "cyc"),
                                                     ins(Opcode::APPLY, {1}, {}, "cyc")});

    CHECK(parse_error("qubits 1\ngate g 2\n0 0 1 0\nendgate\n").code() == ParseErrc::invalid_gate_definition);
    CHECK(parse_error("qubits 2\ngate g 1\nendgate\n").code() == ParseErrc::invalid_gate_definition);
    CHECK(parse_error("qubits 2\ngate g 1\ngate h 1\n").code() == ParseErrc::invalid_gate_definition);
    CHECK(parse_error("qubits 2\nendgate\n").code() == ParseErrc::invalid_gate_definition);
    CHECK(parse_error("qubits 2\ngate g 1\n0 2 1 0\nendgate\n").code() == ParseErrc::invalid_gate_definition);
    CHECK(parse_error("qubits 2\ngate g 1\n0 1 1\nendgate\n").code() == ParseErrc::arity_mismatch);
    CHECK(parse_error("qubits 2\ngate g 1\n0 1 1 0\n1 0 1 0\nendgate\napply g 2\n").code() ==
          ParseErrc::qubit_out_of_range);
}

TEST_CASE("parse error codes") {
    CHECK(parse_error("").code() == ParseErrc::missing_header);
    CHECK(parse_error("qubits\n").code() == ParseErrc::arity_mismatch);
    CHECK(parse_error("qubits two\n").code() == ParseErrc::malformed_number);
    CHECK(parse_error("qubits 3\nqubits 3\n").code() == ParseErrc::invalid_operands);
    CHECK(parse_error("qubits 2\ncnot 0\n").code() == ParseErrc::arity_mismatch);
    CHECK(parse_error("qubits 3\ncnot 0 1 1\n").code() == ParseErrc::invalid_operands);
    CHECK(parse_error("qubits 1\nu3 1 2 0\n").code() == ParseErrc::arity_mismatch);
    CHECK(parse_error("qubits 1\nrx nan 0\n").code() == ParseErrc::malformed_number);
    CHECK(parse_error("qubits 1\nrx inf 0\n").code() == ParseErrc::malformed_number);
    CHECK(parse_error("qubits 1\nh -1\n").code() == ParseErrc::malformed_number);
    CHECK(parse_error("qubits 1\nmeasure_all 0\n").code() == ParseErrc::arity_mismatch);
    CHECK(parse_error("qubits 2\nswap 0 2\n").code() == ParseErrc::qubit_out_of_range);

    for (ParseErrc code : {ParseErrc::missing_header, ParseErrc::invalid_register_size, ParseErrc::unknown_opcode,
                           ParseErrc::arity_mismatch, ParseErrc::qubit_out_of_range, ParseErrc::malformed_number,
                           ParseErrc::duplicate_gate, ParseErrc::undefined_gate, ParseErrc::invalid_gate_definition,
                           ParseErrc::invalid_operands}) {
        CHECK(parse_errc_from_name(parse_errc_name(code)) == code);
    }
    CHECK_FALSE(parse_errc_from_name("bogus").has_value());
}

TEST_CASE("golden parser programs") {
    const auto valid = testing_support::qc_files(kGolden / "parser/valid");
    const auto invalid = testing_support::qc_files(kGolden / "parser/invalid");
    CHECK(valid.size() >= 10);
    CHECK(invalid.size() >= 8);
    for (const auto& p : valid) {
        const auto r = testing_support::check_valid(p);
        INFO(r.file << ": " << r.detail);
        CHECK(r.ok);
    }
    for (const auto& p : invalid) {
        const auto r = testing_support::check_invalid(p);
        INFO(r.file << ": " << r.detail);
        CHECK(r.ok);
    }
}

TEST_CASE("to_text round-trips random circuits") {
    std::mt19937_64 gen(77);
    for (int trial = 0; trial < 50; ++trial) {
        const Circuit c = testing_support::random_circuit(1 + trial % 8, 30, gen);
        CHECK(parse(to_text(c)) == c);
    }
}

TEST_CASE("validate applies the parser's rules") {
    Circuit c;
    c.num_qubits = 2;
    c.instructions = {ins(Opcode::H, {0})};
    CHECK_NOTHROW(validate(c));
    c.instructions.push_back(ins(Opcode::H, {2}));
    CHECK_THROWS_AS(validate(c), ParseError);
    c.instructions.back() = ins(Opcode::APPLY, {0}, {}, "missing");
    CHECK_THROWS_AS(validate(c), ParseError);
    c.num_qubits = 0;
    CHECK_THROWS_AS(validate(c), ParseError);
}

TEST_CASE("emit_builtin") {
    const Circuit ghz = emit_builtin(BuiltinFamily::ghz, 3);
    CHECK(ghz.num_qubits == 3);
    CHECK(ghz.instructions ==
          std::vector<Instruction>{ins(Opcode::H, {0}), ins(Opcode::CNOT, {1, 0}), ins(Opcode::CNOT, {2, 0})});

    const Circuit one = emit_builtin(BuiltinFamily::superpos, 1);
    CHECK(one.instructions == std::vector<Instruction>{ins(Opcode::H, {0})});

    const Circuit ent = emit_builtin(BuiltinFamily::entangled_registers, 2);
    CHECK(ent.num_qubits == 4);
    CHECK(ent.instructions == std::vector<Instruction>{ins(Opcode::H, {0}), ins(Opcode::H, {1}),
                                                       ins(Opcode::CNOT, {2, 0}), ins(Opcode::CNOT, {3, 1})});

    const Circuit sm = emit_builtin(BuiltinFamily::superpos_measure, 2);
    CHECK(sm.instructions.back() == ins(Opcode::MEASURE_ALL, {}));

    CHECK_THROWS_AS(emit_builtin(BuiltinFamily::ghz, 0), std::invalid_argument);
    CHECK_THROWS_AS(emit_builtin(BuiltinFamily::ghz, 65), std::invalid_argument);
    CHECK_THROWS_AS(emit_builtin(BuiltinFamily::entangled_registers, 33), std::invalid_argument);
    CHECK(parse_builtin_family("entangled_registers") == BuiltinFamily::entangled_registers);
    CHECK(builtin_family_name(BuiltinFamily::superpos_measure) == "superpos_measure");
}

TEST_CASE("run") {
    const Circuit ghz = parse(testing_support::read_text(kGolden / "parser/valid/ghz3.qc"));
    const RunResult r = run(ghz, EngineKind::bitwise, 1);
    const auto& s = std::get<SparseState>(r.state);
    CHECK(s.size() == 2);
    CHECK_FALSE(r.outcome.has_value());
    CHECK(r.record.to_string() == "---");

    const RunResult d = run(ghz, EngineKind::dense, 1);
    CHECK(fidelity_check(s, std::get<DenseState>(d.state)) < 1e-15);

    const Circuit measured = parse(testing_support::read_text(kGolden / "ghz3.qc"));
    auto dump = [&](EngineKind kind, std::uint64_t seed) {
        std::ostringstream out;
        const RunResult res = run(measured, kind, seed);
        write_dump(out, res.state);
        return std::make_pair(out.str(), res.outcome.value());
    };
    CHECK(dump(EngineKind::bitwise, 9) == dump(EngineKind::bitwise, 9));
    for (EngineKind kind : {EngineKind::bitwise, EngineKind::dense, EngineKind::density}) {
        const auto [text, outcome] = dump(kind, 12);
        CHECK((outcome == "000" || outcome == "111"));
    }

    CHECK_THROWS_AS(run(emit_builtin(BuiltinFamily::superpos, 25), EngineKind::dense, 1), CapacityError);
    CHECK_THROWS_AS(run(emit_builtin(BuiltinFamily::superpos, 13), EngineKind::density, 1), CapacityError);
}

TEST_CASE("engines agree on every family") {
    for (BuiltinFamily f : {BuiltinFamily::ghz, BuiltinFamily::superpos, BuiltinFamily::entangled_registers}) {
        for (unsigned n = 1; n <= 5; ++n) {
            const Circuit c = emit_builtin(f, n);
            const auto b = run(c, EngineKind::bitwise, 3);
            const auto d = run(c, EngineKind::dense, 3);
            CHECK(fidelity_check(std::get<SparseState>(b.state), std::get<DenseState>(d.state)) < 1e-12);
        }
    }
}

TEST_CASE("invariant checks catch a broken gate") {
    // Arity above the unitarity-check limit skips verification, so a
    // norm-losing gate gets through construction and must be caught at run
    // time.
    const unsigned w = kUnitarityCheckMaxArity + 1;
    Circuit c;
    c.num_qubits = w;
    c.gate_defs.push_back(GateDefinition::make("leak", w, {GateEntry{0, 0, 0.5}}));
    c.instructions = {ins(Opcode::APPLY, {0}, {}, "leak")};
    RunOptions checked;
    checked.check_invariants = true;
    CHECK_THROWS_AS(run(c, EngineKind::bitwise, 1, checked), InvariantError);
    RunOptions unchecked;
    unchecked.check_invariants = false;
    CHECK_NOTHROW(run(c, EngineKind::bitwise, 1, unchecked));
}
