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

#include "sparsim/circuit.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace sparsim {

namespace {

struct OpcodeInfo {
    std::string_view keyword;
    Opcode op;
    unsigned params;
    unsigned min_qubits;
    bool variadic;  // true: min_qubits or more
};

constexpr std::array<OpcodeInfo, 19> kOpcodes = {{
    {"h", Opcode::H, 0, 1, false},
    {"x", Opcode::X, 0, 1, false},
    {"y", Opcode::Y, 0, 1, false},
    {"z", Opcode::Z, 0, 1, false},
    {"s", Opcode::S, 0, 1, false},
    {"t", Opcode::T, 0, 1, false},
    {"rx", Opcode::RX, 1, 1, false},
    {"ry", Opcode::RY, 1, 1, false},
    {"rz", Opcode::RZ, 1, 1, false},
    {"u1", Opcode::U1, 1, 1, false},
    {"u2", Opcode::U2, 2, 1, false},
    {"u3", Opcode::U3, 3, 1, false},
    {"cnot", Opcode::CNOT, 0, 2, true},
    {"cphase", Opcode::CPHASE, 1, 2, true},
    {"swap", Opcode::SWAP, 0, 2, false},
    {"qft", Opcode::QFT, 0, 2, false},
    {"apply", Opcode::APPLY, 0, 1, false},
    {"measure", Opcode::MEASURE, 0, 1, false},
    {"measure_all", Opcode::MEASURE_ALL, 0, 0, false},
}};

const OpcodeInfo& info_of(Opcode op) {
    for (const auto& info : kOpcodes) {
        if (info.op == op) {
            return info;
        }
    }
    throw std::logic_error("opcode missing from table");
}

const OpcodeInfo* find_opcode(std::string_view keyword) {
    for (const auto& info : kOpcodes) {
        if (info.keyword == keyword) {
            return &info;
        }
    }
    return nullptr;
}

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
    return out;
}

bool is_identifier(std::string_view s) {
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) {
        return false;
    }
    return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isalnum(c) || c == '_'; });
}

std::vector<std::string_view> tokenize(std::string_view line) {
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
        line = line.substr(0, hash);
    }
    std::vector<std::string_view> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) {
            ++i;
        }
        const std::size_t start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) {
            ++i;
        }
        if (i > start) {
            tokens.push_back(line.substr(start, i - start));
        }
    }
    return tokens;
}

std::uint64_t parse_int(std::string_view tok, std::size_t line) {
    std::uint64_t value = 0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
        throw ParseError(ParseErrc::malformed_number, line, "malformed integer '" + std::string(tok) + "'");
    }
    return value;
}

double parse_float(std::string_view tok, std::size_t line) {
    double value = 0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc{} || ptr != tok.data() + tok.size() || !std::isfinite(value)) {
        throw ParseError(ParseErrc::malformed_number, line, "malformed number '" + std::string(tok) + "'");
    }
    return value;
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void check_qubit(std::uint64_t q, unsigned n, std::size_t line) {
    if (q >= n) {
        throw ParseError(ParseErrc::qubit_out_of_range, line, "qubit " + std::to_string(q) + " out of range");
    }
}

// Shared by the parser and validate(): register bounds and operand rules.
void check_instruction(const Circuit& c, const Instruction& instr, std::size_t line) {
    const OpcodeInfo& info = info_of(instr.op);
    const bool count_ok = info.variadic ? instr.qubits.size() >= info.min_qubits
                                        : instr.qubits.size() == info.min_qubits;
    if (!count_ok || instr.params.size() != info.params) {
        throw ParseError(ParseErrc::arity_mismatch, line,
                         "wrong number of operands for " + std::string(info.keyword));
    }
    for (double p : instr.params) {
        if (!std::isfinite(p)) {
            throw ParseError(ParseErrc::malformed_number, line, "angle is not finite");
        }
    }
    for (Qubit q : instr.qubits) {
        check_qubit(q, c.num_qubits, line);
    }
    switch (instr.op) {
        case Opcode::CNOT:
        case Opcode::CPHASE:
            for (std::size_t i = 0; i < instr.qubits.size(); ++i) {
                for (std::size_t j = 0; j < i; ++j) {
                    if (instr.qubits[i] == instr.qubits[j]) {
                        throw ParseError(ParseErrc::invalid_operands, line,
                                         "qubit " + std::to_string(instr.qubits[i]) + " repeated in " +
                                             std::string(info.keyword));
                    }
                }
            }
            break;
        case Opcode::QFT:
            if (instr.qubits[0] > instr.qubits[1]) {
                throw ParseError(ParseErrc::invalid_operands, line, "qft range is reversed");
            }
            break;
        case Opcode::APPLY: {
            const GateDefinition* def = c.find_gate(instr.gate_ref);
            if (def == nullptr) {
                throw ParseError(ParseErrc::undefined_gate, line, "gate '" + instr.gate_ref + "' is not defined");
            }
            if (instr.qubits[0] + def->arity > c.num_qubits) {
                throw ParseError(ParseErrc::qubit_out_of_range, line,
                                 "gate '" + instr.gate_ref + "' at qubit " + std::to_string(instr.qubits[0]) +
                                     " exceeds the register");
            }
            break;
        }
        default:
            break;
    }
}

class Parser {
  public:
    explicit Parser(std::string_view text) : text_(text) {}

    Circuit parse() {
        std::size_t line_no = 0;
        std::size_t pos = 0;
        while (pos <= text_.size()) {
            const std::size_t end = std::min(text_.find('\n', pos), text_.size());
            ++line_no;
            handle_line(tokenize(text_.substr(pos, end - pos)), line_no);
            pos = end + 1;
        }
        if (open_gate_) {
            throw ParseError(ParseErrc::invalid_gate_definition, open_gate_line_,
                             "gate '" + open_gate_name_ + "' is missing endgate");
        }
        if (!have_header_) {
            throw ParseError(ParseErrc::missing_header, 1, "missing 'qubits' header");
        }
        return std::move(circuit_);
    }

  private:
    void handle_line(const std::vector<std::string_view>& tok, std::size_t line) {
        if (tok.empty()) {
            return;
        }
        const std::string head = lower(tok[0]);
        if (!have_header_) {
            if (head != "qubits") {
                throw ParseError(ParseErrc::missing_header, line, "expected 'qubits <n>' header");
            }
            header(tok, line);
            return;
        }
        if (open_gate_) {
            gate_body(tok, head, line);
            return;
        }
        if (head == "qubits") {
            throw ParseError(ParseErrc::invalid_operands, line, "register size already declared");
        }
        if (head == "gate") {
            gate_header(tok, line);
            return;
        }
        if (head == "endgate") {
            throw ParseError(ParseErrc::invalid_gate_definition, line, "endgate without gate");
        }
        const OpcodeInfo* info = find_opcode(head);
        if (info == nullptr) {
            throw ParseError(ParseErrc::unknown_opcode, line, "unknown opcode '" + std::string(tok[0]) + "'");
        }
        instruction(*info, tok, line);
    }

    void header(const std::vector<std::string_view>& tok, std::size_t line) {
        if (tok.size() != 2) {
            throw ParseError(ParseErrc::arity_mismatch, line, "expected 'qubits <n>'");
        }
        const std::uint64_t n = parse_int(tok[1], line);
        if (n == 0 || n > kMaxQubits) {
            throw ParseError(ParseErrc::invalid_register_size, line,
                             "register size " + std::to_string(n) + " outside [1, 64]");
        }
        circuit_.num_qubits = static_cast<unsigned>(n);
        have_header_ = true;
    }

    void instruction(const OpcodeInfo& info, const std::vector<std::string_view>& tok, std::size_t line) {
        Instruction instr{.op = info.op, .qubits = {}, .params = {}, .gate_ref = {}, .line = line};
        std::size_t next = 1;
        if (info.op == Opcode::APPLY) {
            if (tok.size() != 3) {
                throw ParseError(ParseErrc::arity_mismatch, line, "expected 'apply <gate> <qubit>'");
            }
            instr.gate_ref = std::string(tok[1]);
            next = 2;
        } else {
            const std::size_t operands = tok.size() - 1;
            const std::size_t needed = info.params + info.min_qubits;
            if (info.variadic ? operands < needed : operands != needed) {
                throw ParseError(ParseErrc::arity_mismatch, line,
                                 "wrong number of operands for " + std::string(info.keyword));
            }
            for (unsigned i = 0; i < info.params; ++i) {
                instr.params.push_back(parse_float(tok[next++], line));
            }
        }
        for (; next < tok.size(); ++next) {
            const std::uint64_t q = parse_int(tok[next], line);
            check_qubit(q, circuit_.num_qubits, line);
            instr.qubits.push_back(static_cast<Qubit>(q));
        }
        check_instruction(circuit_, instr, line);
        circuit_.instructions.push_back(std::move(instr));
    }

    void gate_header(const std::vector<std::string_view>& tok, std::size_t line) {
        if (tok.size() != 3) {
            throw ParseError(ParseErrc::arity_mismatch, line, "expected 'gate <name> <arity>'");
        }
        if (!is_identifier(tok[1])) {
            throw ParseError(ParseErrc::invalid_gate_definition, line,
                             "invalid gate name '" + std::string(tok[1]) + "'");
        }
        const std::uint64_t arity = parse_int(tok[2], line);
        if (arity == 0 || arity > circuit_.num_qubits) {
            throw ParseError(ParseErrc::invalid_gate_definition, line,
                             "gate arity " + std::to_string(arity) + " outside [1, " +
                                 std::to_string(circuit_.num_qubits) + "]");
        }
        if (circuit_.find_gate(tok[1]) != nullptr) {
            throw ParseError(ParseErrc::duplicate_gate, line, "gate '" + std::string(tok[1]) + "' already defined");
        }
        open_gate_ = true;
        open_gate_line_ = line;
        open_gate_name_ = std::string(tok[1]);
        open_gate_arity_ = static_cast<unsigned>(arity);
        open_gate_entries_.clear();
    }

    void gate_body(const std::vector<std::string_view>& tok, const std::string& head, std::size_t line) {
        if (head == "endgate") {
            if (tok.size() != 1) {
                throw ParseError(ParseErrc::arity_mismatch, line, "endgate takes no operands");
            }
            close_gate();
            return;
        }
        if (head == "gate") {
            throw ParseError(ParseErrc::invalid_gate_definition, line, "nested gate definition");
        }
        // An instruction inside the block means endgate was forgotten.
        if (head == "qubits" || find_opcode(head) != nullptr) {
            throw ParseError(ParseErrc::invalid_gate_definition, open_gate_line_,
                             "gate '" + open_gate_name_ + "' is missing endgate");
        }
        if (tok.size() != 4) {
            throw ParseError(ParseErrc::arity_mismatch, line, "expected '<row> <col> <re> <im>'");
        }
        GateEntry e{parse_int(tok[0], line), parse_int(tok[1], line),
                    Amplitude{parse_float(tok[2], line), parse_float(tok[3], line)}};
        if (!key_fits(e.row, open_gate_arity_) || !key_fits(e.col, open_gate_arity_)) {
            throw ParseError(ParseErrc::invalid_gate_definition, line,
                             "entry (" + std::to_string(e.row) + ", " + std::to_string(e.col) +
                                 ") out of range for arity " + std::to_string(open_gate_arity_));
        }
        open_gate_entries_.push_back(e);
    }

    void close_gate() {
        if (open_gate_entries_.empty()) {
            throw ParseError(ParseErrc::invalid_gate_definition, open_gate_line_,
                             "gate '" + open_gate_name_ + "' has no entries");
        }
        try {
            circuit_.gate_defs.push_back(
                GateDefinition::make(open_gate_name_, open_gate_arity_, std::move(open_gate_entries_)));
        } catch (const GateError& e) {
            throw ParseError(ParseErrc::invalid_gate_definition, open_gate_line_,
                             "gate '" + open_gate_name_ + "': " + e.what());
        }
        open_gate_ = false;
        open_gate_entries_.clear();
    }

    std::string_view text_;
    Circuit circuit_;
    bool have_header_ = false;
    bool open_gate_ = false;
    std::size_t open_gate_line_ = 0;
    std::string open_gate_name_;
    unsigned open_gate_arity_ = 0;
    std::vector<GateEntry> open_gate_entries_;
};

constexpr std::array<std::string_view, 10> kErrcNames = {
    "missing_header",   "invalid_register_size", "unknown_opcode",          "arity_mismatch",
    "qubit_out_of_range", "malformed_number",    "duplicate_gate",          "undefined_gate",
    "invalid_gate_definition", "invalid_operands",
};

}  // namespace

std::string_view opcode_name(Opcode op) { return info_of(op).keyword; }

GateDefinition GateDefinition::make(std::string name, unsigned arity, std::vector<GateEntry> entries) {
    std::vector<BasisKey> rows;
    std::vector<BasisKey> cols;
    std::vector<Amplitude> values;
    for (const auto& e : entries) {
        rows.push_back(e.row);
        cols.push_back(e.col);
        values.push_back(e.value);
    }
    SparseGate gate = SparseGate::from_sparse(arity, rows, cols, values);
    return GateDefinition{std::move(name), arity, std::move(entries), std::move(gate)};
}

const GateDefinition* Circuit::find_gate(std::string_view name) const {
    for (const auto& def : gate_defs) {
        if (def.name == name) {
            return &def;
        }
    }
    return nullptr;
}

std::string_view parse_errc_name(ParseErrc code) { return kErrcNames.at(static_cast<std::size_t>(code)); }

std::optional<ParseErrc> parse_errc_from_name(std::string_view name) {
    for (std::size_t i = 0; i < kErrcNames.size(); ++i) {
        if (kErrcNames[i] == name) {
            return static_cast<ParseErrc>(i);
        }
    }
    return std::nullopt;
}

ParseError::ParseError(ParseErrc code, std::size_t line, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ": " + message),
      code_(code),
      line_(line),
      message_(message) {}

Circuit parse(std::string_view text) { return Parser(text).parse(); }

void validate(const Circuit& c) {
    if (c.num_qubits == 0 || c.num_qubits > kMaxQubits) {
        throw ParseError(ParseErrc::invalid_register_size, 0,
                         "register size " + std::to_string(c.num_qubits) + " outside [1, 64]");
    }
    for (std::size_t i = 0; i < c.gate_defs.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            if (c.gate_defs[i].name == c.gate_defs[j].name) {
                throw ParseError(ParseErrc::duplicate_gate, 0, "gate '" + c.gate_defs[i].name + "' already defined");
            }
        }
    }
    for (const auto& instr : c.instructions) {
        check_instruction(c, instr, instr.line);
    }
}

std::string to_text(const Circuit& c) {
    std::ostringstream out;
    out << "qubits " << c.num_qubits << '\n';
    for (const auto& def : c.gate_defs) {
        out << "gate " << def.name << ' ' << def.arity << '\n';
        for (const auto& e : def.entries) {
            out << e.row << ' ' << e.col << ' ' << format_double(e.value.real()) << ' '
                << format_double(e.value.imag()) << '\n';
        }
        out << "endgate\n";
    }
    for (const auto& instr : c.instructions) {
        out << opcode_name(instr.op);
        if (instr.op == Opcode::APPLY) {
            out << ' ' << instr.gate_ref;
        }
        for (double p : instr.params) {
            out << ' ' << format_double(p);
        }
        for (Qubit q : instr.qubits) {
            out << ' ' << q;
        }
        out << '\n';
    }
    return out.str();
}

std::optional<BuiltinFamily> parse_builtin_family(std::string_view name) {
    if (name == "ghz") return BuiltinFamily::ghz;
    if (name == "superpos") return BuiltinFamily::superpos;
    if (name == "entangled_registers") return BuiltinFamily::entangled_registers;
    if (name == "superpos_measure") return BuiltinFamily::superpos_measure;
    return std::nullopt;
}

std::string_view builtin_family_name(BuiltinFamily family) {
    switch (family) {
        case BuiltinFamily::ghz: return "ghz";
        case BuiltinFamily::superpos: return "superpos";
        case BuiltinFamily::entangled_registers: return "entangled_registers";
        case BuiltinFamily::superpos_measure: return "superpos_measure";
    }
    return "?";
}

Circuit emit_builtin(BuiltinFamily family, unsigned n) {
    const unsigned width = family == BuiltinFamily::entangled_registers ? 2 * n : n;
    if (n == 0 || width > kMaxQubits) {
        throw std::invalid_argument(std::string(builtin_family_name(family)) + " circuit of size " +
                                    std::to_string(n) + " does not fit in 64 qubits");
    }
    Circuit c;
    c.num_qubits = width;
    auto push = [&c](Opcode op, std::vector<Qubit> qubits) {
        c.instructions.push_back(Instruction{.op = op, .qubits = std::move(qubits), .params = {}, .gate_ref = {}});
    };
    switch (family) {
        case BuiltinFamily::ghz:
            push(Opcode::H, {0});
            for (Qubit i = 1; i < n; ++i) {
                push(Opcode::CNOT, {i, 0});
            }
            break;
        case BuiltinFamily::superpos:
        case BuiltinFamily::superpos_measure:
            for (Qubit i = 0; i < n; ++i) {
                push(Opcode::H, {i});
            }
            if (family == BuiltinFamily::superpos_measure) {
                push(Opcode::MEASURE_ALL, {});
            }
            break;
        case BuiltinFamily::entangled_registers:
            for (Qubit i = 0; i < n; ++i) {
                push(Opcode::H, {i});
            }
            for (Qubit i = 0; i < n; ++i) {
                push(Opcode::CNOT, {n + i, i});
            }
            break;
    }
    return c;
}

std::optional<EngineKind> parse_engine_kind(std::string_view name) {
    if (name == "bitwise") return EngineKind::bitwise;
    if (name == "dense") return EngineKind::dense;
    if (name == "density") return EngineKind::density;
    return std::nullopt;
}

std::string_view engine_kind_name(EngineKind kind) {
    switch (kind) {
        case EngineKind::bitwise: return "bitwise";
        case EngineKind::dense: return "dense";
        case EngineKind::density: return "density";
    }
    return "?";
}

}  // namespace sparsim
