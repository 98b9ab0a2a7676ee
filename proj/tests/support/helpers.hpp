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

#include <algorithm>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "oracle.hpp"
#include "sparsim/circuit.hpp"

namespace testing_support {

inline oracle::Vec to_vec(const sparsim::SparseState& s) {
    oracle::Vec v = oracle::Vec::Zero(static_cast<Eigen::Index>(std::size_t{1} << s.num_qubits()));
    for (const auto& [key, amp] : s.amplitudes()) {
        v(static_cast<Eigen::Index>(key)) = amp;
    }
    return v;
}

inline oracle::Vec to_vec(const sparsim::DenseState& d) {
    const auto amps = d.amplitudes();
    oracle::Vec v(static_cast<Eigen::Index>(amps.size()));
    for (std::size_t i = 0; i < amps.size(); ++i) {
        v(static_cast<Eigen::Index>(i)) = amps[i];
    }
    return v;
}

inline oracle::Mat to_mat(const sparsim::DensityMatrix& rho) {
    const auto dim = static_cast<Eigen::Index>(rho.dimension());
    oracle::Mat m(dim, dim);
    for (Eigen::Index r = 0; r < dim; ++r) {
        for (Eigen::Index c = 0; c < dim; ++c) {
            m(r, c) = rho(static_cast<std::size_t>(r), static_cast<std::size_t>(c));
        }
    }
    return m;
}

inline sparsim::DensityMatrix from_mat(const oracle::Mat& m, unsigned n) {
    sparsim::DensityMatrix rho(n);
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            rho(static_cast<std::size_t>(r), static_cast<std::size_t>(c)) = m(r, c);
        }
    }
    return rho;
}

inline sparsim::SparseState sparse_from_vec(const oracle::Vec& v, unsigned n) {
    sparsim::AmplitudeMap map;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (std::abs(v(i)) > 0) {
            map[static_cast<sparsim::BasisKey>(i)] = v(i);
        }
    }
    return sparsim::SparseState::from_amplitudes(n, std::move(map));
}

inline double max_diff(const oracle::Vec& a, const oracle::Vec& b) { return (a - b).cwiseAbs().maxCoeff(); }
inline double max_diff(const oracle::Mat& a, const oracle::Mat& b) { return (a - b).cwiseAbs().maxCoeff(); }

/// A sparse random state: `keys` distinct basis states with random
/// amplitudes, normalized.
inline sparsim::SparseState random_sparse_state(unsigned n, std::size_t keys, std::mt19937_64& gen) {
    std::normal_distribution<double> g;
    std::uniform_int_distribution<sparsim::BasisKey> pick(0, sparsim::low_mask(n));
    keys = std::min<std::size_t>(keys, std::size_t{1} << std::min(n, 20u));
    sparsim::AmplitudeMap map;
    while (map.size() < keys) {
        map[pick(gen)] = sparsim::Amplitude(g(gen), g(gen));
    }
    double norm = 0;
    for (const auto& [k, a] : map) {
        norm += std::norm(a);
    }
    for (auto& [k, a] : map) {
        a /= std::sqrt(norm);
    }
    return sparsim::SparseState::from_amplitudes(n, std::move(map));
}

/// The user-defined 2-qubit permutation gate used by random circuits:
/// 0->2, 1->0, 2->3, 3->1 (a 4-cycle).
inline sparsim::GateDefinition cycle_gate() {
    using sparsim::GateEntry;
    return sparsim::GateDefinition::make(
        "cyc", 2, {GateEntry{2, 0, 1}, GateEntry{0, 1, 1}, GateEntry{3, 2, 1}, GateEntry{1, 3, 1}});
}

/// Random unitary circuit (no measurement) on n qubits with `depth`
/// instructions drawn from every gate opcode plus the cycle gate.
inline sparsim::Circuit random_circuit(unsigned n, unsigned depth, std::mt19937_64& gen) {
    using sparsim::Opcode;
    sparsim::Circuit c;
    c.num_qubits = n;
    if (n >= 2) {
        c.gate_defs.push_back(cycle_gate());
    }
    std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
    auto qubit = [&](unsigned lo, unsigned hi) { return std::uniform_int_distribution<unsigned>(lo, hi)(gen); };
    auto distinct = [&](unsigned count) {
        std::vector<unsigned> all(n);
        std::iota(all.begin(), all.end(), 0u);
        std::shuffle(all.begin(), all.end(), gen);
        all.resize(count);
        return all;
    };
    const std::vector<Opcode> single{Opcode::H, Opcode::X, Opcode::Y, Opcode::Z, Opcode::S, Opcode::T,
                                     Opcode::RX, Opcode::RY, Opcode::RZ, Opcode::U1, Opcode::U2, Opcode::U3};
    const std::vector<Opcode> multi{Opcode::CNOT, Opcode::CPHASE, Opcode::SWAP, Opcode::QFT, Opcode::APPLY};
    for (unsigned i = 0; i < depth; ++i) {
        sparsim::Instruction in{.op = Opcode::H, .qubits = {}, .params = {}, .gate_ref = {}};
        const bool use_multi = n >= 2 && qubit(0, 2) == 0;
        if (!use_multi) {
            in.op = single[qubit(0, static_cast<unsigned>(single.size() - 1))];
            in.qubits = {qubit(0, n - 1)};
            const auto kind = sparsim::parse_gate_kind(sparsim::opcode_name(in.op));
            for (unsigned p = 0; p < sparsim::gate_kind_param_count(*kind); ++p) {
                in.params.push_back(angle(gen));
            }
        } else {
            in.op = multi[qubit(0, static_cast<unsigned>(multi.size() - 1))];
            switch (in.op) {
                case Opcode::CNOT:
                case Opcode::CPHASE:
                    in.qubits = distinct(std::min(n, qubit(2, 3)));
                    if (in.op == Opcode::CPHASE) {
                        in.params = {angle(gen)};
                    }
                    break;
                case Opcode::SWAP:
                    in.qubits = distinct(2);
                    break;
                case Opcode::QFT: {
                    const unsigned a = qubit(0, n - 1);
                    in.qubits = {a, qubit(a, n - 1)};
                    break;
                }
                default:
                    in.gate_ref = "cyc";
                    in.qubits = {qubit(0, n - 2)};
                    break;
            }
        }
        c.instructions.push_back(std::move(in));
    }
    return c;
}

inline oracle::Mat single_qubit_matrix(sparsim::Opcode op, const std::vector<double>& p) {
    using sparsim::Opcode;
    switch (op) {
        case Opcode::H: return oracle::hadamard();
        case Opcode::X: return oracle::pauli_x();
        case Opcode::Y: return oracle::pauli_y();
        case Opcode::Z: return oracle::pauli_z();
        case Opcode::S: return oracle::s_gate();
        case Opcode::T: return oracle::t_gate();
        case Opcode::RX: return oracle::rotation(oracle::pauli_x(), p[0]);
        case Opcode::RY: return oracle::rotation(oracle::pauli_y(), p[0]);
        case Opcode::RZ: return oracle::rotation(oracle::pauli_z(), p[0]);
        case Opcode::U1: return oracle::u1(p[0]);
        case Opcode::U2: return oracle::u2(p[0], p[1]);
        case Opcode::U3: return oracle::u3(p[0], p[1], p[2]);
        default: throw std::logic_error("not a single-qubit opcode");
    }
}

/// Full-register operator of one unitary instruction.
inline oracle::Mat instruction_matrix(const sparsim::Circuit& c, const sparsim::Instruction& in) {
    using sparsim::Opcode;
    const unsigned n = c.num_qubits;
    const auto& q = in.qubits;
    const std::vector<unsigned> controls(q.begin() + 1, q.end());
    switch (in.op) {
        case Opcode::CNOT: return oracle::controlled(oracle::pauli_x(), n, q[0], controls);
        case Opcode::CPHASE:
            return oracle::controlled_phase(std::exp(oracle::kI * in.params[0]), n, q[0], controls);
        case Opcode::SWAP: return oracle::swap(n, q[0], q[1]);
        case Opcode::QFT: {
            // The DFT on a contiguous block maps the block's bits read as
            // an integer with the first qubit most significant.
            return oracle::embed(oracle::dft(q[1] - q[0] + 1), n, q[0]);
        }
        case Opcode::APPLY: {
            const auto* def = c.find_gate(in.gate_ref);
            const auto dim = static_cast<Eigen::Index>(std::size_t{1} << def->arity);
            oracle::Mat u = oracle::Mat::Zero(dim, dim);
            for (const auto& e : def->entries) {
                u(static_cast<Eigen::Index>(e.row), static_cast<Eigen::Index>(e.col)) = e.value;
            }
            return oracle::embed(u, n, q[0]);
        }
        default: return oracle::embed(single_qubit_matrix(in.op, in.params), n, q[0]);
    }
}

/// Final state of a measurement-free circuit applied to |0...0>.
inline oracle::Vec oracle_run(const sparsim::Circuit& c) {
    oracle::Vec psi = oracle::basis(c.num_qubits, 0);
    for (const auto& in : c.instructions) {
        psi = instruction_matrix(c, in) * psi;
    }
    return psi;
}

}  // namespace testing_support
