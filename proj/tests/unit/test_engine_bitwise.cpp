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
#include <numbers>
#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "sparsim/engine_bitwise.hpp"
#include "sparsim/errors.hpp"

using namespace sparsim;
using testing_support::to_vec;

namespace {

const double kS = 1 / std::sqrt(2.0);

SparseState state_of(unsigned n, AmplitudeMap m) { return SparseState::from_amplitudes(n, std::move(m)); }

bool has_exactly(const SparseState& s, const AmplitudeMap& want, double tol = 1e-12) {
    if (s.size() != want.size()) {
        return false;
    }
    for (const auto& [k, a] : want) {
        if (!s.amplitudes().contains(k) || std::abs(s.amplitude(k) - a) > tol) {
            return false;
        }
    }
    return true;
}

}  // namespace

TEST_CASE("apply_gate") {
    BitwiseEngine e(3);
    e.apply_gate(standard(GateKind::X), 0);
    CHECK(has_exactly(e.state(), {{0b100, 1}}));

    BitwiseEngine h(1);
    h.apply_gate(standard(GateKind::H), 0);
    CHECK(has_exactly(h.state(), {{0, kS}, {1, kS}}));

    const std::vector<BasisKey> rows{0, 1, 3, 2}, cols{0, 1, 2, 3};
    const std::vector<Amplitude> ones{1, 1, 1, 1};
    BitwiseEngine c(state_of(2, {{0b10, 1}}));
    c.apply_gate(SparseGate::from_sparse(2, rows, cols, ones), 0);
    CHECK(has_exactly(c.state(), {{0b11, 1}}));

    CHECK_THROWS_AS(c.apply_gate(SparseGate::from_sparse(2, rows, cols, ones), 1), std::out_of_range);
    CHECK_THROWS_AS(c.apply_gate(standard(GateKind::X), 2), std::out_of_range);
}

TEST_CASE("apply_gate matches the Kronecker oracle on random states") {
    std::mt19937_64 gen(11);
    const unsigned n = 5;
    const SparseGate two = testing_support::cycle_gate().gate;
    for (int trial = 0; trial < 20; ++trial) {
        const SparseState s = testing_support::random_sparse_state(n, 1 + trial % 12, gen);
        for (Qubit q = 0; q < n; ++q) {
            BitwiseEngine e(s);
            const GateParams p{.theta = 0.3 * trial, .phi = 0.1, .lambda = -0.7};
            e.apply_gate(standard(GateKind::U3, p), q);
            const oracle::Vec want = oracle::embed(oracle::u3(p.theta, p.phi, p.lambda), n, q) * to_vec(s);
            CHECK(testing_support::max_diff(to_vec(e.state()), want) < 1e-12);
        }
        for (Qubit q = 0; q + 1 < n; ++q) {
            BitwiseEngine e(s);
            e.apply_gate(two, q);
            const oracle::Vec want = testing_support::instruction_matrix(
                                         [] {
                                             Circuit c;
                                             c.num_qubits = 5;
                                             c.gate_defs.push_back(testing_support::cycle_gate());
                                             return c;
                                         }(),
                                         Instruction{.op = Opcode::APPLY, .qubits = {q}, .params = {},
                                                     .gate_ref = "cyc"}) *
                                     to_vec(s);
            CHECK(testing_support::max_diff(to_vec(e.state()), want) < 1e-12);
        }
    }
}

TEST_CASE("hadamard") {
    BitwiseEngine a(1);
    a.hadamard(0);
    CHECK(has_exactly(a.state(), {{0, kS}, {1, kS}}));
    a.hadamard(0);
    // Interference removes key 1 entirely.
    CHECK(has_exactly(a.state(), {{0, 1}}));

    BitwiseEngine b(2);
    b.hadamard(1);
    CHECK(has_exactly(b.state(), {{0b00, kS}, {0b01, kS}}));
    CHECK_THROWS_AS(b.hadamard(2), std::out_of_range);
}

TEST_CASE("cnot flips the target when all controls are set") {
    const Qubit c0[] = {0};
    BitwiseEngine a(state_of(2, {{0b10, 1}}));
    a.cnot(1, c0);
    CHECK(has_exactly(a.state(), {{0b11, 1}}));

    BitwiseEngine b(state_of(2, {{0b01, 1}}));
    b.cnot(1, c0);
    CHECK(has_exactly(b.state(), {{0b01, 1}}));

    const Qubit c01[] = {0, 1};
    BitwiseEngine t(state_of(3, {{0b110, 1}}));
    t.cnot(2, c01);
    CHECK(has_exactly(t.state(), {{0b111, 1}}));

    BitwiseEngine x(state_of(2, {{0b00, 1}}));
    x.cnot(0, {});
    CHECK(has_exactly(x.state(), {{0b10, 1}}));

    const Qubit self[] = {1};
    CHECK_THROWS_AS(a.cnot(1, self), std::invalid_argument);
    const Qubit twice[] = {0, 0};
    CHECK_THROWS_AS(t.cnot(2, twice), std::invalid_argument);
    const Qubit far[] = {7};
    CHECK_THROWS_AS(a.cnot(1, far), std::out_of_range);
}

TEST_CASE("cphase") {
    BitwiseEngine z(state_of(1, {{1, 1}}));
    z.cphase(-1, 0, {});
    CHECK(has_exactly(z.state(), {{1, -1}}));

    const Qubit c0[] = {0};
    BitwiseEngine b(state_of(2, {{0b11, kS}, {0b00, kS}}));
    b.cphase(Amplitude(0, 1), 1, c0);
    CHECK(has_exactly(b.state(), {{0b11, Amplitude(0, kS)}, {0b00, kS}}));

    BitwiseEngine one(state_of(2, {{0b11, kS}, {0b01, kS}}));
    one.cphase(1, 1, c0);
    CHECK(has_exactly(one.state(), {{0b11, kS}, {0b01, kS}}));

    CHECK_THROWS_AS(one.cphase(2.0, 1, c0), std::invalid_argument);
}

TEST_CASE("swap") {
    BitwiseEngine a(state_of(2, {{0b10, 1}}));
    a.swap(0, 1);
    CHECK(has_exactly(a.state(), {{0b01, 1}}));
    a.swap(1, 1);
    CHECK(has_exactly(a.state(), {{0b01, 1}}));

    const Amplitude alpha(0.6, 0), beta(0, 0.8);
    BitwiseEngine b(state_of(3, {{0b100, alpha}, {0b001, beta}}));
    b.swap(0, 2);
    CHECK(has_exactly(b.state(), {{0b001, alpha}, {0b100, beta}}));
}

TEST_CASE("qft") {
    SUBCASE("single qubit equals hadamard") {
        std::mt19937_64 gen(3);
        const SparseState s = testing_support::random_sparse_state(3, 5, gen);
        BitwiseEngine a(s), b(s);
        a.qft(1, 1);
        b.hadamard(1);
        CHECK(fidelity_check(a.state(), b.state()) < 1e-15);
    }
    SUBCASE("basis zero maps to equal superposition") {
        for (unsigned n : {1u, 4u, 9u}) {
            BitwiseEngine e(n);
            e.qft(0, n - 1);
            CHECK(e.map_size() == (std::size_t{1} << n));
            for (const auto& [k, a] : e.state().amplitudes()) {
                CHECK(std::abs(a - std::pow(2.0, -0.5 * n)) < 1e-12);
            }
        }
    }
    SUBCASE("matches the DFT and inverts") {
        std::mt19937_64 gen(5);
        const unsigned n = 6;
        for (int trial = 0; trial < 10; ++trial) {
            const SparseState s = testing_support::random_sparse_state(n, 1 + trial, gen);
            const Qubit first = trial % 3;
            const Qubit last = n - 1 - trial % 2;
            BitwiseEngine e(s);
            e.qft(first, last);
            const oracle::Vec want = oracle::embed(oracle::dft(last - first + 1), n, first) * to_vec(s);
            CHECK(testing_support::max_diff(to_vec(e.state()), want) < 1e-12);
            e.inverse_qft(first, last);
            CHECK(fidelity_check(e.state(), s) < 1e-9);
        }
    }
    BitwiseEngine e(3);
    CHECK_THROWS_AS(e.qft(2, 1), std::out_of_range);
    CHECK_THROWS_AS(e.qft(0, 3), std::out_of_range);
}

TEST_CASE("measure") {
    BitwiseEngine zero(1, 1);
    CHECK(zero.measure(0) == 0);
    CHECK(has_exactly(zero.state(), {{0, 1}}));
    CHECK(zero.record()[0] == 0);

    BitwiseEngine plus(state_of(1, {{0, kS}, {1, kS}}));
    CHECK(plus.measure(0, 0.1) == 0);
    CHECK(has_exactly(plus.state(), {{0, 1}}));

    BitwiseEngine high(state_of(1, {{0, kS}, {1, kS}}));
    CHECK(high.measure(0, 0.9) == 1);
    CHECK(has_exactly(high.state(), {{1, 1}}));

    for (const double draw : {0.2, 0.7}) {
        BitwiseEngine ghz(state_of(3, {{0, kS}, {7, kS}}));
        const int b = ghz.measure(0, draw);
        CHECK(b == (draw < 0.5 ? 0 : 1));
        CHECK(has_exactly(ghz.state(), {{b == 0 ? 0b000u : 0b111u, 1}}));
        // Re-measuring a collapsed qubit repeats the outcome.
        CHECK(ghz.measure(0) == b);
        CHECK(ghz.measure(2) == b);
    }

    BitwiseEngine bad(state_of(1, {{0, 2.0}}));
    CHECK_THROWS_AS(bad.measure(0), InvariantError);
}

TEST_CASE("measure_all") {
    BitwiseEngine e(state_of(3, {{0b101, 1}}));
    CHECK(e.measure_all() == "101");
    CHECK(has_exactly(e.state(), {{0b101, 1}}));
    CHECK(e.record().to_string() == "101");

    auto plus2 = [](std::uint64_t seed) {
        BitwiseEngine p(2, seed);
        p.hadamard(0);
        p.hadamard(1);
        return p.measure_all();
    };
    // Pinned seed, pinned outcome.
    CHECK(plus2(2024) == plus2(2024));
    CHECK(plus2(2024) == "11");

    SUBCASE("frequencies") {
        BitwiseEngine once(1, 99);
        int zeros = 0;
        const int shots = 10000;
        for (int i = 0; i < shots; ++i) {
            BitwiseEngine p(1, 1000 + static_cast<std::uint64_t>(i));
            p.hadamard(0);
            zeros += p.measure(0) == 0;
        }
        CHECK(std::abs(zeros / double(shots) - 0.5) <= 0.015);
    }
}

TEST_CASE("GHZ stays two keys wide") {
    for (unsigned n = 2; n <= 64; ++n) {
        BitwiseEngine e(n);
        e.hadamard(0);
        for (Qubit i = 1; i < n; ++i) {
            const Qubit ctrl[] = {0};
            e.cnot(i, ctrl);
        }
        CHECK(e.map_size() == 2);
        CHECK(std::abs(e.state().amplitude(low_mask(n)) - kS) < 1e-12);
    }
}

TEST_CASE("gate output size is bounded by map size times fanout") {
    std::mt19937_64 gen(8);
    for (int trial = 0; trial < 30; ++trial) {
        const SparseState s = testing_support::random_sparse_state(10, 1 + trial * 7, gen);
        const SparseGate h = standard(GateKind::H);
        BitwiseEngine e(s);
        e.apply_gate(h, static_cast<Qubit>(trial % 10));
        CHECK(e.map_size() <= s.size() * h.max_fanout());
    }
}
