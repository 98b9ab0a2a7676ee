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

#include "sparsim/engine_bitwise.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "sparsim/errors.hpp"

namespace sparsim {

namespace {

constexpr double kUnitPhaseTolerance = 1e-9;

std::string qubit_error(Qubit q, unsigned n) {
    return "qubit " + std::to_string(q) + " out of range for " + std::to_string(n) + " qubits";
}

}  // namespace

BitwiseEngine::BitwiseEngine(unsigned n, std::uint64_t seed)
    : state_(n), record_(n), rng_(seed) {}

BitwiseEngine::BitwiseEngine(SparseState state, std::uint64_t seed)
    : state_(std::move(state)), record_(state_.num_qubits()), rng_(seed) {}

void BitwiseEngine::check_qubit(Qubit q) const {
    if (q >= num_qubits()) {
        throw std::out_of_range(qubit_error(q, num_qubits()));
    }
}

void BitwiseEngine::check_controls(Qubit target, std::span<const Qubit> controls) const {
    check_qubit(target);
    for (std::size_t i = 0; i < controls.size(); ++i) {
        check_qubit(controls[i]);
        if (controls[i] == target) {
            throw std::invalid_argument("qubit " + std::to_string(target) + " is both target and control");
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (controls[j] == controls[i]) {
                throw std::invalid_argument("control qubit " + std::to_string(controls[i]) + " listed twice");
            }
        }
    }
}

BasisKey BitwiseEngine::control_mask(std::span<const Qubit> controls) const {
    BasisKey mask = 0;
    for (Qubit c : controls) {
        mask |= qubit_mask(num_qubits(), c);
    }
    return mask;
}

void BitwiseEngine::apply_gate(const SparseGate& gate, Qubit q) {
    const unsigned n = num_qubits();
    const unsigned w = gate.arity();
    if (q >= n || w > n - q) {
        throw std::out_of_range(
            "gate of arity " + std::to_string(w) + " at qubit " + std::to_string(q) + " exceeds register of " +
            std::to_string(n) + " qubits");
    }
    const unsigned right = n - q - w;

    AmplitudeMap next;
    next.reserve(state_.size() * std::max<std::size_t>(gate.max_fanout(), 1));
    for (const auto& [key, amp] : state_.amplitudes()) {
        const KeySplit parts = split_key(key, n, q, w);
        for (const GateTerm& term : gate.column(parts.y)) {
            next[combine(parts.x, term.out << right, parts.z)] += term.amplitude * amp;
        }
    }
    prune_in_place(next);
    state_.amplitudes() = std::move(next);
}

void BitwiseEngine::hadamard(Qubit q) {
    check_qubit(q);
    const BasisKey mask = qubit_mask(num_qubits(), q);
    constexpr double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

    AmplitudeMap next;
    next.reserve(2 * state_.size());
    for (const auto& [key, amp] : state_.amplitudes()) {
        const Amplitude half = amp * kInvSqrt2;
        if (key & mask) {
            next[key] -= half;
        } else {
            next[key] += half;
        }
        next[key ^ mask] += half;
    }
    prune_in_place(next);
    state_.amplitudes() = std::move(next);
}

void BitwiseEngine::cnot(Qubit target, std::span<const Qubit> controls) {
    check_controls(target, controls);
    const BasisKey ctrl = control_mask(controls);
    const BasisKey flip = qubit_mask(num_qubits(), target);

    AmplitudeMap next;
    next.reserve(state_.size());
    for (const auto& [key, amp] : state_.amplitudes()) {
        next.emplace((key & ctrl) == ctrl ? key ^ flip : key, amp);
    }
    state_.amplitudes() = std::move(next);
}

void BitwiseEngine::cphase(Amplitude phase, Qubit target, std::span<const Qubit> controls) {
    check_controls(target, controls);
    if (std::abs(std::abs(phase) - 1.0) > kUnitPhaseTolerance) {
        throw std::invalid_argument("controlled phase must have modulus 1");
    }
    const BasisKey mask = control_mask(controls) | qubit_mask(num_qubits(), target);
    for (auto& [key, amp] : state_.amplitudes()) {
        if ((key & mask) == mask) {
            amp *= phase;
        }
    }
}

void BitwiseEngine::swap(Qubit a, Qubit b) {
    check_qubit(a);
    check_qubit(b);
    if (a == b) {
        return;
    }
    const unsigned n = num_qubits();
    AmplitudeMap next;
    next.reserve(state_.size());
    for (const auto& [key, amp] : state_.amplitudes()) {
        next.emplace(swap_bits(key, n, a, b), amp);
    }
    state_.amplitudes() = std::move(next);
}

void BitwiseEngine::qft(Qubit first, Qubit last) {
    if (first > last || last >= num_qubits()) {
        throw std::out_of_range("invalid QFT range [" + std::to_string(first) + ", " + std::to_string(last) + "]");
    }
    for (Qubit j = first; j <= last; ++j) {
        hadamard(j);
        for (Qubit k = j + 1; k <= last; ++k) {
            const Qubit ctrl[] = {k};
            cphase(std::polar(1.0, std::numbers::pi / std::ldexp(1.0, static_cast<int>(k - j))), j, ctrl);
        }
    }
    for (Qubit i = 0; first + i < last - i; ++i) {
        swap(first + i, last - i);
    }
}

void BitwiseEngine::inverse_qft(Qubit first, Qubit last) {
    if (first > last || last >= num_qubits()) {
        throw std::out_of_range("invalid QFT range [" + std::to_string(first) + ", " + std::to_string(last) + "]");
    }
    for (Qubit i = 0; first + i < last - i; ++i) {
        swap(first + i, last - i);
    }
    for (Qubit j = last + 1; j-- > first;) {
        for (Qubit k = last; k > j; --k) {
            const Qubit ctrl[] = {k};
            cphase(std::polar(1.0, -std::numbers::pi / std::ldexp(1.0, static_cast<int>(k - j))), j, ctrl);
        }
        hadamard(j);
    }
}

int BitwiseEngine::measure(Qubit q) {
    check_qubit(q);
    return measure(q, rng_.uniform());
}

int BitwiseEngine::measure(Qubit q, double draw) {
    check_qubit(q);
    const BasisKey mask = qubit_mask(num_qubits(), q);
    double p0 = 0;
    double p1 = 0;
    for (const auto& [key, amp] : state_.amplitudes()) {
        ((key & mask) ? p1 : p0) += std::norm(amp);
    }
    const double total = p0 + p1;
    if (!(std::abs(total - 1.0) <= kNormTolerance)) {
        throw InvariantError("measurement on a state with squared norm " + std::to_string(total));
    }

    const int outcome = (p1 == 0 || (p0 > 0 && draw * total < p0)) ? 0 : 1;
    const double p = outcome == 0 ? p0 : p1;
    const double scale = 1.0 / std::sqrt(p);
    const BasisKey want = outcome == 0 ? 0 : mask;
    auto& amps = state_.amplitudes();
    std::erase_if(amps, [&](const auto& kv) { return (kv.first & mask) != want; });
    for (auto& [key, amp] : amps) {
        amp *= scale;
    }
    record_.set(q, outcome);
    return outcome;
}

std::string BitwiseEngine::measure_all() {
    std::string bits;
    bits.reserve(num_qubits());
    for (Qubit q = 0; q < num_qubits(); ++q) {
        bits.push_back(static_cast<char>('0' + measure(q)));
    }
    return bits;
}

}  // namespace sparsim
