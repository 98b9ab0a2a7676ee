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
#include <span>
#include <string>

#include "sparsim/gatelib.hpp"
#include "sparsim/rng.hpp"
#include "sparsim/state.hpp"

namespace sparsim {

/// Pure-state simulator over the hash-map representation.
///
/// Every operation walks the stored keys once, so its cost is proportional
/// to the map size (times the gate fanout for arbitrary gates) and does not
/// depend on the register size. Gates rewrite keys with masks and shifts
/// from bitcore. The random source advances only when a qubit is measured.
class BitwiseEngine {
  public:
    explicit BitwiseEngine(unsigned n, std::uint64_t seed = 0);
    explicit BitwiseEngine(SparseState state, std::uint64_t seed = 0);

    unsigned num_qubits() const noexcept { return state_.num_qubits(); }
    const SparseState& state() const noexcept { return state_; }
    const MeasurementRecord& record() const noexcept { return record_; }
    std::size_t map_size() const noexcept { return state_.size(); }

    /// Applies a w-qubit gate to qubits [q, q + w). Each stored key is split
    /// into the bits left of the span, the span itself and the bits right of
    /// it; the span is replaced by every output of the gate column.
    void apply_gate(const SparseGate& gate, Qubit q);

    /// Hadamard without a gate table: a key keeps +-a/sqrt2 (minus when its
    /// qubit bit is 1) and sends +a/sqrt2 to the key with that bit flipped.
    void hadamard(Qubit q);

    /// Flips the target bit of every key whose control bits are all 1. An
    /// empty control list flips unconditionally. Map size is unchanged.
    void cnot(Qubit target, std::span<const Qubit> controls);

    /// Multiplies by `phase` every amplitude whose target and control bits
    /// are all 1. |phase| must be 1 within 1e-9.
    void cphase(Amplitude phase, Qubit target, std::span<const Qubit> controls);

    void swap(Qubit a, Qubit b);

    /// Fourier transform of the sub-register [first, last], qubit `first`
    /// being the most significant: Hadamards and controlled phases followed
    /// by the bit-reversal swaps.
    void qft(Qubit first, Qubit last);
    /// Inverse of qft(first, last): the same circuit reversed with
    /// conjugated phases.
    void inverse_qft(Qubit first, Qubit last);

    /// Measures qubit q with a draw from the engine's generator.
    int measure(Qubit q);
    /// Measures qubit q using `draw` in [0, 1) as the uniform sample:
    /// outcome 0 iff draw < p0.
    int measure(Qubit q, double draw);
    /// measure(0), ..., measure(n - 1); returns the outcomes qubit 0 first.
    std::string measure_all();

  private:
    void check_qubit(Qubit q) const;
    void check_controls(Qubit target, std::span<const Qubit> controls) const;
    BasisKey control_mask(std::span<const Qubit> controls) const;

    SparseState state_;
    MeasurementRecord record_;
    Rng rng_;
};

}  // namespace sparsim
