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
#include <stdexcept>
#include <string>

/// Basis-key arithmetic shared by every engine.
///
/// A basis key is the integer label of a computational basis state. Qubit 0
/// is the most significant bit of an n-qubit key, so qubit q lives at bit
/// position (n - q - 1). Every other module computes bit positions through
/// the helpers below rather than by hand.
namespace sparsim {

using BasisKey = std::uint64_t;
using Qubit = unsigned;

inline constexpr unsigned kMaxQubits = 64;

/// key & (2^m - 1). m == 64 selects every bit.
constexpr BasisKey select_low_bits(BasisKey key, unsigned m) noexcept {
    return m >= kMaxQubits ? key : key & ((BasisKey{1} << m) - 1);
}

/// 2^m - 1, with m == 64 giving the all-ones mask.
constexpr BasisKey low_mask(unsigned m) noexcept { return select_low_bits(~BasisKey{0}, m); }

constexpr BasisKey flip_bit(BasisKey key, unsigned pos) noexcept { return key ^ (BasisKey{1} << pos); }

/// Bitwise OR of three keys whose set-bit ranges do not overlap.
constexpr BasisKey combine(BasisKey x, BasisKey y, BasisKey z) noexcept { return x | y | z; }

/// Bit position of qubit q in an n-qubit key.
constexpr unsigned bit_position(unsigned n, Qubit q) noexcept { return n - q - 1; }

constexpr BasisKey qubit_mask(unsigned n, Qubit q) noexcept { return BasisKey{1} << bit_position(n, q); }

constexpr bool qubit_is_set(BasisKey key, unsigned n, Qubit q) noexcept { return (key & qubit_mask(n, q)) != 0; }

/// True iff key names a basis state of an n-qubit register.
constexpr bool key_fits(BasisKey key, unsigned n) noexcept { return n >= kMaxQubits || (key >> n) == 0; }

struct KeySplit {
    BasisKey x;  ///< bits left of the gate span, kept in place
    BasisKey y;  ///< the w gate bits, shifted down to the low end
    BasisKey z;  ///< bits right of the gate span, kept in place

    friend constexpr bool operator==(const KeySplit&, const KeySplit&) = default;
};

/// Splits `key` around a w-qubit span that starts at qubit q.
///
/// Recombining is `combine(x, y << (n - q - w), z)`.
inline KeySplit split_key(BasisKey key, unsigned n, Qubit q, unsigned w) {
    if (w == 0 || n > kMaxQubits || q + w > n) {
        throw std::out_of_range(
            "gate span [" + std::to_string(q) + ", " + std::to_string(q + w) + ") exceeds register of " +
            std::to_string(n) + " qubits");
    }
    const unsigned right = n - q - w;
    return KeySplit{
        .x = key & ~low_mask(n - q),
        .y = select_low_bits(key >> right, w),
        .z = select_low_bits(key, right),
    };
}

/// Exchanges the bits of qubits a and b.
constexpr BasisKey swap_bits(BasisKey key, unsigned n, Qubit a, Qubit b) noexcept {
    const unsigned pa = bit_position(n, a);
    const unsigned pb = bit_position(n, b);
    const BasisKey diff = ((key >> pa) ^ (key >> pb)) & 1;
    return key ^ ((diff << pa) | (diff << pb));
}

/// n-character MSB-first binary rendering (qubit 0 first).
inline std::string to_binary(BasisKey key, unsigned n) {
    std::string s(n, '0');
    for (unsigned q = 0; q < n; ++q) {
        if (qubit_is_set(key, n, q)) {
            s[q] = '1';
        }
    }
    return s;
}

}  // namespace sparsim
