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

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "sparsim/bitcore.hpp"

namespace sparsim {

using Amplitude = std::complex<double>;
using AmplitudeMap = std::unordered_map<BasisKey, Amplitude>;

/// Amplitudes with modulus at or below this are treated as exact zeros.
inline constexpr double kPruneEpsilon = 1e-12;
/// Allowed drift of the squared norm away from 1 between operations.
inline constexpr double kNormTolerance = 1e-9;

/// Qubit-count limits for the dense representations.
struct DenseCapacity {
    unsigned vector_qubits = 24;
    unsigned density_qubits = 12;

    /// Defaults, with SPARSIM_DENSE_CAP (if set) overriding the vector cap.
    /// The density cap follows as half the vector cap, since a density
    /// matrix on n qubits holds as many entries as a vector on 2n.
    static DenseCapacity from_env();
};

/// Pure state stored as a hash map from basis key to amplitude. Only
/// nonzero amplitudes are stored, so the map size tracks how many basis
/// states the state actually needs rather than 2^n.
class SparseState {
  public:
    /// |0...0> on n qubits, 1 <= n <= 64.
    explicit SparseState(unsigned n);

    /// Takes the map as given; keys must fit in n qubits. No normalization
    /// or pruning is applied.
    static SparseState from_amplitudes(unsigned n, AmplitudeMap amplitudes);

    unsigned num_qubits() const noexcept { return n_; }
    std::size_t size() const noexcept { return amplitudes_.size(); }
    const AmplitudeMap& amplitudes() const noexcept { return amplitudes_; }
    AmplitudeMap& amplitudes() noexcept { return amplitudes_; }

    /// Stored amplitude for key, or 0 when absent.
    Amplitude amplitude(BasisKey key) const;
    double norm_squared() const;

  private:
    SparseState(unsigned n, AmplitudeMap amplitudes) : n_(n), amplitudes_(std::move(amplitudes)) {}

    unsigned n_;
    AmplitudeMap amplitudes_;
};

SparseState init_sparse(unsigned n);

/// Length-2^n amplitude vector indexed by basis key.
class DenseState {
  public:
    /// |0...0>. Throws CapacityError when n exceeds cap.vector_qubits.
    explicit DenseState(unsigned n, DenseCapacity cap = {});
    DenseState(unsigned n, std::vector<Amplitude> amplitudes, DenseCapacity cap = {});

    unsigned num_qubits() const noexcept { return n_; }
    std::span<const Amplitude> amplitudes() const noexcept { return amplitudes_; }
    std::span<Amplitude> amplitudes() noexcept { return amplitudes_; }
    Amplitude operator[](BasisKey key) const { return amplitudes_[key]; }
    double norm_squared() const;

  private:
    unsigned n_;
    std::vector<Amplitude> amplitudes_;
};

/// 2^n x 2^n density matrix stored row-major: entry (row, col) lives at
/// index (row << n) | col. Read as a vector, that is the state of a 2n-qubit
/// register whose first n qubits carry the row and last n the column.
class DensityMatrix {
  public:
    /// |0...0><0...0|. Throws CapacityError when n exceeds cap.density_qubits.
    explicit DensityMatrix(unsigned n, DenseCapacity cap = {});
    DensityMatrix(unsigned n, std::vector<Amplitude> entries, DenseCapacity cap = {});

    /// |psi><psi|.
    static DensityMatrix from_pure(const DenseState& psi, DenseCapacity cap = {});

    unsigned num_qubits() const noexcept { return n_; }
    std::size_t dimension() const noexcept { return std::size_t{1} << n_; }
    Amplitude operator()(std::size_t row, std::size_t col) const { return entries_[(row << n_) | col]; }
    Amplitude& operator()(std::size_t row, std::size_t col) { return entries_[(row << n_) | col]; }
    std::span<const Amplitude> entries() const noexcept { return entries_; }
    std::span<Amplitude> entries() noexcept { return entries_; }

    Amplitude trace() const;
    /// max |rho(i,j) - conj(rho(j,i))|
    double hermiticity_deviation() const;

  private:
    unsigned n_;
    std::vector<Amplitude> entries_;
};

/// Most recent measurement outcome per qubit.
class MeasurementRecord {
  public:
    explicit MeasurementRecord(unsigned n) : bits_(n) {}

    std::size_t size() const noexcept { return bits_.size(); }
    std::optional<int> operator[](Qubit q) const { return bits_.at(q); }
    void set(Qubit q, int bit) { bits_.at(q) = bit; }
    bool any_measured() const;
    /// One character per qubit, qubit 0 first: '0', '1', or '-' if unmeasured.
    std::string to_string() const;

  private:
    std::vector<std::optional<int>> bits_;
};

/// Copy of s without amplitudes of modulus <= kPruneEpsilon.
SparseState prune(const SparseState& s);
/// Erases amplitudes of modulus <= kPruneEpsilon.
void prune_in_place(AmplitudeMap& amplitudes);

DenseState sparse_to_dense(const SparseState& s, DenseCapacity cap = {});
/// Keeps the entries with modulus above kPruneEpsilon.
SparseState dense_to_sparse(const DenseState& d);

/// max_i |a_i - b_i|. Throws std::invalid_argument on register-size mismatch.
double fidelity_check(const SparseState& a, const SparseState& b);
double fidelity_check(const DenseState& a, const DenseState& b);
double fidelity_check(const SparseState& a, const DenseState& b);
double fidelity_check(const DenseState& a, const SparseState& b);

/// One line of a state dump.
struct DumpEntry {
    BasisKey key;
    double re;
    double im;

    friend bool operator==(const DumpEntry&, const DumpEntry&) = default;
};

/// Stored entries, ascending by key.
std::vector<DumpEntry> dump_entries(const SparseState& s);
/// Entries with modulus above kPruneEpsilon, ascending by key.
std::vector<DumpEntry> dump_entries(const DenseState& d);

/// `<key-decimal> <key-binary-n-bits> <re> <im>` with 17 significant digits.
std::string format_dump_line(const DumpEntry& e, unsigned n);

void write_dump(std::ostream& out, const SparseState& s);
void write_dump(std::ostream& out, const DenseState& d);
/// `<row> <row-binary> <col> <col-binary> <re> <im>` for every entry with
/// modulus above kPruneEpsilon, row-major.
void write_dump(std::ostream& out, const DensityMatrix& rho);

}  // namespace sparsim
