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

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sparsim/gatelib.hpp"
#include "sparsim/rng.hpp"
#include "sparsim/state.hpp"

namespace sparsim {

using Matrix2 = std::array<Amplitude, 4>;

/// Single-qubit trace-preserving channel rho -> sum_i K_i rho K_i^dagger.
struct KrausChannel {
    std::vector<Matrix2> operators;

    /// max |(sum_i K_i^dagger K_i - I)_ab|
    double completeness_deviation() const;
};

enum class PauliAxis { X, Y, Z };

/// {sqrt(1-p) I, sqrt(p) P}
KrausChannel flip_kraus(PauliAxis axis, double p);
/// {diag(1, sqrt(1-p)), sqrt(p) |0><1|}
KrausChannel amp_damping_kraus(double p);
/// {sqrt(1-3p/4) I, sqrt(p/4) X, sqrt(p/4) Y, sqrt(p/4) Z}
KrausChannel depolarizing_kraus(double p);

/// (I (x) U (x) I)|psi> with U on qubits [q, q + w).
DenseState dense_apply(const DenseState& state, const SparseGate& gate, Qubit q);
/// U rho U^dagger with U on qubits [q, q + w).
DensityMatrix dm_apply(const DensityMatrix& rho, const SparseGate& gate, Qubit q);

DensityMatrix apply_channel(const DensityMatrix& rho, const KrausChannel& channel, Qubit q);
/// (1 - p) rho + p P rho P
DensityMatrix flip_channel(const DensityMatrix& rho, PauliAxis axis, Qubit q, double p);
DensityMatrix amp_damping(const DensityMatrix& rho, Qubit q, double p);
/// (1 - 3p/4) rho + p/4 (X rho X + Y rho Y + Z rho Z)
DensityMatrix dpl_channel(const DensityMatrix& rho, Qubit q, double p);

/// Born-rule measurement of qubit q with uniform sample `draw` in [0, 1):
/// outcome 0 iff draw < p0. Returns the renormalized projection.
std::pair<DenseState, int> dense_measure(const DenseState& state, Qubit q, double draw);
std::pair<DensityMatrix, int> dense_measure(const DensityMatrix& rho, Qubit q, double draw);

/// State-vector engine with the same operation surface as BitwiseEngine.
class DenseEngine {
  public:
    explicit DenseEngine(unsigned n, std::uint64_t seed = 0, DenseCapacity cap = {});
    explicit DenseEngine(DenseState state, std::uint64_t seed = 0);

    unsigned num_qubits() const noexcept { return state_.num_qubits(); }
    const DenseState& state() const noexcept { return state_; }
    const MeasurementRecord& record() const noexcept { return record_; }

    void apply_gate(const SparseGate& gate, Qubit q);
    void hadamard(Qubit q);
    void cnot(Qubit target, std::span<const Qubit> controls);
    void cphase(Amplitude phase, Qubit target, std::span<const Qubit> controls);
    void swap(Qubit a, Qubit b);
    /// Applies the DFT matrix to [first, last] directly for spans of up to
    /// ten qubits, and the Hadamard/controlled-phase circuit beyond that.
    void qft(Qubit first, Qubit last);
    int measure(Qubit q);
    int measure(Qubit q, double draw);
    std::string measure_all();

  private:
    DenseState state_;
    MeasurementRecord record_;
    Rng rng_;
};

/// Density-matrix engine. Gates act as U rho U^dagger; noise enters through
/// apply_channel and the named channels.
class DensityEngine {
  public:
    explicit DensityEngine(unsigned n, std::uint64_t seed = 0, DenseCapacity cap = {});
    explicit DensityEngine(DensityMatrix rho, std::uint64_t seed = 0);

    unsigned num_qubits() const noexcept { return rho_.num_qubits(); }
    const DensityMatrix& state() const noexcept { return rho_; }
    const MeasurementRecord& record() const noexcept { return record_; }

    void apply_gate(const SparseGate& gate, Qubit q);
    void hadamard(Qubit q);
    void cnot(Qubit target, std::span<const Qubit> controls);
    void cphase(Amplitude phase, Qubit target, std::span<const Qubit> controls);
    void swap(Qubit a, Qubit b);
    void qft(Qubit first, Qubit last);
    void apply_channel(const KrausChannel& channel, Qubit q);
    int measure(Qubit q);
    int measure(Qubit q, double draw);
    std::string measure_all();

  private:
    DensityMatrix rho_;
    MeasurementRecord record_;
    Rng rng_;
};

/// Row-major DFT matrix on w qubits: F(j, k) = exp(2 pi i j k / 2^w) / sqrt(2^w).
DenseMatrix dft_matrix(unsigned w);

}  // namespace sparsim
