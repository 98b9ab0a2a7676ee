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

#include "sparsim/engine_dense.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "sparsim/errors.hpp"

namespace sparsim {

namespace {

using Column = std::vector<GateTerm>;

// Stride kernels over an amplitude vector of `total` qubits, qubit 0 being
// the most significant index bit. A density matrix is driven through the
// same kernels as a 2n-qubit vector.

void check_index(Qubit q, unsigned n) {
    if (q >= n) {
        throw std::out_of_range("qubit " + std::to_string(q) + " out of range for " + std::to_string(n) + " qubits");
    }
}

void check_controls(Qubit target, std::span<const Qubit> controls, unsigned n) {
    check_index(target, n);
    for (std::size_t i = 0; i < controls.size(); ++i) {
        check_index(controls[i], n);
        if (controls[i] == target) {
            throw std::invalid_argument("qubit " + std::to_string(target) + " is both target and control");
        }
        if (std::find(controls.begin(), controls.begin() + i, controls[i]) != controls.begin() + i) {
            throw std::invalid_argument("control qubit " + std::to_string(controls[i]) + " listed twice");
        }
    }
}

void check_probability(double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument("channel probability must be in [0, 1]");
    }
}

std::vector<Column> columns_of(const SparseGate& gate, bool conjugate) {
    std::vector<Column> cols(std::size_t{1} << gate.arity());
    for (std::size_t y = 0; y < cols.size(); ++y) {
        for (GateTerm t : gate.column(y)) {
            if (conjugate) {
                t.amplitude = std::conj(t.amplitude);
            }
            cols[y].push_back(t);
        }
    }
    return cols;
}

std::vector<Column> columns_of(const DenseMatrix& m, unsigned w, bool conjugate) {
    const std::size_t dim = std::size_t{1} << w;
    std::vector<Column> cols(dim);
    for (std::size_t c = 0; c < dim; ++c) {
        for (std::size_t r = 0; r < dim; ++r) {
            const Amplitude v = conjugate ? std::conj(m[r * dim + c]) : m[r * dim + c];
            if (v != Amplitude{}) {
                cols[c].push_back({v, r});
            }
        }
    }
    return cols;
}

// Applies the 2^w x 2^w operator given by `cols` to qubits [q, q + w).
void apply_columns(std::span<Amplitude> amps, unsigned total, const std::vector<Column>& cols, unsigned w, Qubit q) {
    if (q >= total || w > total - q) {
        throw std::out_of_range(
            "gate of arity " + std::to_string(w) + " at qubit " + std::to_string(q) + " exceeds register of " +
            std::to_string(total) + " qubits");
    }
    const unsigned right = total - q - w;
    const std::size_t dim = std::size_t{1} << w;
    const std::size_t outer = std::size_t{1} << q;
    const std::size_t inner = std::size_t{1} << right;
    std::vector<Amplitude> in(dim);
    std::vector<Amplitude> out(dim);
    for (std::size_t o = 0; o < outer; ++o) {
        for (std::size_t i = 0; i < inner; ++i) {
            const std::size_t base = (o << (total - q)) | i;
            for (std::size_t y = 0; y < dim; ++y) {
                in[y] = amps[base | (y << right)];
            }
            std::fill(out.begin(), out.end(), Amplitude{});
            for (std::size_t y = 0; y < dim; ++y) {
                if (in[y] == Amplitude{}) {
                    continue;
                }
                for (const GateTerm& t : cols[y]) {
                    out[t.out] += t.amplitude * in[y];
                }
            }
            for (std::size_t y = 0; y < dim; ++y) {
                amps[base | (y << right)] = out[y];
            }
        }
    }
}

std::size_t mask_of(std::span<const Qubit> qubits, unsigned total, unsigned offset) {
    std::size_t mask = 0;
    for (Qubit c : qubits) {
        mask |= std::size_t{1} << (total - (c + offset) - 1);
    }
    return mask;
}

void controlled_x(std::span<Amplitude> amps, std::size_t ctrl, std::size_t flip) {
    for (std::size_t idx = 0; idx < amps.size(); ++idx) {
        if ((idx & ctrl) == ctrl && !(idx & flip)) {
            std::swap(amps[idx], amps[idx | flip]);
        }
    }
}

void masked_phase(std::span<Amplitude> amps, std::size_t mask, Amplitude phase) {
    for (std::size_t idx = 0; idx < amps.size(); ++idx) {
        if ((idx & mask) == mask) {
            amps[idx] *= phase;
        }
    }
}

void swap_positions(std::span<Amplitude> amps, std::size_t ma, std::size_t mb) {
    for (std::size_t idx = 0; idx < amps.size(); ++idx) {
        if ((idx & ma) && !(idx & mb)) {
            std::swap(amps[idx], amps[idx ^ ma ^ mb]);
        }
    }
}

void check_unit_phase(Amplitude phase) {
    if (std::abs(std::abs(phase) - 1.0) > 1e-9) {
        throw std::invalid_argument("controlled phase must have modulus 1");
    }
}

void check_qft_range(Qubit first, Qubit last, unsigned n) {
    if (first > last || last >= n) {
        throw std::out_of_range("invalid QFT range [" + std::to_string(first) + ", " + std::to_string(last) + "]");
    }
}

constexpr unsigned kDftMatrixMaxWidth = 10;

template <class Engine>
void qft_by_circuit(Engine& engine, Qubit first, Qubit last) {
    for (Qubit j = first; j <= last; ++j) {
        engine.hadamard(j);
        for (Qubit k = j + 1; k <= last; ++k) {
            const Qubit ctrl[] = {k};
            engine.cphase(std::polar(1.0, std::numbers::pi / std::ldexp(1.0, static_cast<int>(k - j))), j, ctrl);
        }
    }
    for (Qubit i = 0; first + i < last - i; ++i) {
        engine.swap(first + i, last - i);
    }
}

const SparseGate& hadamard_gate() {
    static const SparseGate h = standard(GateKind::H);
    return h;
}

int pick_outcome(double p0, double p1, double draw) {
    const double total = p0 + p1;
    if (!(std::abs(total - 1.0) <= kNormTolerance)) {
        throw InvariantError("measurement on a state with total probability " + std::to_string(total));
    }
    return (p1 == 0 || (p0 > 0 && draw * total < p0)) ? 0 : 1;
}

void apply_kraus_sum(DensityMatrix& rho, const KrausChannel& channel, Qubit q) {
    const unsigned n = rho.num_qubits();
    check_index(q, n);
    std::vector<Amplitude> acc(rho.entries().size());
    std::vector<Amplitude> term(acc.size());
    for (const Matrix2& k : channel.operators) {
        const DenseMatrix km(k.begin(), k.end());
        std::copy(rho.entries().begin(), rho.entries().end(), term.begin());
        apply_columns(term, 2 * n, columns_of(km, 1, false), 1, q);
        apply_columns(term, 2 * n, columns_of(km, 1, true), 1, n + q);
        for (std::size_t i = 0; i < acc.size(); ++i) {
            acc[i] += term[i];
        }
    }
    std::copy(acc.begin(), acc.end(), rho.entries().begin());
}

Matrix2 pauli(PauliAxis axis) {
    using namespace std::complex_literals;
    switch (axis) {
        case PauliAxis::X: return {0.0, 1.0, 1.0, 0.0};
        case PauliAxis::Y: return {0.0, -1i, 1i, 0.0};
        case PauliAxis::Z: return {1.0, 0.0, 0.0, -1.0};
    }
    throw std::invalid_argument("unknown Pauli axis");
}

Matrix2 scaled(const Matrix2& m, double s) { return {m[0] * s, m[1] * s, m[2] * s, m[3] * s}; }

constexpr Matrix2 kIdentity2 = {1.0, 0.0, 0.0, 1.0};

}  // namespace

double KrausChannel::completeness_deviation() const {
    Matrix2 sum{};
    for (const Matrix2& k : operators) {
        for (int a = 0; a < 2; ++a) {
            for (int b = 0; b < 2; ++b) {
                sum[2 * a + b] += std::conj(k[a]) * k[b] + std::conj(k[2 + a]) * k[2 + b];
            }
        }
    }
    double worst = 0;
    for (int i = 0; i < 4; ++i) {
        worst = std::max(worst, std::abs(sum[i] - kIdentity2[i]));
    }
    return worst;
}

KrausChannel flip_kraus(PauliAxis axis, double p) {
    check_probability(p);
    return {{scaled(kIdentity2, std::sqrt(1 - p)), scaled(pauli(axis), std::sqrt(p))}};
}

KrausChannel amp_damping_kraus(double p) {
    check_probability(p);
    return {{Matrix2{1.0, 0.0, 0.0, std::sqrt(1 - p)}, Matrix2{0.0, std::sqrt(p), 0.0, 0.0}}};
}

KrausChannel depolarizing_kraus(double p) {
    check_probability(p);
    const double s = std::sqrt(p / 4);
    return {{scaled(kIdentity2, std::sqrt(1 - 3 * p / 4)), scaled(pauli(PauliAxis::X), s),
             scaled(pauli(PauliAxis::Y), s), scaled(pauli(PauliAxis::Z), s)}};
}

DenseMatrix dft_matrix(unsigned w) {
    const std::size_t dim = std::size_t{1} << w;
    const double norm = 1.0 / std::sqrt(static_cast<double>(dim));
    DenseMatrix m(dim * dim);
    for (std::size_t j = 0; j < dim; ++j) {
        for (std::size_t k = 0; k < dim; ++k) {
            // Reduce j*k mod dim first to keep the angle small and exact.
            const double angle = 2 * std::numbers::pi * static_cast<double>((j * k) % dim) / static_cast<double>(dim);
            m[j * dim + k] = std::polar(norm, angle);
        }
    }
    return m;
}

DenseState dense_apply(const DenseState& state, const SparseGate& gate, Qubit q) {
    DenseState out = state;
    apply_columns(out.amplitudes(), out.num_qubits(), columns_of(gate, false), gate.arity(), q);
    return out;
}

DensityMatrix dm_apply(const DensityMatrix& rho, const SparseGate& gate, Qubit q) {
    const unsigned n = rho.num_qubits();
    if (q + gate.arity() > n) {
        throw std::out_of_range(
            "gate of arity " + std::to_string(gate.arity()) + " at qubit " + std::to_string(q) +
            " exceeds register of " + std::to_string(n) + " qubits");
    }
    DensityMatrix out = rho;
    apply_columns(out.entries(), 2 * n, columns_of(gate, false), gate.arity(), q);
    apply_columns(out.entries(), 2 * n, columns_of(gate, true), gate.arity(), n + q);
    return out;
}

DensityMatrix apply_channel(const DensityMatrix& rho, const KrausChannel& channel, Qubit q) {
    DensityMatrix out = rho;
    apply_kraus_sum(out, channel, q);
    return out;
}

DensityMatrix flip_channel(const DensityMatrix& rho, PauliAxis axis, Qubit q, double p) {
    return apply_channel(rho, flip_kraus(axis, p), q);
}

DensityMatrix amp_damping(const DensityMatrix& rho, Qubit q, double p) {
    return apply_channel(rho, amp_damping_kraus(p), q);
}

DensityMatrix dpl_channel(const DensityMatrix& rho, Qubit q, double p) {
    return apply_channel(rho, depolarizing_kraus(p), q);
}

std::pair<DenseState, int> dense_measure(const DenseState& state, Qubit q, double draw) {
    const unsigned n = state.num_qubits();
    check_index(q, n);
    const std::size_t mask = std::size_t{1} << bit_position(n, q);
    const auto amps = state.amplitudes();
    double p0 = 0;
    double p1 = 0;
    for (std::size_t i = 0; i < amps.size(); ++i) {
        ((i & mask) ? p1 : p0) += std::norm(amps[i]);
    }
    const int outcome = pick_outcome(p0, p1, draw);
    const double scale = 1.0 / std::sqrt(outcome == 0 ? p0 : p1);
    DenseState out = state;
    auto out_amps = out.amplitudes();
    for (std::size_t i = 0; i < out_amps.size(); ++i) {
        const bool keep = ((i & mask) != 0) == (outcome == 1);
        out_amps[i] = keep ? out_amps[i] * scale : Amplitude{};
    }
    return {std::move(out), outcome};
}

std::pair<DensityMatrix, int> dense_measure(const DensityMatrix& rho, Qubit q, double draw) {
    const unsigned n = rho.num_qubits();
    check_index(q, n);
    const std::size_t mask = std::size_t{1} << bit_position(n, q);
    double p0 = 0;
    double p1 = 0;
    for (std::size_t i = 0; i < rho.dimension(); ++i) {
        ((i & mask) ? p1 : p0) += rho(i, i).real();
    }
    const int outcome = pick_outcome(p0, p1, draw);
    const double scale = 1.0 / (outcome == 0 ? p0 : p1);
    DensityMatrix out = rho;
    for (std::size_t r = 0; r < out.dimension(); ++r) {
        for (std::size_t c = 0; c < out.dimension(); ++c) {
            const bool keep = ((r & mask) != 0) == (outcome == 1) && ((c & mask) != 0) == (outcome == 1);
            out(r, c) = keep ? out(r, c) * scale : Amplitude{};
        }
    }
    return {std::move(out), outcome};
}

// ---------------------------------------------------------------------------
// DenseEngine

DenseEngine::DenseEngine(unsigned n, std::uint64_t seed, DenseCapacity cap)
    : state_(n, cap), record_(n), rng_(seed) {}

DenseEngine::DenseEngine(DenseState state, std::uint64_t seed)
    : state_(std::move(state)), record_(state_.num_qubits()), rng_(seed) {}

void DenseEngine::apply_gate(const SparseGate& gate, Qubit q) {
    apply_columns(state_.amplitudes(), num_qubits(), columns_of(gate, false), gate.arity(), q);
}

void DenseEngine::hadamard(Qubit q) {
    check_index(q, num_qubits());
    apply_gate(hadamard_gate(), q);
}

void DenseEngine::cnot(Qubit target, std::span<const Qubit> controls) {
    const unsigned n = num_qubits();
    check_controls(target, controls, n);
    const Qubit t[] = {target};
    controlled_x(state_.amplitudes(), mask_of(controls, n, 0), mask_of(t, n, 0));
}

void DenseEngine::cphase(Amplitude phase, Qubit target, std::span<const Qubit> controls) {
    const unsigned n = num_qubits();
    check_controls(target, controls, n);
    check_unit_phase(phase);
    const Qubit t[] = {target};
    masked_phase(state_.amplitudes(), mask_of(controls, n, 0) | mask_of(t, n, 0), phase);
}

void DenseEngine::swap(Qubit a, Qubit b) {
    const unsigned n = num_qubits();
    check_index(a, n);
    check_index(b, n);
    if (a == b) {
        return;
    }
    const Qubit qa[] = {a};
    const Qubit qb[] = {b};
    swap_positions(state_.amplitudes(), mask_of(qa, n, 0), mask_of(qb, n, 0));
}

void DenseEngine::qft(Qubit first, Qubit last) {
    check_qft_range(first, last, num_qubits());
    const unsigned w = last - first + 1;
    if (w <= kDftMatrixMaxWidth) {
        apply_columns(state_.amplitudes(), num_qubits(), columns_of(dft_matrix(w), w, false), w, first);
        return;
    }
    qft_by_circuit(*this, first, last);
}

int DenseEngine::measure(Qubit q) {
    check_index(q, num_qubits());
    return measure(q, rng_.uniform());
}

int DenseEngine::measure(Qubit q, double draw) {
    auto [next, outcome] = dense_measure(state_, q, draw);
    state_ = std::move(next);
    record_.set(q, outcome);
    return outcome;
}

std::string DenseEngine::measure_all() {
    std::string bits;
    for (Qubit q = 0; q < num_qubits(); ++q) {
        bits.push_back(static_cast<char>('0' + measure(q)));
    }
    return bits;
}

// ---------------------------------------------------------------------------
// DensityEngine

DensityEngine::DensityEngine(unsigned n, std::uint64_t seed, DenseCapacity cap)
    : rho_(n, cap), record_(n), rng_(seed) {}

DensityEngine::DensityEngine(DensityMatrix rho, std::uint64_t seed)
    : rho_(std::move(rho)), record_(rho_.num_qubits()), rng_(seed) {}

void DensityEngine::apply_gate(const SparseGate& gate, Qubit q) { rho_ = dm_apply(rho_, gate, q); }

void DensityEngine::hadamard(Qubit q) {
    check_index(q, num_qubits());
    apply_gate(hadamard_gate(), q);
}

void DensityEngine::cnot(Qubit target, std::span<const Qubit> controls) {
    const unsigned n = num_qubits();
    check_controls(target, controls, n);
    const Qubit t[] = {target};
    controlled_x(rho_.entries(), mask_of(controls, 2 * n, 0), mask_of(t, 2 * n, 0));
    controlled_x(rho_.entries(), mask_of(controls, 2 * n, n), mask_of(t, 2 * n, n));
}

void DensityEngine::cphase(Amplitude phase, Qubit target, std::span<const Qubit> controls) {
    const unsigned n = num_qubits();
    check_controls(target, controls, n);
    check_unit_phase(phase);
    const Qubit t[] = {target};
    masked_phase(rho_.entries(), mask_of(controls, 2 * n, 0) | mask_of(t, 2 * n, 0), phase);
    masked_phase(rho_.entries(), mask_of(controls, 2 * n, n) | mask_of(t, 2 * n, n), std::conj(phase));
}

void DensityEngine::swap(Qubit a, Qubit b) {
    const unsigned n = num_qubits();
    check_index(a, n);
    check_index(b, n);
    if (a == b) {
        return;
    }
    const Qubit qa[] = {a};
    const Qubit qb[] = {b};
    swap_positions(rho_.entries(), mask_of(qa, 2 * n, 0), mask_of(qb, 2 * n, 0));
    swap_positions(rho_.entries(), mask_of(qa, 2 * n, n), mask_of(qb, 2 * n, n));
}

void DensityEngine::qft(Qubit first, Qubit last) {
    const unsigned n = num_qubits();
    check_qft_range(first, last, n);
    const unsigned w = last - first + 1;
    if (w > kDftMatrixMaxWidth) {
        qft_by_circuit(*this, first, last);
        return;
    }
    const DenseMatrix f = dft_matrix(w);
    apply_columns(rho_.entries(), 2 * n, columns_of(f, w, false), w, first);
    apply_columns(rho_.entries(), 2 * n, columns_of(f, w, true), w, n + first);
}

void DensityEngine::apply_channel(const KrausChannel& channel, Qubit q) { apply_kraus_sum(rho_, channel, q); }

int DensityEngine::measure(Qubit q) {
    check_index(q, num_qubits());
    return measure(q, rng_.uniform());
}

int DensityEngine::measure(Qubit q, double draw) {
    auto [next, outcome] = dense_measure(rho_, q, draw);
    rho_ = std::move(next);
    record_.set(q, outcome);
    return outcome;
}

std::string DensityEngine::measure_all() {
    std::string bits;
    for (Qubit q = 0; q < num_qubits(); ++q) {
        bits.push_back(static_cast<char>('0' + measure(q)));
    }
    return bits;
}

}  // namespace sparsim
