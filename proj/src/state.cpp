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

#include "sparsim/state.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>

#include "sparsim/errors.hpp"

namespace sparsim {

namespace {

void check_register_size(unsigned n) {
    if (n == 0 || n > kMaxQubits) {
        throw std::invalid_argument("register size must be in [1, 64], got " + std::to_string(n));
    }
}

void check_vector_capacity(unsigned n, const DenseCapacity& cap) {
    if (n > cap.vector_qubits) {
        throw CapacityError(
            "dense state of " + std::to_string(n) + " qubits exceeds capacity of " +
            std::to_string(cap.vector_qubits) + " qubits");
    }
}

void check_density_capacity(unsigned n, const DenseCapacity& cap) {
    if (n > cap.density_qubits) {
        throw CapacityError(
            "density matrix of " + std::to_string(n) + " qubits exceeds capacity of " +
            std::to_string(cap.density_qubits) + " qubits");
    }
}

void check_same_size(unsigned a, unsigned b) {
    if (a != b) {
        throw std::invalid_argument(
            "register size mismatch: " + std::to_string(a) + " vs " + std::to_string(b) + " qubits");
    }
}

// Avoids printing "-0" for amplitudes that are numerically zero but signed.
double unsign_zero(double v) { return v == 0.0 ? 0.0 : v; }

}  // namespace

DenseCapacity DenseCapacity::from_env() {
    DenseCapacity cap;
    const char* raw = std::getenv("SPARSIM_DENSE_CAP");
    if (raw == nullptr || *raw == '\0') {
        return cap;
    }
    const std::string text(raw);
    unsigned value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || value == 0 || value > kMaxQubits) {
        throw std::invalid_argument("SPARSIM_DENSE_CAP must be an integer in [1, 64], got '" + text + "'");
    }
    cap.vector_qubits = value;
    cap.density_qubits = value / 2;
    return cap;
}

SparseState::SparseState(unsigned n) : n_(n) {
    check_register_size(n);
    amplitudes_.emplace(0, Amplitude{1.0, 0.0});
}

SparseState SparseState::from_amplitudes(unsigned n, AmplitudeMap amplitudes) {
    check_register_size(n);
    for (const auto& [key, amp] : amplitudes) {
        if (!key_fits(key, n)) {
            throw std::out_of_range("key " + std::to_string(key) + " does not fit in " + std::to_string(n) + " qubits");
        }
    }
    return SparseState(n, std::move(amplitudes));
}

Amplitude SparseState::amplitude(BasisKey key) const {
    const auto it = amplitudes_.find(key);
    return it == amplitudes_.end() ? Amplitude{} : it->second;
}

double SparseState::norm_squared() const {
    double total = 0;
    for (const auto& [key, amp] : amplitudes_) {
        total += std::norm(amp);
    }
    return total;
}

SparseState init_sparse(unsigned n) { return SparseState(n); }

DenseState::DenseState(unsigned n, DenseCapacity cap) : n_(n) {
    check_register_size(n);
    check_vector_capacity(n, cap);
    amplitudes_.assign(std::size_t{1} << n, Amplitude{});
    amplitudes_[0] = 1.0;
}

DenseState::DenseState(unsigned n, std::vector<Amplitude> amplitudes, DenseCapacity cap) : n_(n) {
    check_register_size(n);
    check_vector_capacity(n, cap);
    if (amplitudes.size() != (std::size_t{1} << n)) {
        throw std::invalid_argument("dense state of " + std::to_string(n) + " qubits needs 2^n amplitudes");
    }
    amplitudes_ = std::move(amplitudes);
}

double DenseState::norm_squared() const {
    double total = 0;
    for (const auto& a : amplitudes_) {
        total += std::norm(a);
    }
    return total;
}

DensityMatrix::DensityMatrix(unsigned n, DenseCapacity cap) : n_(n) {
    check_register_size(n);
    check_density_capacity(n, cap);
    entries_.assign(std::size_t{1} << (2 * n), Amplitude{});
    entries_[0] = 1.0;
}

DensityMatrix::DensityMatrix(unsigned n, std::vector<Amplitude> entries, DenseCapacity cap) : n_(n) {
    check_register_size(n);
    check_density_capacity(n, cap);
    if (entries.size() != (std::size_t{1} << (2 * n))) {
        throw std::invalid_argument("density matrix of " + std::to_string(n) + " qubits needs 4^n entries");
    }
    entries_ = std::move(entries);
}

DensityMatrix DensityMatrix::from_pure(const DenseState& psi, DenseCapacity cap) {
    DensityMatrix rho(psi.num_qubits(), cap);
    const auto amps = psi.amplitudes();
    const std::size_t dim = amps.size();
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = 0; c < dim; ++c) {
            rho(r, c) = amps[r] * std::conj(amps[c]);
        }
    }
    return rho;
}

Amplitude DensityMatrix::trace() const {
    Amplitude total{};
    for (std::size_t i = 0; i < dimension(); ++i) {
        total += (*this)(i, i);
    }
    return total;
}

double DensityMatrix::hermiticity_deviation() const {
    double worst = 0;
    for (std::size_t r = 0; r < dimension(); ++r) {
        for (std::size_t c = r; c < dimension(); ++c) {
            worst = std::max(worst, std::abs((*this)(r, c) - std::conj((*this)(c, r))));
        }
    }
    return worst;
}

bool MeasurementRecord::any_measured() const {
    return std::any_of(bits_.begin(), bits_.end(), [](const auto& b) { return b.has_value(); });
}

std::string MeasurementRecord::to_string() const {
    std::string s;
    s.reserve(bits_.size());
    for (const auto& b : bits_) {
        s.push_back(b ? static_cast<char>('0' + *b) : '-');
    }
    return s;
}

void prune_in_place(AmplitudeMap& amplitudes) {
    std::erase_if(amplitudes, [](const auto& kv) { return std::abs(kv.second) <= kPruneEpsilon; });
}

SparseState prune(const SparseState& s) {
    SparseState out = s;
    prune_in_place(out.amplitudes());
    return out;
}

DenseState sparse_to_dense(const SparseState& s, DenseCapacity cap) {
    const unsigned n = s.num_qubits();
    check_vector_capacity(n, cap);
    std::vector<Amplitude> amps(std::size_t{1} << n);
    for (const auto& [key, amp] : s.amplitudes()) {
        amps[key] = amp;
    }
    return DenseState(n, std::move(amps), cap);
}

SparseState dense_to_sparse(const DenseState& d) {
    AmplitudeMap amps;
    const auto v = d.amplitudes();
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (std::abs(v[i]) > kPruneEpsilon) {
            amps.emplace(i, v[i]);
        }
    }
    return SparseState::from_amplitudes(d.num_qubits(), std::move(amps));
}

double fidelity_check(const SparseState& a, const SparseState& b) {
    check_same_size(a.num_qubits(), b.num_qubits());
    double worst = 0;
    for (const auto& [key, amp] : a.amplitudes()) {
        worst = std::max(worst, std::abs(amp - b.amplitude(key)));
    }
    for (const auto& [key, amp] : b.amplitudes()) {
        if (!a.amplitudes().contains(key)) {
            worst = std::max(worst, std::abs(amp));
        }
    }
    return worst;
}

double fidelity_check(const DenseState& a, const DenseState& b) {
    check_same_size(a.num_qubits(), b.num_qubits());
    double worst = 0;
    for (std::size_t i = 0; i < a.amplitudes().size(); ++i) {
        worst = std::max(worst, std::abs(a.amplitudes()[i] - b.amplitudes()[i]));
    }
    return worst;
}

double fidelity_check(const SparseState& a, const DenseState& b) {
    check_same_size(a.num_qubits(), b.num_qubits());
    double worst = 0;
    const auto v = b.amplitudes();
    for (std::size_t i = 0; i < v.size(); ++i) {
        worst = std::max(worst, std::abs(a.amplitude(i) - v[i]));
    }
    return worst;
}

double fidelity_check(const DenseState& a, const SparseState& b) { return fidelity_check(b, a); }

std::vector<DumpEntry> dump_entries(const SparseState& s) {
    std::vector<DumpEntry> out;
    out.reserve(s.size());
    for (const auto& [key, amp] : s.amplitudes()) {
        out.push_back({key, amp.real(), amp.imag()});
    }
    std::sort(out.begin(), out.end(), [](const DumpEntry& l, const DumpEntry& r) { return l.key < r.key; });
    return out;
}

std::vector<DumpEntry> dump_entries(const DenseState& d) {
    std::vector<DumpEntry> out;
    const auto v = d.amplitudes();
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (std::abs(v[i]) > kPruneEpsilon) {
            out.push_back({i, v[i].real(), v[i].imag()});
        }
    }
    return out;
}

std::string format_dump_line(const DumpEntry& e, unsigned n) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%.17g %.17g", unsign_zero(e.re), unsign_zero(e.im));
    return std::to_string(e.key) + " " + to_binary(e.key, n) + " " + buf;
}

void write_dump(std::ostream& out, const SparseState& s) {
    for (const auto& e : dump_entries(s)) {
        out << format_dump_line(e, s.num_qubits()) << '\n';
    }
}

void write_dump(std::ostream& out, const DenseState& d) {
    for (const auto& e : dump_entries(d)) {
        out << format_dump_line(e, d.num_qubits()) << '\n';
    }
}

void write_dump(std::ostream& out, const DensityMatrix& rho) {
    const unsigned n = rho.num_qubits();
    char buf[96];
    for (std::size_t r = 0; r < rho.dimension(); ++r) {
        for (std::size_t c = 0; c < rho.dimension(); ++c) {
            const Amplitude v = rho(r, c);
            if (std::abs(v) <= kPruneEpsilon) {
                continue;
            }
            std::snprintf(buf, sizeof buf, "%.17g %.17g", unsign_zero(v.real()), unsign_zero(v.imag()));
            out << r << ' ' << to_binary(r, n) << ' ' << c << ' ' << to_binary(c, n) << ' ' << buf << '\n';
        }
    }
}

}  // namespace sparsim
