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

#include "sparsim/gatelib.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <set>
#include <utility>

namespace sparsim {

namespace {

constexpr unsigned kMaxGateArity = 63;

void check_arity(unsigned arity) {
    if (arity == 0 || arity > kMaxGateArity) {
        throw GateError("gate arity must be in [1, 63], got " + std::to_string(arity));
    }
}

std::string format_deviation(double d) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", d);
    return buf;
}

// Deviation of U^dagger U from identity, computed straight from columns:
// (U^dagger U)_ab = <col a | col b>.
double column_deviation(unsigned arity, const std::unordered_map<BasisKey, std::vector<GateTerm>>& columns) {
    const std::size_t dim = std::size_t{1} << arity;
    std::vector<std::vector<GateTerm>> cols(dim);
    for (const auto& [in, terms] : columns) {
        cols[in] = terms;
    }
    std::vector<Amplitude> dense_a(dim);
    double worst = 0;
    for (std::size_t a = 0; a < dim; ++a) {
        std::fill(dense_a.begin(), dense_a.end(), Amplitude{});
        for (const auto& t : cols[a]) {
            dense_a[t.out] += t.amplitude;
        }
        for (std::size_t b = 0; b < dim; ++b) {
            Amplitude dot{};
            for (const auto& t : cols[b]) {
                dot += std::conj(dense_a[t.out]) * t.amplitude;
            }
            if (a == b) {
                dot -= 1.0;
            }
            worst = std::max(worst, std::abs(dot));
        }
    }
    return worst;
}

std::string upper(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::toupper(c); });
    return out;
}

}  // namespace

SparseGate::SparseGate(unsigned arity, std::unordered_map<BasisKey, std::vector<GateTerm>> columns, bool verified)
    : arity_(arity), columns_(std::move(columns)), unitarity_verified_(verified) {
    for (const auto& [in, terms] : columns_) {
        max_fanout_ = std::max(max_fanout_, terms.size());
    }
}

std::span<const GateTerm> SparseGate::column(BasisKey in) const {
    const auto it = columns_.find(in);
    if (it == columns_.end()) {
        return {};
    }
    return it->second;
}

SparseGate SparseGate::conjugate() const {
    auto cols = columns_;
    for (auto& [in, terms] : cols) {
        for (auto& t : terms) {
            t.amplitude = std::conj(t.amplitude);
        }
    }
    return SparseGate(arity_, std::move(cols), unitarity_verified_);
}

DenseMatrix SparseGate::to_matrix() const {
    if (arity_ > kUnitarityCheckMaxArity) {
        throw GateError("dense matrix requested for a gate of arity " + std::to_string(arity_));
    }
    const std::size_t dim = std::size_t{1} << arity_;
    DenseMatrix m(dim * dim);
    for (const auto& [in, terms] : columns_) {
        for (const auto& t : terms) {
            m[t.out * dim + in] += t.amplitude;
        }
    }
    return m;
}

double unitarity_deviation(const DenseMatrix& matrix, std::size_t dimension) {
    double worst = 0;
    for (std::size_t a = 0; a < dimension; ++a) {
        for (std::size_t b = 0; b < dimension; ++b) {
            Amplitude dot{};
            for (std::size_t r = 0; r < dimension; ++r) {
                dot += std::conj(matrix[r * dimension + a]) * matrix[r * dimension + b];
            }
            if (a == b) {
                dot -= 1.0;
            }
            worst = std::max(worst, std::abs(dot));
        }
    }
    return worst;
}

SparseGate SparseGate::from_dense(unsigned arity, const DenseMatrix& matrix, double tolerance) {
    check_arity(arity);
    if (arity > kUnitarityCheckMaxArity) {
        throw GateError("dense gate input limited to arity " + std::to_string(kUnitarityCheckMaxArity));
    }
    const std::size_t dim = std::size_t{1} << arity;
    if (matrix.size() != dim * dim) {
        throw GateError("dense gate of arity " + std::to_string(arity) + " needs " + std::to_string(dim * dim) +
                        " entries, got " + std::to_string(matrix.size()));
    }
    const double dev = unitarity_deviation(matrix, dim);
    if (!(dev <= tolerance)) {
        throw GateError("matrix is not unitary: max |U^dagger U - I| = " + format_deviation(dev), dev);
    }
    std::unordered_map<BasisKey, std::vector<GateTerm>> cols;
    for (std::size_t c = 0; c < dim; ++c) {
        for (std::size_t r = 0; r < dim; ++r) {
            const Amplitude v = matrix[r * dim + c];
            if (std::abs(v) > kPruneEpsilon) {
                cols[c].push_back({v, r});
            }
        }
    }
    return SparseGate(arity, std::move(cols), true);
}

SparseGate SparseGate::from_matrix(const std::array<Amplitude, 4>& entries) {
    return from_dense(1, DenseMatrix(entries.begin(), entries.end()));
}

SparseGate SparseGate::from_sparse(
    unsigned arity, std::span<const BasisKey> rows, std::span<const BasisKey> cols,
    std::span<const Amplitude> values) {
    check_arity(arity);
    if (rows.size() != cols.size() || rows.size() != values.size()) {
        throw GateError("row, column and value lists differ in length");
    }
    std::set<std::pair<BasisKey, BasisKey>> seen;
    std::unordered_map<BasisKey, std::vector<GateTerm>> columns;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (!key_fits(rows[i], arity) || !key_fits(cols[i], arity)) {
            throw GateError("entry (" + std::to_string(rows[i]) + ", " + std::to_string(cols[i]) +
                            ") out of range for arity " + std::to_string(arity));
        }
        if (!seen.emplace(rows[i], cols[i]).second) {
            throw GateError("duplicate entry (" + std::to_string(rows[i]) + ", " + std::to_string(cols[i]) + ")");
        }
        if (std::abs(values[i]) > kPruneEpsilon) {
            columns[cols[i]].push_back({values[i], rows[i]});
        }
    }
    bool verified = false;
    if (arity <= kUnitarityCheckMaxArity) {
        const double dev = column_deviation(arity, columns);
        if (!(dev <= kUnitarityTolerance)) {
            throw GateError("matrix is not unitary: max |U^dagger U - I| = " + format_deviation(dev), dev);
        }
        verified = true;
    }
    for (auto& [in, terms] : columns) {
        std::sort(terms.begin(), terms.end(), [](const GateTerm& l, const GateTerm& r) { return l.out < r.out; });
    }
    return SparseGate(arity, std::move(columns), verified);
}

SparseGate SparseGate::from_permutation(const std::function<BasisKey(BasisKey)>& f, unsigned arity) {
    check_arity(arity);
    if (arity > 30) {
        throw GateError("permutation gates are enumerated exhaustively; arity " + std::to_string(arity) +
                        " is too large");
    }
    const std::size_t dim = std::size_t{1} << arity;
    std::vector<bool> hit(dim, false);
    std::unordered_map<BasisKey, std::vector<GateTerm>> columns;
    columns.reserve(dim);
    for (BasisKey i = 0; i < dim; ++i) {
        const BasisKey out = f(i);
        if (out >= dim || hit[out]) {
            throw GateError("function is not a bijection on [0, " + std::to_string(dim) + "): f(" +
                            std::to_string(i) + ") = " + std::to_string(out));
        }
        hit[out] = true;
        columns[i].push_back({1.0, out});
    }
    return SparseGate(arity, std::move(columns), true);
}

std::optional<GateKind> parse_gate_kind(std::string_view name) {
    static const std::unordered_map<std::string, GateKind> kinds = {
        {"X", GateKind::X},   {"Y", GateKind::Y},   {"Z", GateKind::Z},   {"H", GateKind::H},
        {"S", GateKind::S},   {"T", GateKind::T},   {"RX", GateKind::RX}, {"RY", GateKind::RY},
        {"RZ", GateKind::RZ}, {"U1", GateKind::U1}, {"U2", GateKind::U2}, {"U3", GateKind::U3},
    };
    const auto it = kinds.find(upper(name));
    if (it == kinds.end()) {
        return std::nullopt;
    }
    return it->second;
}

std::string_view gate_kind_name(GateKind kind) {
    switch (kind) {
        case GateKind::X: return "X";
        case GateKind::Y: return "Y";
        case GateKind::Z: return "Z";
        case GateKind::H: return "H";
        case GateKind::S: return "S";
        case GateKind::T: return "T";
        case GateKind::RX: return "RX";
        case GateKind::RY: return "RY";
        case GateKind::RZ: return "RZ";
        case GateKind::U1: return "U1";
        case GateKind::U2: return "U2";
        case GateKind::U3: return "U3";
    }
    return "?";
}

unsigned gate_kind_param_count(GateKind kind) {
    switch (kind) {
        case GateKind::RX:
        case GateKind::RY:
        case GateKind::RZ:
        case GateKind::U1: return 1;
        case GateKind::U2: return 2;
        case GateKind::U3: return 3;
        default: return 0;
    }
}

std::array<Amplitude, 4> standard_matrix(GateKind kind, const GateParams& p) {
    using namespace std::complex_literals;
    const double r = 1.0 / std::numbers::sqrt2;
    const auto expi = [](double a) { return std::polar(1.0, a); };
    const double c = std::cos(p.theta / 2);
    const double s = std::sin(p.theta / 2);
    switch (kind) {
        case GateKind::X: return {0.0, 1.0, 1.0, 0.0};
        case GateKind::Y: return {0.0, -1i, 1i, 0.0};
        case GateKind::Z: return {1.0, 0.0, 0.0, -1.0};
        case GateKind::H: return {r, r, r, -r};
        case GateKind::S: return {1.0, 0.0, 0.0, 1i};
        case GateKind::T: return {1.0, 0.0, 0.0, expi(std::numbers::pi / 4)};
        case GateKind::RX: return {c, -1i * s, -1i * s, c};
        case GateKind::RY: return {c, -s, s, c};
        case GateKind::RZ: return {expi(-p.theta / 2), 0.0, 0.0, expi(p.theta / 2)};
        case GateKind::U1: return {1.0, 0.0, 0.0, expi(p.lambda)};
        case GateKind::U2:
            return {r, -r * expi(p.lambda), r * expi(p.phi), r * expi(p.lambda + p.phi)};
        case GateKind::U3:
            return {c, -expi(p.lambda) * s, expi(p.phi) * s, expi(p.lambda + p.phi) * c};
    }
    throw GateError("unknown gate kind");
}

SparseGate standard(GateKind kind, const GateParams& params) {
    for (double a : {params.theta, params.phi, params.lambda}) {
        if (!std::isfinite(a)) {
            throw GateError("gate angles must be finite");
        }
    }
    return SparseGate::from_matrix(standard_matrix(kind, params));
}

SparseGate standard(std::string_view name, const GateParams& params) {
    const auto kind = parse_gate_kind(name);
    if (!kind) {
        throw GateError("unknown gate '" + std::string(name) + "'");
    }
    return standard(*kind, params);
}

}  // namespace sparsim
