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
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "sparsim/bitcore.hpp"
#include "sparsim/state.hpp"

namespace sparsim {

/// Unitarity is checked exhaustively up to this arity and skipped above it.
inline constexpr unsigned kUnitarityCheckMaxArity = 10;
/// Tolerance on max |(U^dagger U - I)_ij| for user-supplied matrices.
inline constexpr double kUnitarityTolerance = 1e-8;

/// Rejected gate construction. For unitarity failures, deviation() is the
/// largest entrywise |U^dagger U - I|; otherwise it is 0.
class GateError : public std::invalid_argument {
  public:
    explicit GateError(const std::string& what, double deviation = 0.0)
        : std::invalid_argument(what), deviation_(deviation) {}

    double deviation() const noexcept { return deviation_; }

  private:
    double deviation_;
};

/// One output term of U|in>: amplitude times |out>.
struct GateTerm {
    Amplitude amplitude;
    BasisKey out;

    friend bool operator==(const GateTerm&, const GateTerm&) = default;
};

/// Row-major 2^w x 2^w matrix.
using DenseMatrix = std::vector<Amplitude>;

/// A w-qubit gate stored column by column: for each input basis key the
/// terms of U|in>. Immutable once built.
class SparseGate {
  public:
    /// u00, u01, u10, u11 in row-major order.
    static SparseGate from_matrix(const std::array<Amplitude, 4>& entries);
    /// U(rows[i], cols[i]) = values[i].
    static SparseGate from_sparse(
        unsigned arity, std::span<const BasisKey> rows, std::span<const BasisKey> cols,
        std::span<const Amplitude> values);
    /// Sum over i of |f(i)><i|; f must permute [0, 2^w).
    static SparseGate from_permutation(const std::function<BasisKey(BasisKey)>& f, unsigned arity);
    /// Dense 2^w x 2^w row-major matrix; requires arity <= kUnitarityCheckMaxArity.
    static SparseGate from_dense(unsigned arity, const DenseMatrix& matrix, double tolerance = kUnitarityTolerance);

    unsigned arity() const noexcept { return arity_; }
    /// Terms of U|in>; empty when the column holds no nonzero entry.
    std::span<const GateTerm> column(BasisKey in) const;
    /// Largest number of terms in any column.
    std::size_t max_fanout() const noexcept { return max_fanout_; }
    /// False when arity was too large for the exhaustive unitarity check.
    bool unitarity_verified() const noexcept { return unitarity_verified_; }

    /// Element-wise complex conjugate.
    SparseGate conjugate() const;
    /// Row-major dense matrix; requires arity <= kUnitarityCheckMaxArity.
    DenseMatrix to_matrix() const;

  private:
    SparseGate(unsigned arity, std::unordered_map<BasisKey, std::vector<GateTerm>> columns, bool verified);

    unsigned arity_ = 0;
    std::unordered_map<BasisKey, std::vector<GateTerm>> columns_;
    std::size_t max_fanout_ = 0;
    bool unitarity_verified_ = false;
};

/// max |(U^dagger U - I)_ij| of a row-major 2^w x 2^w matrix.
double unitarity_deviation(const DenseMatrix& matrix, std::size_t dimension);

/// The predefined single-qubit gates.
enum class GateKind { X, Y, Z, H, S, T, RX, RY, RZ, U1, U2, U3 };

/// Angles in radians. RX/RY/RZ read theta; U1 reads lambda; U2 reads phi and
/// lambda; U3 reads all three.
struct GateParams {
    double theta = 0;
    double phi = 0;
    double lambda = 0;
};

/// Case-insensitive lookup ("h", "U3", ...).
std::optional<GateKind> parse_gate_kind(std::string_view name);
/// Canonical uppercase name.
std::string_view gate_kind_name(GateKind kind);
/// Number of angles the gate takes (0 to 3).
unsigned gate_kind_param_count(GateKind kind);

std::array<Amplitude, 4> standard_matrix(GateKind kind, const GateParams& params = {});
SparseGate standard(GateKind kind, const GateParams& params = {});
/// Throws GateError for an unknown name.
SparseGate standard(std::string_view name, const GateParams& params = {});

}  // namespace sparsim
