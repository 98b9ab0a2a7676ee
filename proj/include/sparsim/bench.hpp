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
#include <functional>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sparsim/circuit.hpp"

namespace sparsim {

inline constexpr std::string_view kCsvHeader = "scenario,engine,n,repeat,wall_seconds,map_size";
/// Scenario-name suffix of the measurement-only rows of superpos_measure.
inline constexpr std::string_view kMeasureOnlySuffix = "/measure";

struct BenchRecord {
    std::string scenario;
    EngineKind engine = EngineKind::bitwise;
    unsigned n = 0;
    unsigned repeat = 0;
    /// Empty when the cell could not run (capacity); printed as NA.
    std::optional<double> wall_seconds;
    /// Final map size; bitwise engine only.
    std::optional<std::size_t> map_size;
    std::uint64_t seed = 0;
};

struct BenchConfig {
    BuiltinFamily scenario = BuiltinFamily::ghz;
    std::vector<unsigned> sizes;
    std::vector<EngineKind> engines{EngineKind::bitwise};
    unsigned repeats = 5;
    std::uint64_t seed = 1;
    DenseCapacity capacity{};
    /// Each repeat re-runs the circuit until at least this much execution
    /// time has accumulated and reports the mean per run.
    double min_timed_seconds = 5e-3;
};

/// "a..b", "a,b,c", or a comma-separated mix such as "2..4,8".
std::vector<unsigned> parse_n_range(std::string_view spec);
/// Comma-separated engine names.
std::vector<EngineKind> parse_engine_list(std::string_view spec);

/// Runs every (n, engine, repeat) cell in order and hands each record to
/// `sink` as soon as it is measured. Timing covers circuit execution only;
/// engine construction happens outside the timed region. For
/// superpos_measure a second record per cell, with scenario
/// "superpos_measure/measure", holds the time spent after preparation
/// (total minus preparation).
void run_bench(const BenchConfig& config, const std::function<void(const BenchRecord&)>& sink);
std::vector<BenchRecord> run_bench(const BenchConfig& config);

std::string format_csv_row(const BenchRecord& r);
void write_csv(std::ostream& out, std::span<const BenchRecord> records);
/// Parses CSV written by write_csv; throws std::invalid_argument on a bad
/// header or row.
std::vector<BenchRecord> read_csv(std::istream& in);

enum class ScalingShape { linear_like, exponential_like };

std::string_view scaling_shape_name(ScalingShape shape);

struct ScalingPoint {
    unsigned n;
    double seconds;
};

struct ScalingFit {
    std::size_t points = 0;
    /// t = linear_intercept + linear_slope * n
    double linear_slope = 0;
    double linear_intercept = 0;
    /// log2 t = log2_intercept + log2_slope * n
    double log2_slope = 0;
    double log2_intercept = 0;
    /// Root-mean-square error of each model's prediction of t, divided by
    /// the mean of t, so the two models are compared on the same scale.
    double linear_residual = 0;
    double exponential_residual = 0;
    /// exponential_like iff the exponential model's residual is strictly
    /// lower.
    ScalingShape shape = ScalingShape::linear_like;
};

/// Fits both models to the per-n medians of `points`. Throws
/// std::invalid_argument with fewer than four distinct n or a
/// non-positive time.
ScalingFit fit_series(std::span<const ScalingPoint> points);

struct SeriesReport {
    std::string scenario;
    EngineKind engine = EngineKind::bitwise;
    std::optional<ScalingFit> fit;
    /// Set when the series could not be fitted.
    std::string error;
};

/// One report per (scenario, engine) in first-appearance order; NA rows
/// are skipped.
std::vector<SeriesReport> fit_scaling(std::span<const BenchRecord> records);
void write_fit_report(std::ostream& out, std::span<const SeriesReport> reports);

}  // namespace sparsim
