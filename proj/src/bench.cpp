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

#include "sparsim/bench.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <stdexcept>
#include <type_traits>

#include "sparsim/errors.hpp"

namespace sparsim {

namespace {

using Clock = std::chrono::steady_clock;

constexpr std::size_t kMaxIterations = 1'000'000;

unsigned parse_unsigned(std::string_view tok) {
    unsigned v = 0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (tok.empty() || ec != std::errc{} || ptr != tok.data() + tok.size()) {
        throw std::invalid_argument("malformed size '" + std::string(tok) + "'");
    }
    return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const std::size_t end = s.find(sep, start);
        parts.push_back(s.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start));
        if (end == std::string_view::npos) {
            return parts;
        }
        start = end + 1;
    }
}

struct Timing {
    double total = 0;
    double tail = 0;  // time spent on the trailing measure_all, if any
    std::optional<std::size_t> map_size;
};

template <class Engine, class Make>
Timing time_circuit(const Circuit& c, const Make& make, double min_seconds, bool split_tail) {
    const std::size_t tail_start =
        split_tail && !c.instructions.empty() ? c.instructions.size() - 1 : c.instructions.size();
    Clock::duration total{};
    Clock::duration tail{};
    std::size_t iterations = 0;
    std::optional<std::size_t> map_size;
    while (iterations < kMaxIterations) {
        Engine engine = make();
        const auto t0 = Clock::now();
        for (std::size_t i = 0; i < tail_start; ++i) {
            execute(engine, c, c.instructions[i]);
        }
        const auto t1 = Clock::now();
        for (std::size_t i = tail_start; i < c.instructions.size(); ++i) {
            execute(engine, c, c.instructions[i]);
        }
        const auto t2 = Clock::now();
        total += t2 - t0;
        tail += t2 - t1;
        ++iterations;
        if constexpr (std::is_same_v<Engine, BitwiseEngine>) {
            map_size = engine.map_size();
        }
        if (std::chrono::duration<double>(total).count() >= min_seconds) {
            break;
        }
    }
    const double per = 1.0 / static_cast<double>(iterations);
    return Timing{std::chrono::duration<double>(total).count() * per,
                  std::chrono::duration<double>(tail).count() * per, map_size};
}

Timing time_cell(const Circuit& c, EngineKind kind, const BenchConfig& cfg, bool split_tail) {
    switch (kind) {
        case EngineKind::bitwise:
            return time_circuit<BitwiseEngine>(
                c, [&] { return BitwiseEngine(c.num_qubits, cfg.seed); }, cfg.min_timed_seconds, split_tail);
        case EngineKind::dense:
            return time_circuit<DenseEngine>(
                c, [&] { return DenseEngine(c.num_qubits, cfg.seed, cfg.capacity); }, cfg.min_timed_seconds,
                split_tail);
        case EngineKind::density:
            return time_circuit<DensityEngine>(
                c, [&] { return DensityEngine(c.num_qubits, cfg.seed, cfg.capacity); }, cfg.min_timed_seconds,
                split_tail);
    }
    throw std::logic_error("unknown engine kind");
}

bool fits_engine(unsigned width, EngineKind kind, const DenseCapacity& cap) {
    switch (kind) {
        case EngineKind::bitwise: return width <= kMaxQubits;
        case EngineKind::dense: return width <= cap.vector_qubits;
        case EngineKind::density: return width <= cap.density_qubits;
    }
    return false;
}

std::string format_seconds(double s) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", s);
    return buf;
}

struct LineFit {
    double slope;
    double intercept;
};

LineFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxy = 0;
    double sxx = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    const double slope = sxy / sxx;
    return {slope, my - slope * mx};
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t m = v.size() / 2;
    return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

}  // namespace

std::vector<unsigned> parse_n_range(std::string_view spec) {
    std::vector<unsigned> sizes;
    for (std::string_view part : split(spec, ',')) {
        const std::size_t dots = part.find("..");
        if (dots == std::string_view::npos) {
            sizes.push_back(parse_unsigned(part));
            continue;
        }
        const unsigned a = parse_unsigned(part.substr(0, dots));
        const unsigned b = parse_unsigned(part.substr(dots + 2));
        if (a > b) {
            throw std::invalid_argument("empty size range '" + std::string(part) + "'");
        }
        for (unsigned n = a; n <= b; ++n) {
            sizes.push_back(n);
        }
    }
    return sizes;
}

std::vector<EngineKind> parse_engine_list(std::string_view spec) {
    std::vector<EngineKind> kinds;
    for (std::string_view part : split(spec, ',')) {
        const auto kind = parse_engine_kind(part);
        if (!kind) {
            throw std::invalid_argument("unknown engine '" + std::string(part) + "'");
        }
        kinds.push_back(*kind);
    }
    return kinds;
}

void run_bench(const BenchConfig& cfg, const std::function<void(const BenchRecord&)>& sink) {
    const std::string scenario(builtin_family_name(cfg.scenario));
    const bool split_tail = cfg.scenario == BuiltinFamily::superpos_measure;
    const std::string tail_scenario = scenario + std::string(kMeasureOnlySuffix);
    for (unsigned n : cfg.sizes) {
        std::optional<Circuit> circuit;
        try {
            circuit = emit_builtin(cfg.scenario, n);
        } catch (const std::invalid_argument&) {
        }
        for (EngineKind kind : cfg.engines) {
            for (unsigned rep = 0; rep < cfg.repeats; ++rep) {
                BenchRecord rec{scenario, kind, n, rep, std::nullopt, std::nullopt, cfg.seed};
                BenchRecord tail = rec;
                tail.scenario = tail_scenario;
                if (circuit && fits_engine(circuit->num_qubits, kind, cfg.capacity)) {
                    try {
                        const Timing t = time_cell(*circuit, kind, cfg, split_tail);
                        rec.wall_seconds = t.total;
                        rec.map_size = t.map_size;
                        tail.wall_seconds = t.tail;
                        tail.map_size = t.map_size;
                    } catch (const CapacityError&) {
                    } catch (const std::bad_alloc&) {
                    }
                }
                sink(rec);
                if (split_tail) {
                    sink(tail);
                }
            }
        }
    }
}

std::vector<BenchRecord> run_bench(const BenchConfig& config) {
    std::vector<BenchRecord> out;
    run_bench(config, [&out](const BenchRecord& r) { out.push_back(r); });
    return out;
}

std::string format_csv_row(const BenchRecord& r) {
    std::string row = r.scenario + "," + std::string(engine_kind_name(r.engine)) + "," + std::to_string(r.n) + "," +
                      std::to_string(r.repeat) + ",";
    row += r.wall_seconds ? format_seconds(*r.wall_seconds) : "NA";
    row += ",";
    row += r.map_size ? std::to_string(*r.map_size) : "NA";
    return row;
}

void write_csv(std::ostream& out, std::span<const BenchRecord> records) {
    out << kCsvHeader << '\n';
    for (const auto& r : records) {
        out << format_csv_row(r) << '\n';
    }
}

std::vector<BenchRecord> read_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) {
        throw std::invalid_argument("empty CSV input");
    }
    if (!line.empty() && line.back() == '\r') {
        line.pop_back();
    }
    if (line != kCsvHeader) {
        throw std::invalid_argument("unexpected CSV header '" + line + "'");
    }
    std::vector<BenchRecord> records;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        const auto fields = split(line, ',');
        if (fields.size() != 6) {
            throw std::invalid_argument("CSV line " + std::to_string(line_no) + ": expected 6 fields");
        }
        try {
            BenchRecord r;
            r.scenario = std::string(fields[0]);
            const auto kind = parse_engine_kind(fields[1]);
            if (!kind) {
                throw std::invalid_argument("unknown engine '" + std::string(fields[1]) + "'");
            }
            r.engine = *kind;
            r.n = parse_unsigned(fields[2]);
            r.repeat = parse_unsigned(fields[3]);
            if (fields[4] != "NA") {
                double v = 0;
                const auto [ptr, ec] = std::from_chars(fields[4].data(), fields[4].data() + fields[4].size(), v);
                if (ec != std::errc{} || ptr != fields[4].data() + fields[4].size()) {
                    throw std::invalid_argument("malformed time '" + std::string(fields[4]) + "'");
                }
                r.wall_seconds = v;
            }
            if (fields[5] != "NA") {
                r.map_size = parse_unsigned(fields[5]);
            }
            records.push_back(std::move(r));
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument("CSV line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return records;
}

std::string_view scaling_shape_name(ScalingShape shape) {
    return shape == ScalingShape::linear_like ? "linear-like" : "exponential-like";
}

ScalingFit fit_series(std::span<const ScalingPoint> points) {
    std::map<unsigned, std::vector<double>> by_n;
    for (const auto& p : points) {
        if (!(p.seconds > 0)) {
            throw std::invalid_argument("times must be positive");
        }
        by_n[p.n].push_back(p.seconds);
    }
    if (by_n.size() < 4) {
        throw std::invalid_argument("need at least 4 distinct sizes, got " + std::to_string(by_n.size()));
    }
    std::vector<double> xs;
    std::vector<double> ts;
    std::vector<double> logs;
    for (const auto& [n, samples] : by_n) {
        xs.push_back(n);
        ts.push_back(median(samples));
        logs.push_back(std::log2(ts.back()));
    }
    const LineFit lin = least_squares(xs, ts);
    const LineFit ex = least_squares(xs, logs);
    const double mean_t = std::accumulate(ts.begin(), ts.end(), 0.0) / static_cast<double>(ts.size());
    double lin_sq = 0;
    double exp_sq = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double lin_pred = lin.intercept + lin.slope * xs[i];
        const double exp_pred = std::exp2(ex.intercept + ex.slope * xs[i]);
        lin_sq += (lin_pred - ts[i]) * (lin_pred - ts[i]);
        exp_sq += (exp_pred - ts[i]) * (exp_pred - ts[i]);
    }
    const double count = static_cast<double>(xs.size());
    ScalingFit fit;
    fit.points = xs.size();
    fit.linear_slope = lin.slope;
    fit.linear_intercept = lin.intercept;
    fit.log2_slope = ex.slope;
    fit.log2_intercept = ex.intercept;
    fit.linear_residual = std::sqrt(lin_sq / count) / mean_t;
    fit.exponential_residual = std::sqrt(exp_sq / count) / mean_t;
    fit.shape = fit.exponential_residual < fit.linear_residual ? ScalingShape::exponential_like
                                                               : ScalingShape::linear_like;
    return fit;
}

std::vector<SeriesReport> fit_scaling(std::span<const BenchRecord> records) {
    std::vector<SeriesReport> reports;
    std::vector<std::vector<ScalingPoint>> series;
    for (const auto& r : records) {
        auto it = std::find_if(reports.begin(), reports.end(), [&](const SeriesReport& s) {
            return s.scenario == r.scenario && s.engine == r.engine;
        });
        if (it == reports.end()) {
            reports.push_back(SeriesReport{r.scenario, r.engine, std::nullopt, {}});
            series.emplace_back();
            it = reports.end() - 1;
        }
        if (r.wall_seconds) {
            series[static_cast<std::size_t>(it - reports.begin())].push_back({r.n, *r.wall_seconds});
        }
    }
    for (std::size_t i = 0; i < reports.size(); ++i) {
        try {
            reports[i].fit = fit_series(series[i]);
        } catch (const std::invalid_argument& e) {
            reports[i].error = e.what();
        }
    }
    return reports;
}

void write_fit_report(std::ostream& out, std::span<const SeriesReport> reports) {
    out << "scenario,engine,points,linear_slope,linear_residual,log2_slope,exponential_residual,shape\n";
    char buf[256];
    for (const auto& r : reports) {
        if (!r.fit) {
            out << r.scenario << ',' << engine_kind_name(r.engine) << ",NA,NA,NA,NA,NA,error: " << r.error << '\n';
            continue;
        }
        const ScalingFit& f = *r.fit;
        std::snprintf(buf, sizeof buf, "%zu,%.6g,%.6g,%.6g,%.6g,", f.points, f.linear_slope, f.linear_residual,
                      f.log2_slope, f.exponential_residual);
        out << r.scenario << ',' << engine_kind_name(r.engine) << ',' << buf << scaling_shape_name(f.shape) << '\n';
    }
}

}  // namespace sparsim
