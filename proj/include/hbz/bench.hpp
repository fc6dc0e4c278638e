///
/// \file bench.hpp
///
/// Seeded random control polygons, a median-of-repetitions timing harness
/// and the report writers (csv, markdown, json).
///
#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hbz/bezier.hpp"

namespace hbz {

enum class Conditioning { Well, Ill };

/// Per-axis condition bound for Conditioning::Well.
inline constexpr double kWellConditionedMax = 1e4;
/// Per-axis condition bound for Conditioning::Ill.
inline constexpr double kIllConditionedMin = 5e2;
inline constexpr int kGenerationAttempts = 1000;

struct BenchmarkConfig {
    std::vector<std::size_t> n_values{15, 23, 31, 39, 47, 55, 63, 71, 79};
    std::size_t grid_size = 129;
    int repetitions = 11;
    std::uint64_t seed = 1;
    std::vector<Method> methods{Method::Casteljau, Method::Hankel, Method::HankelPrecond, Method::Pascal};
    /// Instances are redrawn until the max per-axis condition estimate lies in [first, second].
    std::optional<std::pair<double, double>> condition_filter;
    PreconditionMode precondition = PreconditionMode::Auto;

    void validate() const;
    bool operator==(const BenchmarkConfig&) const = default;
};

struct BenchmarkRow {
    std::size_t n = 0;
    Method method = Method::Casteljau;
    double median_time_seconds = 0.0;
    /// ||B_method - B_casteljau||_2 over every grid point and axis.
    double error_norm = 0.0;
    /// Max over axes; +inf for a singular axis.
    double condition_estimate = 0.0;
    int fallback_count = 0;

    bool operator==(const BenchmarkRow&) const = default;
};

struct BenchmarkReport {
    BenchmarkConfig config;
    std::vector<BenchmarkRow> rows;
    std::string environment;

    bool operator==(const BenchmarkReport&) const = default;
};

/// n points with coordinates uniform in [0, 1), reproducible for a fixed seed.
ControlPolygon generate_control_points(std::size_t n, std::size_t d, std::uint64_t seed);

/// Max over axes of condition_estimate of the coordinate Hankel (n must be odd).
double instance_condition(const ControlPolygon& poly);

/// Redraws 2-D polygons until instance_condition lies in [lo, hi].
/// Throws GenerationExhausted after kGenerationAttempts.
ControlPolygon generate_instance_in_range(std::size_t n, std::uint64_t seed, double lo, double hi);

/// cond < 1e4 (Well) or cond > 5e2 (Ill). n must be odd.
ControlPolygon generate_conditioned_instance(std::size_t n, std::uint64_t seed, Conditioning target);

/// Median over the samples; the mean of the middle pair for even counts.
double median(std::vector<double> samples);

BenchmarkReport run_benchmark(const BenchmarkConfig& cfg);

enum class ReportFormat { Csv, Markdown, Json };

std::optional<ReportFormat> parse_report_format(std::string_view name) noexcept;
std::string emit_report(const BenchmarkReport& report, ReportFormat format);
BenchmarkReport parse_report_json(std::string_view text);

/// Shortest decimal that reads back to the same double.
std::string format_double(double v);

} // namespace hbz
