#include "hbz/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <random>

namespace hbz {

namespace {

std::uint64_t splitmix(std::uint64_t x)
{
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

template <typename F>
double time_once(F&& f)
{
    const auto t0 = std::chrono::steady_clock::now();
    f();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(t1 - t0).count();
}

} // namespace

void BenchmarkConfig::validate() const
{
    if (n_values.empty())
        throw Error(ErrorCode::InvalidArgument, "no n values");
    for (std::size_t n : n_values)
        if (n < 3 || n % 2 == 0)
            throw Error(ErrorCode::InvalidArgument, "n values must be odd and at least 3, got " + std::to_string(n));
    if (repetitions < 1)
        throw Error(ErrorCode::InvalidArgument, "repetitions must be at least 1");
    if (grid_size < 1)
        throw Error(ErrorCode::InvalidArgument, "grid size must be at least 1");
    if (methods.empty())
        throw Error(ErrorCode::InvalidArgument, "no methods selected");
    if (condition_filter && !(condition_filter->first <= condition_filter->second))
        throw Error(ErrorCode::InvalidArgument, "empty condition range");
}

ControlPolygon generate_control_points(std::size_t n, std::size_t d, std::uint64_t seed)
{
    if (n < 2 || d < 1)
        throw Error(ErrorCode::InvalidArgument, "need n >= 2 points of dimension >= 1");
    std::mt19937_64 gen(seed);
    std::vector<Point> pts(n, Point(d));
    for (auto& p : pts)
        for (auto& c : p)
            c = static_cast<double>(gen() >> 11) * 0x1.0p-53;
    return ControlPolygon(std::move(pts));
}

double instance_condition(const ControlPolygon& poly)
{
    double cond = 0.0;
    for (std::size_t k = 0; k < poly.dim(); ++k)
        cond = std::max(cond, condition_estimate(hankel_from_coords(poly.axis(k))));
    return cond;
}

ControlPolygon generate_instance_in_range(std::size_t n, std::uint64_t seed, double lo, double hi)
{
    if (n % 2 == 0)
        throw Error(ErrorCode::EvenControlCount, "conditioned instances need an odd control count");
    for (int attempt = 0; attempt < kGenerationAttempts; ++attempt) {
        auto poly = generate_control_points(n, 2, splitmix(seed + static_cast<std::uint64_t>(attempt)));
        const double c = instance_condition(poly);
        if (c >= lo && c <= hi)
            return poly;
    }
    throw Error(ErrorCode::GenerationExhausted, "no instance with condition in range after "
            + std::to_string(kGenerationAttempts) + " attempts");
}

ControlPolygon generate_conditioned_instance(std::size_t n, std::uint64_t seed, Conditioning target)
{
    // bounds are strict in both directions
    if (target == Conditioning::Well)
        return generate_instance_in_range(n, seed, 0.0, std::nextafter(kWellConditionedMax, 0.0));
    return generate_instance_in_range(n, seed, std::nextafter(kIllConditionedMin, kWellConditionedMax),
        std::numeric_limits<double>::infinity());
}

double median(std::vector<double> samples)
{
    if (samples.empty())
        return 0.0;
    std::sort(samples.begin(), samples.end());
    const std::size_t mid = samples.size() / 2;
    return samples.size() % 2 == 1 ? samples[mid] : 0.5 * (samples[mid - 1] + samples[mid]);
}

BenchmarkReport run_benchmark(const BenchmarkConfig& cfg)
{
    cfg.validate();
    BenchmarkReport report;
    report.config = cfg;

    const EvalGrid grid = EvalGrid::uniform(cfg.grid_size);
    for (std::size_t n : cfg.n_values) {
        const std::uint64_t seed = splitmix(cfg.seed ^ (static_cast<std::uint64_t>(n) << 32));
        const ControlPolygon poly = cfg.condition_filter
            ? generate_instance_in_range(n, seed, cfg.condition_filter->first, cfg.condition_filter->second)
            : generate_control_points(n, 2, seed);
        const double cond = instance_condition(poly);
        const CurveSamples reference = evaluate_curve(poly, grid, Method::Casteljau);

        EvalOptions opts;
        opts.factorization.rng_seed = seed;
        opts.precondition = cfg.precondition;

        for (Method method : cfg.methods) {
            CurveSamples samples = evaluate_curve(poly, grid, method, opts); // warm-up, kept for the error column
            std::vector<double> times;
            times.reserve(static_cast<std::size_t>(cfg.repetitions));
            for (int r = 0; r < cfg.repetitions; ++r)
                times.push_back(time_once([&] { samples = evaluate_curve(poly, grid, method, opts); }));

            BenchmarkRow row;
            row.n = n;
            row.method = method;
            row.median_time_seconds = median(std::move(times));
            row.error_norm = method == Method::Casteljau ? 0.0 : curve_distance(reference, samples);
            row.condition_estimate = cond;
            row.fallback_count = samples.fell_back ? 1 : 0;
            report.rows.push_back(row);
        }
    }
    report.environment = "grid=" + std::to_string(cfg.grid_size) + " points, median of "
        + std::to_string(cfg.repetitions) + " runs, model build included in hankel timings";
    return report;
}

} // namespace hbz
