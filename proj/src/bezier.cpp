#include "hbz/bezier.hpp"

#include <algorithm>
#include <cmath>

namespace hbz {

ControlPolygon::ControlPolygon(std::vector<Point> points)
    : points_(std::move(points))
{
    if (points_.size() < 2)
        throw Error(ErrorCode::InvalidArgument, "a control polygon needs at least 2 points");
    const std::size_t d = points_.front().size();
    if (d == 0)
        throw Error(ErrorCode::InvalidArgument, "control points need at least one coordinate");
    for (const auto& p : points_) {
        if (p.size() != d)
            throw Error(ErrorCode::DimensionMismatch, "control points have mixed dimensions");
        if (!std::all_of(p.begin(), p.end(), [](double c) { return std::isfinite(c); }))
            throw Error(ErrorCode::InvalidArgument, "control point coordinate is not finite");
    }
}

std::vector<double> ControlPolygon::axis(std::size_t k) const
{
    std::vector<double> out(points_.size());
    for (std::size_t i = 0; i < points_.size(); ++i)
        out[i] = points_[i][k];
    return out;
}

ControlPolygon ControlPolygon::reversed() const
{
    return ControlPolygon(std::vector<Point>(points_.rbegin(), points_.rend()));
}

EvalGrid EvalGrid::uniform(std::size_t count)
{
    EvalGrid g;
    if (count == 0)
        return g;
    if (count == 1)
        return {{0.0}};
    g.svalues.resize(count);
    const double denom = static_cast<double>(count - 1);
    for (std::size_t k = 0; k < count; ++k)
        g.svalues[k] = static_cast<double>(k) / denom;
    return g;
}

void EvalGrid::validate() const
{
    if (svalues.empty())
        throw Error(ErrorCode::InvalidArgument, "evaluation grid is empty");
    for (std::size_t k = 0; k < svalues.size(); ++k) {
        if (!(svalues[k] >= 0.0 && svalues[k] <= 1.0))
            throw Error(ErrorCode::InvalidArgument, "grid value outside [0, 1]");
        if (k > 0 && svalues[k] < svalues[k - 1])
            throw Error(ErrorCode::InvalidArgument, "grid values must be ascending");
    }
}

std::string_view to_string(Method m) noexcept
{
    switch (m) {
    case Method::Casteljau: return "casteljau";
    case Method::Hankel: return "hankel";
    case Method::HankelPrecond: return "hankel-precond";
    case Method::Pascal: return "pascal";
    }
    return "?";
}

std::optional<Method> parse_method(std::string_view name) noexcept
{
    for (Method m : {Method::Casteljau, Method::Hankel, Method::HankelPrecond, Method::Pascal})
        if (to_string(m) == name)
            return m;
    return std::nullopt;
}

std::string_view to_string(PreconditionMode m) noexcept
{
    switch (m) {
    case PreconditionMode::Auto: return "auto";
    case PreconditionMode::Always: return "always";
    case PreconditionMode::Never: return "never";
    }
    return "?";
}

std::optional<PreconditionMode> parse_precondition(std::string_view name) noexcept
{
    for (PreconditionMode m : {PreconditionMode::Auto, PreconditionMode::Always, PreconditionMode::Never})
        if (to_string(m) == name)
            return m;
    return std::nullopt;
}

double casteljau_eval(std::span<const double> coords, double s)
{
    std::vector<double> x(coords.begin(), coords.end());
    const std::size_t n = x.size();
    const double ss = 1.0 - s;
    for (std::size_t k = 1; k < n; ++k)
        for (std::size_t t = n - 1; t >= k; --t)
            x[t] = ss * x[t - 1] + s * x[t];
    return x.back();
}

ControlPolygon degree_elevate(const ControlPolygon& poly)
{
    const std::size_t n = poly.size();
    const std::size_t d = poly.dim();
    std::vector<Point> out(n + 1, Point(d));
    out.front() = poly[0];
    out.back() = poly[n - 1];
    for (std::size_t i = 1; i < n; ++i) {
        const double a = static_cast<double>(i) / static_cast<double>(n);
        for (std::size_t k = 0; k < d; ++k)
            out[i][k] = a * poly[i - 1][k] + (1.0 - a) * poly[i][k];
    }
    return ControlPolygon(std::move(out));
}

namespace {

CurveSamples casteljau_samples(const ControlPolygon& poly, const EvalGrid& grid)
{
    CurveSamples out;
    out.svalues = grid.svalues;
    out.points.assign(grid.svalues.size(), Point(poly.dim()));
    for (std::size_t k = 0; k < poly.dim(); ++k) {
        const auto x = poly.axis(k);
        for (std::size_t j = 0; j < grid.svalues.size(); ++j)
            out.points[j][k] = casteljau_eval(x, grid.svalues[j]);
    }
    return out;
}

CurveSamples hankel_samples(const ControlPolygon& poly, const EvalGrid& grid, const EvalOptions& opts,
    PreconditionMode mode)
{
    const HankelCurveModel model = build_hankel_model(poly, opts.factorization, mode);
    CurveSamples out;
    out.svalues = grid.svalues;
    out.points.reserve(grid.svalues.size());
    for (double s : grid.svalues) {
        HankelEval e = hankel_form_eval(model, s);
        out.max_imag_remnant = std::max(out.max_imag_remnant, e.imag_remnant);
        out.points.push_back(std::move(e.point));
    }
    return out;
}

CurveSamples pascal_samples(const ControlPolygon& poly, const EvalGrid& grid)
{
    const PascalCurveModel model = pascal_method_build(poly);
    CurveSamples out;
    out.svalues = grid.svalues;
    out.points.assign(grid.svalues.size(), Point(poly.dim()));
    for (std::size_t k = 0; k < model.axes.size(); ++k) {
        const auto& ax = model.axes[k];
        for (std::size_t j = 0; j < grid.svalues.size(); ++j)
            out.points[j][k] = pascal_method_eval(ax.z, ax.z_reversed, grid.svalues[j], model.n);
    }
    return out;
}

} // namespace

CurveSamples evaluate_curve(const ControlPolygon& poly, const EvalGrid& grid, Method method, const EvalOptions& opts)
{
    grid.validate();
    CurveSamples out;
    switch (method) {
    case Method::Casteljau:
        out = casteljau_samples(poly, grid);
        break;
    case Method::Pascal:
        out = pascal_samples(poly, grid);
        break;
    case Method::Hankel:
    case Method::HankelPrecond: {
        const PreconditionMode mode = method == Method::HankelPrecond ? PreconditionMode::Always : opts.precondition;
        const bool elevate = poly.size() % 2 == 0;
        const ControlPolygon& src = elevate ? degree_elevate(poly) : poly;
        try {
            out = hankel_samples(src, grid, opts, mode);
        } catch (const Error& e) {
            if (e.code() != ErrorCode::FactorizationFailed && e.code() != ErrorCode::ImaginaryRemnant)
                throw;
            out = casteljau_samples(poly, grid);
            out.fell_back = true;
            out.fallback_reason = e.what();
        }
        out.degree_elevated = elevate;
        break;
    }
    }
    out.method = method;
    return out;
}

double curve_distance(const CurveSamples& a, const CurveSamples& b)
{
    if (a.points.size() != b.points.size())
        throw Error(ErrorCode::InvalidArgument, "sample sets differ in size");
    double acc = 0.0;
    for (std::size_t j = 0; j < a.points.size(); ++j) {
        if (a.points[j].size() != b.points[j].size())
            throw Error(ErrorCode::DimensionMismatch, "sample points differ in dimension");
        for (std::size_t k = 0; k < a.points[j].size(); ++k) {
            const double d = a.points[j][k] - b.points[j][k];
            acc += d * d;
        }
    }
    return std::sqrt(acc);
}

} // namespace hbz
