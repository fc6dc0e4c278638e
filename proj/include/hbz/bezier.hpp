///
/// \file bezier.hpp
///
/// Bezier curve evaluation by four routes:
///
///  - casteljau:      the O(n^2) convex-combination recurrence (reference)
///  - hankel:         b(s) = sum_i d_i (1 - s + s t_i)^{n-1} from a Vandermonde
///                    factorization of each axis' Hankel matrix, O(m) per point
///  - hankel-precond: the same on H + sigma C_m, with the exchange-matrix
///                    term sigma * reciprocal_form(m, n, s) subtracted again
///  - pascal:         power-basis coefficients z = P_n G_n(-1) x evaluated by a
///                    Horner scheme, split at s = 1/2 through curve reversal
///
/// Hankel routes need an odd control count n = 2m - 1; even counts are
/// degree-elevated once by evaluate_curve.
///
#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hbz/hankel.hpp"

namespace hbz {

using Point = std::vector<double>;

/// n >= 2 control points of a common dimension d >= 1, all coordinates finite.
class ControlPolygon {
public:
    ControlPolygon() = default;
    explicit ControlPolygon(std::vector<Point> points);

    std::size_t size() const noexcept { return points_.size(); }
    std::size_t dim() const noexcept { return points_.empty() ? 0 : points_.front().size(); }
    const std::vector<Point>& points() const noexcept { return points_; }
    const Point& operator[](std::size_t i) const { return points_[i]; }

    /// Coordinates of every control point along one axis.
    std::vector<double> axis(std::size_t k) const;
    ControlPolygon reversed() const;

    bool operator==(const ControlPolygon&) const = default;

private:
    std::vector<Point> points_;
};

struct EvalGrid {
    std::vector<double> svalues;

    /// s = k / (count - 1), k = 0..count-1; {0} for count == 1.
    static EvalGrid uniform(std::size_t count = 129);
    void validate() const;
};

enum class Method { Casteljau, Hankel, HankelPrecond, Pascal };
enum class PreconditionMode { Auto, Always, Never };

std::string_view to_string(Method m) noexcept;
std::optional<Method> parse_method(std::string_view name) noexcept;
std::string_view to_string(PreconditionMode m) noexcept;
std::optional<PreconditionMode> parse_precondition(std::string_view name) noexcept;

/// Condition estimate above which Auto mode shifts the skew diagonal.
inline constexpr double kAutoPreconditionThreshold = 1e6;

struct CurveSamples {
    std::vector<double> svalues;
    std::vector<Point> points;
    Method method = Method::Casteljau;
    /// Largest |Im| dropped while taking real parts (hankel routes).
    double max_imag_remnant = 0.0;
    bool fell_back = false;
    std::string fallback_reason;
    bool degree_elevated = false;
};

struct HankelAxisModel {
    VandermondeFactorization factorization;
    /// Set when the axis was factorized as H + sigma C_m.
    std::optional<double> sigma;
    double condition = 0.0;
    /// All-zero axis: the curve coordinate is identically 0 and nothing is factorized.
    bool zero = false;
};

struct HankelCurveModel {
    std::size_t order = 0;  // m
    std::size_t degree = 0; // n - 1 = 2m - 2
    std::vector<HankelAxisModel> axes;
};

struct HankelEval {
    Point point;
    double imag_remnant = 0.0;
};

/// Degree-(n-1) Bernstein evaluation by de Casteljau's recurrence.
double casteljau_eval(std::span<const double> coords, double s);

/// Same curve with one more control point.
ControlPolygon degree_elevate(const ControlPolygon& poly);

/// Factorizes one axis Hankel under the given preconditioning policy. Auto
/// shifts when the condition estimate exceeds kAutoPreconditionThreshold, or
/// when the unshifted factorization fails. Errors propagate unwrapped.
HankelAxisModel build_axis_model(const HankelMatrix& h, const FactorizationConfig& cfg, PreconditionMode mode);

/// Factorizes every axis Hankel. Throws EvenControlCount or FactorizationFailed.
HankelCurveModel build_hankel_model(const ControlPolygon& poly, const FactorizationConfig& cfg,
    PreconditionMode mode = PreconditionMode::Auto);

/// Throws ImaginaryRemnant when |Im| > 1e-6 (1 + |Re|) on any axis.
HankelEval hankel_form_eval(const HankelCurveModel& model, double s);

/// e_m^T B_m(s) C_m B_m(s)^T e_m = (1/m) sum_j w^{j-1} (1 - s + s w^{j-1})^{n-1}, w = exp(2 pi i / m).
double reciprocal_form(std::size_t m, std::size_t n, double s);

struct PascalAxisModel {
    std::vector<double> z;          // P_n G_n(-1) x
    std::vector<double> z_reversed; // same for the reversed coordinates
};

struct PascalCurveModel {
    std::size_t n = 0;
    std::vector<PascalAxisModel> axes;
};

PascalAxisModel pascal_method_build(std::span<const double> coords);
PascalCurveModel pascal_method_build(const ControlPolygon& poly);

/// sum_k C(n-1,k) (-s)^k z_k for s < 1/2, otherwise the same form at 1 - s on z_reversed.
/// At s = 1/2 both halves are averaged.
double pascal_method_eval(std::span<const double> z, std::span<const double> z_reversed, double s, std::size_t n);

/// Anti-diagonals a_0..a_{n-1} of P_m^{-1} H P_m^{-T}; b(s) = sum_k a_k C(n-1,k) s^k.
std::vector<double> power_basis_coeffs(const HankelMatrix& h);
double power_basis_eval(std::span<const double> a, double s);

struct EvalOptions {
    FactorizationConfig factorization{};
    PreconditionMode precondition = PreconditionMode::Auto;
};

/// Evaluates the curve on the grid with the chosen route. Hankel routes fall
/// back to de Casteljau (fell_back set) when the factorization or the
/// imaginary-remnant check fails.
CurveSamples evaluate_curve(const ControlPolygon& poly, const EvalGrid& grid, Method method,
    const EvalOptions& opts = {});

/// sqrt of the summed squared coordinate differences over all samples.
double curve_distance(const CurveSamples& a, const CurveSamples& b);

} // namespace hbz
