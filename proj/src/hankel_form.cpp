#include "hbz/bezier.hpp"

#include <cmath>
#include <numbers>

namespace hbz {

namespace {

// plain product; operator* goes through the C99 inf/nan recovery path
inline cplx mul(cplx a, cplx b)
{
    return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

cplx ipow(cplx base, std::size_t e)
{
    cplx r(1.0);
    while (e > 0) {
        if (e & 1U)
            r = mul(r, base);
        base = mul(base, base);
        e >>= 1U;
    }
    return r;
}

std::uint64_t axis_seed(std::uint64_t seed, std::size_t axis)
{
    return seed ^ (0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(axis) + 1));
}

HankelAxisModel factorize_shifted(const HankelMatrix& h, const FactorizationConfig& cfg)
{
    auto shifted = precondition_shift(h);
    HankelAxisModel ax;
    ax.factorization = factorize(shifted.matrix, cfg);
    ax.sigma = shifted.sigma;
    return ax;
}

} // namespace

HankelAxisModel build_axis_model(const HankelMatrix& h, const FactorizationConfig& cfg, PreconditionMode mode)
{
    if (h.max_abs() == 0.0) {
        HankelAxisModel ax;
        ax.zero = true;
        return ax;
    }
    const double cond = condition_estimate(h);
    HankelAxisModel ax;
    switch (mode) {
    case PreconditionMode::Always:
        ax = factorize_shifted(h, cfg);
        break;
    case PreconditionMode::Never:
        ax.factorization = factorize(h, cfg);
        break;
    case PreconditionMode::Auto:
        if (cond > kAutoPreconditionThreshold) {
            ax = factorize_shifted(h, cfg);
            break;
        }
        try {
            ax.factorization = factorize(h, cfg);
        } catch (const Error&) {
            ax = factorize_shifted(h, cfg);
        }
        break;
    }
    ax.condition = cond;
    return ax;
}

HankelCurveModel build_hankel_model(const ControlPolygon& poly, const FactorizationConfig& cfg, PreconditionMode mode)
{
    const std::size_t n = poly.size();
    if (n % 2 == 0)
        throw Error(ErrorCode::EvenControlCount,
            std::to_string(n) + " control points; the Hankel form needs an odd count");

    HankelCurveModel model;
    model.order = (n + 1) / 2;
    model.degree = n - 1;
    model.axes.reserve(poly.dim());
    for (std::size_t k = 0; k < poly.dim(); ++k) {
        const auto coords = poly.axis(k);
        FactorizationConfig axis_cfg = cfg;
        axis_cfg.rng_seed = axis_seed(cfg.rng_seed, k);
        try {
            model.axes.push_back(build_axis_model(hankel_from_coords(coords), axis_cfg, mode));
        } catch (const FactorizationFailed&) {
            throw;
        } catch (const Error& e) {
            throw FactorizationFailed(k, e.code(), e.what());
        }
    }
    return model;
}

HankelEval hankel_form_eval(const HankelCurveModel& model, double s)
{
    HankelEval out;
    out.point.resize(model.axes.size());
    for (std::size_t k = 0; k < model.axes.size(); ++k) {
        const auto& ax = model.axes[k];
        if (ax.zero) {
            out.point[k] = 0.0;
            continue;
        }
        const auto& f = ax.factorization;
        cplx acc(0.0);
        for (std::size_t i = 0; i < f.nodes.size(); ++i)
            acc += f.weights[i] * ipow(cplx(1.0 - s) + s * f.nodes[i], model.degree);
        double value = acc.real();
        if (ax.sigma)
            value -= *ax.sigma * reciprocal_form(model.order, model.degree + 1, s);
        const double remnant = std::abs(acc.imag());
        if (remnant > 1e-6 * (1.0 + std::abs(value)))
            throw Error(ErrorCode::ImaginaryRemnant,
                "axis " + std::to_string(k) + ": |Im| = " + std::to_string(remnant) + " at s = " + std::to_string(s));
        out.imag_remnant = std::max(out.imag_remnant, remnant);
        out.point[k] = value;
    }
    return out;
}

double reciprocal_form(std::size_t m, std::size_t n, double s)
{
    cplx acc(0.0);
    for (std::size_t j = 0; j < m; ++j) {
        const cplx w = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(m));
        acc += w * ipow(cplx(1.0 - s) + s * w, n - 1);
    }
    acc /= static_cast<double>(m);
    return acc.real();
}

} // namespace hbz
