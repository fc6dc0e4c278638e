// Aberth-Ehrlich simultaneous iteration for the companion polynomial
// x^m - p_{m-1} x^{m-1} - ... - p_0.

#include "hbz/hankel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace hbz {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Horner {
    cplx value;
    cplx derivative;
    // sum |a_k| |z|^k, the rounding scale of value
    double magnitude;
};

// coeffs are a_0..a_m of the monic polynomial (a_m = 1)
Horner horner(const std::vector<cplx>& coeffs, cplx z)
{
    const double az = std::abs(z);
    cplx v = coeffs.back(), d(0.0);
    double mag = std::abs(coeffs.back());
    for (std::size_t k = coeffs.size() - 1; k-- > 0;) {
        d = d * z + v;
        v = v * z + coeffs[k];
        mag = mag * az + std::abs(coeffs[k]);
    }
    return {v, d, mag};
}

} // namespace

std::vector<cplx> companion_spectrum(std::span<const cplx> p, const FactorizationConfig& cfg)
{
    const std::size_t m = p.size();
    if (m == 0)
        throw Error(ErrorCode::InvalidArgument, "empty companion coefficient vector");
    if (m == 1)
        return {p[0]};

    std::vector<cplx> coeffs(m + 1);
    double pmax = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
        coeffs[k] = -p[k];
        pmax = std::max(pmax, std::abs(p[k]));
    }
    coeffs[m] = 1.0;

    // start on the circle of radius 1 + max|p_k|; the angular offset breaks
    // the symmetry with real-coefficient root pairs
    const double radius = 1.0 + pmax;
    std::vector<cplx> z(m);
    for (std::size_t k = 0; k < m; ++k)
        z[k] = std::polar(radius, 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(m) + 0.4);

    std::vector<bool> done(m, false);
    std::size_t remaining = m;
    for (int iter = 0; iter < cfg.max_root_iterations && remaining > 0; ++iter) {
        for (std::size_t i = 0; i < m; ++i) {
            if (done[i])
                continue;
            const Horner h = horner(coeffs, z[i]);
            // value is at rounding level: z[i] is a root to working precision
            if (std::abs(h.value) <= 4.0 * static_cast<double>(m) * kEps * h.magnitude) {
                done[i] = true;
                --remaining;
                continue;
            }
            cplx repulsion(0.0);
            for (std::size_t j = 0; j < m; ++j)
                if (j != i)
                    repulsion += 1.0 / (z[i] - z[j]);
            cplx step;
            if (h.derivative == cplx(0.0)) {
                step = h.value / (h.value * repulsion - 1.0);
            } else {
                const cplx ratio = h.value / h.derivative;
                step = ratio / (1.0 - ratio * repulsion);
            }
            if (!std::isfinite(step.real()) || !std::isfinite(step.imag()))
                throw Error(ErrorCode::NonConvergence, "Aberth step is not finite");
            z[i] -= step;
            if (std::abs(step) < cfg.root_tol * (1.0 + std::abs(z[i]))) {
                done[i] = true;
                --remaining;
            }
        }
    }
    if (remaining > 0)
        throw Error(ErrorCode::NonConvergence,
            std::to_string(remaining) + " of " + std::to_string(m) + " roots did not converge in "
                + std::to_string(cfg.max_root_iterations) + " iterations");

    std::sort(z.begin(), z.end(), [](cplx a, cplx b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });

    double zmax = 0.0, gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < m; ++i) {
        zmax = std::max(zmax, std::abs(z[i]));
        for (std::size_t j = i + 1; j < m; ++j)
            gap = std::min(gap, std::abs(z[i] - z[j]));
    }
    if (gap < cfg.separation_tol * std::max(zmax, 1.0))
        throw Error(ErrorCode::MultipleRoots, "companion spectrum is not simple (min separation "
                + std::to_string(gap) + ")");
    return z;
}

} // namespace hbz
