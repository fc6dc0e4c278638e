#include "hbz/bezier.hpp"
#include "hbz/pascal.hpp"

namespace hbz {

namespace {

std::vector<double> alternate_then_pascal(std::vector<double> x)
{
    for (std::size_t k = 1; k < x.size(); k += 2)
        x[k] = -x[k];
    return pascal_matvec_auto(std::span<const double>(x));
}

// sum_k C(n-1,k) u^k c_k, nested so that C(n-1,k) is built from the ratios (n-1-k)/(k+1)
double binomial_horner(std::span<const double> c, double u, std::size_t n)
{
    double acc = c[n - 1];
    for (std::size_t k = n - 1; k-- > 0;)
        acc = c[k] + u * (static_cast<double>(n - 1 - k) / static_cast<double>(k + 1)) * acc;
    return acc;
}

} // namespace

PascalAxisModel pascal_method_build(std::span<const double> coords)
{
    std::vector<double> x(coords.begin(), coords.end());
    PascalAxisModel ax;
    ax.z = alternate_then_pascal(x);
    ax.z_reversed = alternate_then_pascal(std::vector<double>(x.rbegin(), x.rend()));
    return ax;
}

PascalCurveModel pascal_method_build(const ControlPolygon& poly)
{
    PascalCurveModel model;
    model.n = poly.size();
    for (std::size_t k = 0; k < poly.dim(); ++k)
        model.axes.push_back(pascal_method_build(poly.axis(k)));
    return model;
}

double pascal_method_eval(std::span<const double> z, std::span<const double> z_reversed, double s, std::size_t n)
{
    if (n == 0)
        return 0.0;
    if (s == 0.5)
        return 0.5 * (binomial_horner(z, -0.5, n) + binomial_horner(z_reversed, -0.5, n));
    if (s < 0.5)
        return binomial_horner(z, -s, n);
    return binomial_horner(z_reversed, -(1.0 - s), n);
}

std::vector<double> power_basis_coeffs(const HankelMatrix& h)
{
    return hankel_congruence(std::span<const double>(h.real_antidiag()), -1.0);
}

double power_basis_eval(std::span<const double> a, double s)
{
    if (a.empty())
        return 0.0;
    return binomial_horner(a, s, a.size());
}

} // namespace hbz
