#include "hbz/pascal.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include <unsupported/Eigen/FFT>

namespace hbz {

std::vector<double> ToeplitzKernel::column() const
{
    std::vector<double> c(order);
    const double log_t = std::log(t);
    for (std::size_t k = 0; k < order; ++k)
        c[k] = std::exp(static_cast<double>(k) * log_t - std::lgamma(static_cast<double>(k) + 1.0));
    return c;
}

std::vector<std::vector<double>> binomial_rows(std::size_t n)
{
    std::vector<std::vector<double>> rows(n + 1);
    rows[0] = {1.0};
    for (std::size_t i = 1; i <= n; ++i) {
        rows[i].assign(i + 1, 1.0);
        for (std::size_t j = 1; j < i; ++j)
            rows[i][j] = rows[i - 1][j - 1] + rows[i - 1][j];
    }
    return rows;
}

DenseMatrix<double> dense_bernstein(std::size_t n, double s)
{
    const auto ni = static_cast<Eigen::Index>(n);
    const auto binom = binomial_rows(n == 0 ? 0 : n - 1);
    DenseMatrix<double> b = DenseMatrix<double>::Zero(ni, ni);
    for (Eigen::Index i = 0; i < ni; ++i)
        for (Eigen::Index j = 0; j <= i; ++j)
            b(i, j) = binom[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]
                * std::pow(s, static_cast<double>(j)) * std::pow(1.0 - s, static_cast<double>(i - j));
    return b;
}

double toeplitz_scale_param(std::size_t n)
{
    if (n < 2)
        return 1.0;
    const double nm1 = static_cast<double>(n - 1);
    return std::exp(std::lgamma(nm1 + 1.0) / nm1);
}

std::vector<cplx> pascal_matvec_fast(std::span<const cplx> v)
{
    const std::size_t n = v.size();
    if (n <= 1)
        return {v.begin(), v.end()};

    const double t = toeplitz_scale_param(n);
    const double log_t = std::log(t);
    // log of t^k / k!; D2 = diag(exp(lc)), D1 = diag(exp(-lc))
    std::vector<double> lc(n);
    for (std::size_t k = 0; k < n; ++k)
        lc[k] = static_cast<double>(k) * log_t - std::lgamma(static_cast<double>(k) + 1.0);

    const std::size_t len = std::bit_ceil(2 * n - 1);
    std::vector<cplx> kernel(len, cplx(0.0)), signal(len, cplx(0.0));
    for (std::size_t k = 0; k < n; ++k) {
        kernel[k] = std::exp(lc[k]);
        signal[k] = v[k] * std::exp(lc[k]);
    }

    // one FFT object per call: its twiddle cache is never shared across threads
    Eigen::FFT<double> fft;
    std::vector<cplx> fk, fs, prod;
    fft.fwd(fk, kernel);
    fft.fwd(fs, signal);
    for (std::size_t k = 0; k < len; ++k)
        fs[k] *= fk[k];
    fft.inv(prod, fs);

    std::vector<cplx> y(n);
    for (std::size_t k = 0; k < n; ++k)
        y[k] = prod[k] * std::exp(-lc[k]);
    return y;
}

std::vector<double> pascal_matvec_fast(std::span<const double> v)
{
    std::vector<cplx> vc(v.begin(), v.end());
    const auto yc = pascal_matvec_fast(std::span<const cplx>(vc));
    std::vector<double> y(yc.size());
    std::transform(yc.begin(), yc.end(), y.begin(), [](cplx z) { return z.real(); });
    return y;
}

std::vector<cplx> pascal_matvec_auto(std::span<const cplx> v)
{
    if (v.size() > kFastPathThreshold)
        return pascal_matvec_fast(v);
    return pascal_matvec<cplx>(v.size(), cplx(1.0), v);
}

std::vector<double> pascal_matvec_auto(std::span<const double> v)
{
    if (v.size() > kFastPathThreshold)
        return pascal_matvec_fast(v);
    return pascal_matvec<double>(v.size(), 1.0, v);
}

std::vector<double> bernstein_matvec(double s, std::span<const double> v)
{
    std::vector<double> y(v.begin(), v.end());
    const std::size_t n = y.size();
    const double ss = 1.0 - s;
    // E_1 is applied first; bottom-up so each row reads the previous factor's values
    for (std::size_t k = 1; k < n; ++k)
        for (std::size_t i = n - 1; i >= k; --i)
            y[i] = ss * y[i - 1] + s * y[i];
    return y;
}

std::vector<cplx> hankel_congruence(std::span<const cplx> h, cplx alpha)
{
    std::vector<cplx> a(h.begin(), h.end());
    if (alpha == cplx(0.0))
        return a;

    const cplx inv = 1.0 / alpha;
    cplx p(1.0);
    for (auto& x : a) {
        x *= p;
        p *= inv;
    }
    a = pascal_matvec_auto(std::span<const cplx>(a));
    p = cplx(1.0);
    for (auto& x : a) {
        x *= p;
        p *= alpha;
    }
    return a;
}

std::vector<double> hankel_congruence(std::span<const double> h, double alpha)
{
    std::vector<double> a(h.begin(), h.end());
    if (alpha == 0.0)
        return a;

    const double inv = 1.0 / alpha;
    double p = 1.0;
    for (auto& x : a) {
        x *= p;
        p *= inv;
    }
    a = pascal_matvec_auto(std::span<const double>(a));
    p = 1.0;
    for (auto& x : a) {
        x *= p;
        p *= alpha;
    }
    return a;
}

bool pascal_hankel_identity_check(std::size_t m, std::span<const double> x, double tol)
{
    const std::size_t n = 2 * m - 1;
    const auto a = pascal_matvec<double>(n, 1.0, x);
    const DenseMatrix<double> pm = dense_pascal<double>(m, 1.0);
    const DenseMatrix<double> c = pm * dense_hankel<double>(x) * pm.transpose();
    for (Eigen::Index i = 0; i < c.rows(); ++i)
        for (Eigen::Index j = 0; j < c.cols(); ++j)
            if (std::abs(c(i, j) - a[static_cast<std::size_t>(i + j)]) > tol * std::max(1.0, std::abs(c(i, j))))
                return false;
    return true;
}

} // namespace hbz
