///
/// \file pascal.hpp
///
/// Generalized lower-triangular Pascal matrices P_n[a], geometric diagonals
/// G_n(a) = diag(1, a, ..., a^{n-1}) and Bernstein matrices B_n(s).
///
/// Matrix-free routines work on std::vector / std::span. The dense builders
/// exist as test oracles for the structured paths.
///
#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace hbz {

using cplx = std::complex<double>;

template <typename T>
using DenseMatrix = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;

/// Below this order the direct O(n^2) recurrences are used instead of the FFT paths.
inline constexpr std::size_t kFastPathThreshold = 32;

/// Lower-triangular Pascal matrix with shift parameter alpha.
template <typename T>
struct GeneralizedPascal {
    std::size_t order;
    T alpha;
};

/// diag(1, alpha, ..., alpha^{n-1}).
template <typename T>
struct GeometricDiagonal {
    std::size_t order;
    T alpha;

    std::vector<T> diagonal() const
    {
        std::vector<T> d(order);
        T p = T(1);
        for (std::size_t k = 0; k < order; ++k) {
            d[k] = p;
            p *= alpha;
        }
        return d;
    }
};

struct BernsteinMatrix {
    std::size_t order;
    double s;
};

/// First column c_k = t^k / k!, k = 0..n-1, of the Toeplitz matrix similar to P_n.
struct ToeplitzKernel {
    std::size_t order;
    double t;

    std::vector<double> column() const;
};

/// Rows 0..n of Pascal's triangle, built additively in floating point.
std::vector<std::vector<double>> binomial_rows(std::size_t n);

///
/// y = P_n[alpha] v by n-1 sweeps of the bidiagonal update v_i += alpha v_{i-1}.
/// Exact for integer scalar types as long as nothing overflows.
///
template <typename T>
std::vector<T> pascal_matvec(std::size_t n, T alpha, std::span<const T> v)
{
    std::vector<T> y(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(n));
    if (alpha == T(0))
        return y;
    for (std::size_t k = 1; k < n; ++k)
        for (std::size_t i = n - 1; i >= k; --i)
            y[i] += alpha * y[i - 1];
    return y;
}

template <typename T>
std::vector<T> pascal_matvec(std::size_t n, T alpha, const std::vector<T>& v)
{
    return pascal_matvec<T>(n, alpha, std::span<const T>(v));
}

/// Dense P_n[alpha], entries alpha^{i-j} C(i-1, j-1).
template <typename T>
DenseMatrix<T> dense_pascal(std::size_t n, T alpha)
{
    const auto ni = static_cast<Eigen::Index>(n);
    DenseMatrix<T> p = DenseMatrix<T>::Zero(ni, ni);
    for (Eigen::Index i = 0; i < ni; ++i) {
        p(i, 0) = i == 0 ? T(1) : p(i - 1, 0) * alpha;
        for (Eigen::Index j = 1; j <= i; ++j) {
            // C(i,j) a^{i-j} = C(i-1,j-1) a^{i-j} + C(i-1,j) a^{i-j}
            T left = p(i - 1, j - 1);
            T up = j <= i - 1 ? p(i - 1, j) * alpha : T(0);
            p(i, j) = left + up;
        }
    }
    return p;
}

template <typename T>
DenseMatrix<T> dense_geometric_diagonal(std::size_t n, T alpha)
{
    const auto d = GeometricDiagonal<T>{n, alpha}.diagonal();
    DenseMatrix<T> g = DenseMatrix<T>::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t k = 0; k < n; ++k)
        g(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)) = d[k];
    return g;
}

DenseMatrix<double> dense_bernstein(std::size_t n, double s);

/// Checks P_n[alpha] P_n[beta] == P_n[alpha + beta] entrywise within tol (exactly when tol == 0).
template <typename T>
bool pascal_compose_check(std::size_t n, T alpha, T beta, double tol = 0.0)
{
    const DenseMatrix<T> lhs = dense_pascal<T>(n, alpha) * dense_pascal<T>(n, beta);
    const DenseMatrix<T> rhs = dense_pascal<T>(n, alpha + beta);
    for (Eigen::Index i = 0; i < lhs.rows(); ++i)
        for (Eigen::Index j = 0; j < lhs.cols(); ++j) {
            if (tol == 0.0) {
                if (lhs(i, j) != rhs(i, j))
                    return false;
            } else if (std::abs(lhs(i, j) - rhs(i, j)) > tol) {
                return false;
            }
        }
    return true;
}

/// t = ((n-1)!)^{1/(n-1)}; equalizes c_0 and c_{n-1} of the Toeplitz kernel.
double toeplitz_scale_param(std::size_t n);

/// P_n v through the similarity P_n = D1(t) T(t) D2(t) and an FFT convolution.
std::vector<cplx> pascal_matvec_fast(std::span<const cplx> v);
std::vector<double> pascal_matvec_fast(std::span<const double> v);

/// P_n v, choosing the FFT path above kFastPathThreshold.
std::vector<cplx> pascal_matvec_auto(std::span<const cplx> v);
std::vector<double> pascal_matvec_auto(std::span<const double> v);

/// B_n(s) v as the product of the n-1 nonnegative bidiagonal factors E_k(s).
std::vector<double> bernstein_matvec(double s, std::span<const double> v);

///
/// Anti-diagonals of P_m[alpha] H P_m[alpha]^T, with H given by its 2m-1
/// anti-diagonals. The congruence is reduced to P_{2m-1} applied to the
/// anti-diagonal vector after scaling entry k by alpha^{-k}, then scaled
/// back by alpha^k.
///
std::vector<cplx> hankel_congruence(std::span<const cplx> h, cplx alpha);
std::vector<double> hankel_congruence(std::span<const double> h, double alpha);

/// Dense m x m Hankel matrix with the given anti-diagonals.
template <typename T>
DenseMatrix<T> dense_hankel(std::span<const T> h)
{
    const auto m = static_cast<Eigen::Index>((h.size() + 1) / 2);
    DenseMatrix<T> out(m, m);
    for (Eigen::Index i = 0; i < m; ++i)
        for (Eigen::Index j = 0; j < m; ++j)
            out(i, j) = h[static_cast<std::size_t>(i + j)];
    return out;
}

/// Checks that P_{2m-1} x equals the anti-diagonals of P_m H_x P_m^T (dense), within tol.
bool pascal_hankel_identity_check(std::size_t m, std::span<const double> x, double tol);

/// Largest spread (max pairwise distance) within any anti-diagonal of a square matrix.
template <typename T>
double antidiagonal_spread(const DenseMatrix<T>& a)
{
    const Eigen::Index m = a.rows();
    double worst = 0.0;
    for (Eigen::Index k = 0; k < 2 * m - 1; ++k) {
        const Eigen::Index i0 = k < m ? 0 : k - m + 1;
        const Eigen::Index i1 = k < m ? k : m - 1;
        for (Eigen::Index i = i0; i <= i1; ++i)
            for (Eigen::Index j = i + 1; j <= i1; ++j)
                worst = std::max(worst, static_cast<double>(std::abs(a(i, k - i) - a(j, k - j))));
    }
    return worst;
}

} // namespace hbz
