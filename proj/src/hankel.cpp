#include "hbz/hankel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include <Eigen/Dense>

namespace hbz {

namespace {

using CMatrix = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic>;
using CVector = Eigen::Matrix<cplx, Eigen::Dynamic, 1>;

constexpr double kEps = std::numeric_limits<double>::epsilon();

CMatrix dense(const HankelMatrix& h)
{
    const auto m = static_cast<Eigen::Index>(h.order());
    CMatrix a(m, m);
    for (Eigen::Index i = 0; i < m; ++i)
        for (Eigen::Index j = 0; j < m; ++j)
            a(i, j) = h.antidiag()[static_cast<std::size_t>(i + j)];
    return a;
}

double min_pivot(const Eigen::PartialPivLU<CMatrix>& lu)
{
    double p = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < lu.matrixLU().rows(); ++i)
        p = std::min(p, std::abs(lu.matrixLU()(i, i)));
    return p;
}

bool singular(const Eigen::PartialPivLU<CMatrix>& lu, double scale)
{
    const auto m = static_cast<double>(lu.matrixLU().rows());
    return !(min_pivot(lu) > m * kEps * scale);
}

double imaginary_remnant(const std::vector<cplx>& v)
{
    double r = 0.0;
    for (cplx z : v)
        r = std::max(r, std::abs(z.imag()));
    return r;
}

double norm1(const CMatrix& a)
{
    return a.cwiseAbs().colwise().sum().maxCoeff();
}

// uniform on [-1, 1) from the top 53 bits
double symmetric_unit(std::mt19937_64& gen)
{
    return 2.0 * static_cast<double>(gen() >> 11) * 0x1.0p-53 - 1.0;
}

} // namespace

HankelMatrix::HankelMatrix(std::vector<cplx> antidiag)
    : antidiag_(std::move(antidiag))
{
    if (antidiag_.size() % 2 == 0)
        throw Error(ErrorCode::InvalidArgument, "a Hankel matrix needs an odd number (2m-1) of anti-diagonals");
}

HankelMatrix::HankelMatrix(std::span<const double> antidiag)
    : HankelMatrix(std::vector<cplx>(antidiag.begin(), antidiag.end()))
{
}

bool HankelMatrix::is_real() const noexcept
{
    return std::all_of(antidiag_.begin(), antidiag_.end(), [](cplx z) { return z.imag() == 0.0; });
}

double HankelMatrix::max_abs() const noexcept
{
    double r = 0.0;
    for (cplx z : antidiag_)
        r = std::max(r, std::abs(z));
    return r;
}

double HankelMatrix::antidiag_abs_sum() const noexcept
{
    double r = 0.0;
    for (cplx z : antidiag_)
        r += std::abs(z);
    return r;
}

double HankelMatrix::entry_abs_sum() const noexcept
{
    const std::size_t m = order();
    double r = 0.0;
    for (std::size_t k = 1; k <= antidiag_.size(); ++k)
        r += static_cast<double>(std::min(k, 2 * m - k)) * std::abs(antidiag_[k - 1]);
    return r;
}

std::vector<double> HankelMatrix::real_antidiag() const
{
    std::vector<double> r(antidiag_.size());
    std::transform(antidiag_.begin(), antidiag_.end(), r.begin(), [](cplx z) { return z.real(); });
    return r;
}

void FactorizationConfig::validate() const
{
    if (max_gamma_retries < 1 || max_root_iterations < 1)
        throw Error(ErrorCode::InvalidArgument, "retry and iteration caps must be at least 1");
    if (!(root_tol > 0.0) || !(separation_tol > 0.0) || !(residual_tol > 0.0))
        throw Error(ErrorCode::InvalidArgument, "tolerances must be positive");
}

HankelMatrix hankel_from_coords(std::span<const double> coords)
{
    if (coords.empty() || coords.size() % 2 == 0)
        throw Error(ErrorCode::EvenControlCount,
            "need an odd number of coordinates, got " + std::to_string(coords.size()) + "; degree-elevate first");
    return HankelMatrix(coords);
}

PredictionSolution solve_prediction(const HankelMatrix& h, cplx gamma)
{
    const std::size_t m = h.order();
    const CMatrix a = dense(h);
    Eigen::PartialPivLU<CMatrix> lu(a);
    if (singular(lu, h.max_abs()))
        throw Error(ErrorCode::SingularMatrix, "Hankel matrix of order " + std::to_string(m) + " is numerically singular");

    CVector rhs(static_cast<Eigen::Index>(m));
    for (std::size_t i = 0; i + 1 < m; ++i)
        rhs(static_cast<Eigen::Index>(i)) = h.antidiag()[m + i];
    rhs(static_cast<Eigen::Index>(m - 1)) = gamma;

    const CVector x = lu.solve(rhs);
    return {gamma, std::vector<cplx>(x.data(), x.data() + x.size())};
}

std::vector<cplx> vandermonde_weights(std::span<const cplx> nodes, const HankelMatrix& h)
{
    const std::size_t m = nodes.size();
    if (m != h.order())
        throw Error(ErrorCode::InvalidArgument, "node count must equal the Hankel order");

    // All 2m-1 moment equations sum_j d_j t_j^k = h_{k+1}; column j is scaled
    // by max(1, |t_j|)^{-(2m-2)} so nodes outside the unit disk stay resolvable.
    const auto rows = static_cast<Eigen::Index>(2 * m - 1);
    const auto cols = static_cast<Eigen::Index>(m);
    CMatrix v(rows, cols);
    std::vector<double> colscale(m);
    for (Eigen::Index j = 0; j < cols; ++j) {
        const cplx t = nodes[static_cast<std::size_t>(j)];
        const double r = std::max(1.0, std::abs(t));
        const double c = std::pow(r, -static_cast<double>(rows - 1));
        colscale[static_cast<std::size_t>(j)] = c;
        cplx p(c);
        for (Eigen::Index i = 0; i < rows; ++i) {
            v(i, j) = p;
            p *= t;
        }
    }
    Eigen::ColPivHouseholderQR<CMatrix> qr(v);
    const double rmax = std::abs(qr.matrixR()(0, 0));
    const double rmin = std::abs(qr.matrixR()(cols - 1, cols - 1));
    if (!(rmin > static_cast<double>(rows) * kEps * rmax))
        throw Error(ErrorCode::IllConditionedVandermonde, "Vandermonde system is numerically rank deficient");

    CVector rhs(rows);
    for (Eigen::Index i = 0; i < rows; ++i)
        rhs(i) = h.antidiag()[static_cast<std::size_t>(i)];
    const CVector y = qr.solve(rhs);
    std::vector<cplx> d(m);
    for (std::size_t j = 0; j < m; ++j) {
        d[j] = y(static_cast<Eigen::Index>(j)) * colscale[j];
        if (!std::isfinite(d[j].real()) || !std::isfinite(d[j].imag()))
            throw Error(ErrorCode::IllConditionedVandermonde, "non-finite weight");
    }
    return d;
}

std::vector<cplx> moments(const VandermondeFactorization& f)
{
    const std::size_t m = f.order();
    std::vector<cplx> h(m == 0 ? 0 : 2 * m - 1, cplx(0.0));
    for (std::size_t i = 0; i < m; ++i) {
        cplx term = f.weights[i];
        for (auto& hk : h) {
            hk += term;
            term *= f.nodes[i];
        }
    }
    return h;
}

double relative_residual(const std::vector<cplx>& mom, const HankelMatrix& h)
{
    double err = 0.0;
    for (std::size_t k = 0; k < mom.size(); ++k)
        err = std::max(err, std::abs(mom[k] - h.antidiag()[k]));
    const double scale = h.max_abs();
    return scale > 0.0 ? err / scale : err;
}

HankelMatrix reconstruct(const VandermondeFactorization& f)
{
    auto h = moments(f);
    if (f.source_real) {
        double scale = 0.0, remnant = 0.0;
        for (cplx z : h) {
            scale = std::max(scale, std::abs(z.real()));
            remnant = std::max(remnant, std::abs(z.imag()));
        }
        if (remnant > 1e-8 * scale)
            throw Error(ErrorCode::ResidualImaginary,
                "imaginary remnant " + std::to_string(remnant) + " in a real reconstruction");
        for (auto& z : h)
            z = cplx(z.real(), 0.0);
    }
    return HankelMatrix(std::move(h));
}

VandermondeFactorization factorize_with_gamma(const HankelMatrix& h, cplx gamma, const FactorizationConfig& cfg)
{
    VandermondeFactorization f;
    auto pred = solve_prediction(h, gamma);
    f.nodes = companion_spectrum(pred.p, cfg);
    f.weights = vandermonde_weights(f.nodes, h);
    f.gamma_used = gamma;
    f.prediction = std::move(pred.p);
    f.source_real = h.is_real();
    f.residual = relative_residual(moments(f), h);
    return f;
}

VandermondeFactorization factorize(const HankelMatrix& h, const FactorizationConfig& cfg)
{
    cfg.validate();
    if (h.order() == 0)
        throw Error(ErrorCode::InvalidArgument, "empty Hankel matrix");

    std::mt19937_64 gen(cfg.rng_seed);
    const double sigma = h.antidiag_abs_sum();
    const double scale = h.max_abs();
    double best = std::numeric_limits<double>::infinity();
    ErrorCode cause = ErrorCode::RetriesExhausted;

    for (int attempt = 0; attempt < cfg.max_gamma_retries; ++attempt) {
        const double gamma = sigma * symmetric_unit(gen);
        VandermondeFactorization f;
        try {
            f = factorize_with_gamma(h, cplx(gamma), cfg);
        } catch (const Error& e) {
            if (e.code() == ErrorCode::SingularMatrix)
                throw;
            cause = e.code();
            continue;
        }

        best = std::min(best, f.residual);
        if (f.source_real && imaginary_remnant(moments(f)) > 1e-8 * scale) {
            cause = ErrorCode::ResidualImaginary;
            continue;
        }
        if (f.residual <= cfg.residual_tol)
            return f;
        cause = ErrorCode::RetriesExhausted;
    }
    throw RetriesExhausted("no accepted factorization after " + std::to_string(cfg.max_gamma_retries)
            + " gamma draws (best residual " + std::to_string(best) + ", last cause " + to_string(cause) + ")",
        best, cause);
}

double condition_estimate(const HankelMatrix& h)
{
    const std::size_t m = h.order();
    if (m == 0)
        return std::numeric_limits<double>::infinity();
    const CMatrix a = dense(h);
    Eigen::PartialPivLU<CMatrix> lu(a);
    if (singular(lu, h.max_abs()))
        return std::numeric_limits<double>::infinity();
    if (m <= 64)
        return norm1(a) * norm1(lu.inverse());
    const double rc = lu.rcond();
    return rc > 0.0 ? 1.0 / rc : std::numeric_limits<double>::infinity();
}

PreconditionedHankel precondition_shift(const HankelMatrix& h)
{
    const double sigma = h.entry_abs_sum();
    auto shifted = h.antidiag();
    shifted[h.order() - 1] += sigma;
    return {HankelMatrix(std::move(shifted)), sigma};
}

cplx companion_poly(std::span<const cplx> p, cplx z)
{
    cplx acc(1.0);
    for (std::size_t k = p.size(); k-- > 0;)
        acc = acc * z - p[k];
    return acc;
}

} // namespace hbz
