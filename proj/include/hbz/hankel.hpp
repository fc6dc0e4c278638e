///
/// \file hankel.hpp
///
/// Vandermonde factorization H = V D V^T of a nonsingular m x m Hankel
/// matrix, where V has columns (1, t_i, ..., t_i^{m-1}) and D = diag(d_i).
///
/// The nodes t_i are the roots of x^m - p_{m-1} x^{m-1} - ... - p_0, where p
/// solves the linear prediction system H p = (h_{m+1}, ..., h_{2m-1}, gamma)^T
/// for a randomly drawn extension gamma. Only finitely many gamma give a
/// multiple root, so a failed draw is simply redrawn.
///
#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "hbz/error.hpp"

namespace hbz {

using cplx = std::complex<double>;

/// Order-m Hankel matrix stored as its anti-diagonals h_1..h_{2m-1}; entry (i,j) = h_{i+j-1}.
class HankelMatrix {
public:
    HankelMatrix() = default;
    explicit HankelMatrix(std::vector<cplx> antidiag);
    explicit HankelMatrix(std::span<const double> antidiag);

    std::size_t order() const noexcept { return (antidiag_.size() + 1) / 2; }
    const std::vector<cplx>& antidiag() const noexcept { return antidiag_; }

    /// 0-based entry (i, j).
    cplx operator()(std::size_t i, std::size_t j) const { return antidiag_[i + j]; }

    bool is_real() const noexcept;
    double max_abs() const noexcept;
    /// Sum of |h_k| over the anti-diagonal values.
    double antidiag_abs_sum() const noexcept;
    /// Sum of |H_ij| over all entries; anti-diagonal k counts min(k, 2m-k) times.
    double entry_abs_sum() const noexcept;

    std::vector<double> real_antidiag() const;

private:
    std::vector<cplx> antidiag_;
};

struct FactorizationConfig {
    int max_gamma_retries = 8;
    /// Aberth stop: max correction < root_tol * (1 + |root|).
    double root_tol = 1e-13;
    int max_root_iterations = 200;
    /// Roots closer than separation_tol * max|t_i| count as a multiple root.
    double separation_tol = 1e-8;
    /// Accept when max|VDV^T - H| / max|H| is at most this.
    double residual_tol = 1e-8;
    std::uint64_t rng_seed = 0x5eed;

    void validate() const;
};

struct PredictionSolution {
    cplx gamma;
    std::vector<cplx> p;
};

struct VandermondeFactorization {
    std::vector<cplx> nodes;
    std::vector<cplx> weights;
    cplx gamma_used{};
    double residual = 0.0;
    /// Companion coefficients p_0..p_{m-1} the nodes were taken from.
    std::vector<cplx> prediction;
    bool source_real = true;

    std::size_t order() const noexcept { return nodes.size(); }
};

/// Anti-diagonals taken straight from the 2m-1 control coordinates.
HankelMatrix hankel_from_coords(std::span<const double> coords);

/// Solves H p = (h_{m+1}, ..., h_{2m-1}, gamma)^T with partial pivoting.
/// Throws SingularMatrix when a pivot falls below m * eps * max|H|.
PredictionSolution solve_prediction(const HankelMatrix& h, cplx gamma);

/// Roots of x^m - p_{m-1} x^{m-1} - ... - p_0 by Aberth-Ehrlich iteration,
/// sorted by real then imaginary part.
/// Throws NonConvergence or MultipleRoots.
std::vector<cplx> companion_spectrum(std::span<const cplx> p, const FactorizationConfig& cfg = {});

/// Weights d with H = V diag(d) V^T for the given nodes: the least-squares
/// solution of all 2m-1 moment equations sum_j d_j t_j^{k-1} = h_k, which
/// contain V d = H e_1 as their first m rows. Throws IllConditionedVandermonde.
std::vector<cplx> vandermonde_weights(std::span<const cplx> nodes, const HankelMatrix& h);

/// Draws gamma until a factorization reproduces H within cfg.residual_tol.
/// Throws SingularMatrix or RetriesExhausted.
VandermondeFactorization factorize(const HankelMatrix& h, const FactorizationConfig& cfg = {});

/// One factorization attempt for a fixed gamma; no acceptance test applied.
VandermondeFactorization factorize_with_gamma(const HankelMatrix& h, cplx gamma, const FactorizationConfig& cfg = {});

/// Moment sums h_k = sum_i d_i t_i^{k-1}. For a real source the imaginary
/// remnant is checked against 1e-8 * max|H| (ResidualImaginary) and dropped.
HankelMatrix reconstruct(const VandermondeFactorization& f);

/// Same moment sums without the imaginary check or truncation.
std::vector<cplx> moments(const VandermondeFactorization& f);

/// max|reconstruct - H| / max|H| over the anti-diagonals.
double relative_residual(const std::vector<cplx>& moments, const HankelMatrix& h);

/// 1-norm condition number of the dense expansion; +inf when singular.
double condition_estimate(const HankelMatrix& h);

struct PreconditionedHankel {
    HankelMatrix matrix;
    double sigma;
};

/// H + sigma C_m with sigma = sum |H_ij| and C_m the exchange matrix.
/// Only the middle anti-diagonal h_m moves.
PreconditionedHankel precondition_shift(const HankelMatrix& h);

/// Monic companion polynomial x^m - sum p_k x^k evaluated at z.
cplx companion_poly(std::span<const cplx> p, cplx z);

} // namespace hbz
