#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "hbz/hankel.hpp"
#include "test_util.hpp"

using namespace hbz;
using hbz::test::random_vector;

namespace {

template <typename F>
ErrorCode error_code_of(F&& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("no exception thrown");
    return ErrorCode::InvalidArgument;
}

HankelMatrix real_hankel(std::vector<double> h)
{
    return HankelMatrix(std::span<const double>(h));
}

} // namespace

TEST_CASE("Hankel matrix layout")
{
    const auto h = hankel_from_coords(std::vector<double>{2, 1, 3});
    CHECK(h.order() == 2);
    CHECK(h(0, 0) == cplx(2));
    CHECK(h(0, 1) == cplx(1));
    CHECK(h(1, 0) == cplx(1));
    CHECK(h(1, 1) == cplx(3));

    const auto x = hankel_from_coords(std::vector<double>{0, 1, 0});
    CHECK(x(0, 1) == cplx(1));
    CHECK(x(1, 1) == cplx(0));

    const auto five = hankel_from_coords(std::vector<double>{1, 2, 3, 4, 5});
    CHECK(five.order() == 3);
    CHECK(five(2, 2) == cplx(5));
    CHECK(five(0, 2) == cplx(3));
    CHECK(five(2, 0) == cplx(3));
    CHECK(five.is_real());
    CHECK(five.max_abs() == 5.0);
    CHECK(five.antidiag_abs_sum() == 15.0);
    CHECK(five.entry_abs_sum() == 1 + 4 + 9 + 8 + 5);
}

TEST_CASE("even coordinate counts are rejected")
{
    CHECK(error_code_of([] { hankel_from_coords(std::vector<double>{1, 2}); }) == ErrorCode::EvenControlCount);
    CHECK(error_code_of([] { real_hankel({1, 2, 3, 4}); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("linear prediction solve")
{
    const auto sol = solve_prediction(real_hankel({2, 1, 3}), 0.0);
    REQUIRE(sol.p.size() == 2);
    CHECK(std::abs(sol.p[0] - 9.0 / 5.0) < 1e-14);
    CHECK(std::abs(sol.p[1] + 3.0 / 5.0) < 1e-14);

    const auto zero = solve_prediction(real_hankel({0, 1, 0}), 0.0);
    CHECK(std::abs(zero.p[0]) < 1e-15);
    CHECK(std::abs(zero.p[1]) < 1e-15);

    const auto swap = solve_prediction(real_hankel({0, 1, 0}), 1.0);
    CHECK(std::abs(swap.p[0] - 1.0) < 1e-15);
    CHECK(std::abs(swap.p[1]) < 1e-15);

    CHECK(error_code_of([] { solve_prediction(real_hankel({1, 1, 1}), 0.5); }) == ErrorCode::SingularMatrix);
}

TEST_CASE("companion spectrum")
{
    const auto r = companion_spectrum(std::vector<cplx>{1, 0});
    REQUIRE(r.size() == 2);
    CHECK(std::abs(r[0] + 1.0) < 1e-13);
    CHECK(std::abs(r[1] - 1.0) < 1e-13);

    const auto q = companion_spectrum(std::vector<cplx>{9.0 / 5.0, -3.0 / 5.0});
    CHECK(std::abs(q[0] - (-0.6 - std::sqrt(7.56)) / 2.0) < 1e-13);
    CHECK(std::abs(q[1] - (-0.6 + std::sqrt(7.56)) / 2.0) < 1e-13);

    CHECK(companion_spectrum(std::vector<cplx>{4.0}) == std::vector<cplx>{4.0});

    CHECK(error_code_of([] { companion_spectrum(std::vector<cplx>{0, 0}); }) == ErrorCode::MultipleRoots);

    SUBCASE("roots of a known cubic are sorted")
    {
        // (x-1)(x-2)(x-3) = x^3 - 6x^2 + 11x - 6
        const auto c = companion_spectrum(std::vector<cplx>{6, -11, 6});
        CHECK(std::abs(c[0] - 1.0) < 1e-12);
        CHECK(std::abs(c[1] - 2.0) < 1e-12);
        CHECK(std::abs(c[2] - 3.0) < 1e-12);
    }

    SUBCASE("the iteration cap is enforced")
    {
        FactorizationConfig cfg;
        cfg.max_root_iterations = 1;
        CHECK(error_code_of([&] { companion_spectrum(std::vector<cplx>{3, -1, 2, 0.5, 7}, cfg); })
            == ErrorCode::NonConvergence);
    }
}

TEST_CASE("Vandermonde weights")
{
    CHECK(vandermonde_weights(std::vector<cplx>{0.7}, real_hankel({2.5})) == std::vector<cplx>{2.5});

    const auto w = vandermonde_weights(std::vector<cplx>{1, -1}, real_hankel({0, 1, 0}));
    CHECK(std::abs(w[0] - 0.5) < 1e-15);
    CHECK(std::abs(w[1] + 0.5) < 1e-15);

    const cplx t1 = (-0.6 - std::sqrt(7.56)) / 2.0, t2 = (-0.6 + std::sqrt(7.56)) / 2.0;
    const auto d = vandermonde_weights(std::vector<cplx>{t1, t2}, real_hankel({2, 1, 3}));
    CHECK(std::abs(d[0] + d[1] - 2.0) < 1e-12);
    CHECK(std::abs(d[0] * t1 + d[1] * t2 - 1.0) < 1e-12);
    CHECK(std::abs(d[0] * t1 * t1 + d[1] * t2 * t2 - 3.0) < 1e-12);
}

TEST_CASE("moments and reconstruction")
{
    VandermondeFactorization f;
    f.nodes = {1, -1};
    f.weights = {0.5, -0.5};
    const auto h = reconstruct(f);
    REQUIRE(h.antidiag().size() == 3);
    CHECK(std::abs(h.antidiag()[0]) < 1e-15);
    CHECK(std::abs(h.antidiag()[1] - 1.0) < 1e-15);
    CHECK(std::abs(h.antidiag()[2]) < 1e-15);

    VandermondeFactorization one;
    one.nodes = {3.0};
    one.weights = {-2.0};
    CHECK(reconstruct(one).antidiag() == std::vector<cplx>{-2.0});

    VandermondeFactorization lopsided;
    lopsided.nodes = {cplx(0, 1), cplx(0, -1)};
    lopsided.weights = {1.0, 0.5};
    CHECK(error_code_of([&] { reconstruct(lopsided); }) == ErrorCode::ResidualImaginary);
    lopsided.source_real = false;
    CHECK(std::abs(reconstruct(lopsided).antidiag()[1] - cplx(0, 0.5)) < 1e-15);
}

TEST_CASE("factorize small examples")
{
    for (const auto& coords : {std::vector<double>{2, 1, 3}, std::vector<double>{0, 1, 0}}) {
        const auto h = real_hankel(coords);
        const auto f = factorize(h);
        CHECK(f.residual < 1e-12);
        const auto back = reconstruct(f);
        for (std::size_t k = 0; k < coords.size(); ++k)
            CHECK(std::abs(back.antidiag()[k] - coords[k]) < 1e-12);
    }
}

TEST_CASE("construct then factorize")
{
    VandermondeFactorization truth;
    truth.nodes = {1, 2, 3};
    truth.weights = {1, 1, 1};
    const auto h = reconstruct(truth);
    const auto f = factorize(h);
    CHECK(f.residual < 1e-8);
    CHECK(relative_residual(reconstruct(f).antidiag(), h) < 1e-8);
}

TEST_CASE("factorize is reproducible for a fixed seed")
{
    const auto h = real_hankel(random_vector(9, 4));
    FactorizationConfig cfg;
    cfg.rng_seed = 77;
    const auto a = factorize(h, cfg);
    const auto b = factorize(h, cfg);
    CHECK(a.nodes == b.nodes);
    CHECK(a.weights == b.weights);
    CHECK(a.gamma_used == b.gamma_used);
}

TEST_CASE("factorize error paths")
{
    CHECK(error_code_of([] { factorize(real_hankel({1, 1, 1})); }) == ErrorCode::SingularMatrix);

    FactorizationConfig bad;
    bad.residual_tol = 0.0;
    CHECK(error_code_of([&] { bad.validate(); }) == ErrorCode::InvalidArgument);

    FactorizationConfig strict;
    strict.residual_tol = 1e-300;
    strict.max_gamma_retries = 3;
    try {
        factorize(real_hankel(random_vector(15, 8)), strict);
        FAIL("expected RetriesExhausted");
    } catch (const RetriesExhausted& e) {
        CHECK(e.code() == ErrorCode::RetriesExhausted);
        CHECK(std::isfinite(e.best_residual()));
        CHECK(e.best_residual() < 1e-6);
    }
}

TEST_CASE("round trip over random well-conditioned Hankels")
{
    int tested = 0;
    for (std::uint64_t seed = 0; tested < 60; ++seed) {
        const std::size_t m = 2 + seed % 31;
        const auto h = real_hankel(random_vector(2 * m - 1, 9000 + seed));
        if (condition_estimate(h) >= 1e6)
            continue;
        ++tested;
        FactorizationConfig cfg;
        cfg.rng_seed = seed;
        const auto f = factorize(h, cfg);
        INFO("m = " << m << ", seed = " << seed);
        CHECK(relative_residual(moments(f), h) <= 1e-8);

        // conjugate closure of the node set
        for (cplx t : f.nodes) {
            double nearest = INFINITY;
            for (cplx u : f.nodes)
                nearest = std::min(nearest, std::abs(std::conj(t) - u));
            CHECK(nearest <= 1e-8 * std::max(1.0, std::abs(t)));
        }
        const auto mom = moments(f);
        double imag = 0.0;
        for (cplx z : mom)
            imag = std::max(imag, std::abs(z.imag()));
        CHECK(imag <= 1e-8 * h.max_abs());

        // nodes are roots of the companion polynomial
        double tmax = 0.0;
        for (cplx t : f.nodes)
            tmax = std::max(tmax, std::abs(t));
        for (cplx t : f.nodes)
            CHECK(std::abs(companion_poly(f.prediction, t)) <= 1e-8 * std::pow(1.0 + tmax, static_cast<double>(m)));
    }
}

TEST_CASE("twenty gamma seeds on one matrix all succeed")
{
    const auto h = real_hankel(random_vector(13, 2024));
    REQUIRE(condition_estimate(h) < 1e6);
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        FactorizationConfig cfg;
        cfg.rng_seed = seed * 7919;
        cfg.max_gamma_retries = 1;
        const auto f = factorize(h, cfg);
        CHECK(f.residual <= 1e-8);
    }
}

TEST_CASE("condition estimate")
{
    CHECK(condition_estimate(real_hankel({0, 1, 0})) == doctest::Approx(1.0));
    CHECK(std::isinf(condition_estimate(real_hankel({1, 1, 1}))));
    CHECK(condition_estimate(real_hankel({2, 1, 3})) == doctest::Approx(3.2));
    CHECK(std::isinf(condition_estimate(real_hankel({0, 0, 0}))));
}

TEST_CASE("skew-diagonal shift")
{
    const auto zero = precondition_shift(real_hankel({0, 0, 0}));
    CHECK(zero.sigma == 0.0);
    CHECK(zero.matrix.antidiag() == std::vector<cplx>{0, 0, 0});

    const auto two = precondition_shift(real_hankel({1, 1, 1}));
    CHECK(two.sigma == 4.0);
    CHECK(two.matrix.antidiag() == std::vector<cplx>{1, 5, 1});

    const auto three = precondition_shift(real_hankel({1, 1, 1, 1, 1}));
    CHECK(three.sigma == 9.0);
    CHECK(three.matrix.antidiag() == std::vector<cplx>{1, 1, 10, 1, 1});

    // a negative 1 x 1 matrix is cancelled exactly
    CHECK(precondition_shift(real_hankel({-2})).matrix.antidiag() == std::vector<cplx>{0});

    SUBCASE("shifted matrices are dominated by the skew diagonal")
    {
        for (std::size_t m = 2; m <= 20; ++m) {
            const auto h = real_hankel(random_vector(2 * m - 1, 300 + m));
            const auto shifted = precondition_shift(h);
            double rest = 0.0;
            for (std::size_t k = 1; k <= 2 * m - 1; ++k)
                if (k != m)
                    rest += static_cast<double>(std::min(k, 2 * m - k)) * std::abs(h.antidiag()[k - 1]);
            CHECK(std::abs(shifted.matrix.antidiag()[m - 1]) > rest);
            CHECK(std::isfinite(condition_estimate(shifted.matrix)));
        }
    }
}

TEST_CASE("companion polynomial")
{
    // x^2 - 1
    CHECK(companion_poly(std::vector<cplx>{1, 0}, 3.0) == cplx(8.0));
    CHECK(companion_poly(std::vector<cplx>{6, -11, 6}, 2.0) == cplx(0.0));
}

TEST_CASE("error messages carry the code name")
{
    const Error e(ErrorCode::SingularMatrix, "pivot");
    CHECK(std::string(e.what()) == "SingularMatrix: pivot");
    const InputError ie(ErrorCode::ParseError, 4, "bad");
    CHECK(ie.line() == 4);
    CHECK(std::string(ie.what()).find("line 4") != std::string::npos);
}
