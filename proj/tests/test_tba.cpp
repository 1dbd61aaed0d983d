#include <doctest.h>

#include <cmath>

#include "lukyanov/error.hpp"
#include "lukyanov/quadrature.hpp"
#include "lukyanov/tba.hpp"

using namespace lukyanov;

TEST_CASE("TBA at r = 10, b = 1") {
    const TbaSolution t = solve_tba(10, 1);
    CHECK(t.residual_sup() < 1e-8);
    CHECK(t.recompute_residual() < 1e-8);
    const double c = t.eps_at(0) - 20;
    CHECK(c >= 0);
    CHECK(c <= 1e-6);
    const auto& e = t.eps();
    for (size_t i = 0; i < e.size(); ++i) REQUIRE(e[i] == e[e.size() - 1 - i]);
    // driving term is a pointwise lower bound
    for (size_t i = 0; i < e.size(); ++i) REQUIRE(e[i] >= tba_driving(t.grid()[i], 10, 1));
    CHECK(t.g(0) == doctest::Approx(2 * std::exp(-t.eps_at(0))).epsilon(1e-8));
    CHECK(t.g(0) == doctest::Approx(4.122e-9).epsilon(1e-3));
    CHECK(t.g(1.3) == doctest::Approx(t.g(-1.3)).epsilon(1e-13));
    CHECK(t.g(40) >= 0);
    CHECK(t.g(40) < 1e-300);
}

TEST_CASE("TBA residual for b in {0.5, 1, 2}") {
    for (double b : {0.5, 1.0, 2.0}) CHECK(solve_tba(10, b).residual_sup() < 1e-8);
}

TEST_CASE("Picard iterates: first correction nonnegative, then alternation around the fixed point") {
    std::vector<std::vector<double>> trace;
    const TbaSolution t = solve_tba(1, 1, {}, &trace);
    REQUIRE(trace.size() >= 3);
    const size_t mid = t.grid().size() / 2;
    for (size_t i = 0; i < trace[0].size(); ++i) REQUIRE(trace[0][i] >= tba_driving(t.grid()[i], 1, 1));
    // the map eps -> driving + K * ln(1 + e^{-eps}) is order reversing
    const double fix = t.eps()[mid];
    for (size_t k = 0; k + 1 < trace.size() && std::abs(trace[k][mid] - fix) > 1e-12; ++k)
        CHECK((trace[k][mid] - fix) * (trace[k + 1][mid] - fix) <= 0);
}

TEST_CASE("Fourier transform of g") {
    const TbaSolution t = solve_tba(1, 1);
    CHECK(t.fourier_g(0).real() > 0);
    for (double mu : {0.5, 2.0, 3.3}) CHECK(std::abs(t.fourier_g(mu) - t.fourier_g(-mu)) < 1e-14);
    const cplx fi = t.fourier_g(I);
    CHECK(std::abs(fi.imag()) < 1e-14 * fi.real());
    // independent adaptive quadrature of int g(x) e^{-x} dx
    const double want = integrate([&](double x) { return t.g(x) * std::exp(-x); }, -6, 6, 1e-14, 1e-12).value;
    CHECK(fi.real() == doctest::Approx(want).epsilon(1e-8));
    // decay in mu
    double prev = std::abs(t.fourier_g(4.0));
    for (double mu : {8.0, 16.0}) {
        const double v = std::abs(t.fourier_g(mu));
        CHECK(v * std::pow(mu, 4) < prev * std::pow(mu / 2, 4));
        prev = v;
    }
}

TEST_CASE("TBA errors") {
    CHECK_THROWS_AS(solve_tba(0, 1), DomainError);
    CHECK_THROWS_AS(solve_tba(1, 0), DomainError);
    TbaConfig c;
    c.max_iters = 2;
    CHECK_THROWS_AS(solve_tba(1, 1, c), ConvergenceError);
    CHECK(solve_tba(0.5, 1).warnings().size() == 1);
}

TEST_CASE("kernel") {
    // K(lambda) = 4 cosh sin(theta) / (cosh 2 lambda - cos 2 theta); theta = pi/2 at b = 1 gives 2/cosh
    CHECK(tba_kernel(0.7, 1) == doctest::Approx(2 / std::cosh(0.7)));
    CHECK(tba_kernel(0.7, 2) == tba_kernel(-0.7, 2));
    CHECK(tba_kernel(0.7, 2) == doctest::Approx(tba_kernel(0.7, 0.5)));
}
