#include <doctest.h>

#include <cmath>
#include <memory>

#include "lukyanov/error.hpp"
#include "lukyanov/model.hpp"
#include "lukyanov/quadrature.hpp"

using namespace lukyanov;

namespace {
std::shared_ptr<const TbaSolution> tba(double r, double b) {
    return std::make_shared<const TbaSolution>(solve_tba(r, b));
}
}  // namespace

TEST_CASE("derive_scales") {
    const ModelParams p = derive_scales(10, 1, 0, 100, 0.1);
    CHECK(p.tau == std::log(100.0));
    CHECK(p.omega1 == doctest::Approx(2 / pi).epsilon(1e-15));
    CHECK(p.omega2 == doctest::Approx(2 / pi).epsilon(1e-15));
    CHECK(std::abs(p.zeta - 2) < 1e-14);
    CHECK(p.kappa_eta == doctest::Approx(0.9 * 2));
    CHECK(p.omega_bar1 == doctest::Approx(2 * pi * p.tau * p.omega1));
    const ModelParams q = derive_scales(10, 2, 0, 100, 0.1);
    CHECK(q.omega1 == doctest::Approx(5 / pi));
    CHECK(q.omega2 == doctest::Approx(5 / (4 * pi)));
    CHECK(std::abs(q.zeta - 2) < 1e-14);
    CHECK(p.specialized);
}

TEST_CASE("derive_scales rejects bad parameters") {
    CHECK_THROWS_AS(derive_scales(0, 1, 0, 100, 0.1), DomainError);
    CHECK_THROWS_AS(derive_scales(1, -1, 0, 100, 0.1), DomainError);
    CHECK_THROWS_AS(derive_scales(1, 1, 0, 1, 0.1), DomainError);
    CHECK_THROWS_AS(derive_scales(1, 1, 0, 100, 0.5), DomainError);
}

TEST_CASE("potential in g = 0 mode") {
    const ModelParams p = derive_scales(10, 1, 0.4, 1000, 0.1);
    const Potential v(p, nullptr);
    CHECK(v.value(0) == doctest::Approx(p.r / (p.n * p.tau)).epsilon(1e-15));
    CHECK(v.d1(0) == doctest::Approx(-p.alpha / p.n).epsilon(1e-15));
    const double l = 0.37;
    CHECK(v.d2(l) == doctest::Approx(p.r * p.tau / p.n * std::cosh(p.tau * l)).epsilon(1e-14));
    CHECK(convexity_margin(v, {-0.5, -0.1, 0.0, 0.2, 0.6}) == doctest::Approx(p.r * p.tau / p.n));
}

TEST_CASE("potential symmetries with the TBA convolution") {
    const auto t = tba(10, 1);
    const ModelParams p0 = derive_scales(10, 1, 0, 1000, 0.1), pa = derive_scales(10, 1, 0.3, 1000, 0.1),
                      pm = derive_scales(10, 1, -0.3, 1000, 0.1);
    const Potential v0(p0, t), va(pa, t), vm(pm, t);
    for (double l : {0.1, 0.45, 1.3}) {
        CHECK(std::abs(v0.value(l) - v0.value(-l)) < 1e-15);
        CHECK(std::abs(vm.value(l) - va.value(-l)) < 1e-15);
        CHECK(std::abs(vm.d1(l) + va.d1(-l)) < 1e-15);
    }
}

TEST_CASE("convolution part against direct quadrature") {
    // r = 1 so g is not negligible
    const auto t = tba(1, 1);
    const ModelParams p = derive_scales(1, 1, 0, 100, 0.1);
    const Potential v(p, t);
    for (double l : {0.0, 0.3}) {
        const double want =
            integrate([&](double mu) { return t->g(p.tau * mu) / std::cosh(p.tau * (l - mu)) / (2 * pi * p.n); },
                      -3, 3, 1e-15, 1e-12)
                .value;
        CHECK(v.w_part(l, 0) == doctest::Approx(want).epsilon(1e-9));
        const double h = 1e-4;
        CHECK(v.w_part(l + 0.1, 1) ==
              doctest::Approx((v.w_part(l + 0.1 + h, 0) - v.w_part(l + 0.1 - h, 0)) / (2 * h)).epsilon(1e-6));
    }
    CHECK(v.value(0.2) == doctest::Approx(v.w_part(0.2, 0) * -1 + p.r / (p.n * p.tau) * std::cosh(p.tau * 0.2)));
}

TEST_CASE("convexity margin positive on the working window") {
    for (double b : {0.5, 1.0, 2.0}) {
        const auto t = tba(10, b);
        for (double n : {1e2, 1e3}) {
            const Potential v(derive_scales(10, b, 0.3, n, 0.1), t);
            std::vector<double> grid;
            for (int k = -100; k <= 100; ++k) grid.push_back(0.02 * k);
            CHECK(convexity_margin(v, grid) > 0);
            std::vector<double> rev(grid.rbegin(), grid.rend());
            for (double& x : rev) x = -x;
            CHECK(convexity_margin(v, rev) == convexity_margin(v, grid));
        }
    }
}
