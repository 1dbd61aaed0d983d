#include <doctest.h>

#include <cmath>

#include "lukyanov/parametrix.hpp"

using namespace lukyanov;

namespace {
const WienerHopf wh(derive_scales(10, 1, 0, 1000, 0.1));
}

TEST_CASE("determinant of the parametrix is constant in each band") {
    const Parametrix p(wh, 9.0, 0.1);
    for (cplx l : {cplx(0.3, 0.1), cplx(-2.0, 0.05), cplx(7.0, 0.15)}) {
        const ChiEval u = p.eval(l, Band::upper);
        CHECK(std::abs(u.c11 * u.c22 - u.c12 * u.c21 - 1.0) < 1e-13);
        const ChiEval d = p.eval(std::conj(l), Band::lower);
        CHECK(std::abs(d.c11 * d.c22 - d.c12 * d.c21 + 1.0) < 1e-12);
    }
}

TEST_CASE("minus continuation") {
    const double xb = 6.5;
    const Parametrix p(wh, xb, 0.1);
    const cplx l(0.4, 0.1);
    const ChiEval u = p.eval(l, Band::upper);
    CHECK(std::abs(p.chi11_minus(l) - std::exp(-I * l * xb) * u.c11) < 1e-13);
    CHECK(std::abs(p.chi12_minus(l) - std::exp(-I * l * xb) * u.c12) < 1e-13);
    // values at 0 against finite differences of the continuation
    const ChiMinusZero z = p.minus_at_zero();
    const double h = 1e-5;
    CHECK(std::abs(z.chi11m0 - 0.5 * (p.chi11_minus(h) + p.chi11_minus(-h))) < 1e-7);
    CHECK(std::abs(z.chi11m0_prime - (p.chi11_minus(h) - p.chi11_minus(-h)) / (2 * h)) < 1e-6);
    CHECK(std::abs(z.chi12m0) < 1e-15);
    CHECK(std::abs(z.chi12m0_prime - (p.chi12_minus(h) - p.chi12_minus(-h)) / (2 * h)) < 1e-6);
}

TEST_CASE("E-vector pairings") {
    const Parametrix p(wh, 8.0, 0.1);
    for (cplx l : {cplx(0.5, 0.2), cplx(-3.0, 0.1), cplx(12.0, 0.3)}) {
        CHECK(std::abs(pairing(p.e_left(l), p.e_right_down(l)) + 1.0 / wh.jump(l)) < 1e-12 / std::abs(wh.jump(l)));
        CHECK(std::abs(pairing(p.e_left_up(l), p.e_right_up(l))) < 1e-14);
    }
}

TEST_CASE("budget") {
    const Parametrix p(wh, 7.0, 0.1);
    CHECK(p.budget() == doctest::Approx(std::exp(-2 * 0.9 * 7.0)).epsilon(1e-13));
}

TEST_CASE("U functions reproduce the sigma-sum identity") {
    const double xb = 2 * std::log(20.97646 * 1000 / 2 / 10);
    const Parametrix p(wh, xb, 0.1);
    const ChiEval ci = p.eval(I, Band::upper);
    const UFunctions u(std::exp(xb / 2), std::exp(xb / 2), ci.c11, ci.c12);
    CHECK(u.nu() == doctest::Approx(2 * std::exp(xb / 2)));
    CHECK(u.v() == 0);
    for (cplx l : {cplx(0.3, 0.1), cplx(-1.5, 0.2), cplx(4.0, 0.05)}) {
        const ChiEval c = p.eval(l, Band::upper);
        const cplx scale = std::abs(u.nu()) * (std::abs(c.c11) + std::abs(c.c12));
        CHECK(std::abs(u.identity_residual(l, c.c11, c.c12)) < 1e-12 * std::abs(scale));
    }
}
