#include "lukyanov/parametrix.hpp"

#include <cmath>

#include "lukyanov/error.hpp"

namespace lukyanov {

Parametrix::Parametrix(const WienerHopf& wh, double x_bar, double eta) : wh_(wh), x_bar_(x_bar), eta_(eta) {
    if (!(x_bar > 0.0)) throw DomainError("parametrix: support length must be positive");
}

ChiEval Parametrix::eval(cplx lambda, Band band) const {
    const cplx lr = wh_.lambda_r_up(lambda);
    const cplx rd = wh_.r_down(lambda);
    ChiEval c{band, 0.0, 0.0, 0.0, 0.0};
    if (band == Band::upper) {
        c.c11 = 1.0 / lr - std::exp(I * lambda * x_bar_) / rd;
        c.c12 = lambda / lr;
        c.c21 = -lr / lambda;
        c.c22 = 0.0;
    } else {
        if (lambda == cplx(0.0)) throw DomainError("parametrix: chi21 has a pole at 0 in the lower band");
        const cplx e = std::exp(-I * lambda * x_bar_);
        c.c11 = -1.0 / rd + e / lr;
        c.c12 = e * lambda / lr;
        c.c21 = rd / lambda;
        c.c22 = rd;
    }
    return c;
}

cplx Parametrix::chi11_minus(cplx lambda) const {
    return std::exp(-I * lambda * x_bar_) / wh_.lambda_r_up(lambda) - 1.0 / wh_.r_down(lambda);
}

cplx Parametrix::chi12_minus(cplx lambda) const {
    return std::exp(-I * lambda * x_bar_) * lambda / wh_.lambda_r_up(lambda);
}

ChiMinusZero Parametrix::minus_at_zero() const {
    const WhSpecialValues s = wh_special(wh_);
    const cplx f0 = s.lim0_lambda_r_up, r0 = s.r_down_0;
    ChiMinusZero z;
    z.chi11m0 = 1.0 / f0 - 1.0 / r0;
    z.chi11m0_prime = (-I * x_bar_ - s.dlog_lambda_r_up_0) / f0 + s.dlog_r_down_0 / r0;
    z.chi12m0 = 0.0;
    z.chi12m0_prime = 1.0 / f0;
    return z;
}

Vec2 Parametrix::e_left(cplx lambda) const {
    const ChiEval c = eval(lambda, Band::upper);
    return {c.c11, -1.0 / wh_.lambda_r_up(lambda)};
}

Vec2 Parametrix::e_right(cplx lambda) const {
    const ChiEval c = eval(lambda, Band::upper);
    return {c.c12, lambda * c.c11};
}

Vec2 Parametrix::e_right_up(cplx lambda) const {
    const cplx q = lambda / wh_.lambda_r_up(lambda);
    return {q, q};
}

Vec2 Parametrix::e_right_down(cplx lambda) const { return {0.0, lambda / wh_.r_down(lambda)}; }

Vec2 Parametrix::e_left_up(cplx lambda) const {
    const cplx q = lambda / wh_.lambda_r_up(lambda);
    return {q, -q};
}

Vec2 Parametrix::e_left_down(cplx lambda) const { return {lambda / wh_.r_down(lambda), 0.0}; }

double Parametrix::budget() const { return std::exp(-wh_.zeta() * (1.0 - eta_) * x_bar_); }

UFunctions::UFunctions(double exp_b_bar, double exp_minus_a_bar, cplx chi11_i, cplx chi12_i)
    : eb_(exp_b_bar), ea_(exp_minus_a_bar), nu_(exp_b_bar + exp_minus_a_bar), v_(exp_b_bar - exp_minus_a_bar),
      x11_(chi11_i), x12_(chi12_i) {}

cplx UFunctions::u12(cplx lambda) const { return (nu_ * lambda + I * v_) / (1.0 + lambda * lambda) * I * x11_; }

cplx UFunctions::u11(cplx lambda) const {
    return -x12_ * (I * nu_ + lambda * v_) / (1.0 + lambda * lambda) - I * x11_ / (I + lambda) * (nu_ - v_) / 2.0;
}

cplx UFunctions::identity_residual(cplx lambda, cplx chi11, cplx chi12) const {
    // chi(-i) from chi(i) through the reflection relation
    const cplx m11 = x11_, m12 = -I * x11_ + x12_;
    const cplx plus = eb_ * (chi11 * x12_ - (I / lambda) * x11_ * chi12) / (I - lambda);
    const cplx minus = ea_ * (chi11 * m12 + (I / lambda) * m11 * chi12) / (I + lambda);
    return plus + minus - (chi12 * u12(lambda) / lambda + chi11 * u11(lambda));
}

}  // namespace lukyanov
