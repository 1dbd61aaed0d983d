#include "lukyanov/wiener_hopf.hpp"

#include <cmath>

#include "lukyanov/error.hpp"

namespace lukyanov {

WienerHopf::WienerHopf(double omega1, double omega2) : w1_(omega1), w2_(omega2) {
    if (!(omega1 > 0.0) || !(omega2 > 0.0)) throw DomainError("periods must be positive");
    const double w = w1_ + w2_;
    k_ = std::log(w2_ / w) / (2.0 * pi * w1_) + std::log(w1_ / w) / (2.0 * pi * w2_);
}

cplx WienerHopf::jump(cplx lambda) const {
    const double s = 1.0 / w1_ + 1.0 / w2_;
    if (std::abs(lambda) < 1e-4) {
        // Laurent series: lambda R = (w1 + w2) (1 + c2 lambda^2 + ...)
        const double a1 = 1.0 / (2.0 * w1_), a2 = 1.0 / (2.0 * w2_), as = s / 2.0;
        const double c2 = (as * as - a1 * a1 - a2 * a2) / 6.0;
        return (w1_ + w2_) * (1.0 + c2 * lambda * lambda) / lambda;
    }
    for (double om : {w1_, w2_}) {
        const cplx q = lambda / (2.0 * pi * I * om);  // pole when q is a nonzero integer
        const double nq = std::round(q.real());
        if (nq != 0.0 && std::abs(q - nq) < 1e-12) throw DomainError("jump: lambda at a pole");
    }
    return std::sinh(lambda * s / 2.0) / (2.0 * std::sinh(lambda / (2.0 * w1_)) * std::sinh(lambda / (2.0 * w2_)));
}

// lambda R_up = i sqrt(w) e^{+i k lambda} G(1 - i a) G(1 - i b) / G(1 - i c)
cplx WienerHopf::lambda_r_up(cplx lambda) const {
    const cplx a = lambda / (2.0 * pi * w1_), b = lambda / (2.0 * pi * w2_), c = a + b;
    const cplx lg = log_gamma(1.0 - I * a) + log_gamma(1.0 - I * b) - log_gamma(1.0 - I * c);
    return I * std::sqrt(w1_ + w2_) * std::exp(I * k_ * lambda + lg);
}

// R_down = lambda/(2 pi sqrt w) e^{-i k lambda} G(i a) G(i b)/G(i c), rewritten with
// G(x) = G(1+x)/x so that lambda = 0 is a regular point.
cplx WienerHopf::r_down(cplx lambda) const {
    const cplx a = lambda / (2.0 * pi * w1_), b = lambda / (2.0 * pi * w2_), c = a + b;
    const cplx lg = log_gamma(1.0 + I * a) + log_gamma(1.0 + I * b) - log_gamma(1.0 + I * c);
    return -I * std::sqrt(w1_ + w2_) * std::exp(-I * k_ * lambda + lg);
}

WhSpecialValues wh_special(const WienerHopf& wh) {
    WhSpecialValues s;
    const double hs[3] = {1e-3, 5e-4, 2.5e-4};

    // f(h) = f0 + f1 h + f2 h^2 + ...; two Richardson sweeps for ratio 2
    auto richardson = [&](auto&& f, double& spread) {
        cplx v[3];
        for (int k = 0; k < 3; ++k) v[k] = f(hs[k]);
        const cplx r01 = 2.0 * v[1] - v[0], r12 = 2.0 * v[2] - v[1];
        const cplx r = (4.0 * r12 - r01) / 3.0;
        spread = std::max(spread, std::abs(r - r12));
        return r;
    };
    double spread = 0.0;
    s.r_down_0 = richardson([&](double h) { return wh.r_down(h); }, spread);
    s.lim0_lambda_r_up = richardson([&](double h) { return wh.lambda_r_up(h); }, spread);
    s.dlog_r_down_0 = richardson(
        [&](double h) { return (std::log(wh.r_down(h)) - std::log(wh.r_down(-h))) / (2.0 * h); }, spread);
    s.dlog_lambda_r_up_0 = richardson(
        [&](double h) { return (std::log(wh.lambda_r_up(h)) - std::log(wh.lambda_r_up(-h))) / (2.0 * h); }, spread);
    s.extrapolation_spread = spread;
    if (spread > 1e-8) throw ConvergenceError("wh_special: extrapolation disagreement", 3, spread);

    s.r_up_i = wh.r_up(I);
    s.r_up_minus_i = wh.r_up(-I);
    s.r_down_i = wh.r_down(I);
    return s;
}

AsymptoticConstants constants(const ModelParams& p) {
    const WienerHopf wh(p);
    AsymptoticConstants c;
    const double rui = wh.r_up(I).real();
    c.c0 = 4.0 * pi * std::sqrt(wh.omega_sum()) * rui / p.r;

    double prod_d0 = 1.0, prod_d1 = 1.0;
    for (double e : {p.b * p.b, 1.0 / (p.b * p.b)}) {
        const double q = 1.0 + e;
        prod_d0 *= std::pow(q, -1.0 / (2.0 * q)) * std::tgamma(1.0 / (2.0 * q));
        prod_d1 *= std::sin(pi / (2.0 * q)) / q;
    }
    c.d0 = 2.0 / (p.r * std::sqrt(pi)) * prod_d0;
    c.d1 = p.r * p.r / pi * prod_d1;
    c.ratio_c0_d0 = c.c0 / c.d0;
    return c;
}

}  // namespace lukyanov
