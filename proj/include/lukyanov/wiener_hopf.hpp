#pragma once

#include "lukyanov/model.hpp"
#include "lukyanov/special.hpp"

namespace lukyanov {

struct WhSpecialValues {
    cplx r_down_0;          // R_down(0)
    cplx lim0_lambda_r_up;  // (lambda R_up)(0)
    cplx dlog_r_down_0;     // (ln R_down)'(0)
    cplx dlog_lambda_r_up_0;  // (ln lambda R_up)'(0)
    cplx r_up_i, r_up_minus_i, r_down_i;
    double extrapolation_spread = 0.0;  // disagreement between Richardson levels
};

class WienerHopf {
public:
    WienerHopf(double omega1, double omega2);
    explicit WienerHopf(const ModelParams& p) : WienerHopf(p.omega1, p.omega2) {}

    double omega1() const { return w1_; }
    double omega2() const { return w2_; }
    double omega_sum() const { return w1_ + w2_; }
    double zeta() const { return 2.0 * pi * w1_ * w2_ / (w1_ + w2_); }

    // R(lambda) = sinh(lambda (1/w1 + 1/w2)/2) / (2 sinh(lambda/(2 w1)) sinh(lambda/(2 w2)))
    cplx jump(cplx lambda) const;
    cplx r_up(cplx lambda) const { return lambda_r_up(lambda) / lambda; }
    // lambda R_up(lambda); regular at 0
    cplx lambda_r_up(cplx lambda) const;
    cplx r_down(cplx lambda) const;

    // The power factors (w2/w)^{-i a} (w1/w)^{-i b} collapse to exp(-i lambda k) with this k.
    double phase_rate() const { return k_; }

private:
    double w1_, w2_, k_;
};

// Richardson extrapolation of the evaluators towards 0; derivative by central differences.
WhSpecialValues wh_special(const WienerHopf& wh);

struct AsymptoticConstants {
    double c0 = 0.0, d0 = 0.0, d1 = 0.0, ratio_c0_d0 = 0.0;
};

AsymptoticConstants constants(const ModelParams& p);

}  // namespace lukyanov
