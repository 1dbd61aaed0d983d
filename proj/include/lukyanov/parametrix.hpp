#pragma once

#include <array>

#include "lukyanov/wiener_hopf.hpp"

namespace lukyanov {

using Vec2 = std::array<cplx, 2>;

enum class Band { upper, lower };

struct ChiEval {
    Band region;
    cplx c11, c12, c21, c22;
};

struct ChiMinusZero {
    cplx chi11m0, chi11m0_prime;
    cplx chi12m0, chi12m0_prime;
};

// Leading parametrix chi_infinity (corrector Pi = I) for a support of length x_bar = b_bar - a_bar.
class Parametrix {
public:
    Parametrix(const WienerHopf& wh, double x_bar, double eta);

    // upper: between R + i eps and Gamma_up; lower: between Gamma_down and R
    ChiEval eval(cplx lambda, Band band) const;
    // continuation chi_{1a;-} = e^{-i lambda x_bar} chi_{1a}, written without the exponential blow-up
    cplx chi11_minus(cplx lambda) const;
    cplx chi12_minus(cplx lambda) const;
    ChiMinusZero minus_at_zero() const;

    Vec2 e_left(cplx lambda) const;   // (chi11, -chi12/lambda), upper band
    Vec2 e_right(cplx lambda) const;  // (chi12, lambda chi11), upper band
    Vec2 e_right_up(cplx lambda) const;
    Vec2 e_right_down(cplx lambda) const;
    Vec2 e_left_up(cplx lambda) const;
    Vec2 e_left_down(cplx lambda) const;

    // e^{-zeta (1-eta) x_bar}: size of the discarded corrector.
    double budget() const;

    const WienerHopf& wh() const { return wh_; }
    double x_bar() const { return x_bar_; }

private:
    WienerHopf wh_;
    double x_bar_, eta_;
};

inline cplx pairing(const Vec2& l, const Vec2& r) { return l[0] * r[0] + l[1] * r[1]; }

class UFunctions {
public:
    // chi_i = {chi11(i), chi12(i)} from the upper band
    UFunctions(double exp_b_bar, double exp_minus_a_bar, cplx chi11_i, cplx chi12_i);

    cplx u11(cplx lambda) const;
    cplx u12(cplx lambda) const;

    // Prop 2.4 identity: the sigma-sum built from chi(+-i) minus chi12 U12/lambda + chi11 U11.
    cplx identity_residual(cplx lambda, cplx chi11, cplx chi12) const;

    double nu() const { return nu_; }
    double v() const { return v_; }

private:
    double eb_, ea_, nu_, v_;
    cplx x11_, x12_;
};

}  // namespace lukyanov
