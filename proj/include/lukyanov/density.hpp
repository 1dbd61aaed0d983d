#pragma once

#include <vector>

#include "lukyanov/equilibrium.hpp"
#include "lukyanov/model.hpp"

namespace lukyanov {

struct DensityConfig {
    int points = 401;          // Chebyshev nodes of the first kind on [a, b]
    double beta = pi / 4;      // ray angle from the imaginary axis
    double lift = 0.2;         // vertex of the V contours, i*lift
    double first_panel = 0.05;
    double panel_ratio = 1.5;
    int per_panel = 16;
    double decay = 40.0;       // truncate rays once the exponential is below e^{-decay}
    double d_floor = 1e-7;     // smallest |xi - edge| (relative to x) the node tables cover
    double line_cut = 30.0;    // |Re lambda| cut for the straight-line varpi0 integral
    double mu_cut = 20.0;      // |Re mu| cut for the inner mu integrals
    double line_panel = 0.25;
    double quad_tol = 1e-11;   // adaptive GK tolerance for V_eff and the PV integral
};

struct DensityParts {
    double varpi1 = 0, varpi2 = 0, varpi3 = 0;
    double rho() const { return varpi1 + varpi2 + varpi3; }
};

class Density {
public:
    Density(const Problem& pb, const Support& s, const DensityConfig& cfg = {});

    // Direct contour evaluation at any xi in (a, b).
    DensityParts parts(double xi) const;
    double eval(double xi) const { return parts(xi).rho(); }

    // Barycentric interpolation of rho / sqrt((xi-a)(b-xi)) on the nodes; 0 outside.
    double interp(double xi) const;

    const std::vector<double>& xi() const { return xi_; }
    const std::vector<DensityParts>& samples() const { return parts_; }
    std::vector<double> rho() const;

    double mass() const { return mass_; }
    double first_moment() const { return moment_; }
    double min_rho() const;

    // V_eff(lambda) = V(lambda) - (1/tau) int rho(s) ln prod_a |sinh(bar omega_a (lambda - s)/2)| ds
    double effective_potential(double lambda) const;
    // sum_a pi omega_a PV int rho(s) coth(bar omega_a (lambda - s)/2) ds - V'(lambda)
    double singular_residual(double lambda) const;
    double singular_residual(double lambda, double tol) const;

    // varpi1 integrands without the exponential: A on the down rays, B on the up rays.
    cplx integrand_a(cplx lambda) const;
    cplx integrand_b(cplx lambda) const;

    const Support& support() const { return s_; }
    const Potential& potential() const { return pot_; }
    const DensityConfig& config() const { return cfg_; }
    double budget() const { return s_.budget; }

private:
    struct RayTable {
        std::vector<cplx> lambda;  // nodes
        std::vector<cplx> w1, w3;  // varpi1 / varpi3 integrand * dlambda/dt * w_t, prefactor and orientation included
        std::vector<double> t;
    };
    void build_tables(const Problem& pb);
    double pv_part(double lambda, double tol) const;
    double log_part(double lambda) const;

    DensityConfig cfg_;
    Support s_;
    Potential pot_;
    double tau_, n_, r_, alpha_;
    double omega1_, omega2_;
    WienerHopf wh_;
    UFunctions u_;

    // ray tables: down rays carry e^{-i tau lambda (xi - a)}, up rays e^{i tau lambda (b - xi)}
    RayTable down_[2], up_[2];
    // straight line for varpi0, phase e^{-i tau lambda xi}
    std::vector<cplx> line_lambda_, line_weight_;

    std::vector<double> xi_, theta_, q_;
    std::vector<DensityParts> parts_;
    double mass_ = 0, moment_ = 0;
};

}  // namespace lukyanov
