#pragma once

#include <memory>
#include <vector>

#include "lukyanov/tba.hpp"

namespace lukyanov {

struct ModelParams {
    double r = 10.0;
    double b = 1.0;
    double alpha = 0.0;
    double n = 1000.0;  // N, integer >= 2 but kept as double for the large-N sweeps
    double eta = 0.1;

    // derived
    double tau = 0.0;
    double omega1 = 0.0, omega2 = 0.0;
    double omega_bar1 = 0.0, omega_bar2 = 0.0;
    double zeta = 0.0;
    double kappa_eta = 0.0;
    bool specialized = true;

    double omega_sum() const { return omega1 + omega2; }
};

// Validates and fills the derived scales with the Lukyanov period specialization.
ModelParams derive_scales(double r, double b, double alpha, double n, double eta);

// V_{N;alpha} = v_part + w_sign * w_part.
class Potential {
public:
    // tba == nullptr is the g = 0 test mode.
    Potential(const ModelParams& p, std::shared_ptr<const TbaSolution> tba, int w_sign = -1);

    double value(double lambda) const { return eval(lambda, 0); }
    double d1(double lambda) const { return eval(lambda, 1); }
    double d2(double lambda) const { return eval(lambda, 2); }
    double eval(double lambda, int order) const;

    // Convolution part w(lambda) = int dmu/(2 pi N) g(tau mu)/cosh(tau(lambda - mu)) and its derivatives.
    double w_part(double lambda, int order) const;

    int w_sign() const { return w_sign_; }
    const ModelParams& params() const { return p_; }

private:
    ModelParams p_;
    std::shared_ptr<const TbaSolution> tba_;
    int w_sign_;
};

double convexity_margin(const Potential& v, const std::vector<double>& lambda_grid);

}  // namespace lukyanov
