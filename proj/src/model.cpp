#include "lukyanov/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lukyanov/error.hpp"

namespace lukyanov {

ModelParams derive_scales(double r, double b, double alpha, double n, double eta) {
    if (!(r > 0.0) || !std::isfinite(r)) throw DomainError("r must be positive");
    if (!(b > 0.0) || !std::isfinite(b)) throw DomainError("b must be positive");
    if (!(n >= 2.0) || !std::isfinite(n)) throw DomainError("n must be >= 2");
    if (!(eta > 0.0 && eta < 0.5)) throw DomainError("eta must lie in (0, 1/2)");
    if (!std::isfinite(alpha)) throw DomainError("alpha must be finite");

    ModelParams p;
    p.r = r;
    p.b = b;
    p.alpha = alpha;
    p.n = n;
    p.eta = eta;
    p.tau = std::log(n);
    p.omega1 = (1.0 + b * b) / pi;
    p.omega2 = (1.0 + 1.0 / (b * b)) / pi;
    p.omega_bar1 = 2.0 * pi * p.tau * p.omega1;
    p.omega_bar2 = 2.0 * pi * p.tau * p.omega2;
    p.zeta = 2.0 * pi * p.omega1 * p.omega2 / (p.omega1 + p.omega2);
    p.kappa_eta = (1.0 - eta) * std::min(2.0, p.zeta);
    p.specialized = true;
    return p;
}

Potential::Potential(const ModelParams& p, std::shared_ptr<const TbaSolution> tba, int w_sign)
    : p_(p), tba_(std::move(tba)), w_sign_(w_sign) {
    if (w_sign != 1 && w_sign != -1) throw Error(ErrorKind::argument, "w_sign must be +1 or -1");
    if (tba_ && tba_->tail_bound() > 1e-14)
        throw QuadratureError("potential: TBA grid too narrow, convolution tail bound " +
                              std::to_string(tba_->tail_bound()));
}

double Potential::w_part(double lambda, int order) const {
    if (!tba_) return 0.0;
    // with s = tau mu: w = 1/(2 pi N tau) sum_j h g_j sech(tau lambda - s_j); trapezoid on the TBA grid
    const auto& x = tba_->grid();
    const double y0 = p_.tau * lambda;
    double acc = 0.0;
    for (size_t j = 0; j < x.size(); ++j) {
        const double gj = tba_->g_node(j);
        if (gj == 0.0) continue;
        const double y = y0 - x[j];
        const double sech = 1.0 / std::cosh(y);
        double k;
        if (order == 0)
            k = sech;
        else if (order == 1)
            k = -sech * std::tanh(y);
        else
            k = sech - 2.0 * sech * sech * sech;
        acc += gj * k;
    }
    acc *= tba_->step();
    const double base = 1.0 / (2.0 * pi * p_.n * p_.tau);
    return base * std::pow(p_.tau, order) * acc;
}

double Potential::eval(double lambda, int order) const {
    const double N = p_.n, t = p_.tau, r = p_.r;
    double v;
    switch (order) {
        case 0: v = r / (N * t) * std::cosh(t * lambda) - p_.alpha * lambda / N; break;
        case 1: v = r / N * std::sinh(t * lambda) - p_.alpha / N; break;
        case 2: v = r * t / N * std::cosh(t * lambda); break;
        default: throw Error(ErrorKind::argument, "potential order must be 0, 1 or 2");
    }
    return v + w_sign_ * w_part(lambda, order);
}

double convexity_margin(const Potential& v, const std::vector<double>& lambda_grid) {
    double m = std::numeric_limits<double>::infinity();
    for (double l : lambda_grid) m = std::min(m, v.d2(l));
    return m;
}

}  // namespace lukyanov
