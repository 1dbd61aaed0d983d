#pragma once

#include <string>
#include <vector>

#include "lukyanov/special.hpp"

namespace lukyanov {

struct TbaConfig {
    double half_width = 0.0;  // <= 0 selects max(6, acosh(40/r))
    int points = 2048;
    double tol = 1e-10;
    int max_iters = 200;
};

// Kernel K(lambda) = 4 cosh(lambda) sin(theta) / (cosh(2 lambda) - cos(2 theta)),
// theta = pi / (1 + b^2).
double tba_kernel(double lambda, double b);

// Driving term 2 r sin(theta) cosh(lambda).
double tba_driving(double lambda, double r, double b);

class TbaSolution {
public:
    TbaSolution() = default;
    // Adopts a precomputed grid solution (cache reload). Grid must be uniform.
    TbaSolution(double r, double b, std::vector<double> grid, std::vector<double> eps, double residual_sup,
                int iterations);

    double r() const { return r_; }
    double b() const { return b_; }
    double half_width() const { return grid_.empty() ? 0.0 : grid_.back(); }
    double step() const { return h_; }
    const std::vector<double>& grid() const { return grid_; }
    const std::vector<double>& eps() const { return eps_; }
    double residual_sup() const { return residual_sup_; }
    int iterations() const { return iterations_; }
    const std::vector<std::string>& warnings() const { return warnings_; }

    // Cubic interpolation on the grid, driving term outside.
    double eps_at(double x) const;
    // g(x) = 2 ln(1 + exp(-eps(x)))
    double g(double x) const;
    double g_node(size_t i) const { return g_[i]; }
    // F[g](mu) = int g(eta) exp(i mu eta) d eta, trapezoid on the grid nodes.
    cplx fourier_g(cplx mu) const;
    // Bound on int_{|eta|>L} g(eta) (1 + |eta|) e^{c|eta|} for c = 1, used as a truncation guard.
    double tail_bound() const;

    // sup over grid nodes of |eps - driving - K * ln(1 + e^{-eps})|
    double recompute_residual() const;

    std::vector<std::string>& mutable_warnings() { return warnings_; }

private:
    void finish();

    double r_ = 0.0, b_ = 0.0, h_ = 0.0;
    std::vector<double> grid_, eps_, g_;
    double residual_sup_ = 0.0;
    int iterations_ = 0;
    std::vector<std::string> warnings_;
};

// Picard iteration eps <- driving + K * ln(1 + e^{-eps}).
// The map is order-reversing, so iterates alternate around the fixed point;
// `trace` (optional) receives eps(0) after every sweep.
TbaSolution solve_tba(double r, double b, const TbaConfig& cfg = {}, std::vector<std::vector<double>>* trace = nullptr);

}  // namespace lukyanov
