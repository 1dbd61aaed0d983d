#include "lukyanov/tba.hpp"

#include <algorithm>
#include <cmath>

#include "lukyanov/error.hpp"

namespace lukyanov {

namespace {

double theta_of(double b) { return pi / (1.0 + b * b); }

double log1p_exp_neg(double e) { return std::log1p(std::exp(-e)); }

// sum_j h K(x_i - x_j) f_j for a uniform grid; kernel tabulated by index offset
void convolve(const std::vector<double>& ktab, const std::vector<double>& f, double h, std::vector<double>& out) {
    const size_t n = f.size();
    out.assign(n, 0.0);
    for (size_t i = 0; i < n; ++i) {
        double s = 0.0;
        const double* k = &ktab[i + n - 1];  // k[-j] = K(x_i - x_j)
        for (size_t j = 0; j < n; ++j) s += k[-std::ptrdiff_t(j)] * f[j];
        out[i] = h * s;
    }
}

std::vector<double> kernel_table(double b, double h, size_t n) {
    std::vector<double> t(2 * n - 1);
    for (size_t k = 0; k < t.size(); ++k) t[k] = tba_kernel((double(k) - double(n - 1)) * h, b);
    return t;
}

}  // namespace

double tba_kernel(double lambda, double b) {
    // written in e^{-|lambda|} to stay finite for large arguments
    const double th = theta_of(b);
    const double q = std::exp(-std::abs(lambda));
    const double q2 = q * q;
    return 4.0 * std::sin(th) * q * (1.0 + q2) / (1.0 - 2.0 * std::cos(2.0 * th) * q2 + q2 * q2);
}

double tba_driving(double lambda, double r, double b) { return 2.0 * r * std::sin(theta_of(b)) * std::cosh(lambda); }

TbaSolution::TbaSolution(double r, double b, std::vector<double> grid, std::vector<double> eps, double residual_sup,
                         int iterations)
    : r_(r), b_(b), grid_(std::move(grid)), eps_(std::move(eps)), residual_sup_(residual_sup), iterations_(iterations) {
    if (grid_.size() < 4 || grid_.size() != eps_.size()) throw Error(ErrorKind::argument, "tba: malformed grid");
    finish();
}

void TbaSolution::finish() {
    h_ = (grid_.back() - grid_.front()) / double(grid_.size() - 1);
    g_.resize(eps_.size());
    for (size_t i = 0; i < eps_.size(); ++i) g_[i] = 2.0 * log1p_exp_neg(eps_[i]);
}

double TbaSolution::eps_at(double x) const {
    const double lo = grid_.front(), hi = grid_.back();
    if (x < lo || x > hi) return tba_driving(x, r_, b_);
    const size_t n = grid_.size();
    double s = (x - lo) / h_;
    std::ptrdiff_t i = std::ptrdiff_t(std::floor(s));
    i = std::clamp<std::ptrdiff_t>(i - 1, 0, std::ptrdiff_t(n) - 4);
    const double t = s - double(i);  // local coordinate, nodes at 0..3
    double acc = 0.0;
    for (int k = 0; k < 4; ++k) {
        double l = 1.0;
        for (int m = 0; m < 4; ++m)
            if (m != k) l *= (t - m) / double(k - m);
        acc += l * eps_[i + k];
    }
    return acc;
}

double TbaSolution::g(double x) const { return 2.0 * log1p_exp_neg(eps_at(x)); }

cplx TbaSolution::fourier_g(cplx mu) const {
    cplx s = 0.0;
    for (size_t j = 0; j < grid_.size(); ++j) s += g_[j] * std::exp(I * mu * grid_[j]);
    return h_ * s;
}

double TbaSolution::tail_bound() const {
    // g <= 2 e^{-eps} and eps >= driving outside the grid; crude geometric bound.
    const double L = half_width();
    const double d = tba_driving(L, r_, b_);
    const double slope = 2.0 * r_ * std::sin(theta_of(b_)) * std::sinh(L);
    return 2.0 * 2.0 * std::exp(-d + L) * (1.0 + L) / std::max(slope - 1.0, 1e-3);
}

double TbaSolution::recompute_residual() const {
    const size_t n = grid_.size();
    std::vector<double> l(n), conv;
    for (size_t j = 0; j < n; ++j) l[j] = log1p_exp_neg(eps_[j]);
    convolve(kernel_table(b_, h_, n), l, h_, conv);
    double res = 0.0;
    for (size_t i = 0; i < n; ++i)
        res = std::max(res, std::abs(eps_[i] - tba_driving(grid_[i], r_, b_) - conv[i]));
    return res;
}

TbaSolution solve_tba(double r, double b, const TbaConfig& cfg, std::vector<std::vector<double>>* trace) {
    if (!(r > 0.0) || !std::isfinite(r)) throw DomainError("tba: r must be positive");
    if (!(b > 0.0) || !std::isfinite(b)) throw DomainError("tba: b must be positive");
    if (cfg.points < 16) throw Error(ErrorKind::argument, "tba: need at least 16 grid points");

    const double L = cfg.half_width > 0.0 ? cfg.half_width : std::max(6.0, std::acosh(std::max(1.0, 40.0 / r)));
    const size_t n = size_t(cfg.points);
    std::vector<double> grid(n), drive(n);
    const double h = 2.0 * L / double(n - 1);
    for (size_t i = 0; i < n; ++i) grid[i] = -L + h * double(i);
    // exact symmetry of the grid
    for (size_t i = 0; i < n / 2; ++i) grid[n - 1 - i] = -grid[i];
    for (size_t i = 0; i < n; ++i) drive[i] = tba_driving(grid[i], r, b);
    const auto ktab = kernel_table(b, h, n);

    std::vector<double> eps = drive, l(n), conv;
    double delta = 0.0;
    int it = 0;
    for (; it < cfg.max_iters; ++it) {
        for (size_t j = 0; j < n; ++j) l[j] = log1p_exp_neg(eps[j]);
        convolve(ktab, l, h, conv);
        delta = 0.0;
        for (size_t i = 0; i < n; ++i) {
            const double e = drive[i] + conv[i];
            delta = std::max(delta, std::abs(e - eps[i]));
            eps[i] = e;
        }
        if (trace) trace->push_back(eps);
        if (delta < cfg.tol) break;
    }
    if (delta >= cfg.tol) throw ConvergenceError("tba: Picard iteration did not converge", it, delta);

    const double res = TbaSolution(r, b, grid, eps, 0.0, it + 1).recompute_residual();
    TbaSolution sol(r, b, std::move(grid), std::move(eps), res, it + 1);
    if (r < 1.0) sol.mutable_warnings().push_back("r < 1: Picard contraction is weak and g is not small");
    return sol;
}

}  // namespace lukyanov
