#include "lukyanov/density.hpp"

#include <algorithm>
#include <cmath>

#include "lukyanov/error.hpp"
#include "lukyanov/quadrature.hpp"

namespace lukyanov {

namespace {

// ln(sinh(x)/x) for x >= 0
double log_sinh_over_x(double x) {
    if (x < 1e-6) return x * x / 6.0;
    if (x < 20.0) return std::log(std::sinh(x) / x);
    return x + std::log1p(-std::exp(-2.0 * x)) - std::log(2.0 * x);
}

// coth(x) - 1/x
double coth_minus_inv(double x) {
    if (std::abs(x) < 1e-4) return x / 3.0 - x * x * x / 45.0;
    return 1.0 / std::tanh(x) - 1.0 / x;
}

std::vector<double> geometric_edges(double first, double ratio, double t_max) {
    std::vector<double> e{0.0};
    double w = first;
    while (e.back() < t_max) {
        e.push_back(e.back() + w);
        w *= ratio;
    }
    return e;
}

}  // namespace

Density::Density(const Problem& pb, const Support& s, const DensityConfig& cfg)
    : cfg_(cfg), s_(s), pot_(pb.params, pb.tba, pb.w_sign), tau_(pb.params.tau), n_(pb.params.n),
      r_(pb.params.r), alpha_(pb.params.alpha), omega1_(pb.params.omega1), omega2_(pb.params.omega2), wh_(pb.wh),
      u_(std::exp(s.b_bar), std::exp(-s.a_bar), chi_anchors(pb, s.x_bar).chi11_i, chi_anchors(pb, s.x_bar).chi12_i) {
    if (!(s.x > 0.0)) throw DomainError("density: empty support");
    if (cfg.points < 16) throw Error(ErrorKind::argument, "density: too few points");
    build_tables(pb);

    const int n = cfg.points;
    const double mid = 0.5 * (s.a + s.b), half = 0.5 * s.x;
    xi_.resize(n);
    theta_.resize(n);
    q_.resize(n);
    parts_.resize(n);
    double m = 0.0, m1 = 0.0;
    for (int k = 0; k < n; ++k) {
        theta_[k] = (2.0 * k + 1.0) * pi / (2.0 * n);
        xi_[k] = mid - half * std::cos(theta_[k]);
        parts_[k] = parts(xi_[k]);
        const double rho = parts_[k].rho();
        q_[k] = rho / (half * std::sin(theta_[k]));
        m += rho * std::sin(theta_[k]);
        m1 += xi_[k] * rho * std::sin(theta_[k]);
    }
    mass_ = half * pi / n * m;
    moment_ = half * pi / n * m1;
}

cplx Density::integrand_a(cplx lambda) const {
    return (u_.u12(lambda) + u_.u11(lambda)) / wh_.lambda_r_up(lambda);
}

cplx Density::integrand_b(cplx lambda) const { return -u_.u11(lambda) / wh_.r_down(lambda); }

void Density::build_tables(const Problem& pb) {
    const auto& P = pb.params;
    const double cb = std::cos(cfg_.beta);
    const double t_max = cfg_.decay / (tau_ * cfg_.d_floor * s_.x * cb) + 1.0;
    const Rule rule = composite_rule(geometric_edges(cfg_.first_panel, cfg_.panel_ratio, t_max), cfg_.per_panel);

    const double N = P.n;
    const cplx p1 = r_ * tau_ / (4.0 * I * pi * N) / (2.0 * I * pi);
    const cplx p3 = pb.w_sign * tau_ / (4.0 * I * pi * N) / (2.0 * I * pi);
    const double ind = pb.indicator();
    const double kappa = P.kappa_eta;
    const double fgi = pb.fg_i;

    // inner mu integrals for the E-vectors, on R - i kappa (up) and R + i kappa (down)
    int n_panels = static_cast<int>(std::ceil(2.0 * cfg_.mu_cut / cfg_.line_panel));
    std::vector<double> mu_edges(n_panels + 1);
    for (int k = 0; k <= n_panels; ++k) mu_edges[k] = -cfg_.mu_cut + k * (2.0 * cfg_.mu_cut / n_panels);
    const Rule mu_rule = composite_rule(mu_edges, cfg_.per_panel);
    const size_t nm = mu_rule.x.size();
    std::vector<cplx> mu_up(nm), f_up(nm), mu_dn(nm), f_dn(nm);
    for (size_t j = 0; j < nm; ++j) {
        const cplx w = mu_rule.w[j] / (2.0 * I * pi);
        mu_up[j] = cplx(mu_rule.x[j], -kappa);
        mu_dn[j] = cplx(mu_rule.x[j], kappa);
        const cplx mu = mu_up[j], md = mu_dn[j];
        f_up[j] = w * mu * pb.tba->fourier_g(mu) * std::exp(-I * s_.b_bar * mu) /
                  (std::cosh(pi * mu / 2.0) * wh_.r_up(mu));
        f_dn[j] = w * md * md * pb.tba->fourier_g(md) * std::exp(-I * s_.a_bar * md) /
                  (std::cosh(pi * md / 2.0) * wh_.r_down(md));
    }
    const cplx r_up_mi = pb.special.r_up_minus_i, r_down_i = pb.special.r_down_i;

    auto s_up = [&](cplx lambda) {
        cplx acc = 0.0;
        for (size_t j = 0; j < nm; ++j) acc += f_up[j] / (mu_up[j] - lambda);
        return std::exp(-s_.b_bar) * 2.0 * fgi / (pi * (lambda + I) * r_up_mi) * ind + acc;
    };
    auto t_down = [&](cplx lambda) {
        cplx acc = 0.0;
        for (size_t j = 0; j < nm; ++j) acc += f_dn[j] / (mu_dn[j] - lambda);
        return std::exp(s_.a_bar) * 2.0 * fgi * I / (pi * (I - lambda) * r_down_i) * ind + acc;
    };

    const cplx vertex(0.0, cfg_.lift);
    const cplx dir_down[2] = {std::exp(-I * (pi / 2 - cfg_.beta)), std::exp(-I * (pi / 2 + cfg_.beta))};
    const cplx dir_up[2] = {std::exp(I * (pi / 2 - cfg_.beta)), std::exp(I * (pi / 2 + cfg_.beta))};
    const double orient[2] = {1.0, -1.0};
    for (int side = 0; side < 2; ++side) {
        RayTable& d = down_[side];
        RayTable& u = up_[side];
        for (size_t j = 0; j < rule.x.size(); ++j) {
            const double t = rule.x[j];
            const cplx ld = vertex + t * dir_down[side];
            const cplx jd = orient[side] * rule.w[j] * dir_down[side];
            const cplx lr = wh_.lambda_r_up(ld);
            d.lambda.push_back(ld);
            d.t.push_back(t);
            d.w1.push_back(p1 * jd * (u_.u12(ld) + u_.u11(ld)) / lr);
            // eps_down = -1 times (E_L, E_down) = -T/(lambda R_up)
            d.w3.push_back(p3 * jd * t_down(ld) / lr);

            const cplx lu = vertex + t * dir_up[side];
            const cplx ju = orient[side] * rule.w[j] * dir_up[side];
            const cplx rd = wh_.r_down(lu);
            u.lambda.push_back(lu);
            u.t.push_back(t);
            u.w1.push_back(-p1 * ju * u_.u11(lu) / rd);
            // eps_up = +1 times (E_L, E_up) = -e^{i lambda x_bar} S/R_down
            u.w3.push_back(-p3 * ju * s_up(lu) / rd);
        }
    }

    // varpi0 on R + i lift: integrand (-1/R) lambda F[g] / cosh(pi lambda/2)
    n_panels = static_cast<int>(std::ceil(2.0 * cfg_.line_cut / cfg_.line_panel));
    std::vector<double> edges(n_panels + 1);
    for (int k = 0; k <= n_panels; ++k) edges[k] = -cfg_.line_cut + k * (2.0 * cfg_.line_cut / n_panels);
    const Rule lr = composite_rule(edges, cfg_.per_panel);
    const cplx p0 = -pb.w_sign * tau_ / (4.0 * I * pi * N) / (2.0 * I * pi);
    for (size_t j = 0; j < lr.x.size(); ++j) {
        const cplx l(lr.x[j], cfg_.lift);
        line_lambda_.push_back(l);
        line_weight_.push_back(p0 * lr.w[j] * (-1.0 / wh_.jump(l)) * l * pb.tba->fourier_g(l) / std::cosh(pi * l / 2.0));
    }
}

DensityParts Density::parts(double xi) const {
    const double da = xi - s_.a, db = s_.b - xi;
    if (!(da > 0.0) || !(db > 0.0)) throw DomainError("density: xi outside the open support");
    if (std::min(da, db) < cfg_.d_floor * s_.x) throw DomainError("density: xi closer to an edge than the node tables cover");
    const double cut = -(cfg_.decay + 20.0);
    cplx s1 = 0.0, s3 = 0.0;
    auto sweep = [&](const RayTable& t, cplx phase_scale) {
        for (size_t j = 0; j < t.lambda.size(); ++j) {
            const cplx ph = phase_scale * t.lambda[j];
            if (ph.real() < cut) break;  // nodes are ordered in t within each panel, panels increasing
            const cplx e = std::exp(ph);
            s1 += t.w1[j] * e;
            s3 += t.w3[j] * e;
        }
    };
    for (int side = 0; side < 2; ++side) {
        sweep(down_[side], -I * tau_ * da);
        sweep(up_[side], I * tau_ * db);
    }
    for (size_t j = 0; j < line_lambda_.size(); ++j) s3 += line_weight_[j] * std::exp(-I * tau_ * line_lambda_[j] * xi);
    DensityParts p;
    p.varpi1 = s1.real();
    p.varpi2 = 0.0;  // chi_{12;-}(0) = 0 for the leading parametrix
    p.varpi3 = s3.real();
    return p;
}

std::vector<double> Density::rho() const {
    std::vector<double> r(parts_.size());
    for (size_t k = 0; k < r.size(); ++k) r[k] = parts_[k].rho();
    return r;
}

double Density::min_rho() const {
    double m = parts_.front().rho();
    for (const auto& p : parts_) m = std::min(m, p.rho());
    return m;
}

double Density::interp(double xi) const {
    if (!(xi > s_.a) || !(xi < s_.b)) return 0.0;
    double num = 0.0, den = 0.0;
    for (size_t k = 0; k < xi_.size(); ++k) {
        const double d = xi - xi_[k];
        if (d == 0.0) return parts_[k].rho();
        const double w = ((k % 2) ? -1.0 : 1.0) * std::sin(theta_[k]) / d;
        num += w * q_[k];
        den += w;
    }
    return num / den * std::sqrt((xi - s_.a) * (s_.b - xi));
}

double Density::log_part(double lambda) const {
    // int rho(s) ln prod_a |sinh(c_a (lambda - s))| ds, c_a = bar omega_a / 2,
    // with ln|lambda - s| subtracted at s = lambda
    const double mid = 0.5 * (s_.a + s_.b), half = 0.5 * s_.x;
    const double c1 = pi * tau_ * omega1_, c2 = pi * tau_ * omega2_;
    const bool inside = lambda > s_.a && lambda < s_.b;
    const double rl = inside ? interp(lambda) : 0.0;
    auto f = [&](double th) {
        const double sn = std::sin(th);
        const double s = mid - half * std::cos(th);
        const double rs = interp(s);
        const double d = std::abs(lambda - s);
        if (d == 0.0) return 0.0;
        const double ld = std::log(d);
        const double smooth = std::log(c1) + std::log(c2) + log_sinh_over_x(c1 * d) + log_sinh_over_x(c2 * d);
        return half * sn * ((rs - rl) * 2.0 * ld + rs * smooth);
    };
    double total = 0.0;
    if (inside) {
        const double th = std::acos(std::clamp((mid - lambda) / half, -1.0, 1.0));
        total += integrate(f, 0.0, th, cfg_.quad_tol, cfg_.quad_tol).value;
        total += integrate(f, th, pi, cfg_.quad_tol, cfg_.quad_tol).value;
        const double la = lambda - s_.a, lb = s_.b - lambda;
        total += rl * 2.0 * (la * std::log(la) + lb * std::log(lb) - s_.x);
    } else {
        total = integrate(f, 0.0, pi, cfg_.quad_tol, cfg_.quad_tol).value;
    }
    return total;
}

double Density::effective_potential(double lambda) const { return pot_.value(lambda) - log_part(lambda) / tau_; }

double Density::pv_part(double lambda, double tol) const {
    const double mid = 0.5 * (s_.a + s_.b), half = 0.5 * s_.x;
    const double c1 = pi * tau_ * omega1_, c2 = pi * tau_ * omega2_;
    const double rl = interp(lambda);
    auto f = [&](double th) {
        const double sn = std::sin(th);
        const double s = mid - half * std::cos(th);
        const double rs = interp(s);
        const double d = lambda - s;
        if (d == 0.0) return 0.0;
        const double sing = 2.0 / tau_ * (rs - rl) / d;
        const double smooth = rs * (pi * omega1_ * coth_minus_inv(c1 * d) + pi * omega2_ * coth_minus_inv(c2 * d));
        return half * sn * (sing + smooth);
    };
    const double th = std::acos(std::clamp((mid - lambda) / half, -1.0, 1.0));
    double total = integrate(f, 0.0, th, tol, tol).value + integrate(f, th, pi, tol, tol).value;
    total += 2.0 / tau_ * rl * std::log((lambda - s_.a) / (s_.b - lambda));
    return total;
}

double Density::singular_residual(double lambda) const { return singular_residual(lambda, cfg_.quad_tol); }

double Density::singular_residual(double lambda, double tol) const {
    if (!(lambda > s_.a) || !(lambda < s_.b)) throw DomainError("singular_residual: lambda outside the support");
    return pv_part(lambda, tol) - pot_.d1(lambda);
}

}  // namespace lukyanov
