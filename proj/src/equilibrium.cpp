#include "lukyanov/equilibrium.hpp"

#include <array>
#include <cmath>

#include "lukyanov/error.hpp"

namespace lukyanov {

Problem::Problem(const ModelParams& p, std::shared_ptr<const TbaSolution> t, int sign)
    : params(p), tba(std::move(t)), wh(p), special(wh_special(wh)), consts(constants(p)), fg_i(0.0), w_sign(sign) {
    if (!tba) throw Error(ErrorKind::argument, "problem: TBA solution required");
    if (std::abs(tba->r() - p.r) > 1e-14 * p.r || std::abs(tba->b() - p.b) > 1e-14 * p.b)
        throw Error(ErrorKind::argument, "problem: TBA solved for different (r, b)");
    const cplx f = tba->fourier_g(I);
    if (std::abs(f.imag()) > 1e-12 * std::max(1.0, std::abs(f.real())))
        throw QuadratureError("F[g](i) is not real");
    fg_i = f.real();
}

const char* to_string(SupportMethod m) {
    switch (m) {
        case SupportMethod::newton_solved: return "newton_solved";
        case SupportMethod::asymptotic_c0: return "asymptotic_c0";
        case SupportMethod::asymptotic_d0: return "asymptotic_d0";
    }
    return "?";
}

Support make_support(const ModelParams& p, double a_bar, double b_bar, SupportMethod m) {
    Support s;
    s.a_bar = a_bar;
    s.b_bar = b_bar;
    s.x_bar = b_bar - a_bar;
    s.a = a_bar / p.tau;
    s.b = b_bar / p.tau;
    s.x = s.b - s.a;
    s.nu = std::exp(b_bar) + std::exp(-a_bar);
    s.v = std::exp(b_bar) - std::exp(-a_bar);
    s.method = m;
    s.budget = std::exp(-p.zeta * (1.0 - p.eta) * s.x_bar);
    return s;
}

ChiAnchors chi_anchors(const Problem& pb, double x_bar) {
    const Parametrix px(pb.wh, x_bar, pb.params.eta);
    const ChiEval ci = px.eval(I, Band::upper);
    ChiAnchors c;
    c.chi11_i = ci.c11;
    c.chi12_i = ci.c12;
    const cplx f0 = pb.special.lim0_lambda_r_up, r0 = pb.special.r_down_0;
    c.m0.chi11m0 = 1.0 / f0 - 1.0 / r0;
    c.m0.chi11m0_prime = (-I * x_bar - pb.special.dlog_lambda_r_up_0) / f0 + pb.special.dlog_r_down_0 / r0;
    c.m0.chi12m0 = 0.0;
    c.m0.chi12m0_prime = 1.0 / f0;
    return c;
}

namespace {

// exact-in-(p, q) evaluation used by both the public functions and Newton
struct Eb {
    double p, q;  // e^{b_bar}, e^{-a_bar}
};

cplx j_value(const Problem& pb, Eb e) {
    const auto& P = pb.params;
    const double x_bar = std::log(e.p) + std::log(e.q);
    const ChiAnchors c = chi_anchors(pb, x_bar);
    const double Nt = P.n * P.tau;
    const cplx t1 = P.r * c.chi11_i * (e.p - e.q) / (2.0 * I * Nt);
    const cplx t2 = P.alpha * c.m0.chi11m0 / (I * Nt);
    const cplx t3 = pb.w_sign * pb.fg_i * (1.0 / e.p - 1.0 / e.q) * pb.indicator() /
                    (pi * Nt * pb.special.r_up_minus_i);
    return t1 - t2 - t3;
}

cplx mass_value(const Problem& pb, Eb e) {
    const auto& P = pb.params;
    const double x_bar = std::log(e.p) + std::log(e.q);
    const ChiAnchors c = chi_anchors(pb, x_bar);
    const auto& m = c.m0;
    const double N = P.n;
    const cplx t_alpha = -P.alpha / (2.0 * pi * N) * m.chi11m0_prime * m.chi12m0;
    const cplx brace = I * (e.p - e.q) * (m.chi11m0 * c.chi11_i / 2.0 - m.chi12m0_prime * c.chi11_i) +
                       (e.p + e.q) * (m.chi11m0 * c.chi12_i - m.chi12m0 * c.chi11_i -
                                      I / 2.0 * m.chi11m0 * c.chi11_i);
    const cplx t_r = -P.r / (4.0 * I * pi * N) * brace;
    const cplx t_g = pb.w_sign * pb.fg_i / (2.0 * pi * pi * N * pb.special.r_down_i * pb.special.r_down_0) *
                     (1.0 / e.p + 1.0 / e.q) * pb.indicator();
    return t_alpha + t_r + t_g;
}

double real_checked(cplx z, double scale, const char* what) {
    if (std::abs(z.imag()) > 1e-9 * std::max(scale, std::abs(z.real())))
        throw QuadratureError(std::string(what) + ": imaginary part above tolerance");
    return z.real();
}

}  // namespace

double constraint_j(const Problem& pb, const Support& s) {
    const cplx j = j_value(pb, {std::exp(s.b_bar), std::exp(-s.a_bar)});
    return real_checked(j, 1.0 / (pb.params.n * pb.params.tau), "constraint_J");
}

double mass_constraint(const Problem& pb, const Support& s) {
    return real_checked(mass_value(pb, {std::exp(s.b_bar), std::exp(-s.a_bar)}), 1.0, "mass_constraint");
}

Support solve_endpoints(const Problem& pb, const EndpointConfig& cfg) {
    const auto& P = pb.params;
    const double N = P.n;
    const double c0 = pb.consts.c0;

    auto admissible = [&](double u, double v) {
        if (!(u > 0.0) || !(N * u > std::abs(v))) return false;
        const double x_bar = std::log((N * u + v) / 2.0) + std::log((N * u - v) / 2.0);
        return x_bar / P.tau >= 2.0 * cfg.varsigma;
    };
    // scaled residual: (tau J, mass - 1); the terms of tau J are O(1), so rounding stays near 1e-16
    auto residual = [&](double u, double v) {
        const Eb e{(N * u + v) / 2.0, (N * u - v) / 2.0};
        const double j = j_value(pb, e).real() * P.tau;
        const double m = mass_value(pb, e).real() - 1.0;
        return std::array<double, 2>{j, m};
    };
    auto norm = [](const std::array<double, 2>& f) { return std::max(std::abs(f[0]), std::abs(f[1])); };

    double u = c0, v = P.alpha * c0 / (pi * P.omega_sum());
    if (!admissible(u, v)) throw DomainError("solve_endpoints: initial point outside the admissible domain");
    auto f = residual(u, v);
    int it = 0;
    for (; it < cfg.max_iters && norm(f) > cfg.tol; ++it) {
        // central-difference Jacobian
        const double hu = 1e-6 * std::max(1.0, std::abs(u)), hv = 1e-6 * std::max(1.0, std::abs(v));
        const auto fu1 = residual(u + hu, v), fu0 = residual(u - hu, v);
        const auto fv1 = residual(u, v + hv), fv0 = residual(u, v - hv);
        const double a11 = (fu1[0] - fu0[0]) / (2 * hu), a21 = (fu1[1] - fu0[1]) / (2 * hu);
        const double a12 = (fv1[0] - fv0[0]) / (2 * hv), a22 = (fv1[1] - fv0[1]) / (2 * hv);
        const double det = a11 * a22 - a12 * a21;
        if (!(std::abs(det) > 0.0)) throw ConvergenceError("solve_endpoints: singular Jacobian", it, norm(f));
        const double du = -(a22 * f[0] - a12 * f[1]) / det;
        const double dv = -(-a21 * f[0] + a11 * f[1]) / det;
        double t = 1.0;
        bool accepted = false;
        for (int k = 0; k < 40; ++k, t *= cfg.damping) {
            const double un = u + t * du, vn = v + t * dv;
            if (!admissible(un, vn)) continue;
            const auto fn = residual(un, vn);
            if (norm(fn) < norm(f) || norm(fn) <= cfg.tol) {
                u = un;
                v = vn;
                f = fn;
                accepted = true;
                break;
            }
        }
        if (!accepted) break;
    }
    const Eb e{(N * u + v) / 2.0, (N * u - v) / 2.0};
    const double res = std::max(std::abs(j_value(pb, e).real()), std::abs(mass_value(pb, e).real() - 1.0));
    if (norm(f) > 100.0 * cfg.tol) throw ConvergenceError("solve_endpoints: Newton did not converge", it, res);

    Support s = make_support(P, -std::log(e.q), std::log(e.p), SupportMethod::newton_solved);
    s.residual = res;
    s.iterations = it;
    return s;
}

Support endpoints_asymptotic(const Problem& pb, AsymptoticVariant variant) {
    const auto& P = pb.params;
    const double N = P.n;
    const double pw = pi * P.omega_sum();  // (1+b^2)(1+b^-2)
    const double A = P.alpha / (pw * N);
    const double B2 = P.alpha * P.alpha / (2.0 * pw * pw);
    const double corr = 2.0 * pb.w_sign * pb.fg_i * pb.indicator() / (pi * P.r);
    double L, shift;  // b_bar = L + A - shift, a_bar = -L + A + shift
    if (variant == AsymptoticVariant::lemma_c0) {
        const cplx c = 4.0 * I * pb.special.r_up_i / (pb.consts.c0 * pb.consts.c0 * pb.special.r_down_i);
        L = std::log(pb.consts.c0 * N / 2.0);
        shift = (c.real() * (1.0 + corr) + B2) / (N * N);
    } else {
        const double d1 = pb.consts.d1 * (1.0 + corr * (1.0 + P.alpha / pi));
        L = std::log(pb.consts.d0 * N / 2.0);
        shift = (B2 - d1) / (N * N);
    }
    return make_support(P, -L + A + shift, L + A - shift,
                        variant == AsymptoticVariant::lemma_c0 ? SupportMethod::asymptotic_c0
                                                               : SupportMethod::asymptotic_d0);
}

MomentAsymptotic first_moment_asymptotic(const Problem& pb) {
    const auto& P = pb.params;
    const double pw = pi * P.omega_sum();
    MomentAsymptotic m;
    const cplx bracket = std::log(P.n * pb.consts.c0 / 2.0) + I * pb.special.dlog_r_down_0;
    m.full = P.alpha / (pw * P.n * P.tau) * bracket.real();
    m.simplified = P.alpha * std::log(P.n) / ((1.0 + P.b * P.b) * (1.0 + 1.0 / (P.b * P.b)) * P.n * P.tau);
    return m;
}

}  // namespace lukyanov
