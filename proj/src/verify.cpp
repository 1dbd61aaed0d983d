#include "lukyanov/verify.hpp"

#include <algorithm>
#include <cmath>

#include "lukyanov/density.hpp"
#include "lukyanov/equilibrium.hpp"
#include "lukyanov/wiener_hopf.hpp"

namespace lukyanov {

WhIdentityErrors wh_identity_errors(double b) {
    const ModelParams p = derive_scales(10.0, b, 0.0, 100, 0.1);
    const WienerHopf wh(p);
    WhIdentityErrors e;
    for (double im : {0.0, 0.4, -0.4})
        for (int k = -300; k <= 300; ++k) {
            const cplx l(0.1 * k + 0.0123, im);  // offset keeps lambda away from 0
            const cplx r = wh.jump(l), ru = wh.r_up(l), rd = wh.r_down(l);
            e.factorisation = std::max(e.factorisation, std::abs(r - ru * rd) / std::abs(r));
            e.reflection = std::max(e.reflection, std::abs(wh.r_up(-l) * l - rd) / std::abs(rd));
            e.conjugation = std::max(e.conjugation, std::abs(std::conj(wh.r_up(std::conj(l))) * l - rd) / std::abs(rd));
        }
    return e;
}

namespace {

void add(std::vector<Check>& out, std::string name, double value, double tol, bool pass) {
    out.push_back({std::move(name), value, tol, pass});
}
void add_le(std::vector<Check>& out, std::string name, double value, double tol) {
    add(out, std::move(name), value, tol, std::isfinite(value) && value <= tol);
}

}  // namespace

std::vector<Check> run_checks(const ModelParams& p, std::shared_ptr<const TbaSolution> tba, const OracleConfig& oc,
                              double oracle_n, int w_sign) {
    std::vector<Check> out;

    // wiener_hopf
    const WhIdentityErrors wi = wh_identity_errors(p.b);
    add_le(out, "wh_factorisation", wi.factorisation, 1e-10);
    add_le(out, "wh_reflection", wi.reflection, 1e-10);
    add_le(out, "wh_conjugation", wi.conjugation, 1e-10);
    const WienerHopf wh(p);
    const WhSpecialValues sv = wh_special(wh);
    const double sw = std::sqrt(wh.omega_sum());
    add_le(out, "r_down_0", std::abs(sv.r_down_0 - cplx(0.0, -sw)), 1e-8);
    add_le(out, "lim0_lambda_r_up", std::abs(sv.lim0_lambda_r_up - cplx(0.0, sw)), 1e-8);
    add_le(out, "re_dlog_r_down_0", std::abs(sv.dlog_r_down_0.real()), 1e-8);
    const AsymptoticConstants c = constants(p);
    const double s1 = 1.0 / (2.0 * (1.0 + p.b * p.b)), s2 = 1.0 / (2.0 * (1.0 + 1.0 / (p.b * p.b)));
    const double ratio = std::pow(2.0 * s1, -2.0 * s1) * std::pow(2.0 * s2, -2.0 * s2);
    add_le(out, "ratio_c0_d0_closed_form", std::abs(c.ratio_c0_d0 - ratio), 1e-8);

    // tba
    add_le(out, "tba_residual", tba->residual_sup(), 1e-8);
    double odd = 0.0;
    const auto& eps = tba->eps();
    for (size_t i = 0; i < eps.size(); ++i) odd = std::max(odd, std::abs(eps[i] - eps[eps.size() - 1 - i]));
    add_le(out, "tba_evenness", odd, 1e-12);
    {
        const double corr = tba->eps_at(0.0) - tba_driving(0.0, p.r, p.b);
        double bound = 0.0;
        for (double x : tba->grid()) bound += std::exp(-tba_driving(x, p.r, p.b));
        bound *= tba_kernel(0.0, p.b) * tba->step();
        add(out, "tba_eps0_correction", corr, bound, corr >= 0.0 && corr <= bound);
    }

    // endpoints
    const Problem pb(p, tba, w_sign);
    const Support s = solve_endpoints(pb);
    add_le(out, "newton_residual", s.residual, 1e-10);
    {
        ModelParams q = p;
        q.alpha = -p.alpha;
        const Support m = solve_endpoints(Problem(q, tba, w_sign));
        add_le(out, "endpoint_mirror_symmetry", std::abs(s.a + m.b) + std::abs(s.b + m.a), 1e-10);
    }
    {
        const Support l = endpoints_asymptotic(pb, AsymptoticVariant::lemma_c0);
        const double tol = 10.0 * std::pow(p.n, -1.0 - p.kappa_eta);
        add_le(out, "lemma_c0_agreement", std::max(std::abs(s.b_bar - l.b_bar), std::abs(s.a_bar - l.a_bar)), tol);
    }
    {
        const Potential pot(p, tba, w_sign);
        std::vector<double> grid;
        for (int k = 0; k <= 200; ++k) grid.push_back(s.a - 0.2 + (s.x + 0.4) * k / 200.0);
        const double margin = convexity_margin(pot, grid);
        add(out, "convexity_margin", margin, 0.0, margin > 0.0);
    }

    // density
    const Density d(pb, s);
    add_le(out, "unit_mass", std::abs(d.mass() - 1.0), std::max(1e-3, 10.0 * s.budget));
    add(out, "min_rho", d.min_rho(), -1e-6, d.min_rho() >= -1e-6);
    const auto rho = d.rho();
    if (p.alpha == 0.0) {
        double asym = 0.0;
        for (size_t k = 0; k < rho.size(); ++k) asym = std::max(asym, std::abs(rho[k] - rho[rho.size() - 1 - k]));
        add_le(out, "density_symmetry", asym, 1e-6);
        add_le(out, "first_moment_zero", std::abs(d.first_moment()), 1e-8);
    } else {
        const MomentAsymptotic ma = first_moment_asymptotic(pb);
        add(out, "first_moment_sign", d.first_moment() * p.alpha, 0.0, d.first_moment() * p.alpha > 0.0);
        add_le(out, "first_moment_vs_asymptotic", std::abs(d.first_moment() / ma.full - 1.0), 1e-2);
    }
    {
        double worst = 0.0;
        for (int side = 0; side < 2; ++side) {
            double r[3];
            const double ds[3] = {1e-2, 1e-3, 1e-4};
            for (int k = 0; k < 3; ++k) r[k] = d.eval(side ? s.b - ds[k] : s.a + ds[k]) / std::sqrt(ds[k]);
            worst = std::max(worst, std::max(std::abs(r[0] - r[1]), std::abs(r[1] - r[2])) / std::abs(r[2]));
        }
        add_le(out, "edge_sqrt_ratio_spread", worst, 0.2);
    }

    // variational suite
    {
        const double mid = 0.5 * (s.a + s.b);
        std::vector<double> v;
        for (int k = 0; k <= 8; ++k) v.push_back(d.effective_potential(mid - s.x / 4 + s.x / 2 * k / 8.0));
        const double lo = *std::min_element(v.begin(), v.end()), hi = *std::max_element(v.begin(), v.end());
        double ceq = 0.0;
        for (double x : v) ceq += x;
        ceq /= v.size();
        add_le(out, "veff_constancy", (hi - lo) / std::abs(ceq), 1e-2);
        const double ext = std::min(d.effective_potential(s.b + 0.2), d.effective_potential(s.a - 0.2)) - ceq;
        add(out, "veff_exterior_excess", ext, 0.0, ext > 0.0);
        double vmax = 0.0;
        for (double x : d.xi()) vmax = std::max(vmax, std::abs(d.potential().d1(x)));
        double res = 0.0;
        for (double f : {-0.4, -0.2, 0.0, 0.2, 0.4}) res = std::max(res, std::abs(d.singular_residual(mid + f * s.x)));
        add_le(out, "pv_residual_relative", res / vmax, 1e-3);
    }

    // oracle
    {
        ModelParams q = derive_scales(p.r, p.b, p.alpha, oracle_n, p.eta);
        const Problem po(q, tba, w_sign);
        const Support so = solve_endpoints(po);
        const Density dd(po, so);
        const DiscreteMeasure m = minimize_energy(q, tba, oc, w_sign);
        const OracleEdges e = oracle_endpoints(m, oc.threshold);
        add_le(out, "oracle_endpoints", std::max(std::abs(e.a - so.a), std::abs(e.b - so.b)) / so.x, 0.05);
        add_le(out, "oracle_mean", std::abs(m.mean() - dd.first_moment()), 1e-2);
        bool mono = true;
        for (size_t k = 1; k < m.history.size(); ++k) mono = mono && m.history[k] <= m.history[k - 1];
        add(out, "oracle_energy_monotone", mono ? 1.0 : 0.0, 1.0, mono);
        const OracleEdges eh = oracle_endpoints(m, oc.threshold / 2);
        add_le(out, "oracle_threshold_halving", std::max(std::abs(eh.a - e.a), std::abs(eh.b - e.b)) / m.spacing, 1.0);
        if (q.alpha == 0.0) {
            double asym = 0.0;
            const auto& w = m.weights;
            for (size_t k = 0; k < w.size(); ++k) asym = std::max(asym, std::abs(w[k] - w[w.size() - 1 - k]));
            add_le(out, "oracle_symmetry", asym, 1e-6);
        }
        OracleConfig half = oc;
        half.nodes = oc.nodes / 2;
        const OracleEdges e2 = oracle_endpoints(minimize_energy(q, tba, half, w_sign), oc.threshold);
        const double bias = q.tau * std::max(std::abs(e2.a - e.a), std::abs(e2.b - e.b));
        const double bo = q.tau * e.b;
        const double gap = std::abs(bo - std::log(po.consts.d0 * q.n / 2)) - std::abs(bo - std::log(po.consts.c0 * q.n / 2));
        add(out, "discriminator_gap_over_bias", gap / bias, 3.0, gap > 3.0 * bias);
    }

    // small-N partition function
    {
        SmallNConfig fine;
        fine.panels *= 2;
        const double zp = z_small_n(p.r, p.b, 0.3, 2, p.eta, tba, {}, w_sign).log_z;
        const double zm = z_small_n(p.r, p.b, -0.3, 2, p.eta, tba, {}, w_sign).log_z;
        add_le(out, "z2_even_in_alpha", std::abs(zp - zm), 1e-10);
        const double h = 1e-3;
        const double dz = (z_small_n(p.r, p.b, h, 2, p.eta, tba, {}, w_sign).log_z -
                           z_small_n(p.r, p.b, -h, 2, p.eta, tba, {}, w_sign).log_z) / (2 * h);
        add_le(out, "z2_dalpha_at_0", std::abs(dz), 1e-8);
        for (int n : {2, 3}) {
            const double a = z_small_n(p.r, p.b, p.alpha, n, p.eta, tba, {}, w_sign).log_z;
            const double f = z_small_n(p.r, p.b, p.alpha, n, p.eta, tba, fine, w_sign).log_z;
            add_le(out, "z" + std::to_string(n) + "_refinement", std::abs(std::expm1(f - a)), 1e-6);
        }
    }
    return out;
}

}  // namespace lukyanov
