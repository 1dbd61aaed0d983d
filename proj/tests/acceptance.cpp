// One line per acceptance criterion; exit status is the number of failures.
#include <algorithm>
#include <chrono>
#include <cstdarg>
#include <cmath>
#include <cstdio>
#include <memory>
#include <string>
#include <vector>

#include "lukyanov/density.hpp"
#include "lukyanov/equilibrium.hpp"
#include "lukyanov/oracle.hpp"
#include "lukyanov/verify.hpp"
#include "lukyanov/wiener_hopf.hpp"

using namespace lukyanov;

namespace {

using clk = std::chrono::steady_clock;
double since(clk::time_point t0) { return std::chrono::duration<double>(clk::now() - t0).count(); }

int failures = 0;
void report(int id, bool pass, const std::string& detail) {
    std::printf("criterion %2d %s  %s\n", id, pass ? "PASS" : "FAIL", detail.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

std::string fmt(const char* f, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

std::shared_ptr<const TbaSolution> tba10;

void c1() {
    const auto t0 = clk::now();
    double worst = 0;
    for (double b : {0.5, 1.0, 2.0}) {
        const WhIdentityErrors e = wh_identity_errors(b);
        worst = std::max({worst, e.factorisation, e.reflection, e.conjugation});
    }
    const double t = since(t0);
    report(1, worst < 1e-10 && t < 5, fmt("max identity error %.2e (tol 1e-10), %.2fs", worst, t));
}

void c2() {
    double worst = 0, re_d = 0;
    for (double b : {0.5, 1.0, 2.0}) {
        const WienerHopf wh(derive_scales(10, b, 0, 1000, 0.1));
        const WhSpecialValues s = wh_special(wh);
        const double sw = std::sqrt(wh.omega_sum());
        worst = std::max({worst, std::abs(s.r_down_0 - cplx(0, -sw)), std::abs(s.lim0_lambda_r_up - cplx(0, sw))});
        re_d = std::max(re_d, std::abs(s.dlog_r_down_0.real()));
    }
    report(2, worst < 1e-8 && re_d < 1e-8,
           fmt("special values err %.2e, |Re (ln R_down)'(0)| %.2e (tol 1e-8, b in {0.5,1,2})", worst, re_d));
}

void c3() {
    const double r = 10;
    const AsymptoticConstants k = constants(derive_scales(r, 1, 0, 1000, 0.1));
    const double g = std::tgamma(0.25);
    const double d0r = std::sqrt(2.0) * g * g / std::sqrt(pi), c0r = 2 * d0r;
    const double e_d0 = std::abs(k.d0 * r / d0r - 1), e_c0 = std::abs(k.c0 * r / c0r - 1);
    double e_ratio = 0;
    for (double b : {0.7, 1.0, 1.3}) {
        const double s1 = 1 / (2 * (1 + b * b)), s2 = 1 / (2 * (1 + 1 / (b * b)));
        const double want = std::pow(2 * s1, -2 * s1) * std::pow(2 * s2, -2 * s2);
        e_ratio = std::max(e_ratio, std::abs(constants(derive_scales(r, b, 0, 1000, 0.1)).ratio_c0_d0 - want));
    }
    const double e_d1 = std::abs(k.d1 - r * r / (8 * pi));
    const bool pass = e_d0 < 1e-6 && e_c0 < 1e-6 && e_ratio < 1e-8 && e_d1 < 1e-10;
    report(3, pass,
           fmt("d0 r = %.9f (closed form %.9f, rel %.1e), c0 r = %.9f (rel %.1e), ratio err %.1e, d1 err %.1e",
               k.d0 * r, d0r, e_d0, k.c0 * r, e_c0, e_ratio, e_d1));
}

void c4() {
    const auto t0 = clk::now();
    tba10 = std::make_shared<const TbaSolution>(solve_tba(10, 1));
    const double t = since(t0);
    double worst_res = tba10->residual_sup(), odd = 0;
    for (double b : {0.5, 2.0}) worst_res = std::max(worst_res, solve_tba(10, b).residual_sup());
    const auto& e = tba10->eps();
    for (size_t i = 0; i < e.size(); ++i) odd = std::max(odd, std::abs(e[i] - e[e.size() - 1 - i]));
    const double c = tba10->eps_at(0) - 20;
    report(4, worst_res < 1e-8 && odd < 1e-12 && c >= 0 && c <= 1e-6 && t < 10,
           fmt("residual %.1e, evenness %.1e, eps(0)-20 = %.3e, solve %.2fs", worst_res, odd, c, t));
}

void c5() {
    const Problem p0(derive_scales(10, 1, 0, 1000, 0.1), tba10);
    const Support s0 = solve_endpoints(p0);
    double res = s0.residual;
    const double sym = std::abs(s0.a + s0.b);
    std::vector<double> d;
    for (double n : {1e3, 1e4, 1e5}) {
        const Problem pb(derive_scales(10, 1, 0.5, n, 0.1), tba10);
        const Support s = solve_endpoints(pb);
        res = std::max(res, s.residual);
        d.push_back(std::abs(s.b_bar - endpoints_asymptotic(pb, AsymptoticVariant::lemma_c0).b_bar));
    }
    const bool mono = d[1] < d[0] && d[2] < d[1];
    report(5, res < 1e-10 && sym < 1e-10 && mono,
           fmt("Newton residual %.1e, |a+b| %.1e, |db_bar| vs Lemma at alpha=0.5: %.1e %.1e %.1e", res, sym, d[0],
               d[1], d[2]));
}

void c6() {
    bool pass = true;
    std::string detail;
    for (double alpha : {0.0, 0.5}) {
        const Problem pb(derive_scales(10, 1, alpha, 1000, 0.1), tba10);
        const Support s = solve_endpoints(pb);
        const Density d(pb, s);
        const double dm = std::abs(d.mass() - 1), tol = std::max(1e-3, 10 * s.budget);
        double spread = 0;
        for (int side = 0; side < 2; ++side) {
            double q[3];
            const double ds[3] = {1e-2, 1e-3, 1e-4};
            for (int k = 0; k < 3; ++k) q[k] = d.eval(side ? s.b - ds[k] : s.a + ds[k]) / std::sqrt(ds[k]);
            spread = std::max(spread, std::max(std::abs(q[0] - q[1]), std::abs(q[1] - q[2])) / std::abs(q[2]));
        }
        double asym = 0;
        if (alpha == 0) {
            const auto r = d.rho();
            for (size_t k = 0; k < r.size(); ++k) asym = std::max(asym, std::abs(r[k] - r[r.size() - 1 - k]));
        }
        pass = pass && dm <= tol && d.min_rho() >= -1e-6 && asym < 1e-6 && spread < 0.2;
        detail += fmt("[alpha=%.1f |m-1| %.1e min rho %.3f asym %.1e edge spread %.3f] ", alpha, dm, d.min_rho(), asym,
                      spread);
    }
    report(6, pass, detail);
}

void c7() {
    const auto t0 = clk::now();
    bool pass = true;
    std::string detail;
    for (double alpha : {0.0, 0.5}) {
        const Problem pb(derive_scales(10, 1, alpha, 1000, 0.1), tba10);
        const Support s = solve_endpoints(pb);
        const Density d(pb, s);
        const double mid = 0.5 * (s.a + s.b);
        std::vector<double> v;
        for (int k = 0; k <= 8; ++k) v.push_back(d.effective_potential(mid - s.x / 4 + s.x / 2 * k / 8.0));
        double lo = v[0], hi = v[0], ceq = 0;
        for (double x : v) lo = std::min(lo, x), hi = std::max(hi, x), ceq += x;
        ceq /= v.size();
        double ext = INFINITY;
        for (double off : {0.05, 0.2, 1.0}) {
            ext = std::min(ext, d.effective_potential(s.b + off) - ceq);
            ext = std::min(ext, d.effective_potential(s.a - off) - ceq);
        }
        double vmax = 0, res = 0;
        for (double x : d.xi()) vmax = std::max(vmax, std::abs(d.potential().d1(x)));
        for (double f : {-0.4, -0.2, 0.0, 0.2, 0.4}) res = std::max(res, std::abs(d.singular_residual(mid + f * s.x)));
        const double spread = (hi - lo) / std::abs(ceq);
        pass = pass && spread < 1e-2 && ext > 0 && res < 1e-3 * vmax;
        detail += fmt("[alpha=%.1f spread/|C| %.1e, min exterior excess %.3f, PV %.1e max|V'|] ", alpha, spread, ext,
                      res / vmax);
    }
    const double t = since(t0);
    report(7, pass && t < 120, detail + fmt("%.1fs", t));
}

void c8() {
    const Problem p0(derive_scales(10, 1, 0, 1000, 0.1), tba10);
    const double m0 = Density(p0, solve_endpoints(p0)).first_moment();
    double q[2];
    int k = 0;
    for (double n : {1e4, 1e6}) {
        const ModelParams p = derive_scales(10, 1, 0.5, n, 0.1);
        const Problem pb(p, tba10);
        const double m = Density(pb, solve_endpoints(pb)).first_moment();
        const double lead = p.alpha * std::log(n) / ((1 + p.b * p.b) * (1 + 1 / (p.b * p.b)));
        q[k++] = n * p.tau * m / lead;
    }
    report(8, std::abs(m0) < 1e-8 && std::abs(q[0] - 1) < 0.15 && std::abs(q[1] - 1) < 0.08,
           fmt("alpha=0 moment %.1e; ratio %.4f at N=1e4, %.4f at N=1e6", m0, q[0], q[1]));
}

void c9() {
    const auto t0 = clk::now();
    const ModelParams p = derive_scales(10, 1, 0, 200, 0.1);
    const Problem pb(p, tba10);
    const Support s = solve_endpoints(pb);
    const Density d(pb, s);
    OracleConfig oc;
    oc.nodes = 800;
    const DiscreteMeasure m = minimize_energy(p, tba10, oc);
    const OracleEdges e = oracle_endpoints(m, oc.threshold);
    OracleConfig half = oc;
    half.nodes = 400;
    const OracleEdges e2 = oracle_endpoints(minimize_energy(p, tba10, half), oc.threshold);
    const double de = std::max(std::abs(e.a - s.a), std::abs(e.b - s.b)) / s.x;
    const double dmean = std::abs(m.mean() - d.first_moment());
    const double bo = p.tau * e.b;
    const double to_c = std::abs(bo - std::log(pb.consts.c0 * p.n / 2)), to_d = std::abs(bo - std::log(pb.consts.d0 * p.n / 2));
    const double bias = p.tau * std::max(std::abs(e2.a - e.a), std::abs(e2.b - e.b));
    const double gap = std::abs(to_d - to_c);
    const double t = since(t0);
    report(9, de < 0.05 && dmean < 1e-2 && gap > 3 * bias && t < 300,
           fmt("edges off by %.2e of x, mean diff %.1e, b_bar %.4f: winner %s (gap %.3f, bias %.3f), %.1fs", de,
               dmean, bo, to_c < to_d ? "c0" : "d0", gap, bias, t));
}

void c10() {
    bool pass = true;
    std::string detail;
    SmallNConfig fine;
    fine.panels *= 2;
    for (int n : {2, 3}) {
        const double zp = z_small_n(10, 1, 0.3, n, 0.1, tba10).log_z, zm = z_small_n(10, 1, -0.3, n, 0.1, tba10).log_z;
        const double h = 1e-3;
        const double dz =
            (z_small_n(10, 1, h, n, 0.1, tba10).log_z - z_small_n(10, 1, -h, n, 0.1, tba10).log_z) / (2 * h);
        const double z0 = z_small_n(10, 1, 0, n, 0.1, tba10).log_z;
        const double rel = std::abs(std::expm1(z_small_n(10, 1, 0, n, 0.1, tba10, fine).log_z - z0));
        pass = pass && std::abs(zp - zm) < 1e-10 && std::abs(dz) < 1e-8 && std::isfinite(z0) && rel < 1e-6;
        detail += fmt("[n=%d log Z %.10f, even %.1e, dlogZ/dalpha %.1e, refine %.1e] ", n, z0, std::abs(zp - zm),
                      std::abs(dz), rel);
    }
    report(10, pass, detail);
}

template <class F>
void run(int id, F f) {
    try {
        f();
    } catch (const std::exception& e) {
        report(id, false, std::string("threw: ") + e.what());
    }
}

}  // namespace

int main() {
    run(1, c1);
    run(2, c2);
    run(3, c3);
    run(4, c4);
    if (!tba10) tba10 = std::make_shared<const TbaSolution>(solve_tba(10, 1));
    run(5, c5);
    run(6, c6);
    run(7, c7);
    run(8, c8);
    run(9, c9);
    run(10, c10);
    std::printf("%d of 10 criteria failed\n", failures);
    return failures;
}
