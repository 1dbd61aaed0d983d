#include "lukyanov/lukyanov.h"

#include <fstream>
#include <memory>
#include <new>
#include <string>

#include <json.hpp>

#include "lukyanov/density.hpp"
#include "lukyanov/equilibrium.hpp"
#include "lukyanov/error.hpp"
#include "lukyanov/oracle.hpp"
#include "lukyanov/verify.hpp"
#include "lukyanov/wiener_hopf.hpp"

using namespace lukyanov;

struct lk_tba {
    std::shared_ptr<const TbaSolution> s;
};
struct lk_density {
    std::unique_ptr<Density> d;
};
struct lk_measure {
    DiscreteMeasure m;
};
struct lk_checks {
    std::vector<Check> v;
};

namespace {

thread_local std::string last_error;

lk_status fail(lk_status s, const std::string& msg) {
    last_error = msg;
    return s;
}

template <class F>
lk_status guard(F&& f) {
    try {
        last_error.clear();
        f();
        return LK_OK;
    } catch (const Error& e) {
        switch (e.kind()) {
            case ErrorKind::domain: return fail(LK_ERR_DOMAIN, e.what());
            case ErrorKind::convergence: return fail(LK_ERR_CONVERGENCE, e.what());
            case ErrorKind::quadrature: return fail(LK_ERR_QUADRATURE, e.what());
            case ErrorKind::io: return fail(LK_ERR_IO, e.what());
            case ErrorKind::argument: return fail(LK_ERR_ARGUMENT, e.what());
        }
        return fail(LK_ERR_INTERNAL, e.what());
    } catch (const std::bad_alloc&) {
        return fail(LK_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(LK_ERR_INTERNAL, e.what());
    }
}

void need(const void* p, const char* what) {
    if (!p) throw Error(ErrorKind::argument, std::string(what) + " is null");
}

ModelParams params(const lk_model* m) {
    need(m, "model");
    return derive_scales(m->r, m->b, m->alpha, m->n, m->eta);
}

int sign_of(const lk_model* m) {
    if (m->w_sign == 0) return -1;
    if (m->w_sign != 1 && m->w_sign != -1) throw Error(ErrorKind::argument, "w_sign must be -1, 0 or 1");
    return m->w_sign;
}

std::shared_ptr<const TbaSolution> tba_of(const lk_tba* t) {
    need(t, "tba");
    return t->s;
}

Support support_of(const ModelParams& p, const lk_support* s) {
    need(s, "support");
    const SupportMethod m = s->method == LK_NEWTON           ? SupportMethod::newton_solved
                            : s->method == LK_ASYMPTOTIC_C0 ? SupportMethod::asymptotic_c0
                                                            : SupportMethod::asymptotic_d0;
    Support out = make_support(p, s->a_bar, s->b_bar, m);
    out.residual = s->residual;
    out.iterations = s->iterations;
    return out;
}

}  // namespace

extern "C" {

const char* lk_last_error(void) { return last_error.c_str(); }

const char* lk_status_name(lk_status s) {
    switch (s) {
        case LK_OK: return "ok";
        case LK_ERR_DOMAIN: return "domain error";
        case LK_ERR_CONVERGENCE: return "convergence failure";
        case LK_ERR_QUADRATURE: return "quadrature failure";
        case LK_ERR_IO: return "io error";
        case LK_ERR_ARGUMENT: return "invalid argument";
        case LK_ERR_INTERNAL: return "internal error";
    }
    return "unknown";
}

void lk_model_default(lk_model* m) {
    if (m) *m = lk_model{10.0, 1.0, 0.0, 1000.0, 0.1, -1};
}

lk_status lk_model_scales(const lk_model* m, lk_scales* out) {
    return guard([&] {
        need(out, "out");
        const ModelParams p = params(m);
        *out = {p.tau, p.omega1, p.omega2, p.omega_bar1, p.omega_bar2, p.zeta, p.kappa_eta};
    });
}

void lk_tba_config_default(lk_tba_config* c) {
    if (!c) return;
    const TbaConfig d;
    *c = {d.half_width, d.points, d.tol, d.max_iters};
}

lk_status lk_tba_solve(double r, double b, const lk_tba_config* c, lk_tba** out) {
    return guard([&] {
        need(out, "out");
        TbaConfig cfg;
        if (c) cfg = {c->half_width, c->points, c->tol, c->max_iters};
        if (!(cfg.tol > 0.0)) throw Error(ErrorKind::argument, "tba tol must be positive");
        auto s = std::make_shared<const TbaSolution>(solve_tba(r, b, cfg));
        *out = new lk_tba{std::move(s)};
    });
}

lk_status lk_tba_load(const char* path, lk_tba** out) {
    return guard([&] {
        need(path, "path");
        need(out, "out");
        std::ifstream f(path);
        if (!f) throw IoError(std::string("cannot open ") + path);
        nlohmann::json j;
        try {
            f >> j;
            auto grid = j.at("grid").get<std::vector<double>>();
            auto eps = j.at("eps_values").get<std::vector<double>>();
            auto s = std::make_shared<const TbaSolution>(j.at("r").get<double>(), j.at("b").get<double>(),
                                                         std::move(grid), std::move(eps),
                                                         j.at("residual_sup").get<double>(),
                                                         j.value("iterations", 0));
            *out = new lk_tba{std::move(s)};
        } catch (const nlohmann::json::exception& e) {
            throw IoError(std::string("malformed tba cache ") + path + ": " + e.what());
        }
    });
}

lk_status lk_tba_save(const lk_tba* t, const char* path) {
    return guard([&] {
        need(path, "path");
        const auto s = tba_of(t);
        nlohmann::json j;
        j["r"] = s->r();
        j["b"] = s->b();
        j["residual_sup"] = s->residual_sup();
        j["iterations"] = s->iterations();
        j["grid"] = s->grid();
        j["eps_values"] = s->eps();
        std::ofstream f(path);
        if (!f) throw IoError(std::string("cannot write ") + path);
        f << j.dump() << "\n";
        if (!f) throw IoError(std::string("write failed: ") + path);
    });
}

lk_status lk_tba_get_info(const lk_tba* t, lk_tba_info* out) {
    return guard([&] {
        need(out, "out");
        const auto s = tba_of(t);
        out->r = s->r();
        out->b = s->b();
        out->half_width = s->half_width();
        out->step = s->step();
        out->residual = s->residual_sup();
        out->eps0 = s->eps_at(0.0);
        out->fourier_g_i = s->fourier_g(cplx(0.0, 1.0)).real();
        out->points = int(s->grid().size());
        out->iterations = s->iterations();
        out->warnings = int(s->warnings().size());
    });
}

lk_status lk_tba_node(const lk_tba* t, size_t i, double* lambda, double* eps, double* g) {
    return guard([&] {
        const auto s = tba_of(t);
        if (i >= s->grid().size()) throw Error(ErrorKind::argument, "tba node index out of range");
        if (lambda) *lambda = s->grid()[i];
        if (eps) *eps = s->eps()[i];
        if (g) *g = s->g_node(i);
    });
}

lk_status lk_tba_eps(const lk_tba* t, double x, double* eps) {
    return guard([&] {
        need(eps, "out");
        *eps = tba_of(t)->eps_at(x);
    });
}

lk_status lk_tba_fourier_g(const lk_tba* t, double mu_re, double mu_im, double* re, double* im) {
    return guard([&] {
        const cplx v = tba_of(t)->fourier_g(cplx(mu_re, mu_im));
        if (re) *re = v.real();
        if (im) *im = v.imag();
    });
}

void lk_tba_free(lk_tba* t) { delete t; }

lk_status lk_potential(const lk_model* m, const lk_tba* t, double lambda, int order, double* out) {
    return guard([&] {
        need(out, "out");
        if (order < 0 || order > 2) throw Error(ErrorKind::argument, "order must be 0, 1 or 2");
        const Potential v(params(m), t ? t->s : nullptr, sign_of(m));
        *out = v.eval(lambda, order);
    });
}

lk_status lk_constants_eval(const lk_model* m, lk_constants* out) {
    return guard([&] {
        need(out, "out");
        const AsymptoticConstants c = constants(params(m));
        *out = {c.c0, c.d0, c.d1, c.ratio_c0_d0};
    });
}

lk_status lk_wh_special_eval(const lk_model* m, lk_wh_special* out) {
    return guard([&] {
        need(out, "out");
        const WhSpecialValues v = wh_special(WienerHopf(params(m)));
        *out = {v.r_down_0.real(),         v.r_down_0.imag(),     v.lim0_lambda_r_up.real(),
                v.lim0_lambda_r_up.imag(), v.dlog_r_down_0.real(), v.dlog_r_down_0.imag(),
                v.r_up_i.real(),           v.r_down_i.real(),     v.r_down_i.imag(),
                v.extrapolation_spread};
    });
}

lk_status lk_wh_eval(const lk_model* m, int which, double re, double im, double* out_re, double* out_im) {
    return guard([&] {
        const WienerHopf wh(params(m));
        const cplx l(re, im);
        cplx v;
        switch (which) {
            case 0: v = wh.jump(l); break;
            case 1: v = wh.r_up(l); break;
            case 2: v = wh.r_down(l); break;
            default: throw Error(ErrorKind::argument, "which must be 0, 1 or 2");
        }
        if (out_re) *out_re = v.real();
        if (out_im) *out_im = v.imag();
    });
}

lk_status lk_endpoints(const lk_model* m, const lk_tba* t, lk_support_method method, lk_support* out) {
    return guard([&] {
        need(out, "out");
        const Problem pb(params(m), tba_of(t), sign_of(m));
        Support s;
        switch (method) {
            case LK_NEWTON: s = solve_endpoints(pb); break;
            case LK_ASYMPTOTIC_C0: s = endpoints_asymptotic(pb, AsymptoticVariant::lemma_c0); break;
            case LK_ASYMPTOTIC_D0: s = endpoints_asymptotic(pb, AsymptoticVariant::theorem_d0); break;
            default: throw Error(ErrorKind::argument, "unknown support method");
        }
        *out = {s.a, s.b, s.x, s.a_bar, s.b_bar, s.x_bar, s.nu, s.v, s.budget, s.residual, s.iterations, method};
    });
}

lk_status lk_constraints(const lk_model* m, const lk_tba* t, const lk_support* s, double* j, double* mass) {
    return guard([&] {
        const ModelParams p = params(m);
        const Problem pb(p, tba_of(t), sign_of(m));
        const Support sp = support_of(p, s);
        if (j) *j = constraint_j(pb, sp);
        if (mass) *mass = mass_constraint(pb, sp);
    });
}

lk_status lk_moment_asymptotic(const lk_model* m, const lk_tba* t, double* full, double* simplified) {
    return guard([&] {
        const MomentAsymptotic ma = first_moment_asymptotic(Problem(params(m), tba_of(t), sign_of(m)));
        if (full) *full = ma.full;
        if (simplified) *simplified = ma.simplified;
    });
}

lk_status lk_density_build(const lk_model* m, const lk_tba* t, const lk_support* s, int points, lk_density** out) {
    return guard([&] {
        need(out, "out");
        const ModelParams p = params(m);
        const Problem pb(p, tba_of(t), sign_of(m));
        DensityConfig cfg;
        if (points > 0) cfg.points = points;
        if (cfg.points < 16) throw Error(ErrorKind::argument, "density needs at least 16 points");
        auto d = std::make_unique<Density>(pb, support_of(p, s), cfg);
        *out = new lk_density{std::move(d)};
    });
}

lk_status lk_density_get_info(const lk_density* d, lk_density_info* out) {
    return guard([&] {
        need(d, "density");
        need(out, "out");
        *out = {d->d->mass(), d->d->first_moment(), d->d->min_rho(), d->d->budget(), int(d->d->xi().size())};
    });
}

lk_status lk_density_node(const lk_density* d, size_t i, double* xi, double* rho, double* varpi1, double* varpi2,
                          double* varpi3) {
    return guard([&] {
        need(d, "density");
        if (i >= d->d->xi().size()) throw Error(ErrorKind::argument, "density node index out of range");
        const DensityParts& q = d->d->samples()[i];
        if (xi) *xi = d->d->xi()[i];
        if (rho) *rho = q.rho();
        if (varpi1) *varpi1 = q.varpi1;
        if (varpi2) *varpi2 = q.varpi2;
        if (varpi3) *varpi3 = q.varpi3;
    });
}

lk_status lk_density_eval(const lk_density* d, double xi, double* rho) {
    return guard([&] {
        need(d, "density");
        need(rho, "out");
        const Support& s = d->d->support();
        *rho = (xi > s.a && xi < s.b) ? d->d->eval(xi) : 0.0;
    });
}

lk_status lk_density_effective_potential(const lk_density* d, double lambda, double* out) {
    return guard([&] {
        need(d, "density");
        need(out, "out");
        *out = d->d->effective_potential(lambda);
    });
}

lk_status lk_density_singular_residual(const lk_density* d, double lambda, double* out) {
    return guard([&] {
        need(d, "density");
        need(out, "out");
        *out = d->d->singular_residual(lambda);
    });
}

lk_status lk_density_potential_d1(const lk_density* d, double lambda, double* out) {
    return guard([&] {
        need(d, "density");
        need(out, "out");
        *out = d->d->potential().d1(lambda);
    });
}

void lk_density_free(lk_density* d) { delete d; }

void lk_oracle_config_default(lk_oracle_config* c) {
    if (!c) return;
    const OracleConfig d;
    *c = {d.nodes, d.half_width, d.threshold, d.max_iters, d.tol, 0};
}

static OracleConfig oracle_cfg(const lk_oracle_config* c) {
    OracleConfig cfg;
    if (!c) return cfg;
    cfg.nodes = c->nodes;
    cfg.half_width = c->half_width;
    cfg.threshold = c->threshold;
    cfg.max_iters = c->max_iters;
    cfg.tol = c->tol;
    cfg.self_energy = c->cell_average ? SelfEnergy::cell_average : SelfEnergy::midpoint;
    if (!(cfg.threshold > 0.0 && cfg.threshold < 1.0)) throw Error(ErrorKind::argument, "oracle threshold must be in (0, 1)");
    if (!(cfg.tol > 0.0)) throw Error(ErrorKind::argument, "oracle tol must be positive");
    return cfg;
}

lk_status lk_oracle_minimize(const lk_model* m, const lk_tba* t, const lk_oracle_config* c, lk_measure** out) {
    return guard([&] {
        need(out, "out");
        DiscreteMeasure ms = minimize_energy(params(m), tba_of(t), oracle_cfg(c), sign_of(m));
        *out = new lk_measure{std::move(ms)};
    });
}

lk_status lk_measure_get_info(const lk_measure* ms, lk_measure_info* out) {
    return guard([&] {
        need(ms, "measure");
        need(out, "out");
        const DiscreteMeasure& m = ms->m;
        int mono = 1;
        for (size_t k = 1; k < m.history.size(); ++k)
            if (m.history[k] > m.history[k - 1]) mono = 0;
        *out = {m.spacing, m.energy, m.grad_norm, m.mean(), int(m.nodes.size()), m.iterations, mono};
    });
}

lk_status lk_measure_node(const lk_measure* ms, size_t i, double* node, double* weight) {
    return guard([&] {
        need(ms, "measure");
        if (i >= ms->m.nodes.size()) throw Error(ErrorKind::argument, "measure node index out of range");
        if (node) *node = ms->m.nodes[i];
        if (weight) *weight = ms->m.weights[i];
    });
}

lk_status lk_oracle_endpoints(const lk_measure* ms, double threshold, double* a, double* b) {
    return guard([&] {
        need(ms, "measure");
        const OracleEdges e = oracle_endpoints(ms->m, threshold);
        if (a) *a = e.a;
        if (b) *b = e.b;
    });
}

void lk_measure_free(lk_measure* ms) { delete ms; }

lk_status lk_z_small_n(const lk_model* m, const lk_tba* t, int n_small, int panels, int per_panel, double* log_z) {
    return guard([&] {
        need(m, "model");
        need(log_z, "out");
        SmallNConfig cfg;
        if (panels > 0) cfg.panels = panels;
        if (per_panel > 0) cfg.per_panel = per_panel;
        *log_z = z_small_n(m->r, m->b, m->alpha, n_small, m->eta, tba_of(t), cfg, sign_of(m)).log_z;
    });
}

lk_status lk_verify(const lk_model* m, const lk_tba* t, const lk_oracle_config* oc, double oracle_n, lk_checks** out) {
    return guard([&] {
        need(out, "out");
        auto v = run_checks(params(m), tba_of(t), oracle_cfg(oc), oracle_n, sign_of(m));
        *out = new lk_checks{std::move(v)};
    });
}

size_t lk_checks_size(const lk_checks* c) { return c ? c->v.size() : 0; }

lk_status lk_checks_get(const lk_checks* c, size_t i, lk_check* out) {
    return guard([&] {
        need(c, "checks");
        need(out, "out");
        if (i >= c->v.size()) throw Error(ErrorKind::argument, "check index out of range");
        const Check& k = c->v[i];
        *out = {k.name.c_str(), k.value, k.tol, k.pass ? 1 : 0};
    });
}

void lk_checks_free(lk_checks* c) { delete c; }

}  // extern "C"
