// lukyanov <subcommand> --config path [--out dir]
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lukyanov/lukyanov.h"

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

struct Failure {
    int code;
    std::string msg;
};

int exit_code(lk_status s) {
    switch (s) {
        case LK_ERR_DOMAIN:
        case LK_ERR_ARGUMENT:
        case LK_ERR_IO: return 1;
        default: return 2;
    }
}

void ck(lk_status s, const char* what) {
    if (s != LK_OK) throw Failure{exit_code(s), std::string(what) + ": " + lk_last_error()};
}

struct Config {
    lk_model model;
    lk_tba_config tba;
    lk_oracle_config oracle;
    double oracle_n = 200;
    int density_points = 401;
    std::string out = "out";
};

template <class T>
void read(const json& j, const char* key, T& dst) {
    if (j.contains(key)) dst = j.at(key).get<T>();
}

Config load_config(const std::string& path) {
    Config c;
    lk_model_default(&c.model);
    lk_tba_config_default(&c.tba);
    lk_oracle_config_default(&c.oracle);
    std::ifstream f(path);
    if (!f) throw Failure{1, "cannot open config " + path};
    try {
        json j;
        f >> j;
        if (j.contains("model")) {
            const json& m = j["model"];
            read(m, "r", c.model.r);
            read(m, "b", c.model.b);
            read(m, "alpha", c.model.alpha);
            read(m, "n", c.model.n);
            read(m, "eta", c.model.eta);
            read(m, "w_sign", c.model.w_sign);
        }
        if (j.contains("tba")) {
            const json& t = j["tba"];
            read(t, "half_width", c.tba.half_width);
            read(t, "points", c.tba.points);
            read(t, "tol", c.tba.tol);
            read(t, "max_iters", c.tba.max_iters);
        }
        if (j.contains("quadrature")) read(j["quadrature"], "density_points", c.density_points);
        if (j.contains("oracle")) {
            const json& o = j["oracle"];
            read(o, "nodes", c.oracle.nodes);
            read(o, "half_width", c.oracle.half_width);
            read(o, "threshold", c.oracle.threshold);
            read(o, "max_iters", c.oracle.max_iters);
            read(o, "tol", c.oracle.tol);
            read(o, "n", c.oracle_n);
            bool cell = c.oracle.cell_average != 0;
            read(o, "cell_average", cell);
            c.oracle.cell_average = cell ? 1 : 0;
        }
        read(j, "output", c.out);
    } catch (const json::exception& e) {
        throw Failure{1, "bad config " + path + ": " + e.what()};
    }
    if (!(c.tba.tol > 0) || !(c.oracle.tol > 0)) throw Failure{1, "tolerances must be positive"};
    if (!(c.model.n >= 2)) throw Failure{1, "model.n must be >= 2"};
    return c;
}

void log(const std::string& s) { std::cerr << "lukyanov: " << s << "\n"; }

struct Tba {
    lk_tba* t = nullptr;
    ~Tba() { lk_tba_free(t); }
};

// reuse out/tba.json when it was solved for the same r, b and grid size
void get_tba(const Config& c, const fs::path& dir, Tba& h) {
    const fs::path cache = dir / "tba.json";
    if (fs::exists(cache)) {
        lk_tba* t = nullptr;
        lk_tba_info info{};
        if (lk_tba_load(cache.c_str(), &t) == LK_OK && lk_tba_get_info(t, &info) == LK_OK &&
            info.r == c.model.r && info.b == c.model.b && info.points == c.tba.points) {
            log("tba cached (" + cache.string() + ")");
            h.t = t;
            return;
        }
        lk_tba_free(t);
        log("tba cache stale, solving");
    }
    lk_tba_info info{};
    ck(lk_tba_solve(c.model.r, c.model.b, &c.tba, &h.t), "solve_tba");
    ck(lk_tba_get_info(h.t, &info), "tba info");
    for (int k = 0; k < info.warnings; ++k) log("tba warning: small r");
    ck(lk_tba_save(h.t, cache.c_str()), "save tba");
    std::ofstream csv(dir / "tba.csv");
    csv << "lambda,eps,g\n";
    char buf[96];
    for (int i = 0; i < info.points; ++i) {
        double l, e, g;
        ck(lk_tba_node(h.t, size_t(i), &l, &e, &g), "tba node");
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", l, e, g);
        csv << buf;
    }
    std::snprintf(buf, sizeof buf, "tba solved, residual %.3e, %d iterations", info.residual, info.iterations);
    log(buf);
}

const char* method_name(lk_support_method m) {
    switch (m) {
        case LK_NEWTON: return "newton_solved";
        case LK_ASYMPTOTIC_C0: return "asymptotic_c0";
        case LK_ASYMPTOTIC_D0: return "asymptotic_d0";
    }
    return "?";
}

void endpoints(const Config& c, const lk_tba* t, lk_support& s, json& rep) {
    ck(lk_endpoints(&c.model, t, LK_NEWTON, &s), "endpoints");
    lk_constants k;
    ck(lk_constants_eval(&c.model, &k), "constants");
    double j = 0, mass = 0;
    ck(lk_constraints(&c.model, t, &s, &j, &mass), "constraints");
    rep["support"] = {{"a", s.a}, {"b", s.b}, {"method", method_name(s.method)}, {"budget", s.budget},
                      {"a_bar", s.a_bar}, {"b_bar", s.b_bar}, {"iterations", s.iterations}};
    rep["constants"] = {{"c0", k.c0}, {"d0", k.d0}, {"d1", k.d1}, {"ratio", k.ratio_c0_d0}};
    rep["J_residual"] = std::abs(j);
}

void density(const Config& c, const lk_tba* t, const lk_support& s, const fs::path& dir, json& rep) {
    lk_density* d = nullptr;
    ck(lk_density_build(&c.model, t, &s, c.density_points, &d), "density");
    std::unique_ptr<lk_density, void (*)(lk_density*)> hold(d, lk_density_free);
    lk_density_info info;
    ck(lk_density_get_info(d, &info), "density info");
    std::ofstream csv(dir / "density.csv");
    csv << "xi,rho,varpi1,varpi2,varpi3\n";
    char buf[160];
    double vmax = 0;
    for (int i = 0; i < info.points; ++i) {
        double xi, rho, w1, w2, w3, dv;
        ck(lk_density_node(d, size_t(i), &xi, &rho, &w1, &w2, &w3), "density node");
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g\n", xi, rho, w1, w2, w3);
        csv << buf;
        ck(lk_density_potential_d1(d, xi, &dv), "potential");
        vmax = std::max(vmax, std::abs(dv));
    }
    rep["mass"] = info.mass;
    rep["moment"] = info.first_moment;

    // V_eff over the middle half of the support
    const double mid = 0.5 * (s.a + s.b);
    double lo = INFINITY, hi = -INFINITY, sum = 0;
    for (int k = 0; k <= 8; ++k) {
        double v;
        ck(lk_density_effective_potential(d, mid - s.x / 4 + s.x / 2 * k / 8.0, &v), "effective potential");
        lo = std::min(lo, v);
        hi = std::max(hi, v);
        sum += v;
    }
    rep["veff_constancy"] = (hi - lo) / std::abs(sum / 9);
    double res = 0;
    for (double f : {-0.4, -0.2, 0.0, 0.2, 0.4}) {
        double r;
        ck(lk_density_singular_residual(d, mid + f * s.x, &r), "singular residual");
        res = std::max(res, std::abs(r));
    }
    rep["pv_residual"] = res / vmax;
}

void moment(const Config& c, const lk_tba* t, json& rep) {
    double full, simple;
    ck(lk_moment_asymptotic(&c.model, t, &full, &simple), "moment asymptotic");
    rep["moment_asymptotic"] = {{"full", full}, {"simplified", simple}};
}

void oracle(const Config& c, const lk_tba* t, const fs::path& dir, json& rep) {
    lk_model m = c.model;
    m.n = c.oracle_n;
    lk_measure* ms = nullptr;
    ck(lk_oracle_minimize(&m, t, &c.oracle, &ms), "oracle");
    std::unique_ptr<lk_measure, void (*)(lk_measure*)> hold(ms, lk_measure_free);
    lk_measure_info info;
    ck(lk_measure_get_info(ms, &info), "measure info");
    std::ofstream csv(dir / "measure.csv");
    csv << "node,weight\n";
    char buf[96];
    for (int i = 0; i < info.nodes; ++i) {
        double x, w;
        ck(lk_measure_node(ms, size_t(i), &x, &w), "measure node");
        std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", x, w);
        csv << buf;
    }
    double a, b;
    ck(lk_oracle_endpoints(ms, c.oracle.threshold, &a, &b), "oracle endpoints");

    // bias from the M/2 grid
    lk_oracle_config half = c.oracle;
    half.nodes = c.oracle.nodes / 2;
    lk_measure* mh = nullptr;
    ck(lk_oracle_minimize(&m, t, &half, &mh), "oracle (half grid)");
    double a2, b2;
    const lk_status st = lk_oracle_endpoints(mh, c.oracle.threshold, &a2, &b2);
    lk_measure_free(mh);
    ck(st, "oracle endpoints (half grid)");

    lk_scales sc;
    lk_constants k;
    ck(lk_model_scales(&m, &sc), "scales");
    ck(lk_constants_eval(&m, &k), "constants");
    const double bo = sc.tau * b, pc = std::log(k.c0 * m.n / 2), pd = std::log(k.d0 * m.n / 2);
    const double bias = sc.tau * std::max(std::abs(a2 - a), std::abs(b2 - b));
    const double gap = std::abs(std::abs(bo - pd) - std::abs(bo - pc));
    rep["oracle"] = {{"n", m.n},
                     {"nodes", info.nodes},
                     {"iterations", info.iterations},
                     {"a", a},
                     {"b", b},
                     {"mean", info.mean},
                     {"energy", info.energy},
                     {"discriminator",
                      {{"b_bar", bo},
                       {"ln_c0_n_half", pc},
                       {"ln_d0_n_half", pd},
                       {"winner", std::abs(bo - pc) < std::abs(bo - pd) ? "c0" : "d0"},
                       {"gap", gap},
                       {"bias", bias},
                       {"clear", gap > 3 * bias}}}};
}

bool verify(const Config& c, const lk_tba* t, json& rep) {
    lk_checks* cs = nullptr;
    ck(lk_verify(&c.model, t, &c.oracle, c.oracle_n, &cs), "verify");
    std::unique_ptr<lk_checks, void (*)(lk_checks*)> hold(cs, lk_checks_free);
    json arr = json::array();
    bool all = true;
    for (size_t i = 0; i < lk_checks_size(cs); ++i) {
        lk_check k;
        ck(lk_checks_get(cs, i, &k), "checks");
        arr.push_back({{"name", k.name}, {"value", k.value}, {"tol", k.tol}, {"pass", k.pass != 0}});
        if (!k.pass) {
            all = false;
            log(std::string("check failed: ") + k.name);
        }
    }
    rep["checks"] = arr;
    return all;
}

int run(const std::string& cmd, const std::string& cfg_path, const std::string& out_override) {
    Config c = load_config(cfg_path);
    if (!out_override.empty()) c.out = out_override;
    const fs::path dir(c.out);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) throw Failure{1, "cannot create output directory " + c.out};
    // cheap domain validation before any solve
    lk_scales sc;
    ck(lk_model_scales(&c.model, &sc), "model");

    Tba tba;
    get_tba(c, dir, tba);
    if (cmd == "solve-tba") return 0;

    json rep;
    rep["model"] = {{"r", c.model.r}, {"b", c.model.b}, {"alpha", c.model.alpha}, {"n", c.model.n},
                    {"eta", c.model.eta}, {"w_sign", c.model.w_sign == 0 ? -1 : c.model.w_sign}};
    lk_support s;
    endpoints(c, tba.t, s, rep);
    if (cmd == "density" || cmd == "moment" || cmd == "verify") density(c, tba.t, s, dir, rep);
    if (cmd == "moment" || cmd == "verify") moment(c, tba.t, rep);
    if (cmd == "oracle" || cmd == "verify") oracle(c, tba.t, dir, rep);
    bool ok = true;
    if (cmd == "verify") ok = verify(c, tba.t, rep);

    std::ofstream f(dir / "report.json");
    f << rep.dump(2) << "\n";
    if (!f) throw Failure{1, "cannot write report.json"};
    return ok ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Equilibrium measure of the sinh-Gordon log-gas"};
    app.require_subcommand(1);
    std::string cfg, out;
    for (const char* name : {"solve-tba", "endpoints", "density", "moment", "oracle", "verify"}) {
        auto* sub = app.add_subcommand(name);
        sub->add_option("--config", cfg, "JSON config file")->required();
        sub->add_option("--out", out, "output directory (overrides config)");
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }
    try {
        return run(app.get_subcommands().front()->get_name(), cfg, out);
    } catch (const Failure& f) {
        log(f.msg);
        return f.code;
    } catch (const std::exception& e) {
        log(e.what());
        return 2;
    }
}
