#include "lukyanov/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "lukyanov/error.hpp"
#include "lukyanov/quadrature.hpp"
#include "lukyanov/wiener_hopf.hpp"

namespace lukyanov {

namespace {

double log_sinh(double x) {  // x > 0
    if (x < 20.0) return std::log(std::sinh(x));
    return x + std::log1p(-std::exp(-2.0 * x)) - std::log(2.0);
}

double pair_kernel(const ModelParams& p, double d) {
    const double ad = std::abs(d);
    return log_sinh(p.omega_bar1 * ad / 2.0) + log_sinh(p.omega_bar2 * ad / 2.0);
}

// average of ln prod sinh(c |s - t|) over a square cell of side h; |s - t| has density 2(h - d)/h^2
double cell_average_self(const ModelParams& p, double h) {
    double v = 0.0;
    for (double om : {p.omega_bar1, p.omega_bar2}) {
        const double c = om / 2.0;
        v += std::log(c * h) - 1.5;
        const Rule& gl = gauss_legendre(12);
        double corr = 0.0;
        for (size_t k = 0; k < gl.x.size(); ++k) {
            const double d = 0.5 * h * (1.0 + gl.x[k]);
            const double x = c * d;
            const double f = x < 1e-6 ? x * x / 6.0 : log_sinh(x) - std::log(x);
            corr += 0.5 * h * gl.w[k] * 2.0 * (h - d) / (h * h) * f;
        }
        v += corr;
    }
    return v;
}

// Euclidean projection onto the probability simplex (sort-based).
void project_simplex(std::vector<double>& y) {
    std::vector<double> u(y);
    std::sort(u.begin(), u.end(), std::greater<>());
    double css = 0.0, theta = 0.0;
    for (size_t k = 0; k < u.size(); ++k) {
        css += u[k];
        const double t = (css - 1.0) / double(k + 1);
        if (u[k] - t > 0.0) theta = t;
    }
    for (double& v : y) v = std::max(v - theta, 0.0);
}

}  // namespace

double DiscreteMeasure::mean() const {
    double m = 0.0;
    for (size_t i = 0; i < nodes.size(); ++i) m += nodes[i] * weights[i];
    return m;
}

DiscreteMeasure minimize_energy(const ModelParams& p, std::shared_ptr<const TbaSolution> tba, const OracleConfig& cfg,
                                int w_sign) {
    if (cfg.nodes < 400) throw Error(ErrorKind::argument, "minimize_energy: need at least 400 nodes");
    const int m = cfg.nodes;
    double L = cfg.half_width;
    if (!(L > 0.0)) {
        const double c0 = constants(p).c0;
        const double shift = p.alpha / (pi * p.omega_sum() * p.n);
        const double lb = std::log(c0 * p.n / 2.0);
        L = 1.5 * std::max(std::abs(lb + shift), std::abs(-lb + shift)) / p.tau;
    }
    const Potential pot(p, tba, w_sign);
    DiscreteMeasure out;
    out.nodes.resize(m);
    out.spacing = 2.0 * L / (m - 1);
    for (int i = 0; i < m; ++i) out.nodes[i] = -L + i * out.spacing;

    // Toeplitz kernel, scaled by -1/tau so that H = kern is the Hessian
    const double h = out.spacing;
    const double self = cfg.self_energy == SelfEnergy::midpoint
                            ? log_sinh(p.omega_bar1 * h / 4.0) + log_sinh(p.omega_bar2 * h / 4.0)
                            : cell_average_self(p, h);
    std::vector<double> col(m);
    col[0] = -self / p.tau;
    for (int k = 1; k < m; ++k) col[k] = -pair_kernel(p, k * h) / p.tau;
    auto hess_mul = [&](const std::vector<double>& x, std::vector<double>& y) {
        for (int i = 0; i < m; ++i) {
            double s = 0.0;
            for (int j = 0; j < m; ++j) s += col[std::abs(i - j)] * x[j];
            y[i] = s;
        }
    };
    std::vector<double> v(m);
    for (int i = 0; i < m; ++i) v[i] = pot.value(out.nodes[i]);

    auto dot = [](const std::vector<double>& a, const std::vector<double>& b) {
        double s = 0.0;
        for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
        return s;
    };

    std::vector<double> w(m, 1.0 / m), hw(m), g(m), d(m), hd(m), trial(m);
    hess_mul(w, hw);
    double energy = dot(v, w) + 0.5 * dot(w, hw);
    out.history.push_back(energy);
    double step = 1.0;
    const double sigma = 1e-4;
    int it = 0;
    double pg = 0.0;
    for (; it < cfg.max_iters; ++it) {
        for (int i = 0; i < m; ++i) g[i] = v[i] + hw[i];
        for (int i = 0; i < m; ++i) trial[i] = w[i] - step * g[i];
        project_simplex(trial);
        pg = 0.0;
        for (int i = 0; i < m; ++i) {
            d[i] = trial[i] - w[i];
            pg = std::max(pg, std::abs(d[i]));
        }
        // stationarity measured with unit step
        {
            std::vector<double> unit(m);
            for (int i = 0; i < m; ++i) unit[i] = w[i] - g[i];
            project_simplex(unit);
            pg = 0.0;
            for (int i = 0; i < m; ++i) pg = std::max(pg, std::abs(unit[i] - w[i]));
        }
        if (pg < cfg.tol) break;
        hess_mul(d, hd);
        const double curv = dot(d, hd);
        const double dd = dot(d, d);
        if (!(curv > 0.0)) {
            if (dd > 1e-28) throw ConvergenceError("minimize_energy: non-positive curvature (kernel sign)", it, pg);
            break;
        }
        const double slope = dot(g, d);
        // exact quadratic along the segment; monotone Armijo backtracking from t = 1
        double t = 1.0, e_new = 0.0;
        bool accepted = false;
        for (int k = 0; k < 60; ++k, t *= 0.5) {
            e_new = energy + t * slope + 0.5 * t * t * curv;
            if (e_new <= energy + sigma * t * slope && e_new < energy) {
                accepted = true;
                break;
            }
        }
        if (!accepted) break;  // no representable decrease left
        for (int i = 0; i < m; ++i) {
            w[i] += t * d[i];
            hw[i] += t * hd[i];
        }
        if (it % 64 == 63) hess_mul(w, hw);  // limit drift of the running product
        energy = dot(v, w) + 0.5 * dot(w, hw);
        out.history.push_back(energy);
        // Barzilai-Borwein step for the next iteration
        step = std::clamp(dd / curv, 1e-12, 1e12);
    }
    if (it >= cfg.max_iters) throw ConvergenceError("minimize_energy: iteration limit", it, pg);
    out.weights = w;
    out.energy = energy;
    out.iterations = it;
    out.grad_norm = pg;
    return out;
}

OracleEdges oracle_endpoints(const DiscreteMeasure& m, double threshold) {
    const auto& w = m.weights;
    const double wmax = *std::max_element(w.begin(), w.end());
    OracleEdges e;
    int first = -1, last = -1;
    for (int i = 0; i < int(w.size()); ++i)
        if (w[i] > threshold * wmax) {
            if (first < 0) first = i;
            last = i;
        }
    if (first < 0 || last - first + 1 < 10) throw Error(ErrorKind::argument, "oracle_endpoints: fewer than 10 support nodes");
    e.first = first;
    e.last = last;

    // least squares w^2 = alpha + beta x over 10 nodes, edge at the root
    auto fit_edge = [&](int from, int step) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (int k = 0; k < 10; ++k) {
            const int i = from + k * step;
            const double x = m.nodes[i], y = w[i] * w[i];
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
        }
        const double den = 10.0 * sxx - sx * sx;
        const double beta = (10.0 * sxy - sx * sy) / den;
        const double alpha = (sy - beta * sx) / 10.0;
        return -alpha / beta;
    };
    e.a = fit_edge(first, 1);
    e.b = fit_edge(last, -1);
    return e;
}

SmallNResult z_small_n(double r, double b, double alpha, int n_small, double eta,
                       std::shared_ptr<const TbaSolution> tba, const SmallNConfig& cfg, int w_sign) {
    if (n_small < 2 || n_small > 4) throw Error(ErrorKind::argument, "z_small_n: n_small must be 2, 3 or 4");
    const ModelParams p = derive_scales(r, b, alpha, n_small, eta);
    const Potential pot(p, tba, w_sign);
    const double nt = p.n * p.tau;
    const double growth = (n_small - 1) * (p.omega_bar1 + p.omega_bar2) / 2.0;
    auto exponent = [&](double x) { return nt * pot.value(x); };

    // box: confinement beats the worst-case pair growth by cfg.decay
    const double e0 = exponent(0.0);
    double box = 0.5;
    for (;; box *= 1.1) {
        const double margin = std::min(exponent(box), exponent(-box)) - e0 - growth * 2.0 * box;
        if (margin > cfg.decay) break;
        if (box > 1e3) throw DomainError("z_small_n: no box found");
    }
    std::vector<double> edges(cfg.panels + 1);
    for (int k = 0; k <= cfg.panels; ++k) edges[k] = -box + 2.0 * box * k / cfg.panels;
    const Rule rule = composite_rule(edges, cfg.per_panel);
    const int q = int(rule.x.size());
    std::vector<double> lw(q);  // log weight + single-particle exponent
    for (int k = 0; k < q; ++k) lw[k] = std::log(rule.w[k]) - exponent(rule.x[k]);
    std::vector<double> pair(size_t(q) * q);
    for (int i = 0; i < q; ++i)
        for (int j = 0; j < q; ++j) {
            const double d = rule.x[i] - rule.x[j];
            pair[size_t(i) * q + j] = d == 0.0 ? -INFINITY : pair_kernel(p, d);
        }

    // the integrand is symmetric and vanishes on the diagonals: sum strictly increasing tuples, times n!
    std::vector<int> idx(n_small);
    std::vector<double> partial(n_small + 1, 0.0);
    auto walk = [&](auto&& self, int level, int from, auto&& visit) -> void {
        if (level == n_small) {
            visit(partial[level]);
            return;
        }
        for (int k = from; k < q; ++k) {
            double t = partial[level] + lw[k];
            for (int c = 0; c < level; ++c) t += pair[size_t(idx[c]) * q + k];
            idx[level] = k;
            partial[level + 1] = t;
            self(self, level + 1, k + 1, visit);
        }
    };
    double tmax = -INFINITY;
    walk(walk, 0, 0, [&](double t) { tmax = std::max(tmax, t); });
    double s = 0.0;
    walk(walk, 0, 0, [&](double t) { s += std::exp(t - tmax); });
    const double log_fact = std::lgamma(n_small + 1.0);

    SmallNResult res;
    res.log_z = tmax + std::log(s) + log_fact;
    res.box = box;
    res.points_per_dim = q;
    return res;
}

}  // namespace lukyanov
