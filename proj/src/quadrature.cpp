#include "lukyanov/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <queue>

#include "lukyanov/error.hpp"
#include "lukyanov/special.hpp"

namespace lukyanov {

namespace {

Rule make_gauss_legendre(int n) {
    Rule r;
    r.x.resize(n);
    r.w.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            if (n == 1) p0 = 1.0;
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        // recompute derivative at the converged node
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
            const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        r.x[i] = -x;
        r.x[n - 1 - i] = x;
        r.w[i] = w;
        r.w[n - 1 - i] = w;
    }
    if (n % 2 == 1) r.x[n / 2] = 0.0;
    return r;
}

// QUADPACK qk15 abscissae and weights.
constexpr double xgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                           0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                           0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                           0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double wgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                           0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                           0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                           0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double wg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                          0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double lo, hi, value, error;
    bool operator<(const Panel& o) const { return error < o.error; }
};

Panel gk15(const std::function<double(double)>& f, double lo, double hi) {
    const double c = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
    const double fc = f(c);
    double resk = fc * wgk[7];
    double resg = fc * wg[3];
    for (int j = 0; j < 7; ++j) {
        const double f1 = f(c - h * xgk[j]);
        const double f2 = f(c + h * xgk[j]);
        resk += wgk[j] * (f1 + f2);
        if (j % 2 == 1) resg += wg[j / 2] * (f1 + f2);
    }
    return {lo, hi, resk * h, std::abs((resk - resg) * h)};
}

}  // namespace

const Rule& gauss_legendre(int n) {
    static std::map<int, Rule> cache;
    static std::mutex m;
    std::lock_guard<std::mutex> lock(m);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, make_gauss_legendre(n)).first;
    return it->second;
}

Rule composite_rule(const std::vector<double>& edges, int per_panel) {
    const Rule& gl = gauss_legendre(per_panel);
    Rule out;
    for (size_t k = 0; k + 1 < edges.size(); ++k) {
        const double c = 0.5 * (edges[k] + edges[k + 1]);
        const double h = 0.5 * (edges[k + 1] - edges[k]);
        for (int j = 0; j < per_panel; ++j) {
            out.x.push_back(c + h * gl.x[j]);
            out.w.push_back(h * gl.w[j]);
        }
    }
    return out;
}

AdaptiveResult integrate(const std::function<double(double)>& f, double lo, double hi,
                         double abs_tol, double rel_tol, int max_panels) {
    std::priority_queue<Panel> heap;
    Panel p0 = gk15(f, lo, hi);
    heap.push(p0);
    double total = p0.value, err = p0.error;
    int evals = 15;
    while (err > std::max(abs_tol, rel_tol * std::abs(total))) {
        if (int(heap.size()) >= max_panels)
            throw QuadratureError("adaptive quadrature did not reach tolerance on [" +
                                  std::to_string(lo) + ", " + std::to_string(hi) + "]");
        Panel worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.lo + worst.hi);
        Panel a = gk15(f, worst.lo, mid), b = gk15(f, mid, worst.hi);
        evals += 30;
        total += a.value + b.value - worst.value;
        err += a.error + b.error - worst.error;
        heap.push(a);
        heap.push(b);
    }
    // recompute the sums to shed accumulated rounding from the running updates
    double v = 0.0, e = 0.0;
    while (!heap.empty()) {
        v += heap.top().value;
        e += heap.top().error;
        heap.pop();
    }
    return {v, e, evals};
}

}  // namespace lukyanov
