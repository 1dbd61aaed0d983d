#include <doctest.h>

#include <cmath>
#include <memory>
#include <numeric>

#include "lukyanov/density.hpp"
#include "lukyanov/equilibrium.hpp"
#include "lukyanov/error.hpp"
#include "lukyanov/oracle.hpp"
#include "lukyanov/quadrature.hpp"

using namespace lukyanov;

namespace {
std::shared_ptr<const TbaSolution> tba10() {
    static auto t = std::make_shared<const TbaSolution>(solve_tba(10, 1));
    return t;
}
}  // namespace

TEST_CASE("oracle_endpoints on a synthetic square-root profile") {
    DiscreteMeasure m;
    const int n = 601;
    m.spacing = 3.0 / (n - 1);
    for (int i = 0; i < n; ++i) {
        const double x = -1.5 + i * m.spacing;
        m.nodes.push_back(x);
        m.weights.push_back(x > -1 && x < 0.8 ? std::sqrt((x + 1) * (0.8 - x)) : 0.0);
    }
    const OracleEdges e = oracle_endpoints(m, 1e-6);
    CHECK(std::abs(e.a + 1) < m.spacing);
    CHECK(std::abs(e.b - 0.8) < m.spacing);
    std::fill(m.weights.begin(), m.weights.end(), 0.0);
    m.weights[300] = 1;
    CHECK_THROWS_AS(oracle_endpoints(m, 1e-6), Error);
}

TEST_CASE("energy minimiser at N = 200") {
    const ModelParams p = derive_scales(10, 1, 0, 200, 0.1);
    OracleConfig cfg;
    cfg.nodes = 400;
    const DiscreteMeasure m = minimize_energy(p, tba10(), cfg);
    double sum = 0;
    for (double w : m.weights) {
        REQUIRE(w >= 0);
        sum += w;
    }
    CHECK(std::abs(sum - 1) < 1e-12);
    for (size_t k = 1; k < m.history.size(); ++k) REQUIRE(m.history[k] <= m.history[k - 1]);
    for (size_t k = 0; k < m.weights.size(); ++k) REQUIRE(std::abs(m.weights[k] - m.weights[m.weights.size() - 1 - k]) < 1e-6);
    const OracleEdges e = oracle_endpoints(m, cfg.threshold);
    CHECK(std::abs(e.a + e.b) < m.spacing);
    const OracleEdges h = oracle_endpoints(m, cfg.threshold / 2);
    CHECK(std::abs(h.b - e.b) < m.spacing);
    const Support s = solve_endpoints(Problem(p, tba10()));
    CHECK(std::abs(e.b - s.b) < 0.05 * s.x);
    CHECK(std::abs(e.a - s.a) < 0.05 * s.x);

    cfg.self_energy = SelfEnergy::cell_average;
    const OracleEdges c = oracle_endpoints(minimize_energy(p, tba10(), cfg), cfg.threshold);
    CHECK(std::abs(c.b - s.b) < 0.05 * s.x);
}

TEST_CASE("oracle mean against the first moment at alpha = 0.5") {
    const ModelParams p = derive_scales(10, 1, 0.5, 200, 0.1);
    OracleConfig cfg;
    cfg.nodes = 400;
    const DiscreteMeasure m = minimize_energy(p, tba10(), cfg);
    const Problem pb(p, tba10());
    DensityConfig dc;
    dc.points = 65;
    const Density d(pb, solve_endpoints(pb), dc);
    CHECK(std::abs(m.mean() - d.first_moment()) < 1e-2);
    CHECK(m.mean() > 0);
}

TEST_CASE("oracle errors") {
    OracleConfig cfg;
    cfg.nodes = 100;
    CHECK_THROWS_AS(minimize_energy(derive_scales(10, 1, 0, 200, 0.1), tba10(), cfg), Error);
    cfg.nodes = 400;
    cfg.max_iters = 3;
    CHECK_THROWS_AS(minimize_energy(derive_scales(10, 1, 0, 200, 0.1), tba10(), cfg), ConvergenceError);
}

TEST_CASE("small-N partition function") {
    const auto t = tba10();
    const SmallNResult z = z_small_n(10, 1, 0, 2, 0.1, t);
    CHECK(std::isfinite(z.log_z));
    CHECK(std::abs(z.log_z - z_small_n(10, 1, 0.3, 2, 0.1, t).log_z) > 1e-6);
    CHECK(std::abs(z_small_n(10, 1, 0.3, 2, 0.1, t).log_z - z_small_n(10, 1, -0.3, 2, 0.1, t).log_z) < 1e-10);
    const double h = 1e-3;
    CHECK(std::abs(z_small_n(10, 1, h, 2, 0.1, t).log_z - z_small_n(10, 1, -h, 2, 0.1, t).log_z) / (2 * h) < 1e-8);
    SmallNConfig fine;
    fine.panels = 24;
    CHECK(std::abs(z_small_n(10, 1, 0, 2, 0.1, t, fine).log_z - z.log_z) < 1e-6);

    // independent nested adaptive quadrature; the pair weight sinh(c d) sinh(c' d) is smooth across the diagonal
    const ModelParams p = derive_scales(10, 1, 0, 2, 0.1);
    const Potential v(p, t);
    const double nt = p.n * p.tau, v0 = nt * v.value(0);
    auto single = [&](double x) { return std::exp(-(nt * v.value(x) - v0)); };
    const double want = integrate(
                            [&](double x) {
                                return single(x) * integrate(
                                                       [&](double y) {
                                                           const double d = x - y;
                                                           return single(y) * std::sinh(p.omega_bar1 * d / 2) *
                                                                  std::sinh(p.omega_bar2 * d / 2);
                                                       },
                                                       -z.box, z.box, 1e-300, 1e-12)
                                                       .value;
                            },
                            -z.box, z.box, 1e-300, 1e-11)
                            .value;
    CHECK(z.log_z == doctest::Approx(std::log(want) - 2 * v0).epsilon(1e-9));

    SmallNConfig coarse;
    coarse.panels = 6;
    coarse.per_panel = 6;
    CHECK(std::isfinite(z_small_n(10, 1, 0.2, 4, 0.1, t, coarse).log_z));
    CHECK_THROWS_AS(z_small_n(10, 1, 0, 5, 0.1, t), Error);
}
