#pragma once

#include <memory>
#include <vector>

#include "lukyanov/model.hpp"
#include "lukyanov/tba.hpp"

namespace lukyanov {

enum class SelfEnergy { midpoint, cell_average };

struct OracleConfig {
    int nodes = 800;
    double half_width = 0.0;  // <= 0: 1.5 * max(|a_bar|, |b_bar|) / tau from the leading endpoint estimate
    double threshold = 1e-6;
    int max_iters = 20000;
    double tol = 1e-10;       // sup-norm of the projected-gradient step; SPG also stops at rounding stagnation
    SelfEnergy self_energy = SelfEnergy::midpoint;
};

struct DiscreteMeasure {
    std::vector<double> nodes, weights;
    double spacing = 0;
    double energy = 0;
    int iterations = 0;
    double grad_norm = 0;          // sup |P(w - grad) - w|
    std::vector<double> history;   // energy after every accepted step
    double mean() const;
};

// E(w) = sum V_i w_i - (1/(2 tau)) w^T K w, K_ij = ln prod_a sinh(bar omega_a |x_i - x_j| / 2),
// diagonal from the self-energy rule. Spectral projected gradient with monotone Armijo.
DiscreteMeasure minimize_energy(const ModelParams& p, std::shared_ptr<const TbaSolution> tba,
                                const OracleConfig& cfg = {}, int w_sign = -1);

struct OracleEdges {
    double a = 0, b = 0;
    int first = 0, last = 0;  // outermost nodes above threshold
};
// Outermost nodes with weight above threshold * max, refined by a linear fit of w^2
// (w ~ c sqrt(edge - x)) over the last 10 nodes.
OracleEdges oracle_endpoints(const DiscreteMeasure& m, double threshold);

struct SmallNConfig {
    int panels = 12;
    int per_panel = 10;
    double decay = 40.0;  // box edge where N tau V exceeds its minimum plus the pair growth by this much
};

struct SmallNResult {
    double log_z = 0;
    double box = 0;
    int points_per_dim = 0;
};

// log of the n-fold integral with pair weight prod_a sinh(bar omega_a (x_i - x_j)/2) and e^{-N tau V}, N = n.
SmallNResult z_small_n(double r, double b, double alpha, int n_small, double eta,
                       std::shared_ptr<const TbaSolution> tba, const SmallNConfig& cfg = {}, int w_sign = -1);

}  // namespace lukyanov
