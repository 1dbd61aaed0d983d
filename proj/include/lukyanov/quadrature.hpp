#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace lukyanov {

struct Rule {
    std::vector<double> x;  // nodes on [-1, 1]
    std::vector<double> w;
};

// n-point Gauss-Legendre rule; cached per n.
const Rule& gauss_legendre(int n);

// Nodes/weights of a composite rule: `per_panel` GL points on each [edges[k], edges[k+1]].
Rule composite_rule(const std::vector<double>& edges, int per_panel);

struct AdaptiveResult {
    double value = 0.0;
    double error = 0.0;
    int evaluations = 0;
};

// Globally adaptive Gauss-Kronrod 7/15. Throws QuadratureError if the
// requested tolerance max(abs_tol, rel_tol*|I|) is not met within max_panels.
AdaptiveResult integrate(const std::function<double(double)>& f, double lo, double hi,
                         double abs_tol, double rel_tol, int max_panels = 2000);

}  // namespace lukyanov
