#pragma once

#include <memory>
#include <string>

#include "lukyanov/model.hpp"
#include "lukyanov/parametrix.hpp"
#include "lukyanov/tba.hpp"
#include "lukyanov/wiener_hopf.hpp"

namespace lukyanov {

// Everything the equilibrium formulas need, resolved once.
struct Problem {
    Problem(const ModelParams& p, std::shared_ptr<const TbaSolution> tba, int w_sign = -1);

    ModelParams params;
    std::shared_ptr<const TbaSolution> tba;
    WienerHopf wh;
    WhSpecialValues special;
    AsymptoticConstants consts;
    double fg_i;  // F[g](i)
    int w_sign;   // sign of the convolution term in V

    // 1_{1 < zeta}
    double indicator() const { return wh.zeta() > 1.0 ? 1.0 : 0.0; }
};

enum class SupportMethod { newton_solved, asymptotic_c0, asymptotic_d0 };
const char* to_string(SupportMethod m);

struct Support {
    double a = 0, b = 0, x = 0;              // rescaled endpoints
    double a_bar = 0, b_bar = 0, x_bar = 0;  // tau-scaled
    double nu = 0, v = 0;                    // N u_N = e^{b_bar} + e^{-a_bar}, v_N = e^{b_bar} - e^{-a_bar}
    SupportMethod method = SupportMethod::newton_solved;
    double budget = 0;  // e^{-zeta (1-eta) x_bar}
    double residual = 0;
    int iterations = 0;
};

Support make_support(const ModelParams& p, double a_bar, double b_bar, SupportMethod m);

struct EndpointConfig {
    double tol = 1e-13;
    int max_iters = 100;
    double damping = 0.5;  // step shrink factor on rejected Newton steps
    double varsigma = 0.05;
};

// chi values at the points used by the constraint system, for a given support length.
struct ChiAnchors {
    cplx chi11_i, chi12_i;
    ChiMinusZero m0;
};
ChiAnchors chi_anchors(const Problem& pb, double x_bar);

// Prop 2.5 leading expression (J = 0 is the first constraint).
double constraint_j(const Problem& pb, const Support& s);
// Prop 2.6 leading expression for the mass of W_N[V'] (= 1 is the second constraint).
double mass_constraint(const Problem& pb, const Support& s);

Support solve_endpoints(const Problem& pb, const EndpointConfig& cfg = {});

enum class AsymptoticVariant { lemma_c0, theorem_d0 };
Support endpoints_asymptotic(const Problem& pb, AsymptoticVariant variant);

struct MomentAsymptotic {
    double full;        // Prop 3.1 display
    double simplified;  // alpha ln N / ((1+b^2)(1+b^-2) N tau)
};
MomentAsymptotic first_moment_asymptotic(const Problem& pb);

}  // namespace lukyanov
