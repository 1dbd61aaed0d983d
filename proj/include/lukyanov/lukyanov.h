/* C interface to the lukyanov equilibrium-measure library. */
#ifndef LUKYANOV_H
#define LUKYANOV_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
    LK_OK = 0,
    LK_ERR_DOMAIN = 1,
    LK_ERR_CONVERGENCE = 2,
    LK_ERR_QUADRATURE = 3,
    LK_ERR_IO = 4,
    LK_ERR_ARGUMENT = 5,
    LK_ERR_INTERNAL = 6
} lk_status;

/* Message of the last failure on the calling thread ("" if none). */
const char* lk_last_error(void);
const char* lk_status_name(lk_status s);

/* ---- model ---- */
typedef struct {
    double r, b, alpha, n, eta;
    int w_sign; /* sign of the convolution term in V; 0 means the default -1 */
} lk_model;

typedef struct {
    double tau, omega1, omega2, omega_bar1, omega_bar2, zeta, kappa_eta;
} lk_scales;

void lk_model_default(lk_model* m);
lk_status lk_model_scales(const lk_model* m, lk_scales* out);

/* ---- TBA ---- */
typedef struct lk_tba lk_tba;

typedef struct {
    double half_width; /* <= 0: automatic */
    int points;
    double tol;
    int max_iters;
} lk_tba_config;

typedef struct {
    double r, b, half_width, step, residual, eps0, fourier_g_i;
    int points, iterations, warnings;
} lk_tba_info;

void lk_tba_config_default(lk_tba_config* c);
lk_status lk_tba_solve(double r, double b, const lk_tba_config* c, lk_tba** out);
lk_status lk_tba_load(const char* path, lk_tba** out);
lk_status lk_tba_save(const lk_tba* t, const char* path);
lk_status lk_tba_get_info(const lk_tba* t, lk_tba_info* out);
lk_status lk_tba_node(const lk_tba* t, size_t i, double* lambda, double* eps, double* g);
lk_status lk_tba_eps(const lk_tba* t, double x, double* eps);
lk_status lk_tba_fourier_g(const lk_tba* t, double mu_re, double mu_im, double* re, double* im);
void lk_tba_free(lk_tba* t);

/* tba may be NULL for the g = 0 test mode */
lk_status lk_potential(const lk_model* m, const lk_tba* t, double lambda, int order, double* out);

/* ---- Wiener-Hopf ---- */
typedef struct {
    double c0, d0, d1, ratio_c0_d0;
} lk_constants;

typedef struct {
    double r_down_0_re, r_down_0_im;
    double lim0_lambda_r_up_re, lim0_lambda_r_up_im;
    double dlog_r_down_0_re, dlog_r_down_0_im;
    double r_up_i, r_down_i_re, r_down_i_im;
    double extrapolation_spread;
} lk_wh_special;

lk_status lk_constants_eval(const lk_model* m, lk_constants* out);
lk_status lk_wh_special_eval(const lk_model* m, lk_wh_special* out);
/* which: 0 = R, 1 = R_up, 2 = R_down */
lk_status lk_wh_eval(const lk_model* m, int which, double re, double im, double* out_re, double* out_im);

/* ---- endpoints ---- */
typedef enum { LK_NEWTON = 0, LK_ASYMPTOTIC_C0 = 1, LK_ASYMPTOTIC_D0 = 2 } lk_support_method;

typedef struct {
    double a, b, x, a_bar, b_bar, x_bar, nu, v, budget, residual;
    int iterations;
    lk_support_method method;
} lk_support;

lk_status lk_endpoints(const lk_model* m, const lk_tba* t, lk_support_method method, lk_support* out);
/* leading constraint values J and mass at a given support */
lk_status lk_constraints(const lk_model* m, const lk_tba* t, const lk_support* s, double* j, double* mass);
lk_status lk_moment_asymptotic(const lk_model* m, const lk_tba* t, double* full, double* simplified);

/* ---- density ---- */
typedef struct lk_density lk_density;

typedef struct {
    double mass, first_moment, min_rho, budget;
    int points;
} lk_density_info;

lk_status lk_density_build(const lk_model* m, const lk_tba* t, const lk_support* s, int points, lk_density** out);
lk_status lk_density_get_info(const lk_density* d, lk_density_info* out);
lk_status lk_density_node(const lk_density* d, size_t i, double* xi, double* rho, double* varpi1, double* varpi2,
                          double* varpi3);
lk_status lk_density_eval(const lk_density* d, double xi, double* rho);
lk_status lk_density_effective_potential(const lk_density* d, double lambda, double* out);
lk_status lk_density_singular_residual(const lk_density* d, double lambda, double* out);
lk_status lk_density_potential_d1(const lk_density* d, double lambda, double* out);
void lk_density_free(lk_density* d);

/* ---- oracle ---- */
typedef struct lk_measure lk_measure;

typedef struct {
    int nodes;
    double half_width; /* <= 0: automatic */
    double threshold;
    int max_iters;
    double tol;
    int cell_average; /* self-energy rule: 0 midpoint, 1 cell average */
} lk_oracle_config;

typedef struct {
    double spacing, energy, grad_norm, mean;
    int nodes, iterations, monotone;
} lk_measure_info;

void lk_oracle_config_default(lk_oracle_config* c);
lk_status lk_oracle_minimize(const lk_model* m, const lk_tba* t, const lk_oracle_config* c, lk_measure** out);
lk_status lk_measure_get_info(const lk_measure* ms, lk_measure_info* out);
lk_status lk_measure_node(const lk_measure* ms, size_t i, double* node, double* weight);
lk_status lk_oracle_endpoints(const lk_measure* ms, double threshold, double* a, double* b);
void lk_measure_free(lk_measure* ms);

lk_status lk_z_small_n(const lk_model* m, const lk_tba* t, int n_small, int panels, int per_panel, double* log_z);

/* ---- verification suite ---- */
typedef struct lk_checks lk_checks;

typedef struct {
    const char* name;
    double value, tol;
    int pass;
} lk_check;

/* Runs the invariant suites at the model parameters; oracle_n is the N used by the oracle comparison. */
lk_status lk_verify(const lk_model* m, const lk_tba* t, const lk_oracle_config* oc, double oracle_n, lk_checks** out);
size_t lk_checks_size(const lk_checks* c);
lk_status lk_checks_get(const lk_checks* c, size_t i, lk_check* out);
void lk_checks_free(lk_checks* c);

#ifdef __cplusplus
}
#endif

#endif
