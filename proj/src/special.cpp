#include "lukyanov/special.hpp"

#include <array>
#include <cmath>

namespace lukyanov {

namespace {

// Lanczos, g = 7, nine terms.
constexpr double lanczos_g = 7.0;
constexpr std::array<double, 9> lanczos_p = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

const double half_log_two_pi = 0.5 * std::log(2.0 * pi);

cplx log_gamma_right(cplx z) {
    z -= 1.0;
    cplx x = lanczos_p[0];
    for (int k = 1; k < 9; ++k) x += lanczos_p[k] / (z + double(k));
    const cplx t = z + lanczos_g + 0.5;
    return half_log_two_pi + (z + 0.5) * std::log(t) - t + std::log(x);
}

}  // namespace

cplx log_sin_pi(cplx z) {
    const double y = z.imag();
    if (std::abs(y) < 1.0) return std::log(std::sin(pi * z));
    // sin(pi z) = (e^{i pi z} - e^{-i pi z}) / 2i, keep the dominant exponential symbolic
    if (y > 0) {
        // sin(pi z) = e^{-i pi z} (1 - e^{2 i pi z}) / (-2i)
        const cplx small = std::exp(2.0 * pi * I * z);
        return -I * pi * z - std::log(-2.0 * I) + std::log(1.0 - small);
    }
    const cplx small = std::exp(-2.0 * pi * I * z);
    return I * pi * z - std::log(2.0 * I) + std::log(1.0 - small);
}

cplx log_gamma(cplx z) {
    if (z.real() < 0.5) {
        // reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z)
        return std::log(pi) - log_sin_pi(z) - log_gamma_right(1.0 - z);
    }
    return log_gamma_right(z);
}

}  // namespace lukyanov
