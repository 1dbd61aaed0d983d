#pragma once

#include <complex>

namespace lukyanov {

using cplx = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846;
inline constexpr cplx I{0.0, 1.0};

// log Gamma on a branch that is continuous away from the poles. Only exp() of
// combinations is used downstream, so the 2*pi*i ambiguity is harmless.
cplx log_gamma(cplx z);

// log sin(pi z), overflow-safe for large |Im z|.
cplx log_sin_pi(cplx z);

}  // namespace lukyanov
