#pragma once

// Bound hydrogenic (Coulomb) orbitals for the residual one-electron ion:
// normalized radial functions R_{nl}, excitation energies, and radial
// integrals against user-supplied weights.

#include <cmath>
#include <stdexcept>
#include <string>

#include "ionex/quadrature.hpp"
#include "ionex/version.hpp"

namespace ionex {

// Generalized Laguerre polynomial L_k^{(a)}(x) by the stable forward
// three-term recurrence.
inline double laguerre(int k, double a, double x) {
    if (k < 0) throw std::invalid_argument("laguerre: order must be non-negative");
    double lprev = 1.0;  // L_0
    if (k == 0) return lprev;
    double lcur = 1.0 + a - x;  // L_1
    for (int m = 1; m < k; ++m) {
        const double lnext = ((2.0 * m + 1.0 + a - x) * lcur - (m + a) * lprev) / (m + 1.0);
        lprev = lcur;
        lcur = lnext;
    }
    return lcur;
}

namespace detail {
inline void validate_nl(const char* who, int n, int l, double Z) {
    if (n < 1) throw std::invalid_argument(std::string(who) + ": n must be >= 1");
    if (l < 0 || l >= n) throw std::invalid_argument(std::string(who) + ": l must satisfy 0 <= l < n");
    if (!(Z > 0.0)) throw std::invalid_argument(std::string(who) + ": Z must be positive");
}
}  // namespace detail

// Radial function R_{nl}(r) of a bound Coulomb state with nuclear charge Z,
// normalized as integral r^2 R_{nl}^2 dr = 1 and positive at the origin:
//   R_{nl}(r) = (2Z/n)^{3/2} sqrt((n-l-1)! / (2n (n+l)!)) x^l e^{-x/2}
//               L^{(2l+1)}_{n-l-1}(x),  x = 2 Z r / n.
inline double radial_value(int n, int l, double Z, double r) {
    detail::validate_nl("radial_value", n, l, Z);
    if (r < 0.0) throw std::invalid_argument("radial_value: r must be non-negative");
    const double x = 2.0 * Z * r / n;
    const double log_norm = 1.5 * std::log(2.0 * Z / n) +
                            0.5 * (std::lgamma(n - l) - std::log(2.0 * n) - std::lgamma(n + l + 1));
    return std::exp(log_norm) * std::pow(x, l) * std::exp(-0.5 * x) * laguerre(n - l - 1, 2 * l + 1, x);
}

// Excitation energy delta_n of the residual hydrogenlike ion,
// delta_n = (Z^2/2)(1 - 1/n^2) hartree.
inline double excitation_energy(int n, double Z) {
    if (n < 1) throw std::invalid_argument("excitation_energy: n must be >= 1");
    if (!(Z > 0.0)) throw std::invalid_argument("excitation_energy: Z must be positive");
    return 0.5 * Z * Z * (1.0 - 1.0 / (static_cast<double>(n) * n));
}

// integral_0^inf r^2 R_{nl}(r) g(r) dr for a bounded weight g. The
// truncation radius is located by scanning the actual integrand, so g may
// reshape the decay. Raises NonConvergenceError if panel refinement stalls.
template <class G>
double radial_integral(int n, int l, double Z, G&& g, double tol = 1e-12) {
    detail::validate_nl("radial_integral", n, l, Z);
    auto integrand = [&](double r) { return r * r * radial_value(n, l, Z, r) * g(r); };
    // Orbital peak sits near the outer turning point ~ 2 n^2 / Z.
    const double scale = 4.0 * n * n / Z;
    const double r_cut = scan_cutoff(integrand, scale);
    const QuadratureResult q = integrate_decaying(integrand, r_cut, tol);
    if (!q.converged)
        throw NonConvergenceError("radial_integral: quadrature did not converge for n=" +
                                  std::to_string(n) + " l=" + std::to_string(l));
    return q.value;
}

}  // namespace ionex
