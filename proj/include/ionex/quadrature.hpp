#pragma once

// Radial quadrature built from composite 16-point Gauss-Legendre panels.
//
// The integrands in this library are products of bound-state radial
// functions: smooth, exponentially decaying, possibly with an integrable
// logarithmic factor at the origin. They are integrated on (0, r_cut] with
// panels laid out in geometric octaves toward the origin, so the log
// endpoint and the exponential tail are both resolved without wasted points.
// Refinement doubles the panels per octave and extends the octave ladder
// until two successive levels agree.

#include <array>
#include <cmath>
#include <stdexcept>

#include "ionex/version.hpp"

namespace ionex {

// Standard 16-point Gauss-Legendre rule on [-1, 1] (positive half; the rule
// is symmetric). Exact for polynomials of degree <= 31.
inline constexpr std::array<double, 8> gauss16_nodes = {
    0.0950125098376374401853, 0.2816035507792589132304, 0.4580167776572273863424,
    0.6178762444026437484467, 0.7554044083550030338951, 0.8656312023878317438805,
    0.9445750230732325760780, 0.9894009349916499325962};

inline constexpr std::array<double, 8> gauss16_weights = {
    0.1894506104550684962854, 0.1826034150449235888667, 0.1691565193950025381893,
    0.1495959888165767320815, 0.1246289712555338720525, 0.0951585116824927848099,
    0.0622535239386478928628, 0.0271524594117540948518};

// Single 16-point Gauss-Legendre panel over [a, b].
template <class F>
double gauss16(F&& f, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double sum = 0.0;
    for (int i = 0; i < 8; ++i) {
        const double dx = half * gauss16_nodes[i];
        sum += gauss16_weights[i] * (f(mid - dx) + f(mid + dx));
    }
    return sum * half;
}

// Composite rule: `panels` equal 16-point panels over [a, b].
template <class F>
double gauss16_panels(F&& f, double a, double b, int panels) {
    if (panels < 1) throw std::invalid_argument("gauss16_panels: panels must be >= 1");
    const double width = (b - a) / panels;
    double sum = 0.0;
    for (int k = 0; k < panels; ++k) sum += gauss16(f, a + k * width, a + (k + 1) * width);
    return sum;
}

struct QuadratureResult {
    double value = 0.0;
    bool converged = false;
    int level = 0;          // refinement level reached
    double error_estimate = 0.0;  // |I_m - I_{m-1}| at the final level
};

// Integral of f over (0, r_cut]. Level m lays geometric breakpoints
// r_cut * 2^{-(6+3m)}, ..., r_cut/2, r_cut with 2^m Gauss panels per octave
// (plus one panel on the remaining sliver at the origin), and levels refine
// until |I_m - I_{m-1}| <= tol * max(|I_m|, sum of |panel| contributions).
// The L1 guard keeps the relative test meaningful for integrands with
// internal cancellation.
template <class F>
QuadratureResult integrate_decaying(F&& f, double r_cut, double tol = 1e-12, int max_level = 8) {
    if (!(r_cut > 0.0)) throw std::invalid_argument("integrate_decaying: r_cut must be positive");
    if (!(tol > 0.0)) throw std::invalid_argument("integrate_decaying: tol must be positive");

    QuadratureResult res;
    double prev = 0.0;
    for (int m = 0; m <= max_level; ++m) {
        const int octaves = 6 + 3 * m;
        const int sub = 1 << m;
        double total = 0.0;
        double l1 = 0.0;
        {
            const double v = gauss16(f, 0.0, std::ldexp(r_cut, -octaves));
            total += v;
            l1 += std::abs(v);
        }
        for (int oct = 0; oct < octaves; ++oct) {
            const double lo = std::ldexp(r_cut, oct - octaves);
            const double hi = std::ldexp(r_cut, oct + 1 - octaves);
            const double width = (hi - lo) / sub;
            for (int k = 0; k < sub; ++k) {
                const double v = gauss16(f, lo + k * width, lo + (k + 1) * width);
                total += v;
                l1 += std::abs(v);
            }
        }
        res.value = total;
        res.level = m;
        res.error_estimate = std::abs(total - prev);
        if (m > 0 && res.error_estimate <= tol * std::max(std::abs(total), l1)) {
            res.converged = true;
            break;
        }
        prev = total;
    }
    return res;
}

// Locate a truncation radius for a decaying integrand: scan geometrically
// from `scale`/64 outward, track the peak of |f|, and stop once two
// consecutive samples past 2*scale fall below floor_ratio * peak (two
// samples so an isolated node of an oscillating radial function cannot fake
// the tail). Returns at most r_max.
template <class F>
double scan_cutoff(F&& f, double scale, double floor_ratio = 1e-18, double r_max = 1e6) {
    if (!(scale > 0.0)) throw std::invalid_argument("scan_cutoff: scale must be positive");
    double peak = 0.0;
    int below = 0;
    double r = scale / 64.0;
    while (r < r_max) {
        const double v = std::abs(f(r));
        if (v > peak) peak = v;
        if (r >= 2.0 * scale && peak > 0.0 && v < floor_ratio * peak) {
            if (++below >= 2) return r;
        } else {
            below = 0;
        }
        r *= 1.5;
    }
    return r_max;
}

}  // namespace ionex
