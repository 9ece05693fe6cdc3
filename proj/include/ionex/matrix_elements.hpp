#pragma once

// Bound-channel matrix elements over the coalescence profile of the
// correlated ground state. For each residual state (n, l):
//
//   S_nl = sqrt(4 pi)            int r^2 R_nl(r) Psi0(r) dr      (shake overlap)
//   Q_n  = -sqrt(4 pi)           int r^2 R_n0 [Psi_rr + Psi_rhorho/3
//                                              + (2/(3r)) Psi_rho] dr
//   P_n  = sqrt(4 pi) (2/sqrt 3) int r^2 R_n1 Psi_rho(r) dr
//   U_n  = sqrt(4 pi)            int r^2 R_n0 ln(r nu) Psi0(r) dr
//   V_n  = sqrt(4 pi)/2          int r^2 R_n0 (d Psi0/d r2)(r) dr
//   W_n  = -sqrt(4 pi)/2         int r^2 R_n0 ln^2(r nu) Psi0(r) dr
//
// Q_n and P_n carry the initial-state correlation (the r-expansion of Psi
// around the coalescence point); U_n, V_n, W_n carry the logarithmic
// final-state interaction terms, with nu the arbitrary normalization point
// of the logarithm. Physical combinations are nu-independent; this is
// enforced by tests.
//
// The angular weight of the l >= 1 final-state amplitudes is
//   c_l = -sqrt(2l+1) / (l(l+1))
//       = (sqrt(2l+1)/2) int_{-1}^{1} ln(1-x) P_l(x) dx,
// with the quadrature form exposed for verification.

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "ionex/coulomb.hpp"
#include "ionex/hylleraas.hpp"
#include "ionex/quadrature.hpp"
#include "ionex/version.hpp"

namespace ionex {

namespace detail {
inline constexpr double root_4pi = 3.5449077018110318;  // sqrt(4 pi)

// Truncation radius for profile integrands: every factor carries at least
// exp(-alpha r), and exp(-70) underflows any polynomial prefactor present.
inline double profile_cutoff(double alpha) { return 70.0 / alpha; }

template <class F>
double profile_integral(F&& f, double alpha, double tol, const char* who) {
    const QuadratureResult q = integrate_decaying(f, profile_cutoff(alpha), tol);
    if (!q.converged)
        throw NonConvergenceError(std::string(who) + ": radial quadrature did not converge");
    return q.value;
}
}  // namespace detail

// Shake overlap S_nl; the same radial form holds for every l of the target.
inline double shake_overlap(const CoalescenceProfile& profile, double Z, int n, int l,
                            double tol = 1e-12) {
    detail::validate_nl("shake_overlap", n, l, Z);
    auto f = [&](double r) { return r * r * radial_value(n, l, Z, r) * profile.psi0(r); };
    return detail::root_4pi * detail::profile_integral(f, profile.alpha(), tol, "shake_overlap");
}

// Initial-state-interaction element Q_n (s channel, second derivatives of
// the profile).
inline double isi_s(const CoalescenceProfile& profile, double Z, int n, double tol = 1e-12) {
    detail::validate_nl("isi_s", n, 0, Z);
    auto f = [&](double r) {
        const double bracket =
            profile.psi_rr(r) + profile.psi_rhorho(r) / 3.0 + 2.0 / (3.0 * r) * profile.psi_rho(r);
        return r * r * radial_value(n, 0, Z, r) * bracket;
    };
    return -detail::root_4pi * detail::profile_integral(f, profile.alpha(), tol, "isi_s");
}

// Initial-state-interaction element P_n (p channel, gradient of the profile
// with respect to the interelectron distance). Vanishes identically for a
// product (uncorrelated) wavefunction.
inline double isi_p(const CoalescenceProfile& profile, double Z, int n, double tol = 1e-12) {
    detail::validate_nl("isi_p", n, 1, Z);
    auto f = [&](double r) { return r * r * radial_value(n, 1, Z, r) * profile.psi_rho(r); };
    const double geom = 2.0 * std::numbers::sqrt3 / 3.0;  // 2/sqrt(3)
    return detail::root_4pi * geom * detail::profile_integral(f, profile.alpha(), tol, "isi_p");
}

struct FsiElements {
    double U = 0.0;
    double V = 0.0;
    double W = 0.0;
};

// Final-state-interaction elements U_n, V_n, W_n at logarithm normalization
// point nu. Shifting nu moves U and W by multiples of S_n and U_n; the
// combinations entering the ratios are invariant.
inline FsiElements fsi_elements(const CoalescenceProfile& profile, double Z, int n, double nu = 1.0,
                                double tol = 1e-12) {
    detail::validate_nl("fsi_elements", n, 0, Z);
    if (!(nu > 0.0)) throw std::invalid_argument("fsi_elements: nu must be positive");
    FsiElements out;
    auto fu = [&](double r) {
        return r * r * radial_value(n, 0, Z, r) * std::log(r * nu) * profile.psi0(r);
    };
    auto fv = [&](double r) { return r * r * radial_value(n, 0, Z, r) * profile.dpsi0_dr2(r); };
    auto fw = [&](double r) {
        const double lg = std::log(r * nu);
        return r * r * radial_value(n, 0, Z, r) * lg * lg * profile.psi0(r);
    };
    out.U = detail::root_4pi * detail::profile_integral(fu, profile.alpha(), tol, "fsi_elements(U)");
    out.V = 0.5 * detail::root_4pi *
            detail::profile_integral(fv, profile.alpha(), tol, "fsi_elements(V)");
    out.W = -0.5 * detail::root_4pi *
            detail::profile_integral(fw, profile.alpha(), tol, "fsi_elements(W)");
    return out;
}

// Closed-form angular weight c_l of the l >= 1 final-state amplitudes.
inline double angular_c(int l) {
    if (l < 1) throw std::invalid_argument("angular_c: defined for l >= 1 only");
    return -std::sqrt(2.0 * l + 1.0) / (static_cast<double>(l) * (l + 1));
}

// Legendre polynomial P_l(x) by the forward recurrence.
inline double legendre_p(int l, double x) {
    if (l < 0) throw std::invalid_argument("legendre_p: order must be non-negative");
    double pm1 = 1.0;
    if (l == 0) return pm1;
    double pc = x;
    for (int m = 1; m < l; ++m) {
        const double pn = ((2.0 * m + 1.0) * x * pc - m * pm1) / (m + 1.0);
        pm1 = pc;
        pc = pn;
    }
    return pc;
}

// c_l evaluated from its integral representation
// (sqrt(2l+1)/2) int_{-1}^{1} ln(1-x) P_l(x) dx, substituting y = 1-x and
// resolving the logarithmic endpoint with geometric octaves toward y = 0.
inline double angular_c_quadrature(int l) {
    if (l < 1) throw std::invalid_argument("angular_c_quadrature: defined for l >= 1 only");
    auto f = [l](double y) { return std::log(y) * legendre_p(l, 1.0 - y); };
    const int octaves = 60;
    double total = gauss16(f, 0.0, std::ldexp(2.0, -octaves));
    for (int oct = 0; oct < octaves; ++oct)
        total += gauss16_panels(f, std::ldexp(2.0, oct - octaves), std::ldexp(2.0, oct + 1 - octaves), 4);
    return 0.5 * std::sqrt(2.0 * l + 1.0) * total;
}

// All elements of one residual shell n.
struct ChannelElements {
    int n = 0;
    std::vector<double> S;  // S[l], l = 0 .. min(n-1, lmax)
    double P = 0.0;         // l = 1 gradient element (n >= 2 only)
    double Q = 0.0;
    double U = 0.0, V = 0.0, W = 0.0;
};

// Elements for n = 1 .. nmax with shake overlaps up to min(n-1, lmax).
inline std::vector<ChannelElements> compute_elements(const Wavefunction& wf, int nmax, int lmax,
                                                     double nu = 1.0, double tol = 1e-12) {
    if (nmax < 1) throw std::invalid_argument("compute_elements: nmax must be >= 1");
    if (lmax < 0) throw std::invalid_argument("compute_elements: lmax must be >= 0");
    const CoalescenceProfile profile(wf);
    std::vector<ChannelElements> rows;
    rows.reserve(nmax);
    for (int n = 1; n <= nmax; ++n) {
        ChannelElements row;
        row.n = n;
        const int ltop = std::min(n - 1, lmax);
        for (int l = 0; l <= ltop; ++l) row.S.push_back(shake_overlap(profile, wf.Z, n, l, tol));
        row.Q = isi_s(profile, wf.Z, n, tol);
        if (n >= 2) row.P = isi_p(profile, wf.Z, n, tol);
        const FsiElements fsi = fsi_elements(profile, wf.Z, n, nu, tol);
        row.U = fsi.U;
        row.V = fsi.V;
        row.W = fsi.W;
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace ionex
