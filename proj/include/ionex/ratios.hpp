#pragma once

// Assembly of the observable ratios from the bound-channel matrix elements.
//
//   A_n      = (S_n0 / S_10)^2                      high-energy limit of R_ns
//   B_n0(mu) = d_n + mu f_n,  mu = pi Z / p          1/omega coefficient, s channel
//     d_n = A_n delta_n
//           + w * 2 S_n (Q_n - (S_n/S_1) Q_1) / S_1^2                  (ISI)
//           + w * [2 S_n ((V_n+W_n) - (S_n/S_1)(V_1+W_1))
//                  + (U_n^2 - A_n U_1^2)] / S_1^2                      (FSI)
//     f_n = -A_n delta_n                                    (exact, kinematical)
//   B_n1     = w * (P_n + kappa S_n1)^2 / S_1^2
//   B_nl     = w * (c_l S_nl)^2 / S_1^2          (l >= 2)
//
//   R_ns(omega) = A_n + B_n0(mu)/(2 omega),  R_nl = B_nl/(2 omega),
//   R_n = sum_l R_nl,  X_nl = R_nl / R_n.
//
// w = interaction_weight = 1/2 is the calibrated normalization of every
// beyond-kinematical (interaction) contribution; see the README for the
// calibration evidence. kappa selects the interference convention of the
// p channel: the plain sum (literal) or the angular-weighted sum (c1).
// The exact shake-up reference curve
//   R_n^SU = A_n (p/p_n) exp(-pi (Z/p_n - Z/p)),  p_n = sqrt(p^2 - 2 delta_n)
// and the Stobbe normalization factors are provided as diagnostics.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ionex/coulomb.hpp"
#include "ionex/matrix_elements.hpp"
#include "ionex/version.hpp"

namespace ionex {

// Calibrated weight of the interaction (ISI/FSI and l >= 1) contributions
// relative to the kinematical shake-up term.
inline constexpr double interaction_weight = 0.5;

// Interference convention for B_n1.
enum class Kappa { literal, c1 };

inline const char* kappa_name(Kappa k) { return k == Kappa::c1 ? "c1" : "literal"; }

inline Kappa kappa_from_string(const std::string& s) {
    if (s == "literal") return Kappa::literal;
    if (s == "c1") return Kappa::c1;
    throw std::invalid_argument("kappa must be 'literal' or 'c1', got '" + s + "'");
}

inline double kappa_value(Kappa k) { return k == Kappa::c1 ? angular_c(1) : 1.0; }

// ---------------------------------------------------------------------------
// Kinematics of the fast photoelectron.

struct Kinematics {
    double omega = 0.0;  // photon energy, hartree
    double p = 0.0;      // photoelectron momentum sqrt(2 omega)
    double xi = 0.0;     // Sommerfeld parameter 1/p
    double xi_z = 0.0;   // nuclear Sommerfeld parameter Z/p
    double mu = 0.0;     // pi * xi_z
};

inline Kinematics kinematics(double omega_hartree, double Z) {
    if (!(omega_hartree > 0.0)) throw DomainError("kinematics: omega must be positive");
    if (!(Z > 0.0)) throw std::invalid_argument("kinematics: Z must be positive");
    Kinematics k;
    k.omega = omega_hartree;
    k.p = std::sqrt(2.0 * omega_hartree);
    k.xi = 1.0 / k.p;
    k.xi_z = Z / k.p;
    k.mu = std::numbers::pi * k.xi_z;
    return k;
}

// Channel-open test: photon energy above the (hydrogenlike) ionization
// threshold Z^2/2 plus the excitation energy of the residual shell n.
inline bool channel_open(double omega_hartree, double Z, int n) {
    return omega_hartree > excitation_energy(n, Z) + 0.5 * Z * Z;
}

// Leading-order validity guard of the 1/omega expansion: omega at least
// four ionization potentials, omega >= 2 Z^2 hartree.
inline bool omega_in_validity_domain(double omega_hartree, double Z) {
    return omega_hartree >= 2.0 * Z * Z;
}

// Momentum of the photoelectron when the residual ion is left in shell n.
inline double channel_momentum(const Kinematics& k, double delta_n) {
    const double pn2 = k.p * k.p - 2.0 * delta_n;
    if (!(pn2 > 0.0)) throw DomainError("channel_momentum: channel closed at this omega");
    return std::sqrt(pn2);
}

// ---------------------------------------------------------------------------
// Stobbe normalization diagnostics. Two algebraically different forms of the
// squared continuum normalization circulate; only exponent differences enter
// any implemented ratio, so both are exposed for inspection and neither is
// used in the ratio pipeline.

inline double stobbe_nsq(double xi) {
    if (!(xi >= 0.0)) throw std::invalid_argument("stobbe_nsq: xi must be non-negative");
    const double x = std::numbers::pi * xi;
    const double h = 2.0 * x / (std::exp(x) + std::exp(-x));  // h(0) = 0, no singularity
    return h * std::exp(-x);
}

inline double stobbe_nsq_gamma(double xi) {
    if (!(xi >= 0.0)) throw std::invalid_argument("stobbe_nsq_gamma: xi must be non-negative");
    const double x = 2.0 * std::numbers::pi * xi;
    if (x == 0.0) return 1.0;
    return x / (-std::expm1(-x));
}

// ---------------------------------------------------------------------------
// High-energy limits.

struct LimitRow {
    int n = 0;
    double A = 0.0;
};

// A_n = (S_n0/S_10)^2 for n = 2 .. nmax present in `elements`; requires the
// n = 1 row.
inline std::vector<LimitRow> high_energy_limits(const std::vector<ChannelElements>& elements) {
    if (elements.empty() || elements.front().n != 1 || elements.front().S.empty())
        throw std::invalid_argument("high_energy_limits: elements must start with the n=1 row");
    const double s1 = elements.front().S[0];
    std::vector<LimitRow> rows;
    for (const ChannelElements& el : elements) {
        if (el.n < 2) continue;
        const double ratio = el.S.at(0) / s1;
        rows.push_back({el.n, ratio * ratio});
    }
    return rows;
}

// ---------------------------------------------------------------------------
// 1/omega coefficients.

struct BRow {
    int n = 0;
    double A = 0.0;              // high-energy limit
    double delta = 0.0;          // excitation energy, hartree
    double d = 0.0;              // constant part of B_n0
    double f = 0.0;              // mu coefficient of B_n0 (f_n = -A_n delta_n)
    std::vector<double> B;       // B[l-1] = B_nl for l = 1 .. min(n-1, lmax)
    double b_total_const = 0.0;  // d + sum_l B_nl
    double b_total_mu = 0.0;     // f
};

struct B0Decomposition {
    int n = 0;
    double kinematical = 0.0;  // A_n delta_n, enters as kinematical * (1 - mu)
    double isi = 0.0;
    double fsi = 0.0;
};

namespace detail {
struct GroundRefs {
    double S1, Q1, U1, VW1;
};

inline GroundRefs ground_refs(const std::vector<ChannelElements>& elements) {
    if (elements.empty() || elements.front().n != 1 || elements.front().S.empty())
        throw std::invalid_argument("b_coefficients: elements must start with the n=1 row");
    const ChannelElements& g = elements.front();
    return {g.S[0], g.Q, g.U, g.V + g.W};
}
}  // namespace detail

inline B0Decomposition decompose_b0(const std::vector<ChannelElements>& elements, double Z, int n) {
    const detail::GroundRefs g = detail::ground_refs(elements);
    const ChannelElements* el = nullptr;
    for (const ChannelElements& e : elements)
        if (e.n == n) el = &e;
    if (el == nullptr || n < 2)
        throw std::invalid_argument("decompose_b0: shell n=" + std::to_string(n) + " not available");

    const double sn = el->S.at(0);
    const double ratio = sn / g.S1;
    const double a = ratio * ratio;
    const double s1sq = g.S1 * g.S1;

    B0Decomposition parts;
    parts.n = n;
    parts.kinematical = a * excitation_energy(n, Z);
    parts.isi = interaction_weight * 2.0 * sn * (el->Q - ratio * g.Q1) / s1sq;
    parts.fsi = interaction_weight *
                (2.0 * sn * ((el->V + el->W) - ratio * g.VW1) + (el->U * el->U - a * g.U1 * g.U1)) /
                s1sq;
    return parts;
}

// B coefficients for n = 2 .. nmax present in `elements`.
inline std::vector<BRow> b_coefficients(const std::vector<ChannelElements>& elements, double Z,
                                        Kappa kappa = Kappa::c1) {
    const detail::GroundRefs g = detail::ground_refs(elements);
    const double s1sq = g.S1 * g.S1;
    const double kap = kappa_value(kappa);

    std::vector<BRow> rows;
    for (const ChannelElements& el : elements) {
        if (el.n < 2) continue;
        const B0Decomposition parts = decompose_b0(elements, Z, el.n);
        BRow row;
        row.n = el.n;
        const double ratio = el.S[0] / g.S1;
        row.A = ratio * ratio;
        row.delta = excitation_energy(el.n, Z);
        row.d = parts.kinematical + parts.isi + parts.fsi;
        row.f = -parts.kinematical;
        for (std::size_t l = 1; l < el.S.size(); ++l) {
            double amplitude;
            if (l == 1)
                amplitude = el.P + kap * el.S[1];
            else
                amplitude = angular_c(static_cast<int>(l)) * el.S[l];
            row.B.push_back(interaction_weight * amplitude * amplitude / s1sq);
        }
        row.b_total_const = row.d;
        for (const double b : row.B) row.b_total_const += b;
        row.b_total_mu = row.f;
        rows.push_back(std::move(row));
    }
    return rows;
}

// ---------------------------------------------------------------------------
// Ratio curves.

// Exact shake-up ratio R_n^SU(omega); reduces to A_n as omega -> inf and to
// 1 identically for n = 1 (where A_1 = 1, delta_1 = 0).
inline double ratio_su_exact(double A_n, int n, double Z, double omega_hartree) {
    const Kinematics k = kinematics(omega_hartree, Z);
    const double pn = channel_momentum(k, excitation_energy(n, Z));
    return A_n * (k.p / pn) * std::exp(-std::numbers::pi * (Z / pn - Z / k.p));
}

struct RatioPoint {
    double omega_ev = 0.0;
    double omega_hartree = 0.0;
    double mu = 0.0;
    int n = 0;
    bool in_domain = true;      // inside the omega >= 2 Z^2 validity guard
    double R_s = 0.0;           // l = 0 channel, A_n + B_n0/(2 omega)
    std::vector<double> R_l;    // l = 1.. channels, B_nl/(2 omega)
    double R_total = 0.0;
    std::vector<double> X;      // X[l] = R_nl / R_n (X[0] is the s channel)
    double R_su = 0.0;          // exact shake-up diagnostic
};

// Evaluate the ratio curve of shell n on an omega grid (eV). Throws
// DomainError on a closed channel; rows below the validity guard are only
// permitted when allow_low_omega is set and are tagged in_domain = false.
inline std::vector<RatioPoint> ratio_curves(const BRow& row, double Z,
                                            const std::vector<double>& omega_ev_grid,
                                            bool allow_low_omega = false) {
    std::vector<RatioPoint> points;
    points.reserve(omega_ev_grid.size());
    for (const double ev : omega_ev_grid) {
        const double omega = ev / hartree_ev;
        if (!channel_open(omega, Z, row.n))
            throw DomainError("ratio_curves: channel n=" + std::to_string(row.n) +
                              " closed at omega = " + std::to_string(ev) + " eV");
        if (!omega_in_validity_domain(omega, Z) && !allow_low_omega)
            throw DomainError("ratio_curves: omega = " + std::to_string(ev) +
                              " eV below the validity guard 2 Z^2 hartree "
                              "(pass allow_low_omega to emit tagged rows)");
        const Kinematics k = kinematics(omega, Z);
        RatioPoint pt;
        pt.omega_ev = ev;
        pt.omega_hartree = omega;
        pt.mu = k.mu;
        pt.n = row.n;
        pt.in_domain = omega_in_validity_domain(omega, Z);
        const double inv2w = 1.0 / (2.0 * omega);
        pt.R_s = row.A + (row.d + k.mu * row.f) * inv2w;
        pt.R_total = pt.R_s;
        for (const double b : row.B) {
            pt.R_l.push_back(b * inv2w);
            pt.R_total += pt.R_l.back();
        }
        pt.X.push_back(pt.R_s / pt.R_total);
        for (const double rl : pt.R_l) pt.X.push_back(rl / pt.R_total);
        pt.R_su = ratio_su_exact(row.A, row.n, Z, omega);
        points.push_back(std::move(pt));
    }
    return points;
}

// Logarithmic or linear omega grid in eV.
inline std::vector<double> omega_grid(double min_ev, double max_ev, int points, bool log_scale) {
    if (!(min_ev > 0.0) || !(max_ev > min_ev))
        throw std::invalid_argument("omega_grid: need 0 < min < max");
    if (points < 2) throw std::invalid_argument("omega_grid: need at least 2 points");
    std::vector<double> grid(points);
    if (log_scale) {
        const double step = std::log(max_ev / min_ev) / (points - 1);
        for (int i = 0; i < points; ++i) grid[i] = min_ev * std::exp(step * i);
    } else {
        const double step = (max_ev - min_ev) / (points - 1);
        for (int i = 0; i < points; ++i) grid[i] = min_ev + step * i;
    }
    grid.front() = min_ev;
    grid.back() = max_ev;
    return grid;
}

// Default production grid: 300 (Z/2)^2 .. 5000 (Z/2)^2 eV, 24 log points.
inline std::vector<double> default_omega_grid(double Z) {
    const double scale = (Z / 2.0) * (Z / 2.0);
    return omega_grid(300.0 * scale, 5000.0 * scale, 24, true);
}

// ---------------------------------------------------------------------------
// 1/Z series of the scaled limits.

struct ZSeriesFit {
    double a = 0.0;              // Z -> inf limit of A_n Z^2
    double b = 0.0;              // 1/Z coefficient
    double rms_residual = 0.0;   // weighted rms of (fit - y)
    double max_rel_residual = 0.0;
    int points = 0;
    double weight_exponent = 0.0;
};

// Weighted least squares of y = a + b/Z over (Z, y) points with weights
// Z^weight_exponent. The default exponent 4 is the generalized-least-squares
// choice for a series truncated at O(1/Z^2): the omitted term scales as
// Z^-2, so inverse-variance weights scale as Z^4.
inline ZSeriesFit fit_z_series(const std::vector<std::pair<double, double>>& points,
                               double weight_exponent = 4.0) {
    if (points.size() < 3)
        throw std::invalid_argument("fit_z_series: need at least 3 points to justify the fit");
    double sw = 0.0, swx = 0.0, swxx = 0.0, swy = 0.0, swxy = 0.0;
    for (const auto& [z, y] : points) {
        if (!(z > 0.0)) throw std::invalid_argument("fit_z_series: Z must be positive");
        const double w = std::pow(z, weight_exponent);
        const double x = 1.0 / z;
        sw += w;
        swx += w * x;
        swxx += w * x * x;
        swy += w * y;
        swxy += w * x * y;
    }
    const double det = sw * swxx - swx * swx;
    if (!(std::abs(det) > 0.0))
        throw NonConvergenceError("fit_z_series: degenerate normal equations");
    ZSeriesFit fit;
    fit.a = (swy * swxx - swxy * swx) / det;
    fit.b = (sw * swxy - swx * swy) / det;
    fit.points = static_cast<int>(points.size());
    fit.weight_exponent = weight_exponent;
    double ss = 0.0, wsum = 0.0;
    for (const auto& [z, y] : points) {
        const double w = std::pow(z, weight_exponent);
        const double r = fit.a + fit.b / z - y;
        ss += w * r * r;
        wsum += w;
        fit.max_rel_residual = std::max(fit.max_rel_residual, std::abs(r / y));
    }
    fit.rms_residual = std::sqrt(ss / wsum);
    return fit;
}

// Reference constants c_n (n = 2..6) quoted alongside the fitted (a_n, b_n)
// in the Z-scan report: uncorrelated-model values of lim A_n Z^2 kept for
// comparison. Stored, not computed.
inline const std::vector<double>& z_series_reference_c() {
    static const std::vector<double> c = {9.2e-2, 1.7e-2, 0.64e-2, 0.30e-2, 0.17e-2};
    return c;
}

// ---------------------------------------------------------------------------
// Scaled (Z-reduced) ratios.

struct ScaledRow {
    int n = 0;
    double r_d0 = 0.0;           // d_n / (Z^2 A_n)
    double r_f0 = 0.0;           // f_n / (Z^2 A_n) = -(n^2-1)/(2n^2), exact
    std::vector<double> r_l;     // B_nl / (Z^2 A_n), l = 1..
    double r_d_total = 0.0;      // r_d0 + sum_l r_l
};

inline std::vector<ScaledRow> scaled_ratios(const std::vector<BRow>& rows, double Z) {
    if (!(Z > 0.0)) throw std::invalid_argument("scaled_ratios: Z must be positive");
    std::vector<ScaledRow> out;
    for (const BRow& row : rows) {
        ScaledRow s;
        s.n = row.n;
        const double denom = Z * Z * row.A;
        s.r_d0 = row.d / denom;
        s.r_f0 = -(static_cast<double>(row.n) * row.n - 1.0) / (2.0 * row.n * row.n);
        s.r_d_total = s.r_d0;
        for (const double b : row.B) {
            s.r_l.push_back(b / denom);
            s.r_d_total += s.r_l.back();
        }
        out.push_back(std::move(s));
    }
    return out;
}

}  // namespace ionex
