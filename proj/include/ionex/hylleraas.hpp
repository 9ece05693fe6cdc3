#pragma once

// Correlated two-electron ground state in Hylleraas coordinates.
//
// Basis: phi_m = exp(-alpha s) s^i t^j u^k with s = r1 + r2, t = r2 - r1,
// u = r12, j even (singlet S symmetry), i + j + k <= D. All matrix elements
// reduce to the closed-form integral
//   I(a, b, c; beta) = int_0^inf ds int_0^s du int_0^u dt e^{-beta s} s^a u^b t^c
//                    = (a+b+c+2)! / ((c+1)(b+c+2) beta^{a+b+c+3}),
// taken over the ordered wedge 0 <= t <= u <= s with volume weight
// u(s^2 - t^2); the constant angular prefactor 2*pi^2 cancels in the
// eigenproblem and is restored only in the normalization.

#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ionex/linalg.hpp"
#include "ionex/version.hpp"

namespace ionex {

inline constexpr double two_pi_squared = 19.739208802178716;  // 2*pi^2

struct Term {
    int i = 0;  // power of s
    int j = 0;  // power of t (must be even)
    int k = 0;  // power of u
};

inline bool operator==(const Term& a, const Term& b) {
    return a.i == b.i && a.j == b.j && a.k == b.k;
}

// All terms with j even and i + j + k <= degree, in a fixed deterministic
// order. degree = 6 gives the 50-term production basis.
inline std::vector<Term> basis_terms(int degree) {
    if (degree < 0) throw std::invalid_argument("basis_terms: degree must be >= 0");
    std::vector<Term> terms;
    for (int i = 0; i <= degree; ++i)
        for (int j = 0; j <= degree - i; j += 2)
            for (int k = 0; i + j + k <= degree; ++k) terms.push_back({i, j, k});
    return terms;
}

namespace detail {
inline const std::array<double, 171>& factorial_table() {
    static const std::array<double, 171> table = [] {
        std::array<double, 171> f{};
        f[0] = 1.0;
        for (int i = 1; i <= 170; ++i) f[i] = f[i - 1] * i;
        return f;
    }();
    return table;
}

// x^n for small non-negative integer n (handles 0^0 = 1, negative x).
inline double ipow(double x, int n) {
    double r = 1.0;
    for (int m = 0; m < n; ++m) r *= x;
    return r;
}
}  // namespace detail

// The closed-form wedge integral I(a, b, c; beta) above. a, b, c are the
// powers of s, u, t respectively. Falls back to log-domain evaluation when
// the factorial would overflow a double.
inline double basic_integral(int a, int b, int c, double beta) {
    if (a < 0 || b < 0 || c < 0)
        throw std::invalid_argument("basic_integral: powers must be non-negative");
    if (!(beta > 0.0)) throw std::invalid_argument("basic_integral: beta must be positive");
    const int total = a + b + c;
    const double denom = (c + 1.0) * (b + c + 2.0);
    if (total + 2 <= 170)
        return detail::factorial_table()[total + 2] / denom * std::pow(beta, -(total + 3));
    const double log_value =
        std::lgamma(total + 3.0) - std::log(denom) - (total + 3.0) * std::log(beta);
    return std::exp(log_value);
}

struct AssembledMatrices {
    Matrix overlap;      // S_mq = <phi_m | phi_q>             (2*pi^2 dropped)
    Matrix hamiltonian;  // H_mq = <phi_m | T + V | phi_q>     (2*pi^2 dropped)
};

// Overlap and Hamiltonian in the Hylleraas basis. The potential is
// -Z/r1 - Z/r2 + 1/r12 = -4 Z s/(s^2 - t^2) + 1/u; the kinetic part is the
// Hylleraas gradient functional
//   int [ u(s^2-t^2)(ds.ds + dt.dt + du.du) + s(u^2-t^2)(ds.du + du.ds)
//         + t(s^2-u^2)(dt.du + du.dt) ],
// expanded over the monomials of each basis function's partial derivatives.
inline AssembledMatrices assemble_matrices(const std::vector<Term>& terms, double alpha, double Z) {
    if (terms.empty()) throw std::invalid_argument("assemble_matrices: empty basis");
    if (!(alpha > 0.0)) throw std::invalid_argument("assemble_matrices: alpha must be positive");
    if (!(Z > 0.0)) throw std::invalid_argument("assemble_matrices: Z must be positive");
    for (const Term& t : terms) {
        if (t.i < 0 || t.j < 0 || t.k < 0)
            throw std::invalid_argument("assemble_matrices: negative power in basis term");
        if (t.j % 2 != 0)
            throw std::invalid_argument("assemble_matrices: odd t power breaks exchange symmetry");
    }

    const double beta = 2.0 * alpha;
    const auto I = [beta](int a, int b, int c) { return basic_integral(a, b, c, beta); };

    // A derivative of phi (without the exponential) is a short list of
    // monomials coef * s^si t^ti u^ui.
    struct Monomial {
        int si, ti, ui;
        double coef;
    };
    using MonomialList = std::vector<Monomial>;

    // Weight monomials (s, u, t powers and sign) of the three quadratic
    // forms in the gradient functional.
    struct Weight {
        int s, u, t;
        double sign;
    };
    static constexpr std::array<Weight, 2> w_diag = {{{2, 1, 0, 1.0}, {0, 1, 2, -1.0}}};  // u(s^2-t^2)
    static constexpr std::array<Weight, 2> w_su = {{{1, 2, 0, 1.0}, {1, 0, 2, -1.0}}};    // s(u^2-t^2)
    static constexpr std::array<Weight, 2> w_tu = {{{2, 0, 1, 1.0}, {0, 2, 1, -1.0}}};    // t(s^2-u^2)

    const std::size_t n = terms.size();
    std::vector<MonomialList> ds(n), dt(n), du(n);
    for (std::size_t m = 0; m < n; ++m) {
        const Term& t = terms[m];
        if (t.i > 0) ds[m].push_back({t.i - 1, t.j, t.k, static_cast<double>(t.i)});
        ds[m].push_back({t.i, t.j, t.k, -alpha});
        if (t.j > 0) dt[m].push_back({t.i, t.j - 1, t.k, static_cast<double>(t.j)});
        if (t.k > 0) du[m].push_back({t.i, t.j, t.k - 1, static_cast<double>(t.k)});
    }

    const auto pair_sum = [&I](const MonomialList& a, const MonomialList& b,
                               const std::array<Weight, 2>& w) {
        double sum = 0.0;
        for (const Monomial& ma : a)
            for (const Monomial& mb : b)
                for (const Weight& ww : w)
                    sum += ma.coef * mb.coef * ww.sign *
                           I(ma.si + mb.si + ww.s, ma.ui + mb.ui + ww.u, ma.ti + mb.ti + ww.t);
        return sum;
    };

    AssembledMatrices out{Matrix(n, n), Matrix(n, n)};
    for (std::size_t m = 0; m < n; ++m) {
        for (std::size_t q = m; q < n; ++q) {
            const int a = terms[m].i + terms[q].i;
            const int c = terms[m].j + terms[q].j;
            const int b = terms[m].k + terms[q].k;

            const double overlap = I(a + 2, b + 1, c) - I(a, b + 1, c + 2);
            const double potential = -4.0 * Z * I(a + 1, b + 1, c) + I(a + 2, b, c) - I(a, b, c + 2);

            double kinetic = 0.0;
            kinetic += pair_sum(ds[m], ds[q], w_diag);
            kinetic += pair_sum(dt[m], dt[q], w_diag);
            kinetic += pair_sum(du[m], du[q], w_diag);
            kinetic += pair_sum(ds[m], du[q], w_su) + pair_sum(du[m], ds[q], w_su);
            kinetic += pair_sum(dt[m], du[q], w_tu) + pair_sum(du[m], dt[q], w_tu);

            out.overlap(m, q) = out.overlap(q, m) = overlap;
            out.hamiltonian(m, q) = out.hamiltonian(q, m) = kinetic + potential;
        }
    }
    return out;
}

// Variational ground state: basis, exponent, eigenvalue, and coefficients
// normalized to <Psi|Psi> = 2 pi^2 c^T S c = 1 with the sign convention
// Psi > 0 on the electron-nucleus coalescence line at small r2.
struct Wavefunction {
    double Z = 0.0;
    double alpha = 0.0;
    double energy = std::numeric_limits<double>::quiet_NaN();  // hartree
    double norm = 1.0;                                         // 2 pi^2 c^T S c
    std::vector<Term> terms;
    std::vector<double> coeff;

    // Psi(r1, r2, r12); arguments must satisfy the triangle inequality.
    double evaluate(double r1, double r2, double r12) const {
        if (r1 < 0.0 || r2 < 0.0 || r12 < 0.0)
            throw DomainError("Wavefunction::evaluate: distances must be non-negative");
        const double slack = 1e-9 * (1.0 + r1 + r2 + r12);
        if (r12 > r1 + r2 + slack || r12 < std::abs(r1 - r2) - slack)
            throw DomainError("Wavefunction::evaluate: (r1, r2, r12) violates the triangle inequality");
        const double s = r1 + r2;
        const double t = r2 - r1;
        const double u = r12;
        const double damp = std::exp(-alpha * s);
        double sum = 0.0;
        for (std::size_t m = 0; m < terms.size(); ++m)
            sum += coeff[m] * detail::ipow(s, terms[m].i) * detail::ipow(t, terms[m].j) *
                   detail::ipow(u, terms[m].k);
        return damp * sum;
    }
};

// Solve H c = E S c in the given basis at fixed exponent alpha. The basis is
// diagonally rescaled (unit overlap diagonal) before factorization purely
// for conditioning; results are mapped back to the raw basis.
inline Wavefunction solve_ground(const std::vector<Term>& terms, double alpha, double Z) {
    const AssembledMatrices mats = assemble_matrices(terms, alpha, Z);
    const std::size_t n = terms.size();

    std::vector<double> scale(n);
    for (std::size_t i = 0; i < n; ++i) scale[i] = 1.0 / std::sqrt(mats.overlap(i, i));
    Matrix s_tilde(n, n), h_tilde(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            s_tilde(i, j) = scale[i] * scale[j] * mats.overlap(i, j);
            h_tilde(i, j) = scale[i] * scale[j] * mats.hamiltonian(i, j);
        }

    const GeneralizedEigenPair pair = generalized_lowest(h_tilde, s_tilde);

    Wavefunction wf;
    wf.Z = Z;
    wf.alpha = alpha;
    wf.energy = pair.value;
    wf.terms = terms;
    wf.coeff.resize(n);
    for (std::size_t i = 0; i < n; ++i) wf.coeff[i] = scale[i] * pair.vector[i];

    double quad = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) quad += wf.coeff[i] * mats.overlap(i, j) * wf.coeff[j];
    const double scale_norm = 1.0 / std::sqrt(two_pi_squared * quad);
    for (double& c : wf.coeff) c *= scale_norm;

    if (wf.evaluate(0.0, 0.1, 0.1) < 0.0)
        for (double& c : wf.coeff) c = -c;

    quad = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) quad += wf.coeff[i] * mats.overlap(i, j) * wf.coeff[j];
    wf.norm = two_pi_squared * quad;
    return wf;
}

// Minimize the ground eigenvalue over the basis exponent by golden-section
// search on [0.5 Z, 2 Z]; tol is the final bracket width in alpha.
inline Wavefunction optimize_alpha(const std::vector<Term>& terms, double Z, double tol = 1e-4) {
    if (!(Z > 0.0)) throw std::invalid_argument("optimize_alpha: Z must be positive");
    if (!(tol > 0.0)) throw std::invalid_argument("optimize_alpha: tol must be positive");

    const auto energy_at = [&](double a) { return solve_ground(terms, a, Z).energy; };

    double lo = 0.5 * Z, hi = 2.0 * Z;
    const double inv_phi = 0.6180339887498949;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = energy_at(x1);
    double f2 = energy_at(x2);
    int iterations = 0;
    while (hi - lo > tol) {
        if (++iterations > 200)
            throw NonConvergenceError("optimize_alpha: bracket failed to shrink");
        if (f1 < f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = energy_at(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = energy_at(x2);
        }
    }
    return solve_ground(terms, 0.5 * (lo + hi), Z);
}

// Radial profile of Psi and its derivatives along the electron-nucleus
// coalescence line r1 -> 0, where s = t = u = r2. r denotes electron 1's
// radial distance from the nucleus (d/dr = d/ds - d/dt) and rho the
// interelectron distance (d/drho = d/du). Each quantity is a polynomial in
// r2 times exp(-alpha r2), precomputed from the basis coefficients.
class CoalescenceProfile {
public:
    explicit CoalescenceProfile(const Wavefunction& wf) : alpha_(wf.alpha) {
        int max_power = 0;
        for (const Term& t : wf.terms) max_power = std::max(max_power, t.i + t.j + t.k);
        for (auto* p : {&p0_, &dp0_, &pr_, &prho_, &prr_, &prhorho_, &prrho_})
            p->assign(max_power + 1, 0.0);

        for (std::size_t m = 0; m < wf.terms.size(); ++m) {
            const double c = wf.coeff[m];
            const int i = wf.terms[m].i, j = wf.terms[m].j, k = wf.terms[m].k;
            const int deg = i + j + k;
            add(p0_, deg, c);
            add(dp0_, deg - 1, c * deg);
            add(dp0_, deg, -c * alpha_);
            add(pr_, deg - 1, c * (i - j));
            add(pr_, deg, -c * alpha_);
            add(prho_, deg - 1, c * k);
            add(prr_, deg - 2, c * (static_cast<double>(i) * (i - 1) - 2.0 * i * j +
                                    static_cast<double>(j) * (j - 1)));
            add(prr_, deg - 1, c * 2.0 * alpha_ * (j - i));
            add(prr_, deg, c * alpha_ * alpha_);
            add(prhorho_, deg - 2, c * static_cast<double>(k) * (k - 1));
            add(prrho_, deg - 2, c * static_cast<double>(k) * (i - j));
            add(prrho_, deg - 1, -c * k * alpha_);
        }
    }

    double alpha() const { return alpha_; }

    double psi0(double r2) const { return eval(p0_, r2); }          // Psi at coalescence
    double dpsi0_dr2(double r2) const { return eval(dp0_, r2); }    // d psi0 / d r2
    double psi_r(double r2) const { return eval(pr_, r2); }         // dPsi/dr
    double psi_rho(double r2) const { return eval(prho_, r2); }     // dPsi/drho
    double psi_rr(double r2) const { return eval(prr_, r2); }       // d2Psi/dr2
    double psi_rhorho(double r2) const { return eval(prhorho_, r2); }  // d2Psi/drho2
    double psi_rrho(double r2) const { return eval(prrho_, r2); }   // d2Psi/dr drho

private:
    static void add(std::vector<double>& poly, int power, double coef) {
        if (coef == 0.0) return;
        if (power < 0)
            throw std::logic_error("CoalescenceProfile: negative power with non-zero coefficient");
        poly[static_cast<std::size_t>(power)] += coef;
    }

    double eval(const std::vector<double>& poly, double r2) const {
        double horner = 0.0;
        for (std::size_t p = poly.size(); p-- > 0;) horner = horner * r2 + poly[p];
        return horner * std::exp(-alpha_ * r2);
    }

    double alpha_ = 0.0;
    std::vector<double> p0_, dp0_, pr_, prho_, prr_, prhorho_, prrho_;
};

// Electron-nucleus cusp diagnostic (dPsi/dr) / Psi on the coalescence line;
// the exact wavefunction satisfies the Kato condition value -Z.
inline double cusp_diagnostic(const Wavefunction& wf, double r2 = 1.0) {
    const CoalescenceProfile profile(wf);
    return profile.psi_r(r2) / profile.psi0(r2);
}

// ---------------------------------------------------------------------------
// Self-describing text serialization. All floating-point fields use %.17g so
// a save/load round trip reproduces bit-identical doubles.

inline void save_wavefunction(const Wavefunction& wf, std::ostream& os) {
    char buf[64];
    const auto put = [&](const char* key, double v) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        os << key << ' ' << buf << '\n';
    };
    os << "ionex-wavefunction format " << wavefunction_format_version << '\n';
    put("Z", wf.Z);
    put("alpha", wf.alpha);
    put("energy", wf.energy);
    put("norm", wf.norm);
    os << "terms " << wf.terms.size() << '\n';
    for (std::size_t m = 0; m < wf.terms.size(); ++m) {
        std::snprintf(buf, sizeof buf, "%.17g", wf.coeff[m]);
        os << wf.terms[m].i << ' ' << wf.terms[m].j << ' ' << wf.terms[m].k << ' ' << buf << '\n';
    }
}

inline void save_wavefunction(const Wavefunction& wf, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("save_wavefunction: cannot open " + path);
    save_wavefunction(wf, os);
    if (!os.good()) throw std::runtime_error("save_wavefunction: write failed for " + path);
}

inline Wavefunction load_wavefunction(std::istream& is) {
    const auto fail = [](const std::string& why) -> Wavefunction {
        throw std::runtime_error("load_wavefunction: " + why);
    };

    std::string word;
    int fmt = -1;
    if (!(is >> word) || word != "ionex-wavefunction") return fail("missing magic header");
    if (!(is >> word) || word != "format" || !(is >> fmt)) return fail("missing format line");
    if (fmt != wavefunction_format_version)
        return fail("unsupported format version " + std::to_string(fmt));

    Wavefunction wf;
    const auto read_field = [&](const char* key, double& target) {
        if (!(is >> word) || word != key || !(is >> target))
            fail(std::string("missing field ") + key);
    };
    read_field("Z", wf.Z);
    read_field("alpha", wf.alpha);
    read_field("energy", wf.energy);
    read_field("norm", wf.norm);
    if (!(wf.Z > 0.0)) return fail("Z must be positive");
    if (!(wf.alpha > 0.0)) return fail("alpha must be positive");

    std::size_t count = 0;
    if (!(is >> word) || word != "terms" || !(is >> count)) return fail("missing terms count");
    if (count == 0) return fail("empty basis");
    wf.terms.resize(count);
    wf.coeff.resize(count);
    for (std::size_t m = 0; m < count; ++m) {
        Term& t = wf.terms[m];
        if (!(is >> t.i >> t.j >> t.k >> wf.coeff[m])) return fail("truncated term table");
        if (t.i < 0 || t.j < 0 || t.k < 0) return fail("negative power in term table");
        if (t.j % 2 != 0) return fail("odd t power (exchange symmetry requires even j)");
        if (!std::isfinite(wf.coeff[m])) return fail("non-finite coefficient");
    }
    return wf;
}

inline Wavefunction load_wavefunction(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("load_wavefunction: cannot open " + path);
    return load_wavefunction(is);
}

}  // namespace ionex
