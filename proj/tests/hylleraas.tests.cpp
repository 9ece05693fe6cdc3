#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "ionex/hylleraas.hpp"
#include "ionex/quadrature.hpp"

using ionex::basis_terms;
using ionex::basic_integral;
using ionex::Term;
using ionex::Wavefunction;

TEST_CASE("basis term counts and symmetry constraint", "[hylleraas]") {
    REQUIRE(basis_terms(0).size() == 1);
    REQUIRE(basis_terms(5).size() == 34);
    REQUIRE(basis_terms(6).size() == 50);
    for (const Term& t : basis_terms(6)) {
        REQUIRE(t.j % 2 == 0);
        REQUIRE(t.i + t.j + t.k <= 6);
    }
    REQUIRE_THROWS_AS(basis_terms(-1), std::invalid_argument);
}

TEST_CASE("basic integral against genuine triple quadrature", "[hylleraas]") {
    // I(a,b,c) = int_0^inf ds e^{-beta s} s^a int_0^s du u^b int_0^u dt t^c.
    // The two inner integrals are polynomials of degree <= 13, so a single
    // 16-point panel evaluates them exactly; the outer integral uses the
    // adaptive decaying rule. This checks the closed form, not itself.
    for (const double beta : {1.0, 2.0, 3.3}) {
        for (int a = 0; a <= 6; ++a)
            for (int b = 0; a + b <= 6; ++b)
                for (int c = 0; a + b + c <= 6; ++c) {
                    auto outer = [&](double s) {
                        auto middle = [&](double u) {
                            auto inner = [&](double t) { return std::pow(t, c); };
                            return std::pow(u, b) * ionex::gauss16(inner, 0.0, u);
                        };
                        return std::exp(-beta * s) * std::pow(s, a) * ionex::gauss16(middle, 0.0, s);
                    };
                    const auto q = ionex::integrate_decaying(outer, 80.0 / beta, 1e-13);
                    REQUIRE(q.converged);
                    const double closed = basic_integral(a, b, c, beta);
                    REQUIRE(q.value == Catch::Approx(closed).epsilon(1e-10));
                }
    }
}

TEST_CASE("basic integral rejects invalid arguments", "[hylleraas]") {
    REQUIRE_THROWS_AS(basic_integral(-1, 0, 0, 1.0), std::invalid_argument);
    REQUIRE_THROWS_AS(basic_integral(0, 0, 0, 0.0), std::invalid_argument);
    REQUIRE_THROWS_AS(basic_integral(0, 0, 0, -2.0), std::invalid_argument);
}

TEST_CASE("beta-scaling covariance of the basic integral at lambda = 3.7", "[hylleraas]") {
    const double lambda = 3.7;
    for (int a = 0; a <= 8; ++a)
        for (int b = 0; b <= 4; ++b)
            for (int c = 0; c <= 4; ++c) {
                const double lhs = basic_integral(a, b, c, lambda * 1.3);
                const double rhs =
                    basic_integral(a, b, c, 1.3) * std::pow(lambda, -(a + b + c + 3));
                REQUIRE(lhs == Catch::Approx(rhs).epsilon(1e-12));
            }
}

TEST_CASE("one-term energy functional is alpha^2 - 2 Z alpha + (5/8) alpha", "[hylleraas]") {
    const auto terms = basis_terms(0);
    for (const double Z : {2.0, 10.0}) {
        for (const double alpha : {1.2, 27.0 / 16.0, 3.1}) {
            const auto mats = ionex::assemble_matrices(terms, alpha, Z);
            const double rayleigh = mats.hamiltonian(0, 0) / mats.overlap(0, 0);
            const double expected = alpha * alpha - 2.0 * Z * alpha + 0.625 * alpha;
            REQUIRE(rayleigh == Catch::Approx(expected).epsilon(1e-13));
            const Wavefunction wf = ionex::solve_ground(terms, alpha, Z);
            REQUIRE(wf.energy == Catch::Approx(expected).epsilon(1e-13));
        }
    }
}

TEST_CASE("one-term optimal exponent is Z - 5/16", "[hylleraas]") {
    const auto terms = basis_terms(0);
    const Wavefunction he = ionex::optimize_alpha(terms, 2.0, 1e-6);
    REQUIRE(he.alpha == Catch::Approx(27.0 / 16.0).margin(1e-3));
    REQUIRE(he.energy == Catch::Approx(-std::pow(27.0 / 16.0, 2)).epsilon(1e-9));

    const Wavefunction ne = ionex::optimize_alpha(terms, 10.0, 1e-6);
    REQUIRE(ne.alpha == Catch::Approx(10.0 - 5.0 / 16.0).margin(1e-3));
}

TEST_CASE("two-term basis lowers the one-term energy at fixed alpha", "[hylleraas]") {
    const double alpha = 1.8, Z = 2.0;
    const auto one = ionex::solve_ground({{0, 0, 0}}, alpha, Z);
    const auto two = ionex::solve_ground({{0, 0, 0}, {0, 0, 1}}, alpha, Z);
    REQUIRE(two.energy < one.energy);
}

TEST_CASE("variational monotonicity over nested bases D = 2..6", "[hylleraas]") {
    const double Z = 2.0;
    double prev = 0.0;
    for (int degree = 2; degree <= 6; ++degree) {
        const Wavefunction wf = ionex::optimize_alpha(basis_terms(degree), Z, 1e-5);
        if (degree > 2) REQUIRE(wf.energy < prev + 1e-12);
        prev = wf.energy;
    }
    // The production basis reproduces the converged ground-state energy.
    REQUIRE(prev == Catch::Approx(-2.9037237).margin(5e-6));
}

TEST_CASE("production helium solve matches frozen oracle values", "[hylleraas]") {
    const Wavefunction wf = ionex::optimize_alpha(basis_terms(6), 2.0, 1e-6);
    REQUIRE(wf.alpha == Catch::Approx(2.234470).margin(2e-4));
    REQUIRE(wf.energy == Catch::Approx(-2.9037237).margin(2e-6));
    REQUIRE(wf.norm == Catch::Approx(1.0).epsilon(1e-12));

    // Kato cusp diagnostic: (dPsi/dr)/Psi at the electron-nucleus
    // coalescence is -Z for the exact wavefunction; the correlated basis
    // should land within a few percent.
    REQUIRE(ionex::cusp_diagnostic(wf) == Catch::Approx(-2.0).margin(0.15));
}

TEST_CASE("exchange symmetry of the solved state", "[hylleraas]") {
    const Wavefunction wf = ionex::solve_ground(basis_terms(4), 2.1, 2.0);
    for (const auto& [r1, r2, r12] :
         {std::array<double, 3>{0.3, 0.9, 1.0}, {1.2, 0.4, 1.5}, {2.0, 2.0, 0.7}}) {
        REQUIRE(wf.evaluate(r1, r2, r12) == Catch::Approx(wf.evaluate(r2, r1, r12)).epsilon(1e-12));
    }
}

TEST_CASE("evaluate rejects triangle violations", "[hylleraas]") {
    const Wavefunction wf = ionex::solve_ground(basis_terms(2), 2.0, 2.0);
    REQUIRE_THROWS_AS(wf.evaluate(1.0, 1.0, 3.0), ionex::DomainError);
    REQUIRE_THROWS_AS(wf.evaluate(2.0, 0.5, 0.5), ionex::DomainError);
    REQUIRE_THROWS_AS(wf.evaluate(-1.0, 1.0, 1.0), ionex::DomainError);
}

TEST_CASE("coalescence profile derivatives against finite differences", "[hylleraas]") {
    const Wavefunction wf = ionex::optimize_alpha(basis_terms(5), 2.0, 1e-5);
    const ionex::CoalescenceProfile profile(wf);

    // Displacements around the coalescence point r1 = 0 (where s = t = u =
    // r2): r is electron 1's radius, rho = r12 deviates from r2. Points
    // (r1, r2, r12) = (r, r2, r2 + drho) are valid while |drho| <= r.
    auto psi = [&](double r, double r2, double drho) { return wf.evaluate(r, r2, r2 + drho); };

    for (const double r2 : {0.5, 1.0, 2.0}) {
        const double h = 1e-3;

        // psi0 and d(psi0)/dr2 along the coalescence line itself.
        REQUIRE(profile.psi0(r2) == Catch::Approx(wf.evaluate(0.0, r2, r2)).epsilon(1e-12));
        const double d_r2 =
            (wf.evaluate(0.0, r2 + h, r2 + h) - wf.evaluate(0.0, r2 - h, r2 - h)) / (2.0 * h);
        REQUIRE(profile.dpsi0_dr2(r2) == Catch::Approx(d_r2).margin(1e-6));

        // dPsi/dr: second-order one-sided stencil at fixed rho = r2.
        const double fr = (-3.0 * psi(0.0, r2, 0.0) + 4.0 * psi(h, r2, 0.0) - psi(2.0 * h, r2, 0.0)) /
                          (2.0 * h);
        REQUIRE(profile.psi_r(r2) == Catch::Approx(fr).margin(1e-6));

        // d2Psi/dr2: one-sided 4-point second-difference, O(h^2).
        const double frr = (2.0 * psi(0.0, r2, 0.0) - 5.0 * psi(h, r2, 0.0) +
                            4.0 * psi(2.0 * h, r2, 0.0) - psi(3.0 * h, r2, 0.0)) /
                           (h * h);
        REQUIRE(profile.psi_rr(r2) == Catch::Approx(frr).margin(1e-5));

        // dPsi/drho: central in rho at r1 = h, Richardson-extrapolated in h
        // to remove the O(h) cross-term contamination.
        auto drho_at = [&](double rr) {
            return (psi(rr, r2, rr) - psi(rr, r2, -rr)) / (2.0 * rr);
        };
        const double frho = 2.0 * drho_at(h / 2.0) - drho_at(h);
        REQUIRE(profile.psi_rho(r2) == Catch::Approx(frho).margin(1e-6));

        // d2Psi/drho2: central second difference in rho at r1 = H,
        // Richardson-extrapolated in H.
        auto drhorho_at = [&](double H) {
            return (psi(H, r2, H) - 2.0 * psi(H, r2, 0.0) + psi(H, r2, -H)) / (H * H);
        };
        const double frhorho = 2.0 * drhorho_at(h / 2.0) - drhorho_at(h);
        REQUIRE(profile.psi_rhorho(r2) == Catch::Approx(frhorho).margin(1e-5));

        // d2Psi/dr drho: cross difference (psi(r+h,rho+h) - psi(r+h,rho-h))
        // /(2h) estimates psi_rho at r = h; subtracting the r = 2h estimate
        // isolates the mixed derivative.
        auto rho_slope_at = [&](double rr) {
            return (psi(rr, r2, rr) - psi(rr, r2, -rr)) / (2.0 * rr);
        };
        const double frrho_h = (rho_slope_at(2.0 * h) - rho_slope_at(h)) / h;
        const double frrho_h2 = (rho_slope_at(h) - rho_slope_at(h / 2.0)) / (h / 2.0);
        const double frrho = 2.0 * frrho_h2 - frrho_h;
        REQUIRE(profile.psi_rrho(r2) == Catch::Approx(frrho).margin(1e-5));
    }
}

TEST_CASE("save/load round trip preserves every bit", "[hylleraas]") {
    namespace fs = std::filesystem;
    const Wavefunction wf = ionex::solve_ground(basis_terms(4), 2.2, 2.0);
    const auto path = fs::temp_directory_path() / "ionex_roundtrip_wf.txt";
    ionex::save_wavefunction(wf, path.string());
    const Wavefunction back = ionex::load_wavefunction(path.string());

    REQUIRE(back.Z == wf.Z);
    REQUIRE(back.alpha == wf.alpha);
    REQUIRE(back.energy == wf.energy);
    REQUIRE(back.norm == wf.norm);
    REQUIRE(back.terms.size() == wf.terms.size());
    for (std::size_t m = 0; m < wf.terms.size(); ++m) {
        REQUIRE(back.terms[m] == wf.terms[m]);
        REQUIRE(back.coeff[m] == wf.coeff[m]);  // exact: %.17g round trip
    }

    // Determinism: saving the loaded state reproduces the file bytes.
    std::ostringstream first, second;
    ionex::save_wavefunction(wf, first);
    ionex::save_wavefunction(back, second);
    REQUIRE(first.str() == second.str());
    fs::remove(path);
}

TEST_CASE("load validates structure and symmetry", "[hylleraas]") {
    const auto parse = [](const std::string& text) {
        std::istringstream is(text);
        return ionex::load_wavefunction(is);
    };

    // A hand-written one-term file must evaluate to c * exp(-alpha (r1+r2)).
    const Wavefunction one = parse(
        "ionex-wavefunction format 1\n"
        "Z 2\nalpha 1.5\nenergy -2.8\nnorm 1\n"
        "terms 1\n0 0 0 0.75\n");
    REQUIRE(one.evaluate(0.5, 0.7, 1.0) ==
            Catch::Approx(0.75 * std::exp(-1.5 * 1.2)).epsilon(1e-15));

    // Odd t-power breaks singlet exchange symmetry and must be rejected.
    REQUIRE_THROWS_WITH(parse("ionex-wavefunction format 1\n"
                              "Z 2\nalpha 1.5\nenergy -2.8\nnorm 1\n"
                              "terms 1\n0 1 0 0.75\n"),
                        Catch::Matchers::ContainsSubstring("odd t power"));

    REQUIRE_THROWS_AS(parse("not-a-wavefunction\n"), std::runtime_error);
    REQUIRE_THROWS_AS(parse("ionex-wavefunction format 99\nZ 2\n"), std::runtime_error);
    REQUIRE_THROWS_AS(parse("ionex-wavefunction format 1\n"
                            "Z 2\nalpha 1.5\nenergy -2.8\nnorm 1\n"
                            "terms 2\n0 0 0 0.75\n"),
                      std::runtime_error);
}

TEST_CASE("coordinate rescaling lambda = 3.7 maps solved states exactly", "[hylleraas]") {
    // If Psi is expanded at exponent alpha with coefficients c_m, then
    // lambda^3 Psi(lambda r1, lambda r2, lambda r12) is expanded at
    // lambda*alpha with coefficients c_m lambda^{3 + i + j + k}. Both
    // describe the same physical state at charges Z and lambda Z.
    const double lambda = 3.7;
    const Wavefunction wf = ionex::solve_ground(basis_terms(4), 2.1, 2.0);

    Wavefunction scaled = wf;
    scaled.Z = lambda * wf.Z;
    scaled.alpha = lambda * wf.alpha;
    for (std::size_t m = 0; m < wf.terms.size(); ++m) {
        const int deg = wf.terms[m].i + wf.terms[m].j + wf.terms[m].k;
        scaled.coeff[m] = wf.coeff[m] * std::pow(lambda, 3 + deg);
    }

    for (const auto& [r1, r2, r12] :
         {std::array<double, 3>{0.3, 0.9, 1.0}, {1.2, 0.4, 1.5}, {0.0, 1.1, 1.1}}) {
        const double direct = scaled.evaluate(r1 / lambda, r2 / lambda, r12 / lambda);
        const double mapped = std::pow(lambda, 3) * wf.evaluate(r1, r2, r12);
        REQUIRE(direct == Catch::Approx(mapped).epsilon(1e-12));
    }
}
