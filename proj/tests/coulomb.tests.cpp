#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "ionex/coulomb.hpp"
#include "ionex/quadrature.hpp"

using ionex::radial_value;

TEST_CASE("1s value at the origin is 2 Z^(3/2)", "[coulomb]") {
    for (double Z : {1.0, 2.0, 10.0})
        REQUIRE(radial_value(1, 0, Z, 0.0) == Catch::Approx(2.0 * std::pow(Z, 1.5)).epsilon(1e-14));
}

TEST_CASE("2s node sits at r = 2/Z", "[coulomb]") {
    for (double Z : {1.0, 2.0, 6.0}) {
        REQUIRE(radial_value(2, 0, Z, 2.0 / Z) == Catch::Approx(0.0).margin(1e-12));
        REQUIRE(radial_value(2, 0, Z, 1.0 / Z) > 0.0);
        REQUIRE(radial_value(2, 0, Z, 4.0 / Z) < 0.0);
    }
}

TEST_CASE("radial functions are positive at the origin", "[coulomb]") {
    for (int n = 1; n <= 6; ++n)
        for (int l = 0; l < n; ++l) {
            // x^l kills the value for l>0; probe the leading behavior instead.
            const double r = 1e-6;
            REQUIRE(radial_value(n, l, 2.0, r) > 0.0);
        }
}

TEST_CASE("orthonormality over n, n' <= 8", "[coulomb]") {
    const double Z = 2.0;
    for (int l = 0; l <= 3; ++l) {
        for (int n = l + 1; n <= 8; ++n) {
            for (int np = n; np <= 8; ++np) {
                auto f = [&](double r) {
                    return r * r * radial_value(n, l, Z, r) * radial_value(np, l, Z, r);
                };
                const double scale = 4.0 * np * np / Z;
                const double cut = ionex::scan_cutoff(f, scale);
                const auto q = ionex::integrate_decaying(f, cut, 1e-13, 9);
                REQUIRE(q.converged);
                REQUIRE(q.value == Catch::Approx(n == np ? 1.0 : 0.0).margin(1e-10));
            }
        }
    }
}

TEST_CASE("node counts equal n - l - 1", "[coulomb]") {
    const double Z = 2.0;
    for (int n = 1; n <= 8; ++n)
        for (int l = 0; l < n; ++l) {
            int sign_changes = 0;
            double prev = radial_value(n, l, Z, 1e-4);
            // All nodes lie inside the classical region r < 2 n^2 / Z.
            const double rmax = 2.5 * n * n / Z;
            for (int k = 1; k <= 4000; ++k) {
                const double r = 1e-4 + (rmax - 1e-4) * k / 4000.0;
                const double v = radial_value(n, l, Z, r);
                if (prev * v < 0.0) ++sign_changes;
                if (v != 0.0) prev = v;
            }
            REQUIRE(sign_changes == n - l - 1);
        }
}

TEST_CASE("charge rescaling covariance Z^(3/2) R(n,l,1,Zr) = R(n,l,Z,r)", "[coulomb]") {
    const double Z = 3.7;
    for (int n : {1, 2, 5})
        for (int l = 0; l < std::min(n, 3); ++l)
            for (double r : {0.1, 0.7, 2.3, 9.0}) {
                const double lhs = std::pow(Z, 1.5) * radial_value(n, l, 1.0, Z * r);
                const double rhs = radial_value(n, l, Z, r);
                REQUIRE(lhs == Catch::Approx(rhs).epsilon(1e-12));
            }
}

TEST_CASE("excitation energies", "[coulomb]") {
    REQUIRE(ionex::excitation_energy(1, 2.0) == 0.0);
    REQUIRE(ionex::excitation_energy(2, 2.0) == Catch::Approx(1.5).epsilon(1e-15));
    REQUIRE(ionex::excitation_energy(3, 10.0) == Catch::Approx(50.0 * (1.0 - 1.0 / 9.0)).epsilon(1e-15));
}

TEST_CASE("radial integral oracle: 1s of Z=1 against e^{-r}", "[coulomb]") {
    // int r^2 * 2 e^{-r} * e^{-r} dr = 2 * 2! / 2^3 = 1/2
    const double v = ionex::radial_integral(1, 0, 1.0, [](double r) { return std::exp(-r); });
    REQUIRE(v == Catch::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("invalid quantum numbers are rejected", "[coulomb]") {
    REQUIRE_THROWS_AS(radial_value(0, 0, 2.0, 1.0), std::invalid_argument);
    REQUIRE_THROWS_AS(radial_value(2, 2, 2.0, 1.0), std::invalid_argument);
    REQUIRE_THROWS_AS(radial_value(2, -1, 2.0, 1.0), std::invalid_argument);
    REQUIRE_THROWS_AS(radial_value(2, 0, -2.0, 1.0), std::invalid_argument);
    REQUIRE_THROWS_AS(radial_value(2, 0, 2.0, -1.0), std::invalid_argument);
    REQUIRE_THROWS_AS(ionex::excitation_energy(0, 2.0), std::invalid_argument);
    REQUIRE_THROWS_AS(ionex::laguerre(-1, 1.0, 0.5), std::invalid_argument);
}
