#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "ionex/linalg.hpp"

using ionex::Matrix;

namespace {

Matrix random_spd(std::size_t n, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    Matrix g(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) g(i, j) = dist(rng);
    Matrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            double sum = 0.0;
            for (std::size_t k = 0; k < n; ++k) sum += g(k, i) * g(k, j);
            a(i, j) = sum + (i == j ? double(n) : 0.0);
        }
    return a;
}

Matrix random_symmetric(std::size_t n, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    Matrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) a(i, j) = a(j, i) = dist(rng);
    return a;
}

}  // namespace

TEST_CASE("cholesky reconstructs a known SPD matrix", "[linalg]") {
    Matrix a(3, 3);
    a(0, 0) = 4;  a(0, 1) = 2;  a(0, 2) = -2;
    a(1, 0) = 2;  a(1, 1) = 10; a(1, 2) = 2;
    a(2, 0) = -2; a(2, 1) = 2;  a(2, 2) = 9;
    const Matrix l = ionex::cholesky_factor(a);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            double sum = 0.0;
            for (std::size_t k = 0; k < 3; ++k) sum += l(i, k) * l(j, k);
            REQUIRE(sum == Catch::Approx(a(i, j)).margin(1e-13));
        }
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = i + 1; j < 3; ++j) REQUIRE(l(i, j) == 0.0);
}

TEST_CASE("cholesky rejects an indefinite matrix", "[linalg]") {
    Matrix a(2, 2);
    a(0, 0) = 1; a(0, 1) = 2;
    a(1, 0) = 2; a(1, 1) = 1;  // eigenvalues 3, -1
    REQUIRE_THROWS_AS(ionex::cholesky_factor(a), ionex::NonConvergenceError);
}

TEST_CASE("jacobi solves a 2x2 with known spectrum", "[linalg]") {
    Matrix a(2, 2);
    a(0, 0) = 2; a(0, 1) = 1;
    a(1, 0) = 1; a(1, 1) = 2;
    const auto eig = ionex::jacobi_eigensolve(a);
    REQUIRE(eig.values[0] == Catch::Approx(1.0).epsilon(1e-13));
    REQUIRE(eig.values[1] == Catch::Approx(3.0).epsilon(1e-13));
}

TEST_CASE("jacobi eigenvectors are orthonormal and satisfy A v = lambda v", "[linalg]") {
    const std::size_t n = 20;
    const Matrix a = random_symmetric(n, 1234);
    const auto eig = ionex::jacobi_eigensolve(a);

    for (std::size_t c1 = 0; c1 < n; ++c1)
        for (std::size_t c2 = 0; c2 < n; ++c2) {
            double dot = 0.0;
            for (std::size_t i = 0; i < n; ++i) dot += eig.vectors(i, c1) * eig.vectors(i, c2);
            REQUIRE(dot == Catch::Approx(c1 == c2 ? 1.0 : 0.0).margin(1e-12));
        }

    for (std::size_t c = 0; c < n; ++c)
        for (std::size_t i = 0; i < n; ++i) {
            double av = 0.0;
            for (std::size_t k = 0; k < n; ++k) av += a(i, k) * eig.vectors(k, c);
            REQUIRE(av == Catch::Approx(eig.values[c] * eig.vectors(i, c)).margin(1e-11));
        }

    REQUIRE(std::is_sorted(eig.values.begin(), eig.values.end()));
}

TEST_CASE("generalized lowest eigenpair matches a hand-solved 2x2", "[linalg]") {
    // H = [[1, 0], [0, 4]], S = [[2, 0], [0, 1]]  ->  eigenvalues {1/2, 4}.
    Matrix h(2, 2), s(2, 2);
    h(0, 0) = 1; h(1, 1) = 4;
    s(0, 0) = 2; s(1, 1) = 1;
    const auto pair = ionex::generalized_lowest(h, s);
    REQUIRE(pair.value == Catch::Approx(0.5).epsilon(1e-14));
    // Eigenvector (1, 0) normalized by v^T S v = 1 -> (1/sqrt(2), 0).
    REQUIRE(std::abs(pair.vector[0]) == Catch::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-13));
    REQUIRE(pair.vector[1] == Catch::Approx(0.0).margin(1e-13));
}

TEST_CASE("generalized lowest eigenpair satisfies the residual equation", "[linalg]") {
    const std::size_t n = 25;
    const Matrix h = random_symmetric(n, 77);
    const Matrix s = random_spd(n, 78);
    const auto pair = ionex::generalized_lowest(h, s);

    // Residual H v - E S v should vanish against the solution scale.
    for (std::size_t i = 0; i < n; ++i) {
        double hv = 0.0, sv = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            hv += h(i, k) * pair.vector[k];
            sv += s(i, k) * pair.vector[k];
        }
        REQUIRE(hv - pair.value * sv == Catch::Approx(0.0).margin(1e-10));
    }

    // v^T S v = 1 normalization.
    double quad = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) quad += pair.vector[i] * s(i, k) * pair.vector[k];
    REQUIRE(quad == Catch::Approx(1.0).epsilon(1e-12));

    Matrix indefinite = h;
    indefinite(0, 0) = -5.0;
    REQUIRE_THROWS_AS(ionex::generalized_lowest(h, indefinite), ionex::NonConvergenceError);
}
