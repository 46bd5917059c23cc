#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "cvbell/states.hpp"

using namespace cvbell;

namespace {
constexpr double inv_sqrt2 = 0.7071067811865476;
}

TEST_CASE("bipartite norm matches the closed form") {
    // saturates at 1/sqrt(2) once the exponential underflows
    CHECK(make_bipartite(10.0, 10.0).norm == doctest::Approx(inv_sqrt2).epsilon(1e-15));
    // frozen from direct evaluation, cross-checked against the Fock oracle
    CHECK(make_bipartite(1.0, 1.0).norm ==
          doctest::Approx(0.7136726701940372).epsilon(1e-15));
    const auto s = make_bipartite(-1.0, 1.0);  // depends on eta^2 + sigma^2 only
    CHECK(s.norm == make_bipartite(1.0, 1.0).norm);
}

TEST_CASE("bipartite degenerate inputs throw") {
    CHECK_THROWS_AS(make_bipartite(0.0, 0.0), DegenerateState);
    CHECK_THROWS_AS(make_bipartite(1e-7, 0.0), DegenerateState);  // s = 1e-14
    CHECK_NOTHROW(make_bipartite(2e-6, 0.0));                     // s = 4e-12
    CHECK_THROWS_AS(make_bipartite(std::nan(""), 1.0), std::invalid_argument);
    CHECK_THROWS_AS(make_bipartite(1.0, INFINITY), std::invalid_argument);
}

TEST_CASE("tripartite norm matches the closed form") {
    CHECK_THROWS_AS(make_tripartite(0.0, 0.0, 0.0), DegenerateState);
    CHECK(make_tripartite(1.0, 1.0, 1.0).norm ==
          doctest::Approx(0.7079847850260783).epsilon(1e-15));
    // published Mermin regime: exponential underflows entirely
    CHECK(make_tripartite(38.8525, 36.5831, 41.2201).norm ==
          doctest::Approx(inv_sqrt2).epsilon(1e-15));
}

TEST_CASE("norm decreases monotonically toward 1/sqrt(2)") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.01, 3.0);
    for (int i = 0; i < 100; ++i) {
        const double eta = u(rng), sigma = u(rng);
        const double grown = std::sqrt(eta * eta + 1e-3);
        const double n1 = make_bipartite(eta, sigma).norm;
        const double n2 = make_bipartite(grown, sigma).norm;
        CHECK(n2 <= n1);
        CHECK(n1 >= inv_sqrt2);
    }
}

TEST_CASE("norm stays accurate near the degeneracy boundary") {
    // 1 - e^{-2s} ~ 2s here; a naive evaluation would lose every digit
    const double eta = 3e-5;  // s = 9e-10
    const double s = eta * eta;
    const double expected = 1.0 / std::sqrt(2.0 * -std::expm1(-2.0 * s));
    const double reference = 1.0 / std::sqrt(4.0 * s * (1.0 - s + 2.0 * s * s / 3.0));
    CHECK(make_bipartite(eta, 0.0).norm == doctest::Approx(expected).epsilon(1e-15));
    CHECK(make_bipartite(eta, 0.0).norm == doctest::Approx(reference).epsilon(1e-12));
}
