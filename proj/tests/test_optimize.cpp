#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cvbell/optimize.hpp"
#include "cvbell/scan.hpp"

using namespace cvbell;

TEST_CASE("default bounds bracket the published optima") {
    const auto bell = default_bounds(Kind::bell);
    REQUIRE(bell.lo.size() == 10);
    CHECK(bell.lo(0) == -0.1);
    CHECK(bell.hi(1) == 1.0);
    CHECK(bell.lo(8) == 0.05);
    CHECK(bell.hi(9) == 60.0);
    const auto mermin = default_bounds(Kind::mermin);
    REQUIRE(mermin.lo.size() == 15);
    CHECK(mermin.hi(14) == 60.0);
}

TEST_CASE("frozen amplitudes leave a constant objective of 2") {
    ParameterBounds b = default_bounds(Kind::bell);
    for (int k = 0; k < 8; ++k) b.lo(k) = b.hi(k) = 0.0;
    const auto r = maximize(Kind::bell, b, 4, 1);
    CHECK(r.best_value == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(r.converged);
}

TEST_CASE("best_value equals re-evaluation at best_params") {
    const auto r = maximize(Kind::bell, default_bounds(Kind::bell), 4, 3);
    CHECK(r.best_value == evaluate_parameters(Kind::bell, r.best_params));
    CHECK(r.n_evaluations > 0);
    CHECK(r.seed == 3);
}

TEST_CASE("identical seeds reproduce identical results across thread counts") {
    const auto b = default_bounds(Kind::bell);
    const auto r1 = maximize(Kind::bell, b, 6, 11, std::nullopt, 1);
    const auto r2 = maximize(Kind::bell, b, 6, 11, std::nullopt, 4);
    CHECK(r1.best_value == r2.best_value);  // bitwise
    CHECK((r1.best_params.array() == r2.best_params.array()).all());
    CHECK(r1.n_evaluations == r2.n_evaluations);
}

TEST_CASE("warm start never loses the scan incumbent") {
    const auto settings = bell_paper_settings(1.0, 1.0);
    ScanSpec spec{{0.05, 5.0, 25}, {0.05, 5.0, 25},
                  settings.z,      settings.z_prime,
                  settings.w,      settings.w_prime,
                  {0, 0},          {0, 0},
                  0.0};
    const auto grid = scan(spec, Kind::bell);
    REQUIRE(grid.has_max);

    Eigen::VectorXd warm(10);
    warm << settings.z.real(), settings.z.imag(), settings.z_prime.real(),
        settings.z_prime.imag(), settings.w.real(), settings.w.imag(),
        settings.w_prime.real(), settings.w_prime.imag(),
        axis_point(spec.eta_range, grid.argmax_eta),
        axis_point(spec.sigma_range, grid.argmax_sigma);

    const auto r = maximize(Kind::bell, default_bounds(Kind::bell), 1, 1, warm);
    CHECK(r.best_value >= grid.max_value - 1e-12);
}

TEST_CASE("optimizer outputs respect the quantum bounds") {
    const auto rb = maximize(Kind::bell, default_bounds(Kind::bell), 8, 5);
    CHECK(rb.best_value <= bell_quantum_bound + 1e-6);
    const auto rm = maximize(Kind::mermin, default_bounds(Kind::mermin), 2, 5);
    CHECK(rm.best_value <= mermin_quantum_bound + 1e-6);
}

TEST_CASE("input validation") {
    auto b = default_bounds(Kind::bell);
    CHECK_THROWS_AS(maximize(Kind::mermin, b, 4, 1), std::invalid_argument);
    CHECK_THROWS_AS(maximize(Kind::bell, b, 0, 1), std::invalid_argument);
    b.lo(0) = 0.2;  // above hi
    CHECK_THROWS_AS(maximize(Kind::bell, b, 4, 1), std::invalid_argument);
    Eigen::VectorXd short_warm(3);
    CHECK_THROWS_AS(evaluate_parameters(Kind::bell, short_warm), std::invalid_argument);
}
