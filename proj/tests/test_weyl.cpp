#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cvbell/weyl.hpp"

using namespace cvbell;

namespace {

double phase_distance(double a, double b) { return std::abs(wrap_angle(a - b)); }

std::mt19937_64 rng(20240901);
std::uniform_real_distribution<double> coord(-2.0, 2.0);

Complex random_amp() { return {coord(rng), coord(rng)}; }

}  // namespace

TEST_CASE("wrap_angle lands in (-pi, pi]") {
    CHECK(wrap_angle(0.0) == 0.0);
    CHECK(wrap_angle(std::numbers::pi) == doctest::Approx(std::numbers::pi));
    CHECK(wrap_angle(-std::numbers::pi) == doctest::Approx(std::numbers::pi));
    CHECK(wrap_angle(3.0 * std::numbers::pi) == doctest::Approx(std::numbers::pi));
    for (int i = 0; i < 200; ++i) {
        const double p = 50.0 * coord(rng);
        const double w = wrap_angle(p);
        CHECK(w > -std::numbers::pi);
        CHECK(w <= std::numbers::pi);
        CHECK(phase_distance(w, p) < 1e-9);
    }
}

TEST_CASE("compose: opposite amplitudes give the identity label") {
    const auto out = compose(make_label({1.0, 0.0}), make_label({-1.0, 0.0}));
    CHECK(out.amplitude == Complex{0.0, 0.0});
    CHECK(out.phase == 0.0);
}

TEST_CASE("compose: D(1) D(i) picks up phase -1") {
    const auto out = compose(make_label({1.0, 0.0}), make_label({0.0, 1.0}));
    CHECK(out.amplitude.real() == doctest::Approx(1.0));
    CHECK(out.amplitude.imag() == doctest::Approx(1.0));
    CHECK(out.phase == doctest::Approx(-1.0));
}

TEST_CASE("compose: D(z) D(i eta) = e^{-i eta Re z} D(z + i eta)") {
    for (int i = 0; i < 100; ++i) {
        const Complex z = random_amp();
        const double eta = coord(rng);
        const auto out = compose(make_label(z), make_label({0.0, eta}));
        CHECK(out.amplitude == z + Complex{0.0, eta});
        CHECK(phase_distance(out.phase, -eta * z.real()) < 1e-12);
    }
}

TEST_CASE("compose is associative at the label level") {
    for (int i = 0; i < 100; ++i) {
        const auto a = make_label(random_amp(), coord(rng));
        const auto b = make_label(random_amp(), coord(rng));
        const auto c = make_label(random_amp(), coord(rng));
        const auto left = compose(compose(a, b), c);
        const auto right = compose(a, compose(b, c));
        CHECK(std::abs(left.amplitude - right.amplitude) < 1e-12);
        CHECK(phase_distance(left.phase, right.phase) < 1e-12);
    }
}

TEST_CASE("compose with the inverse cancels exactly") {
    for (int i = 0; i < 100; ++i) {
        const auto l = make_label(random_amp(), coord(rng));
        const auto out = compose(l, inverse(l));
        CHECK(out.amplitude == Complex{0.0, 0.0});
        CHECK(out.phase == 0.0);
    }
}

TEST_CASE("conjugate_sandwich closed forms") {
    SUBCASE("dag_pos at z=1, eta=0.5: phase -1") {
        const auto out = conjugate_sandwich({1.0, 0.0}, 0.5, Sandwich::dag_pos);
        CHECK(std::abs(out.amplitude - Complex{1.0, 0.0}) < 1e-15);
        CHECK(out.phase == doctest::Approx(-1.0));
    }
    SUBCASE("dag_pos at purely imaginary z: no phase") {
        const auto out = conjugate_sandwich({0.0, 1.0}, 3.0, Sandwich::dag_pos);
        CHECK(std::abs(out.amplitude - Complex{0.0, 1.0}) < 1e-15);
        CHECK(std::abs(out.phase) < 1e-15);
    }
    SUBCASE("pos_pos at z=1+i, eta=1: amplitude 1+3i, phase 0") {
        const auto out = conjugate_sandwich({1.0, 1.0}, 1.0, Sandwich::pos_pos);
        CHECK(std::abs(out.amplitude - Complex{1.0, 3.0}) < 1e-15);
        CHECK(std::abs(out.phase) < 1e-12);
    }
}

TEST_CASE("conjugate_sandwich agrees with explicit compose chains and Eq-level forms") {
    for (int i = 0; i < 100; ++i) {
        const Complex z = random_amp();
        const double eta = coord(rng);
        const auto ie = Complex{0.0, eta};

        const auto dag_pos = conjugate_sandwich(z, eta, Sandwich::dag_pos);
        const auto chain1 = compose(compose(make_label(-ie), make_label(z)), make_label(ie));
        CHECK(dag_pos.amplitude == chain1.amplitude);  // bit-for-bit
        CHECK(dag_pos.phase == chain1.phase);
        CHECK(phase_distance(dag_pos.phase, -2.0 * eta * z.real()) < 1e-12);
        CHECK(std::abs(dag_pos.amplitude - z) < 1e-15);

        const auto pos_neg = conjugate_sandwich(z, eta, Sandwich::pos_neg);
        CHECK(phase_distance(pos_neg.phase, 2.0 * eta * z.real()) < 1e-12);
        CHECK(std::abs(pos_neg.amplitude - z) < 1e-15);

        const auto pos_pos = conjugate_sandwich(z, eta, Sandwich::pos_pos);
        CHECK(phase_distance(pos_pos.phase, 0.0) < 1e-12);
        CHECK(std::abs(pos_pos.amplitude - (z + 2.0 * ie)) < 1e-15);
    }
}

TEST_CASE("vacuum_overlap values") {
    CHECK(vacuum_overlap({0.0, 0.0}) == 1.0);
    // frozen from the truncated-Fock oracle at dim 32: component 0 of D(z)|0>
    CHECK(vacuum_overlap({1.0, 0.0}) == doctest::Approx(0.6065306597126339).epsilon(1e-10));
    CHECK(vacuum_overlap({0.0, 2.0}) == doctest::Approx(0.1353352832366132).epsilon(1e-10));
}

TEST_CASE("vacuum_overlap depends only on |z|") {
    for (int i = 0; i < 100; ++i) {
        const Complex z = random_amp();
        const double direct = vacuum_overlap(z);
        const double radial = vacuum_overlap({std::abs(z), 0.0});
        CHECK(direct == doctest::Approx(radial).epsilon(1e-13));
        CHECK(direct > 0.0);
        CHECK(direct <= 1.0);
    }
}
