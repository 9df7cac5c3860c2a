#include "doctest.h"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "rwrs/rng.hpp"
#include "rwrs/step_function.hpp"

using namespace rwrs;

namespace {

StepFunction random_step(RandomStream& stream) {
    std::vector<double> edges;
    double e = -3.0 + 2.0 * stream.uniform01();
    for (int i = 0; i < 5; ++i) {
        edges.push_back(e);
        e += 0.1 + stream.uniform01();
    }
    edges.push_back(e);
    std::vector<double> values;
    for (int i = 0; i < 5; ++i) values.push_back(-2.0 + 4.0 * stream.uniform01());
    return StepFunction(edges, values);
}

} // namespace

TEST_CASE("constructors validate their cell data") {
    CHECK_THROWS_AS(StepFunction({0.0, 1.0}, {1.0, 2.0}), std::invalid_argument);
    CHECK_THROWS_AS(StepFunction({0.0, 1.0, 1.0}, {1.0, 2.0}), std::invalid_argument);
    CHECK_THROWS_AS(StepFunction({0.0, 2.0, 1.0}, {1.0, 2.0}), std::invalid_argument);
    CHECK_THROWS_AS(StepFunction::indicator(1.0, 1.0), std::invalid_argument);
    CHECK_NOTHROW(StepFunction({0.0, 1.0, 2.0}, {1.0, 2.0}));
}

TEST_CASE("the default function is identically zero") {
    const StepFunction f;
    CHECK(f.empty());
    CHECK(f(0.0) == 0.0);
    CHECK(f.integral() == 0.0);
    CHECK(lp_norm(f, 2.0) == 0.0);
}

TEST_CASE("indicators evaluate right-continuously and trim to their support") {
    const auto f = StepFunction::indicator(0.0, 1.0);
    CHECK(f(0.0) == 1.0);
    CHECK(f(0.999) == 1.0);
    CHECK(f(1.0) == 0.0);
    CHECK(f(-0.001) == 0.0);
    CHECK(f.support().first == doctest::Approx(0.0));
    CHECK(f.support().second == doctest::Approx(1.0));

    // Zero cells at the ends are trimmed away.
    const StepFunction g({0.0, 1.0, 2.0, 3.0}, {0.0, 5.0, 0.0});
    CHECK(g.cells() == 1);
    CHECK(g.support().first == doctest::Approx(1.0));
    CHECK(g.support().second == doctest::Approx(2.0));
}

TEST_CASE("integrals of simple shapes are exact") {
    CHECK(StepFunction::indicator(0.0, 2.0, 3.0).integral() == doctest::Approx(6.0));
    const StepFunction f({-1.0, 0.0, 2.0}, {2.0, -1.0});
    CHECK(f.integral() == doctest::Approx(0.0));
    CHECK(f.integral_abs_pow(1.0) == doctest::Approx(4.0));
    CHECK(f.integral_abs_pow(2.0) == doctest::Approx(6.0));
    CHECK(f.integral_abs_pow(2.0, 0.0, 1.0) == doctest::Approx(1.0));
    CHECK(f.integral_abs_pow(2.0, -0.5, 0.5) == doctest::Approx(2.5));
    CHECK_THROWS_AS(f.integral_abs_pow(0.5), std::invalid_argument);
}

TEST_CASE("Lp norms and distances match hand values") {
    const auto zero = StepFunction();
    CHECK(lp_norm(zero, 1.0) == 0.0);

    const auto unit = StepFunction::indicator(0.0, 1.0);
    CHECK(lp_norm(unit, 2.0, -2.0, 2.0) == doctest::Approx(1.0));

    const auto tall = StepFunction::indicator(0.0, 0.5, 3.0);
    CHECK(lp_norm(tall, 1.0) == doctest::Approx(1.5));
    CHECK(lp_norm(tall, 1.5) == doctest::Approx(std::pow(0.5 * std::pow(3.0, 1.5), 1.0 / 1.5)));

    const auto shifted = StepFunction::indicator(0.5, 1.5);
    CHECK(lp_distance(unit, unit, 2.0) == doctest::Approx(0.0));
    CHECK(lp_distance(unit, shifted, 1.0) == doctest::Approx(1.0));
    CHECK(lp_distance(unit, shifted, 2.0) == doctest::Approx(1.0));
}

TEST_CASE("Lp distances satisfy the triangle inequality on random data") {
    RandomStream stream(301, 0);
    for (int trial = 0; trial < 50; ++trial) {
        const auto f = random_step(stream);
        const auto g = random_step(stream);
        const auto h = random_step(stream);
        for (double p : {1.0, 1.5, 2.0}) {
            CHECK(lp_distance(f, h, p) <=
                  lp_distance(f, g, p) + lp_distance(g, h, p) + 1e-12);
        }
    }
}

TEST_CASE("scaling multiplies values and dilating compresses the argument") {
    const auto f = StepFunction::indicator(0.0, 2.0, 4.0);
    CHECK(f.scaled(0.5)(1.0) == doctest::Approx(2.0));
    CHECK(f.scaled(0.5).integral() == doctest::Approx(4.0));

    const auto g = f.dilate_arg(2.0); // g(x) = f(2x)
    CHECK(g(0.5) == doctest::Approx(4.0));
    CHECK(g(0.999) == doctest::Approx(4.0));
    CHECK(g(1.0) == doctest::Approx(0.0));
    CHECK(g.integral() == doctest::Approx(4.0));
    CHECK_THROWS_AS(f.dilate_arg(0.0), std::invalid_argument);
    CHECK_THROWS_AS(f.dilate_arg(-1.0), std::invalid_argument);
}

TEST_CASE("sums and differences are exact on overlapping lattices") {
    const auto a = StepFunction::indicator(0.0, 2.0);
    const auto b = StepFunction::indicator(1.0, 3.0);
    const auto sum = a + b;
    CHECK(sum(0.5) == doctest::Approx(1.0));
    CHECK(sum(1.5) == doctest::Approx(2.0));
    CHECK(sum(2.5) == doctest::Approx(1.0));
    CHECK(sum.integral() == doctest::Approx(4.0));

    const auto diff = a - a;
    CHECK(lp_norm(diff, 1.0) == 0.0);
}

TEST_CASE("grid projection composes with the floor map") {
    // g(x) = f(delta floor(x / delta)).
    const auto f = StepFunction::indicator(0.3, 0.8);
    const auto g = f.grid_project(0.5);
    CHECK(g(0.2) == doctest::Approx(0.0));  // f(0) = 0
    CHECK(g(0.5) == doctest::Approx(1.0));  // f(0.5) = 1
    CHECK(g(0.99) == doctest::Approx(1.0));
    CHECK(g(1.0) == doctest::Approx(0.0));  // f(1) = 0
    CHECK_THROWS_AS(f.grid_project(0.0), std::invalid_argument);
}

TEST_CASE("block averages take exact cell means and preserve the integral") {
    const auto f = StepFunction::indicator(0.0, 0.5, 2.0);
    const auto g = f.block_average(1.0);
    CHECK(g(0.0) == doctest::Approx(1.0));
    CHECK(g(0.9) == doctest::Approx(1.0));
    CHECK(g(1.0) == doctest::Approx(0.0));
    CHECK(g.integral() == doctest::Approx(f.integral()));

    // Averaging on the function's own lattice is the identity.
    const auto unit = StepFunction::indicator(0.0, 1.0, 3.0);
    const auto same = unit.block_average(0.25);
    CHECK(same(0.1) == doctest::Approx(3.0));
    CHECK(same(0.9) == doctest::Approx(3.0));
    CHECK(same.integral() == doctest::Approx(3.0));

    RandomStream stream(302, 0);
    for (int trial = 0; trial < 20; ++trial) {
        const auto h = random_step(stream);
        CHECK(h.block_average(0.7).integral() == doctest::Approx(h.integral()));
    }
}
