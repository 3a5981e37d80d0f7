#include "doctest.h"

#include <cmath>

#include "proxkit/prox.hpp"
#include "proxkit/rng.hpp"

using namespace proxkit;

namespace {

// Brute-force minimizer of (1/2 lambda) (y - z)^2 + alpha |y| over a grid.
double grid_prox_1d(double z, double lambda, double alpha, double pitch = 1e-4) {
    const double theta = alpha * lambda;
    double best_y = 0.0;
    double best_val = z * z / (2.0 * lambda);
    const double lo = z - 3.0 * theta - pitch, hi = z + 3.0 * theta + pitch;
    for (double y = lo; y <= hi; y += pitch) {
        const double val = (y - z) * (y - z) / (2.0 * lambda) + alpha * std::abs(y);
        if (val < best_val) {
            best_val = val;
            best_y = y;
        }
    }
    return best_y;
}

}  // namespace

TEST_CASE("soft_threshold examples") {
    CHECK(soft_threshold({2, 0.3, -2}, 0.5) == Vec{1.5, 0, -1.5});
    CHECK(soft_threshold({1.5, -0.2, 0.0}, 0.0) == Vec{1.5, -0.2, 0.0});
    CHECK(soft_threshold({0, 0, 0}, 3.0) == Vec{0, 0, 0});
    CHECK_THROWS_AS(soft_threshold({1.0}, -0.1), std::invalid_argument);
}

TEST_CASE("soft_threshold zeros are bitwise exact, boundary included") {
    const Vec out = soft_threshold({0.5, -0.5, 0.4999}, 0.5);
    for (double v : out) {
        CHECK(v == 0.0);
        CHECK(!std::signbit(v));
    }
}

TEST_CASE("soft_threshold matches the grid prox oracle") {
    Rng rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const double z = 4.0 * (rng.uniform01() - 0.5);
        const double lambda = 0.05 + rng.uniform01();
        const double alpha = 0.05 + rng.uniform01();
        const double got = soft_threshold({z}, alpha * lambda)[0];
        const double want = grid_prox_1d(z, lambda, alpha);
        CHECK(std::abs(got - want) < 2e-4);
    }
}

TEST_CASE("soft_threshold is firmly non-expansive and odd") {
    Rng rng(12);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 1 + rng.next() % 6;
        const double theta = rng.uniform01();
        Vec x(n), y(n);
        for (std::size_t i = 0; i < n; ++i) {
            x[i] = 3.0 * rng.normal();
            y[i] = 3.0 * rng.normal();
        }
        const Vec px = soft_threshold(x, theta), py = soft_threshold(y, theta);
        double pdiff2 = 0.0, cross = 0.0, diff2 = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double pd = px[i] - py[i], dd = x[i] - y[i];
            pdiff2 += pd * pd;
            cross += pd * dd;
            diff2 += dd * dd;
        }
        CHECK(pdiff2 <= cross + 1e-12);           // firm non-expansiveness
        CHECK(pdiff2 <= diff2 + 1e-12);           // non-expansiveness corollary

        Vec nx(n);
        for (std::size_t i = 0; i < n; ++i) nx[i] = -x[i];
        const Vec pnx = soft_threshold(nx, theta);
        for (std::size_t i = 0; i < n; ++i) CHECK(pnx[i] == -px[i]);
    }
}

TEST_CASE("prox_step scalar example") {
    // d=1, m=1, A=(1), b=(0), alpha=1, lambda=0.5, x=2:
    // grad = 2, z = 1, theta = 0.5 -> 0.5
    LassoProblem p(Mat::identity(1), {0}, 1.0);
    const Vec out = prox_step(p, {2}, 0.5);
    CHECK(out[0] == doctest::Approx(0.5));

    // Cross-check against grid search over the prox objective.
    const double z = 2.0 - 0.5 * 2.0;
    CHECK(grid_prox_1d(z, 0.5, 1.0) == doctest::Approx(0.5).epsilon(1e-3));

    CHECK_THROWS_AS(prox_step(p, {2}, 0.0), std::invalid_argument);
}

TEST_CASE("prox_step with tiny alpha approximates a plain GD step") {
    LassoProblem p(Mat::identity(2), {1, -1}, 1e-12);
    const Vec x = {2, 3};
    const double lambda = 0.3;
    const Vec g = smooth_gradient(p, x);
    const Vec out = prox_step(p, x, lambda);
    for (std::size_t i = 0; i < 2; ++i)
        CHECK(out[i] == doctest::Approx(x[i] - lambda * g[i]).epsilon(1e-9));
}

TEST_CASE("generalized_gradient") {
    LassoProblem p(Mat::identity(1), {0}, 1.0);
    CHECK(generalized_gradient(p, {2}, 0.5)[0] == doctest::Approx(3.0));

    // alpha ~ 0: coincides with the smooth gradient
    LassoProblem q(Mat::identity(2), {1, -1}, 1e-13);
    const Vec x = {0.5, 0.25};
    const Vec gg = generalized_gradient(q, x, 0.4);
    const Vec g = smooth_gradient(q, x);
    for (std::size_t i = 0; i < 2; ++i) CHECK(gg[i] == doctest::Approx(g[i]).epsilon(1e-9));
}

TEST_CASE("prox oracle on small multidimensional instances") {
    Rng rng(21);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 1 + rng.next() % 3;
        const double theta = 0.05 + rng.uniform01();
        Vec z(n);
        for (double& v : z) v = 2.0 * rng.normal();
        const Vec out = soft_threshold(z, theta);
        // The prox objective is separable, so the per-coordinate oracle applies.
        for (std::size_t i = 0; i < n; ++i)
            CHECK(std::abs(out[i] - grid_prox_1d(z[i], 1.0, theta)) < 2e-4);
    }
}
