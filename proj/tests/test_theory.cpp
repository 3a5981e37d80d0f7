#include "doctest.h"

#include <cmath>

#include "proxkit/rng.hpp"
#include "proxkit/theory.hpp"

using namespace proxkit;

namespace {

LassoProblem random_problem(Rng& rng, double alpha, std::size_t d, std::size_t m) {
    Mat A(m, d);
    for (double& v : A.data) v = rng.normal();
    Vec x_true(d);
    for (double& v : x_true) v = rng.normal();
    Vec b = matvec(A, x_true);
    for (double& v : b) v += 0.05 * rng.normal();
    return LassoProblem(std::move(A), std::move(b), alpha);
}

SolverConfig oracle_config() {
    SolverConfig cfg;
    cfg.lipschitz_mode = LipschitzMode::Analytic;
    cfg.max_iters = 2000;
    cfg.grad_tol = 1e-10;
    cfg.monotone_stop = false;
    cfg.record_iterates = true;
    return cfg;
}

}  // namespace

TEST_CASE("estimate_strong_convexity hand examples") {
    SUBCASE("identity, m = d") {
        LassoProblem p(Mat::identity(2), {0, 0}, 0.0);
        const auto est = estimate_strong_convexity(p);
        CHECK(est.valid);
        CHECK(est.mu == doctest::Approx(0.5));  // eig of A^T A / m = I/2
    }
    SUBCASE("diag(2, 1), m = 2") {
        Mat A(2, 2);
        A(0, 0) = 2;
        A(1, 1) = 1;
        LassoProblem p(std::move(A), {0, 0}, 0.0);
        const auto est = estimate_strong_convexity(p);
        CHECK(est.valid);
        CHECK(est.mu == doctest::Approx(0.5));  // min(4, 1) / 2
    }
    SUBCASE("wide matrix is singular") {
        Mat A(2, 3);
        A(0, 0) = 1;
        A(1, 1) = 1;
        LassoProblem p(std::move(A), {0, 0}, 0.0);
        CHECK_FALSE(estimate_strong_convexity(p).valid);
    }
}

TEST_CASE("mu never exceeds the analytic smoothness constant") {
    Rng rng(11);
    for (int trial = 0; trial < 5; ++trial) {
        LassoProblem p = random_problem(rng, 0.0, 4 + rng.next() % 5, 40);
        const auto est = estimate_strong_convexity(p);
        const double L = lipschitz_constant(p, 1e-12, 20000, LipschitzMode::Analytic);
        REQUIRE(est.valid);
        CHECK(est.mu <= L * (1 + 1e-9));
    }
}

TEST_CASE("smooth bounds hold on matched GD traces") {
    Rng rng(13);
    LassoProblem p = random_problem(rng, 0.0, 6, 50);
    SolverConfig cfg = oracle_config();
    const SolveResult run = gd_solve(p, cfg);

    SolverConfig long_cfg = cfg;
    long_cfg.max_iters = 20000;
    long_cfg.record_iterates = false;
    const Vec x_star = gd_solve(p, long_cfg).final_x;
    const auto mu_est = estimate_strong_convexity(p);
    REQUIRE(mu_est.valid);

    const auto r1 = check_max_decrease(p, run);
    CHECK(r1.passed());
    CHECK(r1.checked == run.trace.records.size() - 1);

    const auto r2 = check_sublinear_gd(p, run, x_star);
    CHECK(r2.passed());

    const auto r3 = check_geometric_gd(p, run, x_star, mu_est);
    CHECK(r3.passed());
    CHECK(r3.tightest_index.has_value());
}

TEST_CASE("prox bounds hold on matched constant-step traces") {
    Rng rng(17);
    LassoProblem p = random_problem(rng, 0.01, 6, 50);
    SolverConfig cfg = oracle_config();
    const SolveResult run = prox_gd_constant_solve(p, cfg);

    SolverConfig long_cfg = cfg;
    long_cfg.max_iters = 30000;
    long_cfg.record_iterates = false;
    const SolveResult oracle = prox_gd_constant_solve(p, long_cfg);
    const Vec& x_star = oracle.final_x;
    const double F_star = composite_value(p, x_star);
    const auto mu_est = estimate_strong_convexity(p);
    REQUIRE(mu_est.valid);

    std::vector<Vec> zs;
    Rng zrng(99);
    for (int i = 0; i < 20; ++i) {
        Vec z(p.d());
        for (double& v : z) v = zrng.normal();
        zs.push_back(std::move(z));
    }

    CHECK(check_prox_descent_lemma(p, run, zs).passed());
    CHECK(check_sublinear_prox(p, run, x_star).passed());
    CHECK(check_exponential_prox(p, run, F_star, mu_est).passed());
}

TEST_CASE("checkers reject a fabricated non-decreasing trace") {
    LassoProblem p(Mat::identity(2), {1, 1}, 0.0);
    const double L = lipschitz_constant(p, 1e-12, 1000, LipschitzMode::Analytic);

    SolveResult fake;
    fake.trace.iterates = {{0, 0}, {0, 0}};  // GD from 0 would have moved
    for (std::size_t k = 0; k < 2; ++k) {
        TraceRecord r;
        r.k = k;
        r.objective = smooth_value(p, fake.trace.iterates[k]);
        r.grad_norm = norm2(smooth_gradient(p, fake.trace.iterates[k]));
        r.step = 1.0 / L;
        fake.trace.records.push_back(r);
    }
    fake.final_x = {0, 0};
    fake.iterations = 2;
    fake.stop_reason = StopReason::MaxIters;

    const auto report = check_max_decrease(p, fake);
    CHECK_FALSE(report.passed());
    CHECK(report.violations.size() == 1);
    CHECK(report.violations[0].slack > 0);
}

TEST_CASE("sublinear checker rejects a trace pinned above the optimum") {
    LassoProblem p(Mat::identity(1), {2}, 0.0);
    SolveResult fake;
    fake.trace.iterates = std::vector<Vec>(40, Vec{0.0});  // never moves
    for (std::size_t k = 0; k < 40; ++k) {
        TraceRecord r;
        r.k = k;
        r.objective = smooth_value(p, {0.0});
        r.grad_norm = norm2(smooth_gradient(p, {0.0}));
        r.step = 1.0;
        fake.trace.records.push_back(r);
    }
    fake.final_x = {0.0};
    fake.iterations = 40;
    fake.stop_reason = StopReason::MaxIters;
    CHECK_FALSE(check_sublinear_gd(p, fake, Vec{2.0}).passed());
}

TEST_CASE("checkers require recorded iterates and at least one step") {
    LassoProblem p(Mat::identity(2), {1, 1}, 0.0);
    SolveResult res;
    TraceRecord r;
    r.k = 0;
    r.objective = smooth_value(p, {0, 0});
    r.grad_norm = 1;
    r.step = 1;
    res.trace.records = {r};
    res.final_x = {0, 0};
    CHECK_THROWS_AS(check_max_decrease(p, res), std::invalid_argument);
    res.trace.iterates = {{0, 0}};
    CHECK_THROWS_AS(check_max_decrease(p, res), std::invalid_argument);
}

TEST_CASE("report json includes the check name and counts") {
    Rng rng(23);
    LassoProblem p = random_problem(rng, 0.0, 4, 30);
    SolverConfig cfg = oracle_config();
    cfg.max_iters = 50;
    const auto report = check_max_decrease(p, gd_solve(p, cfg));
    const std::string js = report.to_json();
    CHECK(js.find("max-decrease") != std::string::npos);
    CHECK(js.find("checked") != std::string::npos);
}
