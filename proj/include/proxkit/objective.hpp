#pragma once

#include "proxkit/core.hpp"

namespace proxkit {

/// l1-regularized least squares:
///   F(x) = (1/2m) ||Ax - b||^2 + alpha * ||x||_1
struct LassoProblem {
    Mat A;
    Vec b;
    double alpha = 0.01;

    LassoProblem() = default;
    LassoProblem(Mat A_, Vec b_, double alpha_);

    std::size_t m() const { return A.rows; }
    std::size_t d() const { return A.cols; }
};

double smooth_value(const LassoProblem& p, const Vec& x);
Vec smooth_gradient(const LassoProblem& p, const Vec& x);
double reg_value(const LassoProblem& p, const Vec& x);
double composite_value(const LassoProblem& p, const Vec& x);

/// Canonical subdifferential element alpha*sgn(x), with sgn(0) = 0.
Vec l1_subgradient(const LassoProblem& p, const Vec& x);

/// Which matrix defines the smoothness constant L used for the 1/L step.
/// Paper:    L = lambda_max((1/2m) A^T A)  -- reproduces the benchmark runs.
/// Analytic: L = lambda_max((1/m)  A^T A)  -- the true Lipschitz constant of
///           grad f; the convergence bounds hold under this one.
enum class LipschitzMode { Paper, Analytic };

struct LipschitzError : std::runtime_error {
    double best_estimate;
    LipschitzError(const std::string& msg, double best)
        : std::runtime_error(msg), best_estimate(best) {}
};

/// Largest eigenvalue of the scaled Gram matrix by power iteration
/// (all-ones start vector, relative-change tolerance).
double lipschitz_constant(const LassoProblem& p, double tol = 1e-10,
                          std::size_t max_power_iters = 5000,
                          LipschitzMode mode = LipschitzMode::Paper);

/// scale * A^T A, dense symmetric.
Mat gram_matrix(const Mat& A, double scale);

}  // namespace proxkit
