#pragma once

#include "proxkit/solvers.hpp"

namespace proxkit {

struct Violation {
    std::size_t index;
    double lhs;
    double rhs;
    double slack;  // lhs - rhs, positive means the bound was broken
};

struct BoundReport {
    std::string check;
    std::size_t checked = 0;
    std::vector<Violation> violations;
    // Index where the bound was tightest (smallest rhs - lhs).
    std::optional<std::size_t> tightest_index;
    double tightest_margin = 0.0;

    bool passed() const { return violations.empty(); }
    double worst_slack() const;
    std::string to_json() const;
};

struct StrongConvexityEstimate {
    double mu = 0.0;  // smallest eigenvalue of (1/m) A^T A
    bool valid = false;
};

inline constexpr double kBoundSlack = 1e-9;

/// f(x_{k+1}) <= f(x_k) - (1/2L) ||grad f(x_k)||^2 along a GD trace run
/// with step 1/L.
BoundReport check_max_decrease(const LassoProblem& p, const SolveResult& result);

/// f(x_n) - f(x*) <= L/(2n) ||x0 - x*||^2 for every n >= 1.
BoundReport check_sublinear_gd(const LassoProblem& p, const SolveResult& result,
                               const Vec& x_star);

/// ||x_{k+1} - x*||^2 <= (1 - mu/L) ||x_k - x*||^2 plus the induced
/// exponential objective bound. Needs iterates in the trace.
BoundReport check_geometric_gd(const LassoProblem& p, const SolveResult& result,
                               const Vec& x_star, const StrongConvexityEstimate& mu_est);

/// F(x_{k+1}) <= F(z) - G(x_k)^T (z - x_k) - (1/2 lambda) ||x_{k+1} - x_k||^2
/// for every trace pair and every sample z. Needs iterates.
BoundReport check_prox_descent_lemma(const LassoProblem& p, const SolveResult& result,
                                     const std::vector<Vec>& z_samples);

/// F(x_n) - F(x*) <= 1/(2 n lambda) ||x0 - x*||^2 for every n >= 1.
BoundReport check_sublinear_prox(const LassoProblem& p, const SolveResult& result,
                                 const Vec& x_star);

/// F(x_k) - F* <= (1 + lambda mu / 4)^{-k} (F(x0) - F*), checked both in the
/// recursive form and pairwise per step.
BoundReport check_exponential_prox(const LassoProblem& p, const SolveResult& result,
                                   double F_star, const StrongConvexityEstimate& mu_est);

/// Smallest eigenvalue of (1/m) A^T A via shifted power iteration.
StrongConvexityEstimate estimate_strong_convexity(const LassoProblem& p,
                                                  double tol = 1e-10,
                                                  std::size_t max_power_iters = 5000);

}  // namespace proxkit
