#pragma once

#include <functional>

#include "proxkit/prox.hpp"

namespace proxkit {

struct SolverConfig {
    std::size_t max_iters = 1000;
    double grad_tol = 1e-3;
    double lambda0 = 0.1;
    double mu0 = 0.99;
    double mu1 = 0.95;
    double eta_rho = 0.99;  // eta_k = eta_rho^k; geometric, summable
    Vec x0;                 // empty means the zero vector
    bool monotone_stop = true;
    LipschitzMode lipschitz_mode = LipschitzMode::Paper;
    double lipschitz_tol = 1e-10;
    std::size_t lipschitz_max_iters = 5000;
    bool record_iterates = false;

    void validate() const;
};

struct AdamConfig {
    double step = 1e-3;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;

    void validate() const;
};

/// Step-size controller for the variable-step method. On each iteration,
/// if lambda_k * ||dg|| > mu0 * ||dx|| (division-free form of the local
/// Lipschitz test), the step shrinks to mu1 * ||dx|| / ||dg||; otherwise
/// it grows by min(lambda_k, 1) * eta_k.
struct StepController {
    double lambda;
    double mu0;
    double mu1;
    double eta_rho;
    std::size_t k = 0;

    double update(const Vec& x_prev, const Vec& x_next,
                  const Vec& g_prev, const Vec& g_next);
};

struct SolverError : std::runtime_error {
    std::size_t iteration;
    SolverError(const std::string& msg, std::size_t iter)
        : std::runtime_error(msg), iteration(iter) {}
};

using TraceCallback = std::function<void(const TraceRecord&)>;

/// GradTol beats NonMonotone beats MaxIters. Needs at least one completed
/// iteration (two trace records).
std::optional<StopReason> check_stop(const IterationTrace& trace, const SolverConfig& cfg);

SolveResult gd_solve(const LassoProblem& p, const SolverConfig& cfg,
                     const Vec* x_star = nullptr, const TraceCallback& on_record = {});

SolveResult prox_gd_constant_solve(const LassoProblem& p, const SolverConfig& cfg,
                                   const Vec* x_star = nullptr,
                                   const TraceCallback& on_record = {});

SolveResult prox_gd_variable_solve(const LassoProblem& p, const SolverConfig& cfg,
                                   const Vec* x_star = nullptr,
                                   const TraceCallback& on_record = {});

SolveResult adam_l1_solve(const LassoProblem& p, const SolverConfig& cfg,
                          const AdamConfig& acfg, const Vec* x_star = nullptr,
                          const TraceCallback& on_record = {});

}  // namespace proxkit
