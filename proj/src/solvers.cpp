#include "proxkit/solvers.hpp"

#include <chrono>
#include <cmath>

namespace proxkit {

void SolverConfig::validate() const {
    if (max_iters < 1)
        throw std::invalid_argument("SolverConfig: max_iters must be >= 1");
    if (!(lambda0 > 0.0))
        throw std::invalid_argument("SolverConfig: lambda0 must be > 0");
    if (!(0.0 < mu1 && mu1 < mu0 && mu0 < 1.0))
        throw std::invalid_argument("SolverConfig: need 0 < mu1 < mu0 < 1");
    if (!(0.0 < eta_rho && eta_rho < 1.0))
        throw std::invalid_argument("SolverConfig: eta_rho must be in (0,1)");
    if (!(grad_tol > 0.0))
        throw std::invalid_argument("SolverConfig: grad_tol must be > 0");
}

void AdamConfig::validate() const {
    if (!(step > 0.0))
        throw std::invalid_argument("AdamConfig: step must be > 0");
    if (!(0.0 <= beta1 && beta1 < 1.0) || !(0.0 <= beta2 && beta2 < 1.0))
        throw std::invalid_argument("AdamConfig: betas must be in [0,1)");
    if (!(epsilon > 0.0))
        throw std::invalid_argument("AdamConfig: epsilon must be > 0");
}

double StepController::update(const Vec& x_prev, const Vec& x_next,
                              const Vec& g_prev, const Vec& g_next) {
    double dx2 = 0.0, dg2 = 0.0;
    for (std::size_t i = 0; i < x_prev.size(); ++i) {
        const double dx = x_next[i] - x_prev[i];
        const double dg = g_next[i] - g_prev[i];
        dx2 += dx * dx;
        dg2 += dg * dg;
    }
    const double dx_norm = std::sqrt(dx2);
    const double dg_norm = std::sqrt(dg2);
    // Division-free local Lipschitz test; the degenerate dx = dg = 0 pair
    // falls through to the growth branch.
    if (lambda * dg_norm > mu0 * dx_norm) {
        lambda = mu1 * dx_norm / dg_norm;
    } else {
        lambda += std::min(lambda, 1.0) * std::pow(eta_rho, static_cast<double>(k));
    }
    ++k;
    return lambda;
}

std::optional<StopReason> check_stop(const IterationTrace& trace, const SolverConfig& cfg) {
    if (trace.records.size() < 2)
        throw std::invalid_argument("check_stop: need at least one completed iteration");
    const TraceRecord& last = trace.records.back();
    const TraceRecord& prev = trace.records[trace.records.size() - 2];
    if (last.grad_norm < cfg.grad_tol) return StopReason::GradTol;
    if (cfg.monotone_stop && last.objective > prev.objective) return StopReason::NonMonotone;
    if (last.k >= cfg.max_iters) return StopReason::MaxIters;
    return std::nullopt;
}

namespace {

using Clock = std::chrono::steady_clock;

struct Tracer {
    IterationTrace trace;
    Clock::time_point start = Clock::now();
    const Vec* x_star;
    bool keep_iterates;
    const TraceCallback* cb;

    Tracer(const Vec* xs, bool keep, const TraceCallback& on_record)
        : x_star(xs), keep_iterates(keep), cb(on_record ? &on_record : nullptr) {}

    void add(std::size_t k, double objective, double grad_norm, double step, const Vec& x) {
        TraceRecord rec;
        rec.k = k;
        rec.objective = objective;
        rec.grad_norm = grad_norm;
        rec.step = step;
        if (x_star) {
            double s = 0.0;
            for (std::size_t i = 0; i < x.size(); ++i) {
                const double e = x[i] - (*x_star)[i];
                s += e * e;
            }
            rec.dist_to_opt = std::sqrt(s);
        }
        rec.elapsed_s = std::chrono::duration<double>(Clock::now() - start).count();
        trace.records.push_back(rec);
        if (keep_iterates) trace.iterates.push_back(x);
        if (cb) (*cb)(rec);
    }
};

void require_finite(double objective, double grad_norm, std::size_t k) {
    if (!std::isfinite(objective) || !std::isfinite(grad_norm))
        throw SolverError("non-finite objective or gradient at iteration " + std::to_string(k), k);
}

Vec initial_point(const LassoProblem& p, const SolverConfig& cfg) {
    if (cfg.x0.empty()) return Vec(p.d(), 0.0);
    if (cfg.x0.size() != p.d())
        throw DimensionError("SolverConfig: dim(x0) != d");
    return cfg.x0;
}

SolveResult finish(Tracer& tracer, Vec final_x, StopReason reason) {
    SolveResult res;
    res.final_x = std::move(final_x);
    res.iterations = tracer.trace.records.back().k + 1;
    res.stop_reason = reason;
    res.trace = std::move(tracer.trace);
    return res;
}

}  // namespace

SolveResult gd_solve(const LassoProblem& p, const SolverConfig& cfg,
                     const Vec* x_star, const TraceCallback& on_record) {
    cfg.validate();
    SolverConfig loop_cfg = cfg;
    loop_cfg.monotone_stop = false;  // plain GD stops on grad_tol / max_iters only

    const double L = lipschitz_constant(p, cfg.lipschitz_tol, cfg.lipschitz_max_iters,
                                        cfg.lipschitz_mode);
    const double lambda = 1.0 / L;

    Tracer tracer(x_star, cfg.record_iterates, on_record);
    Vec x = initial_point(p, cfg);
    Vec g = smooth_gradient(p, x);
    double gn = norm2(g);
    tracer.add(0, composite_value(p, x), gn, lambda, x);
    if (gn < cfg.grad_tol) return finish(tracer, std::move(x), StopReason::GradTol);

    for (std::size_t k = 0;; ++k) {
        for (std::size_t i = 0; i < x.size(); ++i) x[i] -= lambda * g[i];
        g = smooth_gradient(p, x);
        gn = norm2(g);
        const double F = composite_value(p, x);
        require_finite(F, gn, k + 1);
        tracer.add(k + 1, F, gn, lambda, x);
        if (auto stop = check_stop(tracer.trace, loop_cfg))
            return finish(tracer, std::move(x), *stop);
    }
}

SolveResult prox_gd_constant_solve(const LassoProblem& p, const SolverConfig& cfg,
                                   const Vec* x_star, const TraceCallback& on_record) {
    cfg.validate();
    const double L = lipschitz_constant(p, cfg.lipschitz_tol, cfg.lipschitz_max_iters,
                                        cfg.lipschitz_mode);
    const double lambda = 1.0 / L;
    const double theta = p.alpha * lambda;

    Tracer tracer(x_star, cfg.record_iterates, on_record);
    Vec x = initial_point(p, cfg);
    Vec g = smooth_gradient(p, x);
    double gn = norm2(g);
    tracer.add(0, composite_value(p, x), gn, lambda, x);
    if (gn < cfg.grad_tol) return finish(tracer, std::move(x), StopReason::GradTol);

    for (std::size_t k = 0;; ++k) {
        Vec z(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) z[i] = x[i] - lambda * g[i];
        Vec x_next = soft_threshold(z, theta);
        g = smooth_gradient(p, x_next);
        gn = norm2(g);
        const double F = composite_value(p, x_next);
        require_finite(F, gn, k + 1);
        tracer.add(k + 1, F, gn, lambda, x_next);
        if (auto stop = check_stop(tracer.trace, cfg)) {
            // On a non-monotone stop the previous iterate is the better one.
            if (*stop == StopReason::NonMonotone)
                return finish(tracer, std::move(x), *stop);
            return finish(tracer, std::move(x_next), *stop);
        }
        x = std::move(x_next);
    }
}

SolveResult prox_gd_variable_solve(const LassoProblem& p, const SolverConfig& cfg,
                                   const Vec* x_star, const TraceCallback& on_record) {
    cfg.validate();
    // Computed for timing parity with the constant-step method; unused.
    (void)lipschitz_constant(p, cfg.lipschitz_tol, cfg.lipschitz_max_iters,
                             cfg.lipschitz_mode);

    StepController ctrl{cfg.lambda0, cfg.mu0, cfg.mu1, cfg.eta_rho};
    double lambda = cfg.lambda0;

    Tracer tracer(x_star, cfg.record_iterates, on_record);
    Vec x = initial_point(p, cfg);
    Vec g = smooth_gradient(p, x);
    double gn = norm2(g);
    tracer.add(0, composite_value(p, x), gn, lambda, x);
    if (gn < cfg.grad_tol) return finish(tracer, std::move(x), StopReason::GradTol);

    for (std::size_t k = 0;; ++k) {
        Vec z(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) z[i] = x[i] - lambda * g[i];
        Vec x_next = soft_threshold(z, p.alpha * lambda);
        Vec g_next = smooth_gradient(p, x_next);
        gn = norm2(g_next);
        const double F = composite_value(p, x_next);
        require_finite(F, gn, k + 1);
        lambda = ctrl.update(x, x_next, g, g_next);
        tracer.add(k + 1, F, gn, lambda, x_next);
        if (auto stop = check_stop(tracer.trace, cfg)) {
            if (*stop == StopReason::NonMonotone)
                return finish(tracer, std::move(x), *stop);
            return finish(tracer, std::move(x_next), *stop);
        }
        x = std::move(x_next);
        g = std::move(g_next);
    }
}

SolveResult adam_l1_solve(const LassoProblem& p, const SolverConfig& cfg,
                          const AdamConfig& acfg, const Vec* x_star,
                          const TraceCallback& on_record) {
    cfg.validate();
    acfg.validate();
    SolverConfig loop_cfg = cfg;
    loop_cfg.monotone_stop = false;  // Adam is non-monotone by design

    Tracer tracer(x_star, cfg.record_iterates, on_record);
    Vec x = initial_point(p, cfg);
    const std::size_t d = x.size();
    Vec g = smooth_gradient(p, x);
    double gn = norm2(g);
    tracer.add(0, composite_value(p, x), gn, acfg.step, x);
    if (gn < cfg.grad_tol) return finish(tracer, std::move(x), StopReason::GradTol);

    Vec m(d, 0.0), v(d, 0.0);
    for (std::size_t k = 0;; ++k) {
        const double t = static_cast<double>(k + 1);
        Vec sub = l1_subgradient(p, x);
        const double bc1 = 1.0 - std::pow(acfg.beta1, t);
        const double bc2 = 1.0 - std::pow(acfg.beta2, t);
        for (std::size_t i = 0; i < d; ++i) {
            const double gi = g[i] + sub[i];
            m[i] = acfg.beta1 * m[i] + (1.0 - acfg.beta1) * gi;
            v[i] = acfg.beta2 * v[i] + (1.0 - acfg.beta2) * gi * gi;
            const double mhat = m[i] / bc1;
            const double vhat = v[i] / bc2;
            x[i] -= acfg.step * mhat / (std::sqrt(vhat) + acfg.epsilon);
        }
        g = smooth_gradient(p, x);
        gn = norm2(g);
        const double F = composite_value(p, x);
        require_finite(F, gn, k + 1);
        tracer.add(k + 1, F, gn, acfg.step, x);
        if (auto stop = check_stop(tracer.trace, loop_cfg))
            return finish(tracer, std::move(x), *stop);
    }
}

}  // namespace proxkit
