#include "proxkit/theory.hpp"

#include <cmath>

#include "json.hpp"

namespace proxkit {

namespace {

void require_pairs(const SolveResult& result) {
    if (result.trace.records.size() < 2)
        throw std::invalid_argument("bound check: trace too short, need at least two records");
}

void require_iterates(const SolveResult& result) {
    if (result.trace.iterates.size() != result.trace.records.size())
        throw std::invalid_argument("bound check: trace does not carry iterates");
}

void note(BoundReport& rep, std::size_t index, double lhs, double rhs, double tol) {
    const double margin = rhs - lhs;
    if (!rep.tightest_index || margin < rep.tightest_margin) {
        rep.tightest_index = index;
        rep.tightest_margin = margin;
    }
    ++rep.checked;
    if (lhs > rhs + tol)
        rep.violations.push_back({index, lhs, rhs, lhs - rhs});
}

double dist2(const Vec& a, const Vec& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double e = a[i] - b[i];
        s += e * e;
    }
    return s;
}

}  // namespace

double BoundReport::worst_slack() const {
    double w = 0.0;
    for (const Violation& v : violations) w = std::max(w, v.slack);
    return w;
}

std::string BoundReport::to_json() const {
    nlohmann::json j;
    j["check"] = check;
    j["checked"] = checked;
    j["passed"] = passed();
    j["violations"] = nlohmann::json::array();
    for (const Violation& v : violations)
        j["violations"].push_back({{"index", v.index}, {"lhs", v.lhs}, {"rhs", v.rhs}, {"slack", v.slack}});
    if (tightest_index) {
        j["tightest_index"] = *tightest_index;
        j["tightest_margin"] = tightest_margin;
    }
    return j.dump();
}

BoundReport check_max_decrease(const LassoProblem&, const SolveResult& result) {
    require_pairs(result);
    BoundReport rep;
    rep.check = "max-decrease";
    const auto& recs = result.trace.records;
    for (std::size_t k = 0; k + 1 < recs.size(); ++k) {
        const double L = 1.0 / recs[k].step;
        const double lhs = recs[k + 1].objective;
        const double rhs = recs[k].objective -
                           recs[k].grad_norm * recs[k].grad_norm / (2.0 * L);
        note(rep, k, lhs, rhs, kBoundSlack);
    }
    return rep;
}

BoundReport check_sublinear_gd(const LassoProblem& p, const SolveResult& result,
                               const Vec& x_star) {
    require_pairs(result);
    require_iterates(result);
    BoundReport rep;
    rep.check = "gd-sublinear";
    const double L = lipschitz_constant(p, 1e-12, 20000, LipschitzMode::Analytic);
    const double f_star = smooth_value(p, x_star);
    const double r0 = dist2(result.trace.iterates[0], x_star);
    for (std::size_t n = 1; n < result.trace.records.size(); ++n) {
        const double lhs = smooth_value(p, result.trace.iterates[n]) - f_star;
        const double rhs = L / (2.0 * static_cast<double>(n)) * r0;
        note(rep, n, lhs, rhs, kBoundSlack);
    }
    return rep;
}

BoundReport check_geometric_gd(const LassoProblem& p, const SolveResult& result,
                               const Vec& x_star, const StrongConvexityEstimate& mu_est) {
    require_pairs(result);
    require_iterates(result);
    if (!mu_est.valid)
        throw std::invalid_argument("check_geometric_gd: instance is not strongly convex");
    BoundReport rep;
    rep.check = "gd-geometric";
    const double L = lipschitz_constant(p, 1e-12, 20000, LipschitzMode::Analytic);
    const double contraction = 1.0 - mu_est.mu / L;
    const auto& xs = result.trace.iterates;
    for (std::size_t k = 0; k + 1 < xs.size(); ++k) {
        const double lhs = dist2(xs[k + 1], x_star);
        const double rhs = contraction * dist2(xs[k], x_star);
        note(rep, k, lhs, rhs, kBoundSlack);
    }
    const double f_star = smooth_value(p, x_star);
    const double r0 = dist2(xs[0], x_star);
    for (std::size_t n = 1; n < xs.size(); ++n) {
        const double lhs = smooth_value(p, xs[n]) - f_star;
        const double rhs = 0.5 * L * std::pow(contraction, static_cast<double>(n)) * r0;
        note(rep, xs.size() + n, lhs, rhs, kBoundSlack);
    }
    return rep;
}

BoundReport check_prox_descent_lemma(const LassoProblem& p, const SolveResult& result,
                                     const std::vector<Vec>& z_samples) {
    require_pairs(result);
    require_iterates(result);
    if (z_samples.empty())
        throw std::invalid_argument("check_prox_descent_lemma: no z samples");
    BoundReport rep;
    rep.check = "prox-lemma";
    const auto& recs = result.trace.records;
    const auto& xs = result.trace.iterates;
    for (std::size_t k = 0; k + 1 < xs.size(); ++k) {
        const double lambda = recs[k].step;
        const double step2 = dist2(xs[k + 1], xs[k]);
        Vec G(xs[k].size());
        for (std::size_t i = 0; i < G.size(); ++i)
            G[i] = (xs[k][i] - xs[k + 1][i]) / lambda;
        const double F_next = recs[k + 1].objective;
        for (std::size_t zi = 0; zi < z_samples.size(); ++zi) {
            const Vec& z = z_samples[zi];
            if (z.size() != xs[k].size())
                throw DimensionError("check_prox_descent_lemma: z sample dimension mismatch");
            double g_dot = 0.0;
            for (std::size_t i = 0; i < z.size(); ++i)
                g_dot += G[i] * (z[i] - xs[k][i]);
            const double rhs = composite_value(p, z) - g_dot - step2 / (2.0 * lambda);
            note(rep, k * z_samples.size() + zi, F_next, rhs, kBoundSlack);
        }
    }
    return rep;
}

BoundReport check_sublinear_prox(const LassoProblem& p, const SolveResult& result,
                                 const Vec& x_star) {
    require_pairs(result);
    require_iterates(result);
    BoundReport rep;
    rep.check = "prox-sublinear";
    const double F_star = composite_value(p, x_star);
    const double lambda = result.trace.records[0].step;
    const double r0 = dist2(result.trace.iterates[0], x_star);
    for (std::size_t n = 1; n < result.trace.records.size(); ++n) {
        const double lhs = result.trace.records[n].objective - F_star;
        const double rhs = r0 / (2.0 * static_cast<double>(n) * lambda);
        note(rep, n, lhs, rhs, kBoundSlack);
    }
    return rep;
}

BoundReport check_exponential_prox(const LassoProblem&, const SolveResult& result,
                                   double F_star, const StrongConvexityEstimate& mu_est) {
    require_pairs(result);
    if (!mu_est.valid)
        throw std::invalid_argument("check_exponential_prox: instance is not strongly convex");
    BoundReport rep;
    rep.check = "prox-exponential";
    const auto& recs = result.trace.records;
    const double lambda = recs[0].step;
    const double factor = 1.0 + lambda * mu_est.mu / 4.0;
    const double tol = kBoundSlack + 10.0 * std::abs(F_star) * 1e-12;
    const double e0 = recs[0].objective - F_star;
    for (std::size_t k = 1; k < recs.size(); ++k) {
        const double lhs = recs[k].objective - F_star;
        const double rhs = std::pow(factor, -static_cast<double>(k)) * e0;
        note(rep, k, lhs, rhs, tol);
    }
    // Per-step recursive form.
    for (std::size_t k = 0; k + 1 < recs.size(); ++k) {
        const double lhs = recs[k + 1].objective - F_star;
        const double rhs = (recs[k].objective - F_star) / factor;
        note(rep, recs.size() + k, lhs, rhs, tol);
    }
    return rep;
}

StrongConvexityEstimate estimate_strong_convexity(const LassoProblem& p, double tol,
                                                  std::size_t max_power_iters) {
    const std::size_t d = p.d();
    const Mat M = gram_matrix(p.A, 1.0 / static_cast<double>(p.m()));

    auto dominant = [&](const Mat& G) -> double {
        Vec v(d, 1.0 / std::sqrt(static_cast<double>(d)));
        double eig = 0.0;
        for (std::size_t it = 0; it < max_power_iters; ++it) {
            Vec w = matvec(G, v);
            const double rayleigh = dot(v, w);
            const double wn = norm2(w);
            if (wn == 0.0) return 0.0;
            for (std::size_t i = 0; i < d; ++i) v[i] = w[i] / wn;
            if (it > 0 && std::abs(rayleigh - eig) <= tol * std::max(std::abs(rayleigh), 1e-300))
                return rayleigh;
            eig = rayleigh;
        }
        throw std::runtime_error("estimate_strong_convexity: power iteration did not converge");
    };

    const double lambda_max = dominant(M);
    Mat shifted = M;
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            shifted(i, j) = (i == j ? lambda_max : 0.0) - M(i, j);
    const double sigma = dominant(shifted);

    StrongConvexityEstimate est;
    est.mu = std::max(lambda_max - sigma, 0.0);
    est.valid = est.mu > 1e-10;
    return est;
}

}  // namespace proxkit
