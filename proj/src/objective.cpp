#include "proxkit/objective.hpp"

#include <cmath>

namespace proxkit {

LassoProblem::LassoProblem(Mat A_, Vec b_, double alpha_)
    : A(std::move(A_)), b(std::move(b_)), alpha(alpha_) {
    if (b.size() != A.rows)
        throw DimensionError("LassoProblem: dim(b) != rows(A)");
    if (alpha < 0.0)
        throw std::invalid_argument("LassoProblem: alpha must be >= 0");
}

double smooth_value(const LassoProblem& p, const Vec& x) {
    Vec r = matvec(p.A, x);
    double s = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) {
        const double e = r[i] - p.b[i];
        s += e * e;
    }
    return s / (2.0 * static_cast<double>(p.m()));
}

Vec smooth_gradient(const LassoProblem& p, const Vec& x) {
    Vec r = matvec(p.A, x);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= p.b[i];
    Vec g = matvec_transpose(p.A, r);
    const double inv_m = 1.0 / static_cast<double>(p.m());
    for (double& gi : g) gi *= inv_m;
    return g;
}

double reg_value(const LassoProblem& p, const Vec& x) {
    double s = 0.0;
    for (double xi : x) s += std::abs(xi);
    return p.alpha * s;
}

double composite_value(const LassoProblem& p, const Vec& x) {
    return smooth_value(p, x) + reg_value(p, x);
}

Vec l1_subgradient(const LassoProblem& p, const Vec& x) {
    Vec g(x.size(), 0.0);
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] > 0.0)
            g[i] = p.alpha;
        else if (x[i] < 0.0)
            g[i] = -p.alpha;
    }
    return g;
}

Mat gram_matrix(const Mat& A, double scale) {
    const std::size_t d = A.cols;
    Mat G(d, d);
    const double* a = A.data.data();
    for (std::size_t r = 0; r < A.rows; ++r) {
        const double* row = a + r * d;
        for (std::size_t i = 0; i < d; ++i) {
            const double ri = row[i];
            if (ri == 0.0) continue;
            double* gi = &G.data[i * d];
            for (std::size_t j = i; j < d; ++j) gi[j] += ri * row[j];
        }
    }
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < i; ++j) G(i, j) = G(j, i);
    for (double& v : G.data) v *= scale;
    return G;
}

double lipschitz_constant(const LassoProblem& p, double tol,
                          std::size_t max_power_iters, LipschitzMode mode) {
    if (tol <= 0.0)
        throw std::invalid_argument("lipschitz_constant: tol must be > 0");
    const double scale = (mode == LipschitzMode::Paper)
                             ? 1.0 / (2.0 * static_cast<double>(p.m()))
                             : 1.0 / static_cast<double>(p.m());
    const Mat G = gram_matrix(p.A, scale);
    const std::size_t d = G.cols;

    Vec v(d, 1.0 / std::sqrt(static_cast<double>(d)));
    double eig = 0.0;
    for (std::size_t it = 0; it < max_power_iters; ++it) {
        Vec w = matvec(G, v);
        const double rayleigh = dot(v, w);
        const double wn = norm2(w);
        if (wn == 0.0)
            throw LipschitzError("lipschitz_constant: A^T A annihilates the start vector", 0.0);
        for (std::size_t i = 0; i < d; ++i) v[i] = w[i] / wn;
        if (it > 0 && std::abs(rayleigh - eig) <= tol * std::max(std::abs(rayleigh), 1e-300)) {
            if (rayleigh <= 0.0)
                throw LipschitzError("lipschitz_constant: nonpositive estimate", rayleigh);
            return rayleigh;
        }
        eig = rayleigh;
    }
    throw LipschitzError("lipschitz_constant: power iteration did not converge", eig);
}

}  // namespace proxkit
