#include "proxkit/prox.hpp"

#include <cmath>
#include <stdexcept>

namespace proxkit {

Vec soft_threshold(const Vec& z, double theta) {
    if (theta < 0.0)
        throw std::invalid_argument("soft_threshold: theta must be >= 0");
    Vec out(z.size(), 0.0);
    for (std::size_t i = 0; i < z.size(); ++i) {
        const double zi = z[i];
        if (zi > theta)
            out[i] = zi - theta;
        else if (zi < -theta)
            out[i] = zi + theta;
        // |zi| <= theta stays exactly 0
    }
    return out;
}

Vec prox_step(const LassoProblem& p, const Vec& x, double lambda) {
    if (lambda <= 0.0)
        throw std::invalid_argument("prox_step: lambda must be > 0");
    Vec g = smooth_gradient(p, x);
    Vec z(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) z[i] = x[i] - lambda * g[i];
    return soft_threshold(z, p.alpha * lambda);
}

Vec generalized_gradient(const LassoProblem& p, const Vec& x, double lambda) {
    Vec next = prox_step(p, x, lambda);
    Vec out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = (x[i] - next[i]) / lambda;
    return out;
}

}  // namespace proxkit
