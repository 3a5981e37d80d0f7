#pragma once

#include "proxkit/objective.hpp"

namespace proxkit {

/// Componentwise sgn(z_i) * max(|z_i| - theta, 0). Coordinates with
/// |z_i| <= theta come out as literal 0.0 so the support is exact.
Vec soft_threshold(const Vec& z, double theta);

/// One proximal gradient step: prox_{lambda}(x - lambda * grad f(x))
/// with the l1 prox, i.e. soft thresholding at alpha*lambda.
Vec prox_step(const LassoProblem& p, const Vec& x, double lambda);

/// (x - prox_step(x, lambda)) / lambda; coincides with grad f when alpha = 0.
Vec generalized_gradient(const LassoProblem& p, const Vec& x, double lambda);

}  // namespace proxkit
