#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "traceineq/linalg.hpp"
#include "traceineq/parallel.hpp"

namespace traceineq {

/**
 * Interpolation density
 *   beta_theta(t) = sin(pi theta) / (2 theta (cosh(pi t) + cos(pi theta)))
 * for theta in (0,1), with the theta = 0 closed form
 *   beta_0(t) = (pi/2) / (cosh(pi t) + 1).
 * Normalized to unit mass on the real line; even in t by construction.
 * theta = 1 is a Dirac mass at 0 and has no pointwise value, so it is
 * rejected here and handled only by integrate_beta through a degenerate rule.
 */
double beta_density(double theta, double t);

/**
 * Composite Gauss-Legendre rule for integrals against beta_theta over a
 * symmetric window [-T, T], together with a certified bound on the mass
 * beyond the window. Weights are plain quadrature weights; the density is
 * applied at evaluation time.
 */
struct QuadratureRule {
  double theta = 0.0;
  double tol = 0.0;                   // requested certificate
  double truncation = 0.0;            // half-width T of the window
  double tail_bound = 0.0;            // certified bound on the mass with |t| > T
  double normalization_defect = 0.0;  // |sum w beta + tail_bound - 1|
  int panels = 0;
  bool dirac = false;  // theta == 1: single node at t = 0 with weight 1
  std::vector<double> nodes;
  std::vector<double> weights;
};

/**
 * Builds a rule whose normalization defect is within `tol`. The window size
 * comes from the closed-form tail bound beta_theta(t) <= K_theta e^{-pi|t|}
 * (valid for |t| >= 1), panels start at width 0.5 and halve until the defect
 * certificate passes; unreachable tolerances throw. Valid inputs:
 * theta in [0,1], tol in (1e-14, 1e-2).
 */
QuadratureRule make_quadrature(double theta, double tol);

struct ScalarIntegral {
  double value = 0.0;
  double error_bound = 0.0;  // (tail_bound + defect) * sup-of-nodes estimate
};

struct MatrixIntegral {
  Matrix value;
  double error_bound = 0.0;
};

/**
 * integral of beta_theta(t) g(t) dt approximated as sum_i w_i beta(t_i) g(t_i).
 * Node values may be evaluated in parallel; the weighted reduction always
 * runs serially in node order, so results are bitwise independent of the
 * worker count. The error bound certifies only the truncated tail and the
 * normalization defect, both scaled by the largest |g| seen on the nodes
 * (a sup estimate, not a proven sup). Non-finite node values throw.
 */
template <class G>
ScalarIntegral integrate_beta(const QuadratureRule& rule, G&& g, bool parallel = false) {
  if (rule.dirac) {
    const double v = g(0.0);
    if (!std::isfinite(v)) throw std::domain_error("integrate_beta: integrand not finite at t = 0");
    return {v, 0.0};
  }
  std::vector<double> values(rule.nodes.size());
  par::for_index(rule.nodes.size(), [&](std::size_t i) { values[i] = g(rule.nodes[i]); }, parallel);
  double acc = 0.0;
  double sup = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      throw std::domain_error("integrate_beta: integrand not finite at a node");
    }
    acc += rule.weights[i] * beta_density(rule.theta, rule.nodes[i]) * values[i];
    sup = std::max(sup, std::abs(values[i]));
  }
  return {acc, (rule.tail_bound + rule.normalization_defect) * sup};
}

/** Matrix-valued counterpart of integrate_beta; sup estimate uses max |entry|. */
MatrixIntegral integrate_beta_matrix(const QuadratureRule& rule,
                                     const std::function<Matrix(double)>& g,
                                     bool parallel = true);

/**
 * Directional derivative of log at positive definite A in direction H,
 * evaluated as the rotated average
 *   integral of beta_0(t) A^{-(1+it)/2} H A^{-(1-it)/2} dt.
 * Agrees with frechet_dlog_divided; the rule must have theta = 0.
 */
Matrix frechet_dlog_beta(const Matrix& a, const Matrix& h, const QuadratureRule& rule);

}  // namespace traceineq
