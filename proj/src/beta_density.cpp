#include "traceineq/beta_density.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

namespace traceineq {

namespace {

constexpr double kPi = 3.14159265358979323846;

// 16-point Gauss-Legendre abscissae and weights on [-1, 1], ascending.
constexpr int kGlOrder = 16;
constexpr double kGlNode[kGlOrder] = {
    -0.9894009349916499326, -0.9445750230732325761, -0.8656312023878317439,
    -0.7554044083550030339, -0.6178762444026437484, -0.4580167776572273863,
    -0.2816035507792589132, -0.0950125098376374402, 0.0950125098376374402,
    0.2816035507792589132,  0.4580167776572273863,  0.6178762444026437484,
    0.7554044083550030339,  0.8656312023878317439,  0.9445750230732325761,
    0.9894009349916499326};
constexpr double kGlWeight[kGlOrder] = {
    0.0271524594117540949, 0.0622535239386478929, 0.0951585116824927848,
    0.1246289712555338720, 0.1495959888165767320, 0.1691565193950025382,
    0.1826034150449235889, 0.1894506104550684963, 0.1894506104550684963,
    0.1826034150449235889, 0.1691565193950025382, 0.1495959888165767320,
    0.1246289712555338720, 0.0951585116824927848, 0.0622535239386478929,
    0.0271524594117540949};

// Bound beta_theta(t) <= K_theta e^{-pi |t|}, valid for |t| >= 1; integrates
// to a two-sided tail mass of (2 K_theta / pi) e^{-pi T}.
double tail_coefficient(double theta) {
  if (theta == 0.0) return kPi;
  return 2.0 * std::sin(kPi * theta) / theta;
}

}  // namespace

double beta_density(double theta, double t) {
  if (!(theta >= 0.0 && theta <= 1.0)) {
    throw std::invalid_argument("beta_density: theta must lie in [0, 1]");
  }
  if (theta == 1.0) {
    throw std::domain_error("beta_density: theta = 1 is a point mass with no density");
  }
  const double c = std::cosh(kPi * std::fabs(t));
  if (theta == 0.0) return (kPi / 2.0) / (c + 1.0);
  return std::sin(kPi * theta) / (2.0 * theta * (c + std::cos(kPi * theta)));
}

QuadratureRule make_quadrature(double theta, double tol) {
  if (!(theta >= 0.0 && theta <= 1.0)) {
    throw std::invalid_argument("make_quadrature: theta must lie in [0, 1]");
  }
  if (!(tol > 1e-14 && tol < 1e-2)) {
    throw std::invalid_argument("make_quadrature: tol must lie in (1e-14, 1e-2)");
  }
  QuadratureRule rule;
  rule.theta = theta;
  rule.tol = tol;
  if (theta == 1.0) {
    rule.dirac = true;
    rule.nodes = {0.0};
    rule.weights = {1.0};
    return rule;
  }

  const double coeff = 2.0 * tail_coefficient(theta) / kPi;
  // Window chosen so the certified tail mass is at most tol / 4.
  const double wanted = std::max(1.0, std::log(coeff * 4.0 / tol) / kPi);

  constexpr int kMaxPanels = 4096;
  double width = 0.5;
  while (true) {
    const int half_panels = static_cast<int>(std::ceil(wanted / width));
    const int total_panels = 2 * half_panels;
    if (total_panels > kMaxPanels) {
      throw std::runtime_error("make_quadrature: panel budget exhausted before reaching tol");
    }
    const double truncation = half_panels * width;
    std::vector<double> nodes;
    std::vector<double> weights;
    nodes.reserve(static_cast<std::size_t>(total_panels) * kGlOrder);
    weights.reserve(static_cast<std::size_t>(total_panels) * kGlOrder);
    for (int p = -half_panels; p < half_panels; ++p) {
      const double lo = p * width;
      const double mid = lo + 0.5 * width;
      const double half = 0.5 * width;
      for (int i = 0; i < kGlOrder; ++i) {
        nodes.push_back(mid + half * kGlNode[i]);
        weights.push_back(half * kGlWeight[i]);
      }
    }
    const double tail = coeff * std::exp(-kPi * truncation);
    double mass = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      mass += weights[i] * beta_density(theta, nodes[i]);
    }
    const double defect = std::fabs(mass + tail - 1.0);
    if (defect <= tol) {
      rule.truncation = truncation;
      rule.tail_bound = tail;
      rule.normalization_defect = defect;
      rule.panels = total_panels;
      rule.nodes = std::move(nodes);
      rule.weights = std::move(weights);
      return rule;
    }
    width *= 0.5;
  }
}

MatrixIntegral integrate_beta_matrix(const QuadratureRule& rule,
                                     const std::function<Matrix(double)>& g,
                                     bool parallel) {
  if (rule.dirac) {
    Matrix v = g(0.0);
    if (!v.allFinite()) {
      throw std::domain_error("integrate_beta_matrix: integrand not finite at t = 0");
    }
    return {std::move(v), 0.0};
  }
  std::vector<Matrix> values(rule.nodes.size());
  par::for_index(rule.nodes.size(), [&](std::size_t i) { values[i] = g(rule.nodes[i]); }, parallel);
  Matrix acc;
  double sup = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!values[i].allFinite()) {
      throw std::domain_error("integrate_beta_matrix: integrand not finite at a node");
    }
    const double scale = rule.weights[i] * beta_density(rule.theta, rule.nodes[i]);
    if (i == 0) {
      acc = scale * values[i];
    } else {
      acc += scale * values[i];
    }
    sup = std::max(sup, values[i].cwiseAbs().maxCoeff());
  }
  return {std::move(acc), (rule.tail_bound + rule.normalization_defect) * sup};
}

Matrix frechet_dlog_beta(const Matrix& a, const Matrix& h, const QuadratureRule& rule) {
  if (rule.theta != 0.0) {
    throw std::invalid_argument("frechet_dlog_beta: rule must target theta = 0");
  }
  const HermitianEig eig = hermitian_eig(a);
  const double thr = support_threshold(eig.eigenvalues);
  for (Eigen::Index i = 0; i < eig.eigenvalues.size(); ++i) {
    if (eig.eigenvalues[i] <= thr) {
      throw std::domain_error("frechet_dlog_beta: matrix must be positive definite");
    }
  }
  const Eigen::Index d = a.rows();
  RealVector log_ev(d);
  RealVector inv_sqrt(d);
  for (Eigen::Index i = 0; i < d; ++i) {
    log_ev[i] = std::log(eig.eigenvalues[i]);
    inv_sqrt[i] = 1.0 / std::sqrt(eig.eigenvalues[i]);
  }
  const Matrix ht = eig.eigenvectors.adjoint() * h * eig.eigenvectors;
  // In the eigenbasis A^{-(1+it)/2} is diagonal with entries
  // lambda^{-1/2} e^{-i (t/2) log lambda}, and the (1-it) factor is its
  // conjugate, so each node costs one Hadamard-style rescaling.
  const auto integrand = [&](double t) {
    Eigen::VectorXcd dleft(d);
    for (Eigen::Index i = 0; i < d; ++i) {
      dleft[i] = inv_sqrt[i] * std::exp(Complex(0.0, -0.5 * t * log_ev[i]));
    }
    Matrix m(d, d);
    for (Eigen::Index r = 0; r < d; ++r) {
      for (Eigen::Index c = 0; c < d; ++c) {
        m(r, c) = dleft[r] * ht(r, c) * std::conj(dleft[c]);
      }
    }
    return m;
  };
  const MatrixIntegral integral = integrate_beta_matrix(rule, integrand, false);
  return eig.eigenvectors * integral.value * eig.eigenvectors.adjoint();
}

}  // namespace traceineq
