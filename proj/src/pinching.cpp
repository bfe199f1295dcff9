#include "traceineq/pinching.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "traceineq/parallel.hpp"

namespace traceineq {

namespace {

constexpr double kPi = 3.14159265358979323846;

void require_same_dim(const Matrix& a, const Matrix& x, const char* who) {
  if (a.rows() != x.rows() || a.cols() != x.cols()) {
    throw std::invalid_argument(std::string(who) + ": dimension mismatch");
  }
}

Eigen::Index checked_power_dim(Eigen::Index d, int m, const char* who) {
  if (m < 1) throw std::invalid_argument(std::string(who) + ": m must be >= 1");
  Eigen::Index dim = 1;
  for (int i = 0; i < m; ++i) {
    dim *= d;
    if (dim > 1024) {
      throw std::invalid_argument(std::string(who) + ": d^m exceeds the 1024 cap");
    }
  }
  return dim;
}

RealVector log_spectrum_pd(const HermitianEig& eig, const char* who) {
  const double thr = support_threshold(eig.eigenvalues);
  RealVector out(eig.eigenvalues.size());
  for (Eigen::Index i = 0; i < eig.eigenvalues.size(); ++i) {
    if (eig.eigenvalues[i] <= thr) {
      throw std::domain_error(std::string(who) + ": matrix must be positive definite");
    }
    out[i] = std::log(eig.eigenvalues[i]);
  }
  return out;
}

}  // namespace

SpectralProjectors spectral_projectors(const Matrix& a, double cluster_tol) {
  if (!(cluster_tol >= 0.0)) {
    throw std::invalid_argument("spectral_projectors: cluster_tol must be >= 0");
  }
  const HermitianEig eig = hermitian_eig(a);
  const Eigen::Index d = eig.eigenvalues.size();
  const double scale = std::max(eig.eigenvalues.cwiseAbs().maxCoeff(), 1.0);
  const double gap = cluster_tol * scale;

  SpectralProjectors sp;
  sp.cluster_tol = cluster_tol;
  std::vector<double> values;
  Eigen::Index start = 0;
  while (start < d) {
    Eigen::Index stop = start + 1;
    // Eigenvalues come back sorted, so clusters are contiguous runs.
    while (stop < d && eig.eigenvalues[stop] - eig.eigenvalues[stop - 1] <= gap) ++stop;
    const Eigen::Index size = stop - start;
    const auto block = eig.eigenvectors.middleCols(start, size);
    sp.projectors.emplace_back(block * block.adjoint());
    values.push_back(eig.eigenvalues.segment(start, size).mean());
    start = stop;
  }
  sp.distinct_eigenvalues = Eigen::Map<const RealVector>(values.data(),
                                                         static_cast<Eigen::Index>(values.size()));
  return sp;
}

Matrix pinch_with(const SpectralProjectors& sp, const Matrix& x) {
  if (sp.projectors.empty() || sp.projectors.front().rows() != x.rows() ||
      x.rows() != x.cols()) {
    throw std::invalid_argument("pinch: dimension mismatch");
  }
  Matrix out = Matrix::Zero(x.rows(), x.cols());
  for (const Matrix& p : sp.projectors) {
    out += p * x * p;
  }
  return out;
}

Matrix pinch(const Matrix& a, const Matrix& x) {
  require_same_dim(a, x, "pinch");
  return pinch_with(spectral_projectors(a), x);
}

Matrix pinch_unitary_rep(const Matrix& a, const Matrix& x) {
  require_same_dim(a, x, "pinch_unitary_rep");
  const SpectralProjectors sp = spectral_projectors(a);
  const std::size_t s = sp.projectors.size();
  Matrix out = Matrix::Zero(x.rows(), x.cols());
  for (std::size_t y = 0; y < s; ++y) {
    Matrix u = Matrix::Zero(x.rows(), x.cols());
    for (std::size_t z = 0; z < s; ++z) {
      const double phase = 2.0 * kPi * static_cast<double>(y) * static_cast<double>(z) /
                           static_cast<double>(s);
      u += std::exp(Complex(0.0, phase)) * sp.projectors[z];
    }
    out += u * x * u.adjoint();
  }
  return out / static_cast<double>(s);
}

double pinch_measure_density(double delta, double t) {
  if (!(delta > 0.0)) {
    throw std::invalid_argument("pinch_measure_density: delta must be positive");
  }
  const double half = 0.5 * delta * t;
  // Series value at the removable singularity; the cutover keeps full accuracy.
  if (std::fabs(half) < 1e-4) {
    const double h2 = half * half;
    return delta / (4.0 * kPi) * (1.0 - h2 / 12.0 * (1.0 - h2 / 30.0));
  }
  return 2.0 * (1.0 - std::cos(half)) / (kPi * delta * t * t);
}

PinchIntegralResult pinch_integral_rep(const Matrix& a, const Matrix& x, double truncation_tol) {
  require_same_dim(a, x, "pinch_integral_rep");
  if (!(truncation_tol > 1e-9 && truncation_tol < 1.0)) {
    throw std::invalid_argument("pinch_integral_rep: truncation_tol must lie in (1e-9, 1)");
  }
  const HermitianEig eig = hermitian_eig(a);
  const RealVector log_ev = log_spectrum_pd(eig, "pinch_integral_rep");

  const SpectralProjectors sp = spectral_projectors(a);
  if (sp.distinct_eigenvalues.size() < 2) {
    throw std::domain_error(
        "pinch_integral_rep: needs at least two distinct eigenvalues (log-spectrum gap is 0)");
  }
  double delta = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i + 1 < sp.distinct_eigenvalues.size(); ++i) {
    delta = std::min(delta, std::log(sp.distinct_eigenvalues[i + 1]) -
                                std::log(sp.distinct_eigenvalues[i]));
  }

  const double truncation = std::max(64.0 / delta, 2.0 / (truncation_tol * delta));
  const double max_log = log_ev.cwiseAbs().maxCoeff();
  double step = 0.1;
  if (max_log > 0.0) step = std::min(step, kPi / (4.0 * max_log));
  const auto half_nodes = static_cast<long long>(std::ceil(truncation / step));
  if (half_nodes > 4'000'000) {
    throw std::runtime_error("pinch_integral_rep: node budget exhausted; widen truncation_tol");
  }

  const Eigen::Index d = a.rows();
  const Matrix xt = eig.eigenvectors.adjoint() * x * eig.eigenvectors;

  // Fixed-size node chunks accumulated in index order keep the result
  // bitwise identical for any worker count.
  constexpr long long kChunk = 2048;
  const long long total = 2 * half_nodes + 1;
  const auto chunk_count = static_cast<std::size_t>((total + kChunk - 1) / kChunk);
  std::vector<Matrix> partial(chunk_count);
  par::for_index(chunk_count, [&](std::size_t c) {
    const long long begin = -half_nodes + static_cast<long long>(c) * kChunk;
    const long long end = std::min(begin + kChunk, half_nodes + 1);
    Matrix acc = Matrix::Zero(d, d);
    for (long long k = begin; k < end; ++k) {
      const double t = static_cast<double>(k) * step;
      const double w = step * pinch_measure_density(delta, t);
      for (Eigen::Index r = 0; r < d; ++r) {
        for (Eigen::Index col = 0; col < d; ++col) {
          const double freq = t * (log_ev[r] - log_ev[col]);
          acc(r, col) += w * std::exp(Complex(0.0, freq)) * xt(r, col);
        }
      }
    }
    partial[c] = std::move(acc);
  });
  Matrix sum = Matrix::Zero(d, d);
  for (const Matrix& m : partial) sum += m;

  PinchIntegralResult res;
  res.value = eig.eigenvectors * sum * eig.eigenvectors.adjoint();
  res.delta = delta;
  res.truncation = truncation;
  res.node_count = static_cast<std::size_t>(total);
  const double tail_mass = 4.0 / (kPi * delta * truncation);
  const double oscillation = 16.0 / (kPi * delta * delta * truncation * truncation);
  res.certificate = (tail_mass + oscillation) * xt.cwiseAbs().maxCoeff();
  return res;
}

double pinching_inequality_check(const Matrix& a, const Matrix& x) {
  require_same_dim(a, x, "pinching_inequality_check");
  require_psd(x, "pinching_inequality_check");
  const SpectralProjectors sp = spectral_projectors(a);
  const Matrix gap =
      pinch_with(sp, x) - x / static_cast<double>(sp.projectors.size());
  return hermitian_eig(gap).eigenvalues.minCoeff();
}

std::uint64_t spec_count_bound(int d, int m) {
  if (d < 1 || m < 1) {
    throw std::invalid_argument("spec_count_bound: d and m must be >= 1");
  }
  // binom(m + d - 1, d - 1) via the product form; each partial result is an
  // exact binomial, so the division below is exact.
  std::uint64_t result = 1;
  const auto n = static_cast<std::uint64_t>(m) + static_cast<std::uint64_t>(d) - 1;
  const auto k = static_cast<std::uint64_t>(d) - 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    const std::uint64_t factor = n - k + i;
    if (result > std::numeric_limits<std::uint64_t>::max() / factor) {
      throw std::overflow_error("spec_count_bound: value exceeds 64-bit range");
    }
    result = result * factor / i;
  }
  return result;
}

QuasiConvexityReport quasi_convexity_check(double p, const std::vector<double>& weights,
                                           const std::vector<Matrix>& matrices, int m) {
  if (!(p > 0.0 && p < 1.0)) {
    throw std::invalid_argument("quasi_convexity_check: p must lie in (0, 1)");
  }
  if (weights.size() != matrices.size() || matrices.empty()) {
    throw std::invalid_argument("quasi_convexity_check: need matching nonempty weights/matrices");
  }
  double wsum = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw std::invalid_argument("quasi_convexity_check: weights must be >= 0");
    wsum += w;
  }
  if (std::fabs(wsum - 1.0) > 1e-12) {
    throw std::invalid_argument("quasi_convexity_check: weights must sum to 1");
  }
  const Eigen::Index d = matrices.front().rows();
  for (const Matrix& a : matrices) {
    if (a.rows() != d || a.cols() != d) {
      throw std::invalid_argument("quasi_convexity_check: dimension mismatch");
    }
    require_psd(a, "quasi_convexity_check");
  }
  const Eigen::Index dim = checked_power_dim(d, m, "quasi_convexity_check");

  Matrix mixture = Matrix::Zero(dim, dim);
  double log_mix_of_norms = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < matrices.size(); ++i) {
    mixture += weights[i] * kron_power(matrices[i], m);
    if (weights[i] > 0.0) {
      const double term = std::log(weights[i]) +
                          static_cast<double>(m) * log_schatten_norm(matrices[i], p);
      const double hi = std::max(log_mix_of_norms, term);
      log_mix_of_norms = hi + std::log(std::exp(log_mix_of_norms - hi) + std::exp(term - hi));
    }
  }

  QuasiConvexityReport rep;
  rep.p = p;
  rep.m = m;
  rep.type_count = spec_count_bound(static_cast<int>(d * d), m);
  rep.lhs = log_schatten_norm(mixture, p) / static_cast<double>(m);
  rep.rhs_mix = log_mix_of_norms / static_cast<double>(m);
  rep.poly_term = (1.0 - p) / p * std::log(static_cast<double>(rep.type_count)) /
                  static_cast<double>(m);
  rep.rhs = rep.rhs_mix + rep.poly_term;
  rep.slack = rep.rhs - rep.lhs;
  return rep;
}

TensorPinchRow tensor_pinch_gt_demo(const Matrix& a, const Matrix& b, int m) {
  require_same_dim(a, b, "tensor_pinch_gt_demo");
  const Eigen::Index d = a.rows();
  checked_power_dim(d, m, "tensor_pinch_gt_demo");

  const HermitianEig eig_a = hermitian_eig(a);
  const HermitianEig eig_b = hermitian_eig(b);
  log_spectrum_pd(eig_a, "tensor_pinch_gt_demo");
  log_spectrum_pd(eig_b, "tensor_pinch_gt_demo");

  const Matrix am = kron_power(a, m);
  const Matrix bm = kron_power(b, m);
  const SpectralProjectors sp = spectral_projectors(bm);
  const Matrix pinched = pinch_with(sp, am);

  TensorPinchRow row;
  row.m = m;
  row.spec_size = static_cast<std::uint64_t>(sp.projectors.size());
  row.spec_bound = spec_count_bound(static_cast<int>(d), m);
  row.value = std::log(real_trace(matrix_exp(matrix_log(pinched) + matrix_log(bm)))) /
              static_cast<double>(m);
  row.upper = std::log(real_trace(a * b));
  const double gt_sum = std::log(real_trace(matrix_exp(matrix_log(a) + matrix_log(b))));
  row.lower = gt_sum - std::log(static_cast<double>(row.spec_size)) / static_cast<double>(m);
  return row;
}

}  // namespace traceineq
