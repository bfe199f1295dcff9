#include "traceineq/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace traceineq {

namespace {

double log_sum_exp(const RealVector& v) {
  const double top = v.maxCoeff();
  double sum = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) sum += std::exp(v[i] - top);
  return top + std::log(sum);
}

/** e^{zH} from a decomposition of Hermitian H. */
Matrix herm_exp_scaled(const HermitianEig& eig, Complex z) {
  Eigen::VectorXcd d(eig.eigenvalues.size());
  for (Eigen::Index i = 0; i < d.size(); ++i) d[i] = std::exp(z * eig.eigenvalues[i]);
  return eig.eigenvectors * d.asDiagonal() * eig.eigenvectors.adjoint();
}

/** Logs of the strictly positive singular values (zero singulars drop out). */
RealVector positive_log_singulars(const Matrix& m, double scale_divisor = 1.0) {
  const RealVector sv = singular_values(m);
  std::vector<double> logs;
  logs.reserve(static_cast<std::size_t>(sv.size()));
  const double thr = support_threshold(sv);
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv[i] > thr) logs.push_back(std::log(sv[i]) / scale_divisor);
  }
  return Eigen::Map<const RealVector>(logs.data(), static_cast<Eigen::Index>(logs.size()));
}

/** log tr A^s for psd A and s > 0, kernel eigenvalues contributing zero. */
double log_trace_power(const Matrix& psd_matrix, double s) {
  const HermitianEig eig = hermitian_eig(psd_matrix);
  const double thr = support_threshold(eig.eigenvalues);
  std::vector<double> terms;
  for (Eigen::Index i = 0; i < eig.eigenvalues.size(); ++i) {
    if (eig.eigenvalues[i] > thr) terms.push_back(s * std::log(eig.eigenvalues[i]));
  }
  if (terms.empty()) return -std::numeric_limits<double>::infinity();
  return log_sum_exp(
      Eigen::Map<const RealVector>(terms.data(), static_cast<Eigen::Index>(terms.size())));
}

std::vector<HermitianEig> decompose_all(const std::vector<Matrix>& ms, bool psd,
                                        const char* who) {
  if (ms.empty()) throw std::invalid_argument(std::string(who) + ": empty matrix tuple");
  const Eigen::Index d = ms.front().rows();
  std::vector<HermitianEig> eigs;
  eigs.reserve(ms.size());
  for (const Matrix& m : ms) {
    if (m.rows() != d || m.cols() != d) {
      throw std::invalid_argument(std::string(who) + ": dimension mismatch");
    }
    if (psd) require_psd(m, who);
    eigs.push_back(hermitian_eig(m));
  }
  return eigs;
}

void require_rule_theta(const QuadratureRule& quad, double theta, const char* who) {
  if (quad.theta != theta) {
    throw std::invalid_argument(std::string(who) +
                                ": quadrature rule was built for a different theta");
  }
}

void require_pd(const HermitianEig& eig, const char* who) {
  if (eig.eigenvalues.minCoeff() <= support_threshold(eig.eigenvalues)) {
    throw std::domain_error(std::string(who) + ": matrix must be positive definite");
  }
}

}  // namespace

InequalityReport gt_classic(const Matrix& h1, const Matrix& h2) {
  InequalityReport rep;
  rep.family = "gt_classic";
  rep.n = 2;
  rep.lhs_log = log_sum_exp(hermitian_eig(h1 + h2).eigenvalues);
  rep.rhs_log = std::log(real_trace(matrix_exp(h1) * matrix_exp(h2)));
  rep.gap = rep.rhs_log - rep.lhs_log;
  return rep;
}

InequalityReport alt_classic(const Matrix& a1, const Matrix& a2, double q, double r) {
  if (!(q > 0.0)) throw std::invalid_argument("alt_classic: q must be positive");
  if (!(r > 0.0 && r <= 1.0)) throw std::invalid_argument("alt_classic: r must lie in (0, 1]");
  require_psd(a1, "alt_classic");
  require_psd(a2, "alt_classic");
  const HermitianEig e1 = hermitian_eig(a1);
  const HermitianEig e2 = hermitian_eig(a2);

  InequalityReport rep;
  rep.family = "alt_classic";
  rep.n = 2;
  rep.p = q;
  rep.r = r;
  const Matrix half1 = complex_power(e1, Complex(0.5, 0.0));
  rep.rhs_log = log_trace_power(half1 * a2 * half1, q);
  if (r == 1.0) {
    rep.lhs_log = rep.rhs_log;  // identical expression at r = 1
  } else {
    const Matrix rhalf1 = complex_power(e1, Complex(0.5 * r, 0.0));
    const Matrix inner = rhalf1 * complex_power(e2, Complex(r, 0.0)) * rhalf1;
    rep.lhs_log = log_trace_power(inner, q / r);
  }
  rep.gap = rep.rhs_log - rep.lhs_log;
  return rep;
}

InequalityReport gt_multi(const std::vector<Matrix>& hs, double p, const QuadratureRule& quad) {
  if (!(p >= 1.0)) throw std::invalid_argument("gt_multi: p must be >= 1");
  require_rule_theta(quad, 0.0, "gt_multi");
  const std::vector<HermitianEig> eigs = decompose_all(hs, false, "gt_multi");

  Matrix sum = Matrix::Zero(hs.front().rows(), hs.front().cols());
  for (const Matrix& h : hs) sum += h;
  InequalityReport rep;
  rep.family = "gt_multi";
  rep.n = static_cast<int>(hs.size());
  rep.p = p;
  rep.lhs_log = log_schatten_from_log_singulars(hermitian_eig(sum).eigenvalues, p);

  const auto g = [&](double t) {
    Matrix prod = herm_exp_scaled(eigs.front(), Complex(1.0, t));
    for (std::size_t k = 1; k < eigs.size(); ++k) {
      prod *= herm_exp_scaled(eigs[k], Complex(1.0, t));
    }
    return log_schatten_from_log_singulars(positive_log_singulars(prod), p);
  };
  const ScalarIntegral si = integrate_beta(quad, g);
  rep.rhs_log = si.value;
  rep.quad_error = si.error_bound;
  rep.gap = rep.rhs_log - rep.lhs_log;
  return rep;
}

InequalityReport alt_multi(const std::vector<Matrix>& as, double p, double r,
                           const QuadratureRule& quad) {
  if (!(p >= 1.0)) throw std::invalid_argument("alt_multi: p must be >= 1");
  if (!(r > 0.0 && r <= 1.0)) throw std::invalid_argument("alt_multi: r must lie in (0, 1]");
  require_rule_theta(quad, r, "alt_multi");
  const std::vector<HermitianEig> eigs = decompose_all(as, true, "alt_multi");

  InequalityReport rep;
  rep.family = "alt_multi";
  rep.n = static_cast<int>(as.size());
  rep.p = p;
  rep.r = r;

  Matrix prod_r = complex_power(eigs.front(), Complex(r, 0.0));
  for (std::size_t k = 1; k < eigs.size(); ++k) {
    prod_r *= complex_power(eigs[k], Complex(r, 0.0));
  }
  rep.lhs_log = log_schatten_from_log_singulars(positive_log_singulars(prod_r, r), p);

  const auto g = [&](double t) {
    Matrix prod = complex_power(eigs.front(), Complex(1.0, t));
    for (std::size_t k = 1; k < eigs.size(); ++k) {
      prod *= complex_power(eigs[k], Complex(1.0, t));
    }
    return log_schatten_from_log_singulars(positive_log_singulars(prod), p);
  };
  const ScalarIntegral si = integrate_beta(quad, g);
  rep.rhs_log = si.value;
  rep.quad_error = si.error_bound;
  rep.gap = rep.rhs_log - rep.lhs_log;
  return rep;
}

SupFormReport alt_sup_form(const std::vector<Matrix>& as, double p,
                           const std::vector<double>& grid_axis) {
  if (!(p > 0.0)) throw std::invalid_argument("alt_sup_form: p must be positive");
  if (grid_axis.empty()) throw std::invalid_argument("alt_sup_form: empty grid");
  const std::vector<HermitianEig> eigs = decompose_all(as, true, "alt_sup_form");
  for (const HermitianEig& e : eigs) require_pd(e, "alt_sup_form");
  const std::size_t n = as.size();

  SupFormReport rep;
  rep.n = static_cast<int>(n);
  rep.p = p;

  Matrix log_sum = Matrix::Zero(as.front().rows(), as.front().cols());
  for (const Matrix& a : as) log_sum += matrix_log(a);
  rep.lhs_log = log_schatten_from_log_singulars(hermitian_eig(log_sum).eigenvalues, p);

  const std::size_t free_axes = n > 2 ? n - 2 : 0;
  double points = 1.0;
  for (std::size_t i = 0; i < free_axes; ++i) points *= static_cast<double>(grid_axis.size());
  if (points > 2e6) {
    throw std::invalid_argument("alt_sup_form: grid has more than 2e6 points");
  }

  std::vector<double> t(n, 0.0);
  std::vector<std::size_t> odo(free_axes, 0);
  rep.rhs_log = -std::numeric_limits<double>::infinity();
  while (true) {
    for (std::size_t i = 0; i < free_axes; ++i) t[i + 1] = grid_axis[odo[i]];
    Matrix prod = complex_power(eigs.front(), Complex(1.0, t[0]));
    for (std::size_t k = 1; k < n; ++k) {
      prod *= complex_power(eigs[k], Complex(1.0, t[k]));
    }
    const double val = log_schatten_from_log_singulars(positive_log_singulars(prod), p);
    if (val > rep.rhs_log) {
      rep.rhs_log = val;
      rep.argmax = t;
    }
    std::size_t carry = 0;
    while (carry < free_axes && ++odo[carry] == grid_axis.size()) {
      odo[carry] = 0;
      ++carry;
    }
    if (carry == free_axes) break;
  }
  rep.gap = rep.rhs_log - rep.lhs_log;
  rep.grid_lower_bound = true;
  return rep;
}

std::vector<double> default_sup_grid() {
  std::vector<double> axis(201);
  for (int i = 0; i <= 200; ++i) axis[static_cast<std::size_t>(i)] = -10.0 + 0.1 * i;
  return axis;
}

InequalityReport gt_general(const std::vector<Matrix>& ls, double p, const QuadratureRule& quad) {
  if (!(p >= 1.0)) throw std::invalid_argument("gt_general: p must be >= 1");
  require_rule_theta(quad, 0.0, "gt_general");
  if (ls.empty()) throw std::invalid_argument("gt_general: empty matrix tuple");

  Matrix sum = Matrix::Zero(ls.front().rows(), ls.front().cols());
  std::vector<HermitianEig> real_eigs;
  real_eigs.reserve(ls.size());
  for (const Matrix& l : ls) {
    if (l.rows() != sum.rows() || l.cols() != sum.cols()) {
      throw std::invalid_argument("gt_general: dimension mismatch");
    }
    sum += l;
    real_eigs.push_back(hermitian_eig(hermitian_part(l)));
  }

  InequalityReport rep;
  rep.family = "gt_general";
  rep.n = static_cast<int>(ls.size());
  rep.p = p;
  rep.lhs_log =
      log_schatten_from_log_singulars(positive_log_singulars(matrix_exp_general(sum)), p);

  const auto g = [&](double t) {
    Matrix prod = herm_exp_scaled(real_eigs.front(), Complex(1.0, t));
    for (std::size_t k = 1; k < real_eigs.size(); ++k) {
      prod *= herm_exp_scaled(real_eigs[k], Complex(1.0, t));
    }
    return log_schatten_from_log_singulars(positive_log_singulars(prod), p);
  };
  const ScalarIntegral si = integrate_beta(quad, g);
  rep.rhs_log = si.value;
  rep.quad_error = si.error_bound;
  rep.gap = rep.rhs_log - rep.lhs_log;
  return rep;
}

InequalityReport alt_general(const std::vector<Matrix>& ls, double p, double r,
                             const QuadratureRule& quad) {
  if (!(p >= 1.0)) throw std::invalid_argument("alt_general: p must be >= 1");
  if (!(r > 0.0 && r < 1.0)) throw std::invalid_argument("alt_general: r must lie in (0, 1)");
  require_rule_theta(quad, r, "alt_general");
  if (ls.empty()) throw std::invalid_argument("alt_general: empty matrix tuple");

  const Eigen::Index d = ls.front().rows();
  std::vector<Matrix> real_parts;
  std::vector<Matrix> skew_parts;
  Matrix prod_r = Matrix::Identity(d, d);
  for (const Matrix& l : ls) {
    if (l.rows() != d || l.cols() != d) {
      throw std::invalid_argument("alt_general: dimension mismatch");
    }
    prod_r *= matrix_exp_general(r * l);
    real_parts.push_back(hermitian_part(l));
    skew_parts.push_back(skew_part(l));
  }

  InequalityReport rep;
  rep.family = "alt_general";
  rep.n = static_cast<int>(ls.size());
  rep.p = p;
  rep.r = r;
  rep.lhs_log = log_schatten_from_log_singulars(positive_log_singulars(prod_r, r), p);

  const auto g = [&](double t) {
    Matrix prod = Matrix::Identity(d, d);
    for (std::size_t k = 0; k < real_parts.size(); ++k) {
      prod *= matrix_exp_general(Complex(1.0, t) * real_parts[k] +
                                 Complex(0.0, r) * skew_parts[k]);
    }
    return log_schatten_from_log_singulars(positive_log_singulars(prod), p);
  };
  const ScalarIntegral si = integrate_beta(quad, g);
  rep.rhs_log = si.value;
  rep.quad_error = si.error_bound;
  rep.gap = rep.rhs_log - rep.lhs_log;
  return rep;
}

Matrix lie_trotter(const std::vector<Matrix>& ls, double r) {
  if (!(r > 0.0)) throw std::invalid_argument("lie_trotter: r must be positive");
  if (ls.empty()) throw std::invalid_argument("lie_trotter: empty matrix tuple");
  const Eigen::Index d = ls.front().rows();
  Matrix prod = Matrix::Identity(d, d);
  for (const Matrix& l : ls) {
    if (l.rows() != d || l.cols() != d) {
      throw std::invalid_argument("lie_trotter: dimension mismatch");
    }
    prod *= matrix_exp_general(r * l);
  }
  return complex_power(abs_value(prod), Complex(1.0 / r, 0.0));
}

double lieb_triple_rhs(const Matrix& h1, const Matrix& h2, const Matrix& h3) {
  // The lambda integral of 1/((x + lambda)(y + lambda)) over [0, inf) is the
  // divided difference of log at (x, y), so the whole expression collapses to
  // a log-derivative evaluated at e^{-H2} in direction e^{H3}.
  const Matrix kernel_applied = frechet_dlog_divided(matrix_exp(-h2), matrix_exp(h3));
  return real_trace(matrix_exp(h1) * kernel_applied, 1e-8);
}

double our_gt3_rhs(const Matrix& h1, const Matrix& h2, const Matrix& h3,
                   const QuadratureRule& quad) {
  require_rule_theta(quad, 0.0, "our_gt3_rhs");
  const Matrix e1 = matrix_exp(h1);
  const Matrix e3 = matrix_exp(h3);
  const HermitianEig eig2 = hermitian_eig(h2);
  const auto g = [&](double t) {
    const Matrix u = herm_exp_scaled(eig2, Complex(0.5, 0.5 * t));
    // tr e^{H1} U e^{H3} U^dag is a squared Frobenius norm, hence real.
    return real_trace(e1 * u * e3 * u.adjoint(), 1e-8);
  };
  return integrate_beta(quad, g).value;
}

double peierls_bogoliubov_check(const Matrix& g1, const Matrix& g2) {
  const HermitianEig e1 = hermitian_eig(g1);
  const double shift = log_sum_exp(e1.eigenvalues);
  const Matrix g1n = g1 - shift * Matrix::Identity(g1.rows(), g1.cols());
  const double log_tr_joint = log_sum_exp(hermitian_eig(g1n + g2).eigenvalues);
  const double mean_energy = real_trace(g2 * matrix_exp(g1n));
  return log_tr_joint - mean_energy;
}

GammaKappa gamma_kappa(const Matrix& a1, const Matrix& a2, const Matrix& a3, double t) {
  const std::vector<HermitianEig> eigs = decompose_all({a1, a2, a3}, true, "gamma_kappa");
  for (const HermitianEig& e : eigs) require_pd(e, "gamma_kappa");

  GammaKappa out;
  const Matrix s3 = complex_power(eigs[2], Complex(0.5, 0.0));
  const Matrix u2 = complex_power(eigs[1], Complex(0.5, 0.5 * t));
  out.gamma_t = real_trace(s3 * u2 * a1 * u2.adjoint() * s3, 1e-10);

  const Matrix log_sum = matrix_log(a1) + matrix_log(a2) + matrix_log(a3);
  out.kappa = std::exp(log_sum_exp(hermitian_eig(log_sum).eigenvalues));
  return out;
}

std::vector<Matrix> counterexample_matrices(int which) {
  Matrix a1(2, 2), a2(2, 2), a3(2, 2);
  if (which == 1) {
    a1 << 5.0, 2.0, 2.0, 1.0;
    a1 *= 0.25;
    // The (1,1) entry is 6 rather than the often-quoted 2, which would make
    // the matrix indefinite; this variant is positive definite and shows the
    // same kappa > gamma(0) behavior.
    a2 << 1.0, -2.0, -2.0, 6.0;
    a2 *= 0.25;
    a3 << 8.0, -2.0, -2.0, 1.0;
    a3 *= 0.25;
  } else if (which == 2) {
    a1 << Complex(4.0, 0.0), Complex(2.0, -1.0), Complex(2.0, 1.0), Complex(3.0, 0.0);
    a1 /= 8.0;
    a2 << Complex(15.0, 0.0), Complex(-5.0, -3.0), Complex(-5.0, 3.0), Complex(12.0, 0.0);
    a2 /= 60.0;
    a3 << Complex(15.0, 0.0), Complex(10.0, -5.0), Complex(10.0, 5.0), Complex(11.0, 0.0);
    a3 /= 20.0;
  } else {
    throw std::invalid_argument("counterexample_matrices: set must be 1 or 2");
  }
  return {a1, a2, a3};
}

CounterexampleReport counterexample_report(int which, double tmin, double tmax, double step) {
  if (!(step > 0.0) || !(tmax >= tmin)) {
    throw std::invalid_argument("counterexample_report: need step > 0 and tmax >= tmin");
  }
  const std::vector<Matrix> mats = counterexample_matrices(which);
  const HermitianEig eig2 = hermitian_eig(mats[1]);
  const HermitianEig eig3 = hermitian_eig(mats[2]);
  const Matrix s3 = complex_power(eig3, Complex(0.5, 0.0));
  const auto gamma_at = [&](double t) {
    const Matrix u2 = complex_power(eig2, Complex(0.5, 0.5 * t));
    return real_trace(s3 * u2 * mats[0] * u2.adjoint() * s3, 1e-10);
  };

  CounterexampleReport rep;
  rep.which = which;
  rep.kappa = gamma_kappa(mats[0], mats[1], mats[2], 0.0).kappa;
  const auto count = static_cast<long long>(std::floor((tmax - tmin) / step + 0.5)) + 1;
  rep.rows.reserve(static_cast<std::size_t>(count));
  for (long long k = 0; k < count; ++k) {
    const double t = tmin + step * static_cast<double>(k);
    rep.rows.push_back({t, gamma_at(t), rep.kappa});
  }

  const QuadratureRule quad = make_quadrature(0.0, 1e-10);
  const ScalarIntegral xi = integrate_beta(quad, gamma_at);
  rep.xi = xi.value;
  rep.quad_error = xi.error_bound;
  return rep;
}

}  // namespace traceineq
