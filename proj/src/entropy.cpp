#include "traceineq/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace traceineq {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

/** rho-weight outside the support of the decomposed psd matrix. */
double weight_outside_support(const Matrix& rho, const HermitianEig& eig) {
  const double thr = support_threshold(eig.eigenvalues);
  double weight = 0.0;
  for (Eigen::Index i = 0; i < eig.eigenvalues.size(); ++i) {
    if (eig.eigenvalues[i] <= thr) {
      const Eigen::VectorXcd v = eig.eigenvectors.col(i);
      weight += (v.adjoint() * rho * v).value().real();
    }
  }
  return weight;
}

/** tr rho log rho over the support, from a decomposition of rho. */
double trace_rho_log_rho(const HermitianEig& eig) {
  const double thr = support_threshold(eig.eigenvalues);
  double acc = 0.0;
  for (Eigen::Index i = 0; i < eig.eigenvalues.size(); ++i) {
    if (eig.eigenvalues[i] > thr) acc += eig.eigenvalues[i] * std::log(eig.eigenvalues[i]);
  }
  return acc;
}

/**
 * Decomposition used inside inverse powers. Exact kernel directions are
 * handled by the 0^z = 0 convention, but eigenvalues within three decades of
 * the support cutoff would amplify roundoff catastrophically when inverted,
 * so such inputs are floored by (1-eps) + eps id/d mixing first.
 */
HermitianEig inverse_power_base(const Matrix& psd, bool* regularized) {
  if (regularized) *regularized = false;
  HermitianEig eig = hermitian_eig(psd);
  const double thr = support_threshold(eig.eigenvalues);
  double min_positive = kInf;
  for (Eigen::Index i = 0; i < eig.eigenvalues.size(); ++i) {
    if (eig.eigenvalues[i] > thr) min_positive = std::min(min_positive, eig.eigenvalues[i]);
  }
  if (std::isfinite(min_positive) && min_positive < 1e3 * thr) {
    constexpr double eps = 1e-12;
    const Eigen::Index d = psd.rows();
    const Matrix floored =
        (1.0 - eps) * psd + (eps / static_cast<double>(d)) * Matrix::Identity(d, d);
    eig = hermitian_eig(floored);
    if (regularized) *regularized = true;
  }
  return eig;
}

void require_supported(const Matrix& x, const HermitianEig& eig, const char* who) {
  const double thr = support_threshold(eig.eigenvalues);
  for (Eigen::Index i = 0; i < eig.eigenvalues.size(); ++i) {
    if (eig.eigenvalues[i] <= thr) {
      const Eigen::VectorXcd v = eig.eigenvectors.col(i);
      const double leak = (v.adjoint() * x * v).value().real();
      if (std::abs(leak) > 1e-10 * std::max(1.0, x.cwiseAbs().maxCoeff())) {
        throw std::domain_error(std::string(who) + ": input leaks outside the reference support");
      }
    }
  }
}

/** Hermitize and clamp tiny negative eigenvalues left by quadrature dust. */
Matrix clamp_to_psd(const Matrix& m) {
  const HermitianEig eig = hermitian_eig(m);
  RealVector ev = eig.eigenvalues;
  for (Eigen::Index i = 0; i < ev.size(); ++i) ev[i] = std::max(ev[i], 0.0);
  return eig.eigenvectors * ev.asDiagonal().toDenseMatrix().cast<Complex>() *
         eig.eigenvectors.adjoint();
}

}  // namespace

void require_density(const Matrix& m, const char* what) {
  require_psd(m, what);
  const double tr = m.trace().real();
  if (std::abs(tr - 1.0) > 1e-10) {
    throw std::invalid_argument(std::string(what) + ": trace must be 1");
  }
}

double von_neumann_entropy(const Matrix& rho) {
  require_density(rho, "von_neumann_entropy");
  return -trace_rho_log_rho(hermitian_eig(rho));
}

double cond_mutual_info(const Matrix& rho_abc, int dim_a, int dim_b, int dim_c) {
  if (dim_a < 1 || dim_b < 1 || dim_c < 1 ||
      rho_abc.rows() != static_cast<Eigen::Index>(dim_a) * dim_b * dim_c) {
    throw std::invalid_argument("cond_mutual_info: dimension metadata does not match the matrix");
  }
  require_density(rho_abc, "cond_mutual_info");
  const Matrix rho_ab = partial_trace(rho_abc, dim_a * dim_b, dim_c, 0);
  const Matrix rho_bc = partial_trace(rho_abc, dim_a, dim_b * dim_c, 1);
  const Matrix rho_b = partial_trace(rho_ab, dim_a, dim_b, 1);
  // Entropies straight from eigenvalues; the marginals are already valid states.
  const auto entropy = [](const Matrix& m) { return -trace_rho_log_rho(hermitian_eig(m)); };
  return entropy(rho_ab) + entropy(rho_bc) - entropy(rho_b) - entropy(rho_abc);
}

double relative_entropy(const Matrix& rho, const Matrix& sigma) {
  require_density(rho, "relative_entropy");
  require_psd(sigma, "relative_entropy");
  const HermitianEig eig_sigma = hermitian_eig(sigma);
  if (weight_outside_support(rho, eig_sigma) > 1e-10) {
    return kInf;
  }
  const double cross = real_trace(rho * matrix_log(sigma), 1e-8);
  return trace_rho_log_rho(hermitian_eig(rho)) - cross;
}

double umegaki_variational_value(const Matrix& rho, const Matrix& sigma, const Matrix& omega) {
  require_density(rho, "umegaki_variational_value");
  require_psd(sigma, "umegaki_variational_value");
  const HermitianEig eig_omega = hermitian_eig(omega);
  if (eig_omega.eigenvalues.minCoeff() <= support_threshold(eig_omega.eigenvalues)) {
    throw std::domain_error("umegaki_variational_value: omega must be positive definite");
  }
  const double first = real_trace(rho * matrix_log(omega), 1e-8);
  const double second = real_trace(matrix_exp(matrix_log(sigma) + matrix_log(omega)), 1e-8);
  return first + 1.0 - second;
}

MeasuredRelEntropy measured_relative_entropy(const Matrix& rho, const Matrix& sigma,
                                             int max_iterations, double grad_tol) {
  require_density(rho, "measured_relative_entropy");
  require_psd(sigma, "measured_relative_entropy");

  const auto objective = [&](const Matrix& h) {
    return real_trace(rho * h, 1e-8) + 1.0 - real_trace(sigma * matrix_exp(h), 1e-8);
  };

  // Warm start at the exact optimum of the commuting case. Step lengths use
  // the spectral (Barzilai-Borwein) estimate from the last accepted move; a
  // plain backtracked step crawls once the curvature of tr sigma e^H becomes
  // ill-conditioned. Acceptance compares against the smallest of the last few
  // values rather than demanding monotone ascent, because near the optimum
  // the certifiable improvement per step sinks below the roundoff noise of
  // the objective while the gradient is still well above its target.
  Matrix h = matrix_log(rho) - matrix_log(sigma);
  double value = objective(h);
  Matrix grad = rho - frechet_dexp(h, sigma);
  MeasuredRelEntropy out;
  double best_value = value;
  Matrix best_h = h;
  std::vector<double> recent{value};
  double step = 1.0;
  int iter = 0;
  for (; iter < max_iterations; ++iter) {
    const double gnorm = grad.norm();
    out.grad_norm = gnorm;
    if (gnorm <= grad_tol) {
      out.converged = true;
      break;
    }
    double reference = value;
    for (std::size_t j = recent.size() > 10 ? recent.size() - 10 : 0; j < recent.size(); ++j) {
      reference = std::min(reference, recent[j]);
    }
    bool advanced = false;
    double trial_step = step;
    while (trial_step > 1e-16) {
      const Matrix trial = h + trial_step * grad;
      const double trial_value = objective(trial);
      if (trial_value >= reference + 1e-4 * trial_step * gnorm * gnorm) {
        const Matrix new_grad = rho - frechet_dexp(trial, sigma);
        const double curvature =
            std::abs(((new_grad - grad).adjoint() * (trial - h)).trace().real());
        step = curvature > 1e-300 && std::isfinite(curvature)
                   ? std::clamp(trial_step * trial_step * gnorm * gnorm / curvature, 1e-12, 1e6)
                   : std::min(trial_step * 1.3, 1e3);
        h = trial;
        value = trial_value;
        grad = new_grad;
        recent.push_back(value);
        if (value > best_value) {
          best_value = value;
          best_h = h;
        }
        advanced = true;
        break;
      }
      trial_step *= 0.5;
    }
    if (!advanced) break;  // stalled at machine precision
  }
  if (!out.converged) {
    // Fall back to the best objective seen along the non-monotone path.
    h = best_h;
    value = best_value;
    out.grad_norm = (rho - frechet_dexp(h, sigma)).norm();
    out.converged = out.grad_norm <= grad_tol;
  }
  out.value = value;
  out.omega = matrix_exp(h);
  out.iterations = iter;
  return out;
}

double fidelity(const Matrix& rho, const Matrix& sigma) {
  require_psd(rho, "fidelity");
  require_psd(sigma, "fidelity");
  const Matrix cross = complex_power(rho, Complex(0.5, 0.0)) *
                       complex_power(sigma, Complex(0.5, 0.0));
  const double trace_norm = singular_values(cross).sum();
  return trace_norm * trace_norm;
}

double petz_renyi_2(const Matrix& rho, const Matrix& sigma) {
  require_density(rho, "petz_renyi_2");
  const HermitianEig eig_sigma = hermitian_eig(sigma);
  if (weight_outside_support(rho, eig_sigma) > 1e-10) {
    return kInf;
  }
  const Matrix sigma_inv = complex_power(eig_sigma, Complex(-1.0, 0.0));
  return std::log(real_trace(rho * rho * sigma_inv, 1e-8));
}

Matrix rotated_petz_partial(const Matrix& sigma_ab, const Matrix& x_a, int dim_a, int dim_b,
                            double t, bool* regularized) {
  if (dim_a < 1 || dim_b < 1 ||
      sigma_ab.rows() != static_cast<Eigen::Index>(dim_a) * dim_b ||
      x_a.rows() != dim_a || x_a.cols() != dim_a) {
    throw std::invalid_argument("rotated_petz_partial: dimension metadata does not match");
  }
  require_psd(sigma_ab, "rotated_petz_partial");
  const HermitianEig eig_ab = hermitian_eig(sigma_ab);
  const HermitianEig eig_a =
      inverse_power_base(partial_trace(sigma_ab, dim_a, dim_b, 0), regularized);
  require_supported(x_a, eig_a, "rotated_petz_partial");

  const Complex z(0.5, 0.5 * t);
  const Matrix inner = complex_power(eig_a, -z) * x_a * complex_power(eig_a, -std::conj(z));
  const Matrix lifted = kron(inner, Matrix::Identity(dim_b, dim_b));
  return complex_power(eig_ab, z) * lifted * complex_power(eig_ab, std::conj(z));
}

Matrix rotated_petz_partial_avg(const Matrix& sigma_ab, const Matrix& x_a, int dim_a, int dim_b,
                                const QuadratureRule& quad, bool* regularized) {
  if (quad.theta != 0.0) {
    throw std::invalid_argument("rotated_petz_partial_avg: rule must target theta = 0");
  }
  if (dim_a < 1 || dim_b < 1 ||
      sigma_ab.rows() != static_cast<Eigen::Index>(dim_a) * dim_b ||
      x_a.rows() != dim_a || x_a.cols() != dim_a) {
    throw std::invalid_argument("rotated_petz_partial_avg: dimension metadata does not match");
  }
  require_psd(sigma_ab, "rotated_petz_partial_avg");
  const HermitianEig eig_ab = hermitian_eig(sigma_ab);
  const HermitianEig eig_a =
      inverse_power_base(partial_trace(sigma_ab, dim_a, dim_b, 0), regularized);
  require_supported(x_a, eig_a, "rotated_petz_partial_avg");

  const Matrix id_b = Matrix::Identity(dim_b, dim_b);
  const auto g = [&](double t) {
    const Complex z(0.5, 0.5 * t);
    const Matrix inner = complex_power(eig_a, -z) * x_a * complex_power(eig_a, -std::conj(z));
    return Matrix(complex_power(eig_ab, z) * kron(inner, id_b) *
                  complex_power(eig_ab, std::conj(z)));
  };
  return integrate_beta_matrix(quad, g, false).value;
}

Matrix channel_apply(const std::vector<Matrix>& kraus, const Matrix& x) {
  Matrix out = Matrix::Zero(kraus.front().rows(), kraus.front().rows());
  for (const Matrix& k : kraus) out += k * x * k.adjoint();
  return out;
}

Matrix channel_adjoint_apply(const std::vector<Matrix>& kraus, const Matrix& y) {
  Matrix out = Matrix::Zero(kraus.front().cols(), kraus.front().cols());
  for (const Matrix& k : kraus) out += k.adjoint() * y * k;
  return out;
}

void require_channel(const std::vector<Matrix>& kraus) {
  if (kraus.empty()) throw std::invalid_argument("channel: needs at least one Kraus operator");
  const Eigen::Index rows = kraus.front().rows();
  const Eigen::Index cols = kraus.front().cols();
  Matrix completeness = Matrix::Zero(cols, cols);
  for (const Matrix& k : kraus) {
    if (k.rows() != rows || k.cols() != cols) {
      throw std::invalid_argument("channel: Kraus operators must share one shape");
    }
    completeness += k.adjoint() * k;
  }
  if ((completeness - Matrix::Identity(cols, cols)).cwiseAbs().maxCoeff() > 1e-10) {
    throw std::invalid_argument("channel: Kraus operators must satisfy sum K^dag K = id");
  }
}

Matrix rotated_petz_channel(const Matrix& sigma, const std::vector<Matrix>& kraus,
                            const Matrix& x, double t, bool* regularized) {
  require_channel(kraus);
  require_psd(sigma, "rotated_petz_channel");
  const HermitianEig eig_sigma = hermitian_eig(sigma);
  const HermitianEig eig_out = inverse_power_base(channel_apply(kraus, sigma), regularized);
  require_supported(x, eig_out, "rotated_petz_channel");

  const Complex z(0.5, 0.5 * t);
  const Matrix inner = complex_power(eig_out, -z) * x * complex_power(eig_out, -std::conj(z));
  return complex_power(eig_sigma, z) * channel_adjoint_apply(kraus, inner) *
         complex_power(eig_sigma, std::conj(z));
}

Matrix rotated_petz_channel_avg(const Matrix& sigma, const std::vector<Matrix>& kraus,
                                const Matrix& x, const QuadratureRule& quad, bool* regularized) {
  if (quad.theta != 0.0) {
    throw std::invalid_argument("rotated_petz_channel_avg: rule must target theta = 0");
  }
  require_channel(kraus);
  require_psd(sigma, "rotated_petz_channel_avg");
  const HermitianEig eig_sigma = hermitian_eig(sigma);
  const HermitianEig eig_out = inverse_power_base(channel_apply(kraus, sigma), regularized);
  require_supported(x, eig_out, "rotated_petz_channel_avg");

  const auto g = [&](double t) {
    const Complex z(0.5, 0.5 * t);
    const Matrix inner = complex_power(eig_out, -z) * x * complex_power(eig_out, -std::conj(z));
    return Matrix(complex_power(eig_sigma, z) * channel_adjoint_apply(kraus, inner) *
                  complex_power(eig_sigma, std::conj(z)));
  };
  return integrate_beta_matrix(quad, g, false).value;
}

Matrix stinespring(const std::vector<Matrix>& kraus) {
  require_channel(kraus);
  const Eigen::Index d_out = kraus.front().rows();
  const Eigen::Index d_in = kraus.front().cols();
  const auto env = static_cast<Eigen::Index>(kraus.size());
  Matrix u = Matrix::Zero(d_out * env, d_in);
  for (Eigen::Index e = 0; e < env; ++e) {
    for (Eigen::Index o = 0; o < d_out; ++o) {
      u.row(o * env + e) = kraus[static_cast<std::size_t>(e)].row(o);
    }
  }
  return u;
}

MonotonicityReport strengthened_monotonicity_report(const Matrix& rho_ab, const Matrix& sigma_ab,
                                                    int dim_a, int dim_b,
                                                    const QuadratureRule& quad) {
  require_density(rho_ab, "strengthened_monotonicity_report");
  require_psd(sigma_ab, "strengthened_monotonicity_report");
  MonotonicityReport rep;

  const Matrix rho_a = partial_trace(rho_ab, dim_a, dim_b, 0);
  const Matrix sigma_a = partial_trace(sigma_ab, dim_a, dim_b, 0);
  const double d_joint = relative_entropy(rho_ab, sigma_ab);
  if (!std::isfinite(d_joint)) {
    rep.delta = kInf;
    rep.infinite = true;
    return rep;
  }
  rep.delta = d_joint - relative_entropy(rho_a, sigma_a);

  bool reg = false;
  const HermitianEig eig_ab = hermitian_eig(sigma_ab);
  const HermitianEig eig_a = inverse_power_base(sigma_a, &reg);
  const Matrix id_b = Matrix::Identity(dim_b, dim_b);
  const auto recover_at = [&](double t) {
    const Complex z(0.5, 0.5 * t);
    const Matrix inner =
        complex_power(eig_a, -z) * rho_a * complex_power(eig_a, -std::conj(z));
    return Matrix(complex_power(eig_ab, z) * kron(inner, id_b) *
                  complex_power(eig_ab, std::conj(z)));
  };

  const MatrixIntegral averaged = integrate_beta_matrix(quad, recover_at, false);
  const Matrix recovered = clamp_to_psd(averaged.value);

  const MeasuredRelEntropy dm = measured_relative_entropy(rho_ab, recovered);
  rep.dm_estimate = dm.value;
  rep.dm_converged = dm.converged;
  rep.neg_log_f = -std::log(fidelity(rho_ab, recovered));

  const ScalarIntegral log_f =
      integrate_beta(quad, [&](double t) { return std::log(fidelity(rho_ab, recover_at(t))); });
  rep.lower_beta_f = -log_f.value;
  const ScalarIntegral d2 =
      integrate_beta(quad, [&](double t) { return petz_renyi_2(rho_ab, recover_at(t)); });
  rep.upper_beta_d2 = d2.value;

  rep.sigma_regularized = reg;
  rep.quad_error = averaged.error_bound + log_f.error_bound + d2.error_bound;
  rep.tol = rep.quad_error + 1e-7;
  rep.sandwich_ok = rep.delta >= rep.dm_estimate - rep.tol &&
                    rep.delta >= rep.neg_log_f - rep.tol &&
                    rep.delta >= rep.lower_beta_f - rep.tol &&
                    rep.delta <= rep.upper_beta_d2 + rep.tol;
  return rep;
}

CmiBoundReport cmi_bound_report(const Matrix& rho_abc, int dim_a, int dim_b, int dim_c,
                                const QuadratureRule& quad) {
  CmiBoundReport rep;
  rep.cmi = cond_mutual_info(rho_abc, dim_a, dim_b, dim_c);

  const Matrix rho_ab = partial_trace(rho_abc, dim_a * dim_b, dim_c, 0);
  const Matrix rho_bc = partial_trace(rho_abc, dim_a, dim_b * dim_c, 1);
  const Matrix rho_b = partial_trace(rho_ab, dim_a, dim_b, 1);

  bool reg = false;
  const HermitianEig eig_bc = hermitian_eig(rho_bc);
  const HermitianEig eig_b = inverse_power_base(rho_b, &reg);
  const Matrix id_a = Matrix::Identity(dim_a, dim_a);
  const Matrix id_c = Matrix::Identity(dim_c, dim_c);
  // Recover C from B alone, extended by the identity on A: all four powers
  // act as 1_A tensor M, so they are assembled directly in the ABC ordering.
  const auto recover_at = [&](double t) {
    const Complex z(0.5, 0.5 * t);
    const Matrix inner = kron(id_a, complex_power(eig_b, -z)) * rho_ab *
                         kron(id_a, complex_power(eig_b, -std::conj(z)));
    return Matrix(kron(id_a, complex_power(eig_bc, z)) * kron(inner, id_c) *
                  kron(id_a, complex_power(eig_bc, std::conj(z))));
  };

  const MatrixIntegral averaged = integrate_beta_matrix(quad, recover_at, false);
  const Matrix recovered = clamp_to_psd(averaged.value);

  const MeasuredRelEntropy dm = measured_relative_entropy(rho_abc, recovered);
  rep.dm_estimate = dm.value;
  rep.dm_converged = dm.converged;
  rep.neg_log_f = -std::log(fidelity(rho_abc, recovered));
  rep.sigma_regularized = reg;
  rep.quad_error = averaged.error_bound;
  rep.tol = rep.quad_error + 1e-7;
  rep.holds = rep.cmi >= std::max(rep.dm_estimate, rep.neg_log_f) - rep.tol;
  return rep;
}

}  // namespace traceineq
