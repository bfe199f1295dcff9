#include "traceineq/linalg.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <limits>

namespace traceineq {

namespace {

void require_square_finite(const Matrix& a, const char* what) {
  if (a.rows() != a.cols() || a.rows() == 0) {
    throw std::invalid_argument(std::string(what) + ": matrix must be square and non-empty");
  }
  if (!a.allFinite()) {
    throw std::invalid_argument(std::string(what) + ": matrix has non-finite entries");
  }
}

}  // namespace

HermitianEig hermitian_eig(const Matrix& a) {
  require_square_finite(a, "hermitian_eig");
  const double scale = std::max(a.cwiseAbs().maxCoeff(), 1.0);
  if ((a - a.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * scale) {
    throw std::invalid_argument("hermitian_eig: matrix is not Hermitian within 1e-10");
  }
  const Matrix sym = hermitian_part(a);
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("hermitian_eig: eigensolver failed to converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

double support_threshold(const RealVector& eigenvalues) {
  const double top = eigenvalues.size() ? eigenvalues.cwiseAbs().maxCoeff() : 0.0;
  return 1e-12 * std::max(top, 1.0);
}

int support_rank(const Matrix& a) {
  const HermitianEig eig = hermitian_eig(a);
  const double thr = support_threshold(eig.eigenvalues);
  int rank = 0;
  for (Eigen::Index i = 0; i < eig.eigenvalues.size(); ++i) {
    if (eig.eigenvalues[i] > thr) ++rank;
  }
  return rank;
}

void require_psd(const Matrix& a, const char* what) {
  const HermitianEig eig = hermitian_eig(a);
  const double floor = -1e-10 * std::max(eig.eigenvalues.cwiseAbs().maxCoeff(), 1.0);
  if (eig.eigenvalues.minCoeff() < floor) {
    throw std::invalid_argument(std::string(what) + ": matrix is not positive semi-definite");
  }
}

Matrix complex_power(const HermitianEig& eig, Complex z) {
  const double thr = support_threshold(eig.eigenvalues);
  Eigen::VectorXcd pw(eig.eigenvalues.size());
  for (Eigen::Index i = 0; i < pw.size(); ++i) {
    const double lambda = eig.eigenvalues[i];
    if (lambda <= thr) {
      pw[i] = Complex(0.0, 0.0);  // 0^z := 0, kernel preserved exactly
    } else {
      pw[i] = std::exp(z * std::log(lambda));
    }
  }
  return eig.eigenvectors * pw.asDiagonal() * eig.eigenvectors.adjoint();
}

Matrix complex_power(const Matrix& a, Complex z) {
  const HermitianEig eig = hermitian_eig(a);
  const double thr = support_threshold(eig.eigenvalues);
  if (eig.eigenvalues.minCoeff() < -thr) {
    throw std::domain_error("complex_power: matrix must be positive semi-definite");
  }
  return complex_power(eig, z);
}

Matrix matrix_exp(const Matrix& h) {
  return matrix_fn(h, [](double x) { return std::exp(x); });
}

Matrix matrix_exp_general(const Matrix& l) {
  require_square_finite(l, "matrix_exp_general");
  return l.exp();
}

Matrix matrix_log(const Matrix& a) {
  const HermitianEig eig = hermitian_eig(a);
  const double thr = support_threshold(eig.eigenvalues);
  if (eig.eigenvalues.minCoeff() < -thr) {
    throw std::domain_error("matrix_log: matrix must be positive semi-definite");
  }
  Eigen::VectorXcd lg(eig.eigenvalues.size());
  for (Eigen::Index i = 0; i < lg.size(); ++i) {
    const double lambda = eig.eigenvalues[i];
    lg[i] = (lambda <= thr) ? 0.0 : std::log(lambda);  // log 0 := 0 on the kernel
  }
  return eig.eigenvectors * lg.asDiagonal() * eig.eigenvectors.adjoint();
}

Matrix abs_value(const Matrix& l) {
  require_square_finite(l, "abs_value");
  Eigen::JacobiSVD<Matrix> svd(l, Eigen::ComputeThinV);
  const Matrix v = svd.matrixV();
  return v * svd.singularValues().asDiagonal() * v.adjoint();
}

RealVector singular_values(const Matrix& l) {
  require_square_finite(l, "singular_values");
  Eigen::JacobiSVD<Matrix> svd(l);
  return svd.singularValues();
}

double schatten_norm(const Matrix& l, double p) {
  const double lg = log_schatten_norm(l, p);
  return std::isinf(lg) && lg < 0 ? 0.0 : std::exp(lg);
}

double log_schatten_from_log_singulars(const RealVector& log_singulars, double p) {
  if (!(p > 0.0)) {
    throw std::invalid_argument("log_schatten: order p must be positive");
  }
  if (log_singulars.size() == 0) {
    return -std::numeric_limits<double>::infinity();
  }
  const double top = log_singulars.maxCoeff();
  if (std::isinf(p)) {
    return top;
  }
  double sum = 0.0;  // sum of (s_i / s_max)^p, stable for any p
  for (Eigen::Index i = 0; i < log_singulars.size(); ++i) {
    sum += std::exp(p * (log_singulars[i] - top));
  }
  return top + std::log(sum) / p;
}

double log_schatten_norm(const Matrix& l, double p) {
  const RealVector s = singular_values(l);
  std::vector<double> logs;
  logs.reserve(static_cast<std::size_t>(s.size()));
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s[i] > 0.0) logs.push_back(std::log(s[i]));
  }
  RealVector lv = Eigen::Map<const RealVector>(logs.data(), static_cast<Eigen::Index>(logs.size()));
  return log_schatten_from_log_singulars(lv, p);
}

namespace {

// Divided-difference transform in the eigenbasis of the decomposed matrix.
// kernel(i, j) receives eigenvalues; near-coincident pairs (relative gap
// <= 1e-8) take the analytic limit supplied by `diagonal`.
template <class Kernel, class Diagonal>
Matrix divided_difference_transform(const HermitianEig& eig, const Matrix& direction,
                                    Kernel&& kernel, Diagonal&& diagonal) {
  const Eigen::Index d = eig.eigenvalues.size();
  const Matrix tilted = eig.eigenvectors.adjoint() * direction * eig.eigenvectors;
  Matrix scaled(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      const double x = eig.eigenvalues[i];
      const double y = eig.eigenvalues[j];
      const double k = (std::abs(x - y) <= 1e-8 * std::abs(x)) ? diagonal(x) : kernel(x, y);
      scaled(i, j) = k * tilted(i, j);
    }
  }
  return eig.eigenvectors * scaled * eig.eigenvectors.adjoint();
}

}  // namespace

Matrix frechet_dlog_divided(const Matrix& a, const Matrix& h) {
  const HermitianEig eig = hermitian_eig(a);
  if (eig.eigenvalues.minCoeff() <= support_threshold(eig.eigenvalues)) {
    throw std::domain_error("frechet_dlog_divided: matrix must be positive definite");
  }
  return divided_difference_transform(
      eig, hermitian_part(h),
      [](double x, double y) { return (std::log(x) - std::log(y)) / (x - y); },
      [](double x) { return 1.0 / x; });
}

Matrix frechet_dexp(const Matrix& h, const Matrix& e) {
  const HermitianEig eig = hermitian_eig(h);
  return divided_difference_transform(
      eig, hermitian_part(e),
      [](double x, double y) { return (std::exp(x) - std::exp(y)) / (x - y); },
      [](double x) { return std::exp(x); });
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Matrix kron_power(const Matrix& a, int m) {
  if (m < 1) {
    throw std::invalid_argument("kron_power: exponent must be >= 1");
  }
  Matrix out = a;
  for (int k = 1; k < m; ++k) {
    out = kron(out, a);
  }
  return out;
}

Matrix partial_trace(const Matrix& m, int dim_a, int dim_b, int keep) {
  if (dim_a < 1 || dim_b < 1 || m.rows() != dim_a * dim_b || m.cols() != m.rows()) {
    throw std::invalid_argument("partial_trace: dimensions do not match the matrix");
  }
  if (keep != 0 && keep != 1) {
    throw std::invalid_argument("partial_trace: keep must select factor 0 or 1");
  }
  if (keep == 0) {
    Matrix out = Matrix::Zero(dim_a, dim_a);
    for (int i = 0; i < dim_a; ++i) {
      for (int j = 0; j < dim_a; ++j) {
        Complex acc = 0.0;
        for (int b = 0; b < dim_b; ++b) acc += m(i * dim_b + b, j * dim_b + b);
        out(i, j) = acc;
      }
    }
    return out;
  }
  Matrix out = Matrix::Zero(dim_b, dim_b);
  for (int i = 0; i < dim_b; ++i) {
    for (int j = 0; j < dim_b; ++j) {
      Complex acc = 0.0;
      for (int a = 0; a < dim_a; ++a) acc += m(a * dim_b + i, a * dim_b + j);
      out(i, j) = acc;
    }
  }
  return out;
}

Matrix hermitian_part(const Matrix& m) { return (m + m.adjoint()) / 2.0; }

Matrix skew_part(const Matrix& m) { return (m - m.adjoint()) / Complex(0.0, 2.0); }

double real_trace(const Matrix& m, double rel_tol) {
  const Complex tr = m.trace();
  if (std::abs(tr.imag()) > rel_tol * std::max(std::abs(tr.real()), 1.0)) {
    throw std::domain_error("real_trace: trace has a non-negligible imaginary part");
  }
  return tr.real();
}

}  // namespace traceineq
