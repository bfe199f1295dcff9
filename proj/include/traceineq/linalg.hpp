#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>

namespace traceineq {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

struct HermitianEig {
  RealVector eigenvalues;  // ascending
  Matrix eigenvectors;     // columns, unitary
};

/**
 * Eigendecomposition of a Hermitian matrix. The input is symmetrized as
 * (A + A^dag)/2 before decomposing; inputs farther than 1e-10 (relative)
 * from Hermitian are rejected, as are non-square or non-finite inputs.
 */
HermitianEig hermitian_eig(const Matrix& a);

/**
 * Threshold below which an eigenvalue of a psd matrix counts as an exact
 * zero: 1e-12 * max(|lambda|_max, 1). All support conventions (log 0 = 0,
 * 0^z = 0) use this cutoff.
 */
double support_threshold(const RealVector& eigenvalues);

/** Number of eigenvalues above the support threshold. */
int support_rank(const Matrix& a);

/** Throws std::invalid_argument unless A is Hermitian psd within tolerance. */
void require_psd(const Matrix& a, const char* what);

/** Spectral calculus f(A) = V diag(f(lambda)) V^dag; f may return complex. */
template <class F>
Matrix matrix_fn(const Matrix& a, F&& f) {
  const HermitianEig eig = hermitian_eig(a);
  Eigen::VectorXcd fe(eig.eigenvalues.size());
  for (Eigen::Index i = 0; i < fe.size(); ++i) {
    const Complex v = f(eig.eigenvalues[i]);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw std::domain_error("matrix_fn: function value not finite at an eigenvalue");
    }
    fe[i] = v;
  }
  return eig.eigenvectors * fe.asDiagonal() * eig.eigenvectors.adjoint();
}

/**
 * A^z for psd A and complex z, with 0^z := 0 on the kernel (support
 * convention). Eigenvalues at or below the support threshold map to exact
 * zero, so the kernel is preserved and no NaN can appear even for exponents
 * with negative real part.
 */
Matrix complex_power(const Matrix& a, Complex z);

/** Same as complex_power but reuses a precomputed decomposition of A. */
Matrix complex_power(const HermitianEig& eig, Complex z);

/** exp(H) for Hermitian H via spectral calculus. */
Matrix matrix_exp(const Matrix& h);

/** exp(L) for a general square matrix (scaling-and-squaring Pade). */
Matrix matrix_exp_general(const Matrix& l);

/** log(A) for psd A with log 0 := 0 on the kernel. */
Matrix matrix_log(const Matrix& a);

/** |L| = sqrt(L^dag L), computed from the singular value decomposition. */
Matrix abs_value(const Matrix& l);

/** Singular values of L, descending. */
RealVector singular_values(const Matrix& l);

/**
 * Schatten norm (tr|L|^p)^{1/p} for p > 0, operator norm at p = infinity.
 * A quasi-norm for p in (0,1). Rejects p <= 0 and non-finite input.
 */
double schatten_norm(const Matrix& l, double p);

/**
 * log of the Schatten norm evaluated in log-space over the singular values
 * (log-sum-exp), so exponents like p/r with tiny r neither overflow nor
 * underflow. Returns -infinity for the zero matrix.
 */
double log_schatten_norm(const Matrix& l, double p);

/** log-Schatten norm from precomputed log-singular values. */
double log_schatten_from_log_singulars(const RealVector& log_singulars, double p);

/**
 * Directional derivative of the matrix logarithm at positive definite A in
 * direction H via divided differences in A's eigenbasis: kernel
 * (log x - log y)/(x - y) with the analytic limit 1/x taken when
 * |x - y| <= 1e-8 |x|.
 */
Matrix frechet_dlog_divided(const Matrix& a, const Matrix& h);

/**
 * Directional derivative of the matrix exponential at Hermitian H in
 * direction E; divided differences of exp with limit e^x on near-coincident
 * eigenvalue pairs.
 */
Matrix frechet_dexp(const Matrix& h, const Matrix& e);

/** Kronecker product A (x) B. */
Matrix kron(const Matrix& a, const Matrix& b);

/** m-fold Kronecker power. */
Matrix kron_power(const Matrix& a, int m);

/**
 * Partial trace of an operator on C^{dim_a} (x) C^{dim_b}; `keep` selects
 * which factor survives (0 keeps the first, 1 the second).
 */
Matrix partial_trace(const Matrix& m, int dim_a, int dim_b, int keep);

/** Hermitian part (M + M^dag)/2. */
Matrix hermitian_part(const Matrix& m);

/** Skew part (M - M^dag)/(2i); Hermitian for any square M. */
Matrix skew_part(const Matrix& m);

/** Trace checked to be real up to `rel_tol` relative residue; throws otherwise. */
double real_trace(const Matrix& m, double rel_tol = 1e-10);

}  // namespace traceineq
