#pragma once

#include <cstdint>
#include <vector>

#include "traceineq/linalg.hpp"

namespace traceineq {

/**
 * Spectral decomposition of a Hermitian matrix with nearby eigenvalues merged:
 * A = sum_z lambda_z P_z with mutually orthogonal projectors summing to the
 * identity. Eigenvalues closer than cluster_tol * max(|lambda|_max, 1) share
 * one projector.
 */
struct SpectralProjectors {
  RealVector distinct_eigenvalues;  // ascending
  std::vector<Matrix> projectors;
  double cluster_tol = 0.0;
};

SpectralProjectors spectral_projectors(const Matrix& a, double cluster_tol = 1e-9);

/** Pinching map X -> sum_z P_z X P_z built from the spectrum of a. */
Matrix pinch(const Matrix& a, const Matrix& x);
Matrix pinch_with(const SpectralProjectors& sp, const Matrix& x);

/**
 * Same map written as the average (1/s) sum_y U_y X U_y^dag over the s
 * discrete-Fourier unitaries U_y = sum_z exp(i 2 pi y z / s) P_z.
 * Agrees with pinch up to roundoff; kept as an independent cross-check.
 */
Matrix pinch_unitary_rep(const Matrix& a, const Matrix& x);

/**
 * Density of the probability measure representing the pinching map as an
 * average of rotations t -> A^{it} X A^{-it}. Its Fourier transform is the
 * triangular bump max(0, 1 - 2|w|/delta), so every eigenvalue-difference
 * frequency at or beyond delta is annihilated; delta is the smallest gap
 * between distinct log-eigenvalues of A.
 */
double pinch_measure_density(double delta, double t);

struct PinchIntegralResult {
  Matrix value;
  double certificate = 0.0;  // bound on truncation error, scaled by max |X| entry
  double delta = 0.0;        // smallest log-eigenvalue gap
  double truncation = 0.0;   // half-width T of the sampled window
  std::size_t node_count = 0;
};

/**
 * Evaluates the rotation-average representation by a symmetric trapezoid sum.
 * The sampling step is at most min(0.1, pi / (4 max|log lambda|)), which keeps
 * every aliased copy of the triangular Fourier bump away from the eigenvalue
 * differences, so only the truncated 1/t^2 tail contributes error. Requires
 * a positive definite with at least two distinct eigenvalues; the measure is
 * undefined when the log-spectrum has no gap.
 */
PinchIntegralResult pinch_integral_rep(const Matrix& a, const Matrix& x, double truncation_tol);

/**
 * Smallest eigenvalue of pinch(A, X) - X / |spec(A)| for psd X. The pinching
 * inequality asserts this is nonnegative.
 */
double pinching_inequality_check(const Matrix& a, const Matrix& x);

/**
 * Number of type classes of length-m sequences over a d-letter alphabet,
 * binom(m + d - 1, d - 1); bounds |spec(A^{otimes m})| for any d-dimensional A.
 * Exact integer arithmetic, throws on overflow.
 */
std::uint64_t spec_count_bound(int d, int m);

struct QuasiConvexityReport {
  double p = 0.0;
  int m = 0;
  double lhs = 0.0;        // (1/m) log || sum_x w_x A_x^{otimes m} ||_p
  double rhs_mix = 0.0;    // (1/m) log sum_x w_x || A_x^{otimes m} ||_p
  double poly_term = 0.0;  // (1/m) ((1-p)/p) log binom(m + d^2 - 1, d^2 - 1)
  double rhs = 0.0;        // rhs_mix + poly_term
  double slack = 0.0;      // rhs - lhs
  std::uint64_t type_count = 0;
};

/**
 * Checks the tensor-power convexity surrogate for the Schatten p quasi-norm,
 * p in (0,1): the norm of the mixture exceeds the mixture of norms by at most
 * the polynomial type-counting term. Requires d^m <= 1024.
 */
QuasiConvexityReport quasi_convexity_check(double p, const std::vector<double>& weights,
                                           const std::vector<Matrix>& matrices, int m);

struct TensorPinchRow {
  int m = 0;
  double value = 0.0;  // (1/m) log tr exp(log pinch(B^m, A^m) + log B^m)
  double lower = 0.0;  // log tr exp(log A + log B) - (1/m) log |spec(B^m)|
  double upper = 0.0;  // log tr A B
  std::uint64_t spec_size = 0;
  std::uint64_t spec_bound = 0;
};

/**
 * Finite-m pinching route to the exponential-sum trace bound: pinching
 * A^{otimes m} onto the eigenbasis of B^{otimes m} makes the exponents
 * commute, the resulting value equals log tr A B for every m, and the
 * pinching inequality lower-bounds it by log tr exp(log A + log B) minus a
 * spectrum-counting correction that vanishes as m grows. A and B must be
 * positive definite and d^m <= 1024.
 */
TensorPinchRow tensor_pinch_gt_demo(const Matrix& a, const Matrix& b, int m);

}  // namespace traceineq
