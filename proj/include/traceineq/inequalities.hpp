#pragma once

#include <string>
#include <vector>

#include "traceineq/beta_density.hpp"
#include "traceineq/linalg.hpp"

namespace traceineq {

/**
 * Two sides of a trace inequality in log scale. The asserted direction is
 * always lhs_log <= rhs_log, so a valid instance has
 * gap >= -(quad_error + small slack); quad_error is the certified quadrature
 * truncation error of the right-hand side (0 for closed-form sides).
 */
struct InequalityReport {
  std::string family;
  int n = 0;
  double p = 0.0;  // Schatten exponent; alt_classic stores its q here
  double r = 0.0;  // interpolation exponent where applicable
  double lhs_log = 0.0;
  double rhs_log = 0.0;
  double gap = 0.0;  // rhs_log - lhs_log
  double quad_error = 0.0;
};

/** log tr e^{H1+H2} <= log tr e^{H1} e^{H2} for Hermitian H1, H2. */
InequalityReport gt_classic(const Matrix& h1, const Matrix& h2);

/**
 * log tr (A1^{r/2} A2^r A1^{r/2})^{q/r} <= log tr (A1^{1/2} A2 A1^{1/2})^q
 * for psd A1, A2, q > 0, r in (0, 1]; equality at r = 1.
 */
InequalityReport alt_classic(const Matrix& a1, const Matrix& a2, double q, double r);

/**
 * log ||exp(sum_k H_k)||_p <= integral of beta_0(t) log ||prod_k e^{(1+it)H_k}||_p.
 * The rule must target theta = 0; p >= 1.
 */
InequalityReport gt_multi(const std::vector<Matrix>& hs, double p, const QuadratureRule& quad);

/**
 * log || |prod_k A_k^r|^{1/r} ||_p <= integral of beta_r(t) log ||prod_k A_k^{1+it}||_p
 * for psd A_k, p >= 1, r in (0, 1]; the rule must target theta = r
 * (r = 1 uses the degenerate point-mass rule and gives equality).
 */
InequalityReport alt_multi(const std::vector<Matrix>& as, double p, double r,
                           const QuadratureRule& quad);

/**
 * Supremum form over rotation parameters: compares
 *   lhs = log ||exp(sum_k log A_k)||_p
 * against the maximum of log ||prod_k A_k^{1+it_k}||_p over a finite grid.
 * The first and last exponents contribute only unitary factors, which cannot
 * change singular values, so their axes are pinned to t = 0 and the grid runs
 * over the inner n-2 axes. The grid maximum only lower-bounds the supremum
 * over all real t, which grid_lower_bound records.
 */
struct SupFormReport {
  int n = 0;
  double p = 0.0;
  double lhs_log = 0.0;
  double rhs_log = 0.0;  // grid maximum
  double gap = 0.0;
  std::vector<double> argmax;  // full t vector including the pinned axes
  bool grid_lower_bound = true;
};

SupFormReport alt_sup_form(const std::vector<Matrix>& as, double p,
                           const std::vector<double>& grid_axis);

/** Default per-axis grid for alt_sup_form: [-10, 10] in steps of 0.1. */
std::vector<double> default_sup_grid();

/**
 * log ||exp(sum_k L_k)||_p <= integral of beta_0(t) log ||prod_k e^{(1+it)Re(L_k)}||_p
 * for arbitrary square L_k with Re(L) = (L + L^dag)/2; rule must target theta = 0.
 */
InequalityReport gt_general(const std::vector<Matrix>& ls, double p, const QuadratureRule& quad);

/**
 * Finite-r interpolation behind gt_general, for arbitrary square L_k and
 * r in (0, 1):
 *   log || |prod_k e^{r L_k}|^{1/r} ||_p
 *     <= integral of beta_r(t) log ||prod_k exp((1+it)Re(L_k) + i r Im(L_k))||_p
 * with Im(L) = (L - L^dag)/(2i). At the interpolation point z = r the factor
 * exp(r Re(L) + i r Im(L)) is exactly e^{r L}, which is what makes the
 * left-hand side appear; on the boundary z = it all factors are unitary.
 */
InequalityReport alt_general(const std::vector<Matrix>& ls, double p, double r,
                             const QuadratureRule& quad);

/**
 * Product-formula approximant |e^{r L_1} ... e^{r L_n}|^{1/r}. For Hermitian
 * inputs it converges to exp(sum_k L_k) as r -> 0, at an O(r) Frobenius rate.
 */
Matrix lie_trotter(const std::vector<Matrix>& ls, double r);

/**
 * Triple-matrix coupling term
 *   integral over lambda >= 0 of tr e^{H1} (e^{-H2}+lambda)^{-1} e^{H3} (e^{-H2}+lambda)^{-1},
 * evaluated in closed form: in the eigenbasis of e^{-H2} the lambda integral
 * of each entry is the divided difference of log, so the whole expression is
 * tr of e^{H1} times the log-derivative of e^{-H2} in direction e^{H3}.
 */
double lieb_triple_rhs(const Matrix& h1, const Matrix& h2, const Matrix& h3);

/**
 * Rotation-averaged triple term
 *   integral of beta_0(t) tr e^{H1} e^{(1+it)H2/2} e^{H3} e^{(1-it)H2/2};
 * each integrand value is a squared Frobenius norm, hence real and >= 0.
 * Agrees with lieb_triple_rhs.
 */
double our_gt3_rhs(const Matrix& h1, const Matrix& h2, const Matrix& h3,
                   const QuadratureRule& quad);

/**
 * Convexity check log tr e^{G1+G2} >= tr G2 e^{G1} valid when tr e^{G1} = 1;
 * G1 is shifted by -log tr e^{G1} internally so the caller may pass any
 * Hermitian G1. Returns the slack, which is >= 0 up to roundoff.
 */
double peierls_bogoliubov_check(const Matrix& g1, const Matrix& g2);

struct GammaKappa {
  double gamma_t = 0.0;  // tr A3^{1/2} A2^{(1+it)/2} A1 A2^{(1-it)/2} A3^{1/2}
  double kappa = 0.0;    // tr exp(log A1 + log A2 + log A3)
};

/**
 * The two quantities compared when probing which averaging weights can close
 * the three-matrix gap; all inputs must be positive definite. gamma is a
 * congruence trace of the form tr M M^dag, so an imaginary residue beyond
 * 1e-10 relative is an error, not noise to discard.
 */
GammaKappa gamma_kappa(const Matrix& a1, const Matrix& a2, const Matrix& a3, double t);

/**
 * Two built-in positive definite triples. Set 1 makes kappa exceed gamma(0),
 * ruling out weights concentrated near t = 0; set 2 makes gamma dip below
 * kappa away from t = 0, ruling out weights that are too flat. For both,
 * averaging gamma against beta_0 stays above kappa.
 */
std::vector<Matrix> counterexample_matrices(int which);

struct CounterexampleRow {
  double t = 0.0;
  double gamma = 0.0;
  double kappa = 0.0;
};

struct CounterexampleReport {
  int which = 0;
  std::vector<CounterexampleRow> rows;
  double kappa = 0.0;
  double xi = 0.0;  // integral of beta_0(t) gamma(t)
  double quad_error = 0.0;
};

CounterexampleReport counterexample_report(int which, double tmin, double tmax, double step);

}  // namespace traceineq
