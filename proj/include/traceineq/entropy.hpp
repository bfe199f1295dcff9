#pragma once

#include <vector>

#include "traceineq/beta_density.hpp"
#include "traceineq/linalg.hpp"

namespace traceineq {

/** Throws std::invalid_argument unless m is psd with unit trace (1e-10). */
void require_density(const Matrix& m, const char* what);

/** H(rho) = -tr rho log rho over the support; natural log. */
double von_neumann_entropy(const Matrix& rho);

/**
 * I(A:C|B) = H(AB) + H(BC) - H(B) - H(ABC) for a density operator on
 * C^{dim_a} (x) C^{dim_b} (x) C^{dim_c}. Nonnegative by strong subadditivity.
 */
double cond_mutual_info(const Matrix& rho_abc, int dim_a, int dim_b, int dim_c);

/**
 * tr rho (log rho - log sigma); +infinity when rho carries more than 1e-10
 * weight outside the support of sigma (returned as a value, not thrown).
 */
double relative_entropy(const Matrix& rho, const Matrix& sigma);

/**
 * tr rho log omega + 1 - tr exp(log sigma + log omega) for positive definite
 * omega; every omega gives a lower bound on relative_entropy(rho, sigma).
 */
double umegaki_variational_value(const Matrix& rho, const Matrix& sigma, const Matrix& omega);

struct MeasuredRelEntropy {
  double value = 0.0;  // certified lower estimate of the supremum
  Matrix omega;        // witness attaining `value`
  bool converged = false;
  int iterations = 0;
  double grad_norm = 0.0;
};

/**
 * sup over omega > 0 of tr rho log omega + 1 - tr sigma omega, maximized by
 * gradient ascent over omega = exp(H) with H Hermitian (which keeps omega
 * positive definite without constraints). The gradient of the objective is
 * rho - Dexp(H)[sigma] with the divided-difference derivative of exp;
 * spectral step lengths with a windowed backtracking acceptance guard each
 * step. Warm start H = log rho - log
 * sigma, which is exactly optimal for commuting pairs. The returned value is
 * a valid lower bound whether or not the iteration converged.
 */
MeasuredRelEntropy measured_relative_entropy(const Matrix& rho, const Matrix& sigma,
                                             int max_iterations = 500, double grad_tol = 1e-9);

/** ||sqrt(rho) sqrt(sigma)||_1 squared. */
double fidelity(const Matrix& rho, const Matrix& sigma);

/**
 * log tr rho^2 sigma^{-1} with the inverse on the support of sigma;
 * +infinity when rho leaks outside that support. Dominates
 * relative_entropy(rho, sigma).
 */
double petz_renyi_2(const Matrix& rho, const Matrix& sigma);

/**
 * Recovery through the marginal of sigma_ab on the first factor:
 *   X -> sigma_ab^{(1+it)/2} (sigma_a^{-(1+it)/2} X sigma_a^{-(1-it)/2} (x) id_B) sigma_ab^{(1-it)/2}.
 * Inverse powers act on the support of sigma_a; if its smallest positive
 * eigenvalue sits within three decades of the support cutoff, sigma_a is
 * floored as (1-eps) sigma_a + eps id/d with eps = 1e-12 before inverting,
 * and *regularized (when given) records that. Trace-preserving on inputs
 * supported in supp(sigma_a), and maps sigma_a back to sigma_ab for every t.
 */
Matrix rotated_petz_partial(const Matrix& sigma_ab, const Matrix& x_a, int dim_a, int dim_b,
                            double t, bool* regularized = nullptr);

/** beta_0-average over t of rotated_petz_partial; quad must target theta 0. */
Matrix rotated_petz_partial_avg(const Matrix& sigma_ab, const Matrix& x_a, int dim_a, int dim_b,
                                const QuadratureRule& quad, bool* regularized = nullptr);

/** sum_i K_i X K_i^dag. */
Matrix channel_apply(const std::vector<Matrix>& kraus, const Matrix& x);

/** Adjoint map sum_i K_i^dag Y K_i. */
Matrix channel_adjoint_apply(const std::vector<Matrix>& kraus, const Matrix& y);

/** Throws unless the Kraus family is nonempty, uniform, and sums to id. */
void require_channel(const std::vector<Matrix>& kraus);

/**
 * Channel form of the recovery map:
 *   X -> sigma^{(1+it)/2} N^dag( N(sigma)^{-(1+it)/2} X N(sigma)^{-(1-it)/2} ) sigma^{(1-it)/2}.
 * Same support and flooring conventions as the partial-trace form; the two
 * agree exactly through the Stinespring isometry.
 */
Matrix rotated_petz_channel(const Matrix& sigma, const std::vector<Matrix>& kraus,
                            const Matrix& x, double t, bool* regularized = nullptr);

Matrix rotated_petz_channel_avg(const Matrix& sigma, const std::vector<Matrix>& kraus,
                                const Matrix& x, const QuadratureRule& quad,
                                bool* regularized = nullptr);

/**
 * Isometry U = sum_i K_i (x) e_i into output (x) environment; U^dag U = id
 * and tracing out the environment of U rho U^dag recovers the channel.
 */
Matrix stinespring(const std::vector<Matrix>& kraus);

/**
 * Comparison of the data-processing remainder Delta = D(rho_AB || sigma_AB)
 * - D(rho_A || sigma_A) against its recoverability bounds: the measured
 * relative entropy and -log fidelity between rho_AB and the beta_0-averaged
 * recovery of rho_A (both certified lower bounds on Delta), plus the
 * two-sided node-wise bounds -int beta_0 log F <= Delta <= int beta_0 D_2.
 */
struct MonotonicityReport {
  double delta = 0.0;
  double dm_estimate = 0.0;     // D_M(rho_AB || averaged recovery), lower estimate
  double neg_log_f = 0.0;       // -log F(rho_AB, averaged recovery)
  double lower_beta_f = 0.0;    // -int beta_0(t) log F(rho_AB, R_t(rho_A))
  double upper_beta_d2 = 0.0;   // int beta_0(t) D_2(rho_AB || R_t(rho_A))
  double quad_error = 0.0;      // summed quadrature certificates
  double tol = 0.0;             // quad_error + 1e-7
  bool dm_converged = false;
  bool sigma_regularized = false;
  bool infinite = false;  // rho_AB not dominated by sigma_AB; only delta is set
  bool sandwich_ok = false;
};

MonotonicityReport strengthened_monotonicity_report(const Matrix& rho_ab, const Matrix& sigma_ab,
                                                    int dim_a, int dim_b,
                                                    const QuadratureRule& quad);

/**
 * Conditional-mutual-information remainder: I(A:C|B) upper-bounds both the
 * measured relative entropy and -log fidelity between rho_ABC and the state
 * rebuilt from rho_AB by recovering C from B through rho_BC.
 */
struct CmiBoundReport {
  double cmi = 0.0;
  double dm_estimate = 0.0;
  double neg_log_f = 0.0;
  double quad_error = 0.0;
  double tol = 0.0;
  bool dm_converged = false;
  bool sigma_regularized = false;
  bool holds = false;
};

CmiBoundReport cmi_bound_report(const Matrix& rho_abc, int dim_a, int dim_b, int dim_c,
                                const QuadratureRule& quad);

}  // namespace traceineq
