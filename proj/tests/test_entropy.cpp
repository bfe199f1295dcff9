#include <cmath>
#include <vector>

#include <doctest.h>

#include "traceineq/beta_density.hpp"
#include "traceineq/entropy.hpp"
#include "traceineq/linalg.hpp"
#include "traceineq/random_gen.hpp"

using namespace traceineq;

namespace {

Matrix diag2(double a, double b) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

Matrix random_diagonal_density(Rng& rng, int dim) {
  RealVector p(dim);
  for (int i = 0; i < dim; ++i) p[i] = 0.05 + rng.uniform();
  p /= p.sum();
  return p.cast<Complex>().asDiagonal();
}

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("von Neumann entropy: mixed, pure, and malformed inputs") {
  CHECK(von_neumann_entropy(diag2(0.5, 0.5)) ==
        doctest::Approx(0.69314718055994529).epsilon(1e-14));
  Rng rng(501);
  Eigen::VectorXcd psi(3);
  for (int i = 0; i < 3; ++i) psi[i] = rng.complex_gaussian();
  psi.normalize();
  const Matrix pure = psi * psi.adjoint();
  CHECK(std::abs(von_neumann_entropy(pure)) <= 1e-12);
  CHECK_THROWS(von_neumann_entropy(diag2(0.6, 0.6)));
  CHECK_THROWS(von_neumann_entropy(diag2(1.5, -0.5)));
}

TEST_CASE("conditional mutual information vanishes on product states") {
  Rng rng(502);
  const Matrix prod =
      kron(kron(random_density(rng, 2), random_density(rng, 2)), random_density(rng, 2));
  CHECK(std::abs(cond_mutual_info(prod, 2, 2, 2)) <= 1e-12);
  for (int i = 0; i < 10; ++i) {
    CHECK(cond_mutual_info(random_density(rng, 8), 2, 2, 2) >= -1e-9);
  }
  CHECK_THROWS(cond_mutual_info(random_density(rng, 8), 2, 2, 3));
}

TEST_CASE("relative entropy: closed form, reflexivity, support, positivity") {
  const Matrix rho = diag2(0.5, 0.5);
  const Matrix sigma = diag2(0.25, 0.75);
  CHECK(relative_entropy(rho, sigma) ==
        doctest::Approx(0.14384103622589045).epsilon(1e-12));
  Rng rng(503);
  for (int i = 0; i < 5; ++i) {
    const Matrix r = random_density(rng, 3);
    CHECK(std::abs(relative_entropy(r, r)) <= 1e-10);
    CHECK(relative_entropy(r, random_density(rng, 3)) >= -1e-10);
  }
  CHECK(std::isinf(relative_entropy(diag2(0.5, 0.5), diag2(1.0, 0.0))));
}

TEST_CASE("variational lower bound is tight at the matched witness") {
  Rng rng(504);
  for (int i = 0; i < 6; ++i) {
    const Matrix rho = random_density(rng, 3);
    const Matrix sigma = random_density(rng, 3);
    const double d = relative_entropy(rho, sigma);
    const Matrix star = matrix_exp(matrix_log(rho) - matrix_log(sigma));
    CHECK(umegaki_variational_value(rho, sigma, star) == doctest::Approx(d).epsilon(1e-10));
    const Matrix other = random_psd_spectrum(rng, 3, 0.2, 3.0);
    CHECK(umegaki_variational_value(rho, sigma, other) <= d + 1e-10);
  }
  CHECK_THROWS(umegaki_variational_value(diag2(0.5, 0.5), diag2(0.5, 0.5), diag2(1.0, 0.0)));
}

TEST_CASE("measured relative entropy: commuting tightness and general domination") {
  Rng rng(505);
  for (int i = 0; i < 5; ++i) {
    const Matrix rho = random_diagonal_density(rng, 3);
    const Matrix sigma = random_diagonal_density(rng, 3);
    const MeasuredRelEntropy m = measured_relative_entropy(rho, sigma);
    CHECK(m.converged);
    CHECK(m.value == doctest::Approx(relative_entropy(rho, sigma)).epsilon(1e-8));
  }
  for (int i = 0; i < 5; ++i) {
    const Matrix rho = random_density(rng, 3);
    const Matrix sigma = random_density(rng, 3);
    const MeasuredRelEntropy m = measured_relative_entropy(rho, sigma);
    CHECK(m.converged);
    CHECK(m.grad_norm <= 1e-9);
    CHECK(m.value <= relative_entropy(rho, sigma) + 1e-8);
    // The reported value must be the objective evaluated at the witness.
    const double replay = real_trace(rho * matrix_log(m.omega), 1e-8) + 1.0 -
                          real_trace(sigma * m.omega, 1e-8);
    CHECK(m.value == doctest::Approx(replay).epsilon(1e-9));
  }
}

TEST_CASE("fidelity: closed form, normalization, symmetry") {
  const Matrix rho = diag2(0.5, 0.5);
  const Matrix sigma = diag2(0.25, 0.75);
  CHECK(fidelity(rho, sigma) == doctest::Approx(0.93301270189221963).epsilon(1e-12));
  Rng rng(506);
  for (int i = 0; i < 5; ++i) {
    const Matrix a = random_density(rng, 3);
    const Matrix b = random_density(rng, 3);
    CHECK(fidelity(a, a) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(fidelity(a, b) == doctest::Approx(fidelity(b, a)).epsilon(1e-12));
    CHECK(fidelity(a, b) <= 1.0 + 1e-12);
    CHECK(fidelity(a, b) >= 0.0);
  }
}

TEST_CASE("quadratic Renyi divergence dominates the relative entropy") {
  const Matrix rho = diag2(0.5, 0.5);
  const Matrix sigma = diag2(0.25, 0.75);
  CHECK(petz_renyi_2(rho, sigma) ==
        doctest::Approx(0.28768207245178085).epsilon(1e-12));
  Rng rng(507);
  for (int i = 0; i < 8; ++i) {
    const Matrix a = random_density(rng, 3);
    const Matrix b = random_density(rng, 3);
    CHECK(petz_renyi_2(a, b) >= relative_entropy(a, b) - 1e-9);
  }
  CHECK(std::isinf(petz_renyi_2(diag2(0.5, 0.5), diag2(1.0, 0.0))));
}

TEST_CASE("rotated recovery map fixes the reference marginal at every angle") {
  Rng rng(508);
  for (const auto& dims : std::vector<std::pair<int, int>>{{2, 2}, {2, 3}}) {
    const int da = dims.first;
    const int db = dims.second;
    const Matrix sigma_ab = random_density(rng, da * db);
    const Matrix sigma_a = partial_trace(sigma_ab, da, db, 0);
    for (double t : {0.0, 0.7, -0.7, 2.3}) {
      const Matrix back = rotated_petz_partial(sigma_ab, sigma_a, da, db, t);
      CHECK(max_abs(back - sigma_ab) <= 1e-10);
    }
    // Trace preservation for inputs supported inside the marginal.
    const Matrix x = random_psd_spectrum(rng, da, 0.1, 2.0);
    const Matrix image = rotated_petz_partial(sigma_ab, x, da, db, 0.4);
    CHECK(std::abs(image.trace().real() - x.trace().real()) <= 1e-10);
    CHECK(max_abs(image - image.adjoint()) <= 1e-10);
    const QuadratureRule quad = make_quadrature(0.0, 1e-8);
    const Matrix avg = rotated_petz_partial_avg(sigma_ab, sigma_a, da, db, quad);
    CHECK(max_abs(avg - sigma_ab) <= 1e-8 + quad.tail_bound);
  }
}

TEST_CASE("rotated recovery map validates dimensions, support, and the rule") {
  Rng rng(509);
  const Matrix sigma_ab = random_density(rng, 4);
  CHECK_THROWS(rotated_petz_partial(sigma_ab, Matrix::Identity(3, 3), 3, 2, 0.0));
  // Reference with a kernel on the first factor rejects leaking inputs.
  const Matrix pinned = kron(diag2(1.0, 0.0), diag2(0.5, 0.5));
  CHECK_THROWS(rotated_petz_partial(pinned, diag2(0.0, 1.0), 2, 2, 0.0));
  CHECK_THROWS(
      rotated_petz_partial_avg(sigma_ab, diag2(0.5, 0.5), 2, 2, make_quadrature(0.3, 1e-8)));
  // A barely positive marginal direction trips the inversion floor.
  bool regularized = false;
  const Matrix frail = kron(diag2(1.0 - 1e-10, 1e-10), diag2(0.5, 0.5));
  rotated_petz_partial(frail, diag2(1.0, 0.0), 2, 2, 0.0, &regularized);
  CHECK(regularized);
  bool benign = true;
  rotated_petz_partial(sigma_ab, diag2(0.5, 0.5), 2, 2, 0.0, &benign);
  CHECK_FALSE(benign);
}

TEST_CASE("Kraus channels: completeness check, trace preservation, unital adjoint") {
  Rng rng(510);
  const std::vector<Matrix> kraus = random_kraus(rng, 3, 2);
  require_channel(kraus);
  const Matrix rho = random_density(rng, 3);
  CHECK(std::abs(channel_apply(kraus, rho).trace().real() - 1.0) <= 1e-12);
  CHECK(max_abs(channel_adjoint_apply(kraus, Matrix::Identity(3, 3)) -
                Matrix::Identity(3, 3)) <= 1e-12);
  std::vector<Matrix> scaled = kraus;
  scaled[0] *= 0.9;
  CHECK_THROWS(require_channel(scaled));
  CHECK_THROWS(require_channel(std::vector<Matrix>{}));
}

TEST_CASE("isometric dilation reproduces the channel and its recovery map") {
  Rng rng(511);
  const std::vector<Matrix> kraus = random_kraus(rng, 2, 2);
  const Matrix u = stinespring(kraus);
  CHECK(max_abs(u.adjoint() * u - Matrix::Identity(2, 2)) <= 1e-12);
  const Matrix rho = random_density(rng, 2);
  const Matrix dilated = u * rho * u.adjoint();
  CHECK(max_abs(partial_trace(dilated, 2, 2, 0) - channel_apply(kraus, rho)) <= 1e-12);

  // Conjugating the two-factor recovery by the dilation gives the channel
  // form exactly, for every rotation angle.
  const Matrix sigma = random_density(rng, 2);
  const Matrix x = random_psd_spectrum(rng, 2, 0.2, 2.0);
  const Matrix sigma_dilated = u * sigma * u.adjoint();
  for (double t : {0.0, 1.1, -0.6}) {
    const Matrix via_dilation =
        u.adjoint() * rotated_petz_partial(sigma_dilated, x, 2, 2, t) * u;
    const Matrix direct = rotated_petz_channel(sigma, kraus, x, t);
    CHECK(max_abs(via_dilation - direct) <= 1e-9);
  }
}

TEST_CASE("data-processing remainder dominates its recovery estimates") {
  Rng rng(512);
  const QuadratureRule quad = make_quadrature(0.0, 1e-8);
  for (int i = 0; i < 4; ++i) {
    const Matrix rho = random_density(rng, 4);
    const Matrix sigma = random_density(rng, 4);
    const MonotonicityReport rep = strengthened_monotonicity_report(rho, sigma, 2, 2, quad);
    REQUIRE_FALSE(rep.infinite);
    CHECK(rep.sandwich_ok);
    CHECK(rep.delta >= rep.dm_estimate - rep.tol);
    CHECK(rep.delta >= rep.neg_log_f - rep.tol);
    CHECK(rep.delta >= rep.lower_beta_f - rep.tol);
    CHECK(rep.delta <= rep.upper_beta_d2 + rep.tol);
    CHECK(rep.dm_converged);
  }
}

TEST_CASE("data-processing remainder is fully recoverable in the commuting case") {
  Rng rng(513);
  const QuadratureRule quad = make_quadrature(0.0, 1e-8);
  for (int i = 0; i < 4; ++i) {
    const Matrix rho = random_diagonal_density(rng, 4);
    const Matrix sigma = random_diagonal_density(rng, 4);
    const MonotonicityReport rep = strengthened_monotonicity_report(rho, sigma, 2, 2, quad);
    REQUIRE_FALSE(rep.infinite);
    CHECK(rep.sandwich_ok);
    CHECK(std::abs(rep.delta - rep.dm_estimate) <= 1e-6);
  }
}

TEST_CASE("data-processing report flags undominated and fragile references") {
  Rng rng(514);
  Matrix sigma = Matrix::Zero(4, 4);
  sigma(0, 0) = 0.5;
  sigma(1, 1) = 0.5;
  const MonotonicityReport rep = strengthened_monotonicity_report(
      random_density(rng, 4), sigma, 2, 2, make_quadrature(0.0, 1e-8));
  CHECK(rep.infinite);
  CHECK_FALSE(rep.sandwich_ok);

  const Matrix frail = kron(diag2(1.0 - 1e-10, 1e-10), diag2(0.5, 0.5));
  const MonotonicityReport frail_rep = strengthened_monotonicity_report(
      random_density(rng, 4), frail, 2, 2, make_quadrature(0.0, 1e-8));
  CHECK(frail_rep.sigma_regularized);
}

TEST_CASE("conditional mutual information bounds recovery of the third factor") {
  Rng rng(515);
  const QuadratureRule quad = make_quadrature(0.0, 1e-8);
  for (int i = 0; i < 3; ++i) {
    const CmiBoundReport rep = cmi_bound_report(random_density(rng, 8), 2, 2, 2, quad);
    CHECK(rep.holds);
    CHECK(rep.cmi >= -1e-9);
    CHECK(rep.cmi >= rep.dm_estimate - rep.tol);
    CHECK(rep.cmi >= rep.neg_log_f - rep.tol);
  }
  // A product across the B|C cut is recovered exactly: every estimate
  // collapses to zero along with the conditional mutual information.
  const Matrix markov = kron(random_density(rng, 4), random_density(rng, 2));
  const CmiBoundReport rep = cmi_bound_report(markov, 2, 2, 2, quad);
  CHECK(rep.holds);
  CHECK(std::abs(rep.cmi) <= 1e-9);
  CHECK(rep.dm_estimate <= 1e-7);
  CHECK(rep.neg_log_f <= 1e-7);
}
