#include <cmath>
#include <set>

#include <doctest.h>

#include "traceineq/pinching.hpp"
#include "traceineq/random_gen.hpp"

using namespace traceineq;

namespace {

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

/** Positive definite matrix with well-separated prescribed eigenvalues. */
Matrix gapped_psd(Rng& rng, const std::vector<double>& eigenvalues) {
  const int d = static_cast<int>(eigenvalues.size());
  const Matrix u = random_unitary(rng, d);
  RealVector ev(d);
  for (int i = 0; i < d; ++i) ev[i] = eigenvalues[static_cast<std::size_t>(i)];
  return u * ev.cast<Complex>().asDiagonal() * u.adjoint();
}

int distinct_count(const RealVector& values, double tol) {
  int count = values.size() > 0 ? 1 : 0;
  for (Eigen::Index i = 1; i < values.size(); ++i) {
    if (values[i] - values[i - 1] > tol) ++count;
  }
  return count;
}

}  // namespace

TEST_CASE("spectral projectors resolve the identity and rebuild the matrix") {
  Rng rng(301);
  const Matrix a = random_hermitian(rng, 4);
  const SpectralProjectors sp = spectral_projectors(a);
  Matrix id_sum = Matrix::Zero(4, 4);
  Matrix rebuilt = Matrix::Zero(4, 4);
  for (std::size_t z = 0; z < sp.projectors.size(); ++z) {
    id_sum += sp.projectors[z];
    rebuilt += sp.distinct_eigenvalues[static_cast<Eigen::Index>(z)] * sp.projectors[z];
    for (std::size_t y = 0; y < sp.projectors.size(); ++y) {
      const Matrix prod = sp.projectors[z] * sp.projectors[y];
      if (y == z) {
        CHECK(max_abs(prod - sp.projectors[z]) < 1e-11);
      } else {
        CHECK(max_abs(prod) < 1e-11);
      }
    }
  }
  CHECK(max_abs(id_sum - Matrix::Identity(4, 4)) < 1e-11);
  CHECK(max_abs(rebuilt - a) < 1e-11);
}

TEST_CASE("degenerate eigenvalues share one projector") {
  Matrix a = Matrix::Zero(3, 3);
  a(0, 0) = 1.0;
  a(1, 1) = 1.0;
  a(2, 2) = 2.0;
  const SpectralProjectors sp = spectral_projectors(a);
  CHECK(sp.projectors.size() == 2);
  CHECK(sp.distinct_eigenvalues[0] == doctest::Approx(1.0));
  CHECK(sp.distinct_eigenvalues[1] == doctest::Approx(2.0));
}

TEST_CASE("pinching satisfies commutation, trace invariance, and the inequality") {
  Rng rng(302);
  for (int i = 0; i < 20; ++i) {
    const int d = 2 + i % 4;
    const Matrix a = random_hermitian(rng, d);
    const Matrix x = random_psd(rng, d);
    const Matrix px = pinch(a, x);
    CHECK(max_abs(px * a - a * px) < 1e-10);
    CHECK(std::abs((px * a).trace() - (x * a).trace()) < 1e-10);
    CHECK(std::abs(px.trace() - x.trace()) < 1e-11);
    CHECK(pinching_inequality_check(a, x) >= -1e-10);
  }
}

TEST_CASE("pinching is idempotent and fixes commuting operators") {
  Rng rng(303);
  const Matrix a = random_hermitian(rng, 4);
  const Matrix x = random_psd(rng, 4);
  const Matrix once = pinch(a, x);
  CHECK(max_abs(pinch(a, once) - once) < 1e-11);
  const Matrix poly = a * a + 0.5 * a + 2.0 * Matrix::Identity(4, 4);
  CHECK(max_abs(pinch(a, poly) - poly) < 1e-10);
}

TEST_CASE("the discrete-Fourier unitary representation reproduces the pinch") {
  Rng rng(304);
  for (int i = 0; i < 10; ++i) {
    const int d = 2 + i % 4;
    const Matrix a = random_hermitian(rng, d);
    const Matrix x = random_hermitian(rng, d);
    CHECK(max_abs(pinch_unitary_rep(a, x) - pinch(a, x)) < 1e-10);
  }
}

TEST_CASE("pinch measure density has the right peak and small-argument series") {
  const double delta = 1.3;
  CHECK(pinch_measure_density(delta, 0.0) ==
        doctest::Approx(delta / (4.0 * std::acos(-1.0))).epsilon(1e-14));
  // The series branch must join the closed form smoothly.
  const double just_below = pinch_measure_density(delta, 1e-4 / delta * 1.999);
  const double just_above = pinch_measure_density(delta, 1e-4 / delta * 2.001);
  CHECK(just_below == doctest::Approx(just_above).epsilon(1e-8));
  CHECK(pinch_measure_density(delta, 2.0) == pinch_measure_density(delta, -2.0));
  CHECK(pinch_measure_density(delta, 50.0) >= 0.0);
}

TEST_CASE("integral representation approximates the pinch within tolerance") {
  Rng rng(305);
  for (int i = 0; i < 5; ++i) {
    const Matrix a = gapped_psd(rng, {0.3, 0.9, 2.1});
    const Matrix x = random_hermitian(rng, 3);
    const PinchIntegralResult res = pinch_integral_rep(a, x, 1e-3);
    CHECK(res.certificate > 0.0);
    CHECK(res.delta > 0.0);
    CHECK(max_abs(res.value - pinch(a, x)) <= res.certificate + 1e-3);
  }
}

TEST_CASE("integral representation rejects unusable spectra") {
  Rng rng(306);
  const Matrix x = random_hermitian(rng, 2);
  CHECK_THROWS(pinch_integral_rep(Matrix::Identity(2, 2), x, 1e-3));
  Matrix indefinite = Matrix::Identity(2, 2);
  indefinite(0, 0) = -1.0;
  CHECK_THROWS(pinch_integral_rep(indefinite, x, 1e-3));
}

TEST_CASE("type-class count is exact and guards overflow") {
  CHECK(spec_count_bound(2, 1) == 2);
  CHECK(spec_count_bound(2, 4) == 5);
  CHECK(spec_count_bound(3, 2) == 6);
  CHECK(spec_count_bound(4, 3) == 20);
  CHECK(spec_count_bound(1, 7) == 1);
  CHECK_THROWS(spec_count_bound(64, 64));
}

TEST_CASE("tensor-power spectra stay within the type-class bound") {
  Rng rng(307);
  const Matrix a = random_psd_spectrum(rng, 2, 0.4, 2.0);
  for (int m = 1; m <= 4; ++m) {
    const RealVector ev = hermitian_eig(kron_power(a, m)).eigenvalues;
    const int distinct = distinct_count(ev, 1e-9);
    CHECK(static_cast<std::uint64_t>(distinct) <= spec_count_bound(2, m));
    // Generic spectra attain the bound exactly.
    CHECK(static_cast<std::uint64_t>(distinct) == spec_count_bound(2, m));
  }
  for (int m = 1; m <= 3; ++m) {
    const RealVector ev = hermitian_eig(kron_power(Matrix::Identity(3, 3), m)).eigenvalues;
    CHECK(static_cast<std::uint64_t>(distinct_count(ev, 1e-9)) <= spec_count_bound(3, m));
  }
}

TEST_CASE("mixture norms exceed mixed norms by at most the type-counting term") {
  Rng rng(308);
  for (int i = 0; i < 10; ++i) {
    const double w = 0.15 + 0.7 * rng.uniform();
    const std::vector<double> weights{w, 1.0 - w};
    const std::vector<Matrix> mats{random_psd(rng, 2), random_psd(rng, 2)};
    for (int m = 1; m <= 3; ++m) {
      const QuasiConvexityReport rep = quasi_convexity_check(0.5, weights, mats, m);
      CHECK(rep.slack >= -1e-9);
      CHECK(rep.rhs == doctest::Approx(rep.rhs_mix + rep.poly_term).epsilon(1e-12));
      CHECK(rep.type_count == spec_count_bound(4, m));
    }
  }
}

TEST_CASE("quasi-convexity check validates weights and exponent") {
  Rng rng(309);
  const std::vector<Matrix> mats{random_psd(rng, 2), random_psd(rng, 2)};
  CHECK_THROWS(quasi_convexity_check(1.5, {0.5, 0.5}, mats, 1));
  CHECK_THROWS(quasi_convexity_check(0.5, {0.6, 0.6}, mats, 1));
  CHECK_THROWS(quasi_convexity_check(0.5, {0.5}, mats, 1));
}

TEST_CASE("tensor-power pinching squeezes the commuting trace value") {
  Rng rng(310);
  const Matrix a = random_psd_spectrum(rng, 2, 0.3, 1.8);
  const Matrix b = random_psd_spectrum(rng, 2, 0.3, 1.8);
  const double direct = std::log((a * b).trace().real());
  double prev_lower = -1e300;
  for (int m = 1; m <= 5; ++m) {
    const TensorPinchRow row = tensor_pinch_gt_demo(a, b, m);
    CHECK(row.value == doctest::Approx(direct).epsilon(1e-9));
    CHECK(row.upper == doctest::Approx(direct).epsilon(1e-12));
    CHECK(row.lower <= row.value + 1e-10);
    CHECK(row.lower >= prev_lower - 1e-10);
    CHECK(row.spec_size <= row.spec_bound);
    prev_lower = row.lower;
  }
}
