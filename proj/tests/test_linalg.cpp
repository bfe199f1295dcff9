#include <cmath>
#include <complex>

#include <doctest.h>

#include "traceineq/linalg.hpp"
#include "traceineq/random_gen.hpp"

using namespace traceineq;

namespace {

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("hermitian_eig reconstructs the input with a unitary basis") {
  Rng rng(101);
  for (int d : {1, 2, 3, 5}) {
    const Matrix a = random_hermitian(rng, d);
    const HermitianEig eig = hermitian_eig(a);
    const Matrix rebuilt = eig.eigenvectors *
                           eig.eigenvalues.cast<Complex>().asDiagonal() *
                           eig.eigenvectors.adjoint();
    CHECK(max_abs(rebuilt - a) < 1e-12);
    CHECK(max_abs(eig.eigenvectors.adjoint() * eig.eigenvectors -
                  Matrix::Identity(d, d)) < 1e-12);
    for (Eigen::Index i = 1; i < eig.eigenvalues.size(); ++i) {
      CHECK(eig.eigenvalues[i] >= eig.eigenvalues[i - 1]);
    }
  }
}

TEST_CASE("complex_power satisfies the basic exponent laws") {
  Rng rng(102);
  const Matrix a = random_psd_spectrum(rng, 4, 0.3, 2.5);
  CHECK(max_abs(complex_power(a, Complex(1.0, 0.0)) - a) < 1e-12);
  const Matrix half = complex_power(a, Complex(0.5, 0.0));
  CHECK(max_abs(half * half - a) < 1e-12);

  // Purely imaginary exponents give unitaries on positive definite input.
  const Matrix u = complex_power(a, Complex(0.0, 0.7));
  CHECK(max_abs(u.adjoint() * u - Matrix::Identity(4, 4)) < 1e-12);

  // Kernel directions stay in the kernel: 0^z = 0.
  Matrix p = Matrix::Zero(2, 2);
  p(1, 1) = 1.0;
  const Matrix pz = complex_power(p, Complex(0.5, 0.3));
  CHECK(std::abs(pz(0, 0)) == 0.0);
  CHECK(std::abs(pz(1, 1) - Complex(1.0, 0.0)) < 1e-15);
}

TEST_CASE("matrix_exp, matrix_log, and the general exponential agree") {
  Rng rng(103);
  const Matrix h = random_hermitian(rng, 4);
  CHECK(max_abs(matrix_exp(h) - matrix_exp_general(h)) < 1e-11);
  const Matrix a = random_psd_spectrum(rng, 4, 0.2, 3.0);
  CHECK(max_abs(matrix_exp(matrix_log(a)) - a) < 1e-11);
  CHECK(max_abs(matrix_log(matrix_exp(h)) - h) < 1e-11);
}

TEST_CASE("abs_value and singular_values describe the polar modulus") {
  Rng rng(104);
  const Matrix l = random_general(rng, 4);
  const Matrix mod = abs_value(l);
  CHECK(max_abs(mod * mod - l.adjoint() * l) < 1e-10);
  const RealVector sv = singular_values(l);
  double trace_norm = 0.0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) trace_norm += sv[i];
  CHECK(std::abs(mod.trace().real() - trace_norm) < 1e-10);
}

TEST_CASE("Schatten norms match direct formulas") {
  Rng rng(105);
  const Matrix l = random_general(rng, 4);
  CHECK(schatten_norm(l, 2.0) == doctest::Approx(l.norm()).epsilon(1e-12));
  const RealVector sv = singular_values(l);
  double nuclear = 0.0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) nuclear += sv[i];
  CHECK(schatten_norm(l, 1.0) == doctest::Approx(nuclear).epsilon(1e-12));
  CHECK(log_schatten_norm(l, 3.0) ==
        doctest::Approx(std::log(schatten_norm(l, 3.0))).epsilon(1e-12));

  RealVector logs(2);
  logs << 0.0, std::log(2.0);
  // p = 1: log(1 + 2); p = 2: log sqrt(1 + 4).
  CHECK(log_schatten_from_log_singulars(logs, 1.0) ==
        doctest::Approx(std::log(3.0)).epsilon(1e-14));
  CHECK(log_schatten_from_log_singulars(logs, 2.0) ==
        doctest::Approx(0.5 * std::log(5.0)).epsilon(1e-14));
}

TEST_CASE("frechet_dlog_divided has the scalar divided-difference entries") {
  Matrix a = Matrix::Zero(2, 2);
  a(0, 0) = 1.0;
  a(1, 1) = std::exp(1.0);
  const Matrix h = Matrix::Ones(2, 2);
  const Matrix d = frechet_dlog_divided(a, h);
  CHECK(d(0, 0).real() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(d(1, 1).real() == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
  // Off-diagonal kernel (log y - log x)/(y - x) at (1, e) is 1/(e - 1).
  CHECK(d(0, 1).real() == doctest::Approx(0.58197670686932645).epsilon(1e-13));
  CHECK(d(1, 0).real() == doctest::Approx(0.58197670686932645).epsilon(1e-13));
}

TEST_CASE("frechet_dlog_divided matches central finite differences") {
  Rng rng(106);
  const Matrix a = random_psd_spectrum(rng, 4, 0.3, 3.0);
  const Matrix h = random_hermitian(rng, 4);
  const Matrix d = frechet_dlog_divided(a, h);
  const double eps = 1e-5;
  const Matrix fd = (matrix_log(a + eps * h) - matrix_log(a - eps * h)) / (2.0 * eps);
  CHECK(max_abs(d - fd) < 1e-7);
}

TEST_CASE("frechet_dexp matches finite differences and the trace identity") {
  Rng rng(107);
  const Matrix h = random_hermitian(rng, 4);
  const Matrix e = random_hermitian(rng, 4);
  const Matrix d = frechet_dexp(h, e);
  const double eps = 1e-5;
  const Matrix fd = (matrix_exp(h + eps * e) - matrix_exp(h - eps * e)) / (2.0 * eps);
  CHECK(max_abs(d - fd) < 1e-7);
  // The trace of the derivative is tr(e^H E) because the divided-difference
  // kernel is symmetric and equals e^x on the diagonal.
  CHECK(d.trace().real() ==
        doctest::Approx(real_trace(matrix_exp(h) * e)).epsilon(1e-10));
}

TEST_CASE("kron and partial_trace are mutually consistent") {
  Rng rng(108);
  const Matrix a = random_hermitian(rng, 2);
  const Matrix b = random_hermitian(rng, 3);
  const Matrix ab = kron(a, b);
  CHECK(ab.rows() == 6);
  CHECK(std::abs(ab(5, 5) - a(1, 1) * b(2, 2)) < 1e-14);
  CHECK(max_abs(partial_trace(ab, 2, 3, 0) - b.trace() * a) < 1e-12);
  CHECK(max_abs(partial_trace(ab, 2, 3, 1) - a.trace() * b) < 1e-12);
  CHECK(std::abs(partial_trace(ab, 2, 3, 0).trace() - ab.trace()) < 1e-12);
  CHECK(max_abs(kron_power(a, 2) - kron(a, a)) == 0.0);
}

TEST_CASE("real_trace rejects complex traces beyond the tolerance") {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = Complex(1.0, 0.5);
  CHECK_THROWS_AS((void)real_trace(m), std::domain_error);
  m(0, 0) = Complex(1.0, 1e-12);
  CHECK(real_trace(m) == doctest::Approx(1.0));
}

TEST_CASE("hermitian_part and skew_part decompose any square matrix") {
  Rng rng(109);
  const Matrix l = random_general(rng, 3);
  const Matrix re = hermitian_part(l);
  const Matrix im = skew_part(l);
  CHECK(max_abs(re - re.adjoint()) < 1e-15);
  CHECK(max_abs(im - im.adjoint()) < 1e-15);
  CHECK(max_abs(re + Complex(0.0, 1.0) * im - l) < 1e-15);
}

TEST_CASE("require_psd accepts psd input and rejects indefinite input") {
  Matrix ok = Matrix::Zero(2, 2);
  ok(0, 0) = 1.0;
  CHECK_NOTHROW(require_psd(ok, "test"));
  Matrix bad = Matrix::Identity(2, 2);
  bad(0, 0) = -0.5;
  CHECK_THROWS_AS(require_psd(bad, "test"), std::invalid_argument);
}
