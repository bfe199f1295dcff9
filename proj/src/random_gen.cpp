#include "traceineq/random_gen.hpp"

#include <cmath>
#include <numbers>

namespace traceineq {

double Rng::uniform() {
  // 53 uniformly distributed mantissa bits in [0, 1)
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::gaussian() {
  if (has_cached_) {
    has_cached_ = false;
    return cached_;
  }
  // Box-Muller; 1 - u keeps the log argument inside (0, 1]
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  cached_ = radius * std::sin(angle);
  has_cached_ = true;
  return radius * std::cos(angle);
}

Complex Rng::complex_gaussian() {
  const double re = gaussian();
  const double im = gaussian();
  return {re, im};
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace {

Matrix ginibre(Rng& rng, int dim) {
  Matrix g(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      g(i, j) = rng.complex_gaussian();
    }
  }
  return g;
}

}  // namespace

Matrix random_hermitian(Rng& rng, int dim, double scale) {
  const Matrix g = ginibre(rng, dim);
  return scale * hermitian_part(g);
}

Matrix random_psd(Rng& rng, int dim) {
  const Matrix g = ginibre(rng, dim);
  return g * g.adjoint();
}

Matrix random_psd_spectrum(Rng& rng, int dim, double lambda_min, double lambda_max) {
  const Matrix u = random_unitary(rng, dim);
  RealVector ev(dim);
  for (int i = 0; i < dim; ++i) {
    ev[i] = lambda_min + (lambda_max - lambda_min) * rng.uniform();
  }
  return u * ev.cast<Complex>().asDiagonal() * u.adjoint();
}

Matrix random_unitary(Rng& rng, int dim) {
  const Matrix g = ginibre(rng, dim);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // fix the phase ambiguity of QR so the distribution is Haar
  for (int j = 0; j < dim; ++j) {
    const Complex rjj = r(j, j);
    const double mag = std::abs(rjj);
    q.col(j) *= (mag > 0.0) ? rjj / mag : Complex(1.0, 0.0);
  }
  return q;
}

Matrix random_density(Rng& rng, int dim) {
  const Matrix w = random_psd(rng, dim);
  return w / w.trace().real();
}

Matrix random_general(Rng& rng, int dim, double scale) {
  return scale * ginibre(rng, dim);
}

std::vector<Matrix> random_kraus(Rng& rng, int dim, int kraus_rank) {
  // Haar isometry dim -> dim * kraus_rank from the QR of a tall Ginibre block
  Matrix g(dim * kraus_rank, dim);
  for (int i = 0; i < g.rows(); ++i) {
    for (int j = 0; j < g.cols(); ++j) {
      g(i, j) = rng.complex_gaussian();
    }
  }
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = Matrix(qr.householderQ()).leftCols(dim);
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < dim; ++j) {
    const Complex rjj = r(j, j);
    const double mag = std::abs(rjj);
    q.col(j) *= (mag > 0.0) ? rjj / mag : Complex(1.0, 0.0);
  }
  // row blocks of an isometry satisfy sum_e K_e^dag K_e = q^dag q = id,
  // which is exactly Kraus completeness
  std::vector<Matrix> kraus(kraus_rank);
  for (int e = 0; e < kraus_rank; ++e) {
    kraus[e] = q.middleRows(e * dim, dim);
  }
  return kraus;
}

}  // namespace traceineq
