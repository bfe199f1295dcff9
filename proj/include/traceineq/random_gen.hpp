#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "traceineq/linalg.hpp"

namespace traceineq {

/**
 * Deterministic random source for test instances. Gaussians come from a
 * hand-rolled Box-Muller over mt19937_64 uniforms rather than
 * std::normal_distribution, whose output sequence is implementation-defined;
 * this keeps seeded runs byte-identical across standard libraries.
 */
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /** Uniform double in [0, 1). */
  double uniform();
  /** Standard normal variate. */
  double gaussian();
  /** Complex variate with independent N(0,1) real and imaginary parts. */
  Complex complex_gaussian();
  std::uint64_t raw() { return engine_(); }

 private:
  std::mt19937_64 engine_;
  double cached_ = 0.0;
  bool has_cached_ = false;
};

/** Per-trial seed derived from a master seed; splitmix64 finalizer mix. */
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

/** GUE-style Hermitian matrix (G + G^dag)/2 scaled entrywise by `scale`. */
Matrix random_hermitian(Rng& rng, int dim, double scale = 1.0);

/** Wishart matrix G G^dag; positive semi-definite, full rank almost surely. */
Matrix random_psd(Rng& rng, int dim);

/**
 * Positive definite matrix with eigenvalues drawn uniformly from
 * [lambda_min, lambda_max] and Haar-random eigenbasis; bounds the condition
 * number for operations that amplify inverse powers.
 */
Matrix random_psd_spectrum(Rng& rng, int dim, double lambda_min, double lambda_max);

/** Haar-distributed unitary via QR of a Ginibre matrix with phase fix. */
Matrix random_unitary(Rng& rng, int dim);

/** Normalized Wishart density operator (GUE-square, unit trace). */
Matrix random_density(Rng& rng, int dim);

/** Dense complex matrix with independent Gaussian entries times `scale`. */
Matrix random_general(Rng& rng, int dim, double scale = 1.0);

/**
 * Kraus operators of a random channel dim -> dim obtained from a Haar-random
 * isometry truncated to the given Kraus rank.
 */
std::vector<Matrix> random_kraus(Rng& rng, int dim, int kraus_rank = 2);

}  // namespace traceineq
