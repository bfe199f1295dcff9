// Compares the serial and parallel execution paths of the two hot kernels
// (trial-level campaign evaluation and node-level quadrature averaging) and
// checks that both paths produce bitwise identical results.

#include <chrono>
#include <cstdio>
#include <cstring>
#include <vector>

#include "traceineq/beta_density.hpp"
#include "traceineq/entropy.hpp"
#include "traceineq/inequalities.hpp"
#include "traceineq/parallel.hpp"
#include "traceineq/random_gen.hpp"

namespace {

using Clock = std::chrono::steady_clock;

template <class Fn>
double time_ms(Fn&& fn) {
  const auto start = Clock::now();
  fn();
  const auto stop = Clock::now();
  return std::chrono::duration<double, std::milli>(stop - start).count();
}

bool bitwise_equal(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() &&
         std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

bool bitwise_equal(const traceineq::Matrix& a, const traceineq::Matrix& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() &&
         std::memcmp(a.data(), b.data(),
                     static_cast<std::size_t>(a.size()) * sizeof(traceineq::Complex)) == 0;
}

}  // namespace

int main() {
  using namespace traceineq;

  std::printf("worker cap: %d thread(s)\n", par::max_threads());
  std::printf("%-28s %12s %12s %9s %10s\n", "workload", "serial_ms", "parallel_ms", "speedup",
              "identical");

  bool all_identical = true;

  {
    // Trial-level parallelism: 48 independent inequality evaluations.
    constexpr int kTrials = 48;
    constexpr int kTupleSize = 4;
    constexpr int kDim = 6;
    const QuadratureRule quad = make_quadrature(0.0, 1e-10);
    std::vector<std::vector<Matrix>> tuples(kTrials);
    for (int i = 0; i < kTrials; ++i) {
      Rng rng(derive_seed(11, static_cast<std::uint64_t>(i)));
      for (int k = 0; k < kTupleSize; ++k) tuples[i].push_back(random_hermitian(rng, kDim));
    }
    const auto sweep = [&](bool parallel, std::vector<double>& gaps) {
      gaps.assign(kTrials, 0.0);
      par::for_index(
          kTrials, [&](std::size_t i) { gaps[i] = gt_multi(tuples[i], 2.0, quad).gap; },
          parallel);
    };
    std::vector<double> serial_gaps, parallel_gaps;
    sweep(false, serial_gaps);  // warm caches before timing
    const double serial_ms = time_ms([&] { sweep(false, serial_gaps); });
    const double parallel_ms = time_ms([&] { sweep(true, parallel_gaps); });
    const bool same = bitwise_equal(serial_gaps, parallel_gaps);
    all_identical = all_identical && same;
    std::printf("%-28s %12.2f %12.2f %8.2fx %10s\n", "campaign trials", serial_ms, parallel_ms,
                serial_ms / parallel_ms, same ? "yes" : "NO");
  }

  {
    // Node-level parallelism: one rotation average over the quadrature nodes.
    constexpr int kDimA = 3;
    constexpr int kDimB = 4;
    Rng rng(derive_seed(12, 0));
    const Matrix sigma_ab = random_density(rng, kDimA * kDimB);
    const Matrix x_a = partial_trace(random_density(rng, kDimA * kDimB), kDimA, kDimB, 0);
    const HermitianEig eig_ab = hermitian_eig(sigma_ab);
    const HermitianEig eig_a = hermitian_eig(partial_trace(sigma_ab, kDimA, kDimB, 0));
    const Matrix id_b = Matrix::Identity(kDimB, kDimB);
    const auto recover_at = [&](double t) {
      const Complex z(0.5, 0.5 * t);
      const Matrix inner = complex_power(eig_a, -z) * x_a * complex_power(eig_a, -std::conj(z));
      return Matrix(complex_power(eig_ab, z) * kron(inner, id_b) *
                    complex_power(eig_ab, std::conj(z)));
    };
    const QuadratureRule quad = make_quadrature(0.0, 2e-14);
    Matrix serial_avg, parallel_avg;
    serial_avg = integrate_beta_matrix(quad, recover_at, false).value;  // warm caches
    const double serial_ms =
        time_ms([&] { serial_avg = integrate_beta_matrix(quad, recover_at, false).value; });
    const double parallel_ms =
        time_ms([&] { parallel_avg = integrate_beta_matrix(quad, recover_at, true).value; });
    const bool same = bitwise_equal(serial_avg, parallel_avg);
    all_identical = all_identical && same;
    std::printf("%-28s %12.2f %12.2f %8.2fx %10s\n", "quadrature nodes", serial_ms, parallel_ms,
                serial_ms / parallel_ms, same ? "yes" : "NO");
  }

  if (!all_identical) {
    std::printf("serial and parallel paths disagree\n");
    return 1;
  }
  return 0;
}
