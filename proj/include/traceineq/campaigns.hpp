#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "traceineq/entropy.hpp"
#include "traceineq/inequalities.hpp"
#include "traceineq/pinching.hpp"

namespace traceineq {

/** %.17g rendering; round-trips IEEE doubles exactly. */
std::string format_double(double v);

/**
 * Seeded randomized verification campaign over one inequality family.
 * family "gt" draws Hermitian tuples, "alt" draws positive definite tuples,
 * "general" draws dense complex tuples. For "general", r = 0 selects the
 * exponential-of-sum variant (its r -> 0 limit) and r in (0, 1) the product
 * form at that interpolation exponent.
 */
struct VerifyConfig {
  std::string family = "gt";
  int n = 3;
  int dim = 3;
  double p = 2.0;
  double r = 0.5;
  int trials = 50;
  std::uint64_t seed = 0;
  double tol = 1e-8;
  double quad_tol = 1e-10;
};

struct VerifyRow {
  std::uint64_t seed = 0;  // per-trial derived seed
  int instance = 0;
  double lhs = 0.0;
  double rhs = 0.0;
  double gap = 0.0;
  double quad_error = 0.0;
  bool violation = false;
};

struct VerifyCampaign {
  VerifyConfig config;
  std::vector<VerifyRow> rows;  // ordered by trial index
  int violation_count = 0;
  nlohmann::json first_violation;  // null when clean
};

/** Regenerates the matrix tuple of one trial; shared by runs and replays. */
std::vector<Matrix> verify_instance(const VerifyConfig& config, int instance);

VerifyCampaign run_verify(const VerifyConfig& config);

/** CSV `seed,instance,lhs,rhs,gap,quad_error`. */
std::string verify_csv(const VerifyCampaign& campaign);

struct RecoverabilityConfig {
  int dim_a = 2;
  int dim_b = 2;
  int trials = 100;
  std::uint64_t seed = 0;
  double tol = 1e-7;
  double quad_tol = 1e-8;
};

struct RecoverabilityRow {
  std::uint64_t seed = 0;
  int instance = 0;
  MonotonicityReport report;
  bool violation = false;
};

struct RecoverabilityCampaign {
  RecoverabilityConfig config;
  std::vector<RecoverabilityRow> rows;
  int violation_count = 0;
  nlohmann::json first_violation;
};

RecoverabilityCampaign run_recoverability(const RecoverabilityConfig& config);

/** CSV `seed,Delta,DM,negLogF,appF_lower,appF_upper,converged`. */
std::string recoverability_csv(const RecoverabilityCampaign& campaign);

struct TripleRow {
  std::uint64_t seed = 0;
  int instance = 0;
  int dim = 0;
  double lieb = 0.0;
  double ours = 0.0;
  double abs_diff = 0.0;
};

struct TripleCampaign {
  std::vector<TripleRow> rows;
  double max_abs_diff = 0.0;
  int argmax_instance = 0;
};

/** Regenerates the Hermitian triple of one trial (dimension cycles 2..5). */
std::vector<Matrix> triple_instance(std::uint64_t master, int instance);

/**
 * Compares the resolvent-kernel triple term against its rotation-averaged
 * form on random Hermitian triples, cycling the dimension through 2..5.
 */
TripleCampaign run_triple_equivalence(int trials, std::uint64_t seed);

/** CSV `seed,instance,dim,lieb,ours,abs_diff`. */
std::string triple_csv(const TripleCampaign& campaign);

/** CSV `t,beta` on the closed grid tmin + k step; theta = 1 is rejected. */
std::string beta_table_csv(double theta, double tmin, double tmax, double step);

/** CSV `t,gamma,kappa`. */
std::string counterexample_csv(const CounterexampleReport& report);

/** Regenerates the positive definite pair used by the squeeze demo. */
std::pair<Matrix, Matrix> pinch_demo_instance(int dim, std::uint64_t seed);

/** Squeeze rows for one seeded positive definite pair, m = 1..m_max. */
std::vector<TensorPinchRow> run_pinch_demo(int dim, int m_max, std::uint64_t seed);

/** CSV `m,value,lower,upper`. */
std::string pinch_demo_csv(const std::vector<TensorPinchRow>& rows);

}  // namespace traceineq
