#include "traceineq/campaigns.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "traceineq/beta_density.hpp"
#include "traceineq/matrix_json.hpp"
#include "traceineq/parallel.hpp"
#include "traceineq/random_gen.hpp"

namespace traceineq {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return std::string(buf);
}

namespace {

/** Closed-grid row count matching tmin + k step sweeps elsewhere. */
int grid_count(double tmin, double tmax, double step) {
  if (!(step > 0.0) || tmax < tmin) {
    throw std::invalid_argument("grid: need step > 0 and tmax >= tmin");
  }
  return static_cast<int>(std::floor((tmax - tmin) / step + 0.5)) + 1;
}

/** Runs fn over [0, count) in parallel slots, rethrowing the first failure. */
template <class Fn>
void run_trials(int count, Fn&& fn) {
  std::vector<std::string> errors(static_cast<std::size_t>(count));
  par::for_index(static_cast<std::size_t>(count), [&](std::size_t i) {
    try {
      fn(static_cast<int>(i));
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  });
  for (int i = 0; i < count; ++i) {
    if (!errors[static_cast<std::size_t>(i)].empty()) {
      throw std::runtime_error("trial " + std::to_string(i) + ": " +
                               errors[static_cast<std::size_t>(i)]);
    }
  }
}

void validate_verify_config(const VerifyConfig& config) {
  if (config.family != "gt" && config.family != "alt" && config.family != "general") {
    throw std::invalid_argument("verify: family must be gt, alt, or general");
  }
  if (config.n < 2 || config.dim < 1 || config.trials < 1) {
    throw std::invalid_argument("verify: need n >= 2, dim >= 1, trials >= 1");
  }
  if (!(config.p >= 1.0)) {
    throw std::invalid_argument("verify: need p >= 1");
  }
  if (!(config.tol > 0.0)) {
    throw std::invalid_argument("verify: need tol > 0");
  }
  if (config.family == "alt" && !(config.r > 0.0 && config.r <= 1.0)) {
    throw std::invalid_argument("verify alt: need r in (0, 1]");
  }
  if (config.family == "general" && !(config.r >= 0.0 && config.r < 1.0)) {
    throw std::invalid_argument("verify general: need r in [0, 1)");
  }
}

nlohmann::json violation_json(const VerifyConfig& config, const VerifyRow& row,
                              const std::vector<Matrix>& ms) {
  nlohmann::json j;
  j["subcommand"] = "verify";
  j["family"] = config.family;
  j["n"] = config.n;
  j["dim"] = config.dim;
  j["p"] = config.p;
  j["r"] = config.r;
  j["tol"] = config.tol;
  j["quad_tol"] = config.quad_tol;
  j["master_seed"] = config.seed;
  j["instance"] = row.instance;
  j["trial_seed"] = row.seed;
  j["lhs"] = row.lhs;
  j["rhs"] = row.rhs;
  j["gap"] = row.gap;
  j["quad_error"] = row.quad_error;
  nlohmann::json arr = nlohmann::json::array();
  for (const Matrix& m : ms) arr.push_back(matrix_to_json(m));
  j["matrices"] = arr;
  return j;
}

}  // namespace

std::vector<Matrix> verify_instance(const VerifyConfig& config, int instance) {
  Rng rng(derive_seed(config.seed, static_cast<std::uint64_t>(instance)));
  std::vector<Matrix> ms;
  ms.reserve(static_cast<std::size_t>(config.n));
  for (int k = 0; k < config.n; ++k) {
    if (config.family == "gt") {
      ms.push_back(random_hermitian(rng, config.dim));
    } else if (config.family == "alt") {
      // Bounded spectrum keeps complex powers well conditioned across trials.
      ms.push_back(random_psd_spectrum(rng, config.dim, 0.1, 3.0));
    } else {
      ms.push_back(random_general(rng, config.dim, 0.75));
    }
  }
  return ms;
}

VerifyCampaign run_verify(const VerifyConfig& config) {
  validate_verify_config(config);
  VerifyCampaign campaign;
  campaign.config = config;
  campaign.rows.resize(static_cast<std::size_t>(config.trials));
  campaign.first_violation = nullptr;

  const double theta = config.family == "gt" ? 0.0
                       : config.family == "alt" ? config.r
                                                : (config.r == 0.0 ? 0.0 : config.r);
  const QuadratureRule quad = make_quadrature(theta, config.quad_tol);

  run_trials(config.trials, [&](int i) {
    const std::vector<Matrix> ms = verify_instance(config, i);
    InequalityReport rep;
    if (config.family == "gt") {
      rep = gt_multi(ms, config.p, quad);
    } else if (config.family == "alt") {
      rep = alt_multi(ms, config.p, config.r, quad);
    } else if (config.r == 0.0) {
      rep = gt_general(ms, config.p, quad);
    } else {
      rep = alt_general(ms, config.p, config.r, quad);
    }
    VerifyRow row;
    row.seed = derive_seed(config.seed, static_cast<std::uint64_t>(i));
    row.instance = i;
    row.lhs = rep.lhs_log;
    row.rhs = rep.rhs_log;
    row.gap = rep.gap;
    row.quad_error = rep.quad_error;
    row.violation = rep.gap < -(config.tol + rep.quad_error);
    campaign.rows[static_cast<std::size_t>(i)] = row;
  });

  for (const VerifyRow& row : campaign.rows) {
    if (!row.violation) continue;
    ++campaign.violation_count;
    if (campaign.first_violation.is_null()) {
      campaign.first_violation =
          violation_json(config, row, verify_instance(config, row.instance));
    }
  }
  return campaign;
}

std::string verify_csv(const VerifyCampaign& campaign) {
  std::ostringstream out;
  out << "seed,instance,lhs,rhs,gap,quad_error\n";
  for (const VerifyRow& row : campaign.rows) {
    out << row.seed << ',' << row.instance << ',' << format_double(row.lhs) << ','
        << format_double(row.rhs) << ',' << format_double(row.gap) << ','
        << format_double(row.quad_error) << '\n';
  }
  return out.str();
}

RecoverabilityCampaign run_recoverability(const RecoverabilityConfig& config) {
  if (config.dim_a < 2 || config.dim_b < 2 || config.trials < 1) {
    throw std::invalid_argument("recoverability: need dimA >= 2, dimB >= 2, trials >= 1");
  }
  if (!(config.tol > 0.0) || !(config.quad_tol > 0.0)) {
    throw std::invalid_argument("recoverability: need tol > 0 and quad-tol > 0");
  }
  RecoverabilityCampaign campaign;
  campaign.config = config;
  campaign.rows.resize(static_cast<std::size_t>(config.trials));
  campaign.first_violation = nullptr;

  const QuadratureRule quad = make_quadrature(0.0, config.quad_tol);
  const int d = config.dim_a * config.dim_b;

  run_trials(config.trials, [&](int i) {
    Rng rng(derive_seed(config.seed, static_cast<std::uint64_t>(i)));
    const Matrix rho = random_density(rng, d);
    const Matrix sigma = random_density(rng, d);
    RecoverabilityRow row;
    row.seed = derive_seed(config.seed, static_cast<std::uint64_t>(i));
    row.instance = i;
    row.report = strengthened_monotonicity_report(rho, sigma, config.dim_a, config.dim_b, quad);
    const MonotonicityReport& rep = row.report;
    const double slack = std::max(config.tol, rep.tol);
    row.violation = !rep.infinite &&
                    (rep.delta < rep.dm_estimate - slack || rep.delta < rep.neg_log_f - slack ||
                     rep.delta < rep.lower_beta_f - slack || rep.delta > rep.upper_beta_d2 + slack);
    campaign.rows[static_cast<std::size_t>(i)] = row;
  });

  for (const RecoverabilityRow& row : campaign.rows) {
    if (!row.violation) continue;
    ++campaign.violation_count;
    if (campaign.first_violation.is_null()) {
      Rng rng(derive_seed(config.seed, static_cast<std::uint64_t>(row.instance)));
      const Matrix rho = random_density(rng, d);
      const Matrix sigma = random_density(rng, d);
      nlohmann::json j;
      j["subcommand"] = "recoverability";
      j["dimA"] = config.dim_a;
      j["dimB"] = config.dim_b;
      j["tol"] = config.tol;
      j["quad_tol"] = config.quad_tol;
      j["master_seed"] = config.seed;
      j["instance"] = row.instance;
      j["trial_seed"] = row.seed;
      j["Delta"] = row.report.delta;
      j["DM"] = row.report.dm_estimate;
      j["negLogF"] = row.report.neg_log_f;
      j["appF_lower"] = row.report.lower_beta_f;
      j["appF_upper"] = row.report.upper_beta_d2;
      j["rho"] = matrix_to_json(rho);
      j["sigma"] = matrix_to_json(sigma);
      campaign.first_violation = j;
    }
  }
  return campaign;
}

std::string recoverability_csv(const RecoverabilityCampaign& campaign) {
  std::ostringstream out;
  out << "seed,Delta,DM,negLogF,appF_lower,appF_upper,converged\n";
  for (const RecoverabilityRow& row : campaign.rows) {
    out << row.seed << ',' << format_double(row.report.delta) << ','
        << format_double(row.report.dm_estimate) << ',' << format_double(row.report.neg_log_f)
        << ',' << format_double(row.report.lower_beta_f) << ','
        << format_double(row.report.upper_beta_d2) << ','
        << (row.report.dm_converged ? 1 : 0) << '\n';
  }
  return out.str();
}

std::vector<Matrix> triple_instance(std::uint64_t master, int instance) {
  const int dim = 2 + instance % 4;
  Rng rng(derive_seed(master, static_cast<std::uint64_t>(instance)));
  std::vector<Matrix> hs;
  hs.reserve(3);
  for (int k = 0; k < 3; ++k) hs.push_back(random_hermitian(rng, dim));
  return hs;
}

TripleCampaign run_triple_equivalence(int trials, std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("triple-equivalence: need trials >= 1");
  TripleCampaign campaign;
  campaign.rows.resize(static_cast<std::size_t>(trials));
  // The rotated average certifies tail * sup(integrand); the integrand grows
  // like a product of three matrix exponentials, so the rule is built tight
  // enough that the certificate stays far below the 1e-6 agreement budget.
  const QuadratureRule quad = make_quadrature(0.0, 1e-13);

  run_trials(trials, [&](int i) {
    TripleRow row;
    row.seed = derive_seed(seed, static_cast<std::uint64_t>(i));
    row.instance = i;
    row.dim = 2 + i % 4;
    const std::vector<Matrix> hs = triple_instance(seed, i);
    row.lieb = lieb_triple_rhs(hs[0], hs[1], hs[2]);
    row.ours = our_gt3_rhs(hs[0], hs[1], hs[2], quad);
    row.abs_diff = std::abs(row.lieb - row.ours);
    campaign.rows[static_cast<std::size_t>(i)] = row;
  });

  for (std::size_t i = 0; i < campaign.rows.size(); ++i) {
    if (campaign.rows[i].abs_diff > campaign.max_abs_diff) {
      campaign.max_abs_diff = campaign.rows[i].abs_diff;
      campaign.argmax_instance = static_cast<int>(i);
    }
  }
  return campaign;
}

std::string triple_csv(const TripleCampaign& campaign) {
  std::ostringstream out;
  out << "seed,instance,dim,lieb,ours,abs_diff\n";
  for (const TripleRow& row : campaign.rows) {
    out << row.seed << ',' << row.instance << ',' << row.dim << ',' << format_double(row.lieb)
        << ',' << format_double(row.ours) << ',' << format_double(row.abs_diff) << '\n';
  }
  return out.str();
}

std::string beta_table_csv(double theta, double tmin, double tmax, double step) {
  if (!(theta >= 0.0) || theta >= 1.0) {
    throw std::invalid_argument("beta-table: need theta in [0, 1); theta = 1 is a point mass");
  }
  const int count = grid_count(tmin, tmax, step);
  std::ostringstream out;
  out << "t,beta\n";
  for (int k = 0; k < count; ++k) {
    const double t = tmin + static_cast<double>(k) * step;
    out << format_double(t) << ',' << format_double(beta_density(theta, t)) << '\n';
  }
  return out.str();
}

std::string counterexample_csv(const CounterexampleReport& report) {
  std::ostringstream out;
  out << "t,gamma,kappa\n";
  for (const CounterexampleRow& row : report.rows) {
    out << format_double(row.t) << ',' << format_double(row.gamma) << ','
        << format_double(row.kappa) << '\n';
  }
  return out.str();
}

std::pair<Matrix, Matrix> pinch_demo_instance(int dim, std::uint64_t seed) {
  Rng rng(derive_seed(seed, 0));
  Matrix a = random_psd_spectrum(rng, dim, 0.2, 2.0);
  Matrix b = random_psd_spectrum(rng, dim, 0.2, 2.0);
  return {std::move(a), std::move(b)};
}

std::vector<TensorPinchRow> run_pinch_demo(int dim, int m_max, std::uint64_t seed) {
  if (dim < 2 || m_max < 1) {
    throw std::invalid_argument("pinch-demo: need dim >= 2 and m >= 1");
  }
  const auto [a, b] = pinch_demo_instance(dim, seed);
  std::vector<TensorPinchRow> rows;
  rows.reserve(static_cast<std::size_t>(m_max));
  for (int m = 1; m <= m_max; ++m) {
    rows.push_back(tensor_pinch_gt_demo(a, b, m));
  }
  return rows;
}

std::string pinch_demo_csv(const std::vector<TensorPinchRow>& rows) {
  std::ostringstream out;
  out << "m,value,lower,upper\n";
  for (const TensorPinchRow& row : rows) {
    out << row.m << ',' << format_double(row.value) << ',' << format_double(row.lower) << ','
        << format_double(row.upper) << '\n';
  }
  return out.str();
}

}  // namespace traceineq
