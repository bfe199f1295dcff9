#include <cstdint>
#include <exception>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "traceineq/campaigns.hpp"
#include "traceineq/matrix_json.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitConfig = 2;

/** CSV goes to the output file when given, otherwise to stdout. */
void emit_csv(const std::string& csv, const std::string& output_path) {
  if (output_path.empty()) {
    std::cout << csv;
    return;
  }
  std::ofstream out(output_path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot open output file: " + output_path);
  out << csv;
  out.flush();
  if (!out) throw std::invalid_argument("failed writing output file: " + output_path);
}

/** Violation dumps go to stderr so stdout stays pure CSV. */
void emit_violation(const nlohmann::json& j) { std::cerr << j.dump(2) << '\n'; }

struct BetaTableArgs {
  double theta = 0.0;
  double tmin = -2.0;
  double tmax = 2.0;
  double step = 0.05;
  std::string output;
};

struct CounterexampleArgs {
  int set = 1;
  double tmin = -2.0;
  double tmax = 2.0;
  double step = 0.05;
  double tol = 1e-8;
  std::string output;
};

struct TripleArgs {
  int trials = 100;
  std::uint64_t seed = 0;
  double tol = 1e-6;
  std::string output;
};

struct PinchDemoArgs {
  int dim = 2;
  int m = 4;
  std::uint64_t seed = 0;
  double tol = 1e-8;
  std::string output;
};

int run_beta_table(const BetaTableArgs& args) {
  emit_csv(traceineq::beta_table_csv(args.theta, args.tmin, args.tmax, args.step), args.output);
  return kExitOk;
}

int run_verify_cmd(const traceineq::VerifyConfig& config, const std::string& output) {
  const traceineq::VerifyCampaign campaign = traceineq::run_verify(config);
  emit_csv(traceineq::verify_csv(campaign), output);
  std::cerr << "verify " << config.family << ": " << campaign.rows.size() << " trials, "
            << campaign.violation_count << " violations\n";
  if (campaign.violation_count > 0) {
    emit_violation(campaign.first_violation);
    return kExitViolation;
  }
  return kExitOk;
}

int run_counterexample(const CounterexampleArgs& args) {
  const traceineq::CounterexampleReport report =
      traceineq::counterexample_report(args.set, args.tmin, args.tmax, args.step);
  emit_csv(traceineq::counterexample_csv(report), args.output);
  std::cerr << "counterexample set " << report.which
            << ": kappa=" << traceineq::format_double(report.kappa)
            << " beta0_average=" << traceineq::format_double(report.xi)
            << " quad_error=" << traceineq::format_double(report.quad_error) << '\n';
  // The rotation average must dominate kappa; a deficit is a violation.
  if (report.kappa > report.xi + args.tol + report.quad_error) {
    nlohmann::json j;
    j["subcommand"] = "counterexample";
    j["set"] = report.which;
    j["kappa"] = report.kappa;
    j["beta0_average"] = report.xi;
    j["quad_error"] = report.quad_error;
    j["tol"] = args.tol;
    nlohmann::json arr = nlohmann::json::array();
    for (const traceineq::Matrix& m : traceineq::counterexample_matrices(report.which)) {
      arr.push_back(traceineq::matrix_to_json(m));
    }
    j["matrices"] = arr;
    emit_violation(j);
    return kExitViolation;
  }
  return kExitOk;
}

int run_triple(const TripleArgs& args) {
  const traceineq::TripleCampaign campaign =
      traceineq::run_triple_equivalence(args.trials, args.seed);
  emit_csv(traceineq::triple_csv(campaign), args.output);
  std::cerr << "triple-equivalence: max |lieb - ours| = "
            << traceineq::format_double(campaign.max_abs_diff) << " over " << args.trials
            << " trials\n";
  if (campaign.max_abs_diff > args.tol) {
    const traceineq::TripleRow& row =
        campaign.rows[static_cast<std::size_t>(campaign.argmax_instance)];
    nlohmann::json j;
    j["subcommand"] = "triple-equivalence";
    j["master_seed"] = args.seed;
    j["instance"] = row.instance;
    j["trial_seed"] = row.seed;
    j["dim"] = row.dim;
    j["lieb"] = row.lieb;
    j["ours"] = row.ours;
    j["abs_diff"] = row.abs_diff;
    j["tol"] = args.tol;
    nlohmann::json arr = nlohmann::json::array();
    for (const traceineq::Matrix& m : traceineq::triple_instance(args.seed, row.instance)) {
      arr.push_back(traceineq::matrix_to_json(m));
    }
    j["matrices"] = arr;
    emit_violation(j);
    return kExitViolation;
  }
  return kExitOk;
}

int run_pinch_demo_cmd(const PinchDemoArgs& args) {
  const std::vector<traceineq::TensorPinchRow> rows =
      traceineq::run_pinch_demo(args.dim, args.m, args.seed);
  emit_csv(traceineq::pinch_demo_csv(rows), args.output);
  for (const traceineq::TensorPinchRow& row : rows) {
    if (row.value < row.lower - args.tol || row.value > row.upper + args.tol) {
      const auto [a, b] = traceineq::pinch_demo_instance(args.dim, args.seed);
      nlohmann::json j;
      j["subcommand"] = "pinch-demo";
      j["dim"] = args.dim;
      j["seed"] = args.seed;
      j["m"] = row.m;
      j["value"] = row.value;
      j["lower"] = row.lower;
      j["upper"] = row.upper;
      j["tol"] = args.tol;
      j["a"] = traceineq::matrix_to_json(a);
      j["b"] = traceineq::matrix_to_json(b);
      emit_violation(j);
      return kExitViolation;
    }
  }
  return kExitOk;
}

int run_recoverability_cmd(const traceineq::RecoverabilityConfig& config,
                           const std::string& output) {
  const traceineq::RecoverabilityCampaign campaign = traceineq::run_recoverability(config);
  emit_csv(traceineq::recoverability_csv(campaign), output);
  std::cerr << "recoverability: " << campaign.rows.size() << " trials, "
            << campaign.violation_count << " violations\n";
  if (campaign.violation_count > 0) {
    emit_violation(campaign.first_violation);
    return kExitViolation;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Randomized verification and figure-data emission for matrix trace\n"
      "inequalities, spectral pinching, and entropy recovery bounds.\n"
      "All logarithms, entropies, and divergences use the natural logarithm\n"
      "(values in nats). CSV artifacts carry 17 significant digits and are\n"
      "byte-identical for identical configuration and seed.\n"
      "Exit codes: 0 all contracts satisfied; 1 violation found, with the\n"
      "offending instance dumped as JSON on stderr; 2 configuration error.\n"
      "TRACE_INEQ_THREADS sets the worker count for trial parallelism;\n"
      "output bytes do not depend on it."};
  app.require_subcommand(1);

  BetaTableArgs beta_args;
  CLI::App* beta = app.add_subcommand(
      "beta-table", "Emit CSV t,beta of the interpolation density beta_theta");
  beta->add_option("--theta", beta_args.theta, "Density parameter in [0,1)")
      ->capture_default_str();
  beta->add_option("--tmin", beta_args.tmin, "Grid start")->capture_default_str();
  beta->add_option("--tmax", beta_args.tmax, "Grid end")->capture_default_str();
  beta->add_option("--step", beta_args.step, "Grid step, > 0")->capture_default_str();
  beta->add_option("--output", beta_args.output, "CSV file path (default: stdout)");

  traceineq::VerifyConfig verify_config;
  std::string verify_output;
  CLI::App* verify = app.add_subcommand(
      "verify",
      "Seeded randomized campaign: CSV seed,instance,lhs,rhs,gap,quad_error per trial");
  verify->add_option("family", verify_config.family, "Inequality family: gt, alt, or general")
      ->required()
      ->check(CLI::IsMember({"gt", "alt", "general"}));
  verify->add_option("--n", verify_config.n, "Matrices per tuple, >= 2")->capture_default_str();
  verify->add_option("--dim", verify_config.dim, "Matrix dimension")->capture_default_str();
  verify->add_option("--p", verify_config.p, "Schatten exponent, >= 1")->capture_default_str();
  verify
      ->add_option("--r", verify_config.r,
                   "Interpolation exponent: alt needs (0,1]; general needs [0,1), where 0 "
                   "selects the exponential-of-sum variant; ignored by gt")
      ->capture_default_str();
  verify->add_option("--trials", verify_config.trials, "Trial count")->capture_default_str();
  verify->add_option("--seed", verify_config.seed, "Master seed")->capture_default_str();
  verify->add_option("--tol", verify_config.tol, "Violation slack beyond quadrature error")
      ->capture_default_str();
  verify->add_option("--quad-tol", verify_config.quad_tol, "Quadrature tolerance")
      ->capture_default_str();
  verify->add_option("--output", verify_output, "CSV file path (default: stdout)");

  CounterexampleArgs ce_args;
  CLI::App* ce = app.add_subcommand(
      "counterexample", "Emit CSV t,gamma,kappa for a built-in positive definite triple");
  ce->add_option("--set", ce_args.set, "Which triple: 1 or 2")
      ->required()
      ->check(CLI::IsMember({1, 2}));
  ce->add_option("--tmin", ce_args.tmin, "Grid start")->capture_default_str();
  ce->add_option("--tmax", ce_args.tmax, "Grid end")->capture_default_str();
  ce->add_option("--step", ce_args.step, "Grid step, > 0")->capture_default_str();
  ce->add_option("--tol", ce_args.tol, "Slack for the averaged-dominance check")
      ->capture_default_str();
  ce->add_option("--output", ce_args.output, "CSV file path (default: stdout)");

  TripleArgs triple_args;
  CLI::App* triple = app.add_subcommand(
      "triple-equivalence",
      "Compare the resolvent-kernel triple term against its rotation average");
  triple->add_option("--trials", triple_args.trials, "Trial count")->capture_default_str();
  triple->add_option("--seed", triple_args.seed, "Master seed")->capture_default_str();
  triple->add_option("--tol", triple_args.tol, "Max allowed |lieb - ours|")
      ->capture_default_str();
  triple->add_option("--output", triple_args.output, "CSV file path (default: stdout)");

  PinchDemoArgs pinch_args;
  CLI::App* pinch = app.add_subcommand(
      "pinch-demo", "Emit CSV m,value,lower,upper for the tensor-power pinching squeeze");
  pinch->add_option("--dim", pinch_args.dim, "Base dimension, >= 2")->capture_default_str();
  pinch->add_option("--m", pinch_args.m, "Largest tensor power")->capture_default_str();
  pinch->add_option("--seed", pinch_args.seed, "Master seed")->capture_default_str();
  pinch->add_option("--tol", pinch_args.tol, "Slack for the squeeze check")
      ->capture_default_str();
  pinch->add_option("--output", pinch_args.output, "CSV file path (default: stdout)");

  traceineq::RecoverabilityConfig rec_config;
  std::string rec_output;
  CLI::App* rec = app.add_subcommand(
      "recoverability",
      "Seeded campaign: CSV seed,Delta,DM,negLogF,appF_lower,appF_upper,converged");
  rec->add_option("--dimA", rec_config.dim_a, "Dimension of the kept subsystem")
      ->capture_default_str();
  rec->add_option("--dimB", rec_config.dim_b, "Dimension of the discarded subsystem")
      ->capture_default_str();
  rec->add_option("--trials", rec_config.trials, "Trial count")->capture_default_str();
  rec->add_option("--seed", rec_config.seed, "Master seed")->capture_default_str();
  rec->add_option("--tol", rec_config.tol, "Violation slack beyond quadrature error")
      ->capture_default_str();
  rec->add_option("--quad-tol", rec_config.quad_tol, "Quadrature tolerance")
      ->capture_default_str();
  rec->add_option("--output", rec_output, "CSV file path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (beta->parsed()) return run_beta_table(beta_args);
    if (verify->parsed()) return run_verify_cmd(verify_config, verify_output);
    if (ce->parsed()) return run_counterexample(ce_args);
    if (triple->parsed()) return run_triple(triple_args);
    if (pinch->parsed()) return run_pinch_demo_cmd(pinch_args);
    if (rec->parsed()) return run_recoverability_cmd(rec_config, rec_output);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  return kExitConfig;
}
