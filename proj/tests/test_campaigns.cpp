#include <cstdlib>
#include <string>
#include <vector>

#include <doctest.h>

#include "traceineq/campaigns.hpp"
#include "traceineq/random_gen.hpp"

using namespace traceineq;

namespace {

int line_count(const std::string& s) {
  int n = 0;
  for (char c : s) n += c == '\n';
  return n;
}

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

}  // namespace

TEST_CASE("doubles survive a text round trip unchanged") {
  for (double v : {0.1, 1.0 / 3.0, 0.78539816339744828, -2.5e300, 1e-17, 0.0, 42.0}) {
    const std::string text = format_double(v);
    CHECK(std::strtod(text.c_str(), nullptr) == v);
  }
}

TEST_CASE("exponential-sum campaign is clean, ordered, and reproducible") {
  VerifyConfig config;
  config.family = "gt";
  config.trials = 12;
  config.seed = 7;
  const VerifyCampaign campaign = run_verify(config);
  REQUIRE(campaign.rows.size() == 12);
  CHECK(campaign.violation_count == 0);
  CHECK(campaign.first_violation.is_null());
  for (int i = 0; i < 12; ++i) {
    const VerifyRow& row = campaign.rows[i];
    CHECK(row.instance == i);
    CHECK(row.seed == derive_seed(7, static_cast<std::uint64_t>(i)));
    CHECK_FALSE(row.violation);
    CHECK(row.gap >= -(config.tol + row.quad_error));
  }
  const std::string csv = verify_csv(campaign);
  CHECK(first_line(csv) == "seed,instance,lhs,rhs,gap,quad_error");
  CHECK(line_count(csv) == 13);
  CHECK(verify_csv(run_verify(config)) == csv);
  VerifyConfig other = config;
  other.seed = 8;
  CHECK(verify_csv(run_verify(other)) != csv);
}

TEST_CASE("product-power campaign degenerates to exact equality at r = 1") {
  VerifyConfig config;
  config.family = "alt";
  config.r = 1.0;
  config.trials = 6;
  config.seed = 11;
  const VerifyCampaign campaign = run_verify(config);
  CHECK(campaign.violation_count == 0);
  for (const VerifyRow& row : campaign.rows) {
    CHECK(row.gap == 0.0);
    CHECK(row.quad_error == 0.0);
  }
}

TEST_CASE("general-matrix campaign covers both the limit and interior exponents") {
  VerifyConfig config;
  config.family = "general";
  config.dim = 2;
  config.trials = 6;
  config.seed = 13;
  config.r = 0.0;
  CHECK(run_verify(config).violation_count == 0);
  config.r = 0.4;
  CHECK(run_verify(config).violation_count == 0);
}

TEST_CASE("campaign instances are regenerated bit for bit") {
  VerifyConfig config;
  config.family = "alt";
  config.n = 4;
  config.dim = 3;
  const std::vector<Matrix> a = verify_instance(config, 5);
  const std::vector<Matrix> b = verify_instance(config, 5);
  REQUIRE(a.size() == 4);
  for (int k = 0; k < 4; ++k) {
    REQUIRE(a[k].rows() == 3);
    CHECK((a[k] - b[k]).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("campaign configuration is validated up front") {
  VerifyConfig config;
  config.family = "bogus";
  CHECK_THROWS(run_verify(config));
  config.family = "alt";
  config.r = 0.0;
  CHECK_THROWS(run_verify(config));
  config.r = 1.5;
  CHECK_THROWS(run_verify(config));
  config = VerifyConfig{};
  config.family = "general";
  config.r = 1.0;
  CHECK_THROWS(run_verify(config));
  config = VerifyConfig{};
  config.n = 1;
  CHECK_THROWS(run_verify(config));
  config = VerifyConfig{};
  config.trials = 0;
  CHECK_THROWS(run_verify(config));
  config = VerifyConfig{};
  config.p = 0.5;
  CHECK_THROWS(run_verify(config));
}

TEST_CASE("recoverability campaign is clean and reproducible") {
  RecoverabilityConfig config;
  config.trials = 6;
  config.seed = 3;
  const RecoverabilityCampaign campaign = run_recoverability(config);
  REQUIRE(campaign.rows.size() == 6);
  CHECK(campaign.violation_count == 0);
  CHECK(campaign.first_violation.is_null());
  for (const RecoverabilityRow& row : campaign.rows) {
    CHECK_FALSE(row.violation);
    CHECK(row.report.sandwich_ok);
  }
  const std::string csv = recoverability_csv(campaign);
  CHECK(first_line(csv) == "seed,Delta,DM,negLogF,appF_lower,appF_upper,converged");
  CHECK(line_count(csv) == 7);
  CHECK(recoverability_csv(run_recoverability(config)) == csv);
  CHECK_THROWS(run_recoverability(RecoverabilityConfig{1, 2, 4, 0, 1e-7, 1e-8}));
}

TEST_CASE("triple-term campaign agreement stays within tolerance") {
  const TripleCampaign campaign = run_triple_equivalence(8, 5);
  REQUIRE(campaign.rows.size() == 8);
  CHECK(campaign.max_abs_diff <= 1e-6);
  CHECK(campaign.argmax_instance >= 0);
  CHECK(campaign.argmax_instance < 8);
  for (int i = 0; i < 8; ++i) {
    CHECK(campaign.rows[i].dim == 2 + i % 4);
    CHECK(campaign.rows[i].abs_diff <= campaign.max_abs_diff);
  }
  const std::vector<Matrix> ms = triple_instance(5, campaign.argmax_instance);
  REQUIRE(ms.size() == 3);
  CHECK(ms[0].rows() == 2 + campaign.argmax_instance % 4);
  const std::string csv = triple_csv(campaign);
  CHECK(first_line(csv) == "seed,instance,dim,lieb,ours,abs_diff");
  CHECK(line_count(csv) == 9);
}

TEST_CASE("density table emitter pins its grid and endpoint values") {
  const std::string csv = beta_table_csv(0.0, -1.0, 1.0, 0.5);
  CHECK(first_line(csv) == "t,beta");
  CHECK(line_count(csv) == 6);
  // Middle row sits exactly at the origin.
  std::size_t pos = 0;
  for (int skip = 0; skip < 3; ++skip) pos = csv.find('\n', pos) + 1;
  const std::string row = csv.substr(pos, csv.find('\n', pos) - pos);
  const std::size_t comma = row.find(',');
  CHECK(std::strtod(row.substr(0, comma).c_str(), nullptr) == 0.0);
  CHECK(std::strtod(row.substr(comma + 1).c_str(), nullptr) == 0.78539816339744828);
  CHECK_THROWS(beta_table_csv(1.0, -1.0, 1.0, 0.5));
  CHECK_THROWS(beta_table_csv(0.0, 1.0, -1.0, 0.5));
  CHECK_THROWS(beta_table_csv(0.0, -1.0, 1.0, 0.0));
}

TEST_CASE("counterexample emitter carries one row per grid point") {
  const std::string csv = counterexample_csv(counterexample_report(1, -2.0, 2.0, 0.05));
  CHECK(first_line(csv) == "t,gamma,kappa");
  CHECK(line_count(csv) == 82);
}

TEST_CASE("pinching demonstration rows stay inside their certified bracket") {
  const std::vector<TensorPinchRow> rows = run_pinch_demo(2, 3, 9);
  REQUIRE(rows.size() == 3);
  for (int i = 0; i < 3; ++i) {
    CHECK(rows[i].m == i + 1);
    CHECK(rows[i].value <= rows[i].upper + 1e-9);
    CHECK(rows[i].value >= rows[i].lower - 1e-9);
    if (i > 0) CHECK(rows[i].lower >= rows[i - 1].lower - 1e-10);
  }
  const std::pair<Matrix, Matrix> instance = pinch_demo_instance(2, 9);
  CHECK(instance.first.rows() == 2);
  CHECK(instance.second.rows() == 2);
  const std::string csv = pinch_demo_csv(rows);
  CHECK(first_line(csv) == "m,value,lower,upper");
  CHECK(line_count(csv) == 4);
}
