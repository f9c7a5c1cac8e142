#include <catch2/catch_amalgamated.hpp>

#include "kusuoka/verify.hpp"

using namespace kusuoka;

TEST_CASE("full invariant suite passes on defaults") {
  const std::vector<SuiteReport> reports = run_all_checks();
  REQUIRE(reports.size() == 5);
  for (const auto& suite : reports) {
    INFO(suite.suite);
    for (const auto& check : suite.checks) {
      INFO(check.name << ": " << check.detail);
      CHECK(check.passed);
    }
    CHECK(suite.passed() == static_cast<int>(suite.checks.size()));
  }
  CHECK(all_passed(reports));
}

TEST_CASE("fault injection trips exactly the ratio-map consistency check") {
  VerifyOptions opt;
  opt.word_depth = 4;
  opt.psi_fault = 1e-6;
  const SuiteReport report = verify_gasket(opt);
  bool tripped = false;
  for (const auto& check : report.checks) {
    if (check.name == "ratio-map-consistency") {
      tripped = !check.passed;
    } else {
      CHECK(check.passed);
    }
  }
  CHECK(tripped);
  CHECK(report.failed() == 1);
}

TEST_CASE("ratio map deviation helper is tiny without a fault and large with one") {
  CHECK(max_ratio_map_deviation(5) < 1e-13);
  CHECK(max_ratio_map_deviation(5, 1e-6) > 5e-7);
}
