#include <doctest.h>

#include "relcap/suites.hpp"

using namespace relcap;

TEST_CASE("suite names round trip") {
  CHECK(all_suites().size() == 12);
  for (const SuiteKind k : all_suites()) CHECK(parse_suite(suite_name(k)) == k);
  CHECK_THROWS_AS(parse_suite("nope"), ValidationError);
}

TEST_CASE("config validation") {
  SuiteConfig c;
  CHECK_NOTHROW(c.validate());
  c.trials = 0;
  CHECK_THROWS_AS(c.validate(), ValidationError);
  c = SuiteConfig{};
  c.samples = 10;
  CHECK_THROWS_AS(c.validate(), ValidationError);
  c = SuiteConfig{};
  c.mask_cells = 9;
  CHECK_THROWS_AS(c.validate(), ValidationError);
  c = SuiteConfig{};
  c.polar_sectors = 30;
  CHECK_THROWS_AS(c.validate(), ValidationError);
  c = SuiteConfig{};
  c.tolerance = 0.0;
  CHECK_THROWS_AS(c.validate(), ValidationError);
}

TEST_CASE("small suites are deterministic and named by case") {
  for (const SuiteKind k : {SuiteKind::kMonotonicity, SuiteKind::kSchwarzian,
                            SuiteKind::kHcapRegression}) {
    SuiteConfig c;
    c.suite = k;
    c.trials = 2;
    c.samples = 2000;
    c.mask_cells = 32;
    c.polar_rings = 32;
    c.polar_sectors = 64;
    const Report a = run_suite(c);
    const Report b = run_suite(c);
    REQUIRE(a.rows.size() == 2);
    CHECK(format_csv(a) == format_csv(b));
    CHECK(a.rows[0].name.rfind(suite_name(k) + "-000", 0) == 0);
    CHECK(a.rows[1].name.rfind(suite_name(k) + "-001", 0) == 0);
    c.seed = 2;
    CHECK(format_csv(run_suite(c)) != format_csv(a));
  }
}

TEST_CASE("exact schwarzian rows") {
  SuiteConfig c;
  c.suite = SuiteKind::kSchwarzian;
  c.trials = 1;
  c.samples = 20000;
  const Report r = run_suite(c);
  REQUIRE(r.rows.size() == 1);
  CHECK(r.rows[0].status == CaseStatus::kEquality);
  CHECK(r.rows[0].lhs == doctest::Approx(0.0625));
}
