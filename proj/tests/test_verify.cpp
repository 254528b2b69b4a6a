#include <hyperladder/verify.hpp>

#include <gtest/gtest.h>

using namespace hyperladder;

namespace {

std::size_t count_suite(const Report &r, const std::string &suite) {
  return static_cast<std::size_t>(std::count_if(r.checks.begin(), r.checks.end(), [&](const Check &c) { return c.suite == suite; }));
}

} // namespace

TEST(Verify, LegendreAllPassesWithEnoughChecks) {
  const Report r = run_verification(preset_family("legendre"), "all", {}, seed_from_env());
  EXPECT_TRUE(r.passed());
  EXPECT_GE(r.checks.size(), 200u);
  EXPECT_GT(count_suite(r, "ladder"), 0u);
  EXPECT_GT(count_suite(r, "fock"), 0u);
  EXPECT_GT(count_suite(r, "schrod"), 0u);
  for (const Check &c : r.checks) EXPECT_TRUE(c.passed) << c.suite << " " << c.identity << " l=" << c.l << " m=" << c.m;
}

TEST(Verify, EveryPresetPassesEverySuite) {
  for (const char *name : {"hermite", "laguerre", "jacobi"}) {
    const Report r = run_verification(preset_family(name), "all", {}, seed_from_env());
    EXPECT_TRUE(r.passed()) << name << ": " << r.failures() << " failures";
  }
}

TEST(Verify, PoschlTellerSchrodIncludesClosedForm) {
  const Report r = run_verification(preset_family("poschl-teller", {{"mu", 2}, {"eta", 2}}), "schrod", {}, 0);
  EXPECT_TRUE(r.passed());
  const auto it = std::find_if(r.checks.begin(), r.checks.end(), [](const Check &c) { return c.identity.starts_with("W_0 ="); });
  ASSERT_NE(it, r.checks.end());
  EXPECT_TRUE(it->passed);
  EXPECT_LE(it->residual, 1e-10);
  EXPECT_EQ(count_suite(r, "ladder"), 0u);
}

TEST(Verify, ChecksAreSortedBySuiteThenIndices) {
  const Report r = run_verification(preset_family("hermite"), "all", {}, 0);
  for (std::size_t i = 1; i < r.checks.size(); ++i) {
    const Check &a = r.checks[i - 1], &b = r.checks[i];
    const int ra = detail::suite_rank(a.suite), rb = detail::suite_rank(b.suite);
    ASSERT_LE(ra, rb);
    if (ra == rb) {
      ASSERT_LE(std::make_pair(a.l, a.m), std::make_pair(b.l, b.m));
    }
  }
}

TEST(Verify, TightenedToleranceFails) {
  Tolerances tol;
  tol.tighten("adjoint", 1e-30);
  const Report r = run_verification(preset_family("legendre"), "ladder", tol, 0);
  EXPECT_FALSE(r.passed());
  EXPECT_GT(r.failures(), 0u);
}

TEST(Verify, TolerancesOnlyTighten) {
  Tolerances tol;
  EXPECT_THROW(tol.tighten("adjoint", 1e-6), std::invalid_argument);
  EXPECT_THROW(tol.tighten("adjoint", 0), std::invalid_argument);
  EXPECT_THROW(tol.tighten("nonsense", 1e-20), std::invalid_argument);
  tol.tighten("pointwise", 1e-9);
  EXPECT_EQ(tol.pointwise, 1e-9);
}

TEST(Verify, UnknownSuiteRejected) {
  EXPECT_THROW(run_verification(preset_family("legendre"), "everything", {}, 0), std::invalid_argument);
}

TEST(Verify, JsonReportIsStable) {
  const FamilySpec spec = preset_family("laguerre", {{"alpha", 1}});
  const Tolerances tol;
  const std::string a = to_json(run_verification(spec, "all", tol, 0), spec, "all", tol, 0).dump(2);
  const std::string b = to_json(run_verification(spec, "all", tol, 0), spec, "all", tol, 0).dump(2);
  EXPECT_EQ(a, b);
  const Json j = Json::parse(a);
  EXPECT_EQ(j["result"], "pass");
  EXPECT_EQ(j["summary"]["total"], j["checks"].size());
}
