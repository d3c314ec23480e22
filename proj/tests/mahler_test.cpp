#include "qgb/mahler.hpp"

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "brute.hpp"
#include "qgb/error.hpp"

namespace qgb {
namespace {

OkPolynomial P(const char* text, std::int64_t k = 2) { return parse_poly(text, make_ring(k)); }

TEST(Measure, Examples) {
  EXPECT_NEAR(mahler_measure(P("x^5")), 1.0, 1e-12);
  EXPECT_NEAR(mahler_measure(P("x - 2")), 2.0, 1e-12);
  EXPECT_NEAR(mahler_measure(P("x^2 - 5*x + 6")), 6.0, 1e-10);
  EXPECT_NEAR(mahler_measure(P("(3,0)*x^2 + 1")), 3.0, 1e-10);
  EXPECT_THROW(mahler_measure(OkPolynomial(make_ring(2))), InvalidInput);
}

TEST(Measure, ComplexInput) {
  ComplexPoly f{Complex(0, 2), Complex(1, 0)};  // x + 2i
  EXPECT_NEAR(mahler_measure(f), 2.0, 1e-12);
  ComplexPoly big(66, Complex(0, 0));
  big.back() = 1;
  EXPECT_THROW(mahler_measure(big), InvalidInput);
}

TEST(Measure, RootsOfUnity) {
  ComplexPoly f(13, Complex(0, 0));
  f[0] = -1;
  f[12] = 1;
  auto roots = find_roots(f);
  ASSERT_EQ(roots.size(), 12u);
  for (auto r : roots) EXPECT_NEAR(std::abs(r), 1.0, 1e-9);
  EXPECT_NEAR(mahler_measure(f), 1.0, 1e-8);
}

TEST(Measure, QuadratureMatches) {
  for (const char* text : {"x - 2", "x^2 - 5*x + 6", "x^3 + (0,1)*x + (4,-2)"}) {
    auto f = to_complex_poly(P(text));
    EXPECT_NEAR(mahler_measure_quadrature(f), mahler_measure(f), 1e-6 * mahler_measure(f)) << text;
  }
}

TEST(Inequalities, HeightBounds) {
  auto r = check_height_bounds(P("x^2 - 5*x + 6"));
  EXPECT_TRUE(r.pass);
  // slacks are relative: (rhs - lhs) / rhs
  EXPECT_NEAR(r.lower_slack, 1.0 - 1.0 / std::sqrt(3.0), 1e-9);
  EXPECT_NEAR(r.upper_slack, 0.5, 1e-9);
  auto x = check_height_bounds(P("x"));
  EXPECT_TRUE(x.pass);
  EXPECT_NEAR(x.upper_slack, 0.0, 1e-12);
  EXPECT_FALSE(check_height_bounds(P("x^2 - 5*x + 6"), 0.1).pass);
}

TEST(Inequalities, Landau) {
  auto r = check_landau(P("x - 2"));
  EXPECT_TRUE(r.pass);
  EXPECT_NEAR(r.lower_slack, 0.5, 1e-9);
  EXPECT_NEAR(r.upper_slack, 1.0 - 2.0 / std::sqrt(5.0), 1e-9);
  EXPECT_TRUE(check_landau(P("x^4")).pass);
  EXPECT_TRUE(check_landau(P("x^2 + (0,1)*x + 1")).pass);
}

TEST(Inequalities, ProductHeight) {
  auto r = check_product_height(P("x + 1"), P("x + 1"));
  EXPECT_TRUE(r.pass);
  EXPECT_EQ(r.upper_slack, 0.0);
  EXPECT_GT(r.lower_slack, 0.0);
  auto b = P("x^3 + (7,-2)*x + (0,3)");
  EXPECT_TRUE(check_product_height(P("x"), b).pass);
  EXPECT_THROW(check_product_height(P("3"), b), InvalidInput);
}

TEST(Report, Fields) {
  auto rep = mahler_report(P("x^2 - 5*x + 6"));
  EXPECT_EQ(rep.degree, 2);
  EXPECT_NEAR(rep.measure, 6.0, 1e-9);
  EXPECT_NEAR(rep.height, 6.0, 1e-12);
  EXPECT_NEAR(rep.l2, std::sqrt(62.0), 1e-12);
  EXPECT_TRUE(rep.height_bounds.pass);
  EXPECT_TRUE(rep.landau.pass);
}

class MahlerProps : public ::testing::Test {
 protected:
  std::mt19937_64 rng{31337};
};

TEST_F(MahlerProps, MeasureAtLeastOneAndMultiplicative) {
  for (auto k : {2, 3, 5, 7}) {
    auto ring = make_ring(k);
    for (int i = 0; i < 200; ++i) {
      auto a = random_polynomial(rng, ring, 1 + i % 4, 100, i % 2 == 0);
      auto b = random_polynomial(rng, ring, 1 + i % 3, 100, false);
      double ma = mahler_measure(a);
      double mb = mahler_measure(b);
      EXPECT_GE(ma, 1.0 - 1e-9);
      EXPECT_NEAR(mahler_measure(poly_mul(a, b)), ma * mb, 1e-6 * ma * mb);
    }
  }
}

TEST_F(MahlerProps, RandomGeneratorsRespectLimits) {
  auto ring = make_ring(7);
  for (int i = 0; i < 500; ++i) {
    auto e = random_element(rng, ring, 100);
    EXPECT_LE(norm(e, ring), 100);
    auto f = random_polynomial(rng, ring, 3, 50, i % 2 == 0);
    EXPECT_EQ(f.degree(), 3);
    if (i % 2 == 0) EXPECT_TRUE(f.is_monic());
  }
}

TEST(Suites, SmallRunPasses) {
  SuiteConfig cfg;
  cfg.trials = 300;
  cfg.seed = 7;
  cfg.quadrature_samples = 5;
  auto results = run_mahler_suites(cfg);
  ASSERT_EQ(results.size(), 6u);
  for (const auto& r : results) {
    EXPECT_EQ(r.failures, 0u) << r.inequality;
    EXPECT_FALSE(r.counterexample) << r.inequality;
    EXPECT_EQ(r.seed, 7u);
  }
  EXPECT_EQ(results.back().trials, 5u);
}

TEST(Suites, JobsDoNotChangeResults) {
  SuiteConfig cfg;
  cfg.trials = 200;
  cfg.seed = 11;
  cfg.quadrature_samples = 3;
  auto one = run_mahler_suites(cfg);
  cfg.jobs = 4;
  auto four = run_mahler_suites(cfg);
  ASSERT_EQ(one.size(), four.size());
  for (std::size_t i = 0; i < one.size(); ++i) {
    EXPECT_EQ(one[i].worst_slack, four[i].worst_slack);
    EXPECT_EQ(one[i].failures, four[i].failures);
  }
}

TEST(Suites, TamperedScaleFails) {
  SuiteConfig cfg;
  cfg.trials = 50;
  cfg.seed = 3;
  cfg.quadrature_samples = 2;
  cfg.rhs_scale = 0.01;
  auto results = run_mahler_suites(cfg);
  bool any = false;
  for (const auto& r : results)
    if (r.failures > 0) {
      any = true;
      EXPECT_TRUE(r.counterexample);
    }
  EXPECT_TRUE(any);
}

}  // namespace
}  // namespace qgb
