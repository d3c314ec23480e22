#include "qgb/quadratic_order.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "brute.hpp"
#include "qgb/error.hpp"

namespace qgb {
namespace {

OkElement E(std::int64_t u, std::int64_t v) { return {u, v}; }

TEST(MakeRing, Branches) {
  auto r2 = make_ring(2);
  EXPECT_EQ(r2.k(), 2);
  EXPECT_EQ(r2.branch(), Branch::Whole);
  EXPECT_EQ(r2.min_poly_text(), "x^2 + 2");
  auto r3 = make_ring(3);
  EXPECT_EQ(r3.branch(), Branch::Half);
  EXPECT_EQ(r3.min_poly_text(), "x^2 - x + 1");
  EXPECT_EQ(make_ring(7).branch(), Branch::Half);
  EXPECT_EQ(make_ring(5).branch(), Branch::Whole);
}

TEST(MakeRing, Rejects) {
  EXPECT_THROW(make_ring(4), InvalidParameter);
  EXPECT_THROW(make_ring(1), InvalidParameter);
  EXPECT_THROW(make_ring(0), InvalidParameter);
  EXPECT_THROW(make_ring(-3), InvalidParameter);
  EXPECT_THROW(make_ring(12), InvalidParameter);
}

TEST(Element, AddExamples) {
  EXPECT_EQ(add(E(1, 2), E(3, -2)), E(4, 0));
  EXPECT_EQ(add(E(7, -5), E(0, 0)), E(7, -5));
  EXPECT_EQ(add(E(1, 1), E(-1, -1)), E(0, 0));
}

TEST(Element, MulExamples) {
  auto r2 = make_ring(2);
  auto r3 = make_ring(3);
  EXPECT_EQ(mul(E(1, 1), E(1, -1), r2), E(3, 0));
  EXPECT_EQ(mul(E(0, 1), E(0, 1), r3), E(-1, 1));
  EXPECT_EQ(mul(E(4, -9), E(1, 0), r3), E(4, -9));
  EXPECT_EQ(mul(E(4, -9), E(1, 0), r2), E(4, -9));
}

TEST(Element, ConjExamples) {
  auto r2 = make_ring(2);
  auto r3 = make_ring(3);
  EXPECT_EQ(conj(E(2, 3), r2), E(2, -3));
  EXPECT_EQ(conj(E(2, 3), r3), E(5, -3));
  EXPECT_EQ(mul(conj(E(2, 3), r3), E(2, 3), r3), E(19, 0));
  EXPECT_EQ(conj(conj(E(2, 3), r3), r3), E(2, 3));
}

TEST(Element, NormExamples) {
  EXPECT_EQ(norm(E(1, 2), make_ring(2)), 9);
  EXPECT_EQ(norm(E(1, 1), make_ring(3)), 3);
  EXPECT_EQ(norm(E(0, 0), make_ring(7)), 0);
}

TEST(Element, TryDiv) {
  auto r2 = make_ring(2);
  auto q = try_div(E(3, 0), E(1, 1), r2);
  ASSERT_TRUE(q);
  EXPECT_EQ(*q, E(1, -1));
  EXPECT_FALSE(try_div(E(1, 0), E(0, 1), r2));
  EXPECT_EQ(*try_div(E(-8, 13), E(1, 0), r2), E(-8, 13));
  EXPECT_THROW(try_div(E(1, 0), E(0, 0), r2), DivisionByZero);
}

TEST(Element, NormEquation) {
  auto r2 = make_ring(2);
  EXPECT_EQ(elements_of_norm(1, r2), (std::vector<OkElement>{E(-1, 0), E(1, 0)}));
  auto two = elements_of_norm(2, r2);
  EXPECT_EQ(std::set<std::string>({to_string(two[0]), to_string(two[1])}),
            std::set<std::string>({"(0,1)", "(0,-1)"}));
  EXPECT_EQ(two.size(), 2u);
  EXPECT_TRUE(elements_of_norm(5, r2).empty());
  EXPECT_EQ(elements_of_norm(0, r2), std::vector<OkElement>{E(0, 0)});
  // six units when k = 3
  EXPECT_EQ(elements_of_norm(1, make_ring(3)).size(), 6u);
}

TEST(Element, SquareRoots) {
  auto r2 = make_ring(2);
  auto s = sqrt_in_ring(E(-2, 0), r2);
  ASSERT_EQ(s.size(), 2u);
  for (const auto& e : s) EXPECT_EQ(mul(e, e, r2), E(-2, 0));
  EXPECT_EQ(sqrt_in_ring(E(1, 0), r2).size(), 2u);
  EXPECT_TRUE(sqrt_in_ring(E(0, 1), r2).empty());
  EXPECT_EQ(sqrt_in_ring(E(0, 0), r2), std::vector<OkElement>{E(0, 0)});
}

TEST(Element, Divisors) {
  auto r2 = make_ring(2);
  auto d = divisors(E(0, 1), r2);
  std::set<std::string> got;
  for (const auto& e : d) got.insert(to_string(e));
  EXPECT_EQ(got, std::set<std::string>({"(1,0)", "(-1,0)", "(0,1)", "(0,-1)"}));
  EXPECT_EQ(divisors(E(1, 0), r2).size(), 2u);
  EXPECT_THROW(divisors(E(0, 0), r2), InvalidInput);
}

TEST(Element, DivisorsMatchScan) {
  for (auto k : {2, 3, 7}) {
    auto ring = make_ring(k);
    for (auto z : {E(6, 0), E(3, 5), E(-4, 2), E(12, -1)}) {
      std::set<std::string> expect;
      auto nz = norm(z, ring);
      for (std::int64_t v = -30; v <= 30; ++v)
        for (std::int64_t u = -30; u <= 30; ++u) {
          OkElement w{u, v};
          if (w.is_zero() || norm(w, ring) > nz) continue;
          if (try_div(z, w, ring)) expect.insert(to_string(w));
        }
      std::set<std::string> got;
      for (const auto& w : divisors(z, ring)) got.insert(to_string(w));
      EXPECT_EQ(got, expect) << "k=" << k << " z=" << to_string(z);
    }
  }
}

TEST(Bounded, Examples) {
  auto r2 = make_ring(2);
  EXPECT_EQ(enumerate_bounded({2, BoundMode::Disk}, r2).size(), 11u);
  EXPECT_EQ(enumerate_bounded({1, BoundMode::Box}, r2).size(), 9u);
  for (auto k : {2, 3}) {
    for (auto mode : {BoundMode::Box, BoundMode::Disk}) {
      EXPECT_EQ(enumerate_bounded({0, mode}, make_ring(k)), std::vector<OkElement>{E(0, 0)});
    }
  }
}

TEST(Bounded, MatchesScanAndOrder) {
  for (auto k : brute::test_ks()) {
    auto ring = make_ring(k);
    for (std::int64_t y : {0, 1, 2, 3, 5, 8}) {
      for (auto mode : {BoundMode::Box, BoundMode::Disk}) {
        auto got = enumerate_bounded({y, mode}, ring);
        auto want = brute::bounded(y, mode, ring);
        EXPECT_EQ(got, want) << "k=" << k << " y=" << y;
        EXPECT_EQ(count_bounded({y, mode}, ring), Integer(want.size()));
        EXPECT_TRUE(std::is_sorted(got.begin(), got.end(), lex_less));
      }
    }
  }
}

TEST(Bounded, DiskCountNearArea) {
  for (auto k : brute::test_ks()) {
    auto ring = make_ring(k);
    for (std::int64_t y : {10, 17, 30, 55}) {
      // one lattice point per covolume: sqrt(k) or sqrt(k)/2
      double covol = std::sqrt(double(k)) / (ring.branch() == Branch::Half ? 2.0 : 1.0);
      double area = std::numbers::pi * double(y) * double(y) / covol;
      double n = count_bounded({y, BoundMode::Disk}, ring).convert_to<double>();
      EXPECT_NEAR(n, area, 8.0 * double(y)) << "k=" << k << " y=" << y;
    }
  }
}

TEST(Text, ElementRoundTrip) {
  EXPECT_EQ(to_string(E(-1, 0)), "(-1,0)");
  EXPECT_EQ(parse_element("(3,-4)"), E(3, -4));
  EXPECT_EQ(parse_element("-7"), E(-7, 0));
  EXPECT_THROW(parse_element("(1,"), SyntaxError);
  EXPECT_EQ(parse_bound_mode("disk"), BoundMode::Disk);
  EXPECT_EQ(to_string(BoundMode::Box), "box");
}

class ElementProps : public ::testing::Test {
 protected:
  std::mt19937_64 rng{20240611};
};

TEST_F(ElementProps, NormAtLeastOne) {
  for (auto k : brute::test_ks()) {
    auto ring = make_ring(k);
    for (int i = 0; i < 2000; ++i) {
      auto e = brute::random_element(rng, i % 2 ? 1'000'000 : 3);
      if (e.is_zero()) continue;
      ASSERT_GE(norm(e, ring), 1) << to_string(e);
    }
  }
}

TEST_F(ElementProps, ConjugateProductIsNorm) {
  for (auto k : brute::test_ks()) {
    auto ring = make_ring(k);
    for (int i = 0; i < 1000; ++i) {
      auto a = brute::random_element(rng, 1'000'000);
      EXPECT_EQ(mul(a, conj(a, ring), ring), OkElement(norm(a, ring), 0));
    }
  }
}

TEST_F(ElementProps, MultiplicativeAndDivisible) {
  for (auto k : brute::test_ks()) {
    auto ring = make_ring(k);
    for (int i = 0; i < 1000; ++i) {
      auto a = brute::random_element(rng, 1'000'000);
      auto b = brute::random_element(rng, i % 3 ? 1'000'000 : 2);
      auto ab = mul(a, b, ring);
      EXPECT_EQ(norm(ab, ring), norm(a, ring) * norm(b, ring));
      EXPECT_EQ(mul(a, b, ring), mul(b, a, ring));
      if (b.is_zero()) continue;
      auto q = try_div(ab, b, ring);
      ASSERT_TRUE(q);
      EXPECT_EQ(*q, a);
    }
  }
}

TEST_F(ElementProps, RingAxioms) {
  for (auto k : {2, 3, 7, 15}) {
    auto ring = make_ring(k);
    for (int i = 0; i < 500; ++i) {
      auto a = brute::random_element(rng, 1000);
      auto b = brute::random_element(rng, 1000);
      auto c = brute::random_element(rng, 1000);
      EXPECT_EQ(mul(mul(a, b, ring), c, ring), mul(a, mul(b, c, ring), ring));
      EXPECT_EQ(mul(a, add(b, c), ring), add(mul(a, b, ring), mul(a, c, ring)));
      EXPECT_EQ(conj(mul(a, b, ring), ring), mul(conj(a, ring), conj(b, ring), ring));
    }
  }
}

TEST_F(ElementProps, NormSolutionsClosed) {
  for (auto k : brute::test_ks()) {
    auto ring = make_ring(k);
    for (int n = 0; n <= 200; ++n) {
      auto sols = elements_of_norm(n, ring);
      std::set<std::pair<std::string, std::string>> seen;
      for (const auto& e : sols) {
        EXPECT_EQ(norm(e, ring), n);
        seen.insert({e.u.str(), e.v.str()});
      }
      for (const auto& e : sols) {
        auto c = conj(e, ring);
        auto m = neg(e);
        EXPECT_TRUE(seen.count({c.u.str(), c.v.str()}));
        EXPECT_TRUE(seen.count({m.u.str(), m.v.str()}));
      }
      std::size_t scan = 0;
      for (std::int64_t v = -30; v <= 30; ++v)
        for (std::int64_t u = -30; u <= 30; ++u)
          if (norm(OkElement{u, v}, ring) == n) ++scan;
      EXPECT_EQ(sols.size(), scan) << "k=" << k << " n=" << n;
    }
  }
}

TEST(Rows, CoverNormBall) {
  for (auto k : {2, 3, 7, 11}) {
    auto ring = make_ring(k);
    for (int n : {0, 1, 5, 40}) {
      std::size_t rows_total = 0;
      for (const auto& r : norm_ball_rows(n, ring)) {
        rows_total += static_cast<std::size_t>(r.u_hi - r.u_lo + 1);
        EXPECT_LE(norm(OkElement(r.u_lo, r.v), ring), n);
        EXPECT_LE(norm(OkElement(r.u_hi, r.v), ring), n);
        EXPECT_GT(norm(OkElement(r.u_lo - 1, r.v), ring), n);
        EXPECT_GT(norm(OkElement(r.u_hi + 1, r.v), ring), n);
      }
      std::size_t scan = 0;
      for (std::int64_t v = -20; v <= 20; ++v)
        for (std::int64_t u = -20; u <= 20; ++u)
          if (norm(OkElement{u, v}, ring) <= n) ++scan;
      EXPECT_EQ(rows_total, scan);
    }
  }
}

TEST(IntegerHelpers, SqrtAndFactor) {
  EXPECT_EQ(isqrt(Integer(99)), 9);
  EXPECT_EQ(isqrt(Integer(100)), 10);
  Integer r;
  EXPECT_TRUE(is_perfect_square(Integer(144), &r));
  EXPECT_EQ(r, 12);
  EXPECT_FALSE(is_perfect_square(Integer(-4)));
  auto f = factor_integer(Integer(360));
  ASSERT_EQ(f.size(), 3u);
  EXPECT_EQ(f[0], (std::pair<Integer, unsigned>{2, 3}));
  EXPECT_EQ(f[2], (std::pair<Integer, unsigned>{5, 1}));
}

}  // namespace
}  // namespace qgb
