#include "gcay/congruence_count.hpp"

#include <gtest/gtest.h>

#include <numeric>
#include <thread>

#include "gcay/gaussian_ring.hpp"

namespace gcay {
namespace {

TEST(CongruenceInstanceTest, Validation) {
  EXPECT_THROW(CongruenceInstance(0, 1, 5, {}), UsageError);
  EXPECT_THROW(CongruenceInstance(2, 1, 5, {1}), UsageError);
  EXPECT_THROW(CongruenceInstance(1, 1, 0, {1}), UsageError);
  const CongruenceInstance inst(2, -1, 7, {-1, 9});
  EXPECT_EQ(inst.b(), 6u);
  EXPECT_EQ(inst.coefficients(), (std::vector<u64>{6, 2}));
}

TEST(CountTothTest, Examples) {
  EXPECT_EQ(count_toth({2, 1, 7, {1, 1}}), 8u);
  EXPECT_EQ(count_toth({2, 1, 5, {1, 1}}), 4u);
  EXPECT_EQ(count_toth({2, 1, 15, {1, 1}}), 16u);
  EXPECT_EQ(count_toth({1, 0, 9, {1}}), 3u);
}

TEST(CountTothTest, EvenModulusRefused) {
  EXPECT_THROW(count_toth({2, 1, 4, {1, 1}}), DomainError);
  EXPECT_THROW(count_toth({1, 0, 2, {1}}), DomainError);
}

TEST(CountTothTest, ReportsNonCoprimeGaussSums) {
  // a = 3 shares a factor with 9
  const auto ev = toth_evaluate({1, 0, 9, {3}});
  EXPECT_GT(ev.non_coprime_gauss_sums, 0u);
  EXPECT_EQ(ev.count, count_brute({1, 0, 9, {3}}));
  EXPECT_EQ(toth_evaluate({2, 1, 7, {1, 1}}).non_coprime_gauss_sums, 0u);
}

TEST(CountTothTest, TrivialModulus) {
  // Everything is a solution mod 1.
  EXPECT_EQ(count_toth({3, 5, 1, {1, 2, 3}}), 1u);
  EXPECT_EQ(count_brute({3, 5, 1, {1, 2, 3}}), 1u);
}

TEST(CountBruteTest, Examples) {
  EXPECT_EQ(count_brute({2, 1, 2, {1, 1}}), 2u);
  EXPECT_EQ(count_brute({2, 0, 3, {1, 1}}), 1u);
  // x^2 + y^2 + z^2 = 1 (mod 3): squares are {0, 1, 1}, so exactly one
  // coordinate is nonzero: 3 * 2 = 6.
  EXPECT_EQ(count_brute({3, 1, 3, {1, 1, 1}}), 6u);
  EXPECT_EQ(count_toth({3, 1, 3, {1, 1, 1}}), 6u);
}

TEST(CountBruteTest, BudgetGuard) {
  EXPECT_THROW(count_brute({2, 1, 10001, {1, 1}}), ResourceError);
  EXPECT_THROW(count_brute({5, 1, 100, {1, 1, 1, 1, 1}}), ResourceError);
  EXPECT_NO_THROW(count_brute({4, 1, 100, {1, 1, 1, 1}}));
}

TEST(CountBruteTest, SumOverRightHandSidesIsTotal) {
  for (u64 n = 1; n <= 12; ++n) {
    for (u64 k = 1; k <= 3; ++k) {
      u64 total = 0;
      for (u64 b = 0; b < n; ++b) total += count_brute({k, static_cast<i64>(b), n, std::vector<i64>(k, 2)});
      u64 expect = 1;
      for (u64 i = 0; i < k; ++i) expect *= n;
      EXPECT_EQ(total, expect);
    }
  }
}

TEST(CountClosedFormTest, Examples) {
  EXPECT_EQ(count_closed_form_2(3, 1), 4u);
  EXPECT_EQ(count_closed_form_2(2, 3), 16u);
  EXPECT_EQ(count_closed_form_2(5, 2), 20u);
  EXPECT_EQ(count_closed_form_2(2, 1), 2u);
  EXPECT_EQ(count_closed_form_2(7, 2), 56u);
  EXPECT_THROW(count_closed_form_2(9, 1), UsageError);
  EXPECT_THROW(count_closed_form_2(3, 0), UsageError);
  EXPECT_THROW(count_closed_form_2(3, 60), ResourceError);
}

TEST(CountClosedFormTest, ConsistentWithTothAndBrute) {
  for (u64 p : {3u, 5u, 7u}) {
    u64 pr = 1;
    for (u64 r = 1; r <= 2; ++r) {
      pr *= p;
      const auto inst = CongruenceInstance::unit_circle(pr);
      EXPECT_EQ(count_closed_form_2(p, r), count_toth(inst));
      EXPECT_EQ(count_closed_form_2(p, r), count_brute(inst));
    }
  }
}

TEST(CountBridgeTest, UnitsMatchBruteCount) {
  for (u64 n = 2; n <= 50; ++n) {
    EXPECT_EQ(units(n).cardinality(), count_brute(CongruenceInstance::unit_circle(n))) << n;
  }
}

TEST(CountScalingTest, InvariantUnderUnitScaling) {
  for (u64 n = 1; n <= 15; ++n) {
    for (u64 a = 0; a < n; ++a) {
      for (u64 b = 0; b < n; ++b) {
        const u64 base = count_brute({1, static_cast<i64>(b), n, {static_cast<i64>(a)}});
        for (u64 u = 1; u < n; ++u) {
          if (std::gcd(u, n) != 1) continue;
          const CongruenceInstance scaled(1, static_cast<i64>(mul_mod(u, b, n)), n, {static_cast<i64>(mul_mod(u, a, n))});
          ASSERT_EQ(count_brute(scaled), base);
        }
      }
    }
  }
}

TEST(CountTothTest, OracleEquivalenceSample) {
  for (u64 n = 1; n <= 25; n += 2) {
    for (u64 k = 1; k <= 3; ++k) {
      for (i64 b = 0; b <= 2; ++b) {
        const CongruenceInstance inst(k, b, n, std::vector<i64>(k, static_cast<i64>(n) - 1));
        ASSERT_EQ(count_toth(inst), count_brute(inst)) << n << ' ' << k << ' ' << b;
      }
    }
  }
}

TEST(CountCacheTest, MemoisesAndIsThreadSafe) {
  CountCache cache;
  std::vector<std::jthread> threads;
  std::vector<u64> results(16);
  for (int t = 0; t < 16; ++t) {
    threads.emplace_back([&, t] { results[t] = cache.get(CountMethod::brute, CongruenceInstance::unit_circle(11 + 2 * (t % 4))); });
  }
  threads.clear();
  EXPECT_EQ(cache.size(), 4u);
  EXPECT_EQ(results[0], 12u);
  EXPECT_EQ(cache.get(CountMethod::closed2, CongruenceInstance::unit_circle(49)), 56u);
  EXPECT_EQ(cache.get(CountMethod::toth, CongruenceInstance::unit_circle(49)), 56u);
  EXPECT_THROW(cache.get(CountMethod::closed2, CongruenceInstance::unit_circle(15)), UsageError);
  EXPECT_THROW(cache.get(CountMethod::closed2, CongruenceInstance(2, 0, 7, {1, 1})), UsageError);
}

}  // namespace
}  // namespace gcay
