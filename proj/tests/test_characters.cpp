#include "gcay/characters.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <numeric>

namespace gcay {
namespace {

constexpr double kTight = 1e-12;

// Oracle for Gauss sums: floating m*j*j/n straight into std::polar, no
// exact reduction. Valid for small arguments only.
complex gauss_sum_float(i64 m, u64 n) {
  complex s{0, 0};
  for (u64 j = 1; j <= n; ++j) {
    s += std::polar(1.0, 2 * std::numbers::pi * static_cast<double>(m) * static_cast<double>(j * j) / static_cast<double>(n));
  }
  return s;
}

// Euler's criterion: Legendre symbol for odd primes.
int legendre_euler(i64 a, u64 p) {
  const u64 r = pow_mod(reduce(a, p), (p - 1) / 2, p);
  return r == 0 ? 0 : (r == 1 ? 1 : -1);
}

TEST(CexpTest, Examples) {
  EXPECT_NEAR(std::abs(cexp({0, 1}) - complex(1, 0)), 0, kTight);
  EXPECT_NEAR(std::abs(cexp({1, 4}) - complex(0, 1)), 0, kTight);
  EXPECT_NEAR(std::abs(cexp({1, 3}) - complex(-0.5, std::sqrt(3.0) / 2)), 0, kTight);
}

TEST(CexpTest, UnitModulusAndPeriodicity) {
  for (u64 den = 1; den <= 60; ++den) {
    for (i64 num = -130; num <= 130; ++num) {
      const complex z = cexp({num, den});
      ASSERT_NEAR(std::abs(z), 1.0, kTight);
      ASSERT_NEAR(std::abs(z - cexp({num + static_cast<i64>(den) * 7, den})), 0.0, kTight);
      ASSERT_NEAR(std::abs(z - std::polar(1.0, 2 * std::numbers::pi * num / static_cast<double>(den))), 0.0, 1e-12);
    }
  }
  // Huge numerators are reduced exactly before the float conversion.
  EXPECT_NEAR(std::abs(cexp({INT64_MAX, 2}) - complex(-1, 0)), 0, kTight);
  EXPECT_NEAR(std::abs(cexp({INT64_MIN, 3}) - cexp({reduce(INT64_MIN, 3), 3})), 0, kTight);
  EXPECT_THROW(cexp({1, 0}), UsageError);
}

TEST(CharacterTest, Examples) {
  const GaussianResidue z(2, 1, 5);
  EXPECT_NEAR(std::abs(char_value(Character(0, 0, 5), z) - complex(1, 0)), 0, kTight);
  EXPECT_NEAR(std::abs(char_value(Character(1, 0, 3), GaussianResidue(1, 0, 3)) - complex(-0.5, std::sqrt(3.0) / 2)), 0,
              kTight);
  EXPECT_NEAR(std::abs(char_value(Character(1, 2, 3), GaussianResidue(2, 2, 3)) - complex(1, 0)), 0, kTight);
  EXPECT_THROW(char_value(Character(1, 1, 3), z), UsageError);
  EXPECT_TRUE(Character(3, 6, 3).is_trivial());
}

TEST(CharacterTest, HomomorphismAndConjugateSymmetry) {
  for (u64 n = 2; n <= 5; ++n) {
    for (u64 c = 0; c < n * n; ++c) {
      const Character chi(c / n, c % n, n);
      for (u64 i = 0; i < n * n; ++i) {
        const auto z = GaussianResidue::from_index(i, n);
        ASSERT_NEAR(std::abs(char_value(chi, -z) - std::conj(char_value(chi, z))), 0, kTight);
        for (u64 j = 0; j < n * n; ++j) {
          const auto w = GaussianResidue::from_index(j, n);
          ASSERT_NEAR(std::abs(char_value(chi, z + w) - char_value(chi, z) * char_value(chi, w)), 0, kTight);
        }
      }
    }
  }
}

TEST(CharacterTest, Orthogonality) {
  for (u64 n = 2; n <= 7; ++n) {
    for (u64 c = 0; c < n * n; ++c) {
      const Character chi(c / n, c % n, n);
      complex sum{0, 0};
      for (u64 i = 0; i < n * n; ++i) sum += char_value(chi, GaussianResidue::from_index(i, n));
      const double expected = chi.is_trivial() ? static_cast<double>(n * n) : 0.0;
      EXPECT_NEAR(std::abs(sum - complex(expected, 0)), 0, 1e-9) << n << " chi=" << c;
    }
  }
}

TEST(CharacterTest, DistinctCharactersAreDistinctFunctions) {
  const u64 n = 4;
  for (u64 c1 = 0; c1 < n * n; ++c1) {
    for (u64 c2 = c1 + 1; c2 < n * n; ++c2) {
      bool differ = false;
      for (u64 i = 0; i < n * n && !differ; ++i) {
        const auto z = GaussianResidue::from_index(i, n);
        differ = std::abs(char_value(Character(c1 / n, c1 % n, n), z) - char_value(Character(c2 / n, c2 % n, n), z)) > 1e-9;
      }
      EXPECT_TRUE(differ);
    }
  }
}

TEST(GaussSumTest, Examples) {
  EXPECT_NEAR(std::abs(gauss_sum({1, 1}) - complex(1, 0)), 0, 1e-12);
  EXPECT_NEAR(std::abs(gauss_sum({1, 3}) - complex(0, std::sqrt(3.0))), 0, 1e-12);
  EXPECT_NEAR(std::abs(gauss_sum({1, 5}) - complex(std::sqrt(5.0), 0)), 0, 1e-12);
  EXPECT_NEAR(std::abs(gauss_sum({2, 3}) - complex(0, -std::sqrt(3.0))), 0, 1e-12);
  EXPECT_THROW(gauss_sum({1, 0}), UsageError);
}

TEST(GaussSumTest, MatchesFloatingOracle) {
  for (u64 n = 1; n <= 40; ++n) {
    for (i64 m = -3; m <= 2 * static_cast<i64>(n); ++m) {
      ASSERT_NEAR(std::abs(gauss_sum({m, n}) - gauss_sum_float(m, n)), 0, 1e-9) << m << ' ' << n;
    }
  }
}

TEST(GaussSumTest, MagnitudeAndReduction) {
  for (u64 n = 1; n <= 99; n += 2) {
    for (i64 m = 1; m <= static_cast<i64>(n); ++m) {
      const GaussSumParams p{m, n};
      if (!p.coprime()) continue;
      const complex s = gauss_sum(p);
      ASSERT_NEAR(std::abs(s), std::sqrt(static_cast<double>(n)), 1e-6);
      ASSERT_NEAR(std::abs(s - gauss_sum({m + 5 * static_cast<i64>(n), n})), 0, 1e-9);
    }
  }
}

TEST(GaussSumTest, TableMatchesDirectSummation) {
  for (u64 d : {1u, 2u, 9u, 15u, 16u, 45u}) {
    const auto table = gauss_sum_table(d);
    for (u64 c = 0; c < d; ++c) ASSERT_NEAR(std::abs(table[c] - gauss_sum({static_cast<i64>(c), d})), 0, 1e-9);
  }
}

TEST(GaussSumTest, NonCoprimeFlagged) {
  EXPECT_TRUE((GaussSumParams{2, 9}).coprime());
  EXPECT_FALSE((GaussSumParams{3, 9}).coprime());
  EXPECT_FALSE((GaussSumParams{0, 9}).coprime());
  EXPECT_TRUE((GaussSumParams{0, 1}).coprime());
  // S(3, 9) = 3 * S(1, 3): gcd > 1 still sums fine
  EXPECT_NEAR(std::abs(gauss_sum({3, 9}) - 3.0 * gauss_sum({1, 3})), 0, 1e-9);
}

TEST(JacobiTest, MatchesEulerCriterionAndMultiplicativity) {
  for (u64 p = 3; p < 200; p += 2) {
    if (!is_prime(p)) continue;
    for (i64 a = -10; a < 2 * static_cast<i64>(p); ++a) ASSERT_EQ(jacobi(a, p), legendre_euler(a, p)) << a << ' ' << p;
  }
  // (a | mn) = (a | m)(a | n)
  for (u64 m = 1; m < 40; m += 2) {
    for (u64 n = 1; n < 40; n += 2) {
      for (i64 a = 0; a < 50; ++a) ASSERT_EQ(jacobi(a, m * n), jacobi(a, m) * jacobi(a, n));
    }
  }
  EXPECT_THROW(jacobi(1, 4), DomainError);
}

TEST(GaussSumClosedFormTest, Examples) {
  EXPECT_NEAR(std::abs(gauss_sum_closed_form({1, 5}) - complex(std::sqrt(5.0), 0)), 0, 1e-12);
  EXPECT_NEAR(std::abs(gauss_sum_closed_form({1, 3}) - complex(0, std::sqrt(3.0))), 0, 1e-12);
  EXPECT_NEAR(std::abs(gauss_sum_closed_form({2, 3}) - complex(0, -std::sqrt(3.0))), 0, 1e-12);
  EXPECT_THROW(gauss_sum_closed_form({1, 4}), DomainError);
  EXPECT_THROW(gauss_sum_closed_form({3, 9}), DomainError);
}

TEST(GaussSumClosedFormTest, AgreesWithDirectSummation) {
  for (u64 n = 1; n <= 99; n += 2) {
    const double tol = 1e-9 * std::sqrt(static_cast<double>(n));
    for (i64 m = 1; m <= static_cast<i64>(n); ++m) {
      const GaussSumParams p{m, n};
      if (!p.coprime()) continue;
      ASSERT_NEAR(std::abs(gauss_sum(p) - gauss_sum_closed_form(p)), 0, tol) << m << ' ' << n;
    }
  }
}

}  // namespace
}  // namespace gcay
