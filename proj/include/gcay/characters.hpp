#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>
#include <string>
#include <vector>

#include "gcay/errors.hpp"
#include "gcay/gaussian_ring.hpp"
#include "gcay/modulus.hpp"

namespace gcay {

using complex = std::complex<double>;

/// numerator/denominator, read modulo 1.
struct RationalAngle {
  i64 numerator = 0;
  u64 denominator = 1;
};

/// e(x) = exp(2 pi i x). The argument is reduced mod 1 in exact integer
/// arithmetic and then folded into (-1/2, 1/2] before the float conversion.
inline complex cexp(RationalAngle x) {
  if (x.denominator == 0) throw UsageError("cexp: zero denominator");
  const u64 den = x.denominator;
  const u64 r = reduce(x.numerator, den);
  if (r == 0) return {1.0, 0.0};
  // exact quarter turns
  if (den % 4 == 0 && r % (den / 4) == 0) {
    static constexpr complex quarter[4] = {{1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};
    return quarter[r / (den / 4)];
  }
  if (den % 2 == 0 && r == den / 2) return {-1.0, 0.0};
  const double frac = (2 * r <= den) ? static_cast<double>(r) / static_cast<double>(den)
                                     : -static_cast<double>(den - r) / static_cast<double>(den);
  const double theta = 2.0 * std::numbers::pi * frac;
  return {std::cos(theta), std::sin(theta)};
}

/// Table of e(j/n) for j in [0, n). Built once per modulus and shared
/// read-only afterwards.
class RootsOfUnity {
public:
  explicit RootsOfUnity(u64 n) : n_(n), table_(n) {
    if (n == 0) throw UsageError("RootsOfUnity: n must be >= 1");
    for (u64 j = 0; j < n; ++j) table_[j] = cexp({static_cast<i64>(j), n});
  }

  u64 order() const { return n_; }
  // j must already be reduced into [0, n)
  const complex& operator[](u64 j) const { return table_[j]; }
  double cos(u64 j) const { return table_[j].real(); }

private:
  u64 n_;
  std::vector<complex> table_;
};

/// The additive character chi_(u,v)(a + bi) = e((u a + v b) / n) of Z_n[i].
/// (0, 0) is the trivial character.
struct Character {
  u64 u = 0;
  u64 v = 0;
  u64 modulus = 2;

  Character(u64 u_, u64 v_, u64 n) : u(u_ % n), v(v_ % n), modulus(n) {
    if (n < 2) throw UsageError("Character: modulus must be >= 2");
  }

  bool is_trivial() const { return u == 0 && v == 0; }

  // Exponent numerator (u a + v b) mod n for z = a + bi.
  u64 phase(const GaussianResidue& z) const {
    if (z.modulus() != modulus) {
      throw UsageError("character/element modulus mismatch: " + std::to_string(modulus) + " vs " +
                       std::to_string(z.modulus()));
    }
    return add_mod(mul_mod(u, z.re(), modulus), mul_mod(v, z.im(), modulus), modulus);
  }

  friend bool operator==(const Character&, const Character&) = default;
};

inline complex char_value(const Character& chi, const GaussianResidue& z) {
  return cexp({static_cast<i64>(chi.phase(z)), chi.modulus});
}

struct GaussSumParams {
  i64 m = 1;
  u64 n = 1;

  bool coprime() const { return std::gcd(reduce(m, n), n) == 1; }
};

/// S(m, n) = sum_{j=1}^{n} e(m j^2 / n), by direct summation. Defined for
/// every m; callers that care about the gcd(m, n) = 1 convention can test
/// params.coprime().
inline complex gauss_sum(GaussSumParams params) {
  const u64 n = params.n;
  if (n == 0) throw UsageError("gauss_sum: n must be >= 1");
  const u64 m = reduce(params.m, n);
  complex sum{0.0, 0.0};
  for (u64 j = 1; j <= n; ++j) {
    const u64 jj = j % n;
    sum += cexp({static_cast<i64>(mul_mod(m, mul_mod(jj, jj, n), n)), n});
  }
  return sum;
}

/// S(c, d) for every c in [0, d), sharing one roots-of-unity table and one
/// histogram of squares mod d.
inline std::vector<complex> gauss_sum_table(u64 d) {
  if (d == 0) throw UsageError("gauss_sum_table: d must be >= 1");
  const RootsOfUnity roots(d);
  std::vector<u64> square_count(d, 0);
  for (u64 j = 0; j < d; ++j) ++square_count[mul_mod(j, j, d)];
  std::vector<complex> out(d);
  for (u64 c = 0; c < d; ++c) {
    complex sum{0.0, 0.0};
    for (u64 r = 0; r < d; ++r) {
      if (square_count[r] != 0) sum += static_cast<double>(square_count[r]) * roots[mul_mod(c, r, d)];
    }
    out[c] = sum;
  }
  return out;
}

/// Jacobi symbol (a | n) for odd n >= 1.
inline int jacobi(i64 a, u64 n) {
  if (n == 0 || n % 2 == 0) throw DomainError("jacobi: n must be odd and positive");
  u64 x = reduce(a, n);
  u64 y = n;
  int result = 1;
  while (x != 0) {
    while (x % 2 == 0) {
      x /= 2;
      const u64 r = y % 8;
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(x, y);
    if (x % 4 == 3 && y % 4 == 3) result = -result;
    x %= y;
  }
  return y == 1 ? result : 0;
}

/// Classical evaluation of S(m, n) for odd n and gcd(m, n) = 1:
/// (m|n) sqrt(n) when n = 1 mod 4, (m|n) i sqrt(n) when n = 3 mod 4.
inline complex gauss_sum_closed_form(GaussSumParams params) {
  if (params.n == 0 || params.n % 2 == 0) {
    throw DomainError("gauss_sum_closed_form: n must be odd, got " + std::to_string(params.n));
  }
  if (!params.coprime()) {
    throw DomainError("gauss_sum_closed_form: gcd(m, n) must be 1");
  }
  const double root = std::sqrt(static_cast<double>(params.n));
  const double j = jacobi(params.m, params.n);
  return params.n % 4 == 1 ? complex{j * root, 0.0} : complex{0.0, j * root};
}

}  // namespace gcay
