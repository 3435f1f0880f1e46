#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "gcay/errors.hpp"
#include "gcay/modulus.hpp"

namespace gcay {

/// An element a + bi of Z_n[i], stored canonically with 0 <= a, b < n.
class GaussianResidue {
public:
  GaussianResidue(u64 a, u64 b, u64 n) : a_(a % n), b_(b % n), n_(n) {
    if (n < 2) throw UsageError("GaussianResidue: modulus must be >= 2");
  }

  static GaussianResidue from_signed(i64 a, i64 b, u64 n) {
    if (n < 2) throw UsageError("GaussianResidue: modulus must be >= 2");
    return GaussianResidue(reduce(a, n), reduce(b, n), n);
  }

  static GaussianResidue zero(u64 n) { return {0, 0, n}; }
  static GaussianResidue one(u64 n) { return {1, 0, n}; }

  u64 re() const { return a_; }
  u64 im() const { return b_; }
  u64 modulus() const { return n_; }
  bool is_zero() const { return a_ == 0 && b_ == 0; }

  // Row-major vertex index a*n + b; lexicographic order on (a, b).
  u64 index() const { return a_ * n_ + b_; }
  static GaussianResidue from_index(u64 idx, u64 n) { return {idx / n, idx % n, n}; }

  friend bool operator==(const GaussianResidue&, const GaussianResidue&) = default;
  friend auto operator<=>(const GaussianResidue& x, const GaussianResidue& y) {
    return std::tie(x.n_, x.a_, x.b_) <=> std::tie(y.n_, y.a_, y.b_);
  }

  friend std::ostream& operator<<(std::ostream& os, const GaussianResidue& z) {
    return os << '(' << z.a_ << ',' << z.b_ << ')';
  }

private:
  u64 a_;
  u64 b_;
  u64 n_;
};

namespace detail {
inline u64 common_modulus(const GaussianResidue& z, const GaussianResidue& w) {
  if (z.modulus() != w.modulus()) {
    throw UsageError("mismatched moduli: " + std::to_string(z.modulus()) + " vs " +
                     std::to_string(w.modulus()));
  }
  return z.modulus();
}
}  // namespace detail

inline GaussianResidue add(const GaussianResidue& z, const GaussianResidue& w) {
  const u64 n = detail::common_modulus(z, w);
  return {add_mod(z.re(), w.re(), n), add_mod(z.im(), w.im(), n), n};
}

inline GaussianResidue sub(const GaussianResidue& z, const GaussianResidue& w) {
  const u64 n = detail::common_modulus(z, w);
  return {sub_mod(z.re(), w.re(), n), sub_mod(z.im(), w.im(), n), n};
}

inline GaussianResidue neg(const GaussianResidue& z) {
  const u64 n = z.modulus();
  return {sub_mod(0, z.re(), n), sub_mod(0, z.im(), n), n};
}

// (a+bi)(c+di) = (ac - bd) + (ad + bc)i
inline GaussianResidue mul(const GaussianResidue& z, const GaussianResidue& w) {
  const u64 n = detail::common_modulus(z, w);
  const u64 ac = mul_mod(z.re(), w.re(), n);
  const u64 bd = mul_mod(z.im(), w.im(), n);
  const u64 ad = mul_mod(z.re(), w.im(), n);
  const u64 bc = mul_mod(z.im(), w.re(), n);
  return {sub_mod(ac, bd, n), add_mod(ad, bc, n), n};
}

// Square-and-multiply; pow(z, 0) is 1 (including 0^0).
inline GaussianResidue pow(GaussianResidue z, u64 exponent) {
  GaussianResidue result = GaussianResidue::one(z.modulus());
  while (exponent != 0) {
    if (exponent & 1) result = mul(result, z);
    z = mul(z, z);
    exponent >>= 1;
  }
  return result;
}

inline GaussianResidue operator+(const GaussianResidue& z, const GaussianResidue& w) { return add(z, w); }
inline GaussianResidue operator-(const GaussianResidue& z, const GaussianResidue& w) { return sub(z, w); }
inline GaussianResidue operator-(const GaussianResidue& z) { return neg(z); }
inline GaussianResidue operator*(const GaussianResidue& z, const GaussianResidue& w) { return mul(z, w); }

/// N(a+bi) = a^2 + b^2 mod n.
inline u64 norm(const GaussianResidue& z) {
  const u64 n = z.modulus();
  return add_mod(mul_mod(z.re(), z.re(), n), mul_mod(z.im(), z.im(), n), n);
}

/// Field norm of Z_p[i] over Z_p, computed as z^(p+1). Only defined when
/// Z_p[i] is a field, i.e. p is a prime congruent to 3 mod 4. The zero
/// element maps to 0.
inline u64 field_norm(const GaussianResidue& z) {
  const u64 p = z.modulus();
  if (classify(p) != ModulusClass::prime_3_mod_4) {
    throw DomainError("field_norm: Z_" + std::to_string(p) +
                      "[i] is not a field (need a prime p = 3 mod 4)");
  }
  const GaussianResidue w = pow(z, p + 1);
  if (w.im() != 0) {
    throw std::logic_error("field_norm: z^(p+1) left the base field");
  }
  return w.re();
}

/// Z_n[i] is a field iff n is a prime with n = 3 mod 4.
inline bool is_field(u64 n) {
  if (n < 2) throw UsageError("is_field: n must be >= 2");
  return classify(n) == ModulusClass::prime_3_mod_4;
}

/// Solutions of a^2 + b^2 = 1 mod n in lexicographic order.
struct UnitSet {
  u64 modulus = 0;
  std::vector<GaussianResidue> elements;

  std::size_t cardinality() const { return elements.size(); }

  bool contains(const GaussianResidue& z) const {
    return z.modulus() == modulus && std::binary_search(elements.begin(), elements.end(), z);
  }
};

constexpr u64 kExhaustiveUnitsLimit = 10'000;
constexpr u64 kUnitsModulusLimit = 50'000'000;

/// Plain O(n^2) scan. Also the oracle for units_by_squares.
inline UnitSet units_exhaustive(u64 n) {
  if (n < 2) throw UsageError("units: n must be >= 2");
  UnitSet s{n, {}};
  for (u64 a = 0; a < n; ++a) {
    const u64 a2 = mul_mod(a, a, n);
    for (u64 b = 0; b < n; ++b) {
      if (add_mod(a2, mul_mod(b, b, n), n) == 1 % n) s.elements.emplace_back(a, b, n);
    }
  }
  return s;
}

/// O(n log n) scan: for each a, look up every b with b^2 = 1 - a^2 in a
/// table of squares sorted by residue.
inline UnitSet units_by_squares(u64 n) {
  if (n < 2) throw UsageError("units: n must be >= 2");
  if (n > kUnitsModulusLimit) {
    throw ResourceError("units: n = " + std::to_string(n) + " exceeds the enumeration budget");
  }
  std::vector<std::pair<u64, u64>> squares(n);  // (x^2 mod n, x)
  for (u64 x = 0; x < n; ++x) squares[x] = {mul_mod(x, x, n), x};
  std::sort(squares.begin(), squares.end());

  UnitSet s{n, {}};
  for (u64 a = 0; a < n; ++a) {
    const u64 target = sub_mod(1, mul_mod(a, a, n), n);
    auto lo = std::lower_bound(squares.begin(), squares.end(), std::pair<u64, u64>{target, 0});
    for (auto it = lo; it != squares.end() && it->first == target; ++it) {
      s.elements.emplace_back(a, it->second, n);
    }
  }
  return s;
}

inline UnitSet units(u64 n) {
  return n <= kExhaustiveUnitsLimit ? units_exhaustive(n) : units_by_squares(n);
}

}  // namespace gcay
