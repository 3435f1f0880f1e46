#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "gcay/errors.hpp"

namespace gcay {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

constexpr u64 kMaxModulus = u64{1} << 63;

constexpr u64 mul_mod(u64 a, u64 b, u64 n) {
  return static_cast<u64>(static_cast<u128>(a) * b % n);
}

constexpr u64 add_mod(u64 a, u64 b, u64 n) {
  // a, b < n <= 2^63, so the sum cannot wrap
  const u64 s = a + b;
  return s >= n ? s - n : s;
}

constexpr u64 sub_mod(u64 a, u64 b, u64 n) { return a >= b ? a - b : a + (n - b); }

constexpr u64 pow_mod(u64 base, u64 exp, u64 n) {
  u64 result = 1 % n;
  base %= n;
  while (exp != 0) {
    if (exp & 1) result = mul_mod(result, base, n);
    base = mul_mod(base, base, n);
    exp >>= 1;
  }
  return result;
}

// Reduce a signed value into [0, n).
constexpr u64 reduce(i64 x, u64 n) {
  if (x >= 0) return static_cast<u64>(x) % n;
  // -(x+1) avoids overflow at INT64_MIN
  const u64 mag = static_cast<u64>(-(x + 1)) % n;
  return n - 1 - mag;
}

/// Deterministic Miller-Rabin. The first twelve prime bases are a proven
/// witness set for every n < 3.3 * 10^24, which covers all of u64.
constexpr bool is_prime(u64 n) {
  if (n < 2) return false;
  constexpr std::array<u64, 12> bases{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (u64 p : bases) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : bases) {
    u64 x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

enum class ModulusClass { prime_3_mod_4, prime_1_mod_4, prime_2, composite };

constexpr std::string_view to_string(ModulusClass c) {
  switch (c) {
    case ModulusClass::prime_3_mod_4: return "prime_3_mod_4";
    case ModulusClass::prime_1_mod_4: return "prime_1_mod_4";
    case ModulusClass::prime_2: return "prime_2";
    case ModulusClass::composite: return "composite";
  }
  return "?";
}

constexpr ModulusClass classify(u64 n) {
  if (n == 2) return ModulusClass::prime_2;
  if (!is_prime(n)) return ModulusClass::composite;
  return n % 4 == 3 ? ModulusClass::prime_3_mod_4 : ModulusClass::prime_1_mod_4;
}

/// A validated modulus n >= 2 together with its classification.
class Modulus {
public:
  explicit Modulus(u64 n) : n_(n) {
    if (n < 2) throw UsageError("modulus must be >= 2, got " + std::to_string(n));
    if (n > kMaxModulus) throw UsageError("modulus exceeds 2^63");
    class_ = classify(n);
  }

  u64 value() const { return n_; }
  ModulusClass classification() const { return class_; }
  bool is_prime() const { return class_ != ModulusClass::composite; }

  // Z_n[i] is a field exactly in this case, and it is the hypothesis class of
  // the Ramanujan theorem.
  bool in_hypothesis() const { return class_ == ModulusClass::prime_3_mod_4; }

  friend bool operator==(const Modulus&, const Modulus&) = default;

private:
  u64 n_;
  ModulusClass class_;
};

// Trial division up to sqrt(n), ascending.
inline std::vector<u64> divisors(u64 n) {
  std::vector<u64> low, high;
  for (u64 d = 1; d <= n / d; ++d) {
    if (n % d == 0) {
      low.push_back(d);
      if (d != n / d) high.push_back(n / d);
    }
  }
  low.insert(low.end(), high.rbegin(), high.rend());
  return low;
}

}  // namespace gcay
