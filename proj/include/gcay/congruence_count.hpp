#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <string>
#include <tuple>
#include <vector>

#include "gcay/characters.hpp"
#include "gcay/errors.hpp"
#include "gcay/modulus.hpp"

namespace gcay {

/// a_1 x_1^2 + ... + a_k x_k^2 = b (mod n), counted over (Z_n)^k.
class CongruenceInstance {
public:
  CongruenceInstance(u64 k, i64 b, u64 n, const std::vector<i64>& coefficients) : b_(0), n_(n) {
    if (k == 0) throw UsageError("congruence: k must be >= 1");
    if (n == 0) throw UsageError("congruence: n must be >= 1");
    if (coefficients.size() != k) {
      throw UsageError("congruence: expected " + std::to_string(k) + " coefficients, got " +
                       std::to_string(coefficients.size()));
    }
    b_ = reduce(b, n);
    a_.reserve(k);
    for (i64 c : coefficients) a_.push_back(reduce(c, n));
  }

  // Unit-circle instance x^2 + y^2 = 1 (mod n).
  static CongruenceInstance unit_circle(u64 n) { return {2, 1, n, {1, 1}}; }

  u64 k() const { return a_.size(); }
  u64 b() const { return b_; }
  u64 n() const { return n_; }
  const std::vector<u64>& coefficients() const { return a_; }

  friend auto operator<=>(const CongruenceInstance&, const CongruenceInstance&) = default;

private:
  std::vector<u64> a_;
  u64 b_;
  u64 n_;
};

constexpr double kTothIntegralityTolerance = 1e-6;

struct TothEvaluation {
  complex value;
  u64 count = 0;
  // Gauss sums S(m a_i, d) evaluated with gcd(m a_i, d) > 1.
  u64 non_coprime_gauss_sums = 0;
};

/// Evaluates
///   N = n^(k-1) sum_{d | n} d^(-k) sum_{gcd(m,d)=1} e(-b m / d) prod_i S(m a_i, d)
/// for odd n. The complex total must land on an integer; anything else is
/// reported as a NumericalFailure rather than rounded.
inline TothEvaluation toth_evaluate(const CongruenceInstance& inst) {
  const u64 n = inst.n();
  if (n % 2 == 0) {
    throw DomainError("count_toth: the formula is only used for odd n (n = " + std::to_string(n) +
                      "); use count_brute for even moduli");
  }
  const auto k = static_cast<int>(inst.k());
  TothEvaluation out;
  complex total{0.0, 0.0};
  const double n_pow = std::pow(static_cast<double>(n), k - 1);

  for (u64 d : divisors(n)) {
    const std::vector<complex> gauss = gauss_sum_table(d);
    const RootsOfUnity roots(d);
    complex inner{0.0, 0.0};
    for (u64 m = 1; m <= d; ++m) {
      const u64 mr = m % d;
      if (std::gcd(mr, d) != 1) continue;
      // e(-b m / d)
      complex term = roots[sub_mod(0, mul_mod(inst.b() % d, mr, d), d)];
      for (u64 a : inst.coefficients()) {
        const u64 c = mul_mod(mr, a % d, d);
        if (std::gcd(c, d) != 1) ++out.non_coprime_gauss_sums;
        term *= gauss[c];
      }
      inner += term;
    }
    total += inner * (n_pow / std::pow(static_cast<double>(d), k));
  }

  out.value = total;
  const double rounded = std::round(total.real());
  if (std::abs(total.imag()) > kTothIntegralityTolerance ||
      std::abs(total.real() - rounded) > kTothIntegralityTolerance || rounded < 0) {
    throw NumericalFailure("count_toth: non-integral result " + std::to_string(total.real()) + " + " +
                           std::to_string(total.imag()) + "i for n = " + std::to_string(n));
  }
  out.count = static_cast<u64>(rounded);
  return out;
}

inline u64 count_toth(const CongruenceInstance& inst) { return toth_evaluate(inst).count; }

/// Number of solutions of x^2 + y^2 = 1 mod p^r.
inline u64 count_closed_form_2(u64 p, u64 r) {
  if (!is_prime(p)) throw UsageError("count_closed_form_2: p = " + std::to_string(p) + " is not prime");
  if (r == 0) throw UsageError("count_closed_form_2: r must be >= 1");
  auto checked_pow = [](u64 base, u64 e) {
    u64 acc = 1;
    for (u64 i = 0; i < e; ++i) {
      if (__builtin_mul_overflow(acc, base, &acc)) throw ResourceError("count_closed_form_2: overflow");
    }
    return acc;
  };
  if (p == 2) return r == 1 ? 2 : checked_pow(2, r + 1);
  const u64 head = checked_pow(p, r - 1);
  u64 out = 0;
  if (__builtin_mul_overflow(head, p % 4 == 1 ? p - 1 : p + 1, &out)) {
    throw ResourceError("count_closed_form_2: overflow");
  }
  return out;
}

constexpr u64 kBruteBudget = 100'000'000;

/// Exhaustive count over all of (Z_n)^k; refuses when n^k > 10^8.
inline u64 count_brute(const CongruenceInstance& inst) {
  const u64 n = inst.n();
  const u64 k = inst.k();
  u64 work = 1;
  for (u64 i = 0; i < k; ++i) {
    if (__builtin_mul_overflow(work, n, &work) || work > kBruteBudget) {
      throw ResourceError("count_brute: n^k exceeds the 10^8 enumeration budget");
    }
  }
  // term[i][x] = a_i x^2 mod n
  std::vector<std::vector<u64>> term(k, std::vector<u64>(n));
  for (u64 i = 0; i < k; ++i) {
    for (u64 x = 0; x < n; ++x) term[i][x] = mul_mod(inst.coefficients()[i], mul_mod(x, x, n), n);
  }

  // Odometer over the first k-1 variables; the last is scanned directly.
  std::vector<u64> x(k, 0);
  const auto& last = term[k - 1];
  u64 count = 0;
  while (true) {
    u64 partial = 0;
    for (u64 i = 0; i + 1 < k; ++i) partial = add_mod(partial, term[i][x[i]], n);
    const u64 need = sub_mod(inst.b(), partial, n);
    for (u64 v : last) count += (v == need);

    u64 pos = 0;
    while (pos + 1 < k && ++x[pos] == n) x[pos++] = 0;
    if (pos + 1 >= k) break;
  }
  return count;
}

enum class CountMethod { toth, brute, closed2 };

/// Memo of counts keyed by (method, instance). Safe for concurrent use; the
/// computation itself runs outside the lock.
class CountCache {
public:
  u64 get(CountMethod method, const CongruenceInstance& inst) {
    const Key key{method, inst};
    {
      std::lock_guard lock(mu_);
      if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    }
    const u64 value = compute(method, inst);
    std::lock_guard lock(mu_);
    memo_.emplace(key, value);
    return value;
  }

  std::size_t size() const {
    std::lock_guard lock(mu_);
    return memo_.size();
  }

private:
  using Key = std::pair<CountMethod, CongruenceInstance>;

  static u64 compute(CountMethod method, const CongruenceInstance& inst) {
    switch (method) {
      case CountMethod::toth: return count_toth(inst);
      case CountMethod::brute: return count_brute(inst);
      case CountMethod::closed2: {
        if (inst.k() != 2 || inst.b() != 1 % inst.n() || inst.coefficients() != std::vector<u64>{1, 1}) {
          throw UsageError("closed form only covers x^2 + y^2 = 1");
        }
        // n must be a prime power p^r
        const u64 n = inst.n();
        u64 p = 0;
        for (u64 d : divisors(n)) {
          if (d > 1) {
            p = d;
            break;
          }
        }
        u64 r = 0, rest = n;
        while (rest % p == 0) {
          rest /= p;
          ++r;
        }
        if (rest != 1) throw UsageError("closed form needs a prime-power modulus");
        return count_closed_form_2(p, r);
      }
    }
    throw std::logic_error("unknown count method");
  }

  mutable std::mutex mu_;
  std::map<Key, u64> memo_;
};

}  // namespace gcay
