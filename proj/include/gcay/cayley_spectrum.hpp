#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "gcay/characters.hpp"
#include "gcay/errors.hpp"
#include "gcay/gaussian_ring.hpp"
#include "gcay/modulus.hpp"
#include "gcay/parallel.hpp"

namespace gcay {

/// Cay(Z_n[i], S) with S the norm-one elements. Adjacency is implicit:
/// v ~ v + s for s in S. Vertices are indexed row-major, a*n + b.
struct CayleyGraph {
  Modulus modulus;
  UnitSet connection_set;

  u64 n() const { return modulus.value(); }
  u64 vertex_count() const { return n() * n(); }
  u64 degree() const { return connection_set.cardinality(); }
  // Outside this class the graph is studied in exploratory mode only.
  bool in_hypothesis() const { return modulus.in_hypothesis(); }

  template <typename Fn>
  void for_each_neighbor(u64 vertex, Fn&& fn) const {
    const u64 m = n();
    const u64 a = vertex / m, b = vertex % m;
    for (const auto& s : connection_set.elements) fn(add_mod(a, s.re(), m) * m + add_mod(b, s.im(), m));
  }

  std::vector<u64> neighbors(u64 vertex) const {
    std::vector<u64> out;
    out.reserve(degree());
    for_each_neighbor(vertex, [&](u64 w) { out.push_back(w); });
    return out;
  }
};

constexpr u64 kGraphModulusLimit = 1u << 16;

inline CayleyGraph build_graph(u64 n) {
  Modulus m(n);
  if (n > kGraphModulusLimit) throw ResourceError("build_graph: n too large for a vertex index");
  UnitSet s = units(n);
  if (s.elements.empty()) throw DegenerateInput("build_graph: empty unit set for n = " + std::to_string(n));
  // Connection-set hypotheses: symmetric, identity excluded.
  for (const auto& z : s.elements) {
    if (z.is_zero() || !s.contains(-z)) throw std::logic_error("build_graph: connection set not symmetric");
  }
  return CayleyGraph{m, std::move(s)};
}

enum class SpectrumSource { analytic, numeric };

constexpr std::string_view to_string(SpectrumSource s) {
  return s == SpectrumSource::analytic ? "analytic" : "numeric";
}

struct SpectrumEntry {
  double value = 0;
  u64 multiplicity = 0;
};

constexpr double kGroupingTolerance = 1e-6;

/// Multiset of adjacency eigenvalues. `values` keeps every eigenvalue in
/// ascending order; `entries` merges values within the grouping tolerance,
/// each group represented by its mean.
struct Spectrum {
  u64 modulus = 0;
  SpectrumSource source = SpectrumSource::analytic;
  std::vector<double> values;
  std::vector<SpectrumEntry> entries;

  u64 total_multiplicity() const {
    u64 t = 0;
    for (const auto& e : entries) t += e.multiplicity;
    return t;
  }
  double trace() const {
    double t = 0;
    for (const auto& e : entries) t += e.value * static_cast<double>(e.multiplicity);
    return t;
  }
  double second_moment() const {
    double t = 0;
    for (const auto& e : entries) t += e.value * e.value * static_cast<double>(e.multiplicity);
    return t;
  }
  u64 multiplicity_of(double x, double tol = kGroupingTolerance) const {
    u64 m = 0;
    for (const auto& e : entries) {
      if (std::abs(e.value - x) <= tol) m += e.multiplicity;
    }
    return m;
  }
};

inline Spectrum make_spectrum(u64 n, SpectrumSource source, std::vector<double> values,
                              double tol = kGroupingTolerance) {
  std::sort(values.begin(), values.end());
  Spectrum s{n, source, std::move(values), {}};
  std::size_t i = 0;
  while (i < s.values.size()) {
    std::size_t j = i;
    double sum = 0;
    while (j < s.values.size() && s.values[j] - s.values[i] <= tol) sum += s.values[j++];
    const double mean = sum / static_cast<double>(j - i);
    s.entries.push_back({mean == 0.0 ? 0.0 : mean, j - i});
    i = j;
  }
  return s;
}

/// sum_{s in S} chi(s) for a single character, by direct evaluation.
inline complex character_sum(const Character& chi, const CayleyGraph& g) {
  if (chi.modulus != g.n()) throw UsageError("character_sum: character and graph moduli differ");
  complex sum{0.0, 0.0};
  for (const auto& s : g.connection_set.elements) sum += char_value(chi, s);
  return sum;
}

namespace detail {
inline double real_eigenvalue(const complex& sum, const CayleyGraph& g, u64 u, u64 v) {
  // S is symmetric, so the imaginary parts cancel pairwise.
  if (std::abs(sum.imag()) > 1e-9 * static_cast<double>(g.degree())) {
    throw NumericalFailure("eigenvalue: imaginary residue " + std::to_string(sum.imag()) + " at chi = (" +
                           std::to_string(u) + "," + std::to_string(v) + ")");
  }
  return sum.real();
}
}  // namespace detail

/// The eigenvalue attached to the eigenvector (chi(g))_g.
inline double eigenvalue(const Character& chi, const CayleyGraph& g) {
  return detail::real_eigenvalue(character_sum(chi, g), g, chi.u, chi.v);
}

/// Character sums for every (u, v), indexed u*n + v. One roots-of-unity
/// table is shared across workers.
inline std::vector<complex> character_sums(const CayleyGraph& g, unsigned workers = 1) {
  const u64 n = g.n();
  const RootsOfUnity roots(n);
  std::vector<complex> out(g.vertex_count());
  parallel_for(out.size(), workers, [&](std::size_t idx) {
    const u64 u = idx / n, v = idx % n;
    complex sum{0.0, 0.0};
    for (const auto& s : g.connection_set.elements) {
      sum += roots[add_mod(mul_mod(u, s.re(), n), mul_mod(v, s.im(), n), n)];
    }
    out[idx] = sum;
  });
  return out;
}

/// Eigenvalue per character index (u, v), indexed u*n + v.
inline std::vector<double> character_eigenvalues(const CayleyGraph& g, unsigned workers = 1) {
  const auto sums = character_sums(g, workers);
  std::vector<double> out(sums.size());
  for (std::size_t i = 0; i < sums.size(); ++i) out[i] = detail::real_eigenvalue(sums[i], g, i / g.n(), i % g.n());
  return out;
}

inline Spectrum full_spectrum(const CayleyGraph& g, unsigned workers = 1, double tol = kGroupingTolerance) {
  return make_spectrum(g.n(), SpectrumSource::analytic, character_eigenvalues(g, workers), tol);
}

constexpr u64 kNumericModulusLimit = 50;

/// Dense eigendecomposition of the explicit adjacency matrix, kept
/// independent of the character route.
inline Spectrum numeric_spectrum(const CayleyGraph& g, double tol = kGroupingTolerance) {
  if (g.n() > kNumericModulusLimit) {
    throw ResourceError("numeric_spectrum: n = " + std::to_string(g.n()) + " exceeds the dense limit of " +
                        std::to_string(kNumericModulusLimit));
  }
  const auto size = static_cast<Eigen::Index>(g.vertex_count());
  Eigen::MatrixXd adjacency = Eigen::MatrixXd::Zero(size, size);
  for (u64 v = 0; v < g.vertex_count(); ++v) {
    g.for_each_neighbor(v, [&](u64 w) { adjacency(static_cast<Eigen::Index>(v), static_cast<Eigen::Index>(w)) = 1.0; });
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(adjacency, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericalFailure("numeric_spectrum: eigensolver did not converge");
  const Eigen::VectorXd& ev = solver.eigenvalues();
  return make_spectrum(g.n(), SpectrumSource::numeric, std::vector<double>(ev.data(), ev.data() + ev.size()), tol);
}

/// Largest elementwise gap between two sorted eigenvalue lists.
inline double max_sorted_deviation(const Spectrum& x, const Spectrum& y) {
  if (x.values.size() != y.values.size()) throw UsageError("spectra have different sizes");
  double worst = 0;
  for (std::size_t i = 0; i < x.values.size(); ++i) worst = std::max(worst, std::abs(x.values[i] - y.values[i]));
  return worst;
}

struct RamanujanReport {
  u64 modulus = 0;
  u64 degree = 0;
  u64 trivial_multiplicity = 0;
  bool bipartite_flag = false;  // -k is an eigenvalue
  double max_nontrivial_abs = 0;
  double bound = 0;  // 2 sqrt(k - 1)
  double sharpness = 0;
  double tolerance = 0;
  bool verdict = false;
};

constexpr double kRamanujanTolerance = 1e-6;

/// Every eigenvalue other than +-k must satisfy lambda^2 <= 4(k-1) + tol*k.
/// The tolerance is applied to lambda^2, never to |lambda|.
inline RamanujanReport ramanujan_check(const Spectrum& spec, u64 k, double tol = kRamanujanTolerance,
                                       double group_tol = kGroupingTolerance) {
  const u64 n = spec.modulus;
  if (spec.total_multiplicity() != n * n || spec.values.size() != n * n) {
    throw UsageError("ramanujan_check: spectrum has " + std::to_string(spec.total_multiplicity()) +
                     " eigenvalues, expected " + std::to_string(n * n));
  }
  const double kd = static_cast<double>(k);
  RamanujanReport r;
  r.modulus = n;
  r.degree = k;
  r.bound = 2.0 * std::sqrt(kd - 1.0);
  r.tolerance = tol;
  r.verdict = true;
  for (const auto& e : spec.entries) {
    if (std::abs(e.value - kd) <= group_tol) {
      r.trivial_multiplicity += e.multiplicity;
      continue;
    }
    if (std::abs(e.value + kd) <= group_tol) {
      r.bipartite_flag = true;
      continue;
    }
    r.max_nontrivial_abs = std::max(r.max_nontrivial_abs, std::abs(e.value));
    if (e.value * e.value > 4.0 * (kd - 1.0) + tol * kd) r.verdict = false;
  }
  r.sharpness = r.bound > 0 ? r.max_nontrivial_abs / r.bound : 0.0;
  return r;
}

struct DeligneResult {
  double max_abs = 0;
  double bound = 0;  // 2 sqrt(p): extension degree 2 over F_p
  bool ok = false;
};

/// Largest |sum_{s in S} chi(s)| over nontrivial chi, against 2 sqrt(p).
/// Only meaningful when Z_p[i] is the field F_{p^2}.
inline DeligneResult deligne_check(const CayleyGraph& g, unsigned workers = 1, double tol = kRamanujanTolerance) {
  if (!g.in_hypothesis()) {
    throw DomainError("deligne_check: n = " + std::to_string(g.n()) +
                      " is not a prime = 3 mod 4; use ramanujan_check on the spectrum instead");
  }
  const auto sums = character_sums(g, workers);
  DeligneResult r;
  const double p = static_cast<double>(g.n());
  r.bound = 2.0 * std::sqrt(p);
  for (std::size_t i = 1; i < sums.size(); ++i) r.max_abs = std::max(r.max_abs, std::abs(sums[i]));
  r.ok = r.max_abs <= r.bound + tol * p;
  return r;
}

}  // namespace gcay
