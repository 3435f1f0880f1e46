#pragma once

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "gcay/cayley_spectrum.hpp"
#include "gcay/congruence_count.hpp"
#include "gcay/errors.hpp"
#include "gcay/gaussian_ring.hpp"
#include "gcay/graph_analysis.hpp"
#include "gcay/modulus.hpp"
#include "gcay/parallel.hpp"

namespace gcay {

enum class Check { units, spectrum, ramanujan, deligne, graph, toth };

inline constexpr Check kAllChecks[] = {Check::units,   Check::spectrum, Check::ramanujan,
                                       Check::deligne, Check::graph,    Check::toth};

constexpr std::string_view to_string(Check c) {
  switch (c) {
    case Check::units: return "units";
    case Check::spectrum: return "spectrum";
    case Check::ramanujan: return "ramanujan";
    case Check::deligne: return "deligne";
    case Check::graph: return "graph";
    case Check::toth: return "toth";
  }
  return "?";
}

inline Check parse_check(std::string_view s) {
  for (Check c : kAllChecks) {
    if (to_string(c) == s) return c;
  }
  throw UsageError("unknown check '" + std::string(s) + "'");
}

enum class OutputFormat { json, csv, table };

inline OutputFormat parse_format(std::string_view s) {
  if (s == "json") return OutputFormat::json;
  if (s == "csv") return OutputFormat::csv;
  if (s == "table") return OutputFormat::table;
  throw UsageError("unknown format '" + std::string(s) + "' (expected json, csv or table)");
}

/// Residue-class filter on primes, e.g. `4=3` or `12=5,7`.
struct PrimeClassFilter {
  u64 modulus = 0;
  std::vector<u64> residues;

  static PrimeClassFilter parse(std::string_view text) {
    const auto eq = text.find('=');
    if (eq == std::string_view::npos) throw UsageError("--primes-mod expects M=r[,r2...]");
    PrimeClassFilter f;
    f.modulus = parse_u64(text.substr(0, eq));
    if (f.modulus == 0) throw UsageError("--primes-mod: M must be positive");
    std::string_view rest = text.substr(eq + 1);
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      f.residues.push_back(parse_u64(rest.substr(0, comma)) % f.modulus);
      rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
    }
    if (f.residues.empty()) throw UsageError("--primes-mod: no residues given");
    return f;
  }

  bool accepts(u64 n) const {
    if (!is_prime(n)) return false;
    for (u64 r : residues) {
      if (n % modulus == r) return true;
    }
    return false;
  }

  std::string describe() const {
    std::string s = std::to_string(modulus) + "=";
    for (std::size_t i = 0; i < residues.size(); ++i) s += (i ? "," : "") + std::to_string(residues[i]);
    return s;
  }

  static u64 parse_u64(std::string_view s) {
    if (s.empty()) throw UsageError("expected a non-negative integer");
    u64 v = 0;
    for (char c : s) {
      if (c < '0' || c > '9') throw UsageError("expected a non-negative integer, got '" + std::string(s) + "'");
      if (__builtin_mul_overflow(v, 10, &v) || __builtin_add_overflow(v, static_cast<u64>(c - '0'), &v)) {
        throw UsageError("integer out of range: " + std::string(s));
      }
    }
    return v;
  }
};

struct Tolerances {
  double grouping = kGroupingTolerance;
  double ramanujan = kRamanujanTolerance;  // relative, on lambda^2
  double oracle = 1e-6;                    // analytic vs numeric spectrum
};

struct ScanConfig {
  // Explicit moduli take precedence over the range.
  std::vector<u64> moduli;
  u64 range_lo = 3;
  u64 range_hi = 199;
  std::optional<PrimeClassFilter> primes_mod = PrimeClassFilter{4, {3}};
  std::vector<Check> checks{std::begin(kAllChecks), std::end(kAllChecks)};
  Tolerances tolerance;
  u64 numeric_max = 31;  // dense-eigensolver oracle for n <= numeric_max
  unsigned workers = 1;

  bool wants(Check c) const { return std::find(checks.begin(), checks.end(), c) != checks.end(); }
};

inline std::vector<u64> select_moduli(const ScanConfig& cfg) {
  std::vector<u64> out;
  auto keep = [&](u64 n) { return !cfg.primes_mod || cfg.primes_mod->accepts(n); };
  if (!cfg.moduli.empty()) {
    for (u64 n : cfg.moduli) {
      if (n < 2) throw UsageError("scan: modulus " + std::to_string(n) + " is < 2");
      if (keep(n)) out.push_back(n);
    }
  } else {
    if (cfg.range_lo > cfg.range_hi) throw UsageError("scan: empty range");
    for (u64 n = std::max<u64>(cfg.range_lo, 2); n <= cfg.range_hi; ++n) {
      if (keep(n)) out.push_back(n);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  if (out.empty()) throw UsageError("scan: no moduli left after filtering");
  return out;
}

struct Skip {
  std::string check;
  std::string reason;
};

struct ScanRecord {
  u64 n = 0;
  ModulusClass classification = ModulusClass::composite;
  bool in_hypothesis = false;
  u64 degree = 0;

  std::optional<RamanujanReport> eigen;
  std::optional<double> trace;
  std::optional<double> second_moment;
  std::optional<bool> trace_ok;
  std::optional<DeligneResult> deligne;
  std::optional<GraphStats> graph;
  std::optional<CrossCheckResult> graph_cross_check;

  std::optional<bool> numeric_match;
  std::optional<double> numeric_max_deviation;
  std::optional<bool> brute_units_match;
  std::optional<bool> toth_match;
  std::optional<bool> closed_form_match;

  std::vector<Skip> skipped;
  std::vector<std::string> failures;  // oracle or identity failures: always count
  std::vector<std::string> theorem_failures;

  std::string status() const {
    if (!failures.empty()) return "fail";
    if (!in_hypothesis) return "outside-theorem";
    return theorem_failures.empty() ? "pass" : "fail";
  }
};

struct ScanSummary {
  u64 total = 0;
  u64 in_hypothesis = 0;
  u64 passed = 0;
  u64 failed = 0;
  u64 outside_theorem = 0;
  bool all_pass() const { return failed == 0; }
};

struct ScanReport {
  ScanConfig config;
  std::vector<ScanRecord> records;
  ScanSummary summary;
};

/// All checks for one modulus. Single-threaded; the scan parallelises
/// across moduli.
inline ScanRecord scan_modulus(u64 n, const ScanConfig& cfg, CountCache& cache) {
  ScanRecord rec;
  const Modulus mod(n);
  rec.n = n;
  rec.classification = mod.classification();
  rec.in_hypothesis = mod.in_hypothesis();
  const std::string outside = "outside-theorem: n is not a prime = 3 mod 4";

  const CayleyGraph g = build_graph(n);
  rec.degree = g.degree();
  const auto unit_count = static_cast<u64>(g.degree());

  if (cfg.wants(Check::units)) {
    if (n * n <= kBruteBudget) {
      rec.brute_units_match = cache.get(CountMethod::brute, CongruenceInstance::unit_circle(n)) == unit_count;
      if (!*rec.brute_units_match) rec.failures.push_back("units: enumeration disagrees with count_brute");
    } else {
      rec.skipped.push_back({"units.brute", "n^2 exceeds the brute-force budget"});
    }
    if (mod.is_prime()) {
      rec.closed_form_match = cache.get(CountMethod::closed2, CongruenceInstance::unit_circle(n)) == unit_count;
      if (!*rec.closed_form_match) rec.failures.push_back("units: enumeration disagrees with the closed form");
    } else {
      rec.skipped.push_back({"units.closed_form", "closed form is evaluated for prime moduli only"});
    }
    if (rec.in_hypothesis && unit_count != n + 1) rec.theorem_failures.push_back("degree != p+1");
  }

  if (cfg.wants(Check::toth)) {
    if (n % 2 == 1) {
      rec.toth_match = cache.get(CountMethod::toth, CongruenceInstance::unit_circle(n)) == unit_count;
      if (!*rec.toth_match) rec.failures.push_back("toth: formula disagrees with unit enumeration");
    } else {
      rec.skipped.push_back({"toth", "formula is restricted to odd n"});
    }
  }

  const bool need_spectrum = cfg.wants(Check::spectrum) || cfg.wants(Check::ramanujan) || cfg.wants(Check::graph);
  std::optional<Spectrum> spec;
  if (need_spectrum) spec = full_spectrum(g, 1, cfg.tolerance.grouping);

  if (cfg.wants(Check::spectrum)) {
    const double nn = static_cast<double>(n) * static_cast<double>(n);
    rec.trace = spec->trace();
    rec.second_moment = spec->second_moment();
    rec.trace_ok = std::abs(*rec.trace) <= 1e-6 * nn &&
                   std::abs(*rec.second_moment - nn * static_cast<double>(unit_count)) <= 1e-4 * nn;
    if (!*rec.trace_ok) rec.failures.push_back("spectrum: trace identities violated");
    if (n <= cfg.numeric_max) {
      const Spectrum numeric = numeric_spectrum(g, cfg.tolerance.grouping);
      rec.numeric_max_deviation = max_sorted_deviation(*spec, numeric);
      rec.numeric_match = *rec.numeric_max_deviation <= cfg.tolerance.oracle;
      if (!*rec.numeric_match) rec.failures.push_back("spectrum: analytic and numeric spectra disagree");
    } else {
      rec.skipped.push_back({"spectrum.numeric", "n exceeds --numeric-max"});
    }
  }

  if (cfg.wants(Check::ramanujan)) {
    rec.eigen = ramanujan_check(*spec, unit_count, cfg.tolerance.ramanujan, cfg.tolerance.grouping);
    if (!rec.eigen->verdict) rec.theorem_failures.push_back("ramanujan bound violated");
    if (rec.eigen->trivial_multiplicity != 1) rec.theorem_failures.push_back("trivial eigenvalue not simple");
    if (rec.eigen->bipartite_flag) rec.theorem_failures.push_back("-k is an eigenvalue");
  }

  if (cfg.wants(Check::deligne)) {
    if (rec.in_hypothesis) {
      rec.deligne = deligne_check(g, 1, cfg.tolerance.ramanujan);
      if (!rec.deligne->ok) rec.theorem_failures.push_back("character-sum bound violated");
    } else {
      rec.skipped.push_back({"deligne", outside});
    }
  }

  if (cfg.wants(Check::graph)) {
    if (n <= kAnalyzeModulusLimit) {
      rec.graph = analyze(g);
      rec.graph_cross_check = cross_check(*rec.graph, *spec, unit_count, cfg.tolerance.grouping);
      if (!rec.graph->regular) rec.failures.push_back("graph: not regular");
      if (!rec.graph_cross_check->pass) rec.failures.push_back("graph: " + rec.graph_cross_check->failure);
      if (rec.graph->odd_cycle_witness && !is_odd_closed_walk(g, *rec.graph->odd_cycle_witness)) {
        rec.failures.push_back("graph: invalid odd-walk witness");
      }
      if (rec.graph->component_count != 1) rec.theorem_failures.push_back("graph is disconnected");
      if (rec.graph->bipartite) rec.theorem_failures.push_back("graph is bipartite");
    } else {
      rec.skipped.push_back({"graph", "n exceeds the BFS limit of 200"});
    }
  }
  return rec;
}

inline ScanReport run_scan(const ScanConfig& cfg) {
  const std::vector<u64> moduli = select_moduli(cfg);
  ScanReport report{cfg, std::vector<ScanRecord>(moduli.size()), {}};
  CountCache cache;
  parallel_for(
      moduli.size(), cfg.workers, [&](std::size_t i) { report.records[i] = scan_modulus(moduli[i], cfg, cache); },
      1);
  for (const auto& r : report.records) {
    ++report.summary.total;
    if (r.in_hypothesis) ++report.summary.in_hypothesis;
    const std::string st = r.status();
    if (st == "pass") ++report.summary.passed;
    else if (st == "fail") ++report.summary.failed;
    else ++report.summary.outside_theorem;
  }
  return report;
}

// ---------------------------------------------------------------------------
// Rendering

/// Rounds to 12 significant digits so serialised reports are stable.
inline double round12(double x) {
  if (!std::isfinite(x)) return x;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  const double r = std::strtod(buf, nullptr);
  return r == 0.0 ? 0.0 : r;
}

inline std::string format12(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", round12(x));
  return buf;
}

using ordered_json = nlohmann::ordered_json;

namespace detail {
template <typename T>
ordered_json opt(const std::optional<T>& v) {
  if (!v) return nullptr;
  if constexpr (std::is_floating_point_v<T>) return round12(*v);
  else return *v;
}
}  // namespace detail

inline ordered_json to_json(const ScanConfig& cfg) {
  ordered_json c;
  if (!cfg.moduli.empty()) c["moduli"] = cfg.moduli;
  else c["range"] = std::to_string(cfg.range_lo) + ".." + std::to_string(cfg.range_hi);
  c["primes_mod"] = cfg.primes_mod ? ordered_json(cfg.primes_mod->describe()) : ordered_json(nullptr);
  ordered_json checks = ordered_json::array();
  for (Check ch : kAllChecks) {
    if (cfg.wants(ch)) checks.push_back(std::string(to_string(ch)));
  }
  c["checks"] = checks;
  c["numeric_max"] = cfg.numeric_max;
  c["tolerance"] = {{"grouping", cfg.tolerance.grouping},
                    {"ramanujan", cfg.tolerance.ramanujan},
                    {"oracle", cfg.tolerance.oracle}};
  return c;
}

inline ordered_json walk_to_json(const Walk& w) {
  ordered_json out = ordered_json::array();
  for (const auto& z : w) out.push_back({z.re(), z.im()});
  return out;
}

inline ordered_json to_json(const ScanRecord& r, const Tolerances& tol) {
  ordered_json j;
  j["n"] = r.n;
  j["classification"] = std::string(to_string(r.classification));
  j["hypothesis"] = r.in_hypothesis ? "in-theorem" : "outside-theorem";
  j["degree"] = r.degree;
  if (r.eigen) {
    j["eigen"] = {{"trivial_mult", r.eigen->trivial_multiplicity},
                  {"max_nontrivial_abs", round12(r.eigen->max_nontrivial_abs)},
                  {"bound", round12(r.eigen->bound)},
                  {"sharpness", round12(r.eigen->sharpness)},
                  {"verdict", r.eigen->verdict},
                  {"minus_k_present", r.eigen->bipartite_flag},
                  {"trace", detail::opt(r.trace)},
                  {"second_moment", detail::opt(r.second_moment)},
                  {"trace_ok", detail::opt(r.trace_ok)}};
  } else {
    j["eigen"] = nullptr;
  }
  j["deligne"] = r.deligne ? ordered_json{{"max_abs", round12(r.deligne->max_abs)},
                                          {"bound", round12(r.deligne->bound)},
                                          {"ok", r.deligne->ok}}
                           : ordered_json(nullptr);
  if (r.graph) {
    j["graph"] = {{"components", r.graph->component_count},
                  {"bipartite", r.graph->bipartite},
                  {"girth", detail::opt(r.graph->girth)},
                  {"diameter", detail::opt(r.graph->diameter)},
                  {"odd_walk", r.graph->odd_cycle_witness ? walk_to_json(*r.graph->odd_cycle_witness)
                                                          : ordered_json(nullptr)},
                  {"cross_check", r.graph_cross_check && r.graph_cross_check->pass}};
  } else {
    j["graph"] = nullptr;
  }
  j["oracles"] = {{"numeric_match", detail::opt(r.numeric_match)},
                  {"numeric_max_deviation", detail::opt(r.numeric_max_deviation)},
                  {"brute_units_match", detail::opt(r.brute_units_match)},
                  {"toth_match", detail::opt(r.toth_match)},
                  {"closed_form_match", detail::opt(r.closed_form_match)}};
  j["tolerance"] = {{"grouping", tol.grouping}, {"ramanujan", tol.ramanujan}, {"oracle", tol.oracle}};
  ordered_json skipped = ordered_json::array();
  for (const auto& s : r.skipped) skipped.push_back({{"check", s.check}, {"reason", s.reason}});
  j["skipped"] = skipped;
  std::vector<std::string> failures = r.failures;
  failures.insert(failures.end(), r.theorem_failures.begin(), r.theorem_failures.end());
  j["failures"] = failures;
  j["status"] = r.status();
  return j;
}

inline ordered_json to_json(const ScanReport& rep) {
  ordered_json j;
  j["config"] = to_json(rep.config);
  ordered_json recs = ordered_json::array();
  for (const auto& r : rep.records) recs.push_back(to_json(r, rep.config.tolerance));
  j["records"] = recs;
  j["summary"] = {{"total", rep.summary.total},
                  {"in_theorem", rep.summary.in_hypothesis},
                  {"passed", rep.summary.passed},
                  {"failed", rep.summary.failed},
                  {"outside_theorem", rep.summary.outside_theorem},
                  {"all_pass", rep.summary.all_pass()}};
  return j;
}

inline const char* const kCsvHeader =
    "n,classification,degree,trivial_mult,max_nontrivial_abs,bound,sharpness,verdict,"
    "components,bipartite,girth,diameter,numeric_match,brute_units_match,status";

inline std::string render_csv(const ScanReport& rep) {
  auto b = [](std::optional<bool> v) -> std::string { return v ? (*v ? "true" : "false") : ""; };
  auto u = [](std::optional<u64> v) -> std::string { return v ? std::to_string(*v) : ""; };
  std::ostringstream os;
  os << kCsvHeader << '\n';
  for (const auto& r : rep.records) {
    os << r.n << ',' << to_string(r.classification) << ',' << r.degree << ',';
    if (r.eigen) {
      os << r.eigen->trivial_multiplicity << ',' << format12(r.eigen->max_nontrivial_abs) << ','
         << format12(r.eigen->bound) << ',' << format12(r.eigen->sharpness) << ','
         << (r.eigen->verdict ? "true" : "false") << ',';
    } else {
      os << ",,,,,";
    }
    if (r.graph) {
      os << r.graph->component_count << ',' << (r.graph->bipartite ? "true" : "false") << ',' << u(r.graph->girth)
         << ',' << u(r.graph->diameter) << ',';
    } else {
      os << ",,,,";
    }
    os << b(r.numeric_match) << ',' << b(r.brute_units_match) << ',' << r.status() << '\n';
  }
  return os.str();
}

inline std::string render_table(const ScanReport& rep) {
  std::ostringstream os;
  auto cell = [&](const std::string& s, int w) { os << std::setw(w) << s; };
  const auto dash = std::string("-");
  cell("n", 6); cell("class", 15); cell("deg", 6); cell("mult", 6); cell("max|l|", 15); cell("2sqrt(k-1)", 15);
  cell("sharp", 15); cell("ramanujan", 11); cell("comp", 6); cell("bip", 6); cell("girth", 7); cell("diam", 6);
  cell("status", 17);
  os << '\n';
  for (const auto& r : rep.records) {
    cell(std::to_string(r.n), 6);
    cell(std::string(to_string(r.classification)), 15);
    cell(std::to_string(r.degree), 6);
    if (r.eigen) {
      cell(std::to_string(r.eigen->trivial_multiplicity), 6);
      cell(format12(r.eigen->max_nontrivial_abs), 15);
      cell(format12(r.eigen->bound), 15);
      cell(format12(r.eigen->sharpness), 15);
      cell(r.eigen->verdict ? "yes" : "no", 11);
    } else {
      cell(dash, 6); cell(dash, 15); cell(dash, 15); cell(dash, 15); cell(dash, 11);
    }
    if (r.graph) {
      cell(std::to_string(r.graph->component_count), 6);
      cell(r.graph->bipartite ? "yes" : "no", 6);
      cell(r.graph->girth ? std::to_string(*r.graph->girth) : "inf", 7);
      cell(r.graph->diameter ? std::to_string(*r.graph->diameter) : "inf", 6);
    } else {
      cell(dash, 6); cell(dash, 6); cell(dash, 7); cell(dash, 6);
    }
    cell(r.status(), 17);
    os << '\n';
  }
  os << "summary: " << rep.summary.total << " moduli, " << rep.summary.passed << " pass, " << rep.summary.failed
     << " fail, " << rep.summary.outside_theorem << " outside-theorem\n";
  return os.str();
}

inline std::string render(const ScanReport& rep, OutputFormat fmt) {
  switch (fmt) {
    case OutputFormat::json: return to_json(rep).dump(2) + "\n";
    case OutputFormat::csv: return render_csv(rep);
    case OutputFormat::table: return render_table(rep);
  }
  return {};
}

inline void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << text;
  out.flush();
  if (!out) throw IoError("failed writing '" + path + "'");
}

}  // namespace gcay
