// gcay: command-line front end for the Gaussian-integer Cayley graph checks.
//
// Exit codes: 0 all checks pass, 1 a mathematical check failed,
// 2 usage error, 3 I/O error.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "gcay/gcay.hpp"

namespace {

using namespace gcay;
using ordered_json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

struct Output {
  std::string format = "table";
  std::string out_path;

  void emit(const std::string& text) const {
    if (out_path.empty()) {
      std::cout << text;
    } else {
      write_text(out_path, text);
    }
  }
};

void add_output_flags(CLI::App* cmd, Output& out) {
  cmd->add_option("--format", out.format, "Output format: json, csv or table")
      ->check(CLI::IsMember({"json", "csv", "table"}));
  cmd->add_option("--out", out.out_path, "Write output to PATH instead of stdout");
}

std::string fmt(double x) { return format12(x); }

// Display only: components below 1e-12 relative to |z| are float noise.
complex chop(const complex& z) {
  const double eps = 1e-12 * std::max(1.0, std::abs(z));
  return {std::abs(z.real()) < eps ? 0.0 : z.real(), std::abs(z.imag()) < eps ? 0.0 : z.imag()};
}

std::string complex_text(complex z) {
  z = chop(z);
  std::ostringstream os;
  os << fmt(z.real()) << (std::signbit(round12(z.imag())) ? " - " : " + ") << fmt(std::abs(z.imag())) << "i";
  return os.str();
}

// ---------------------------------------------------------------------------

int run_units(u64 n, const Output& out) {
  if (n < 2) throw UsageError("units: n must be >= 2");
  const UnitSet s = units(n);
  if (out.format == "json") {
    ordered_json j;
    j["n"] = n;
    j["classification"] = std::string(to_string(classify(n)));
    j["cardinality"] = s.cardinality();
    ordered_json el = ordered_json::array();
    for (const auto& z : s.elements) el.push_back({z.re(), z.im()});
    j["elements"] = el;
    out.emit(j.dump(2) + "\n");
  } else if (out.format == "csv") {
    std::string text = "a,b\n";
    for (const auto& z : s.elements) text += std::to_string(z.re()) + "," + std::to_string(z.im()) + "\n";
    out.emit(text);
  } else {
    std::ostringstream os;
    os << "units of Z_" << n << "[i] (" << to_string(classify(n)) << "): " << s.cardinality() << " elements\n";
    for (const auto& z : s.elements) os << "  " << z << '\n';
    out.emit(os.str());
  }
  return kExitOk;
}

struct CountArgs {
  u64 k = 0;
  i64 b = 0;
  u64 n = 0;
  std::vector<i64> a;
  std::string method = "all";
};

int run_count(const CountArgs& args, const Output& out) {
  const CongruenceInstance inst(args.k, args.b, args.n, args.a);
  const bool unit_circle = inst.k() == 2 && inst.b() == 1 % inst.n() && inst.coefficients() == std::vector<u64>{1, 1};

  ordered_json results = ordered_json::object();
  std::vector<std::pair<std::string, u64>> counts;
  std::optional<u64> non_coprime;

  auto want = [&](const char* m) { return args.method == "all" || args.method == m; };
  if (want("toth")) {
    if (inst.n() % 2 == 0 && args.method == "toth") {
      throw UsageError("count: Toth's formula is only used for odd n; use --method brute");
    }
    if (inst.n() % 2 == 1) {
      const TothEvaluation ev = toth_evaluate(inst);
      counts.emplace_back("toth", ev.count);
      non_coprime = ev.non_coprime_gauss_sums;
    }
  }
  if (want("brute")) {
    try {
      counts.emplace_back("brute", count_brute(inst));
    } catch (const ResourceError&) {
      if (args.method == "brute") throw;
    }
  }
  if (want("closed2")) {
    if (!unit_circle) {
      if (args.method == "closed2") throw UsageError("count: the closed form covers k=2, b=1, a=(1,1) only");
    } else {
      CountCache cache;
      try {
        counts.emplace_back("closed2", cache.get(CountMethod::closed2, inst));
      } catch (const UsageError&) {
        if (args.method == "closed2") throw;
      }
    }
  }
  if (counts.empty()) throw UsageError("count: no applicable method for this instance");

  bool agree = true;
  for (const auto& [name, c] : counts) {
    results[name] = c;
    agree = agree && c == counts.front().second;
  }

  if (out.format == "json") {
    ordered_json j;
    j["k"] = inst.k();
    j["b"] = inst.b();
    j["n"] = inst.n();
    j["a"] = inst.coefficients();
    j["counts"] = results;
    j["agreement"] = agree;
    j["non_coprime_gauss_sums"] = non_coprime ? ordered_json(*non_coprime) : ordered_json(nullptr);
    out.emit(j.dump(2) + "\n");
  } else if (out.format == "csv") {
    std::string text = "method,count\n";
    for (const auto& [name, c] : counts) text += name + "," + std::to_string(c) + "\n";
    out.emit(text);
  } else {
    std::ostringstream os;
    for (const auto& [name, c] : counts) os << name << ": " << c << '\n';
    if (non_coprime && *non_coprime > 0) {
      os << "note: " << *non_coprime << " Gauss sums evaluated with gcd(m a_i, d) > 1\n";
    }
    os << "agreement: " << (agree ? "yes" : "NO") << '\n';
    out.emit(os.str());
  }
  return agree ? kExitOk : kExitCheckFailed;
}

int run_gauss_sum(i64 m, u64 n, const Output& out) {
  const GaussSumParams params{m, n};
  const complex raw = gauss_sum(params);
  const complex s = chop(raw);
  std::optional<complex> closed;
  if (n % 2 == 1 && params.coprime()) closed = gauss_sum_closed_form(params);
  const double tol = 1e-9 * std::sqrt(static_cast<double>(n));
  const bool match = !closed || std::abs(raw - *closed) <= tol;

  if (out.format == "json") {
    ordered_json j;
    j["m"] = m;
    j["n"] = n;
    j["re"] = round12(s.real());
    j["im"] = round12(s.imag());
    j["abs"] = round12(std::abs(raw));
    j["coprime"] = params.coprime();
    if (closed) {
      j["closed_form"] = {{"re", round12(closed->real())}, {"im", round12(closed->imag())}};
      j["closed_form_match"] = match;
    } else {
      j["closed_form"] = nullptr;
      j["closed_form_match"] = nullptr;
    }
    out.emit(j.dump(2) + "\n");
  } else {
    std::ostringstream os;
    os << "S(" << m << "," << n << ") = " << complex_text(s) << '\n';
    os << "|S| = " << fmt(std::abs(raw)) << ", sqrt(n) = " << fmt(std::sqrt(static_cast<double>(n))) << '\n';
    if (!params.coprime()) os << "note: gcd(m, n) > 1\n";
    if (closed) os << "closed form = " << complex_text(*closed) << (match ? " (match)" : " (MISMATCH)") << '\n';
    out.emit(os.str());
  }
  return match ? kExitOk : kExitCheckFailed;
}

int run_spectrum(u64 n, bool numeric_check, unsigned workers, const Tolerances& tol, const Output& out) {
  const CayleyGraph g = build_graph(n);
  const Spectrum spec = full_spectrum(g, workers, tol.grouping);
  const RamanujanReport rep = ramanujan_check(spec, g.degree(), tol.ramanujan, tol.grouping);
  std::optional<DeligneResult> deligne;
  if (g.in_hypothesis()) deligne = deligne_check(g, workers, tol.ramanujan);
  std::optional<double> deviation;
  if (numeric_check) deviation = max_sorted_deviation(spec, numeric_spectrum(g, tol.grouping));

  bool ok = true;
  if (deviation && *deviation > tol.oracle) ok = false;
  if (g.in_hypothesis() && (!rep.verdict || rep.trivial_multiplicity != 1 || rep.bipartite_flag)) ok = false;
  if (deligne && !deligne->ok) ok = false;

  if (out.format == "json") {
    ordered_json j;
    j["n"] = n;
    j["classification"] = std::string(to_string(g.modulus.classification()));
    j["hypothesis"] = g.in_hypothesis() ? "in-theorem" : "outside-theorem";
    j["degree"] = g.degree();
    j["source"] = std::string(to_string(spec.source));
    ordered_json entries = ordered_json::array();
    for (const auto& e : spec.entries) entries.push_back({{"value", round12(e.value)}, {"multiplicity", e.multiplicity}});
    j["entries"] = entries;
    j["trace"] = round12(spec.trace());
    j["second_moment"] = round12(spec.second_moment());
    j["ramanujan"] = {{"trivial_mult", rep.trivial_multiplicity},
                      {"max_nontrivial_abs", round12(rep.max_nontrivial_abs)},
                      {"bound", round12(rep.bound)},
                      {"sharpness", round12(rep.sharpness)},
                      {"verdict", rep.verdict},
                      {"minus_k_present", rep.bipartite_flag},
                      {"tolerance", rep.tolerance}};
    j["deligne"] = deligne ? ordered_json{{"max_abs", round12(deligne->max_abs)},
                                          {"bound", round12(deligne->bound)},
                                          {"ok", deligne->ok}}
                           : ordered_json(nullptr);
    j["numeric_max_deviation"] = deviation ? ordered_json(round12(*deviation)) : ordered_json(nullptr);
    out.emit(j.dump(2) + "\n");
  } else if (out.format == "csv") {
    std::string text = "eigenvalue,multiplicity\n";
    for (const auto& e : spec.entries) text += fmt(e.value) + "," + std::to_string(e.multiplicity) + "\n";
    out.emit(text);
  } else {
    std::ostringstream os;
    os << "Cay(Z_" << n << "[i], units): " << g.vertex_count() << " vertices, " << g.degree() << "-regular, "
       << (g.in_hypothesis() ? "in-theorem" : "outside-theorem (exploratory)") << '\n';
    os << std::setw(20) << "eigenvalue" << std::setw(14) << "multiplicity" << '\n';
    for (const auto& e : spec.entries) os << std::setw(20) << fmt(e.value) << std::setw(14) << e.multiplicity << '\n';
    os << "trace = " << fmt(spec.trace()) << ", second moment = " << fmt(spec.second_moment()) << '\n';
    os << "trivial multiplicity = " << rep.trivial_multiplicity << ", -k present = " << (rep.bipartite_flag ? "yes" : "no")
       << '\n';
    os << "max nontrivial |lambda| = " << fmt(rep.max_nontrivial_abs) << ", bound 2sqrt(k-1) = " << fmt(rep.bound)
       << ", sharpness = " << fmt(rep.sharpness) << '\n';
    os << "ramanujan: " << (rep.verdict ? "yes" : "no") << '\n';
    if (deligne) {
      os << "character-sum bound: max " << fmt(deligne->max_abs) << " <= 2sqrt(p) = " << fmt(deligne->bound) << ": "
         << (deligne->ok ? "ok" : "VIOLATED") << '\n';
    }
    if (deviation) {
      os << "numeric check: max deviation " << fmt(*deviation) << (*deviation <= tol.oracle ? " (match)" : " (MISMATCH)")
         << '\n';
    }
    out.emit(os.str());
  }
  return ok ? kExitOk : kExitCheckFailed;
}

int run_graph_stats(u64 n, const Tolerances& tol, const Output& out) {
  const CayleyGraph g = build_graph(n);
  const GraphStats st = analyze(g);
  const CrossCheckResult cc = cross_check(st, full_spectrum(g, 1, tol.grouping), g.degree(), tol.grouping);
  const bool witness_ok = !st.odd_cycle_witness || is_odd_closed_walk(g, *st.odd_cycle_witness);
  const bool ok = cc.pass && witness_ok && st.regular;

  auto opt_text = [](std::optional<u64> v) { return v ? std::to_string(*v) : std::string("inf"); };
  if (out.format == "json") {
    ordered_json j;
    j["n"] = n;
    j["vertices"] = g.vertex_count();
    j["degree"] = g.degree();
    j["regular"] = st.regular;
    j["components"] = st.component_count;
    j["bipartite"] = st.bipartite;
    j["odd_walk"] = st.odd_cycle_witness ? walk_to_json(*st.odd_cycle_witness) : ordered_json(nullptr);
    j["girth"] = st.girth ? ordered_json(*st.girth) : ordered_json(nullptr);
    j["diameter"] = st.diameter ? ordered_json(*st.diameter) : ordered_json(nullptr);
    j["cross_check"] = cc.pass;
    j["cross_check_failure"] = cc.pass ? ordered_json(nullptr) : ordered_json(cc.failure);
    out.emit(j.dump(2) + "\n");
  } else {
    std::ostringstream os;
    os << "Cay(Z_" << n << "[i], units): " << g.vertex_count() << " vertices, degree " << g.degree() << '\n';
    os << "components: " << st.component_count << ", bipartite: " << (st.bipartite ? "yes" : "no")
       << ", girth: " << opt_text(st.girth) << ", diameter: " << opt_text(st.diameter) << '\n';
    if (st.odd_cycle_witness) {
      os << "odd closed walk:";
      for (const auto& z : *st.odd_cycle_witness) os << ' ' << z;
      os << '\n';
    }
    os << "spectral cross-check: " << (cc.pass ? "pass" : "FAIL: " + cc.failure) << '\n';
    out.emit(os.str());
  }
  return ok ? kExitOk : kExitCheckFailed;
}

std::pair<u64, u64> parse_range(const std::string& text) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) throw UsageError("--range expects LO..HI");
  return {PrimeClassFilter::parse_u64(text.substr(0, dots)), PrimeClassFilter::parse_u64(text.substr(dots + 2))};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cayley graphs of Gaussian integers mod n: unit sets, spectra and Ramanujan certificates"};
  app.require_subcommand(1);

  Tolerances tol;
  std::optional<double> tolerance;
  unsigned workers = 1;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--tolerance", tolerance, "Spectral tolerance (grouping, Ramanujan slack, oracle match)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--workers", workers, "Worker threads")->check(CLI::Range(1u, 1024u));
  };

  Output out;

  u64 units_n = 0;
  auto* units_cmd = app.add_subcommand("units", "List the norm-one elements of Z_n[i]");
  units_cmd->add_option("n", units_n, "Modulus")->required();
  add_output_flags(units_cmd, out);

  CountArgs count_args;
  auto* count_cmd = app.add_subcommand("count", "Count solutions of a_1 x_1^2 + ... + a_k x_k^2 = b (mod n)");
  count_cmd->add_option("k", count_args.k, "Number of variables")->required();
  count_cmd->add_option("b", count_args.b, "Right-hand side")->required();
  count_cmd->add_option("n", count_args.n, "Modulus")->required();
  count_cmd->add_option("a", count_args.a, "Coefficients a_1..a_k")->required();
  count_cmd->add_option("--method", count_args.method, "toth, brute, closed2 or all")
      ->check(CLI::IsMember({"toth", "brute", "closed2", "all"}));
  add_output_flags(count_cmd, out);

  i64 gauss_m = 0;
  u64 gauss_n = 0;
  auto* gauss_cmd = app.add_subcommand("gauss-sum", "Quadratic Gauss sum S(m, n)");
  gauss_cmd->add_option("m", gauss_m, "Multiplier")->required();
  gauss_cmd->add_option("n", gauss_n, "Modulus")->required()->check(CLI::PositiveNumber);
  add_output_flags(gauss_cmd, out);

  u64 spectrum_n = 0;
  bool numeric_check = false;
  auto* spectrum_cmd = app.add_subcommand("spectrum", "Spectrum of Cay(Z_n[i], units) via character sums");
  spectrum_cmd->add_option("n", spectrum_n, "Modulus")->required();
  spectrum_cmd->add_flag("--numeric-check", numeric_check, "Cross-check with a dense eigensolver (n <= 50)");
  add_output_flags(spectrum_cmd, out);
  add_common(spectrum_cmd);

  u64 graph_n = 0;
  auto* graph_cmd = app.add_subcommand("graph-stats", "Connectivity, bipartiteness, girth and diameter");
  graph_cmd->add_option("n", graph_n, "Modulus")->required();
  add_output_flags(graph_cmd, out);
  add_common(graph_cmd);

  ScanConfig scan_cfg;
  std::string range_text;
  std::string primes_mod_text;
  bool all_moduli = false;
  std::vector<std::string> checks;
  auto* scan_cmd = app.add_subcommand("scan", "Certify a range of moduli and write a report");
  scan_cmd->add_option("--range", range_text, "Moduli range LO..HI (default 3..199)");
  scan_cmd->add_option("--moduli", scan_cfg.moduli, "Explicit moduli (overrides --range)")->delimiter(',');
  scan_cmd->add_option("--primes-mod", primes_mod_text, "Keep primes in residue classes M=r[,r2] (default 4=3 for ranges)");
  scan_cmd->add_flag("--all-moduli", all_moduli, "Do not filter the range by residue class");
  scan_cmd->add_option("--checks", checks, "Subset of units,spectrum,ramanujan,deligne,graph,toth")->delimiter(',');
  scan_cmd->add_option("--numeric-max", scan_cfg.numeric_max, "Largest n given the dense eigensolver oracle");
  add_output_flags(scan_cmd, out);
  add_common(scan_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (tolerance) tol = Tolerances{*tolerance, *tolerance, *tolerance};

  try {
    if (*units_cmd) return run_units(units_n, out);
    if (*count_cmd) return run_count(count_args, out);
    if (*gauss_cmd) return run_gauss_sum(gauss_m, gauss_n, out);
    if (*spectrum_cmd) return run_spectrum(spectrum_n, numeric_check, workers, tol, out);
    if (*graph_cmd) return run_graph_stats(graph_n, tol, out);
    if (*scan_cmd) {
      if (!range_text.empty()) std::tie(scan_cfg.range_lo, scan_cfg.range_hi) = parse_range(range_text);
      if (!primes_mod_text.empty()) {
        scan_cfg.primes_mod = PrimeClassFilter::parse(primes_mod_text);
      } else if (all_moduli || !scan_cfg.moduli.empty()) {
        scan_cfg.primes_mod.reset();
      }
      if (!checks.empty()) {
        scan_cfg.checks.clear();
        for (const auto& c : checks) scan_cfg.checks.push_back(parse_check(c));
      }
      scan_cfg.tolerance = tol;
      scan_cfg.workers = workers;
      const ScanReport report = run_scan(scan_cfg);
      out.emit(render(report, parse_format(out.format)));
      if (!out.out_path.empty()) {
        std::cerr << "summary: " << report.summary.total << " moduli, " << report.summary.passed << " pass, "
                  << report.summary.failed << " fail, " << report.summary.outside_theorem << " outside-theorem\n";
      }
      return report.summary.all_pass() ? kExitOk : kExitCheckFailed;
    }
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ResourceError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DegenerateInput& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const NumericalFailure& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitCheckFailed;
  }
  return kExitUsage;
}
