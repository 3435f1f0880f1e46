#include "gcay/scan.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

namespace gcay {
namespace {

TEST(PrimeClassFilterTest, Parse) {
  const auto f = PrimeClassFilter::parse("12=5,7");
  EXPECT_EQ(f.modulus, 12u);
  EXPECT_EQ(f.residues, (std::vector<u64>{5, 7}));
  EXPECT_TRUE(f.accepts(5));
  EXPECT_TRUE(f.accepts(7));
  EXPECT_TRUE(f.accepts(17));
  EXPECT_FALSE(f.accepts(13));
  EXPECT_FALSE(f.accepts(55));
  EXPECT_EQ(f.describe(), "12=5,7");
  EXPECT_THROW(PrimeClassFilter::parse("4"), UsageError);
  EXPECT_THROW(PrimeClassFilter::parse("0=1"), UsageError);
  EXPECT_THROW(PrimeClassFilter::parse("4=x"), UsageError);
  EXPECT_THROW(PrimeClassFilter::parse("4="), UsageError);
}

TEST(SelectModuliTest, DefaultIsPrimesThreeModFourUpTo199) {
  const auto m = select_moduli(ScanConfig{});
  EXPECT_EQ(m.front(), 3u);
  EXPECT_EQ(m.back(), 199u);
  EXPECT_EQ(m.size(), 24u);
  for (u64 p : m) EXPECT_EQ(classify(p), ModulusClass::prime_3_mod_4);
}

TEST(SelectModuliTest, ExplicitAndEmpty) {
  ScanConfig cfg;
  cfg.moduli = {9, 5, 5, 2};
  cfg.primes_mod.reset();
  EXPECT_EQ(select_moduli(cfg), (std::vector<u64>{2, 5, 9}));
  cfg.primes_mod = PrimeClassFilter::parse("4=3");
  EXPECT_THROW(select_moduli(cfg), UsageError);
  cfg.moduli = {1};
  EXPECT_THROW(select_moduli(cfg), UsageError);
}

TEST(ScanTest, InHypothesisRecord) {
  ScanConfig cfg;
  cfg.moduli = {3};
  const auto rep = run_scan(cfg);
  ASSERT_EQ(rep.records.size(), 1u);
  const auto& r = rep.records[0];
  EXPECT_EQ(r.status(), "pass");
  EXPECT_EQ(r.degree, 4u);
  ASSERT_TRUE(r.eigen);
  EXPECT_EQ(r.eigen->trivial_multiplicity, 1u);
  EXPECT_TRUE(r.eigen->verdict);
  EXPECT_EQ(r.numeric_match, true);
  EXPECT_LE(*r.numeric_max_deviation, 1e-6);
  EXPECT_EQ(r.brute_units_match, true);
  EXPECT_EQ(r.toth_match, true);
  EXPECT_EQ(r.closed_form_match, true);
  ASSERT_TRUE(r.deligne);
  EXPECT_TRUE(r.deligne->ok);
  ASSERT_TRUE(r.graph);
  EXPECT_EQ(r.graph->component_count, 1u);
  EXPECT_TRUE(rep.summary.all_pass());
}

TEST(ScanTest, ExploratoryModuliAreNotFailures) {
  ScanConfig cfg;
  cfg.moduli = {4, 5, 9, 13};
  cfg.primes_mod.reset();
  const auto rep = run_scan(cfg);
  for (const auto& r : rep.records) {
    EXPECT_EQ(r.status(), "outside-theorem") << r.n;
    EXPECT_FALSE(r.deligne);
  }
  EXPECT_EQ(rep.summary.outside_theorem, 4u);
  EXPECT_TRUE(rep.summary.all_pass());
  // Even n: Toth skipped with a reason.
  const auto& r4 = rep.records[0];
  EXPECT_FALSE(r4.toth_match);
  bool toth_skip = false;
  for (const auto& s : r4.skipped) toth_skip = toth_skip || s.check == "toth";
  EXPECT_TRUE(toth_skip);
  // n = 4 is bipartite: -k shows up, and that is not held against it.
  EXPECT_TRUE(r4.eigen->bipartite_flag);
}

TEST(ScanTest, CheckSubset) {
  ScanConfig cfg;
  cfg.moduli = {7};
  cfg.checks = {Check::units};
  const auto rep = run_scan(cfg);
  const auto& r = rep.records[0];
  EXPECT_FALSE(r.eigen);
  EXPECT_FALSE(r.graph);
  EXPECT_FALSE(r.deligne);
  EXPECT_EQ(r.brute_units_match, true);
  EXPECT_EQ(r.status(), "pass");
}

TEST(ScanTest, JsonIsByteIdenticalAcrossWorkerCounts) {
  ScanConfig cfg;
  cfg.range_hi = 60;
  cfg.workers = 1;
  const std::string a = render(run_scan(cfg), OutputFormat::json);
  cfg.workers = 8;
  const std::string b = render(run_scan(cfg), OutputFormat::json);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.find("workers"), std::string::npos);
}

TEST(ScanTest, JsonSchema) {
  ScanConfig cfg;
  cfg.moduli = {3, 5};
  cfg.primes_mod.reset();
  const auto j = nlohmann::json::parse(render(run_scan(cfg), OutputFormat::json));
  ASSERT_TRUE(j.contains("config"));
  ASSERT_EQ(j["records"].size(), 2u);
  const auto& r = j["records"][0];
  for (const char* key : {"n", "classification", "degree", "eigen", "graph", "oracles", "tolerance", "status"}) {
    EXPECT_TRUE(r.contains(key)) << key;
  }
  for (const char* key : {"trivial_mult", "max_nontrivial_abs", "bound", "sharpness", "verdict"}) {
    EXPECT_TRUE(r["eigen"].contains(key)) << key;
  }
  for (const char* key : {"components", "bipartite", "girth", "diameter"}) EXPECT_TRUE(r["graph"].contains(key));
  for (const char* key : {"numeric_match", "brute_units_match"}) EXPECT_TRUE(r["oracles"].contains(key));
  EXPECT_EQ(r["eigen"]["max_nontrivial_abs"].get<double>(), 2.0);
  EXPECT_EQ(j["records"][1]["hypothesis"], "outside-theorem");
  EXPECT_EQ(j["summary"]["total"], 2);
  EXPECT_EQ(j["records"][0]["graph"]["odd_walk"], nlohmann::json::parse("[[0,0],[0,1],[0,2],[0,0]]"));
}

TEST(ScanTest, CsvAndTable) {
  ScanConfig cfg;
  cfg.moduli = {3, 7};
  const auto rep = run_scan(cfg);
  const std::string csv = render(rep, OutputFormat::csv);
  std::istringstream lines(csv);
  std::string header, row;
  std::getline(lines, header);
  EXPECT_EQ(header, kCsvHeader);
  std::getline(lines, row);
  EXPECT_EQ(row, "3,prime_3_mod_4,4,1,2,3.46410161514,0.57735026919,true,1,false,3,2,true,true,pass");
  const std::string table = render(rep, OutputFormat::table);
  EXPECT_NE(table.find("summary: 2 moduli, 2 pass, 0 fail"), std::string::npos);
}

TEST(RoundingTest, TwelveSignificantDigits) {
  EXPECT_EQ(format12(2 * std::sqrt(3.0)), "3.46410161514");
  EXPECT_EQ(format12(-0.0), "0");
  EXPECT_EQ(round12(1.0 / 3.0), 0.333333333333);
}

TEST(WriteTextTest, UnwritablePathIsIoError) {
  EXPECT_THROW(write_text("/nonexistent-dir/x/report.json", "{}"), IoError);
  const auto path = std::filesystem::temp_directory_path() / "gcay_write_text_test.txt";
  write_text(path.string(), "ok\n");
  EXPECT_EQ(std::filesystem::file_size(path), 3u);
  std::filesystem::remove(path);
}

}  // namespace
}  // namespace gcay
