#include <doctest.h>

#include <cstdio>
#include <cstring>
#include <filesystem>

#include "qha/qha_pairs.hpp"
#include "qha/suites.hpp"
#include "qha/tensor_io.hpp"

using namespace qha;

TEST_CASE("QHA1 header layout is byte exact") {
  Tensor t{{2, 3}, {Complex(1.0, -2.0), 0, 0, 0, 0, Complex(0.5, 0.25)}};
  const std::string b = encode_tensor(t);
  REQUIRE(b.size() == 4 + 4 + 4 + 2 * 8 + 6 * 16);
  CHECK(b.substr(0, 4) == "QHA1");
  CHECK(static_cast<unsigned char>(b[4]) == 1);  // dtype, little-endian u32
  CHECK(b[5] == 0);
  CHECK(static_cast<unsigned char>(b[8]) == 2);  // rank
  CHECK(static_cast<unsigned char>(b[12]) == 2);
  CHECK(static_cast<unsigned char>(b[20]) == 3);
  double re = 0;
  std::memcpy(&re, b.data() + 28, 8);
  CHECK(re == 1.0);
  const Tensor back = decode_tensor(b);
  CHECK(back.dims == t.dims);
  CHECK(back.data == t.data);
}

TEST_CASE("QHA1 round trips grid functions and operators through files") {
  Rng rng = trial_rng(1, "io/rt", 0);
  const QhaPair p = random_pair(5, rng);
  const auto dir = std::filesystem::temp_directory_path();
  const std::string fpath = (dir / "qha_test_f.qha1").string(), apath = (dir / "qha_test_a.qha1").string();
  write_tensor(fpath, to_tensor(p.f));
  write_tensor(apath, to_tensor(p.A));
  CHECK(tensor_to_gridfn(read_tensor(fpath)).max_abs_diff(p.f) == 0.0);
  CHECK(tensor_to_traceop(read_tensor(apath)).max_abs_diff(p.A) == 0.0);
  CHECK_THROWS_AS(tensor_to_traceop(Tensor{{5}, std::vector<Complex>(5)}), ShapeError);
  CHECK_THROWS_AS(tensor_to_gridfn(Tensor{{5, 4}, std::vector<Complex>(20)}), ShapeError);
  std::remove(fpath.c_str());
  std::remove(apath.c_str());
}

TEST_CASE("QHA1 rejects malformed input") {
  CHECK_THROWS_AS(decode_tensor("QHA2"), IoError);
  std::string b = encode_tensor(Tensor{{2}, {1.0, 2.0}});
  CHECK_THROWS_AS(decode_tensor(b.substr(0, b.size() - 1)), IoError);
  b[4] = 7;
  CHECK_THROWS_AS(decode_tensor(b), IoError);
  CHECK_THROWS_AS(read_tensor("/nonexistent/dir/x.qha1"), IoError);
  CHECK_THROWS_AS(write_tensor("/nonexistent/dir/x.qha1", Tensor{{1}, {1.0}}), IoError);
  CHECK_THROWS_AS(encode_tensor(Tensor{{3}, {1.0}}), ShapeError);
}

TEST_CASE("empty report is valid JSON with zero checks") {
  Report r;
  r.suite = "lp";
  const auto j = nlohmann::json::parse(emit(r, Format::Json));
  CHECK(j["checks"].size() == 0);
  CHECK(j["verdict"] == "pass");
  CHECK(j["schema_version"] == kSchemaVersion);
}

TEST_CASE("JSON round trip preserves the record set, infinities included") {
  SuiteConfig cfg;
  cfg.suite = "lp";
  cfg.trials = 5;
  Report r = run_suite(cfg, 2);
  r.checks.front().details = {{"x", 1}};
  r.checks.back().max_ratio = kInf;
  const Report back = report_from_json(nlohmann::json::parse(emit(r, Format::Json)));
  CHECK(back.checks == r.checks);
  CHECK(back.suite == r.suite);
  CHECK(back.config == r.config);
}

TEST_CASE("CSV has one row per check, plotdata has monotone Wiener series") {
  SuiteConfig cfg;
  cfg.suite = "synthesis";
  cfg.trials = 5;
  const Report r = run_suite(cfg, 1);
  const std::string csv = emit(r, Format::Csv);
  CHECK(static_cast<std::size_t>(std::count(csv.begin(), csv.end(), '\n')) == r.checks.size() + 1);
  const std::string plot = emit(r, Format::Plotdata);
  CHECK(plot.find("# series wiener_error_vs_degree") != std::string::npos);
  const auto it = std::find_if(r.plots.begin(), r.plots.end(), [](const PlotSeries& s) { return s.name == "wiener_error_vs_degree"; });
  REQUIRE(it != r.plots.end());
  for (std::size_t i = 1; i < it->points.size(); ++i) {
    CHECK(it->points[i].first > it->points[i - 1].first);
    CHECK(it->points[i].second <= it->points[i - 1].second * (1 + 1e-12));
  }
  CHECK_THROWS_AS(parse_format("xml"), DomainError);
}

TEST_CASE("determinism: same seed, any thread count") {
  SuiteConfig cfg;
  cfg.suite = "lp";
  cfg.n = 8;
  cfg.trials = 100;
  cfg.seed = 42;
  const std::string a = canonical_content(run_suite(cfg, 1));
  CHECK(a == canonical_content(run_suite(cfg, 1)));
  CHECK(a == canonical_content(run_suite(cfg, 4)));
  cfg.seed = 43;
  CHECK(a != canonical_content(run_suite(cfg, 4)));
}

TEST_CASE("suite verdicts and errors") {
  SuiteConfig cfg;
  cfg.suite = "plancherel";
  cfg.group = "s3";
  cfg.trials = 20;
  const Report r = run_suite(cfg, 2);
  CHECK(r.passed());
  for (const auto& c : r.checks)
    if (c.name.rfind("plancherel[", 0) == 0) CHECK(c.max_error < 1e-10);

  cfg.suite = "hall";
  cfg.torus_q = 3;
  const Report h = run_suite(cfg, 2);
  REQUIRE(h.checks.size() == 1);
  CHECK(h.checks[0].details["band_cherns"] == nlohmann::json::array({1, -2, 1}));

  cfg.torus_q = 2;  // gapless: recorded as a diagnostic, verdict fail
  const Report g = run_suite(cfg, 2);
  CHECK(!g.diagnostics.empty());
  CHECK(!g.passed());

  cfg.suite = "nope";
  CHECK_THROWS_AS(run_suite(cfg, 1), UsageError);
  cfg.suite = "lp";
  cfg.n = 1;
  CHECK_THROWS_AS(run_suite(cfg, 1), DomainError);
  cfg.n = 8;
  cfg.tol = 0.0;
  CHECK_THROWS_AS(run_suite(cfg, 1), DomainError);
  cfg.tol = 1e-9;
  cfg.trials = 0;
  CHECK_THROWS_AS(run_suite(cfg, 1), DomainError);
}

TEST_CASE("a violation flips the verdict") {
  Report r;
  CheckRecord c;
  c.name = "x";
  c.trials = 1;
  c.violations = 1;
  r.checks.push_back(c);
  CHECK(!r.passed());
  CHECK(nlohmann::json::parse(emit(r, Format::Json))["verdict"] == "fail");
}
