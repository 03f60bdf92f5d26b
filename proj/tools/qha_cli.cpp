// qha: command-line front end for the verification suites.
//
//   qha verify --suite lp --n 8 --trials 1000 --seed 42 --p 1,2,inf --out report.json
//   qha inspect tensor.qha1
//
// Exit codes: 0 all checks pass, 1 a violation or diagnostic, 2 usage or I/O error.

#include <chrono>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "qha/suites.hpp"
#include "qha/tensor_io.hpp"

namespace {

std::vector<double> parse_list(const std::string& text, const char* what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item == "inf" || item == "Inf" || item == "infinity") {
      out.push_back(qha::kInf);
      continue;
    }
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) throw qha::UsageError(std::string("bad value '") + item + "' in " + what);
    out.push_back(v);
  }
  if (out.empty()) throw qha::UsageError(std::string("empty list for ") + what);
  return out;
}

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

void summarize(const qha::Report& r, std::ostream& os) {
  for (const auto& c : r.checks)
    os << (c.violations ? "FAIL " : "ok   ") << c.name << "  trials=" << c.trials << " violations=" << c.violations
       << '\n';
  for (const auto& d : r.diagnostics) os << "DIAG " << d << '\n';
  os << "verdict: " << (r.passed() ? "pass" : "fail") << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Property-based verification suites for finite quantum harmonic analysis"};
  app.require_subcommand(1);

  qha::SuiteConfig cfg;
  std::string ps = "1,1.5,2,3,inf", qs = "1,2,inf", ss = "0.5,1,2", thetas = "0.25,0.5,0.75", eps = "1e-6,1e-4,1e-2";
  std::string format = "json";
  unsigned threads = 0;
  bool quiet = false;

  auto* verify = app.add_subcommand("verify", "Run a verification suite and emit a report");
  verify->add_option("--suite", cfg.suite, "lp|duality|uncertainty|heat|plancherel|besov|ncg|hall|synthesis|all")
      ->required();
  verify->add_option("--n", cfg.n, "Model size N");
  verify->add_option("--dims", cfg.dims, "Grid dimension for random grid functions");
  verify->add_option("--trials", cfg.trials, "Randomized trials per check");
  verify->add_option("--seed", cfg.seed, "Base seed");
  verify->add_option("--p", ps, "Comma-separated exponents (inf allowed)");
  verify->add_option("--qexp", qs, "Comma-separated Besov/TL fine indices");
  verify->add_option("--s", ss, "Comma-separated smoothness indices");
  verify->add_option("--theta", thetas, "Comma-separated interpolation parameters");
  verify->add_option("--eps", eps, "Comma-separated leakage levels for ideal stability");
  verify->add_option("--tol", cfg.tol, "Tolerance (must be positive)");
  verify->add_option("--group", cfg.group, "s3|zN|dN|heisP|all");
  verify->add_option("--torus-p", cfg.torus_p, "Numerator of the flux θ = p/q");
  verify->add_option("--q", cfg.torus_q, "Denominator of the flux θ = p/q");
  verify->add_option("--mesh", cfg.mesh, "Brillouin-zone mesh per direction");
  verify->add_option("--out", cfg.out, "Output path (stdout when omitted)");
  verify->add_option("--format", format, "json|csv|plotdata");
  verify->add_option("--threads", threads, "Worker threads (default: QHA_THREADS or hardware)");
  verify->add_flag("--quiet", quiet, "No summary on stderr");

  std::string tensor_path;
  auto* inspect = app.add_subcommand("inspect", "Print the header and norms of a QHA1 tensor file");
  inspect->add_option("path", tensor_path)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*inspect) {
      const qha::Tensor t = qha::read_tensor(tensor_path);
      std::cout << "rank " << t.dims.size() << " dims";
      for (auto d : t.dims) std::cout << ' ' << d;
      double l2 = 0.0;
      for (const auto& z : t.data) l2 += std::norm(z);
      std::cout << "\nelements " << t.data.size() << "\nl2 " << std::sqrt(l2) << '\n';
      return 0;
    }

    cfg.ps = parse_list(ps, "--p");
    cfg.qs = parse_list(qs, "--qexp");
    cfg.ss = parse_list(ss, "--s");
    cfg.thetas = parse_list(thetas, "--theta");
    cfg.eps = parse_list(eps, "--eps");
    const qha::Format fmt = qha::parse_format(format);
    if (threads == 0) threads = qha::default_threads();

    qha::Report report = qha::run_suite(cfg, threads);
    report.timestamp = utc_now();
    const std::string doc = qha::emit(report, fmt);
    if (cfg.out.empty()) {
      std::cout << doc;
    } else {
      std::ofstream os(cfg.out);
      if (!os) throw qha::IoError("cannot open " + cfg.out + " for writing");
      os << doc;
      if (!os) throw qha::IoError("write failed: " + cfg.out);
    }
    if (!quiet) summarize(report, std::cerr);
    return report.passed() ? 0 : 1;
  } catch (const qha::UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const qha::DomainError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return 2;
  } catch (const qha::IoError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
