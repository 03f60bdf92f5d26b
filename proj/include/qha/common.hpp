#pragma once

#include <complex>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <Eigen/Dense>

namespace qha {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr double kPi = 3.14159265358979323846;

// Error taxonomy shared by every module. Kernels throw; the CLI maps the
// categories onto exit codes.
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};
struct ShapeError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct ConsistencyError : std::logic_error {
  using std::logic_error::logic_error;
};
struct DiagnosticError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline void require_exponent(double p, const char* what) {
  if (!(p >= 1.0)) throw DomainError(std::string(what) + ": exponent must be >= 1 or inf");
}

/// Hölder conjugate: 1/p + 1/q = 1, with 1 <-> inf.
inline double conjugate_exponent(double p) {
  require_exponent(p, "conjugate_exponent");
  if (p == 1.0) return kInf;
  if (p == kInf) return 1.0;
  return p / (p - 1.0);
}

/// ℓ^p aggregation of nonnegative terms, p in [1, inf].
template <class Range>
double lp_sum(const Range& terms, double p) {
  if (p == kInf) {
    double m = 0.0;
    for (double t : terms) m = std::max(m, t);
    return m;
  }
  double s = 0.0;
  for (double t : terms) s += std::pow(t, p);
  return std::pow(s, 1.0 / p);
}

// --- Deterministic randomness -------------------------------------------
//
// Every randomized trial draws from its own stream keyed by
// (seed, stream tag, trial index). Results therefore never depend on how
// trials are scheduled across threads.

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t stream_tag(const std::string& name) {
  std::uint64_t h = 1469598103934665603ULL;  // FNV-1a
  for (unsigned char c : name) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

using Rng = std::mt19937_64;

inline Rng trial_rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(splitmix64(seed)),
                    static_cast<std::uint32_t>(splitmix64(seed) >> 32),
                    static_cast<std::uint32_t>(splitmix64(stream ^ 0x5bd1e995ULL)),
                    static_cast<std::uint32_t>(splitmix64(trial + 0x27d4eb2fULL)),
                    static_cast<std::uint32_t>(splitmix64(trial) >> 32)};
  return Rng(seq);
}

inline Rng trial_rng(std::uint64_t seed, const std::string& stream, std::uint64_t trial) {
  return trial_rng(seed, stream_tag(stream), trial);
}

inline double uniform(Rng& rng, double lo = 0.0, double hi = 1.0) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

/// Complex standard normal: real and imaginary parts i.i.d. N(0, 1/2).
inline Complex complex_normal(Rng& rng) {
  std::normal_distribution<double> nd(0.0, std::sqrt(0.5));
  const double re = nd(rng);
  const double im = nd(rng);
  return {re, im};
}

inline Matrix random_matrix(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  Matrix m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = complex_normal(rng);
  return m;
}

inline Matrix random_unitary(Eigen::Index n, Rng& rng) {
  Eigen::HouseholderQR<Matrix> qr(random_matrix(n, n, rng));
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index k = 0; k < n; ++k) {
    const Complex d = r(k, k);
    if (std::abs(d) > 0) q.col(k) *= d / std::abs(d);
  }
  return q;
}

// --- Parallel trial evaluation --------------------------------------------

/// Worker count from QHA_THREADS (0 or unset: hardware concurrency).
inline unsigned default_threads() {
  if (const char* env = std::getenv("QHA_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

/// Evaluates fn(i) for i in [0, n) on up to `threads` workers. Output slot i
/// always holds fn(i), so any reduction done afterwards in index order is
/// independent of the thread count.
template <class Fn>
auto parallel_map(std::size_t n, unsigned threads, Fn&& fn) -> std::vector<decltype(fn(std::size_t{}))> {
  using T = decltype(fn(std::size_t{}));
  std::vector<T> out(n);
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
    return out;
  }
  std::vector<std::exception_ptr> errors(threads);
  {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned w = 0; w < threads; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t i = w; i < n; i += threads) out[i] = fn(i);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

}  // namespace qha
