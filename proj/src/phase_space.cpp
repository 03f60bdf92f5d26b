#include "qha/phase_space.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <tuple>

#include <fftw3.h>

namespace qha {

PhaseGrid::PhaseGrid(int n_points, int dims) : n_(n_points), dims_(dims), size_(1) {
  if (n_points < 2) throw DomainError("PhaseGrid: need at least 2 points per axis");
  if (dims < 1) throw DomainError("PhaseGrid: need at least one axis");
  for (int d = 0; d < dims; ++d) size_ *= static_cast<std::size_t>(n_points);
}

std::vector<int> PhaseGrid::unflatten(std::size_t flat) const {
  std::vector<int> idx(dims_);
  for (int d = dims_ - 1; d >= 0; --d) {
    idx[d] = static_cast<int>(flat % n_);
    flat /= n_;
  }
  return idx;
}

std::size_t PhaseGrid::flatten(std::span<const int> idx) const {
  std::size_t flat = 0;
  for (int d = 0; d < dims_; ++d) flat = flat * n_ + static_cast<std::size_t>(wrap(idx[d]));
  return flat;
}

GridFn::GridFn(PhaseGrid grid) : grid_(grid), values_(grid.size()) {}

GridFn::GridFn(PhaseGrid grid, std::vector<Complex> values) : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size()) throw ShapeError("GridFn: value count does not match grid");
  for (const auto& v : values_)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw DomainError("GridFn: non-finite value");
}

Complex GridFn::at(long long a, long long b) const {
  return values_[static_cast<std::size_t>(grid_.wrap(a)) * grid_.n() + grid_.wrap(b)];
}

Complex& GridFn::at(long long a, long long b) {
  return values_[static_cast<std::size_t>(grid_.wrap(a)) * grid_.n() + grid_.wrap(b)];
}

GridFn GridFn::delta(const PhaseGrid& grid) {
  GridFn f(grid);
  f.values_[0] = 1.0;
  return f;
}

GridFn GridFn::constant(const PhaseGrid& grid, Complex value) {
  return GridFn(grid, std::vector<Complex>(grid.size(), value));
}

GridFn& GridFn::operator+=(const GridFn& other) {
  require_same_grid(*this, other, "GridFn::operator+=");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
  return *this;
}

GridFn& GridFn::operator-=(const GridFn& other) {
  require_same_grid(*this, other, "GridFn::operator-=");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
  return *this;
}

GridFn& GridFn::operator*=(Complex s) {
  for (auto& v : values_) v *= s;
  return *this;
}

Complex GridFn::sum() const {
  Complex s = 0.0;
  for (const auto& v : values_) s += v;
  return s;
}

double GridFn::max_abs_diff(const GridFn& other) const {
  require_same_grid(*this, other, "GridFn::max_abs_diff");
  double m = 0.0;
  for (std::size_t i = 0; i < values_.size(); ++i) m = std::max(m, std::abs(values_[i] - other.values_[i]));
  return m;
}

void require_same_grid(const GridFn& f, const GridFn& g, const char* what) {
  if (!(f.grid() == g.grid())) throw ShapeError(std::string(what) + ": grid mismatch");
}

double lp_norm(const GridFn& f, double p) {
  require_exponent(p, "lp_norm");
  if (p == kInf) {
    double m = 0.0;
    for (const auto& v : f.values()) m = std::max(m, std::abs(v));
    return m;
  }
  // Scale by the max modulus so large p does not overflow.
  double m = 0.0;
  for (const auto& v : f.values()) m = std::max(m, std::abs(v));
  if (m == 0.0) return 0.0;
  double s = 0.0;
  for (const auto& v : f.values()) s += std::pow(std::abs(v) / m, p);
  return m * std::pow(s, 1.0 / p);
}

namespace {

// FFTW planning is not thread-safe; plans are created once per shape under a
// lock and then executed through the new-array interface, which is.
class PlanCache {
 public:
  static PlanCache& instance() {
    static PlanCache cache;
    return cache;
  }

  fftw_plan get(int n, int dims, int sign) {
    std::lock_guard lock(mu_);
    const auto key = std::make_tuple(n, dims, sign);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    std::vector<int> shape(dims, n);
    std::size_t total = 1;
    for (int d = 0; d < dims; ++d) total *= static_cast<std::size_t>(n);
    auto* in = fftw_alloc_complex(total);
    auto* out = fftw_alloc_complex(total);
    fftw_plan plan = fftw_plan_dft(dims, shape.data(), in, out, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(in);
    fftw_free(out);
    plans_.emplace(key, plan);
    return plan;
  }

  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

 private:
  std::mutex mu_;
  std::map<std::tuple<int, int, int>, fftw_plan> plans_;
};

GridFn dft(const GridFn& f, int sign) {
  const auto& grid = f.grid();
  fftw_plan plan = PlanCache::instance().get(grid.n(), grid.dims(), sign);
  std::vector<Complex> in(f.values().begin(), f.values().end());
  std::vector<Complex> out(f.size());
  fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(in.data()), reinterpret_cast<fftw_complex*>(out.data()));
  const double scale = 1.0 / std::sqrt(static_cast<double>(f.size()));
  for (auto& v : out) v *= scale;
  return GridFn(grid, std::move(out));
}

}  // namespace

GridFn fourier(const GridFn& f) { return dft(f, FFTW_FORWARD); }

GridFn inverse_fourier(const GridFn& f) { return dft(f, FFTW_BACKWARD); }

GridFn pointwise(const GridFn& f, const GridFn& g) {
  require_same_grid(f, g, "pointwise");
  GridFn h(f.grid());
  for (std::size_t i = 0; i < f.size(); ++i) h[i] = f[i] * g[i];
  return h;
}

GridFn convolve(const GridFn& f, const GridFn& g) {
  require_same_grid(f, g, "convolve");
  GridFn prod = pointwise(fourier(f), fourier(g));
  prod *= std::sqrt(static_cast<double>(f.size()));
  return inverse_fourier(prod);
}

GridFn translate(const GridFn& f, std::span<const int> offset) {
  const auto& grid = f.grid();
  if (static_cast<int>(offset.size()) != grid.dims()) throw ShapeError("translate: offset rank differs from grid dims");
  GridFn out(grid);
  std::vector<int> idx(grid.dims());
  for (std::size_t i = 0; i < f.size(); ++i) {
    auto src = grid.unflatten(i);
    for (int d = 0; d < grid.dims(); ++d) idx[d] = src[d] + offset[d];
    out[grid.flatten(idx)] = f[i];
  }
  return out;
}

GridFn random_gridfn(const PhaseGrid& grid, Rng& rng) {
  GridFn f(grid);
  for (auto& v : f.values()) v = complex_normal(rng);
  return f;
}

}  // namespace qha
