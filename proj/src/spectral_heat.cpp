#include "qha/spectral_heat.hpp"

#include <algorithm>
#include <cmath>

namespace qha {

QuantumLaplacian::QuantumLaplacian(int n) : n_(n), mu_(n), v_(n, n), h_(Matrix::Zero(n, n)) {
  if (n < 2) throw DomainError("QuantumLaplacian: need N >= 2");
  const double inv_sqrt = 1.0 / std::sqrt(static_cast<double>(n));
  for (int k = 0; k < n; ++k) {
    mu_[k] = 2.0 - 2.0 * std::cos(2.0 * kPi * k / n);
    for (int j = 0; j < n; ++j) v_(j, k) = std::polar(inv_sqrt, 2.0 * kPi * static_cast<double>((j * k) % n) / n);
  }
  for (int j = 0; j < n; ++j) {
    h_(j, j) += 2.0;
    h_((j + 1) % n, j) -= 1.0;
    h_(j, (j + 1) % n) -= 1.0;
  }
}

double QuantumLaplacian::grid_eigenvalue(int k1, int k2) const {
  const double s1 = std::sin(kPi * k1 / n_);
  const double s2 = std::sin(kPi * k2 / n_);
  return 4.0 * s1 * s1 + 4.0 * s2 * s2;
}

HeatState::HeatState(QhaPair p, double t) : pair(std::move(p)), time(t) {
  if (!(t >= 0.0)) throw DomainError("HeatState: time must be nonnegative");
}

namespace {

void require_dim(const QuantumLaplacian& L, const QhaPair& p, const char* what) {
  if (p.dim() != L.n()) throw ShapeError(std::string(what) + ": pair dimension differs from Laplacian");
}

}  // namespace

QhaPair laplacian_apply(const QuantumLaplacian& L, const QhaPair& p) {
  require_dim(L, p, "laplacian_apply");
  const int n = L.n();
  GridFn lf(p.f.grid());
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      lf.at(a, b) = 4.0 * p.f.at(a, b) - p.f.at(a + 1, b) - p.f.at(a - 1, b) - p.f.at(a, b + 1) - p.f.at(a, b - 1);
  const Matrix& h = L.generator();
  return QhaPair(std::move(lf), TraceOp(h * p.A.matrix() + p.A.matrix() * h));
}

std::vector<SpectralElement> spectral_decompose(const QuantumLaplacian& L) {
  const int n = L.n();
  const PhaseGrid grid(n, 2);
  std::vector<SpectralElement> out;
  out.reserve(2 * grid.size());
  for (int k1 = 0; k1 < n; ++k1) {
    for (int k2 = 0; k2 < n; ++k2) {
      GridFn wave(grid);
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          wave.at(a, b) = std::polar(1.0 / n, 2.0 * kPi * static_cast<double>((k1 * a + k2 * b) % n) / n);
      out.push_back({L.grid_eigenvalue(k1, k2), QhaPair(std::move(wave), TraceOp(n))});
    }
  }
  const Matrix& v = L.operator_eigenvectors();
  const auto& mu = L.operator_spectrum();
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l)
      out.push_back({mu[k] + mu[l], QhaPair(GridFn(grid), TraceOp(v.col(k) * v.col(l).adjoint()))});
  return out;
}

QhaPair apply_spectral_multiplier(const QuantumLaplacian& L, const QhaPair& p, const std::function<double(double)>& m) {
  require_dim(L, p, "apply_spectral_multiplier");
  const int n = L.n();
  // Plane wave e^{2πik·x/N} sits at DFT index k.
  GridFn fh = fourier(p.f);
  for (int k1 = 0; k1 < n; ++k1)
    for (int k2 = 0; k2 < n; ++k2) fh.at(k1, k2) *= m(L.grid_eigenvalue(k1, k2));
  const Matrix& v = L.operator_eigenvectors();
  const auto& mu = L.operator_spectrum();
  Matrix c = v.adjoint() * p.A.matrix() * v;
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l) c(k, l) *= m(mu[k] + mu[l]);
  return QhaPair(inverse_fourier(fh), TraceOp(v * c * v.adjoint()));
}

QhaPair heat_evolve(const QuantumLaplacian& L, const QhaPair& p, double t) {
  if (!(t >= 0.0)) throw DomainError("heat_evolve: time must be nonnegative");
  if (t == 0.0) return p;
  return apply_spectral_multiplier(L, p, [t](double lambda) { return std::exp(-t * lambda); });
}

HeatState heat_evolve(const QuantumLaplacian& L, const HeatState& s, double dt) {
  return HeatState(heat_evolve(L, s.pair, dt), s.time + dt);
}

double heat_residual(const QuantumLaplacian& L, const QhaPair& p, double t, double dt) {
  if (!(t > 0.0) || !(dt > 0.0) || dt > t) throw DomainError("heat_residual: need 0 < dt <= t");
  const QhaPair fwd = heat_evolve(L, p, t + dt);
  const QhaPair bwd = heat_evolve(L, p, t - dt);
  QhaPair diff = fwd - bwd;
  diff *= 1.0 / (2.0 * dt);
  diff += laplacian_apply(L, heat_evolve(L, p, t));
  return pair_norm(diff, 2.0);
}

double sobolev_norm(const QuantumLaplacian& L, const QhaPair& p, double exponent) {
  require_exponent(exponent, "sobolev_norm");
  return pair_norm(apply_spectral_multiplier(L, p, [](double lambda) { return std::sqrt(1.0 + lambda); }), exponent);
}

double sobolev_conjugate(double p) {
  constexpr double n = 2.0;
  if (!(p > 1.0 && p < n)) throw DomainError("sobolev: need 1 < p < 2 on the two-dimensional torus");
  return n * p / (n - p);
}

double sobolev_ratio(const QuantumLaplacian& L, const QhaPair& p, double exponent) {
  const double pstar = sobolev_conjugate(exponent);
  require_dim(L, p, "check_sobolev");
  const double scale = std::max(lp_norm(p.f, 1.0), 1e-300);
  if (std::abs(p.f.sum()) > 1e-10 * scale) throw DomainError("check_sobolev: function part must be mean-zero");
  const QhaPair root = apply_spectral_multiplier(L, p, [](double lambda) { return std::sqrt(std::max(lambda, 0.0)); });
  const double denom = pair_norm(root, exponent);
  if (denom <= 1e-14 * std::max(pair_norm(p, exponent), 1e-300) || denom == 0.0)
    throw DomainError("check_sobolev: input lies in the kernel of the Laplacian");
  return pair_norm(p, pstar) / denom;
}

InequalityReport check_sobolev(const QuantumLaplacian& L, const QhaPair& p, double exponent) {
  InequalityReport rep("sobolev");
  const double r = sobolev_ratio(L, p, exponent);
  rep.record(r, !std::isfinite(r));
  rep.empirical_constant = r;
  return rep;
}

InequalityReport check_sobolev(const QuantumLaplacian& L, const std::vector<QhaPair>& family, double exponent) {
  InequalityReport rep("sobolev");
  std::vector<double> ratios;
  ratios.reserve(family.size());
  for (const auto& p : family) ratios.push_back(sobolev_ratio(L, p, exponent));
  if (ratios.empty()) return rep;
  std::vector<double> sorted = ratios;
  std::nth_element(sorted.begin(), sorted.begin() + sorted.size() / 2, sorted.end());
  const double median = sorted[sorted.size() / 2];
  for (double r : ratios) rep.record(r, !std::isfinite(r) || r > 10.0 * median);
  rep.empirical_constant = rep.max_ratio;
  return rep;
}

QhaPair remove_kernel(const QuantumLaplacian& L, const QhaPair& p) {
  require_dim(L, p, "remove_kernel");
  QhaPair out = p;
  const Complex mean = p.f.sum() / static_cast<double>(p.f.size());
  for (auto& v : out.f.values()) v -= mean;
  const Eigen::VectorXcd v0 = L.operator_eigenvectors().col(0);
  const Complex c = v0.adjoint() * p.A.matrix() * v0;
  out.A.matrix() -= c * (v0 * v0.adjoint());
  return out;
}

}  // namespace qha
