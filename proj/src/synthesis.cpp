#include "qha/synthesis.hpp"

#include <algorithm>
#include <cmath>

namespace qha {

FourierSupport::FourierSupport(int n, bool full) : n_(n), bits_(static_cast<std::size_t>(n) * n, full ? 1 : 0) {}

FourierSupport::FourierSupport(int n, std::vector<char> bits) : n_(n), bits_(std::move(bits)) {
  if (bits_.size() != static_cast<std::size_t>(n) * n) throw ShapeError("FourierSupport: bitmask size differs from N×N");
}

std::size_t FourierSupport::count() const { return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), 1)); }

FourierSupport FourierSupport::complement() const {
  FourierSupport c(n_);
  for (std::size_t i = 0; i < bits_.size(); ++i) c.bits_[i] = bits_[i] ? 0 : 1;
  return c;
}

std::vector<double> FourierSupport::mask() const {
  std::vector<double> m(bits_.size());
  for (std::size_t i = 0; i < bits_.size(); ++i) m[i] = bits_[i] ? 1.0 : 0.0;
  return m;
}

FourierSupport FourierSupport::box(int n, int halfwidth) {
  const auto m = box_mask(n, halfwidth);
  FourierSupport s(n);
  for (std::size_t i = 0; i < m.size(); ++i) s.bits_[i] = m[i] > 0 ? 1 : 0;
  return s;
}

FourierSupport FourierSupport::random(int n, double density, Rng& rng) {
  FourierSupport s(n);
  for (auto& b : s.bits_) b = uniform(rng) < density ? 1 : 0;
  return s;
}

QhaPair band_project(const QhaPair& p, const FourierSupport& s) {
  if (s.n() != p.dim()) throw ShapeError("band_project: support size differs from pair");
  return apply_joint_mask(p, s.mask());
}

JointTransform joint_transform(const QhaPair& p) {
  const WeylSystem sys(p.dim());
  GridFn ah = fourier_weyl(sys, p.A);
  ah *= 1.0 / std::sqrt(static_cast<double>(p.dim()));
  return {fourier(p.f), std::move(ah)};
}

QhaPair from_joint_transform(const JointTransform& t) {
  const int n = t.a_hat.grid().n();
  const WeylSystem sys(n);
  GridFn ah = t.a_hat;
  ah *= std::sqrt(static_cast<double>(n));
  return QhaPair(inverse_fourier(t.f_hat), inverse_fourier_weyl(sys, ah));
}

WienerApproximation wiener_approximate(const QhaPair& p, int degree) {
  if (degree < 0) throw DomainError("wiener_approximate: degree must be nonnegative");
  QhaPair approx = band_project(p, FourierSupport::box(p.dim(), degree));
  const double err = pair_norm(p - approx, 2.0);
  return {std::move(approx), err};
}

FourierSupport zero_set(const QhaPair& p, double tol, std::optional<double> reference) {
  if (!(tol > 0.0)) throw DomainError("zero_set: tolerance must be positive");
  const auto t = joint_transform(p);
  double ref = 0.0;
  if (reference) {
    ref = *reference;
  } else {
    for (std::size_t i = 0; i < t.f_hat.size(); ++i) ref = std::max({ref, std::abs(t.f_hat[i]), std::abs(t.a_hat[i])});
  }
  FourierSupport z(p.dim());
  const double thr = tol * ref;
  for (std::size_t i = 0; i < z.size(); ++i)
    if (ref == 0.0 || (std::abs(t.f_hat[i]) < thr && std::abs(t.a_hat[i]) < thr)) z.set(i);
  return z;
}

namespace {

double max_on(const JointTransform& t, const FourierSupport& z) {
  double m = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i)
    if (z.contains(i)) m = std::max({m, std::abs(t.f_hat[i]), std::abs(t.a_hat[i])});
  return m;
}

double max_all(const JointTransform& t) { return max_on(t, FourierSupport(t.f_hat.grid().n(), true)); }

// Direct synthesis from characters e^{2πi<x,ξ>/N}/N and Weyl operators off Z.
QhaPair resynthesize(const JointTransform& t, const FourierSupport& z) {
  const int n = z.n();
  const WeylSystem sys(n);
  const PhaseGrid grid(n, 2);
  GridFn f(grid);
  Matrix a = Matrix::Zero(n, n);
  const double sqrt_n = std::sqrt(static_cast<double>(n));
  for (std::size_t k = 0; k < z.size(); ++k) {
    if (z.contains(k)) continue;
    const auto xi = grid.unflatten(k);
    for (std::size_t x = 0; x < grid.size(); ++x) {
      const auto xs = grid.unflatten(x);
      const long long phase = (static_cast<long long>(xs[0]) * xi[0] + static_cast<long long>(xs[1]) * xi[1]) % n;
      f[x] += t.f_hat[k] * std::polar(1.0 / n, 2.0 * kPi * static_cast<double>(phase) / n);
    }
    a += (t.a_hat[k] * sqrt_n / static_cast<double>(n)) * weyl(sys, {xi[0], xi[1]}).matrix().adjoint();
  }
  return QhaPair(std::move(f), TraceOp(std::move(a)));
}

}  // namespace

InequalityReport check_synthesis(const IdealSpec& ideal, std::size_t trials, std::uint64_t seed) {
  const auto& z = ideal.zero_set;
  const int n = z.n();
  const FourierSupport keep = z.complement();
  InequalityReport rep("synthesis");
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng = trial_rng(seed, "synthesis", t);
    const QhaPair member = band_project(random_pair(n, rng), keep);
    const JointTransform mt = joint_transform(member);
    const double scale = std::max(1.0, max_all(mt));

    const double synth_err = member.max_abs_diff(resynthesize(mt, z));
    const double membership = max_on(mt, z) / scale;

    const QhaPair q = random_pair(n, rng);
    const JointTransform ct = joint_transform(pair_convolve_paper(member, q));
    const double closure = max_on(ct, z) / std::max(1.0, max_all(ct));

    const double err = std::max({synth_err, membership, closure});
    rep.record_error(err, 1e-9);
  }
  rep.empirical_constant = rep.max_error;
  return rep;
}

QhaPair perturbed_member(const IdealSpec& ideal, double eps, Rng& rng) {
  if (!(eps >= 0.0)) throw DomainError("perturbed_member: epsilon must be nonnegative");
  const auto& z = ideal.zero_set;
  const PhaseGrid grid(z.n(), 2);
  JointTransform t{GridFn(grid), GridFn(grid)};
  auto coeff = [&](bool leak) {
    const double mod = leak ? eps * uniform(rng) : uniform(rng, 0.5, 1.0);
    return std::polar(mod, uniform(rng, 0.0, 2.0 * kPi));
  };
  for (std::size_t i = 0; i < z.size(); ++i) {
    t.f_hat[i] = coeff(z.contains(i));
    t.a_hat[i] = coeff(z.contains(i));
  }
  return from_joint_transform(t);
}

double closure_drift(const IdealSpec& ideal, const QhaPair& member, const QhaPair& q) {
  // |T(P*Q)(z)| <= |T(P)(z)|·‖g‖₁ componentwise, so this is at most the leak level on Z.
  const JointTransform ct = joint_transform(pair_convolve_paper(member, q));
  const double g1 = lp_norm(q.f, 1.0);
  return g1 > 0 ? max_on(ct, ideal.zero_set) / g1 : 0.0;
}

InequalityReport check_ideal_stability(const IdealSpec& ideal, double eps, std::size_t trials, std::uint64_t seed) {
  if (!(eps >= 0.0)) throw DomainError("check_ideal_stability: epsilon must be nonnegative");
  const auto& z = ideal.zero_set;
  InequalityReport rep("ideal_stability");
  // Off-Z coefficients have modulus >= 1/2 against a reference of 1, so the
  // zero set at tolerance 2ε must reproduce Z exactly for ε < 1/4.
  const double tol = std::max(2.0 * eps, 1e-12);
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng = trial_rng(seed, "ideal_stability", t);
    const QhaPair member = perturbed_member(ideal, eps, rng);
    const QhaPair q = random_pair(z.n(), rng);
    const double drift = closure_drift(ideal, member, q);
    const bool recovered = zero_set(member, tol, 1.0) == z;
    const double c = eps > 0 ? drift / eps : drift;
    rep.record(c, !recovered || drift > eps * (1.0 + 1e-9) + 1e-13);
    rep.max_error = std::max(rep.max_error, drift);
  }
  rep.empirical_constant = rep.trials ? rep.max_ratio : 0.0;
  return rep;
}

}  // namespace qha
