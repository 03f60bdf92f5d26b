#include "qha/qha_pairs.hpp"

#include <algorithm>
#include <cmath>

namespace qha {

QhaPair::QhaPair(GridFn f_, TraceOp a_) : f(std::move(f_)), A(std::move(a_)) {
  const auto& g = f.grid();
  if (g.dims() != 2 || g.n() != A.dim()) throw ShapeError("QhaPair: grid must be N×N for an N×N operator");
}

QhaPair QhaPair::zero(int n) { return QhaPair(GridFn(PhaseGrid(n, 2)), TraceOp(n)); }

QhaPair& QhaPair::operator+=(const QhaPair& o) {
  f += o.f;
  A += o.A;
  return *this;
}

QhaPair& QhaPair::operator-=(const QhaPair& o) {
  f -= o.f;
  A -= o.A;
  return *this;
}

QhaPair& QhaPair::operator*=(Complex s) {
  f *= s;
  A *= s;
  return *this;
}

double QhaPair::max_abs_diff(const QhaPair& o) const { return std::max(f.max_abs_diff(o.f), A.max_abs_diff(o.A)); }

void require_same_dims(const QhaPair& p, const QhaPair& q, const char* what) {
  if (p.dim() != q.dim()) throw ShapeError(std::string(what) + ": pair dimensions differ");
}

double pair_norm(const QhaPair& p, double exponent) {
  require_exponent(exponent, "pair_norm");
  return lp_norm(p.f, exponent) + schatten_norm(p.A, exponent);
}

namespace {

FinitePhasePoint grid_point(const PhaseGrid& grid, std::size_t flat) {
  const auto idx = grid.unflatten(flat);
  return {idx[0], idx[1]};
}

// Σ_z w(z) W_z A W_z†
Matrix weighted_shift_average(const WeylSystem& sys, const GridFn& w, const Matrix& a) {
  Matrix acc = Matrix::Zero(a.rows(), a.cols());
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] == Complex{0.0}) continue;
    const Matrix wz = weyl(sys, grid_point(w.grid(), i)).matrix();
    acc += w[i] * (wz * a * wz.adjoint());
  }
  return acc;
}

Matrix parity_conjugate(const Matrix& b) {
  const auto n = b.rows();
  Matrix out(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index k = 0; k < n; ++k) out(j, k) = b((n - j) % n, (n - k) % n);
  return out;
}

}  // namespace

QhaPair pair_convolve_paper(const QhaPair& p, const QhaPair& q) {
  require_same_dims(p, q, "pair_convolve_paper");
  const WeylSystem sys(p.dim());
  return QhaPair(convolve(p.f, q.f), TraceOp(weighted_shift_average(sys, q.f, p.A.matrix())));
}

QhaPair pair_convolve_werner(const QhaPair& p, const QhaPair& q) {
  require_same_dims(p, q, "pair_convolve_werner");
  const WeylSystem sys(p.dim());
  GridFn fn = convolve(p.f, q.f);
  const Matrix pb = parity_conjugate(q.A.matrix());
  for (std::size_t i = 0; i < fn.size(); ++i) {
    const Matrix wz = weyl(sys, grid_point(fn.grid(), i)).matrix();
    fn[i] += (p.A.matrix() * wz * pb * wz.adjoint()).trace();
  }
  Matrix op = weighted_shift_average(sys, p.f, q.A.matrix()) + weighted_shift_average(sys, q.f, p.A.matrix());
  return QhaPair(std::move(fn), TraceOp(std::move(op)));
}

Complex duality_pairing(const QhaPair& p, const QhaPair& q) {
  require_same_dims(p, q, "duality_pairing");
  Complex s = 0.0;
  for (std::size_t i = 0; i < p.f.size(); ++i) s += p.f[i] * q.f[i];
  return s + (p.A.matrix() * q.A.matrix()).trace();
}

Complex pair_inner(const QhaPair& p, const QhaPair& q) {
  require_same_dims(p, q, "pair_inner");
  Complex s = 0.0;
  for (std::size_t i = 0; i < p.f.size(); ++i) s += p.f[i] * std::conj(q.f[i]);
  return s + (p.A.matrix() * q.A.matrix().adjoint()).trace();
}

double dual_norm(const QhaPair& q, double exponent) {
  require_exponent(exponent, "dual_norm");
  return std::max(lp_norm(q.f, exponent), schatten_norm(q.A, exponent));
}

namespace {

// Real weights w >= 0 with ‖w‖_{r'} = 1 and Σ w_k s_k = ‖s‖_r for s >= 0.
std::vector<double> holder_weights(const std::vector<double>& s, double r) {
  std::vector<double> w(s.size(), 0.0);
  const double norm = lp_sum(s, r);
  if (norm == 0.0) return w;
  if (r == kInf) {
    w[std::distance(s.begin(), std::max_element(s.begin(), s.end()))] = 1.0;
  } else if (r == 1.0) {
    std::fill(w.begin(), w.end(), 1.0);
  } else {
    for (std::size_t k = 0; k < s.size(); ++k) w[k] = std::pow(s[k] / norm, r - 1.0);
  }
  return w;
}

}  // namespace

GridFn holder_witness(const GridFn& g, double r) {
  require_exponent(r, "holder_witness");
  std::vector<double> mod(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) mod[i] = std::abs(g[i]);
  const auto w = holder_weights(mod, r);
  GridFn h(g.grid());
  for (std::size_t i = 0; i < g.size(); ++i)
    if (mod[i] > 0.0) h[i] = w[i] * std::conj(g[i]) / mod[i];
  return h;
}

TraceOp holder_witness(const TraceOp& b, double r) {
  require_exponent(r, "holder_witness");
  Eigen::JacobiSVD<Matrix> svd(b.matrix(), Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const auto w = holder_weights(std::vector<double>(sv.data(), sv.data() + sv.size()), r);
  Eigen::VectorXd wv = Eigen::Map<const Eigen::VectorXd>(w.data(), static_cast<Eigen::Index>(w.size()));
  // B = U Σ V†  ⇒  tr(V W U† B) = Σ w_k s_k
  return TraceOp(svd.matrixV() * wv.asDiagonal() * svd.matrixU().adjoint());
}

QhaPair dual_norm_maximizer(const QhaPair& q, double q_exponent) {
  const double gn = lp_norm(q.f, q_exponent);
  const double bn = schatten_norm(q.A, q_exponent);
  QhaPair p = QhaPair::zero(q.dim());
  if (gn == 0.0 && bn == 0.0) return p;
  if (gn >= bn)
    p.f = holder_witness(q.f, q_exponent);
  else
    p.A = holder_witness(q.A, q_exponent);
  return p;
}

QhaPair apply_joint_mask(const QhaPair& p, const std::vector<double>& mask) {
  if (mask.size() != p.f.size()) throw ShapeError("apply_joint_mask: mask size differs from lattice");
  const WeylSystem sys(p.dim());
  GridFn fh = fourier(p.f);
  GridFn ah = fourier_weyl(sys, p.A);
  for (std::size_t i = 0; i < mask.size(); ++i) {
    fh[i] *= mask[i];
    ah[i] *= mask[i];
  }
  return QhaPair(inverse_fourier(fh), inverse_fourier_weyl(sys, ah));
}

std::vector<double> box_mask(int n, int halfwidth) {
  const PhaseGrid grid(n, 2);
  std::vector<double> mask(grid.size());
  for (std::size_t i = 0; i < mask.size(); ++i) {
    const auto idx = grid.unflatten(i);
    const int r = std::max(std::abs(grid.centered(idx[0])), std::abs(grid.centered(idx[1])));
    mask[i] = r <= halfwidth ? 1.0 : 0.0;
  }
  return mask;
}

QhaPair random_pair(int n, Rng& rng) {
  GridFn f = random_gridfn(PhaseGrid(n, 2), rng);
  TraceOp a = random_traceop(n, rng);
  return QhaPair(std::move(f), std::move(a));
}

QhaPair smooth_random_pair(int n, Rng& rng, int halfwidth) {
  return apply_joint_mask(random_pair(n, rng), box_mask(n, halfwidth));
}

namespace {
constexpr double kSlack = 1e-9;
}

InequalityReport check_young(const QhaPair& p, const QhaPair& q, double exponent) {
  InequalityReport rep("young");
  const QhaPair c = pair_convolve_paper(p, q);
  const double lhs = pair_norm(c, exponent);
  // Q supplies the weights g of both components, so its L¹ norm is the factor.
  const double rhs = pair_norm(q, 1.0) * pair_norm(p, exponent);
  const double ratio = rhs > 0 ? lhs / rhs : 0.0;
  rep.record(ratio, lhs > rhs * (1.0 + kSlack) + kSlack);
  rep.empirical_constant = ratio;
  return rep;
}

double interpolated_exponent(double p0, double p1, double theta) {
  const double inv = (1.0 - theta) / p0 + theta / p1;  // 1/inf == 0
  return inv == 0.0 ? kInf : 1.0 / inv;
}

InequalityReport check_interpolation(const QhaPair& p, double p0, double p1, double theta) {
  require_exponent(p0, "check_interpolation");
  require_exponent(p1, "check_interpolation");
  if (!(p0 < p1)) throw DomainError("check_interpolation: need p0 < p1");
  if (!(theta > 0.0 && theta < 1.0)) throw DomainError("check_interpolation: theta must lie in (0, 1)");
  InequalityReport rep("interpolation");
  const double pt = interpolated_exponent(p0, p1, theta);
  const double lhs = pair_norm(p, pt);
  const double rhs = std::pow(pair_norm(p, p0), 1.0 - theta) * std::pow(pair_norm(p, p1), theta);
  const double ratio = rhs > 0 ? lhs / rhs : 1.0;
  rep.record(ratio, ratio > 1.0 + kSlack);
  rep.empirical_constant = ratio;
  return rep;
}

double uncertainty_ratio(const GridFn& f, double p) {
  require_exponent(p, "uncertainty_ratio");
  const auto& grid = f.grid();
  const double base = lp_norm(f, p);
  if (base == 0.0) throw DomainError("check_uncertainty: zero input");
  const double scale = 1.0 / std::sqrt(static_cast<double>(grid.n()));
  auto weighted = [&](const GridFn& h) {
    GridFn out(grid);
    for (std::size_t i = 0; i < h.size(); ++i) {
      const auto idx = grid.unflatten(i);
      double r2 = 0.0;
      for (int c : idx) {
        const double x = grid.centered(c) * scale;
        r2 += x * x;
      }
      out[i] = std::sqrt(r2) * h[i];
    }
    return out;
  };
  return lp_norm(weighted(f), p) * lp_norm(weighted(fourier(f)), p) / (base * base);
}

InequalityReport check_uncertainty(const GridFn& f, double p) {
  InequalityReport rep("uncertainty");
  const double r = uncertainty_ratio(f, p);
  rep.record(r, !(r > 0.0));
  rep.empirical_constant = r;
  return rep;
}

InequalityReport check_holder(const QhaPair& p, const QhaPair& q, double exponent) {
  InequalityReport rep("holder");
  const double qe = conjugate_exponent(exponent);
  const double lhs = std::abs(duality_pairing(p, q));
  const double rhs = pair_norm(p, exponent) * pair_norm(q, qe);
  const double ratio = rhs > 0 ? lhs / rhs : 0.0;
  rep.record(ratio, lhs > rhs * (1.0 + kSlack) + kSlack);
  rep.empirical_constant = ratio;
  return rep;
}

InequalityReport check_hardy_littlewood(const QhaPair& p, double exponent, std::size_t trials, std::uint64_t seed) {
  if (!(exponent >= 1.0 && exponent <= 2.0)) throw DomainError("check_hardy_littlewood: need 1 <= p <= 2");
  InequalityReport rep("hardy_littlewood");
  const double qe = conjugate_exponent(exponent);
  const double norm = pair_norm(p, exponent);

  // Candidate 0 is the Hölder-equality witness; the rest are random.
  double sup = 0.0;
  {
    const QhaPair w(holder_witness(p.f, exponent), holder_witness(p.A, exponent));
    sup = std::abs(duality_pairing(p, w));
  }
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng = trial_rng(seed, "hardy_littlewood", t);
    QhaPair q = random_pair(p.dim(), rng);
    const double dn = dual_norm(q, qe);
    if (dn == 0.0) continue;
    q *= 1.0 / dn;
    sup = std::max(sup, std::abs(duality_pairing(p, q)));
  }
  rep.trials = trials + 1;
  const double ratio = norm > 0 ? sup / norm : 0.0;
  rep.max_ratio = rep.min_ratio = ratio;
  rep.empirical_constant = ratio;
  if (sup > norm + kSlack) rep.violations = 1;
  return rep;
}

}  // namespace qha
