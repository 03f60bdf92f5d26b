#include "qha/besov_tl.hpp"

#include <algorithm>
#include <cmath>

namespace qha {

namespace {

double raised_cosine_step(double t) {
  const double u = std::clamp(t + 0.5, 0.0, 1.0);
  const double s = std::sin(0.5 * kPi * u);
  return s * s;
}

}  // namespace

DyadicPartition::DyadicPartition(int n, Kind kind) : n_(n), kind_(kind) {
  if (n < 2) throw DomainError("DyadicPartition: need N >= 2");
  const int top = static_cast<int>(std::floor(std::log2(n / 2.0) + 1e-12));
  const PhaseGrid grid(n, 2);
  masks_.assign(top + 1, std::vector<double>(grid.size(), 0.0));
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto idx = grid.unflatten(i);
    const double k1 = grid.centered(idx[0]), k2 = grid.centered(idx[1]);
    const double r = std::sqrt(k1 * k1 + k2 * k2);
    if (kind == Kind::Indicator) {
      int band = 0;
      if (r >= 1.0) band = std::min(top, 1 + static_cast<int>(std::floor(std::log2(r) + 1e-12)));
      masks_[band][i] = 1.0;
    } else {
      // Cumulative steps C_j(r) centered at log2 r = j - 1; φ_j = C_j - C_{j+1}.
      std::vector<double> cum(top + 2, 0.0);
      cum[0] = 1.0;
      for (int j = 1; j <= top; ++j) cum[j] = r > 0 ? raised_cosine_step(std::log2(r) - (j - 1)) : 0.0;
      for (int j = 0; j <= top; ++j) masks_[j][i] = cum[j] - cum[j + 1];
    }
  }
}

const std::vector<double>& DyadicPartition::mask(int j) const {
  if (j < 0 || j > top_band()) throw DomainError("DyadicPartition: band index out of range");
  return masks_[j];
}

double DyadicPartition::partition_defect() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < masks_[0].size(); ++i) {
    double s = 0.0;
    for (const auto& m : masks_) s += m[i];
    worst = std::max(worst, std::abs(s - 1.0));
  }
  return worst;
}

BesovParams::BesovParams(double s_, double p_, double q_) : s(s_), p(p_), q(q_) {
  require_exponent(p, "BesovParams");
  require_exponent(q, "BesovParams");
}

QhaPair lp_project(const DyadicPartition& d, const QhaPair& p, int band) {
  if (p.dim() != d.n()) throw ShapeError("lp_project: pair dimension differs from partition");
  return apply_joint_mask(p, d.mask(band));
}

std::vector<QhaPair> lp_decompose(const DyadicPartition& d, const QhaPair& p) {
  std::vector<QhaPair> out;
  for (int j = 0; j <= d.top_band(); ++j) out.push_back(lp_project(d, p, j));
  return out;
}

QhaPair square_function(const DyadicPartition& d, const QhaPair& p) {
  const auto bands = lp_decompose(d, p);
  GridFn sf(p.f.grid());
  Matrix gram = Matrix::Zero(p.dim(), p.dim());
  for (const auto& b : bands) {
    for (std::size_t i = 0; i < sf.size(); ++i) sf[i] += std::norm(b.f[i]);
    gram += b.A.matrix().adjoint() * b.A.matrix();
  }
  for (auto& v : sf.values()) v = std::sqrt(v.real());
  return QhaPair(std::move(sf), TraceOp(psd_sqrt(gram)));
}

namespace {

double weight(int j, double s) { return std::pow(2.0, j * s); }

}  // namespace

BandDecomposition::BandDecomposition(const DyadicPartition& d, const QhaPair& p) : dim_(p.dim()) {
  for (const auto& band : lp_decompose(d, p)) {
    std::vector<double> fa(band.f.size());
    for (std::size_t i = 0; i < fa.size(); ++i) fa[i] = std::abs(band.f[i]);
    fabs_.push_back(std::move(fa));
    const Matrix& m = band.A.matrix();
    Eigen::SelfAdjointEigenSolver<Matrix> es(m.adjoint() * m);
    std::vector<double> sv(static_cast<std::size_t>(dim_));
    for (int i = 0; i < dim_; ++i) sv[i] = std::sqrt(std::max(es.eigenvalues()[i], 0.0));
    sing_.push_back(std::move(sv));
    basis_.push_back(es.eigenvectors());
  }
}

double besov_norm(const BandDecomposition& b, const BesovParams& prm) {
  std::vector<double> fn, op;
  for (std::size_t j = 0; j < b.band_count(); ++j) {
    fn.push_back(weight(static_cast<int>(j), prm.s) * lp_sum(b.fabs(j), prm.p));
    op.push_back(weight(static_cast<int>(j), prm.s) * lp_sum(b.singular(j), prm.p));
  }
  return lp_sum(fn, prm.q) + lp_sum(op, prm.q);
}

double besov_norm(const DyadicPartition& d, const QhaPair& p, const BesovParams& prm) {
  return besov_norm(BandDecomposition(d, p), prm);
}

double besov_norm_joint(const DyadicPartition& d, const QhaPair& p, const BesovParams& prm) {
  const auto bands = lp_decompose(d, p);
  std::vector<double> terms;
  for (std::size_t j = 0; j < bands.size(); ++j)
    terms.push_back(weight(static_cast<int>(j), prm.s) * pair_norm(bands[j], prm.p));
  return lp_sum(terms, prm.q);
}

namespace {

// Hermitian PSD power via eigendecomposition.
Matrix psd_power(const Matrix& m, double e) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.adjoint()));
  Eigen::VectorXd ev = es.eigenvalues();
  for (Eigen::Index i = 0; i < ev.size(); ++i) ev[i] = ev[i] > 0 ? std::pow(ev[i], e) : 0.0;
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

double tl_norm(const BandDecomposition& b, const BesovParams& prm) {
  if (prm.p == kInf) throw DomainError("tl_norm: p must be finite");
  if (prm.q == kInf) throw DomainError("tl_norm: q must be finite (no operator supremum over bands)");
  std::vector<double> acc(b.fabs(0).size(), 0.0);
  Matrix opacc = Matrix::Zero(b.dim(), b.dim());
  Eigen::VectorXd ev(b.dim());
  for (std::size_t j = 0; j < b.band_count(); ++j) {
    const double w = std::pow(weight(static_cast<int>(j), prm.s), prm.q);
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += w * std::pow(b.fabs(j)[i], prm.q);
    // |Δ_j A|^q = V diag(σ^q) V†
    for (int i = 0; i < b.dim(); ++i) ev[i] = std::pow(b.singular(j)[i], prm.q);
    opacc += w * b.basis(j) * ev.asDiagonal() * b.basis(j).adjoint();
  }
  for (auto& v : acc) v = std::pow(v, 1.0 / prm.q);
  return lp_sum(acc, prm.p) + schatten_norm(psd_power(opacc, 1.0 / prm.q), prm.p);
}

double tl_norm(const DyadicPartition& d, const QhaPair& p, const BesovParams& prm) {
  return tl_norm(BandDecomposition(d, p), prm);
}

InequalityReport check_lp_equivalence(const DyadicPartition& d, const QhaPair& p, double exponent) {
  InequalityReport rep("lp_equivalence");
  const double sn = pair_norm(square_function(d, p), exponent);
  const double pn = pair_norm(p, exponent);
  if (sn == 0.0 && pn == 0.0) return rep;
  const double ratio = pn / sn;
  const bool exact = exponent == 2.0 && d.kind() == DyadicPartition::Kind::Indicator;
  rep.record(ratio, !std::isfinite(ratio) || ratio <= 0.0 || (exact && std::abs(ratio - 1.0) > 1e-9));
  rep.empirical_constant = ratio;
  return rep;
}

namespace {

double embedding_constant(std::size_t bands, double s1, double s2) {
  double c = 0.0;
  for (std::size_t j = 0; j < bands; ++j) c += std::pow(2.0, -static_cast<double>(j) * (s1 - s2));
  return c;
}

}  // namespace

double embedding_constant(const DyadicPartition& d, double s1, double s2) {
  return embedding_constant(d.band_count(), s1, s2);
}

InequalityReport check_embedding(const DyadicPartition& d, const QhaPair& p, const BesovParams& from,
                                 const BesovParams& to) {
  return check_embedding(BandDecomposition(d, p), from, to);
}

InequalityReport check_embedding(const BandDecomposition& bands, const BesovParams& from, const BesovParams& to) {
  if (!(from.s > to.s)) throw DomainError("check_embedding: need s1 > s2");
  if (!(from.p <= to.p)) throw DomainError("check_embedding: need p1 <= p2");
  InequalityReport rep("embedding");
  const double c = embedding_constant(bands.band_count(), from.s, to.s);
  rep.empirical_constant = 0.0;
  const double b1 = besov_norm(bands, from);
  if (b1 == 0.0) return rep;  // zero pair excluded
  const double rb = besov_norm(bands, to) / b1;
  rep.record(rb, rb > c * (1.0 + 1e-9));
  rep.empirical_constant = rb / c;
  if (to.p < kInf && from.p < kInf && from.q < kInf && to.q < kInf) {
    const double rt = tl_norm(bands, to) / tl_norm(bands, from);
    rep.record(rt, rt > c * (1.0 + 1e-9));
    rep.empirical_constant = std::max(rep.empirical_constant, rt / c);
  }
  return rep;
}

InequalityReport check_besov_interpolation(const DyadicPartition& d, const QhaPair& p, double s0, double s1,
                                           double theta, double exponent, double q) {
  return check_besov_interpolation(BandDecomposition(d, p), s0, s1, theta, exponent, q);
}

InequalityReport check_besov_interpolation(const BandDecomposition& bands, double s0, double s1, double theta,
                                           double exponent, double q) {
  if (s0 == s1) throw DomainError("check_besov_interpolation: need s0 != s1");
  if (!(theta > 0.0 && theta < 1.0)) throw DomainError("check_besov_interpolation: theta must lie in (0, 1)");
  InequalityReport rep("besov_interpolation");
  const double st = (1.0 - theta) * s0 + theta * s1;
  const double lhs = besov_norm(bands, {st, exponent, q});
  const double rhs = std::pow(besov_norm(bands, {s0, exponent, q}), 1.0 - theta) *
                     std::pow(besov_norm(bands, {s1, exponent, q}), theta);
  if (rhs == 0.0) return rep;
  const double ratio = lhs / rhs;
  rep.record(ratio, q == kInf && ratio > 1.0 + 1e-9);
  rep.empirical_constant = ratio;
  return rep;
}

InequalityReport check_schatten_embedding(const QhaPair& p, double exponent) {
  if (!(exponent >= 1.0 && exponent <= 2.0)) throw DomainError("check_schatten_embedding: need 1 <= p <= 2");
  InequalityReport rep("schatten_embedding");
  const double lhs = schatten_norm(p.A, exponent);
  const double rhs = pair_norm(p, exponent);
  const double ratio = rhs > 0 ? lhs / rhs : 0.0;
  rep.record(ratio, lhs > rhs * (1.0 + 1e-12));
  rep.empirical_constant = ratio;
  return rep;
}

}  // namespace qha
