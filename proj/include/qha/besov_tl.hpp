#pragma once

#include <vector>

#include "qha/qha_pairs.hpp"

namespace qha {

/// Dyadic partition of the N×N frequency lattice into J+1 bands,
/// J = floor(log2(N/2)). Band 0 is the zero frequency, band j >= 1 the annulus
/// 2^{j-1} <= |k| < 2^j in centered Euclidean radius, and band J also absorbs
/// everything beyond. The same masks act on fourier(f) and fourier_weyl(A).
class DyadicPartition {
 public:
  enum class Kind { Indicator, Smooth };

  explicit DyadicPartition(int n, Kind kind = Kind::Indicator);

  int n() const { return n_; }
  int top_band() const { return static_cast<int>(masks_.size()) - 1; }
  std::size_t band_count() const { return masks_.size(); }
  Kind kind() const { return kind_; }
  const std::vector<double>& mask(int j) const;
  /// max_k |Σ_j φ_j(k) - 1|
  double partition_defect() const;

 private:
  int n_;
  Kind kind_;
  std::vector<std::vector<double>> masks_;
};

struct BesovParams {
  double s = 0.0;
  double p = 2.0;
  double q = 2.0;
  BesovParams(double s_, double p_, double q_);
};

QhaPair lp_project(const DyadicPartition& d, const QhaPair& p, int band);
std::vector<QhaPair> lp_decompose(const DyadicPartition& d, const QhaPair& p);

/// ((Σ_j |Δ_j f|²)^{1/2} pointwise, (Σ_j (Δ_j A)†(Δ_j A))^{1/2}).
QhaPair square_function(const DyadicPartition& d, const QhaPair& p);

/// Band pieces of one pair, with the per-band data every Besov and TL norm
/// reads: |Δ_j f| pointwise and the eigen-decomposition of (Δ_j A)†(Δ_j A).
class BandDecomposition {
 public:
  BandDecomposition(const DyadicPartition& d, const QhaPair& p);

  std::size_t band_count() const { return fabs_.size(); }
  int dim() const { return dim_; }
  const std::vector<double>& fabs(std::size_t j) const { return fabs_[j]; }
  /// Singular values of Δ_j A.
  const std::vector<double>& singular(std::size_t j) const { return sing_[j]; }
  /// Eigenvectors of (Δ_j A)†(Δ_j A), columns matching singular(j).
  const Matrix& basis(std::size_t j) const { return basis_[j]; }

 private:
  int dim_;
  std::vector<std::vector<double>> fabs_;
  std::vector<std::vector<double>> sing_;
  std::vector<Matrix> basis_;
};

/// Each component aggregated in its own norm:
///   (Σ_j (2^{js}‖Δ_j f‖_{L^p})^q)^{1/q} + (Σ_j (2^{js}‖Δ_j A‖_{T^p})^q)^{1/q}.
double besov_norm(const DyadicPartition& d, const QhaPair& p, const BesovParams& params);
double besov_norm(const BandDecomposition& b, const BesovParams& params);
/// (Σ_j (2^{js} pair_norm(Δ_j P, p))^q)^{1/q}, the pair norm taken inside the sum.
double besov_norm_joint(const DyadicPartition& d, const QhaPair& p, const BesovParams& params);

/// ‖(Σ_j 2^{jsq}|Δ_j f|^q)^{1/q}‖_{L^p} + ‖(Σ_j 2^{jsq}|Δ_j A|^q)^{1/q}‖_{T^p}
/// with |B| = (B†B)^{1/2}. Requires finite p and q.
double tl_norm(const DyadicPartition& d, const QhaPair& p, const BesovParams& params);
double tl_norm(const BandDecomposition& b, const BesovParams& params);

/// Ratio ‖P‖_p / ‖S(P)‖_p; for p = 2 with indicator masks a violation is any
/// deviation from 1 beyond 1e-9, otherwise only non-finite or zero ratios.
InequalityReport check_lp_equivalence(const DyadicPartition& d, const QhaPair& p, double exponent);

/// Σ_{j=0}^{J} 2^{-j(s1-s2)}.
double embedding_constant(const DyadicPartition& d, double s1, double s2);

/// Ratios besov(s2,p2,q2)/besov(s1,p1,q1) and the same for TL (when p2, q1, q2
/// are finite) against embedding_constant. The zero pair is excluded.
InequalityReport check_embedding(const DyadicPartition& d, const QhaPair& p, const BesovParams& from,
                                 const BesovParams& to);
InequalityReport check_embedding(const BandDecomposition& b, const BesovParams& from, const BesovParams& to);

/// besov(sθ) / (besov(s0)^{1-θ} besov(s1)^θ); asserted <= 1 only for q = ∞.
InequalityReport check_besov_interpolation(const DyadicPartition& d, const QhaPair& p, double s0, double s1,
                                           double theta, double exponent, double q);
InequalityReport check_besov_interpolation(const BandDecomposition& b, double s0, double s1, double theta,
                                           double exponent, double q);

/// schatten_norm(A, p) <= pair_norm(P, p) for 1 <= p <= 2.
InequalityReport check_schatten_embedding(const QhaPair& p, double exponent);

}  // namespace qha
