#pragma once

#include <cstdint>
#include <functional>

#include "qha/inequality_report.hpp"
#include "qha/operator_space.hpp"
#include "qha/phase_space.hpp"

namespace qha {

/// A function on the N×N phase space paired with an N×N operator.
struct QhaPair {
  GridFn f;
  TraceOp A;

  QhaPair(GridFn f_, TraceOp a_);
  static QhaPair zero(int n);

  int dim() const { return A.dim(); }

  QhaPair& operator+=(const QhaPair& o);
  QhaPair& operator-=(const QhaPair& o);
  QhaPair& operator*=(Complex s);
  friend QhaPair operator+(QhaPair a, const QhaPair& b) { return a += b; }
  friend QhaPair operator-(QhaPair a, const QhaPair& b) { return a -= b; }
  friend QhaPair operator*(Complex s, QhaPair a) { return a *= s; }

  double max_abs_diff(const QhaPair& o) const;
};

void require_same_dims(const QhaPair& p, const QhaPair& q, const char* what);

/// ‖f‖_{L^p} + ‖A‖_{T^p}.
double pair_norm(const QhaPair& p, double exponent);

/// Convolution with the operator part written exactly as Σ_y g(y) W_y A W_y†;
/// the second operator B does not enter.
QhaPair pair_convolve_paper(const QhaPair& p, const QhaPair& q);

/// Symmetric (Werner) pair convolution:
///   f*g + (z ↦ tr(A W_z ΠBΠ W_z†)),  Σ_z f(z) W_z B W_z† + Σ_z g(z) W_z A W_z†
/// with Π the parity permutation e_k ↦ e_{-k}.
QhaPair pair_convolve_werner(const QhaPair& p, const QhaPair& q);

/// Σ_x f(x)g(x) + tr(AB), no conjugation.
Complex duality_pairing(const QhaPair& p, const QhaPair& q);
/// Σ_x f(x) conj(g(x)) + tr(A B†), the ℓ² pair inner product.
Complex pair_inner(const QhaPair& p, const QhaPair& q);

/// Exact dual of the sum norm: max(‖g‖_{L^q}, ‖B‖_{T^q}).
double dual_norm(const QhaPair& q, double exponent);

/// h with ‖h‖_{r'} = 1 (r' conjugate to r) and Σ h·g = ‖g‖_r; zero for g = 0.
GridFn holder_witness(const GridFn& g, double r);
/// A with ‖A‖_{T^{r'}} = 1 and tr(AB) = ‖B‖_{T^r}; zero for B = 0.
TraceOp holder_witness(const TraceOp& b, double r);

/// Pair with pair_norm(P, p) = 1 attaining ⟨P, Q⟩ = dual_norm(Q, q), 1/p + 1/q = 1.
QhaPair dual_norm_maximizer(const QhaPair& q, double q_exponent);

/// Shared transform-domain masking: multiplies fourier(f) and fourier_weyl(A)
/// by the same real mask on the N×N lattice, then inverts both.
QhaPair apply_joint_mask(const QhaPair& p, const std::vector<double>& mask);

/// Mask of the centered box max(|a|,|b|) <= halfwidth on the N×N lattice.
std::vector<double> box_mask(int n, int halfwidth);

QhaPair random_pair(int n, Rng& rng);
/// Random pair low-passed to the centered box of the given half-width.
QhaPair smooth_random_pair(int n, Rng& rng, int halfwidth);

/// ‖P*Q‖_p <= ‖Q‖₁ ‖P‖_p for the paper-form convolution. The ordering with
/// ‖P‖₁ ‖Q‖_p fails: for f = 0, B = 0, g ≡ 1 and A a rank-one projector the
/// left side is N^{1-1/p} times the right.
InequalityReport check_young(const QhaPair& p, const QhaPair& q, double exponent);

/// Log-convexity ‖P‖_{pθ} <= ‖P‖_{p0}^{1-θ} ‖P‖_{p1}^θ with 1/pθ = (1-θ)/p0 + θ/p1.
InequalityReport check_interpolation(const QhaPair& p, double p0, double p1, double theta);
double interpolated_exponent(double p0, double p1, double theta);

/// ‖x f‖_p ‖ξ f̂‖_p / ‖f‖_p² with centered coordinates scaled by 1/sqrt(N),
/// the scaling under which the unitary DFT kernel reads e^{-2πi x ξ}.
double uncertainty_ratio(const GridFn& f, double p);
InequalityReport check_uncertainty(const GridFn& f, double p);

/// Hölder bound |⟨P, Q⟩| <= pair_norm(P, p) pair_norm(Q, q).
InequalityReport check_holder(const QhaPair& p, const QhaPair& q, double exponent);

/// Supremum of |⟨P, Q⟩| over random Q with dual_norm(Q, q) = 1 plus the
/// Hölder-equality witness; a violation means the supremum exceeds pair_norm(P, p).
InequalityReport check_hardy_littlewood(const QhaPair& p, double exponent, std::size_t trials, std::uint64_t seed);

}  // namespace qha
