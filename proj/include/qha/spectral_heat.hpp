#pragma once

#include <functional>
#include <vector>

#include "qha/qha_pairs.hpp"

namespace qha {

/// Quantum Laplacian 𝓛(f, A) = (Δ_G f, HA + AH) on pairs over the N×N torus.
///
/// Δ_G is the positive semidefinite 5-point cyclic graph Laplacian and H the
/// N×N cyclic lattice Laplacian 2 - X - X†. The heat semigroup is e^{-t𝓛}:
/// 𝓛 ⪰ 0 and the generator is -𝓛, so evolution decays.
///
/// Both parts are diagonalized in closed form by plane waves, which play the
/// role of the eigen cache; the object is immutable after construction.
class QuantumLaplacian {
 public:
  explicit QuantumLaplacian(int n);

  int n() const { return n_; }
  /// Eigenvalue of Δ_G on the plane wave with frequency index (k1, k2).
  double grid_eigenvalue(int k1, int k2) const;
  /// μ_k = 2 - 2cos(2πk/N), eigenvalues of H.
  const std::vector<double>& operator_spectrum() const { return mu_; }
  /// Unitary whose column k is the plane wave e^{2πijk/N}/sqrt(N).
  const Matrix& operator_eigenvectors() const { return v_; }
  const Matrix& generator() const { return h_; }

 private:
  int n_;
  std::vector<double> mu_;
  Matrix v_;
  Matrix h_;
};

struct SpectralElement {
  double eigenvalue;
  QhaPair basis;
};

struct HeatState {
  QhaPair pair;
  double time;
  HeatState(QhaPair p, double t);
};

QhaPair laplacian_apply(const QuantumLaplacian& L, const QhaPair& p);

/// Complete orthonormal eigenbasis of the pair space (2N² elements): plane
/// waves on the function side, E_kl = v_k v_l† on the operator side.
std::vector<SpectralElement> spectral_decompose(const QuantumLaplacian& L);

/// Spectral calculus: m(𝓛) P.
QhaPair apply_spectral_multiplier(const QuantumLaplacian& L, const QhaPair& p, const std::function<double(double)>& m);

QhaPair heat_evolve(const QuantumLaplacian& L, const QhaPair& p, double t);
HeatState heat_evolve(const QuantumLaplacian& L, const HeatState& s, double dt);

/// ‖(K_{t+dt} - K_{t-dt})/(2dt) + 𝓛K_t‖ measured in pair_norm(·, 2).
double heat_residual(const QuantumLaplacian& L, const QhaPair& p, double t, double dt);

/// pair_norm of (I + 𝓛)^{1/2} P.
double sobolev_norm(const QuantumLaplacian& L, const QhaPair& p, double exponent);

/// p* = np/(n - p) with n = 2.
double sobolev_conjugate(double p);

/// ‖P‖_{p*} / ‖𝓛^{1/2} P‖_p for one input with mean-zero function part.
double sobolev_ratio(const QuantumLaplacian& L, const QhaPair& p, double exponent);
InequalityReport check_sobolev(const QuantumLaplacian& L, const QhaPair& p, double exponent);
/// Family version: a violation is a ratio above 10× the family median.
InequalityReport check_sobolev(const QuantumLaplacian& L, const std::vector<QhaPair>& family, double exponent);

/// Projects out 𝓛's kernel (constant f, the all-ones direction of A).
QhaPair remove_kernel(const QuantumLaplacian& L, const QhaPair& p);

}  // namespace qha
