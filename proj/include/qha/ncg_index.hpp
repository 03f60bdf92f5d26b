#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qha/inequality_report.hpp"
#include "qha/operator_space.hpp"

namespace qha {

/// Finite-dimensional (possibly twisted) spectral triple.
struct SpectralTriple {
  std::vector<Matrix> generators;
  Matrix dirac;
  std::optional<Matrix> grading;
  /// σ(a) = twist · a · twist⁻¹ when present.
  std::optional<Matrix> twist;

  SpectralTriple(std::vector<Matrix> gens, Matrix d, std::optional<Matrix> gamma = std::nullopt,
                 std::optional<Matrix> twist_ = std::nullopt);

  int dim() const { return static_cast<int>(dirac.rows()); }
  Matrix sigma(const Matrix& a) const;

  /// Random even triple: γ = diag(+1 × plus, -1 × minus) rotated by a random
  /// unitary, D odd with respect to γ, plus a few random generators.
  static SpectralTriple random_graded(int plus, int minus, Rng& rng, int generators = 2);
};

double operator_norm(const Matrix& m);

struct TripleReport {
  std::vector<double> commutator;        // ‖[D, a]‖
  std::vector<double> twisted_literal;   // ‖[D, a] - Dσ(a)‖
  std::vector<double> twisted_standard;  // ‖Da - σ(a)D‖
};

TripleReport check_triple(const SpectralTriple& t);

/// dim ker D₊ - dim ker D₊†, ranks taken at tolerance rel_tol·‖D‖.
int fredholm_index(const SpectralTriple& t, double rel_tol = 1e-9);

/// Tr(γ e^{-tD²}).
double mckean_singer(const SpectralTriple& t, double time);

/// tr(P[D,P]P) for a projection P; reported next to the index, never equated.
Complex index_pairing(const SpectralTriple& t, const Matrix& projection);

/// #positive - #negative eigenvalues, zero eigenvalues (|λ| <= tol) ignored.
int signature(const Matrix& hermitian, double tol = 1e-12);

struct SpectralFlowOptions {
  int initial_steps = 64;
  int max_refinements = 40;
  /// An eigenvalue with |λ| <= zero_tol·max(1, ‖D_t‖) makes a sample ambiguous.
  double zero_tol = 1e-10;
};

/// Net number of eigenvalues crossing zero upwards along t ∈ [0, 1].
int spectral_flow(const std::function<Matrix(double)>& path, const SpectralFlowOptions& opts = {});
/// Piecewise-linear path through the given samples, spaced evenly on [0, 1].
int spectral_flow(const std::vector<Matrix>& samples, const SpectralFlowOptions& opts = {});

/// Faithful state φ(x) = tr(ρx) with ρ ≻ 0, tr ρ = 1.
class ModularData {
 public:
  explicit ModularData(Matrix rho);
  const Matrix& rho() const { return rho_; }
  int dim() const { return static_cast<int>(rho_.rows()); }
  Complex state(const Matrix& x) const { return (rho_ * x).trace(); }
  /// ρ^{z} for complex z, through the eigendecomposition.
  Matrix power(Complex z) const;

  static ModularData random(int dim, Rng& rng);
  static ModularData tracial(int dim);

 private:
  Matrix rho_;
  Matrix vecs_;
  Eigen::VectorXd vals_;
};

/// σ_t(A) = ρ^{it} A ρ^{-it}; complex t gives the analytic continuation
/// (σ_{i}(A) = ρ⁻¹ A ρ).
Matrix modular_flow(const ModularData& m, const Matrix& a, Complex t);

/// ‖fourier_weyl(σ_t(A)) - e^{-2πit} fourier_weyl(A)‖₂. Measurement only:
/// `violations` stays zero and the discrepancy lands in empirical_constant.
InequalityReport check_tomita_intertwining(const ModularData& m, const WeylSystem& sys, const Matrix& a, double t);

/// Rational noncommutative torus: θ = p/q, U1 = diag(e^{2πiθj}), U2 the cyclic
/// shift on C^q, so U1 U2 = e^{2πiθ} U2 U1.
struct NcTorus {
  int p;
  int q;
  double theta;
  Matrix U1;
  Matrix U2;
  NcTorus(int p_, int q_);
};

/// H(k) = U1 e^{ik1} + U2 e^{ik2} + h.c.
Matrix harper_hamiltonian(const NcTorus& torus, double k1, double k2);

/// Same spectrum in the gauge periodic on the magnetic Brillouin zone
/// [0, 2π) × [0, 2π/q): only the wrap-around hop carries the phase e^{iqk2}.
/// harper_hamiltonian(k) = D harper_bloch_hamiltonian(k) D† with D = diag(e^{ik2 j}),
/// so the full 2π-periodic family covers this zone q times.
Matrix harper_bloch_hamiltonian(const NcTorus& torus, double k1, double k2);

struct ChernResult {
  int chern = 0;
  double raw = 0.0;      // unrounded plaquette sum / 2π
  double min_gap = 0.0;  // smallest separation between selected and other bands
};

/// Chern number of the Fermi projection onto `bands` (indices into ascending
/// eigenvalues) by the lattice field-strength method on a mesh×mesh grid of
/// the magnetic Brillouin zone. Throws DiagnosticError when the selection is gapless
/// or the result is farther than 1e-6 from an integer.
ChernResult harper_chern(const NcTorus& torus, const std::vector<int>& bands, int mesh = 24);

/// Chern number of each single band, in ascending energy order.
std::vector<int> harper_band_cherns(const NcTorus& torus, int mesh = 24);

/// Diophantine check r ≡ p·t_r (mod q) for every gap r, t_r the cumulative
/// Chern number of the bands below gap r.
bool tknn_consistent(const NcTorus& torus, const std::vector<int>& band_cherns);

/// σ_H rendered as "<C> e^2/h"; the unit stays symbolic.
std::string hall_conductance(int chern);

}  // namespace qha
