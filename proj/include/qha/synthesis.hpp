#pragma once

#include <optional>
#include <vector>

#include "qha/qha_pairs.hpp"

namespace qha {

/// Subset of the N×N frequency lattice (shared by fourier(f) and fourier_weyl(A)).
class FourierSupport {
 public:
  explicit FourierSupport(int n, bool full = false);
  FourierSupport(int n, std::vector<char> bits);

  int n() const { return n_; }
  std::size_t size() const { return bits_.size(); }
  bool contains(std::size_t i) const { return bits_[i] != 0; }
  void set(std::size_t i, bool v = true) { bits_[i] = v ? 1 : 0; }
  std::size_t count() const;
  const std::vector<char>& bits() const { return bits_; }
  FourierSupport complement() const;
  std::vector<double> mask() const;

  /// Centered box max(|k1|, |k2|) <= halfwidth.
  static FourierSupport box(int n, int halfwidth);
  static FourierSupport random(int n, double density, Rng& rng);

  bool operator==(const FourierSupport&) const = default;

 private:
  int n_;
  std::vector<char> bits_;
};

/// I(Z): pairs whose joint transform vanishes on Z.
struct IdealSpec {
  FourierSupport zero_set;
};

/// Keeps the transform coefficients inside S, zeroes the rest.
QhaPair band_project(const QhaPair& p, const FourierSupport& s);

/// Joint transform with both parts on the unitary scale: fourier(f) and
/// fourier_weyl(A)/sqrt(N).
struct JointTransform {
  GridFn f_hat;
  GridFn a_hat;
};
JointTransform joint_transform(const QhaPair& p);
QhaPair from_joint_transform(const JointTransform& t);

struct WienerApproximation {
  QhaPair approximant;
  double error;  // pair_norm(P - approximant, 2)
};

/// Truncation of both transforms to the centered box of half-width `degree`.
WienerApproximation wiener_approximate(const QhaPair& p, int degree);

/// Lattice points where both |f̂| and |Â|/sqrt(N) are below tol·reference;
/// the reference defaults to the largest coefficient of either transform.
FourierSupport zero_set(const QhaPair& p, double tol, std::optional<double> reference = std::nullopt);

/// Per trial: a random member of I(Z) is resynthesized from characters and
/// Weyl operators off Z (error <= 1e-9), and its convolution with a random
/// pair is checked to stay in I(Z).
InequalityReport check_synthesis(const IdealSpec& ideal, std::size_t trials, std::uint64_t seed);

/// Member of the ε-perturbed ideal: coefficients off Z have modulus in
/// [1/2, 1]; coefficients on Z leak with modulus at most ε.
QhaPair perturbed_member(const IdealSpec& ideal, double eps, Rng& rng);

/// Drift of convolution closure on Z: max_{z∈Z} |T(P*Q)(z)| / ‖g‖₁, bounded by
/// the leak level max_{z∈Z} |T(P)(z)| (ε for perturbed_member).
double closure_drift(const IdealSpec& ideal, const QhaPair& member, const QhaPair& q);

/// Stability under ε-leakage: violations when the zero set at tolerance 2ε
/// differs from Z or the drift exceeds ε (observed constant C = drift/ε).
InequalityReport check_ideal_stability(const IdealSpec& ideal, double eps, std::size_t trials, std::uint64_t seed);

}  // namespace qha
