#pragma once

#include <string>
#include <vector>

#include "qha/inequality_report.hpp"
#include "qha/common.hpp"

namespace qha {

/// Finite group given by its full multiplication table. Elements are the
/// indices 0..order-1; the axioms are verified on construction.
class FiniteGroup {
 public:
  FiniteGroup(std::string tag, std::vector<std::vector<int>> table, std::vector<int> generators,
              std::vector<std::string> labels = {});

  const std::string& tag() const { return tag_; }
  int order() const { return static_cast<int>(table_.size()); }
  int identity() const { return identity_; }
  int mul(int g, int h) const { return table_[g][h]; }
  int inv(int g) const { return inverse_[g]; }
  const std::vector<int>& generators() const { return generators_; }
  const std::string& label(int g) const { return labels_[g]; }

  std::vector<std::vector<int>> conjugacy_classes() const;
  bool is_subgroup(const std::vector<int>& elements) const;

  static FiniteGroup cyclic(int n);
  static FiniteGroup dihedral(int n);  // order 2n, elements r^k s^e at index k + n·e
  static FiniteGroup symmetric3();
  static FiniteGroup heisenberg(int p);  // (x, y, z) at index x p² + y p + z

 private:
  std::string tag_;
  std::vector<std::vector<int>> table_;
  std::vector<int> inverse_;
  int identity_ = -1;
  std::vector<int> generators_;
  std::vector<std::string> labels_;
};

/// Unitary representation: one d×d matrix per group element.
struct Irrep {
  int dim = 0;
  std::vector<Matrix> mats;
  std::string name;
};

/// Homomorphism and unitarity residuals of a representation.
double homomorphism_defect(const FiniteGroup& g, const Irrep& rep);
double unitarity_defect(const Irrep& rep);

class IrrepTable {
 public:
  IrrepTable(FiniteGroup group, std::vector<Irrep> irreps);

  const FiniteGroup& group() const { return group_; }
  const std::vector<Irrep>& irreps() const { return irreps_; }
  /// Plancherel weight d_π/|G|.
  double weight(std::size_t i) const { return static_cast<double>(irreps_[i].dim) / group_.order(); }
  /// Σ d_π², an exact integer.
  long long dimension_sum() const;
  bool complete() const { return dimension_sum() == group_.order(); }
  /// Largest deviation from Schur orthogonality of matrix coefficients.
  double orthogonality_defect() const;

  static IrrepTable cyclic(int n);
  static IrrepTable dihedral(int n);
  static IrrepTable symmetric3();
  static IrrepTable heisenberg(int p);
  /// Catalog lookup: s3, dN, zN, heisP (e.g. d4, z8, heis3).
  static IrrepTable by_name(const std::string& name);

 private:
  FiniteGroup group_;
  std::vector<Irrep> irreps_;
};

/// (f(g), A(g)) with A(g) a d×d matrix.
struct GroupQhaPair {
  std::vector<Complex> f;
  std::vector<Matrix> A;
  GroupQhaPair(std::vector<Complex> f_, std::vector<Matrix> a_);
  static GroupQhaPair random(int order, int op_dim, Rng& rng);
};

struct PlancherelBlock {
  Matrix f_hat;  // Σ_g f(g) π(g)
  Matrix a_hat;  // Σ_g A(g) ⊗ π(g)
};

/// F(f)(π) = Σ_g f(g) π(g); the operator part is transformed entrywise.
/// With (f*g)(x) = Σ_y f(y) g(y⁻¹x) this gives F(f*g)(π) = F(f)(π) F(g)(π).
std::vector<PlancherelBlock> plancherel_transform(const IrrepTable& t, const GroupQhaPair& p);
std::vector<Matrix> group_fourier(const IrrepTable& t, const std::vector<Complex>& f);
/// f(g) = Σ_π (d_π/|G|) tr(F(f)(π) π(g⁻¹)).
std::vector<Complex> group_fourier_inverse(const IrrepTable& t, const std::vector<Matrix>& blocks);

std::vector<Complex> group_convolve(const FiniteGroup& g, const std::vector<Complex>& f, const std::vector<Complex>& h);

/// Both sides of ‖(f,A)‖² = Σ_π (d_π/|G|) ‖F(f,A)(π)‖²_HS; a violation is a
/// relative mismatch above 1e-10.
InequalityReport check_plancherel(const IrrepTable& t, const GroupQhaPair& p);

/// Representation induced from a one-dimensional character σ of the subgroup
/// H (σ[i] is the value on subgroup[i]): π(g)_{ji} = σ(t_j⁻¹ g t_i) on left
/// coset representatives t_i, zero when t_j⁻¹ g t_i ∉ H.
Irrep induce(const FiniteGroup& g, const std::vector<int>& subgroup, const std::vector<Complex>& sigma);

/// χ(g) = (1/|H|) Σ_{x ∈ G, x⁻¹gx ∈ H} σ(x⁻¹gx).
Complex frobenius_character(const FiniteGroup& g, const std::vector<int>& subgroup, const std::vector<Complex>& sigma,
                            int element);

/// ‖Xf‖_p ‖F_G f‖_p / ‖f‖_p² with (Xf)(g) = Σ_{s ∈ gens} (f(gs) - f(g)) and
/// ‖F_G f‖_p = (Σ_π (d_π/|G|) ‖F(f)(π)‖_{S_p}^p)^{1/p}. Inputs in the kernel
/// of X (constants) are excluded: the report then carries zero trials.
InequalityReport check_group_uncertainty(const IrrepTable& t, const std::vector<Complex>& f, double p);

}  // namespace qha
