#pragma once

#include "qha/common.hpp"
#include "qha/phase_space.hpp"

namespace qha {

/// N×N complex matrix viewed as an element of the Schatten classes.
class TraceOp {
 public:
  explicit TraceOp(int dim) : m_(Matrix::Zero(dim, dim)) {}
  explicit TraceOp(Matrix m);

  int dim() const { return static_cast<int>(m_.rows()); }
  const Matrix& matrix() const { return m_; }
  Matrix& matrix() { return m_; }

  static TraceOp identity(int dim) { return TraceOp(Matrix::Identity(dim, dim)); }

  TraceOp& operator+=(const TraceOp& o);
  TraceOp& operator-=(const TraceOp& o);
  TraceOp& operator*=(Complex s) {
    m_ *= s;
    return *this;
  }
  friend TraceOp operator+(TraceOp a, const TraceOp& b) { return a += b; }
  friend TraceOp operator-(TraceOp a, const TraceOp& b) { return a -= b; }
  friend TraceOp operator*(Complex s, TraceOp a) { return a *= s; }

  double max_abs_diff(const TraceOp& o) const;

 private:
  Matrix m_;
};

/// Point (a, b) of the finite phase space Z_N × Z_N, stored reduced to [0, N).
struct FinitePhasePoint {
  int a = 0;
  int b = 0;
};

/// Finite Weyl-Heisenberg system on C^N.
///
/// X e_j = e_{j+1} (cyclic shift), Z e_j = ω^j e_j with ω = e^{2πi/N}, so
/// ZX = ω XZ. The Weyl operator is W(a,b) = e^{iπab/N} X^a Z^b with a, b
/// reduced to [0, N) before the phase is taken. This is the only place the
/// phase convention lives; every transform below goes through weyl_phase().
class WeylSystem {
 public:
  explicit WeylSystem(int dim);

  int dim() const { return n_; }
  Complex omega() const { return omega_; }
  const Matrix& shift() const { return x_; }
  const Matrix& clock() const { return z_; }

  FinitePhasePoint reduce(long long a, long long b) const;
  Complex weyl_phase(const FinitePhasePoint& z) const;
  PhaseGrid grid() const { return PhaseGrid(n_, 2); }

 private:
  int n_;
  Complex omega_;
  Matrix x_;
  Matrix z_;
};

TraceOp weyl(const WeylSystem& sys, FinitePhasePoint z);

std::vector<double> singular_values(const Matrix& m);
double schatten_norm(const TraceOp& a, double p);
double schatten_norm(const Matrix& a, double p);

/// Â(a,b) = tr(A W(a,b)), stored on the N×N grid at index (a, b).
GridFn fourier_weyl(const WeylSystem& sys, const TraceOp& a);

/// A = (1/N) Σ_z F(z) W(z)†, the unique operator with fourier_weyl(A) = F.
TraceOp inverse_fourier_weyl(const WeylSystem& sys, const GridFn& f);

/// W(z) A W(z)†.
TraceOp conjugate_shift(const WeylSystem& sys, const TraceOp& a, FinitePhasePoint z);

TraceOp random_traceop(int dim, Rng& rng);

/// Principal square root of a positive semidefinite Hermitian matrix.
Matrix psd_sqrt(const Matrix& m);
/// Modulus (B†B)^{1/2}.
Matrix operator_modulus(const Matrix& b);

}  // namespace qha
