#include "qha/operator_space.hpp"

#include <algorithm>
#include <cmath>

namespace qha {

TraceOp::TraceOp(Matrix m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols()) throw ShapeError("TraceOp: matrix must be square");
  if (!m_.allFinite()) throw DomainError("TraceOp: non-finite entry");
}

TraceOp& TraceOp::operator+=(const TraceOp& o) {
  if (o.dim() != dim()) throw ShapeError("TraceOp::operator+=: dimension mismatch");
  m_ += o.m_;
  return *this;
}

TraceOp& TraceOp::operator-=(const TraceOp& o) {
  if (o.dim() != dim()) throw ShapeError("TraceOp::operator-=: dimension mismatch");
  m_ -= o.m_;
  return *this;
}

double TraceOp::max_abs_diff(const TraceOp& o) const {
  if (o.dim() != dim()) throw ShapeError("TraceOp::max_abs_diff: dimension mismatch");
  return (m_ - o.m_).cwiseAbs().maxCoeff();
}

WeylSystem::WeylSystem(int dim) : n_(dim), x_(Matrix::Zero(dim, dim)), z_(Matrix::Zero(dim, dim)) {
  if (dim < 1) throw DomainError("WeylSystem: dimension must be positive");
  omega_ = std::polar(1.0, 2.0 * kPi / dim);
  for (int j = 0; j < dim; ++j) {
    x_((j + 1) % dim, j) = 1.0;
    z_(j, j) = std::polar(1.0, 2.0 * kPi * j / dim);
  }
}

FinitePhasePoint WeylSystem::reduce(long long a, long long b) const {
  auto r = [n = static_cast<long long>(n_)](long long v) { return static_cast<int>(((v % n) + n) % n); };
  return {r(a), r(b)};
}

Complex WeylSystem::weyl_phase(const FinitePhasePoint& z) const {
  return std::polar(1.0, kPi * static_cast<double>(z.a) * z.b / n_);
}

TraceOp weyl(const WeylSystem& sys, FinitePhasePoint z) {
  z = sys.reduce(z.a, z.b);
  const int n = sys.dim();
  const Complex phase = sys.weyl_phase(z);
  // (X^a Z^b) e_k = ω^{bk} e_{k+a}
  Matrix w = Matrix::Zero(n, n);
  for (int k = 0; k < n; ++k)
    w((k + z.a) % n, k) = phase * std::polar(1.0, 2.0 * kPi * static_cast<double>(z.b) * k / n);
  return TraceOp(std::move(w));
}

std::vector<double> singular_values(const Matrix& m) {
  Eigen::JacobiSVD<Matrix> svd(m);
  const auto& s = svd.singularValues();
  return {s.data(), s.data() + s.size()};
}

double schatten_norm(const Matrix& a, double p) {
  require_exponent(p, "schatten_norm");
  const auto s = singular_values(a);
  if (s.empty()) return 0.0;
  const double top = *std::max_element(s.begin(), s.end());
  if (p == kInf || top == 0.0) return top;
  double acc = 0.0;
  for (double v : s) acc += std::pow(v / top, p);
  return top * std::pow(acc, 1.0 / p);
}

double schatten_norm(const TraceOp& a, double p) { return schatten_norm(a.matrix(), p); }

// (X^a Z^b)_{ik} = δ_{i,k+a} ω^{bk}, so tr(A X^a Z^b) = Σ_k A(k, k+a) ω^{bk}:
// one length-N DFT along each wrapped diagonal.
GridFn fourier_weyl(const WeylSystem& sys, const TraceOp& a) {
  const int n = sys.dim();
  if (a.dim() != n) throw ShapeError("fourier_weyl: operator dimension differs from Weyl system");
  const auto& m = a.matrix();
  GridFn out(sys.grid());
  std::vector<Complex> diag(n);
  for (int sa = 0; sa < n; ++sa) {
    for (int j = 0; j < n; ++j) diag[j] = m(j, (j + sa) % n);
    for (int sb = 0; sb < n; ++sb) {
      Complex acc = 0.0;
      for (int j = 0; j < n; ++j) acc += diag[j] * std::polar(1.0, 2.0 * kPi * static_cast<double>((sb * j) % n) / n);
      out.at(sa, sb) = sys.weyl_phase({sa, sb}) * acc;
    }
  }
  return out;
}

TraceOp inverse_fourier_weyl(const WeylSystem& sys, const GridFn& f) {
  const int n = sys.dim();
  if (f.grid().dims() != 2 || f.grid().n() != n) throw ShapeError("inverse_fourier_weyl: grid must be N×N");
  Matrix m = Matrix::Zero(n, n);
  for (int sa = 0; sa < n; ++sa) {
    for (int j = 0; j < n; ++j) {
      Complex acc = 0.0;
      for (int sb = 0; sb < n; ++sb)
        acc += f.at(sa, sb) * std::conj(sys.weyl_phase({sa, sb})) *
               std::polar(1.0, -2.0 * kPi * static_cast<double>((sb * j) % n) / n);
      m(j, (j + sa) % n) = acc / static_cast<double>(n);
    }
  }
  return TraceOp(std::move(m));
}

TraceOp conjugate_shift(const WeylSystem& sys, const TraceOp& a, FinitePhasePoint z) {
  if (a.dim() != sys.dim()) throw ShapeError("conjugate_shift: dimension mismatch");
  const Matrix w = weyl(sys, z).matrix();
  return TraceOp(w * a.matrix() * w.adjoint());
}

TraceOp random_traceop(int dim, Rng& rng) { return TraceOp(random_matrix(dim, dim, rng)); }

Matrix psd_sqrt(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.adjoint()));
  const Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

Matrix operator_modulus(const Matrix& b) { return psd_sqrt(b.adjoint() * b); }

}  // namespace qha
