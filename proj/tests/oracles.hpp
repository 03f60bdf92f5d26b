#pragma once
// Reference implementations used only by the tests. Each one is written from
// the defining formula, shares no code path with the library kernels, and is
// deliberately slow.

#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include "qha/common.hpp"

namespace oracle {

using qha::Complex;
using qha::Matrix;
constexpr double kPi = 3.14159265358979323846;

inline int mod(long long a, int n) { return static_cast<int>(((a % n) + n) % n); }

/// Unitary 2-D DFT, f indexed [a*n + b]: F(k) = (1/n) Σ_x f(x) e^{-2πi<x,k>/n}.
inline std::vector<Complex> dft2(const std::vector<Complex>& f, int n, int sign = -1) {
  std::vector<Complex> out(f.size());
  for (int k1 = 0; k1 < n; ++k1)
    for (int k2 = 0; k2 < n; ++k2) {
      Complex s = 0.0;
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          s += f[a * n + b] * std::polar(1.0, sign * 2.0 * kPi * (static_cast<double>(a) * k1 + static_cast<double>(b) * k2) / n);
      out[k1 * n + k2] = s / static_cast<double>(n);
    }
  return out;
}

inline std::vector<Complex> dft1(const std::vector<Complex>& f, int sign = -1) {
  const int n = static_cast<int>(f.size());
  std::vector<Complex> out(n);
  for (int k = 0; k < n; ++k) {
    Complex s = 0.0;
    for (int x = 0; x < n; ++x) s += f[x] * std::polar(1.0, sign * 2.0 * kPi * x * k / n);
    out[k] = s / std::sqrt(static_cast<double>(n));
  }
  return out;
}

/// (f*g)(x) = Σ_y f(y) g(x - y) on Z_n².
inline std::vector<Complex> convolve2(const std::vector<Complex>& f, const std::vector<Complex>& g, int n) {
  std::vector<Complex> out(f.size(), 0.0);
  for (int x1 = 0; x1 < n; ++x1)
    for (int x2 = 0; x2 < n; ++x2)
      for (int y1 = 0; y1 < n; ++y1)
        for (int y2 = 0; y2 < n; ++y2)
          out[x1 * n + x2] += f[y1 * n + y2] * g[mod(x1 - y1, n) * n + mod(x2 - y2, n)];
  return out;
}

inline double lp(const std::vector<Complex>& f, double p) {
  if (std::isinf(p)) {
    double m = 0.0;
    for (auto v : f) m = std::max(m, std::abs(v));
    return m;
  }
  double s = 0.0;
  for (auto v : f) s += std::pow(std::abs(v), p);
  return std::pow(s, 1.0 / p);
}

/// Schatten norm from the eigenvalues of A†A.
inline double schatten(const Matrix& a, double p) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(a.adjoint() * a, Eigen::EigenvaluesOnly);
  std::vector<Complex> sv;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) sv.emplace_back(std::sqrt(std::max(0.0, es.eigenvalues()[i])));
  return lp(sv, p);
}

/// W(a,b) = e^{iπab/n} X^a Z^b built entry by entry:
/// (X^a Z^b)_{jk} = [j = k + a] ω^{bk}.
inline Matrix weyl(int n, long long a_, long long b_) {
  const int a = mod(a_, n), b = mod(b_, n);
  Matrix w = Matrix::Zero(n, n);
  const Complex phase = std::polar(1.0, kPi * static_cast<double>(a) * b / n);
  for (int k = 0; k < n; ++k) w(mod(k + a, n), k) = phase * std::polar(1.0, 2.0 * kPi * static_cast<double>(b) * k / n);
  return w;
}

/// Â(a,b) = tr(A W(a,b)), indexed [a*n + b].
inline std::vector<Complex> fourier_weyl(const Matrix& a) {
  const int n = static_cast<int>(a.rows());
  std::vector<Complex> out(static_cast<std::size_t>(n) * n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) out[x * n + y] = (a * weyl(n, x, y)).trace();
  return out;
}

/// Σ_y g(y) W_y A W_y†.
inline Matrix twirl(const std::vector<Complex>& g, const Matrix& a) {
  const int n = static_cast<int>(a.rows());
  Matrix out = Matrix::Zero(n, n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      const Matrix w = weyl(n, x, y);
      out += g[x * n + y] * w * a * w.adjoint();
    }
  return out;
}

/// Dense matrix of the 5-point cyclic Laplacian (nonnegative sign) on Z_n².
inline Eigen::MatrixXd grid_laplacian(int n) {
  const int m = n * n;
  Eigen::MatrixXd l = Eigen::MatrixXd::Zero(m, m);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const int i = a * n + b;
      l(i, i) += 4.0;
      l(i, mod(a + 1, n) * n + b) -= 1.0;
      l(i, mod(a - 1, n) * n + b) -= 1.0;
      l(i, a * n + mod(b + 1, n)) -= 1.0;
      l(i, a * n + mod(b - 1, n)) -= 1.0;
    }
  return l;
}

/// 1-D cyclic Laplacian H = 2I - S - S†.
inline Eigen::MatrixXd cyclic_laplacian(int n) {
  Eigen::MatrixXd h = 2.0 * Eigen::MatrixXd::Identity(n, n);
  for (int j = 0; j < n; ++j) {
    h(j, mod(j + 1, n)) -= 1.0;
    h(j, mod(j - 1, n)) -= 1.0;
  }
  return h;
}

/// Heat flow by dense matrix exponentials: f ↦ e^{-tL} f and A ↦ e^{-tH} A e^{-tH}
/// (the latter being e^{-t(H⊗I + I⊗H)} on vec A).
inline std::pair<std::vector<Complex>, Matrix> heat(const std::vector<Complex>& f, const Matrix& a, int n, double t) {
  const Eigen::MatrixXd ef = (-t * grid_laplacian(n)).exp();
  Eigen::VectorXcd v(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) v[static_cast<Eigen::Index>(i)] = f[i];
  const Eigen::VectorXcd w = ef.cast<Complex>() * v;
  std::vector<Complex> fo(w.data(), w.data() + w.size());
  const Eigen::MatrixXd h = cyclic_laplacian(n);
  const Eigen::MatrixXd big = Eigen::kroneckerProduct(h, Eigen::MatrixXd::Identity(n, n)) +
                              Eigen::kroneckerProduct(Eigen::MatrixXd::Identity(n, n), h);
  const Eigen::MatrixXd eb = (-t * big).exp();
  Eigen::VectorXcd va(n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) va[i * n + j] = a(i, j);
  const Eigen::VectorXcd wa = eb.cast<Complex>() * va;
  Matrix ao(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) ao(i, j) = wa[i * n + j];
  return {fo, ao};
}

/// Chern number of band `band` of H(k) = U1 e^{ik1} + U2 e^{ik2} + h.c. from the
/// Kubo formula Ω₁₂ = 2 Im Σ_{m≠n} <n|∂1H|m><m|∂2H|n> / (E_n - E_m)² (that is,
/// 2 Im<∂1u|∂2u>), integrated by the midpoint rule over the full torus [0,2π)²
/// and oriented (k2, k1). The full torus covers the magnetic zone q times,
/// hence the division by q.
inline double kubo_chern(int p, int q, int band, int mesh) {
  Matrix u1 = Matrix::Zero(q, q), u2 = Matrix::Zero(q, q);
  for (int j = 0; j < q; ++j) {
    u1(j, j) = std::polar(1.0, 2.0 * kPi * static_cast<double>(p) * j / q);
    u2(mod(j + 1, q), j) = 1.0;
  }
  double total = 0.0;
  const double h = 2.0 * kPi / mesh;
  for (int i = 0; i < mesh; ++i)
    for (int j = 0; j < mesh; ++j) {
      const double k1 = (i + 0.5) * h, k2 = (j + 0.5) * h;
      const Matrix t1 = u1 * std::polar(1.0, k1), t2 = u2 * std::polar(1.0, k2);
      const Matrix hk = t1 + t1.adjoint() + t2 + t2.adjoint();
      const Matrix d1 = Complex(0, 1) * (t1 - t1.adjoint());
      const Matrix d2 = Complex(0, 1) * (t2 - t2.adjoint());
      Eigen::SelfAdjointEigenSolver<Matrix> es(hk);
      const Matrix& v = es.eigenvectors();
      const Matrix m1 = v.adjoint() * d1 * v, m2 = v.adjoint() * d2 * v;
      double omega = 0.0;
      for (int m = 0; m < q; ++m) {
        if (m == band) continue;
        const double de = es.eigenvalues()[band] - es.eigenvalues()[m];
        omega -= 2.0 * std::imag(m1(band, m) * m2(m, band)) / (de * de);  // Ω₂₁ = -Ω₁₂
      }
      total += omega * h * h;
    }
  return total / (2.0 * kPi) / q;
}

/// #positive − #negative eigenvalues from a general (non-Hermitian) eigen solver.
inline int signature(const Matrix& h, double tol = 1e-10) {
  Eigen::ComplexEigenSolver<Matrix> es(h, false);
  int s = 0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double r = es.eigenvalues()[i].real();
    if (r > tol) ++s;
    if (r < -tol) --s;
  }
  return s;
}

}  // namespace oracle
