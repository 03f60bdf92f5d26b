#pragma once

#include <span>
#include <vector>

#include "qha/common.hpp"

namespace qha {

/// Periodic lattice with N points per axis. Storage is row-major with the
/// index along each axis equal to the coordinate mod N, so the site with
/// index i carries the centered coordinate i (i < ceil(N/2)) or i - N.
class PhaseGrid {
 public:
  PhaseGrid(int n_points, int dims = 2);

  int n() const { return n_; }
  int dims() const { return dims_; }
  std::size_t size() const { return size_; }

  /// Centered coordinate of an axis index, in {-floor(N/2), ..., ceil(N/2)-1}.
  int centered(int index) const { return index < (n_ + 1) / 2 ? index : index - n_; }
  int wrap(long long c) const { return static_cast<int>(((c % n_) + n_) % n_); }

  std::vector<int> unflatten(std::size_t flat) const;
  std::size_t flatten(std::span<const int> idx) const;

  bool operator==(const PhaseGrid&) const = default;

 private:
  int n_;
  int dims_;
  std::size_t size_;
};

/// Complex function on a PhaseGrid with counting measure.
class GridFn {
 public:
  explicit GridFn(PhaseGrid grid);
  GridFn(PhaseGrid grid, std::vector<Complex> values);

  const PhaseGrid& grid() const { return grid_; }
  std::size_t size() const { return values_.size(); }
  std::span<const Complex> values() const { return values_; }
  std::span<Complex> values() { return values_; }

  Complex operator[](std::size_t i) const { return values_[i]; }
  Complex& operator[](std::size_t i) { return values_[i]; }
  /// 2-D convenience accessor; indices are reduced mod N.
  Complex at(long long a, long long b) const;
  Complex& at(long long a, long long b);

  static GridFn delta(const PhaseGrid& grid);
  static GridFn constant(const PhaseGrid& grid, Complex value);

  GridFn& operator+=(const GridFn& other);
  GridFn& operator-=(const GridFn& other);
  GridFn& operator*=(Complex s);
  friend GridFn operator+(GridFn a, const GridFn& b) { return a += b; }
  friend GridFn operator-(GridFn a, const GridFn& b) { return a -= b; }
  friend GridFn operator*(Complex s, GridFn a) { return a *= s; }

  Complex sum() const;
  double max_abs_diff(const GridFn& other) const;

 private:
  PhaseGrid grid_;
  std::vector<Complex> values_;
};

void require_same_grid(const GridFn& f, const GridFn& g, const char* what);

double lp_norm(const GridFn& f, double p);

/// Unitary DFT, kernel e^{-2πi<x,ξ>/N}, normalization N^{-dims/2}.
GridFn fourier(const GridFn& f);
GridFn inverse_fourier(const GridFn& f);

/// Cyclic convolution (f*g)(x) = Σ_y f(y) g(x-y), evaluated through the DFT.
GridFn convolve(const GridFn& f, const GridFn& g);

/// Cyclic shift: translate(f, z)(x) = f(x - z).
GridFn translate(const GridFn& f, std::span<const int> offset);

/// Pointwise multiplication.
GridFn pointwise(const GridFn& f, const GridFn& g);

GridFn random_gridfn(const PhaseGrid& grid, Rng& rng);

}  // namespace qha
