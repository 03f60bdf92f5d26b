#include "qha/ncg_index.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qha {

SpectralTriple::SpectralTriple(std::vector<Matrix> gens, Matrix d, std::optional<Matrix> gamma,
                               std::optional<Matrix> twist_)
    : generators(std::move(gens)), dirac(std::move(d)), grading(std::move(gamma)), twist(std::move(twist_)) {
  const auto n = dirac.rows();
  if (dirac.cols() != n) throw ShapeError("SpectralTriple: Dirac operator must be square");
  const double scale = std::max(1.0, dirac.cwiseAbs().maxCoeff());
  if ((dirac - dirac.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw DomainError("SpectralTriple: Dirac operator is not Hermitian");
  for (const auto& a : generators)
    if (a.rows() != n || a.cols() != n) throw ShapeError("SpectralTriple: generator dimension mismatch");
  if (grading) {
    const Matrix& g = *grading;
    if (g.rows() != n || g.cols() != n) throw ShapeError("SpectralTriple: grading dimension mismatch");
    if ((g - g.adjoint()).cwiseAbs().maxCoeff() > 1e-12) throw DomainError("SpectralTriple: grading not Hermitian");
    if ((g * g - Matrix::Identity(n, n)).cwiseAbs().maxCoeff() > 1e-12)
      throw DomainError("SpectralTriple: grading does not square to 1");
    if ((g * dirac + dirac * g).cwiseAbs().maxCoeff() > 1e-12 * scale)
      throw DomainError("SpectralTriple: grading does not anticommute with D");
  }
  if (twist) {
    if (twist->rows() != n || twist->cols() != n) throw ShapeError("SpectralTriple: twist dimension mismatch");
    if (Eigen::FullPivLU<Matrix>(*twist).rank() < n) throw DomainError("SpectralTriple: twist is not invertible");
  }
}

Matrix SpectralTriple::sigma(const Matrix& a) const {
  if (!twist) return a;
  return *twist * a * twist->inverse();
}

SpectralTriple SpectralTriple::random_graded(int plus, int minus, Rng& rng, int generators) {
  const int n = plus + minus;
  Matrix gamma = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) gamma(i, i) = i < plus ? 1.0 : -1.0;
  Matrix d = Matrix::Zero(n, n);
  if (plus > 0 && minus > 0) {
    const Matrix b = random_matrix(minus, plus, rng);  // D₊ : H₊ → H₋
    d.block(plus, 0, minus, plus) = b;
    d.block(0, plus, plus, minus) = b.adjoint();
  }
  const Matrix u = random_unitary(n, rng);
  std::vector<Matrix> gens;
  for (int k = 0; k < generators; ++k) gens.push_back(random_matrix(n, n, rng));
  Matrix g2 = u * gamma * u.adjoint();
  g2 = 0.5 * (g2 + g2.adjoint());
  Matrix d2 = u * d * u.adjoint();
  d2 = 0.5 * (d2 + d2.adjoint());
  return SpectralTriple(std::move(gens), std::move(d2), std::move(g2));
}

double operator_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  return Eigen::JacobiSVD<Matrix>(m).singularValues()(0);
}

TripleReport check_triple(const SpectralTriple& t) {
  TripleReport r;
  const Matrix& d = t.dirac;
  for (const auto& a : t.generators) {
    const Matrix comm = d * a - a * d;
    r.commutator.push_back(operator_norm(comm));
    if (t.twist) {
      const Matrix sa = t.sigma(a);
      r.twisted_literal.push_back(operator_norm(comm - d * sa));
      r.twisted_standard.push_back(operator_norm(d * a - sa * d));
    }
  }
  return r;
}

namespace {

struct GradedBlocks {
  Matrix plus;   // columns spanning H₊
  Matrix minus;  // columns spanning H₋
};

GradedBlocks graded_split(const SpectralTriple& t) {
  if (!t.grading) throw DomainError("fredholm_index: triple has no grading");
  Eigen::SelfAdjointEigenSolver<Matrix> es(*t.grading);
  const auto& ev = es.eigenvalues();
  int minus = 0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) minus += ev[i] < 0;
  // ascending: -1 eigenvectors first
  return {es.eigenvectors().rightCols(ev.size() - minus), es.eigenvectors().leftCols(minus)};
}

int numerical_rank(const Matrix& m, double tol) {
  if (m.size() == 0) return 0;
  const auto s = Eigen::JacobiSVD<Matrix>(m).singularValues();
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) r += s[i] > tol;
  return r;
}

}  // namespace

int fredholm_index(const SpectralTriple& t, double rel_tol) {
  const auto blocks = graded_split(t);
  const Matrix dplus = blocks.minus.adjoint() * t.dirac * blocks.plus;  // H₊ → H₋
  const double tol = rel_tol * operator_norm(t.dirac);
  const int rank = numerical_rank(dplus, tol);
  const int ker_plus = static_cast<int>(blocks.plus.cols()) - rank;
  const int ker_plus_adj = static_cast<int>(blocks.minus.cols()) - rank;
  return ker_plus - ker_plus_adj;
}

double mckean_singer(const SpectralTriple& t, double time) {
  if (!t.grading) throw DomainError("mckean_singer: triple has no grading");
  if (!(time > 0.0)) throw DomainError("mckean_singer: t must be positive");
  Eigen::SelfAdjointEigenSolver<Matrix> es(t.dirac * t.dirac);
  Eigen::VectorXd decay = es.eigenvalues();
  for (Eigen::Index i = 0; i < decay.size(); ++i) decay[i] = std::exp(-time * std::max(decay[i], 0.0));
  const Matrix heat = es.eigenvectors() * decay.asDiagonal() * es.eigenvectors().adjoint();
  return ((*t.grading) * heat).trace().real();
}

Complex index_pairing(const SpectralTriple& t, const Matrix& projection) {
  const Matrix& p = projection;
  return (p * (t.dirac * p - p * t.dirac) * p).trace();
}

int signature(const Matrix& hermitian, double tol) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian, Eigen::EigenvaluesOnly);
  int s = 0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double v = es.eigenvalues()[i];
    if (v > tol) ++s;
    if (v < -tol) --s;
  }
  return s;
}

namespace {

struct Sample {
  int negative = 0;
  bool ambiguous = false;
};

Sample sample_path(const std::function<Matrix(double)>& path, double t, double zero_tol) {
  const Matrix d = path(t);
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (d + d.adjoint()), Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
  Sample s;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (std::abs(ev[i]) <= zero_tol * scale) s.ambiguous = true;
    s.negative += ev[i] < 0;
  }
  return s;
}

}  // namespace

int spectral_flow(const std::function<Matrix(double)>& path, const SpectralFlowOptions& opts) {
  const Sample start = sample_path(path, 0.0, opts.zero_tol);
  const Sample end = sample_path(path, 1.0, opts.zero_tol);
  if (start.ambiguous || end.ambiguous) throw DomainError("spectral_flow: path endpoint is not invertible");
  // Walk the sample grid; an interior sample sitting on a crossing is nudged
  // inside its interval until it is unambiguous.
  const int steps = std::max(1, opts.initial_steps);
  int flow = 0;
  int prev_negative = start.negative;
  double prev_t = 0.0;
  for (int i = 1; i <= steps; ++i) {
    const double nominal = static_cast<double>(i) / steps;
    double t = nominal;
    Sample s = i == steps ? end : sample_path(path, t, opts.zero_tol);
    const double h = nominal - prev_t;
    for (int r = 0; s.ambiguous && r < opts.max_refinements; ++r) {
      t = nominal - h * (0.5 - std::pow(0.5, r + 2));
      s = sample_path(path, t, opts.zero_tol);
    }
    if (s.ambiguous) throw DiagnosticError("spectral_flow: crossing remained ambiguous after refinement");
    flow += prev_negative - s.negative;
    prev_negative = s.negative;
    prev_t = t;
  }
  return flow;
}

int spectral_flow(const std::vector<Matrix>& samples, const SpectralFlowOptions& opts) {
  if (samples.size() < 2) throw DomainError("spectral_flow: need at least two samples");
  const auto segments = static_cast<double>(samples.size() - 1);
  auto path = [&](double t) -> Matrix {
    const double x = std::clamp(t, 0.0, 1.0) * segments;
    const auto k = std::min(static_cast<std::size_t>(x), samples.size() - 2);
    const double u = x - static_cast<double>(k);
    return (1.0 - u) * samples[k] + u * samples[k + 1];
  };
  SpectralFlowOptions o = opts;
  o.initial_steps = std::max(opts.initial_steps, static_cast<int>(samples.size() - 1) * 8);
  return spectral_flow(std::function<Matrix(double)>(path), o);
}

ModularData::ModularData(Matrix rho) : rho_(std::move(rho)) {
  if (rho_.rows() != rho_.cols()) throw ShapeError("ModularData: density matrix must be square");
  if ((rho_ - rho_.adjoint()).cwiseAbs().maxCoeff() > 1e-12) throw DomainError("ModularData: density not Hermitian");
  if (std::abs(rho_.trace() - Complex{1.0}) > 1e-10) throw DomainError("ModularData: density must have unit trace");
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho_);
  if (es.eigenvalues().minCoeff() <= 0.0) throw DomainError("ModularData: density must be positive definite");
  vecs_ = es.eigenvectors();
  vals_ = es.eigenvalues();
}

Matrix ModularData::power(Complex z) const {
  Eigen::VectorXcd d(vals_.size());
  for (Eigen::Index i = 0; i < vals_.size(); ++i) d[i] = std::exp(z * std::log(vals_[i]));
  return vecs_ * d.asDiagonal() * vecs_.adjoint();
}

ModularData ModularData::random(int dim, Rng& rng) {
  const Matrix g = random_matrix(dim, dim, rng);
  Matrix rho = g * g.adjoint() + 0.05 * Matrix::Identity(dim, dim);
  rho /= rho.trace().real();
  rho = 0.5 * (rho + rho.adjoint());
  return ModularData(std::move(rho));
}

ModularData ModularData::tracial(int dim) { return ModularData(Matrix::Identity(dim, dim) / static_cast<double>(dim)); }

Matrix modular_flow(const ModularData& m, const Matrix& a, Complex t) {
  if (a.rows() != m.dim() || a.cols() != m.dim()) throw ShapeError("modular_flow: dimension mismatch");
  const Complex i{0.0, 1.0};
  return m.power(i * t) * a * m.power(-i * t);
}

InequalityReport check_tomita_intertwining(const ModularData& m, const WeylSystem& sys, const Matrix& a, double t) {
  InequalityReport rep("tomita_intertwining");
  const GridFn lhs = fourier_weyl(sys, TraceOp(modular_flow(m, a, t)));
  GridFn rhs = fourier_weyl(sys, TraceOp(a));
  rhs *= std::polar(1.0, -2.0 * kPi * t);
  const double disc = lp_norm(lhs - rhs, 2.0);
  rep.trials = 1;
  rep.min_ratio = rep.max_ratio = disc;
  rep.empirical_constant = disc;
  rep.max_error = disc;
  return rep;
}

NcTorus::NcTorus(int p_, int q_) : p(p_), q(q_), theta(0.0) {
  if (q < 1) throw DomainError("NcTorus: q must be positive");
  if (std::gcd(p, q) != 1 && !(p == 0 && q == 1)) throw DomainError("NcTorus: p and q must be coprime");
  theta = static_cast<double>(p) / q;
  U1 = Matrix::Zero(q, q);
  U2 = Matrix::Zero(q, q);
  for (int j = 0; j < q; ++j) {
    U1(j, j) = std::polar(1.0, 2.0 * kPi * static_cast<double>((static_cast<long long>(p) * j) % q) / q);
    U2((j + 1) % q, j) = 1.0;
  }
}

Matrix harper_hamiltonian(const NcTorus& torus, double k1, double k2) {
  const Matrix h = torus.U1 * std::polar(1.0, k1) + torus.U2 * std::polar(1.0, k2);
  return h + h.adjoint();
}

Matrix harper_bloch_hamiltonian(const NcTorus& torus, double k1, double k2) {
  Matrix t = torus.U2;
  t(0, torus.q - 1) *= std::polar(1.0, torus.q * k2);
  const Matrix h = torus.U1 * std::polar(1.0, k1) + t;
  return h + h.adjoint();
}

namespace {

struct MeshPoint {
  Eigen::VectorXd energies;
  Matrix vectors;
};

}  // namespace

ChernResult harper_chern(const NcTorus& torus, const std::vector<int>& bands, int mesh) {
  if (mesh < 2) throw DomainError("harper_chern: mesh must be at least 2");
  if (bands.empty()) throw DomainError("harper_chern: empty band selection");
  for (int b : bands)
    if (b < 0 || b >= torus.q) throw DomainError("harper_chern: band index out of range");
  std::vector<MeshPoint> grid(static_cast<std::size_t>(mesh) * mesh);
  const auto at = [mesh](int i, int j) { return static_cast<std::size_t>((i % mesh + mesh) % mesh) * mesh + (j % mesh + mesh) % mesh; };
  std::vector<char> selected(torus.q, 0);
  for (int b : bands) selected[b] = 1;
  ChernResult res;
  res.min_gap = kInf;
  for (int i = 0; i < mesh; ++i)
    for (int j = 0; j < mesh; ++j) {
      Eigen::SelfAdjointEigenSolver<Matrix> es(harper_bloch_hamiltonian(torus, 2.0 * kPi * i / mesh, 2.0 * kPi * j / (static_cast<double>(mesh) * torus.q)));
      MeshPoint& mp = grid[at(i, j)];
      mp.energies = es.eigenvalues();
      mp.vectors = Matrix(torus.q, static_cast<Eigen::Index>(bands.size()));
      for (std::size_t c = 0; c < bands.size(); ++c) mp.vectors.col(static_cast<Eigen::Index>(c)) = es.eigenvectors().col(bands[c]);
      for (int a = 0; a < torus.q; ++a)
        for (int b = 0; b < torus.q; ++b)
          if (selected[a] && !selected[b]) res.min_gap = std::min(res.min_gap, std::abs(mp.energies[a] - mp.energies[b]));
    }
  if (res.min_gap < 1e-6) throw DiagnosticError("harper_chern: selected bands are not separated by a gap");
  auto link = [&](std::size_t from, std::size_t to) {
    const Complex d = (grid[from].vectors.adjoint() * grid[to].vectors).determinant();
    return d / std::abs(d);
  };
  double total = 0.0;
  for (int i = 0; i < mesh; ++i)
    for (int j = 0; j < mesh; ++j) {
      const Complex u1 = link(at(i, j), at(i + 1, j));
      const Complex u2 = link(at(i + 1, j), at(i + 1, j + 1));
      const Complex u3 = link(at(i, j + 1), at(i + 1, j + 1));
      const Complex u4 = link(at(i, j), at(i, j + 1));
      total += std::arg(u1 * u2 / (u3 * u4));
    }
  // k2 is the hopping momentum (x) and k1 the Landau-gauge momentum (y); the
  // plaquettes above are oriented (k1, k2), hence the sign.
  res.raw = -total / (2.0 * kPi);
  res.chern = static_cast<int>(std::lround(res.raw));
  if (std::abs(res.raw - res.chern) > 1e-6) throw DiagnosticError("harper_chern: non-integral result, refine the mesh");
  return res;
}

std::vector<int> harper_band_cherns(const NcTorus& torus, int mesh) {
  std::vector<int> out;
  for (int b = 0; b < torus.q; ++b) out.push_back(harper_chern(torus, {b}, mesh).chern);
  return out;
}

bool tknn_consistent(const NcTorus& torus, const std::vector<int>& band_cherns) {
  if (static_cast<int>(band_cherns.size()) != torus.q) return false;
  long long cumulative = 0;
  for (int r = 1; r < torus.q; ++r) {
    cumulative += band_cherns[r - 1];
    const long long lhs = ((r - static_cast<long long>(torus.p) * cumulative) % torus.q + torus.q) % torus.q;
    if (lhs != 0) return false;
  }
  return std::accumulate(band_cherns.begin(), band_cherns.end(), 0LL) == 0;
}

std::string hall_conductance(int chern) { return std::to_string(chern) + " e^2/h"; }

}  // namespace qha
