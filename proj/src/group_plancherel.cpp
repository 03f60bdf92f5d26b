#include "qha/group_plancherel.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <numeric>
#include <regex>

#include "qha/operator_space.hpp"

namespace qha {

namespace {

std::vector<std::vector<int>> table_from(int order, const std::function<int(int, int)>& mul) {
  std::vector<std::vector<int>> t(order, std::vector<int>(order));
  for (int g = 0; g < order; ++g)
    for (int h = 0; h < order; ++h) t[g][h] = mul(g, h);
  return t;
}

int mod(int v, int n) { return ((v % n) + n) % n; }

Matrix matrix_power(const Matrix& m, int k) {
  Matrix out = Matrix::Identity(m.rows(), m.cols());
  for (int i = 0; i < k; ++i) out = out * m;
  return out;
}

}  // namespace

FiniteGroup::FiniteGroup(std::string tag, std::vector<std::vector<int>> table, std::vector<int> generators,
                         std::vector<std::string> labels)
    : tag_(std::move(tag)), table_(std::move(table)), generators_(std::move(generators)), labels_(std::move(labels)) {
  const int n = order();
  if (n == 0) throw ConsistencyError("FiniteGroup: empty table");
  for (const auto& row : table_) {
    if (static_cast<int>(row.size()) != n) throw ConsistencyError("FiniteGroup: table is not square");
    for (int v : row)
      if (v < 0 || v >= n) throw ConsistencyError("FiniteGroup: product out of range");
  }
  for (int e = 0; e < n && identity_ < 0; ++e) {
    bool ok = true;
    for (int g = 0; g < n && ok; ++g) ok = table_[e][g] == g && table_[g][e] == g;
    if (ok) identity_ = e;
  }
  if (identity_ < 0) throw ConsistencyError("FiniteGroup: no identity element");
  inverse_.assign(n, -1);
  for (int g = 0; g < n; ++g)
    for (int h = 0; h < n; ++h)
      if (table_[g][h] == identity_ && table_[h][g] == identity_) inverse_[g] = h;
  if (std::count(inverse_.begin(), inverse_.end(), -1) > 0) throw ConsistencyError("FiniteGroup: missing inverse");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (table_[table_[a][b]][c] != table_[a][table_[b][c]]) throw ConsistencyError("FiniteGroup: not associative");
  if (labels_.empty())
    for (int g = 0; g < n; ++g) labels_.push_back(std::to_string(g));
}

std::vector<std::vector<int>> FiniteGroup::conjugacy_classes() const {
  std::vector<int> seen(order(), 0);
  std::vector<std::vector<int>> classes;
  for (int g = 0; g < order(); ++g) {
    if (seen[g]) continue;
    std::vector<int> cls;
    for (int x = 0; x < order(); ++x) {
      const int c = mul(mul(inv(x), g), x);
      if (!seen[c]) {
        seen[c] = 1;
        cls.push_back(c);
      }
    }
    std::sort(cls.begin(), cls.end());
    classes.push_back(std::move(cls));
  }
  return classes;
}

bool FiniteGroup::is_subgroup(const std::vector<int>& elements) const {
  if (elements.empty()) return false;
  std::vector<char> in(order(), 0);
  for (int h : elements) {
    if (h < 0 || h >= order()) return false;
    in[h] = 1;
  }
  if (!in[identity_]) return false;
  for (int a : elements) {
    if (!in[inv(a)]) return false;
    for (int b : elements)
      if (!in[mul(a, b)]) return false;
  }
  return true;
}

FiniteGroup FiniteGroup::cyclic(int n) {
  if (n < 1) throw DomainError("cyclic group: order must be positive");
  std::vector<std::string> labels;
  for (int k = 0; k < n; ++k) labels.push_back(std::to_string(k));
  return FiniteGroup("z" + std::to_string(n), table_from(n, [n](int a, int b) { return (a + b) % n; }),
                     {n > 1 ? 1 : 0}, labels);
}

FiniteGroup FiniteGroup::dihedral(int n) {
  if (n < 2) throw DomainError("dihedral group: need n >= 2");
  // r^k s^e · r^l s^f = r^{k + (-1)^e l} s^{e+f}
  auto mul = [n](int g, int h) {
    const int k = g % n, e = g / n, l = h % n, f = h / n;
    return mod(k + (e ? -l : l), n) + n * ((e + f) % 2);
  };
  std::vector<std::string> labels;
  for (int g = 0; g < 2 * n; ++g) labels.push_back("r" + std::to_string(g % n) + (g >= n ? "s" : ""));
  return FiniteGroup("d" + std::to_string(n), table_from(2 * n, mul), {1, n}, labels);
}

namespace {

using Perm = std::array<int, 3>;

std::vector<Perm> s3_elements() {
  std::vector<Perm> out;
  Perm p{0, 1, 2};
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

}  // namespace

FiniteGroup FiniteGroup::symmetric3() {
  const auto els = s3_elements();
  auto index_of = [&](const Perm& p) {
    return static_cast<int>(std::find(els.begin(), els.end(), p) - els.begin());
  };
  // (στ)(i) = σ(τ(i))
  auto mul = [&](int a, int b) {
    Perm r{};
    for (int i = 0; i < 3; ++i) r[i] = els[a][els[b][i]];
    return index_of(r);
  };
  std::vector<std::string> labels;
  for (const auto& p : els) labels.push_back(std::to_string(p[0]) + std::to_string(p[1]) + std::to_string(p[2]));
  const int transposition = index_of({1, 0, 2});
  const int three_cycle = index_of({1, 2, 0});
  return FiniteGroup("s3", table_from(6, mul), {transposition, three_cycle}, labels);
}

FiniteGroup FiniteGroup::heisenberg(int p) {
  if (p < 2) throw DomainError("heisenberg group: need p >= 2");
  // (x,y,z)(x',y',z') = (x+x', y+y', z+z'+xy')
  auto mul = [p](int g, int h) {
    const int x = g / (p * p), y = (g / p) % p, z = g % p;
    const int x2 = h / (p * p), y2 = (h / p) % p, z2 = h % p;
    return ((x + x2) % p) * p * p + ((y + y2) % p) * p + (z + z2 + x * y2) % p;
  };
  std::vector<std::string> labels;
  for (int g = 0; g < p * p * p; ++g)
    labels.push_back("(" + std::to_string(g / (p * p)) + "," + std::to_string((g / p) % p) + "," +
                     std::to_string(g % p) + ")");
  return FiniteGroup("heis" + std::to_string(p), table_from(p * p * p, mul), {p * p, p}, labels);
}

double homomorphism_defect(const FiniteGroup& g, const Irrep& rep) {
  double worst = 0.0;
  for (int a = 0; a < g.order(); ++a)
    for (int b = 0; b < g.order(); ++b)
      worst = std::max(worst, (rep.mats[a] * rep.mats[b] - rep.mats[g.mul(a, b)]).cwiseAbs().maxCoeff());
  return worst;
}

double unitarity_defect(const Irrep& rep) {
  double worst = 0.0;
  for (const auto& m : rep.mats)
    worst = std::max(worst, (m.adjoint() * m - Matrix::Identity(rep.dim, rep.dim)).cwiseAbs().maxCoeff());
  return worst;
}

IrrepTable::IrrepTable(FiniteGroup group, std::vector<Irrep> irreps) : group_(std::move(group)), irreps_(std::move(irreps)) {
  for (const auto& r : irreps_) {
    if (static_cast<int>(r.mats.size()) != group_.order()) throw ConsistencyError("IrrepTable: matrix count differs from order");
    if (homomorphism_defect(group_, r) > 1e-10) throw ConsistencyError("IrrepTable: " + r.name + " is not a homomorphism");
    if (unitarity_defect(r) > 1e-10) throw ConsistencyError("IrrepTable: " + r.name + " is not unitary");
  }
  if (dimension_sum() != group_.order()) throw ConsistencyError("IrrepTable: incomplete table, sum of d^2 differs from |G|");
}

long long IrrepTable::dimension_sum() const {
  long long s = 0;
  for (const auto& r : irreps_) s += static_cast<long long>(r.dim) * r.dim;
  return s;
}

double IrrepTable::orthogonality_defect() const {
  // Σ_g π(g)_{ij} conj(ρ(g)_{kl}) = (|G|/d_π) δ_{πρ} δ_ik δ_jl
  double worst = 0.0;
  const int n = group_.order();
  for (std::size_t a = 0; a < irreps_.size(); ++a) {
    for (std::size_t b = 0; b < irreps_.size(); ++b) {
      const auto& pa = irreps_[a];
      const auto& pb = irreps_[b];
      for (int i = 0; i < pa.dim; ++i)
        for (int j = 0; j < pa.dim; ++j)
          for (int k = 0; k < pb.dim; ++k)
            for (int l = 0; l < pb.dim; ++l) {
              Complex s = 0.0;
              for (int g = 0; g < n; ++g) s += pa.mats[g](i, j) * std::conj(pb.mats[g](k, l));
              const double expect = (a == b && i == k && j == l) ? static_cast<double>(n) / pa.dim : 0.0;
              worst = std::max(worst, std::abs(s - expect));
            }
    }
  }
  return worst;
}

namespace {

Irrep one_dim(const std::string& name, const std::vector<Complex>& values) {
  Irrep r{1, {}, name};
  for (Complex v : values) r.mats.push_back(Matrix::Constant(1, 1, v));
  return r;
}

}  // namespace

IrrepTable IrrepTable::cyclic(int n) {
  FiniteGroup g = FiniteGroup::cyclic(n);
  std::vector<Irrep> irreps;
  for (int k = 0; k < n; ++k) {
    std::vector<Complex> v;
    for (int m = 0; m < n; ++m) v.push_back(std::polar(1.0, 2.0 * kPi * static_cast<double>((k * m) % n) / n));
    irreps.push_back(one_dim("chi" + std::to_string(k), v));
  }
  return IrrepTable(std::move(g), std::move(irreps));
}

IrrepTable IrrepTable::dihedral(int n) {
  FiniteGroup g = FiniteGroup::dihedral(n);
  std::vector<Irrep> irreps;
  const std::vector<int> rot_signs = n % 2 == 0 ? std::vector<int>{1, -1} : std::vector<int>{1};
  for (int rs : rot_signs) {
    for (int ss : {1, -1}) {
      std::vector<Complex> v;
      for (int el = 0; el < 2 * n; ++el) {
        const int k = el % n, e = el / n;
        v.push_back(static_cast<double>((k % 2 == 1 && rs < 0 ? -1 : 1) * (e == 1 ? ss : 1)));
      }
      irreps.push_back(one_dim(std::string("sign_r") + (rs > 0 ? "+" : "-") + "_s" + (ss > 0 ? "+" : "-"), v));
    }
  }
  for (int h = 1; 2 * h < n; ++h) {
    Irrep r{2, {}, "rho" + std::to_string(h)};
    Matrix s(2, 2);
    s << 0, 1, 1, 0;
    for (int el = 0; el < 2 * n; ++el) {
      const int k = el % n, e = el / n;
      Matrix rot = Matrix::Zero(2, 2);
      rot(0, 0) = std::polar(1.0, 2.0 * kPi * h * k / n);
      rot(1, 1) = std::polar(1.0, -2.0 * kPi * h * k / n);
      r.mats.push_back(e ? Matrix(rot * s) : rot);
    }
    irreps.push_back(std::move(r));
  }
  return IrrepTable(std::move(g), std::move(irreps));
}

IrrepTable IrrepTable::symmetric3() {
  FiniteGroup g = FiniteGroup::symmetric3();
  const auto els = s3_elements();
  std::vector<Complex> trivial, sign;
  Irrep standard{2, {}, "standard"};
  // Orthonormal basis of the sum-zero plane in C^3.
  Matrix basis(3, 2);
  basis << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(6.0), -1.0 / std::sqrt(2.0), 1.0 / std::sqrt(6.0), 0.0,
      -2.0 / std::sqrt(6.0);
  for (const auto& p : els) {
    trivial.push_back(1.0);
    int inversions = 0;
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j) inversions += p[i] > p[j];
    sign.push_back(inversions % 2 ? -1.0 : 1.0);
    Matrix perm = Matrix::Zero(3, 3);
    for (int i = 0; i < 3; ++i) perm(p[i], i) = 1.0;  // e_i ↦ e_{p(i)}
    standard.mats.push_back(basis.adjoint() * perm * basis);
  }
  std::vector<Irrep> irreps{one_dim("trivial", trivial), one_dim("sign", sign), std::move(standard)};
  return IrrepTable(std::move(g), std::move(irreps));
}

IrrepTable IrrepTable::heisenberg(int p) {
  FiniteGroup g = FiniteGroup::heisenberg(p);
  std::vector<Irrep> irreps;
  auto coords = [p](int el) { return std::array<int, 3>{el / (p * p), (el / p) % p, el % p}; };
  for (int a = 0; a < p; ++a)
    for (int b = 0; b < p; ++b) {
      std::vector<Complex> v;
      for (int el = 0; el < g.order(); ++el) {
        const auto c = coords(el);
        v.push_back(std::polar(1.0, 2.0 * kPi * static_cast<double>((a * c[0] + b * c[1]) % p) / p));
      }
      irreps.push_back(one_dim("chi" + std::to_string(a) + std::to_string(b), v));
    }
  // Schrödinger-type representations π_c(x,y,z) = ω^{cz} X^y Z^{cx}.
  const WeylSystem sys(p);
  for (int c = 1; c < p; ++c) {
    Irrep r{p, {}, "schrodinger" + std::to_string(c)};
    for (int el = 0; el < g.order(); ++el) {
      const auto x = coords(el);
      Matrix m = std::polar(1.0, 2.0 * kPi * static_cast<double>((c * x[2]) % p) / p) *
                 matrix_power(sys.shift(), x[1]) * matrix_power(sys.clock(), (c * x[0]) % p);
      r.mats.push_back(std::move(m));
    }
    irreps.push_back(std::move(r));
  }
  return IrrepTable(std::move(g), std::move(irreps));
}

IrrepTable IrrepTable::by_name(const std::string& name) {
  std::smatch m;
  if (name == "s3") return symmetric3();
  if (std::regex_match(name, m, std::regex("z(\\d+)"))) return cyclic(std::stoi(m[1]));
  if (std::regex_match(name, m, std::regex("d(\\d+)"))) return dihedral(std::stoi(m[1]));
  if (std::regex_match(name, m, std::regex("heis(\\d+)"))) return heisenberg(std::stoi(m[1]));
  throw DomainError("unknown group '" + name + "' (expected s3, zN, dN or heisP)");
}

GroupQhaPair::GroupQhaPair(std::vector<Complex> f_, std::vector<Matrix> a_) : f(std::move(f_)), A(std::move(a_)) {
  if (f.size() != A.size()) throw ShapeError("GroupQhaPair: function and operator parts differ in length");
  for (std::size_t i = 1; i < A.size(); ++i)
    if (A[i].rows() != A[0].rows() || A[i].cols() != A[0].cols()) throw ShapeError("GroupQhaPair: ragged operator part");
}

GroupQhaPair GroupQhaPair::random(int order, int op_dim, Rng& rng) {
  std::vector<Complex> f(order);
  std::vector<Matrix> a;
  for (auto& v : f) v = complex_normal(rng);
  for (int g = 0; g < order; ++g) a.push_back(random_matrix(op_dim, op_dim, rng));
  return GroupQhaPair(std::move(f), std::move(a));
}

namespace {

void require_order(const IrrepTable& t, std::size_t n, const char* what) {
  if (static_cast<int>(n) != t.group().order()) throw ShapeError(std::string(what) + ": size differs from group order");
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

}  // namespace

std::vector<Matrix> group_fourier(const IrrepTable& t, const std::vector<Complex>& f) {
  require_order(t, f.size(), "group_fourier");
  std::vector<Matrix> out;
  for (const auto& r : t.irreps()) {
    Matrix acc = Matrix::Zero(r.dim, r.dim);
    for (std::size_t g = 0; g < f.size(); ++g) acc += f[g] * r.mats[g];
    out.push_back(std::move(acc));
  }
  return out;
}

std::vector<PlancherelBlock> plancherel_transform(const IrrepTable& t, const GroupQhaPair& p) {
  require_order(t, p.f.size(), "plancherel_transform");
  const auto fh = group_fourier(t, p.f);
  std::vector<PlancherelBlock> out;
  for (std::size_t i = 0; i < t.irreps().size(); ++i) {
    const auto& r = t.irreps()[i];
    const Eigen::Index d = p.A.empty() ? 0 : p.A[0].rows();
    Matrix acc = Matrix::Zero(d * r.dim, d * r.dim);
    for (std::size_t g = 0; g < p.A.size(); ++g) acc += kron(p.A[g], r.mats[g]);
    out.push_back({fh[i], std::move(acc)});
  }
  return out;
}

std::vector<Complex> group_fourier_inverse(const IrrepTable& t, const std::vector<Matrix>& blocks) {
  if (blocks.size() != t.irreps().size()) throw ShapeError("group_fourier_inverse: one block per irrep required");
  const auto& g = t.group();
  std::vector<Complex> f(g.order(), 0.0);
  for (int el = 0; el < g.order(); ++el)
    for (std::size_t i = 0; i < blocks.size(); ++i)
      f[el] += t.weight(i) * (blocks[i] * t.irreps()[i].mats[g.inv(el)]).trace();
  return f;
}

std::vector<Complex> group_convolve(const FiniteGroup& g, const std::vector<Complex>& f, const std::vector<Complex>& h) {
  if (static_cast<int>(f.size()) != g.order() || static_cast<int>(h.size()) != g.order())
    throw ShapeError("group_convolve: size differs from group order");
  std::vector<Complex> out(g.order(), 0.0);
  for (int x = 0; x < g.order(); ++x)
    for (int y = 0; y < g.order(); ++y) out[x] += f[y] * h[g.mul(g.inv(y), x)];
  return out;
}

InequalityReport check_plancherel(const IrrepTable& t, const GroupQhaPair& p) {
  if (!t.complete())
    throw ConsistencyError("check_plancherel: irrep table incomplete (sum of squared dimensions " +
                           std::to_string(t.dimension_sum()) + " != " + std::to_string(t.group().order()) + ")");
  InequalityReport rep("plancherel");
  double lhs = 0.0;
  for (const auto& v : p.f) lhs += std::norm(v);
  for (const auto& a : p.A) lhs += a.squaredNorm();
  const auto blocks = plancherel_transform(t, p);
  double rhs = 0.0;
  for (std::size_t i = 0; i < blocks.size(); ++i) rhs += t.weight(i) * (blocks[i].f_hat.squaredNorm() + blocks[i].a_hat.squaredNorm());
  const double err = std::abs(lhs - rhs) / std::max(1.0, lhs);
  rep.record_error(err, 1e-10);
  rep.min_ratio = rep.max_ratio = lhs > 0 ? rhs / lhs : 1.0;
  rep.empirical_constant = rep.max_ratio;
  return rep;
}

Irrep induce(const FiniteGroup& g, const std::vector<int>& subgroup, const std::vector<Complex>& sigma) {
  if (!g.is_subgroup(subgroup)) throw DomainError("induce: not a subgroup");
  if (sigma.size() != subgroup.size()) throw DomainError("induce: one character value per subgroup element required");
  std::vector<int> pos(g.order(), -1);
  for (std::size_t i = 0; i < subgroup.size(); ++i) pos[subgroup[i]] = static_cast<int>(i);
  for (std::size_t i = 0; i < subgroup.size(); ++i) {
    if (std::abs(std::abs(sigma[i]) - 1.0) > 1e-10) throw DomainError("induce: character values must be unimodular");
    for (std::size_t j = 0; j < subgroup.size(); ++j)
      if (std::abs(sigma[i] * sigma[j] - sigma[pos[g.mul(subgroup[i], subgroup[j])]]) > 1e-10)
        throw DomainError("induce: sigma is not a character of the subgroup");
  }
  // Left coset representatives of G/H.
  std::vector<int> reps;
  std::vector<char> covered(g.order(), 0);
  for (int x = 0; x < g.order(); ++x) {
    if (covered[x]) continue;
    reps.push_back(x);
    for (int h : subgroup) covered[g.mul(x, h)] = 1;
  }
  const int m = static_cast<int>(reps.size());
  Irrep out{m, {}, "induced"};
  for (int el = 0; el < g.order(); ++el) {
    Matrix mat = Matrix::Zero(m, m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        const int h = g.mul(g.mul(g.inv(reps[j]), el), reps[i]);
        if (pos[h] >= 0) mat(j, i) = sigma[pos[h]];
      }
    out.mats.push_back(std::move(mat));
  }
  return out;
}

Complex frobenius_character(const FiniteGroup& g, const std::vector<int>& subgroup, const std::vector<Complex>& sigma,
                            int element) {
  std::vector<int> pos(g.order(), -1);
  for (std::size_t i = 0; i < subgroup.size(); ++i) pos[subgroup[i]] = static_cast<int>(i);
  Complex acc = 0.0;
  for (int x = 0; x < g.order(); ++x) {
    const int c = g.mul(g.mul(g.inv(x), element), x);
    if (pos[c] >= 0) acc += sigma[pos[c]];
  }
  return acc / static_cast<double>(subgroup.size());
}

InequalityReport check_group_uncertainty(const IrrepTable& t, const std::vector<Complex>& f, double p) {
  require_exponent(p, "check_group_uncertainty");
  require_order(t, f.size(), "check_group_uncertainty");
  const auto& g = t.group();
  InequalityReport rep("group_uncertainty");
  std::vector<double> xf(g.order()), fm(g.order());
  double scale = 0.0;
  for (int el = 0; el < g.order(); ++el) {
    Complex acc = 0.0;
    for (int s : g.generators()) acc += f[g.mul(el, s)] - f[el];
    xf[el] = std::abs(acc);
    fm[el] = std::abs(f[el]);
    scale = std::max(scale, fm[el]);
  }
  if (scale == 0.0 || lp_sum(xf, kInf) <= 1e-12 * scale) return rep;  // kernel of X: excluded
  const auto blocks = group_fourier(t, f);
  double ft;
  if (p == kInf) {
    ft = 0.0;
    for (const auto& b : blocks) ft = std::max(ft, schatten_norm(b, kInf));
  } else {
    double acc = 0.0;
    for (std::size_t i = 0; i < blocks.size(); ++i) acc += t.weight(i) * std::pow(schatten_norm(blocks[i], p), p);
    ft = std::pow(acc, 1.0 / p);
  }
  const double base = lp_sum(fm, p);
  const double r = lp_sum(xf, p) * ft / (base * base);
  rep.record(r, !(r > 0.0));
  rep.empirical_constant = r;
  return rep;
}

}  // namespace qha
