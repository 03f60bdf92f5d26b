#include <doctest.h>

#include "oracles.hpp"
#include "qha/ncg_index.hpp"

using namespace qha;

TEST_CASE("graded triples: Fredholm index equals the McKean-Singer heat trace") {
  for (std::size_t k = 0; k < 20; ++k) {
    Rng rng = trial_rng(1, "ncg/ms", k);
    const int plus = 1 + static_cast<int>(k % 4), minus = 1 + static_cast<int>((k / 4) % 3);
    const SpectralTriple t = SpectralTriple::random_graded(plus, minus, rng);
    const int idx = fredholm_index(t);
    CHECK(idx == plus - minus);
    for (double time : {0.1, 1.0, 10.0}) CHECK(std::abs(mckean_singer(t, time) - idx) < 1e-8);
  }
}

TEST_CASE("index of a hand-built Dirac operator with a kernel") {
  // D₊ : C³ → C² of rank 1, so dim ker D₊ = 2 and dim ker D₊† = 1.
  Matrix d = Matrix::Zero(5, 5);
  d(3, 0) = 2.0;
  d(0, 3) = 2.0;
  Matrix gamma = Matrix::Identity(5, 5);
  gamma(3, 3) = gamma(4, 4) = -1.0;
  const SpectralTriple t({}, d, gamma);
  CHECK(fredholm_index(t) == 1);
  CHECK(mckean_singer(t, 0.5) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("triples validate their data") {
  CHECK_THROWS(SpectralTriple({}, Matrix::Identity(2, 3)));
  Matrix nonherm = Matrix::Zero(2, 2);
  nonherm(0, 1) = 1.0;
  CHECK_THROWS(SpectralTriple({}, nonherm));
  Matrix d = Matrix::Identity(2, 2);
  Matrix gamma = Matrix::Identity(2, 2);
  gamma(1, 1) = -1.0;
  CHECK_THROWS(SpectralTriple({}, d, gamma));  // D must anticommute with γ
}

TEST_CASE("index pairing vanishes identically and is only reported") {
  Rng rng = trial_rng(2, "ncg/pair", 0);
  const SpectralTriple t = SpectralTriple::random_graded(3, 2, rng);
  const Matrix u = random_unitary(5, rng);
  const Matrix proj = u.leftCols(2) * u.leftCols(2).adjoint();
  CHECK(std::abs(index_pairing(t, proj)) < 1e-12);
}

TEST_CASE("commutator norms") {
  Rng rng = trial_rng(3, "ncg/triple", 0);
  const SpectralTriple t = SpectralTriple::random_graded(2, 2, rng, 3);
  const TripleReport r = check_triple(t);
  REQUIRE(r.commutator.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    const Matrix& a = t.generators[i];
    CHECK(r.commutator[i] == doctest::Approx(oracle::schatten(t.dirac * a - a * t.dirac, kInf)).epsilon(1e-10));
  }
}

TEST_CASE("signature against the general eigen solver") {
  for (std::size_t k = 0; k < 10; ++k) {
    Rng rng = trial_rng(4, "ncg/sig", k);
    const Matrix g = random_matrix(6, 6, rng);
    const Matrix h = 0.5 * (g + g.adjoint());
    CHECK(signature(h) == oracle::signature(h));
  }
  CHECK(signature(Matrix::Zero(3, 3)) == 0);
}

TEST_CASE("spectral flow on linear paths equals half the signature change") {
  for (std::size_t k = 0; k < 20; ++k) {
    Rng rng = trial_rng(5, "ncg/flow", k);
    const Matrix ga = random_matrix(5, 5, rng), gb = random_matrix(5, 5, rng);
    const Matrix a = 0.5 * (ga + ga.adjoint()), b = 0.5 * (gb + gb.adjoint());
    const int sf = spectral_flow([&](double t) -> Matrix { return (1 - t) * a + t * b; });
    CHECK(sf == (oracle::signature(b) - oracle::signature(a)) / 2);
    CHECK(spectral_flow(std::vector<Matrix>{a, b}) == sf);
  }
  // diag(t - 1/2, 1): one eigenvalue crosses upward.
  auto up = [](double t) -> Matrix {
    Matrix m = Matrix::Identity(2, 2);
    m(0, 0) = t - 0.5;
    return m;
  };
  CHECK(spectral_flow(up) == 1);
  auto singular = [](double t) -> Matrix {
    Matrix m = Matrix::Identity(2, 2);
    m(0, 0) = t;
    return m;
  };
  CHECK_THROWS_AS(spectral_flow(singular), DomainError);
}

TEST_CASE("modular flow: KMS boundary condition and state invariance") {
  for (std::size_t k = 0; k < 10; ++k) {
    Rng rng = trial_rng(6, "ncg/kms", k);
    const ModularData m = ModularData::random(5, rng);
    const Matrix a = random_matrix(5, 5, rng), b = random_matrix(5, 5, rng);
    CHECK(std::abs(m.state(a * modular_flow(m, b, Complex(0, -1))) - m.state(b * a)) < 1e-10 * a.norm() * b.norm());
    CHECK(std::abs(m.state(modular_flow(m, a, 0.7)) - m.state(a)) < 1e-10 * a.norm());
    // σ_s σ_t = σ_{s+t}.
    CHECK((modular_flow(m, modular_flow(m, a, 0.3), 0.4) - modular_flow(m, a, 0.7)).norm() < 1e-10 * a.norm());
  }
  CHECK_THROWS(ModularData(Matrix::Identity(3, 3)));  // trace 3, not a state
}

TEST_CASE("Tomita intertwining is measured, never asserted") {
  const int n = 4;
  const WeylSystem sys(n);
  Rng rng = trial_rng(7, "ncg/tomita", 0);
  const Matrix a = random_matrix(n, n, rng);
  const double t = 0.3;
  const auto r = check_tomita_intertwining(ModularData::tracial(n), sys, a, t);
  CHECK(r.violations == 0);
  const double expect = std::abs(1.0 - std::polar(1.0, -2 * kPi * t)) * lp_norm(fourier_weyl(sys, TraceOp(a)), 2.0);
  CHECK(r.empirical_constant == doctest::Approx(expect).epsilon(1e-10));
}

TEST_CASE("noncommutative torus relation") {
  const NcTorus t(2, 5);
  CHECK((t.U1 * t.U2 - std::polar(1.0, 2 * kPi * 0.4) * t.U2 * t.U1).norm() < 1e-12);
  CHECK_THROWS_AS(NcTorus(2, 4), DomainError);
}

TEST_CASE("Harper Bloch form is unitarily equivalent to H(k)") {
  const NcTorus t(1, 3);
  const double k1 = 0.37, k2 = 1.21;
  Matrix d = Matrix::Zero(3, 3);
  for (int j = 0; j < 3; ++j) d(j, j) = std::polar(1.0, k2 * j);
  CHECK((harper_hamiltonian(t, k1, k2) - d * harper_bloch_hamiltonian(t, k1, k2) * d.adjoint()).norm() < 1e-12);
}

TEST_CASE("Harper Chern numbers: frozen values and the Kubo oracle") {
  const std::vector<int> third = harper_band_cherns(NcTorus(1, 3), 24);
  CHECK(third == std::vector<int>{1, -2, 1});
  CHECK(tknn_consistent(NcTorus(1, 3), third));
  for (auto [p, q] : std::vector<std::pair<int, int>>{{1, 3}, {1, 5}, {2, 5}}) {
    const NcTorus torus(p, q);
    const auto c = harper_band_cherns(torus, 24);
    int sum = 0;
    for (int b = 0; b < q; ++b) {
      sum += c[b];
      const double kubo = oracle::kubo_chern(p, q, b, 96);
      CHECK(std::abs(kubo - c[b]) < 1e-3);
      CHECK(std::abs(harper_chern(torus, {b}, 24).raw - c[b]) < 1e-6);
    }
    CHECK(sum == 0);
    CHECK(tknn_consistent(torus, c));
  }
  CHECK(harper_band_cherns(NcTorus(1, 5), 24) == std::vector<int>{1, 1, -4, 1, 1});
  // Fermi projection onto the two lowest bands of θ = 1/3.
  CHECK(harper_chern(NcTorus(1, 3), {0, 1}, 24).chern == -1);
  CHECK(hall_conductance(-2) == "-2 e^2/h");
}

TEST_CASE("gapless selections are diagnosed") {
  // θ = 1/2: the two bands touch at Dirac points.
  CHECK_THROWS_AS(harper_chern(NcTorus(1, 2), {0}, 24), DiagnosticError);
  CHECK_THROWS_AS(harper_chern(NcTorus(1, 3), {3}, 24), DomainError);
}
