#include <doctest.h>

#include <algorithm>

#include "helpers.hpp"
#include "oracles.hpp"
#include "qha/spectral_heat.hpp"

using namespace qha;

TEST_CASE("heat flow equals the dense matrix exponential") {
  for (int n : {4, 8}) {
    const QuantumLaplacian lap(n);
    Rng rng = trial_rng(1, "heat/oracle", n);
    const QhaPair p = random_pair(n, rng);
    for (double t : {0.05, 0.5, 2.0}) {
      const QhaPair q = heat_evolve(lap, p, t);
      const auto [fo, ao] = oracle::heat(values_of(p.f), p.A.matrix(), n, t);
      CHECK(max_diff(values_of(q.f), fo) < 1e-10);
      CHECK((q.A.matrix() - ao).cwiseAbs().maxCoeff() < 1e-10);
    }
  }
}

TEST_CASE("laplacian_apply against the dense operators") {
  const int n = 5;
  const QuantumLaplacian lap(n);
  Rng rng = trial_rng(2, "heat/apply", 0);
  const QhaPair p = random_pair(n, rng);
  const QhaPair q = laplacian_apply(lap, p);
  const Eigen::MatrixXd l = oracle::grid_laplacian(n);
  const auto fv = values_of(p.f);
  for (int i = 0; i < n * n; ++i) {
    Complex s = 0.0;
    for (int j = 0; j < n * n; ++j) s += l(i, j) * fv[j];
    CHECK(std::abs(q.f[i] - s) < 1e-12);
  }
  const Eigen::MatrixXd h = oracle::cyclic_laplacian(n);
  CHECK((q.A.matrix() - (h.cast<Complex>() * p.A.matrix() + p.A.matrix() * h.cast<Complex>())).norm() < 1e-12);
}

TEST_CASE("closed-form spectra") {
  const QuantumLaplacian lap(4);
  auto mu = lap.operator_spectrum();
  const std::vector<double> expect{0.0, 2.0, 4.0, 2.0};
  for (std::size_t k = 0; k < 4; ++k) CHECK(mu[k] == doctest::Approx(expect[k]).epsilon(1e-14));
  CHECK(lap.grid_eigenvalue(1, 2) == doctest::Approx(4 * std::pow(std::sin(kPi / 4), 2) + 4.0));

  const auto elems = spectral_decompose(lap);
  CHECK(elems.size() == 32);
  std::vector<double> op_eigs;
  for (const auto& e : elems) {
    QhaPair le = laplacian_apply(lap, e.basis);
    QhaPair scaled = e.basis;
    scaled *= e.eigenvalue;
    CHECK(le.max_abs_diff(scaled) < 1e-12);
    if (lp_norm(e.basis.f, kInf) == 0.0) op_eigs.push_back(e.eigenvalue);
  }
  std::vector<double> sums;
  for (double a : expect)
    for (double b : expect) sums.push_back(a + b);
  std::sort(sums.begin(), sums.end());
  std::sort(op_eigs.begin(), op_eigs.end());
  REQUIRE(op_eigs.size() == sums.size());
  for (std::size_t i = 0; i < sums.size(); ++i) CHECK(op_eigs[i] == doctest::Approx(sums[i]).epsilon(1e-12));
}

TEST_CASE("semigroup, mass and positivity") {
  const int n = 6;
  const QuantumLaplacian lap(n);
  Rng rng = trial_rng(3, "heat/semigroup", 0);
  const QhaPair p = random_pair(n, rng);
  CHECK(heat_evolve(lap, heat_evolve(lap, p, 0.3), 0.9).max_abs_diff(heat_evolve(lap, p, 1.2)) < 1e-12);
  CHECK(heat_evolve(lap, p, 0.0).max_abs_diff(p) < 1e-12);
  const HeatState s = heat_evolve(lap, HeatState(p, 0.5), 0.25);
  CHECK(s.time == doctest::Approx(0.75));

  GridFn f(PhaseGrid(n, 2));
  f.at(1, 1) = 1.0;  // point mass: most sensitive to negative undershoot
  const QhaPair q = heat_evolve(lap, QhaPair(f, TraceOp(n)), 0.7);
  CHECK(std::abs(q.f.sum() - 1.0) < 1e-12);
  for (std::size_t i = 0; i < q.f.size(); ++i) CHECK(q.f[i].real() > -1e-12);
  CHECK_THROWS_AS(heat_evolve(lap, p, -1.0), DomainError);
}

TEST_CASE("heat residual is second order in dt") {
  const QuantumLaplacian lap(6);
  Rng rng = trial_rng(4, "heat/residual", 0);
  const QhaPair p = random_pair(6, rng);
  const double r1 = heat_residual(lap, p, 1.0, 2e-2), r2 = heat_residual(lap, p, 1.0, 1e-2);
  CHECK(std::log2(r1 / r2) == doctest::Approx(2.0).epsilon(0.01));
  CHECK(heat_residual(lap, p, 1.0, 1e-3) < 1e-6 * pair_norm(p, 2.0));
}

TEST_CASE("Sobolev exponent and ratio family") {
  CHECK(sobolev_conjugate(1.5) == doctest::Approx(6.0));
  CHECK_THROWS_AS(sobolev_conjugate(2.0), DomainError);
  const QuantumLaplacian lap(8);
  std::vector<QhaPair> fam;
  for (std::size_t t = 0; t < 12; ++t) {
    Rng rng = trial_rng(5, "heat/sob", t);
    fam.push_back(remove_kernel(lap, smooth_random_pair(8, rng, 2)));
  }
  const auto r = check_sobolev(lap, fam, 1.5);
  CHECK(r.violations == 0);
  CHECK(r.trials == 12);
  Rng rng = trial_rng(5, "heat/sob/raw", 0);
  const QhaPair raw = random_pair(8, rng);
  CHECK_THROWS_AS(sobolev_ratio(lap, raw, 1.5), DomainError);
  const QhaPair k = remove_kernel(lap, raw);
  CHECK(std::abs(k.f.sum()) < 1e-10);
}
