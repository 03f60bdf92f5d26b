#include <doctest.h>

#include "helpers.hpp"
#include "oracles.hpp"
#include "qha/phase_space.hpp"

using namespace qha;

TEST_CASE("grid indexing wraps and centers") {
  const PhaseGrid g(5, 2);
  CHECK(g.size() == 25);
  CHECK(g.centered(2) == 2);
  CHECK(g.centered(3) == -2);
  CHECK(g.wrap(-1) == 4);
  CHECK(g.wrap(12) == 2);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto idx = g.unflatten(i);
    CHECK(g.flatten(idx) == i);
  }
  const PhaseGrid even(8, 1);
  CHECK(even.centered(4) == -4);
  CHECK(even.centered(3) == 3);
}

TEST_CASE("fourier matches the naive DFT and is unitary") {
  for (int n : {3, 5, 8}) {
    Rng rng = trial_rng(1, "ps/dft", n);
    const GridFn f = random_gridfn(PhaseGrid(n, 2), rng);
    const GridFn fh = fourier(f);
    CHECK(max_diff(values_of(fh), oracle::dft2(values_of(f), n)) < 1e-12);
    CHECK(std::abs(lp_norm(fh, 2.0) - lp_norm(f, 2.0)) < 1e-12);
    CHECK(inverse_fourier(fh).max_abs_diff(f) < 1e-12);
  }
  Rng rng = trial_rng(1, "ps/dft1", 0);
  const GridFn f = random_gridfn(PhaseGrid(7, 1), rng);
  CHECK(max_diff(values_of(fourier(f)), oracle::dft1(values_of(f))) < 1e-12);
}

TEST_CASE("convolution matches the direct sum and obeys Young") {
  const int n = 6;
  Rng rng = trial_rng(2, "ps/conv", 0);
  const GridFn f = random_gridfn(PhaseGrid(n, 2), rng);
  const GridFn g = random_gridfn(PhaseGrid(n, 2), rng);
  const GridFn c = convolve(f, g);
  CHECK(max_diff(values_of(c), oracle::convolve2(values_of(f), values_of(g), n)) < 1e-11);
  for (double p : {1.0, 2.0, 3.5, kInf}) CHECK(lp_norm(c, p) <= lp_norm(f, 1.0) * lp_norm(g, p) * (1 + 1e-12));
  // Delta is the unit.
  CHECK(convolve(f, GridFn::delta(f.grid())).max_abs_diff(f) < 1e-12);
}

TEST_CASE("translate is a cyclic shift and an isometry") {
  Rng rng = trial_rng(3, "ps/shift", 0);
  const PhaseGrid g(5, 2);
  const GridFn f = random_gridfn(g, rng);
  const int off[2] = {2, -1};
  const GridFn t = translate(f, off);
  CHECK(t.at(2, -1) == f.at(0, 0));
  CHECK(t.at(3, 4) == f.at(1, 5));
  for (double p : {1.0, 2.0, kInf}) CHECK(std::abs(lp_norm(t, p) - lp_norm(f, p)) < 1e-12);
}

TEST_CASE("lp norms against the oracle") {
  Rng rng = trial_rng(4, "ps/lp", 0);
  const GridFn f = random_gridfn(PhaseGrid(4, 2), rng);
  for (double p : {1.0, 1.5, 2.0, 3.0, kInf}) CHECK(std::abs(lp_norm(f, p) - oracle::lp(values_of(f), p)) < 1e-12);
  CHECK(lp_norm(GridFn(PhaseGrid(4, 2)), 2.0) == 0.0);
}

TEST_CASE("shape and domain errors") {
  const GridFn a(PhaseGrid(4, 2)), b(PhaseGrid(5, 2));
  CHECK_THROWS_AS(convolve(a, b), ShapeError);
  CHECK_THROWS_AS(lp_norm(a, 0.5), DomainError);
  CHECK_THROWS_AS(PhaseGrid(0, 2), DomainError);
}
