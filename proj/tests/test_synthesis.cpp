#include <doctest.h>

#include "qha/synthesis.hpp"

using namespace qha;

TEST_CASE("joint transform round trip and scale") {
  Rng rng = trial_rng(1, "syn/rt", 0);
  const QhaPair p = random_pair(6, rng);
  const JointTransform t = joint_transform(p);
  CHECK(from_joint_transform(t).max_abs_diff(p) < 1e-12);
  // Both parts unitary: l² norms are preserved.
  CHECK(lp_norm(t.a_hat, 2.0) == doctest::Approx(p.A.matrix().norm()).epsilon(1e-12));
  CHECK(lp_norm(t.f_hat, 2.0) == doctest::Approx(lp_norm(p.f, 2.0)).epsilon(1e-12));
}

TEST_CASE("Wiener approximation error is nonincreasing and vanishes at full degree") {
  for (int n : {5, 8}) {
    Rng rng = trial_rng(2, "syn/wiener", n);
    const QhaPair p = random_pair(n, rng);
    double prev = kInf;
    for (int d = 0; d <= n / 2; ++d) {
      const auto w = wiener_approximate(p, d);
      CHECK(w.error <= prev * (1 + 1e-12));
      prev = w.error;
    }
    CHECK(prev < 1e-12);
    CHECK(wiener_approximate(p, 0).error > 0.0);
  }
  Rng rng = trial_rng(2, "syn/wiener/err", 0);
  CHECK_THROWS_AS(wiener_approximate(random_pair(4, rng), -1), DomainError);
}

TEST_CASE("supports") {
  const FourierSupport b = FourierSupport::box(8, 1);
  CHECK(b.count() == 9);
  CHECK(b.complement().count() == 55);
  CHECK_THROWS_AS(FourierSupport(4, std::vector<char>(15, 0)), ShapeError);
  Rng rng = trial_rng(3, "syn/support", 0);
  const QhaPair p = random_pair(8, rng);
  CHECK_THROWS_AS(band_project(p, FourierSupport::box(6, 1)), ShapeError);
}

TEST_CASE("zero set of a band-projected pair is the removed set") {
  Rng rng = trial_rng(4, "syn/zero", 0);
  const FourierSupport z = FourierSupport::random(6, 0.3, rng);
  const QhaPair member = band_project(random_pair(6, rng), z.complement());
  CHECK(zero_set(member, 1e-9) == z);
  CHECK(zero_set(QhaPair::zero(6), 1e-9).count() == 36);
  CHECK_THROWS_AS(zero_set(member, 0.0), DomainError);
}

TEST_CASE("synthesis and closure of the ideal") {
  Rng rng = trial_rng(5, "syn/ideal", 0);
  const IdealSpec ideal{FourierSupport::random(6, 0.4, rng)};
  const auto r = check_synthesis(ideal, 20, 11);
  CHECK(r.trials == 20);
  CHECK(r.violations == 0);
  CHECK(r.max_error < 1e-12);
}

TEST_CASE("stability under leakage: zero set recovered, drift linear in epsilon") {
  Rng rng = trial_rng(6, "syn/stab", 0);
  const IdealSpec ideal{FourierSupport::random(6, 0.3, rng)};
  std::vector<double> c;
  for (double eps : {1e-6, 1e-4, 1e-2}) {
    const auto r = check_ideal_stability(ideal, eps, 30, 5);
    CHECK(r.violations == 0);
    CHECK(r.empirical_constant <= 1.0);
    c.push_back(r.empirical_constant);
  }
  CHECK(c[1] == doctest::Approx(c[0]).epsilon(1e-6));
  CHECK(c[2] == doctest::Approx(c[0]).epsilon(1e-6));

  // Perturbed members carry leakage of at most eps on Z and at least 1/2 off Z.
  Rng mrng = trial_rng(6, "syn/member", 0);
  const QhaPair m = perturbed_member(ideal, 1e-3, mrng);
  const JointTransform t = joint_transform(m);
  for (std::size_t i = 0; i < t.f_hat.size(); ++i) {
    const double lo = std::min(std::abs(t.f_hat[i]), std::abs(t.a_hat[i]));
    const double hi = std::max(std::abs(t.f_hat[i]), std::abs(t.a_hat[i]));
    if (ideal.zero_set.contains(i))
      CHECK(hi <= 1e-3 + 1e-12);
    else
      CHECK(lo >= 0.5 - 1e-12);
  }
  CHECK_THROWS_AS(check_ideal_stability(ideal, -1.0, 1, 1), DomainError);
}
