#include "qha/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>

#include "qha/besov_tl.hpp"
#include "qha/group_plancherel.hpp"
#include "qha/ncg_index.hpp"
#include "qha/qha_pairs.hpp"
#include "qha/spectral_heat.hpp"
#include "qha/synthesis.hpp"

namespace qha {

using nlohmann::json;

namespace {

std::string tag(double p) {
  if (p == kInf) return "inf";
  std::ostringstream os;
  os << p;
  return os.str();
}

// Shared state of one suite run.
struct Ctx {
  const SuiteConfig& cfg;
  unsigned threads;
  Report& out;

  std::uint64_t seed() const { return cfg.seed; }

  /// Times fn and appends its record; diagnostic failures become report
  /// diagnostics instead of aborting the suite.
  void check(const std::string& name, const std::function<CheckRecord()>& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    try {
      CheckRecord c = fn();
      c.name = name;
      c.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
      out.checks.push_back(std::move(c));
    } catch (const DiagnosticError& e) {
      out.diagnostics.push_back(name + ": " + e.what());
    } catch (const ConsistencyError& e) {
      out.diagnostics.push_back(name + ": " + e.what());
    }
  }

  /// Runs fn(rng, i) for cfg.trials seeded trials on the worker pool and
  /// merges in trial order.
  InequalityReport trials(const std::string& stream, std::size_t n,
                          const std::function<InequalityReport(Rng&, std::size_t)>& fn) const {
    const auto parts = parallel_map(n, threads, [&](std::size_t i) {
      Rng rng = trial_rng(cfg.seed, stream, i);
      return fn(rng, i);
    });
    InequalityReport acc(stream);
    for (const auto& p : parts) acc.merge(p);
    return acc;
  }
};

// --- lp: Fourier-Weyl exactness, Young, interpolation ----------------------

void suite_lp(Ctx& c) {
  const auto& cfg = c.cfg;
  c.check("fourier_weyl_exactness", [&] {
    std::vector<int> sizes;
    for (int n = 3; n <= 16; ++n) sizes.push_back(n);
    if (cfg.n > 16 || cfg.n < 3) sizes.push_back(cfg.n);
    const std::size_t per = std::min<std::size_t>(cfg.trials, 20);
    InequalityReport rep("fourier_weyl_exactness");
    json details = json::object();
    for (int n : sizes) {
      const auto r = c.trials("lp/fw/" + std::to_string(n), per, [&](Rng& rng, std::size_t) {
        const WeylSystem sys(n);
        const TraceOp a = random_traceop(n, rng);
        const GridFn ah = fourier_weyl(sys, a);
        const double scale = a.matrix().cwiseAbs().maxCoeff();
        const double roundtrip = inverse_fourier_weyl(sys, ah).max_abs_diff(a) / scale;
        const double hs = a.matrix().squaredNorm();
        const double l2 = std::pow(lp_norm(ah, 2.0), 2.0);
        const double plancherel = std::abs(l2 - n * hs) / (n * hs);
        InequalityReport t;
        t.record_error(std::max(roundtrip, plancherel), 1e-10);
        return t;
      });
      details[std::to_string(n)] = r.max_error;
      rep.merge(r);
    }
    auto rec = CheckRecord::from("", rep);
    rec.details = {{"max_error_by_n", details}};
    return rec;
  });

  c.check("weyl_orthogonality", [&] {
    const int n = cfg.n;
    const WeylSystem sys(n);
    std::vector<Matrix> ws;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) ws.push_back(weyl(sys, {a, b}).matrix());
    const auto rows = parallel_map(ws.size(), c.threads, [&](std::size_t i) {
      double worst = 0.0;
      for (std::size_t j = 0; j < ws.size(); ++j) {
        const Complex tr = (ws[i].conjugate().cwiseProduct(ws[j])).sum();
        worst = std::max(worst, std::abs(tr - Complex(i == j ? n : 0.0)));
      }
      return worst;
    });
    InequalityReport rep;
    for (double e : rows) rep.record_error(e, 1e-10);
    return CheckRecord::from("", rep);
  });

  for (double p : cfg.ps) {
    c.check("young[p=" + tag(p) + "]", [&] {
      return CheckRecord::from("", c.trials("lp/young/" + tag(p), cfg.trials, [&](Rng& rng, std::size_t) {
        const QhaPair a = random_pair(cfg.n, rng);
        const QhaPair b = random_pair(cfg.n, rng);
        return check_young(a, b, p);
      }));
    });
  }

  for (std::size_t i = 0; i + 1 < cfg.ps.size(); ++i) {
    const double p0 = cfg.ps[i], p1 = cfg.ps[i + 1];
    c.check("interpolation[p0=" + tag(p0) + ",p1=" + tag(p1) + "]", [&] {
      return CheckRecord::from("", c.trials("lp/interp/" + tag(p0) + "/" + tag(p1), cfg.trials,
                                            [&](Rng& rng, std::size_t) {
                                              const QhaPair a = random_pair(cfg.n, rng);
                                              InequalityReport r;
                                              for (double th : cfg.thetas) r.merge(check_interpolation(a, p0, p1, th));
                                              return r;
                                            }));
    });
  }
}

// --- duality: Hölder, dual-norm witness, Hardy-Littlewood ------------------

void suite_duality(Ctx& c) {
  const auto& cfg = c.cfg;
  for (double p : cfg.ps) {
    const double q = conjugate_exponent(p);
    c.check("holder[p=" + tag(p) + "]", [&] {
      return CheckRecord::from("", c.trials("duality/holder/" + tag(p), cfg.trials, [&](Rng& rng, std::size_t) {
        const QhaPair a = random_pair(cfg.n, rng);
        const QhaPair b = random_pair(cfg.n, rng);
        return check_holder(a, b, p);
      }));
    });

    c.check("dual_norm_witness[p=" + tag(p) + "]", [&] {
      return CheckRecord::from("", c.trials("duality/witness/" + tag(p), cfg.trials, [&](Rng& rng, std::size_t) {
        const QhaPair b = random_pair(cfg.n, rng);
        const QhaPair w = dual_norm_maximizer(b, q);
        const double target = dual_norm(b, q);
        const double attained = std::abs(duality_pairing(w, b));
        const double unit = std::abs(pair_norm(w, p) - 1.0);
        InequalityReport r;
        r.record_error(std::max(std::abs(attained - target) / target, unit), 1e-9);
        return r;
      }));
    });

    // Measurement: the sum norm overestimates the exact dual norm.
    c.check("dual_vs_sum_norm[p=" + tag(p) + "]", [&] {
      auto r = c.trials("duality/sumnorm/" + tag(p), cfg.trials, [&](Rng& rng, std::size_t) {
        const QhaPair b = random_pair(cfg.n, rng);
        InequalityReport t;
        const double ratio = pair_norm(b, q) / dual_norm(b, q);
        t.record(ratio, false);
        t.empirical_constant = ratio;
        return t;
      });
      return CheckRecord::from("", r);
    });

    if (p >= 1.0 && p <= 2.0) {
      c.check("hardy_littlewood[p=" + tag(p) + "]", [&] {
        const std::size_t inner = 8;
        return CheckRecord::from("", c.trials("duality/hl/" + tag(p), cfg.trials, [&](Rng& rng, std::size_t i) {
          const QhaPair a = random_pair(cfg.n, rng);
          return check_hardy_littlewood(a, p, inner, splitmix64(cfg.seed ^ (i + 1)));
        }));
      });
    }
  }
}

// --- uncertainty ------------------------------------------------------------

GridFn centered_gaussian(int n) {
  const PhaseGrid grid(n, 1);
  GridFn f(grid);
  const double sigma = n / 8.0;
  for (int i = 0; i < n; ++i) {
    const double x = grid.centered(i);
    f[i] = std::exp(-x * x / (2.0 * sigma * sigma));
  }
  return f;
}

void suite_uncertainty(Ctx& c) {
  const auto& cfg = c.cfg;
  c.check("uncertainty_gaussian[p=2]", [&] {
    std::vector<int> sizes;
    for (int n = std::max(cfg.n, 8); n <= 64; n *= 2) sizes.push_back(n);
    if (sizes.size() < 2) sizes = {cfg.n, 2 * cfg.n};
    const double target = 1.0 / (4.0 * kPi);
    PlotSeries series{"uncertainty_ratio_vs_n", "N", "ratio", {}};
    InequalityReport rep;
    json by_n = json::object();
    std::vector<double> ratios;
    for (int n : sizes) {
      const double r = uncertainty_ratio(centered_gaussian(n), 2.0);
      ratios.push_back(r);
      series.points.emplace_back(n, r);
      by_n[std::to_string(n)] = r;
    }
    const double last = ratios.back(), prev = ratios[ratios.size() - 2];
    const double dev = std::abs(last - target) / target;
    const double drift = std::abs(last - prev) / prev;
    for (std::size_t i = 0; i < ratios.size(); ++i)
      rep.record(ratios[i], i + 1 == ratios.size() && (dev > 0.10 || drift > 0.05));
    rep.empirical_constant = last;
    rep.max_error = dev;
    c.out.plots.push_back(series);
    auto rec = CheckRecord::from("", rep);
    rec.details = {{"ratio_by_n", by_n}, {"target", target}, {"relative_deviation", dev}, {"drift", drift}};
    return rec;
  });

  for (double p : cfg.ps) {
    c.check("uncertainty_positive[p=" + tag(p) + "]", [&] {
      auto r = c.trials("uncertainty/" + tag(p), cfg.trials, [&](Rng& rng, std::size_t) {
        return check_uncertainty(random_gridfn(PhaseGrid(cfg.n, cfg.dims), rng), p);
      });
      r.empirical_constant = r.trials ? r.min_ratio : 0.0;
      return CheckRecord::from("", r);
    });
  }
}

// --- heat -----------------------------------------------------------------

double pair_scale(const QhaPair& p) {
  double s = p.A.matrix().cwiseAbs().maxCoeff();
  for (std::size_t i = 0; i < p.f.size(); ++i) s = std::max(s, std::abs(p.f[i]));
  return s;
}

void suite_heat(Ctx& c) {
  const auto& cfg = c.cfg;
  const QuantumLaplacian lap(cfg.n);

  c.check("heat_semigroup", [&] {
    return CheckRecord::from("", c.trials("heat/semigroup", cfg.trials, [&](Rng& rng, std::size_t) {
      const QhaPair p = random_pair(cfg.n, rng);
      const double s = uniform(rng, 0.0, 2.0), t = uniform(rng, 0.0, 2.0);
      const QhaPair lhs = heat_evolve(lap, heat_evolve(lap, p, t), s);
      const QhaPair rhs = heat_evolve(lap, p, s + t);
      InequalityReport r;
      r.record_error(lhs.max_abs_diff(rhs) / pair_scale(p), 1e-10);
      return r;
    }));
  });

  c.check("heat_eigen_decay", [&] {
    const auto elems = spectral_decompose(lap);
    const std::size_t stride = std::max<std::size_t>(1, elems.size() / 512);
    std::vector<std::size_t> picks;
    for (std::size_t i = 0; i < elems.size(); i += stride) picks.push_back(i);
    const auto errs = parallel_map(picks.size(), c.threads, [&](std::size_t k) {
      const auto& e = elems[picks[k]];
      const double t = 0.7;
      QhaPair expect = e.basis;
      expect *= std::exp(-e.eigenvalue * t);
      QhaPair applied = e.basis;
      applied *= e.eigenvalue;
      const double s = pair_scale(e.basis);
      return std::max(heat_evolve(lap, e.basis, t).max_abs_diff(expect),
                      laplacian_apply(lap, e.basis).max_abs_diff(applied)) /
             s;
    });
    InequalityReport r;
    for (double e : errs) r.record_error(e, 1e-10);
    return CheckRecord::from("", r);
  });

  c.check("heat_mass_positivity", [&] {
    return CheckRecord::from("", c.trials("heat/positivity", cfg.trials, [&](Rng& rng, std::size_t) {
      GridFn f(PhaseGrid(cfg.n, 2));
      for (auto& v : f.values()) v = uniform(rng);
      const Matrix g = random_matrix(cfg.n, cfg.n, rng);
      const QhaPair p(f, TraceOp(g * g.adjoint()));
      const double t = uniform(rng, 0.0, 3.0);
      const QhaPair q = heat_evolve(lap, p, t);
      const double mass = std::abs(q.f.sum() - p.f.sum()) / std::abs(p.f.sum());
      double neg = 0.0;
      for (std::size_t i = 0; i < q.f.size(); ++i) {
        neg = std::max(neg, -q.f[i].real());
        neg = std::max(neg, std::abs(q.f[i].imag()));
      }
      Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (q.A.matrix() + q.A.matrix().adjoint()));
      const double op_neg = std::max(0.0, -es.eigenvalues().minCoeff()) / std::max(1.0, es.eigenvalues().maxCoeff());
      InequalityReport r;
      r.record_error(mass, 1e-10);
      r.violations += (neg > 1e-12 || op_neg > 1e-12) ? 1 : 0;
      return r;
    }));
  });

  c.check("heat_residual_order", [&] {
    return CheckRecord::from("", c.trials("heat/residual", std::min<std::size_t>(cfg.trials, 50), [&](Rng& rng, std::size_t) {
      const QhaPair p = random_pair(cfg.n, rng);
      const double r1 = heat_residual(lap, p, 1.0, 2e-2);
      const double r2 = heat_residual(lap, p, 1.0, 1e-2);
      const double small = heat_residual(lap, p, 1.0, 1e-3) / pair_norm(p, 2.0);
      const double order = std::log2(r1 / r2);
      InequalityReport r;
      r.record(order, std::abs(order - 2.0) > 0.25 || small > 1e-6);
      r.max_error = small;
      r.empirical_constant = order;
      return r;
    }));
  });

  for (double p : cfg.ps) {
    if (!(p > 1.0 && p < 2.0)) continue;
    c.check("sobolev[p=" + tag(p) + "]", [&] {
      const std::size_t fam = std::min<std::size_t>(cfg.trials, 40);
      auto family = [&](int n) {
        std::vector<QhaPair> out;
        const QuantumLaplacian l(n);
        for (std::size_t i = 0; i < fam; ++i) {
          Rng rng = trial_rng(cfg.seed, "heat/sobolev/" + std::to_string(n), i);
          out.push_back(remove_kernel(l, smooth_random_pair(n, rng, 2)));
        }
        return out;
      };
      const auto small = check_sobolev(lap, family(cfg.n), p);
      const QuantumLaplacian big(2 * cfg.n);
      const auto large = check_sobolev(big, family(2 * cfg.n), p);
      // Median of the smaller model bounds the doubled one.
      std::vector<double> ratios;
      for (const auto& q : family(cfg.n)) ratios.push_back(sobolev_ratio(lap, q, p));
      std::nth_element(ratios.begin(), ratios.begin() + ratios.size() / 2, ratios.end());
      const double median = ratios[ratios.size() / 2];
      InequalityReport rep = small;
      rep.merge(large);
      if (large.max_ratio > 10.0 * median) ++rep.violations;
      rep.empirical_constant = rep.max_ratio;
      auto rec = CheckRecord::from("", rep);
      rec.details = {{"max_ratio_n", small.max_ratio}, {"max_ratio_2n", large.max_ratio}, {"median_n", median}};
      return rec;
    });
  }
}

// --- plancherel -------------------------------------------------------------

std::vector<std::string> group_list(const std::string& g) {
  if (g == "all") return {"s3", "d4", "z6", "heis3"};
  return {g};
}

void suite_plancherel(Ctx& c) {
  const auto& cfg = c.cfg;
  for (const auto& gname : group_list(cfg.group)) {
    const IrrepTable table = IrrepTable::by_name(gname);
    const FiniteGroup& g = table.group();

    c.check("plancherel[" + gname + "]", [&] {
      auto r = c.trials("plancherel/" + gname, cfg.trials, [&](Rng& rng, std::size_t) {
        return check_plancherel(table, GroupQhaPair::random(g.order(), 2, rng));
      });
      auto rec = CheckRecord::from("", r);
      rec.details = {{"order", g.order()}, {"irreps", table.irreps().size()}};
      return rec;
    });

    c.check("irrep_table[" + gname + "]", [&] {
      InequalityReport r;
      r.record_error(static_cast<double>(std::llabs(table.dimension_sum() - g.order())), 0.0);
      r.record_error(table.orthogonality_defect(), 1e-10);
      auto rec = CheckRecord::from("", r);
      rec.details = {{"dimension_sum", table.dimension_sum()}, {"order", g.order()}};
      return rec;
    });

    c.check("convolution_theorem[" + gname + "]", [&] {
      return CheckRecord::from("", c.trials("plancherel/conv/" + gname, cfg.trials, [&](Rng& rng, std::size_t) {
        std::vector<Complex> f(g.order()), h(g.order());
        for (auto& v : f) v = complex_normal(rng);
        for (auto& v : h) v = complex_normal(rng);
        const auto fc = group_fourier(table, group_convolve(g, f, h));
        const auto ff = group_fourier(table, f), fh = group_fourier(table, h);
        double err = 0.0, scale = 0.0;
        for (std::size_t i = 0; i < fc.size(); ++i) {
          err = std::max(err, (fc[i] - ff[i] * fh[i]).cwiseAbs().maxCoeff());
          scale = std::max(scale, fc[i].cwiseAbs().maxCoeff());
        }
        InequalityReport r;
        r.record_error(err / std::max(1.0, scale), 1e-10);
        return r;
      }));
    });

    // Induction from the cyclic subgroup generated by the first generator,
    // through every character of it.
    c.check("frobenius_induction[" + gname + "]", [&] {
      const int s = g.generators().front();
      std::vector<int> sub{g.identity()};
      for (int x = s; x != g.identity(); x = g.mul(x, s)) sub.push_back(x);
      const int m = static_cast<int>(sub.size());
      InequalityReport r;
      for (int k = 0; k < m; ++k) {
        std::vector<Complex> sigma(m);
        for (int j = 0; j < m; ++j) sigma[j] = std::polar(1.0, 2.0 * kPi * k * j / m);
        const Irrep ind = induce(g, sub, sigma);
        double err = std::max(homomorphism_defect(g, ind), unitarity_defect(ind));
        for (const auto& cls : g.conjugacy_classes())
          for (int el : cls) err = std::max(err, std::abs(ind.mats[el].trace() - frobenius_character(g, sub, sigma, el)));
        r.record_error(err, 1e-12);
      }
      auto rec = CheckRecord::from("", r);
      rec.details = {{"subgroup_order", m}, {"classes", g.conjugacy_classes().size()}};
      return rec;
    });

    for (double p : cfg.ps) {
      c.check("group_uncertainty[" + gname + ",p=" + tag(p) + "]", [&] {
        auto r = c.trials("plancherel/unc/" + gname + "/" + tag(p), cfg.trials, [&](Rng& rng, std::size_t) {
          std::vector<Complex> f(g.order());
          for (auto& v : f) v = complex_normal(rng);
          return check_group_uncertainty(table, f, p);
        });
        r.empirical_constant = r.trials ? r.min_ratio : 0.0;
        return CheckRecord::from("", r);
      });
    }
  }
}

// --- besov -------------------------------------------------------------------

void suite_besov(Ctx& c) {
  const auto& cfg = c.cfg;
  const DyadicPartition ind(cfg.n, DyadicPartition::Kind::Indicator);
  const DyadicPartition smooth(cfg.n, DyadicPartition::Kind::Smooth);

  c.check("partition_exactness", [&] {
    InequalityReport r;
    r.record_error(ind.partition_defect(), 1e-10);
    r.record_error(smooth.partition_defect(), 1e-10);
    auto rec = CheckRecord::from("", r);
    rec.details = {{"bands", ind.band_count()}};
    return rec;
  });

  c.check("lp_equivalence[p=2]", [&] {
    return CheckRecord::from("", c.trials("besov/lp2", cfg.trials, [&](Rng& rng, std::size_t) {
      return check_lp_equivalence(ind, random_pair(cfg.n, rng), 2.0);
    }));
  });

  for (double p : cfg.ps) {
    if (p == 2.0 || p == kInf) continue;
    c.check("lp_equivalence_measured[p=" + tag(p) + "]", [&] {
      auto r = c.trials("besov/lp/" + tag(p), cfg.trials, [&](Rng& rng, std::size_t) {
        return check_lp_equivalence(smooth, random_pair(cfg.n, rng), p);
      });
      return CheckRecord::from("", r);
    });
  }

  std::vector<double> ss = cfg.ss;
  std::sort(ss.begin(), ss.end());
  std::vector<double> ps;
  for (double p : cfg.ps) ps.push_back(p);
  std::sort(ps.begin(), ps.end());

  c.check("embedding", [&] {
    auto r = c.trials("besov/embedding", cfg.trials, [&](Rng& rng, std::size_t) {
      const QhaPair a = random_pair(cfg.n, rng);
      const BandDecomposition bi(ind, a), bs(smooth, a);
      InequalityReport t;
      for (std::size_t i = 0; i + 1 < ss.size(); ++i)
        for (std::size_t k = 0; k + 1 < ps.size(); ++k)
          for (double q : cfg.qs) {
            t.merge(check_embedding(bi, {ss[i + 1], ps[k], q}, {ss[i], ps[k + 1], q}));
            t.merge(check_embedding(bs, {ss[i + 1], ps[k], q}, {ss[i], ps[k], q}));
          }
      return t;
    });
    return CheckRecord::from("", r);
  });

  c.check("besov_interpolation[q=inf]", [&] {
    auto r = c.trials("besov/interp", cfg.trials, [&](Rng& rng, std::size_t) {
      const BandDecomposition bi(ind, random_pair(cfg.n, rng));
      InequalityReport t;
      for (std::size_t i = 0; i + 1 < ss.size(); ++i)
        for (double th : cfg.thetas)
          for (double p : ps) t.merge(check_besov_interpolation(bi, ss[i], ss[i + 1], th, p, kInf));
      return t;
    });
    return CheckRecord::from("", r);
  });

  c.check("besov_interpolation_measured[q<inf]", [&] {
    auto r = c.trials("besov/interp_q", cfg.trials, [&](Rng& rng, std::size_t) {
      const BandDecomposition bi(ind, random_pair(cfg.n, rng));
      InequalityReport t;
      for (double q : cfg.qs)
        if (q != kInf)
          for (std::size_t i = 0; i + 1 < ss.size(); ++i) t.merge(check_besov_interpolation(bi, ss[i], ss[i + 1], 0.5, 2.0, q));
      return t;
    });
    r.violations = 0;  // reported only
    return CheckRecord::from("", r);
  });

  for (double p : cfg.ps) {
    if (!(p >= 1.0 && p <= 2.0)) continue;
    c.check("schatten_embedding[p=" + tag(p) + "]", [&] {
      return CheckRecord::from("", c.trials("besov/schatten/" + tag(p), cfg.trials, [&](Rng& rng, std::size_t) {
        return check_schatten_embedding(random_pair(cfg.n, rng), p);
      }));
    });
  }
}

// --- ncg -----------------------------------------------------------------

int negative_count(const Matrix& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (h + h.adjoint()), Eigen::EigenvaluesOnly);
  int k = 0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) k += es.eigenvalues()[i] < 0 ? 1 : 0;
  return k;
}

Matrix random_hermitian(int n, Rng& rng) {
  const Matrix g = random_matrix(n, n, rng);
  return 0.5 * (g + g.adjoint());
}

void suite_ncg(Ctx& c) {
  const auto& cfg = c.cfg;

  c.check("mckean_singer", [&] {
    return CheckRecord::from("", c.trials("ncg/ms", cfg.trials, [&](Rng& rng, std::size_t) {
      const int plus = 1 + static_cast<int>(uniform(rng) * 5);
      const int minus = 1 + static_cast<int>(uniform(rng) * 5);
      const SpectralTriple t = SpectralTriple::random_graded(plus, minus, rng);
      const int idx = fredholm_index(t);
      InequalityReport r;
      for (double time : {0.1, 1.0, 10.0}) r.record_error(std::abs(mckean_singer(t, time) - idx), 1e-8);
      return r;
    }));
  });

  c.check("index_pairing_measured", [&] {
    auto r = c.trials("ncg/pairing", cfg.trials, [&](Rng& rng, std::size_t) {
      const SpectralTriple t = SpectralTriple::random_graded(3, 2, rng);
      const Matrix u = random_unitary(t.dim(), rng);
      const Matrix proj = u.leftCols(2) * u.leftCols(2).adjoint();
      InequalityReport s;
      const double v = std::abs(index_pairing(t, proj));
      s.record(v, false);
      s.max_error = v;
      return s;
    });
    auto rec = CheckRecord::from("", r);
    rec.details = {{"note", "measured only; compared against fredholm_index, no equality asserted"}};
    return rec;
  });

  c.check("spectral_flow", [&] {
    return CheckRecord::from("", c.trials("ncg/flow", std::min<std::size_t>(cfg.trials, 20), [&](Rng& rng, std::size_t) {
      const int n = 6;
      const Matrix a = random_hermitian(n, rng);
      const Matrix b = random_hermitian(n, rng);
      const int flow = spectral_flow([&](double t) -> Matrix { return (1.0 - t) * a + t * b; });
      const int expected = (signature(b) - signature(a)) / 2;
      const int sampled = spectral_flow(std::vector<Matrix>{a, b});
      InequalityReport r;
      r.record(flow, flow != expected || sampled != expected || expected != negative_count(a) - negative_count(b));
      return r;
    }));
  });

  c.check("kms", [&] {
    return CheckRecord::from("", c.trials("ncg/kms", cfg.trials, [&](Rng& rng, std::size_t) {
      const int n = std::min(cfg.n, 8);
      const ModularData m = ModularData::random(n, rng);
      const Matrix a = random_matrix(n, n, rng), b = random_matrix(n, n, rng);
      const double t = uniform(rng, -3.0, 3.0);
      const double scale = a.norm() * b.norm();
      // φ(A σ_{-i}(B)) = φ(BA) and φ(σ_t(A)) = φ(A).
      const double kms = std::abs(m.state(a * modular_flow(m, b, Complex(0.0, -1.0))) - m.state(b * a)) / scale;
      const double inv = std::abs(m.state(modular_flow(m, a, t)) - m.state(a)) / a.norm();
      InequalityReport r;
      r.record_error(std::max(kms, inv), 1e-10);
      return r;
    }));
  });

  c.check("tomita_intertwining_measured", [&] {
    auto r = c.trials("ncg/tomita", cfg.trials, [&](Rng& rng, std::size_t) {
      const int n = std::min(cfg.n, 8);
      const ModularData m = ModularData::random(n, rng);
      return check_tomita_intertwining(m, WeylSystem(n), random_matrix(n, n, rng), uniform(rng, -1.0, 1.0));
    });
    auto rec = CheckRecord::from("", r);
    rec.details = {{"note", "measurement only"}};
    return rec;
  });

  c.check("triple_commutators_measured", [&] {
    auto r = c.trials("ncg/triple", std::min<std::size_t>(cfg.trials, 50), [&](Rng& rng, std::size_t) {
      const SpectralTriple t = SpectralTriple::random_graded(3, 3, rng);
      const TripleReport tr = check_triple(t);
      InequalityReport s;
      for (double v : tr.commutator) s.record(v, !std::isfinite(v));
      return s;
    });
    return CheckRecord::from("", r);
  });
}

// --- hall ------------------------------------------------------------------

void suite_hall(Ctx& c) {
  const auto& cfg = c.cfg;
  const NcTorus torus(cfg.torus_p, cfg.torus_q);
  const std::string label = std::to_string(cfg.torus_p) + "/" + std::to_string(cfg.torus_q);
  c.check("harper_chern[theta=" + label + "]", [&] {
    const auto bands = parallel_map(static_cast<std::size_t>(cfg.torus_q), c.threads, [&](std::size_t b) {
      return harper_chern(torus, {static_cast<int>(b)}, cfg.mesh);
    });
    std::vector<int> cherns;
    json raw = json::array(), gaps = json::array(), sigma = json::array();
    InequalityReport r;
    int total = 0;
    for (const auto& b : bands) {
      cherns.push_back(b.chern);
      raw.push_back(b.raw);
      gaps.push_back(b.min_gap);
      total += b.chern;
      r.record_error(std::abs(b.raw - b.chern), 1e-6);
    }
    int cumulative = 0;
    for (std::size_t g = 0; g + 1 < cherns.size(); ++g) {
      cumulative += cherns[g];
      sigma.push_back(hall_conductance(cumulative));
    }
    const bool tknn = tknn_consistent(torus, cherns);
    if (total != 0 || !tknn) ++r.violations;
    auto rec = CheckRecord::from("", r);
    rec.details = {{"band_cherns", cherns}, {"raw", raw},       {"min_gap", gaps}, {"sum", total},
                   {"tknn", tknn},          {"sigma_H_gaps", sigma}, {"mesh", cfg.mesh}};
    return rec;
  });
}

// --- synthesis ------------------------------------------------------------------

void suite_synthesis(Ctx& c) {
  const auto& cfg = c.cfg;
  c.check("wiener_approximation", [&] {
    const int full = cfg.n / 2;
    PlotSeries series{"wiener_error_vs_degree", "degree", "error", {}};
    auto r = c.trials("synthesis/wiener", std::min<std::size_t>(cfg.trials, 50), [&](Rng& rng, std::size_t) {
      const QhaPair a = random_pair(cfg.n, rng);
      InequalityReport t;
      double prev = kInf;
      bool monotone = true;
      for (int d = 0; d <= full; ++d) {
        const double e = wiener_approximate(a, d).error;
        monotone = monotone && e <= prev * (1.0 + 1e-12) + 1e-14;
        prev = e;
      }
      t.record_error(prev, 1e-12);
      if (!monotone) ++t.violations;
      return t;
    });
    Rng rng = trial_rng(cfg.seed, "synthesis/wiener", 0);
    const QhaPair a = random_pair(cfg.n, rng);
    for (int d = 0; d <= full; ++d) series.points.emplace_back(d, wiener_approximate(a, d).error);
    c.out.plots.push_back(series);
    return CheckRecord::from("", r);
  });

  Rng zrng = trial_rng(cfg.seed, "synthesis/zero_set", 0);
  FourierSupport z = FourierSupport::random(cfg.n, 0.3, zrng);
  const IdealSpec ideal{z};

  c.check("spectral_synthesis", [&] {
    auto rec = CheckRecord::from("", check_synthesis(ideal, cfg.trials, cfg.seed));
    rec.details = {{"zero_set_bits", z.bits()}, {"zero_set_size", z.count()}};
    return rec;
  });

  std::vector<double> constants;
  PlotSeries drift{"stability_drift_vs_eps", "eps", "max_drift", {}};
  for (double e : cfg.eps) {
    c.check("ideal_stability[eps=" + tag(e) + "]", [&] {
      const auto r = check_ideal_stability(ideal, e, cfg.trials, cfg.seed);
      constants.push_back(r.empirical_constant);
      drift.points.emplace_back(e, r.max_error);
      auto rec = CheckRecord::from("", r);
      rec.details = {{"observed_C", r.empirical_constant}};
      return rec;
    });
  }
  c.out.plots.push_back(drift);
  if (constants.size() >= 2) {
    c.check("stability_linearity", [&] {
      InequalityReport r;
      for (double k : constants) r.record_error(std::abs(k / constants.front() - 1.0), 1e-6);
      auto rec = CheckRecord::from("", r);
      rec.details = {{"observed_C", constants}};
      return rec;
    });
  }
}

using SuiteFn = void (*)(Ctx&);

const std::map<std::string, SuiteFn>& registry() {
  static const std::map<std::string, SuiteFn> m{
      {"lp", suite_lp},           {"duality", suite_duality}, {"uncertainty", suite_uncertainty},
      {"heat", suite_heat},       {"plancherel", suite_plancherel}, {"besov", suite_besov},
      {"ncg", suite_ncg},         {"hall", suite_hall},        {"synthesis", suite_synthesis}};
  return m;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"lp",    "duality", "uncertainty", "heat",     "plancherel",
                                              "besov", "ncg",     "hall",        "synthesis"};
  return names;
}

Report run_suite(const SuiteConfig& cfg, unsigned threads) {
  if (cfg.suite != "all" && !registry().count(cfg.suite))
    throw UsageError("unknown suite '" + cfg.suite + "'");
  cfg.validate();
  Report rep;
  rep.suite = cfg.suite;
  rep.config = cfg.to_json();
  Ctx ctx{cfg, std::max(1u, threads), rep};
  if (cfg.suite == "all") {
    for (const auto& name : suite_names()) {
      SuiteConfig sub = cfg;
      sub.suite = name;
      Report part;
      Ctx pc{sub, ctx.threads, part};
      registry().at(name)(pc);
      for (auto& ch : part.checks) ch.name = name + "/" + ch.name;
      rep.append(part);
    }
  } else {
    registry().at(cfg.suite)(ctx);
  }
  return rep;
}

}  // namespace qha
