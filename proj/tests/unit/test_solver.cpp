#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "foeed/masks.hpp"
#include "foeed/metrics.hpp"
#include "foeed/solver.hpp"
#include "oracles.hpp"

namespace foeed {
namespace {

SolverConfig config(ModelKind model) { return SolverConfig::for_model(model); }

Mask single_unknown(int w, int h, int x, int y) {
  Mask m(w, h, true);
  m.set(x, y, false);
  return m;
}

TEST(Config, DefaultsAndValidation) {
  const SolverConfig eed = SolverConfig::for_model(ModelKind::EED);
  EXPECT_EQ(eed.tau, 0.25);
  const SolverConfig foeed = SolverConfig::for_model(ModelKind::FOEED);
  EXPECT_EQ(foeed.tau, 0.05);
  EXPECT_EQ(SolverConfig::for_model(ModelKind::Li1).tau, 1.0 / 32.0);
  EXPECT_EQ(foeed.sigma, 1.0);
  EXPECT_EQ(foeed.fsi_n, 40);
  EXPECT_EQ(foeed.stop_tol, 1e-4);
  EXPECT_EQ(foeed.mu3, Mu3Rule::GeometricMean);
  EXPECT_EQ(foeed.diffusivity.kind(), DiffusivityKind::Charbonnier);
  EXPECT_EQ(foeed.diffusivity.lambda(), 0.1);

  SolverConfig bad;
  bad.tau = 0.0;
  EXPECT_THROW(bad.validate(), std::invalid_argument);
  bad = SolverConfig{};
  bad.fsi_n = 0;
  EXPECT_THROW(bad.validate(), std::invalid_argument);
  bad = SolverConfig{};
  bad.stop_tol = -1;
  EXPECT_THROW(bad.validate(), std::invalid_argument);
}

TEST(Config, ModelNames) {
  for (ModelKind m : kAllModels) EXPECT_EQ(parse_model(to_string(m)), m);
  EXPECT_FALSE(parse_model("tv"));
  EXPECT_FALSE(is_fourth_order(ModelKind::EED));
  EXPECT_TRUE(is_fourth_order(ModelKind::Li2));
  for (InitStrategy i : {InitStrategy::Mean, InitStrategy::Zero, InitStrategy::Nearest})
    EXPECT_EQ(parse_init(to_string(i)), i);
}

TEST(Rhs, ConstantImageIsZero) {
  const ImageGrid c(9, 7, 100.0);
  for (ModelKind m : kAllModels) {
    const ImageGrid r = rhs(c, config(m));
    for (double v : r.values()) EXPECT_NEAR(v, 0.0, 1e-12) << to_string(m);
  }
}

TEST(Rhs, RampIsZeroForFoeed) {
  ImageGrid ramp(9, 9);
  for (int y = 0; y < 9; ++y)
    for (int x = 0; x < 9; ++x) ramp(x, y) = 3.0 * x + 2.0 * y;
  // The mirror boundary bends the ramp at the border, so check the interior
  // where every stencil sees the plane.
  const ImageGrid r = rhs(ramp, config(ModelKind::FOEED));
  for (int y = 3; y < 6; ++y)
    for (int x = 3; x < 6; ++x) EXPECT_NEAR(r(x, y), 0.0, 1e-12);
}

TEST(Rhs, FoeedMatchesComposedOracle) {
  std::mt19937_64 rng(1);
  for (Mu3Rule rule : {Mu3Rule::One, Mu3Rule::ArithmeticMean, Mu3Rule::GeometricMean}) {
    SolverConfig cfg = config(ModelKind::FOEED);
    cfg.mu3 = rule;
    for (int n = 0; n < 5; ++n) {
      const ImageGrid u = oracle::random_image(8, 8, rng);
      EXPECT_LE(oracle::max_abs_diff(rhs(u, cfg), oracle::foeed_rhs(u, cfg)), 1e-9);
    }
  }
}

TEST(Rhs, EedMatchesComposedOracle) {
  std::mt19937_64 rng(2);
  for (double sigma : {0.0, 1.0}) {
    SolverConfig cfg = config(ModelKind::EED);
    cfg.sigma = sigma;
    for (int n = 0; n < 5; ++n) {
      const ImageGrid u = oracle::random_image(8, 7, rng);
      EXPECT_LE(oracle::max_abs_diff(rhs(u, cfg), oracle::eed_rhs(u, cfg)), 1e-9);
    }
  }
}

TEST(Rhs, RejectsTinyGrids) {
  EXPECT_THROW(rhs(ImageGrid(2, 8), config(ModelKind::FOEED)), std::invalid_argument);
}

TEST(ExplicitStep, AllKnownReturnsData) {
  std::mt19937_64 rng(3);
  const ImageGrid f = oracle::random_image(6, 6, rng);
  const ImageGrid u = oracle::random_image(6, 6, rng);
  SolverConfig cfg = config(ModelKind::FOEED);
  cfg.tau = 100.0;
  EXPECT_EQ(explicit_step(u, f, Mask(6, 6, true), cfg), f);
}

TEST(ExplicitStep, NoKnownConstantUnchanged) {
  const ImageGrid u(6, 6, 12.0);
  EXPECT_EQ(explicit_step(u, ImageGrid(6, 6), Mask(6, 6, false), config(ModelKind::EED)), u);
}

TEST(ExplicitStep, SingleUnknownEedMatchesStencil) {
  std::mt19937_64 rng(4);
  const ImageGrid f = oracle::random_image(5, 5, rng);
  ImageGrid u = f;
  u(2, 2) = 40.0;
  SolverConfig cfg = config(ModelKind::EED);
  cfg.tau = 0.1;
  const ImageGrid r = oracle::eed_rhs(u, cfg);
  const ImageGrid next = explicit_step(u, f, single_unknown(5, 5, 2, 2), cfg);
  for (int y = 0; y < 5; ++y)
    for (int x = 0; x < 5; ++x) {
      if (x == 2 && y == 2) {
        EXPECT_NEAR(next(x, y), 40.0 + 0.1 * r(2, 2), 1e-10);
      } else {
        EXPECT_EQ(next(x, y), f(x, y));
      }
    }
}

TEST(Fsi, Weights) {
  EXPECT_DOUBLE_EQ(fsi_alpha(0), 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(fsi_alpha(1), 6.0 / 5.0);
  EXPECT_DOUBLE_EQ(fsi_alpha(2), 10.0 / 7.0);
  for (int k = 0; k < 40; ++k) EXPECT_EQ(fsi_alpha(k), (4.0 * k + 2.0) / (2.0 * k + 3.0));
}

TEST(Fsi, AllKnownReturnsData) {
  std::mt19937_64 rng(5);
  const ImageGrid f = oracle::random_image(6, 6, rng);
  EXPECT_EQ(fsi_cycle(oracle::random_image(6, 6, rng), f, Mask(6, 6, true), config(ModelKind::FOEED)), f);
}

TEST(Fsi, SingleInnerStepIsWeightedExplicitStep) {
  std::mt19937_64 rng(6);
  const ImageGrid f = oracle::random_image(5, 5, rng);
  const ImageGrid u = oracle::random_image(5, 5, rng);
  Mask mask(5, 5, false);
  mask.set(0, 0, true);
  mask.set(4, 3, true);
  SolverConfig cfg = config(ModelKind::FOEED);
  cfg.fsi_n = 1;
  const ImageGrid r = oracle::foeed_rhs(u, cfg);
  const ImageGrid out = fsi_cycle(u, f, mask, cfg);
  const double a0 = 2.0 / 3.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const int x = static_cast<int>(i % 5), y = static_cast<int>(i / 5);
    if (mask.known(x, y)) {
      EXPECT_EQ(out[i], f[i]);
    } else {
      EXPECT_NEAR(out[i], a0 * (u[i] + cfg.tau * r[i]) + (1 - a0) * u[i], 1e-9);
    }
  }
}

TEST(Fsi, TwoInnerStepsUseExtrapolation) {
  std::mt19937_64 rng(7);
  const ImageGrid f = oracle::random_image(6, 6, rng);
  const ImageGrid u0 = oracle::random_image(6, 6, rng);
  const Mask mask = random_mask(6, 6, 0.3, 1);
  SolverConfig cfg = config(ModelKind::EED);
  cfg.fsi_n = 2;
  auto reset = [&](ImageGrid v) {
    for (std::size_t i = 0; i < v.size(); ++i)
      if (mask.known(static_cast<int>(i % 6), static_cast<int>(i / 6))) v[i] = f[i];
    return v;
  };
  ImageGrid u1 = u0, u2 = u0;
  const ImageGrid r0 = oracle::eed_rhs(u0, cfg);
  for (std::size_t i = 0; i < u0.size(); ++i) u1[i] = fsi_alpha(0) * (u0[i] + cfg.tau * r0[i]) + (1 - fsi_alpha(0)) * u0[i];
  u1 = reset(u1);
  const ImageGrid r1 = oracle::eed_rhs(u1, cfg);
  for (std::size_t i = 0; i < u0.size(); ++i) u2[i] = fsi_alpha(1) * (u1[i] + cfg.tau * r1[i]) + (1 - fsi_alpha(1)) * u0[i];
  u2 = reset(u2);
  EXPECT_LE(oracle::max_abs_diff(fsi_cycle(u0, f, mask, cfg), u2), 1e-9);
}

TEST(ExplicitBlock, RepeatsExplicitSteps) {
  std::mt19937_64 rng(8);
  const ImageGrid f = oracle::random_image(7, 7, rng);
  const Mask mask = random_mask(7, 7, 0.2, 3);
  SolverConfig cfg = config(ModelKind::FOEED);
  cfg.fsi_n = 3;
  ImageGrid u = initialize(f, mask, InitStrategy::Mean);
  const ImageGrid block = explicit_block(u, f, mask, cfg);
  for (int k = 0; k < 3; ++k) u = explicit_step(u, f, mask, cfg);
  EXPECT_LE(oracle::max_abs_diff(block, u), 1e-12);
}

TEST(StepBound, PrintedFormula) {
  EXPECT_DOUBLE_EQ(stable_step_bound(1, 1), 1.0 / 17.0);
  EXPECT_DOUBLE_EQ(stable_step_bound(2, 2), 1.0 / 68.0);
  EXPECT_DOUBLE_EQ(stable_step_bound(1, 2), 1.0 / 42.0);
  EXPECT_THROW(stable_step_bound(0, 1), std::invalid_argument);
}

TEST(Initialize, Strategies) {
  ImageGrid f(4, 3, 0.0);
  Mask mask(4, 3, false);
  f(0, 0) = 10.0;
  f(3, 2) = 30.0;
  mask.set(0, 0, true);
  mask.set(3, 2, true);
  const ImageGrid mean = initialize(f, mask, InitStrategy::Mean);
  EXPECT_EQ(mean(0, 0), 10.0);
  EXPECT_EQ(mean(3, 2), 30.0);
  EXPECT_EQ(mean(1, 1), 20.0);
  const ImageGrid zero = initialize(f, mask, InitStrategy::Zero);
  EXPECT_EQ(zero(1, 1), 0.0);
  EXPECT_EQ(zero(0, 0), 10.0);
  const ImageGrid near = initialize(f, mask, InitStrategy::Nearest);
  EXPECT_EQ(near(1, 0), 10.0);
  EXPECT_EQ(near(3, 1), 30.0);
  EXPECT_EQ(near(2, 2), 30.0);
}

TEST(Run, AllKnownIsIdentityInOneCycle) {
  std::mt19937_64 rng(9);
  const ImageGrid f = oracle::random_image(8, 8, rng);
  const RunResult r = run(f, Mask(8, 8, true), config(ModelKind::FOEED));
  EXPECT_EQ(r.image, f);
  EXPECT_EQ(r.report.cycles_run, 1);
  EXPECT_TRUE(r.report.converged);
}

TEST(Run, ConstantDataIsFixedPoint) {
  const ImageGrid f(16, 16, 77.0);
  for (ModelKind m : kAllModels) {
    const RunResult r = run(f, random_mask(16, 16, 0.1, 4), config(m));
    EXPECT_TRUE(r.report.converged) << to_string(m);
    EXPECT_LE(r.report.cycles_run, 2);
    for (double v : r.image.values()) EXPECT_NEAR(v, 77.0, 1e-9);
  }
}

TEST(Run, DirichletExactAndConverges) {
  std::mt19937_64 rng(10);
  const ImageGrid f = oracle::smooth(oracle::random_image(24, 24, rng), 2.0);
  const Mask mask = random_mask(24, 24, 0.1, 5);
  for (ModelKind m : kAllModels) {
    SolverConfig cfg = config(m);
    // Li2 only diffuses along level lines and keeps drifting.
    if (m == ModelKind::Li2) cfg.max_cycles = 50;
    const RunResult r = run(f, mask, cfg);
    if (m != ModelKind::Li2) {
      EXPECT_TRUE(r.report.converged) << to_string(m);
      EXPECT_LT(r.report.final_residual, 1e-4);
    }
    EXPECT_EQ(r.report.operator_applications, std::int64_t{40} * r.report.cycles_run);
    for (int y = 0; y < 24; ++y)
      for (int x = 0; x < 24; ++x)
        if (mask.known(x, y)) EXPECT_EQ(r.image(x, y), f(x, y));
  }
}

TEST(Run, ReportsNonConvergence) {
  std::mt19937_64 rng(11);
  const ImageGrid f = oracle::random_image(16, 16, rng);
  SolverConfig cfg = config(ModelKind::FOEED);
  cfg.max_cycles = 1;
  const RunResult r = run(f, random_mask(16, 16, 0.05, 6), cfg);
  EXPECT_FALSE(r.report.converged);
  EXPECT_EQ(r.report.cycles_run, 1);
  EXPECT_GT(r.report.final_residual, cfg.stop_tol);
}

TEST(Run, Deterministic) {
  std::mt19937_64 rng(12);
  const ImageGrid f = oracle::random_image(16, 16, rng);
  const Mask mask = random_mask(16, 16, 0.1, 7);
  SolverConfig cfg = config(ModelKind::FOEED);
  cfg.max_cycles = 5;
  EXPECT_EQ(run(f, mask, cfg).image, run(f, mask, cfg).image);
}

TEST(Run, GrayShiftEquivariant) {
  std::mt19937_64 rng(13);
  const ImageGrid f = oracle::smooth(oracle::random_image(16, 16, rng), 1.5);
  ImageGrid g = f;
  for (double& v : g.values()) v += 50.0;
  const Mask mask = random_mask(16, 16, 0.15, 8);
  for (ModelKind m : {ModelKind::EED, ModelKind::FOEED}) {
    SolverConfig cfg = config(m);
    cfg.max_cycles = 3;
    const ImageGrid a = run(f, mask, cfg).image;
    const ImageGrid b = run(g, mask, cfg).image;
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(b[i] - a[i], 50.0, 1e-8);
  }
}

TEST(Run, RejectsShapeMismatch) {
  EXPECT_THROW(run(ImageGrid(8, 8), Mask(8, 9, true), config(ModelKind::EED)), std::invalid_argument);
}

TEST(SmoothRun, ZeroStepsIsIdentity) {
  std::mt19937_64 rng(14);
  const ImageGrid f = oracle::random_image(8, 8, rng);
  EXPECT_EQ(smooth_run(f, config(ModelKind::FOEED), 0), f);
}

TEST(SmoothRun, FoeedNormNonIncreasingAtBound) {
  std::mt19937_64 rng(15);
  const ImageGrid f = oracle::random_image(32, 32, rng);
  SolverConfig cfg = config(ModelKind::FOEED);
  cfg.tau = stable_step_bound(1, 1);
  double prev = -1.0;
  int calls = 0;
  smooth_run(f, cfg, 200, [&](int step, const ImageGrid& u) {
    EXPECT_EQ(step, calls++);
    const double n = l2_norm(u);
    if (prev >= 0.0) EXPECT_LE(n, prev + 1e-9) << step;
    prev = n;
  });
  EXPECT_EQ(calls, 201);
}

TEST(SmoothRun, EedFlattensTowardMean) {
  std::mt19937_64 rng(16);
  const ImageGrid f = oracle::random_image(12, 12, rng);
  const double mean = std::accumulate(f.values().begin(), f.values().end(), 0.0) / f.size();
  const ImageGrid u = smooth_run(f, config(ModelKind::EED), 4000);
  const auto [lo, hi] = std::minmax_element(u.values().begin(), u.values().end());
  EXPECT_LT(*hi - *lo, 1.0);
  EXPECT_NEAR(std::accumulate(u.values().begin(), u.values().end(), 0.0) / u.size(), mean, 1e-6);
}

TEST(Norms, L2) {
  ImageGrid a(3, 3, 0.0), b(3, 3, 0.0);
  a(0, 0) = 3.0;
  a(1, 1) = 4.0;
  EXPECT_DOUBLE_EQ(l2_norm(a), 5.0);
  EXPECT_DOUBLE_EQ(l2_distance(a, b), 5.0);
}

}  // namespace
}  // namespace foeed
