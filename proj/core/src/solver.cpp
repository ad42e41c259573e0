#include "foeed/solver.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "rhs_kernels.hpp"

namespace foeed {

std::string_view to_string(ModelKind model) {
  switch (model) {
    case ModelKind::EED: return "eed";
    case ModelKind::FOEED: return "foeed";
    case ModelKind::Li1: return "li1";
    case ModelKind::Li2: return "li2";
    case ModelKind::YouKaveh: return "youkaveh";
    case ModelKind::Hajiaboli: return "hajiaboli";
  }
  return "unknown";
}

std::optional<ModelKind> parse_model(std::string_view name) {
  for (ModelKind m : kAllModels) {
    if (to_string(m) == name) return m;
  }
  return std::nullopt;
}

bool is_fourth_order(ModelKind model) { return model != ModelKind::EED; }

std::string_view to_string(InitStrategy init) {
  switch (init) {
    case InitStrategy::Mean: return "mean";
    case InitStrategy::Zero: return "zero";
    case InitStrategy::Nearest: return "nearest";
  }
  return "unknown";
}

std::optional<InitStrategy> parse_init(std::string_view name) {
  for (InitStrategy i : {InitStrategy::Mean, InitStrategy::Zero, InitStrategy::Nearest}) {
    if (to_string(i) == name) return i;
  }
  return std::nullopt;
}

SolverConfig SolverConfig::for_model(ModelKind model) {
  SolverConfig cfg;
  cfg.model = model;
  switch (model) {
    case ModelKind::EED: cfg.tau = 0.25; break;
    case ModelKind::FOEED: cfg.tau = 0.05; break;
    // Outer Laplacian of an inner Laplacian-like term: spectral radius 64.
    default: cfg.tau = 1.0 / 32.0; break;
  }
  return cfg;
}

void SolverConfig::validate() const {
  if (!(tau > 0.0) || !std::isfinite(tau)) throw std::invalid_argument("tau must be positive");
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) throw std::invalid_argument("sigma must be nonnegative");
  if (fsi_n < 1) throw std::invalid_argument("fsi_n must be at least 1");
  if (!(stop_tol > 0.0)) throw std::invalid_argument("stop_tol must be positive");
  if (max_cycles < 1) throw std::invalid_argument("max_cycles must be at least 1");
  if (!(intensity_range > 0.0)) throw std::invalid_argument("intensity_range must be positive");
}

namespace {

void require_same_shape(const ImageGrid& u, const ImageGrid& f, const Mask& mask) {
  if (!u.same_shape(f) || !mask.same_shape(f)) {
    throw std::invalid_argument("image, data and mask dimensions differ");
  }
}

}  // namespace

ImageGrid rhs(const ImageGrid& u, const SolverConfig& cfg) {
  detail::RhsEvaluator eval(cfg, u.width(), u.height());
  ImageGrid out = ImageGrid::like(u);
  eval(u, out);
  return out;
}

ImageGrid explicit_step(const ImageGrid& u, const ImageGrid& f, const Mask& mask,
                        const SolverConfig& cfg) {
  require_same_shape(u, f, mask);
  const ImageGrid r = rhs(u, cfg);
  ImageGrid next = u;
  for (std::size_t i = 0; i < next.size(); ++i) {
    next[i] = mask.known(i) ? f[i] : u[i] + cfg.tau * r[i];
  }
  return next;
}

ImageGrid fsi_cycle(const ImageGrid& u0, const ImageGrid& f, const Mask& mask,
                    const SolverConfig& cfg) {
  require_same_shape(u0, f, mask);
  detail::RhsEvaluator eval(cfg, u0.width(), u0.height());
  ImageGrid prev = u0;
  ImageGrid cur = u0;
  ImageGrid next = ImageGrid::like(u0);
  ImageGrid r = ImageGrid::like(u0);
  for (int k = 0; k < cfg.fsi_n; ++k) {
    const double alpha = fsi_alpha(k);
    eval(cur, r);
    for (std::size_t i = 0; i < next.size(); ++i) {
      // alpha (cur + tau r) + (1 - alpha) prev, written so that a fixed
      // point stays bit-exact.
      next[i] = mask.known(i)
                    ? f[i]
                    : cur[i] + alpha * cfg.tau * r[i] + (alpha - 1.0) * (cur[i] - prev[i]);
    }
    // Rotate buffers: prev <- cur, cur <- next.
    std::swap(prev, cur);
    std::swap(cur, next);
  }
  return cur;
}

ImageGrid explicit_block(const ImageGrid& u0, const ImageGrid& f, const Mask& mask,
                         const SolverConfig& cfg) {
  require_same_shape(u0, f, mask);
  detail::RhsEvaluator eval(cfg, u0.width(), u0.height());
  ImageGrid cur = u0;
  ImageGrid r = ImageGrid::like(u0);
  for (int k = 0; k < cfg.fsi_n; ++k) {
    eval(cur, r);
    for (std::size_t i = 0; i < cur.size(); ++i) {
      cur[i] = mask.known(i) ? f[i] : cur[i] + cfg.tau * r[i];
    }
  }
  return cur;
}

ImageGrid initialize(const ImageGrid& f, const Mask& mask, InitStrategy init) {
  if (!mask.same_shape(f)) throw std::invalid_argument("mask and image dimensions differ");
  const std::size_t known = mask.known_count();
  if (known == 0) throw std::invalid_argument("mask has no known pixels");

  ImageGrid u = f;
  switch (init) {
    case InitStrategy::Zero:
      for (std::size_t i = 0; i < u.size(); ++i)
        if (!mask.known(i)) u[i] = 0.0;
      break;

    case InitStrategy::Mean: {
      double sum = 0.0;
      for (std::size_t i = 0; i < f.size(); ++i)
        if (mask.known(i)) sum += f[i];
      const double mean = sum / static_cast<double>(known);
      for (std::size_t i = 0; i < u.size(); ++i)
        if (!mask.known(i)) u[i] = mean;
      break;
    }

    case InitStrategy::Nearest: {
      // Exact Euclidean nearest known pixel; ties go to the first in scan order.
      std::vector<std::pair<int, int>> seeds;
      seeds.reserve(known);
      for (int y = 0; y < f.height(); ++y)
        for (int x = 0; x < f.width(); ++x)
          if (mask.known(x, y)) seeds.emplace_back(x, y);
      for (int y = 0; y < f.height(); ++y) {
        for (int x = 0; x < f.width(); ++x) {
          if (mask.known(x, y)) continue;
          long best = std::numeric_limits<long>::max();
          std::pair<int, int> pick = seeds.front();
          for (const auto& [sx, sy] : seeds) {
            const long d = static_cast<long>(sx - x) * (sx - x) +
                           static_cast<long>(sy - y) * (sy - y);
            if (d < best) {
              best = d;
              pick = {sx, sy};
            }
          }
          u(x, y) = f(pick.first, pick.second);
        }
      }
      break;
    }
  }
  return u;
}

RunResult run(const ImageGrid& f, const Mask& mask, const SolverConfig& cfg,
              InitStrategy init) {
  cfg.validate();
  const auto start = std::chrono::steady_clock::now();

  RunResult result{initialize(f, mask, init), {}};
  RunReport& report = result.report;
  ImageGrid& u = result.image;

  if (mask.unknown_count() == 0) {
    report.cycles_run = 1;
    report.converged = true;
  } else {
    for (int cycle = 1; cycle <= cfg.max_cycles; ++cycle) {
      ImageGrid next = cfg.use_fsi ? fsi_cycle(u, f, mask, cfg)
                                   : explicit_block(u, f, mask, cfg);
      report.final_residual = l2_distance(next, u);
      report.operator_applications += cfg.fsi_n;
      report.cycles_run = cycle;
      u = std::move(next);
      if (!std::isfinite(report.final_residual)) break;
      if (report.final_residual < cfg.stop_tol) {
        report.converged = true;
        break;
      }
    }
  }

  report.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

double stable_step_bound(double dx, double dy) {
  if (!(dx > 0.0) || !(dy > 0.0)) throw std::invalid_argument("spacings must be positive");
  return 2.0 / (16.0 * dx * dx + 16.0 * dy * dy + 2.0 * dx * dy);
}

ImageGrid smooth_run(const ImageGrid& f, const SolverConfig& cfg, int steps,
                     const StepObserver& observer) {
  if (steps < 0) throw std::invalid_argument("steps must be nonnegative");
  cfg.validate();
  ImageGrid u = f;
  if (observer) observer(0, u);
  if (steps == 0) return u;
  detail::RhsEvaluator eval(cfg, u.width(), u.height());
  ImageGrid r = ImageGrid::like(u);
  for (int k = 1; k <= steps; ++k) {
    eval(u, r);
    for (std::size_t i = 0; i < u.size(); ++i) u[i] += cfg.tau * r[i];
    if (observer) observer(k, u);
  }
  return u;
}

double l2_norm(const ImageGrid& u) {
  double s = 0.0;
  for (double v : u.values()) s += v * v;
  return std::sqrt(s);
}

double l2_distance(const ImageGrid& a, const ImageGrid& b) {
  if (!a.same_shape(b)) throw std::invalid_argument("l2_distance: dimensions differ");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

}  // namespace foeed
