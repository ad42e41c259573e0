#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>

#include "foeed/diffusivity.hpp"
#include "foeed/grid.hpp"
#include "foeed/tensors.hpp"

namespace foeed {

enum class ModelKind { EED, FOEED, Li1, Li2, YouKaveh, Hajiaboli };

inline constexpr ModelKind kAllModels[] = {ModelKind::EED,      ModelKind::FOEED,
                                           ModelKind::Li1,      ModelKind::Li2,
                                           ModelKind::YouKaveh, ModelKind::Hajiaboli};

std::string_view to_string(ModelKind model);
std::optional<ModelKind> parse_model(std::string_view name);
bool is_fourth_order(ModelKind model);

/// How unknown pixels are filled before the evolution starts.
enum class InitStrategy { Mean, Zero, Nearest };

std::string_view to_string(InitStrategy init);
std::optional<InitStrategy> parse_init(std::string_view name);

struct SolverConfig {
  ModelKind model = ModelKind::FOEED;
  double tau = 0.05;
  double sigma = 1.0;
  DiffusivitySpec diffusivity{DiffusivityKind::Charbonnier, 0.1};
  Mu3Rule mu3 = Mu3Rule::GeometricMean;
  int fsi_n = 40;
  double stop_tol = 1e-4;
  int max_cycles = 10000;
  bool use_fsi = true;
  /// Intensities are evolved on their raw scale, but gradients fed to the
  /// diffusivity are divided by this so lambda lives on a [0,1] scale.
  double intensity_range = 255.0;
  /// Steer Li1/Li2/Hajiaboli by the presmoothed gradient instead of the raw one.
  bool presmooth_adapters = false;

  /// Defaults with a stable step size per model: 0.25 for EED, 0.05 for
  /// FOEED and 1/32 for the models whose outer operator is a Laplacian.
  static SolverConfig for_model(ModelKind model);

  /// Throws std::invalid_argument on out-of-range fields.
  void validate() const;
};

struct RunReport {
  int cycles_run = 0;
  std::int64_t operator_applications = 0;
  double final_residual = 0.0;
  double wall_time = 0.0;  // seconds
  bool converged = false;
};

struct RunResult {
  ImageGrid image;
  RunReport report;
};

/// du/dt of the selected model at u. Tensor fields are rebuilt from u on
/// every call.
ImageGrid rhs(const ImageGrid& u, const SolverConfig& cfg);

/// u + tau * rhs(u) on unknown pixels, f on known pixels.
ImageGrid explicit_step(const ImageGrid& u, const ImageGrid& f, const Mask& mask,
                        const SolverConfig& cfg);

/// Extrapolation weight of inner step k of a fast semi-iterative cycle.
constexpr double fsi_alpha(int k) { return (4.0 * k + 2.0) / (2.0 * k + 3.0); }

/// One outer cycle of fsi_n extrapolated explicit steps starting at u.
ImageGrid fsi_cycle(const ImageGrid& u, const ImageGrid& f, const Mask& mask,
                    const SolverConfig& cfg);

/// fsi_n plain explicit steps; the non-accelerated counterpart of fsi_cycle.
ImageGrid explicit_block(const ImageGrid& u, const ImageGrid& f, const Mask& mask,
                         const SolverConfig& cfg);

/// Unknown pixels filled according to `init`, known pixels equal to f.
ImageGrid initialize(const ImageGrid& f, const Mask& mask, InitStrategy init);

/// Inpaints the unknown pixels of f by evolving to a steady state. Stops after
/// the first cycle whose L2 change is below stop_tol, or at max_cycles with
/// report.converged = false.
RunResult run(const ImageGrid& f, const Mask& mask, const SolverConfig& cfg,
              InitStrategy init = InitStrategy::Mean);

/// L2-stable step size bound 2 / (16 dx^2 + 16 dy^2 + 2 dx dy) for the
/// fourth-order explicit scheme.
double stable_step_bound(double dx, double dy);

/// Observer called with (step, image) after every smoothing step, and once
/// with step 0 before the first.
using StepObserver = std::function<void(int, const ImageGrid&)>;

/// Pure initial-value evolution with `steps` plain explicit steps.
ImageGrid smooth_run(const ImageGrid& f, const SolverConfig& cfg, int steps,
                     const StepObserver& observer = {});

double l2_norm(const ImageGrid& u);
double l2_distance(const ImageGrid& a, const ImageGrid& b);

}  // namespace foeed
