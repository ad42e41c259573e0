#pragma once

#include <vector>

#include "foeed/solver.hpp"
#include "stencil.hpp"

namespace foeed::detail {

/// Evaluates rhs(u) for a fixed configuration and grid size, reusing its
/// scratch buffers across calls. EED and FOEED run fused single-pass kernels;
/// the other models go through the generic tensor-field composition.
class RhsEvaluator {
 public:
  RhsEvaluator(const SolverConfig& cfg, int width, int height);

  void operator()(const ImageGrid& u, ImageGrid& out);

 private:
  void foeed(const ImageGrid& u, ImageGrid& out);
  void eed(const ImageGrid& u, ImageGrid& out);

  const SolverConfig& cfg_;
  int w_, h_;
  AxisNeighbors nx_, ny_;
  std::vector<double> kernel_;
  std::vector<double> smooth_, tmp_, a_, b_, c_;
};

}  // namespace foeed::detail
