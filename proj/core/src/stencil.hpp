#pragma once

#include <vector>

#include "foeed/grid.hpp"

namespace foeed::detail {

/// Mirrored neighbor indices along one axis, with the sign an odd field picks
/// up when the neighbor lies across the boundary.
struct AxisNeighbors {
  std::vector<int> prev, next;
  std::vector<double> prev_sign, next_sign;

  explicit AxisNeighbors(int n) : prev(n), next(n), prev_sign(n), next_sign(n) {
    for (int i = 0; i < n; ++i) {
      prev[i] = reflect_index(i - 1, n);
      next[i] = reflect_index(i + 1, n);
      prev_sign[i] = reflect_sign(i - 1, n);
      next_sign[i] = reflect_sign(i + 1, n);
    }
  }
};

/// Separable Gaussian blur of a row-major buffer into `out`, using `tmp` as
/// scratch. Mirrored boundaries.
void gaussian_blur(const double* in, double* out, double* tmp, int w, int h,
                   const std::vector<double>& kernel);

}  // namespace foeed::detail
