#pragma once

#include <vector>

#include "foeed/grid.hpp"

namespace foeed {

/// Mean squared error over all pixels. Throws std::invalid_argument on a
/// dimension mismatch.
double mse(const ImageGrid& u, const ImageGrid& v);

/// Average absolute error over all pixels.
double aae(const ImageGrid& u, const ImageGrid& v);

// Multi-channel variants average over every channel and pixel.
double mse(const std::vector<ImageGrid>& u, const std::vector<ImageGrid>& v);
double aae(const std::vector<ImageGrid>& u, const std::vector<ImageGrid>& v);

}  // namespace foeed
