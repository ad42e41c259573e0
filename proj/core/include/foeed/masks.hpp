#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <random>

#include "foeed/grid.hpp"

namespace foeed {

/// Where a mask comes from: a seeded random subset or a mask file.
struct MaskSpec {
  enum class Kind { RandomDensity, FromFile };

  Kind kind = Kind::RandomDensity;
  double density = 0.05;
  std::uint64_t seed = 0;
  std::filesystem::path path;
};

/// Uniform draws from std::mt19937_64 (whose output sequence the standard
/// fixes) using rejection sampling instead of std::uniform_int_distribution,
/// whose algorithm is implementation-defined.
class SeededSampler {
 public:
  explicit SeededSampler(std::uint64_t seed);
  std::uint64_t below(std::uint64_t bound);
  double unit();  // [0, 1) with 53 random bits

 private:
  std::mt19937_64 engine_;
};

/// Exactly round(density * width * height) known pixels, chosen uniformly
/// without replacement by a partial Fisher-Yates shuffle over the pixel
/// indices driven by SeededSampler(seed).
Mask random_mask(int width, int height, double density, std::uint64_t seed);

struct ScratchMask {
  Mask mask;
  double unknown_fraction = 0.0;
};

/// Pixels whose marker value exceeds `threshold` become unknown. Throws
/// std::invalid_argument when the result is all known or all unknown.
ScratchMask scratch_mask_from_image(const ImageGrid& marker, double threshold);

/// Parameters of a procedurally drawn scratch marker.
struct ScratchSpec {
  double coverage = 0.06;  // target fraction of scratched pixels
  double thickness = 2.0;  // stroke width in pixels
  double min_length = 0.2; // stroke length range, as fractions of the diagonal
  double max_length = 0.6;
  std::uint64_t seed = 0;
};

/// Marker image (255 scratched, 0 clean) built from random straight strokes
/// added until the scratched fraction reaches spec.coverage.
ImageGrid scratch_marker(int width, int height, const ScratchSpec& spec);

/// Resolves a MaskSpec for an image of the given size. File masks must match.
Mask make_mask(const MaskSpec& spec, int width, int height);

}  // namespace foeed
