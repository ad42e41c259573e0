#include "foeed/masks.hpp"

#include <algorithm>
#include <limits>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "foeed/io.hpp"

namespace foeed {

SeededSampler::SeededSampler(std::uint64_t seed) : engine_(seed) {}

std::uint64_t SeededSampler::below(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("SeededSampler::below: bound is zero");
  // Largest multiple of bound representable in 64 bits; reject above it.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t r;
  do {
    r = engine_();
  } while (r >= limit);
  return r % bound;
}

double SeededSampler::unit() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

Mask random_mask(int width, int height, double density, std::uint64_t seed) {
  if (!(density > 0.0 && density < 1.0)) {
    throw std::invalid_argument("mask density must lie in (0, 1)");
  }
  if (width < 1 || height < 1) throw std::invalid_argument("mask dimensions must be positive");

  const std::size_t n = static_cast<std::size_t>(width) * height;
  const auto count = static_cast<std::size_t>(std::llround(density * static_cast<double>(n)));

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  SeededSampler rng(seed);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t j = i + rng.below(n - i);
    std::swap(order[i], order[j]);
  }

  Mask mask(width, height, false);
  for (std::size_t i = 0; i < count; ++i) mask.set(order[i], true);
  return mask;
}

ScratchMask scratch_mask_from_image(const ImageGrid& marker, double threshold) {
  ScratchMask out{Mask(marker.width(), marker.height(), true), 0.0};
  std::size_t scratched = 0;
  for (std::size_t i = 0; i < marker.size(); ++i) {
    if (marker[i] > threshold) {
      out.mask.set(i, false);
      ++scratched;
    }
  }
  if (scratched == 0) throw std::invalid_argument("scratch marker leaves every pixel known");
  if (scratched == marker.size()) {
    throw std::invalid_argument("scratch marker leaves no pixel known");
  }
  out.unknown_fraction = static_cast<double>(scratched) / static_cast<double>(marker.size());
  return out;
}

ImageGrid scratch_marker(int width, int height, const ScratchSpec& spec) {
  if (!(spec.coverage > 0.0 && spec.coverage < 1.0)) {
    throw std::invalid_argument("scratch coverage must lie in (0, 1)");
  }
  if (!(spec.thickness > 0.0)) throw std::invalid_argument("scratch thickness must be positive");

  ImageGrid marker(width, height, 0.0);
  const double diag = std::hypot(width, height);
  const double half = 0.5 * spec.thickness;
  const std::size_t target =
      static_cast<std::size_t>(std::ceil(spec.coverage * static_cast<double>(marker.size())));
  std::size_t covered = 0;
  SeededSampler rng(spec.seed);

  while (covered < target) {
    const double x0 = rng.unit() * width;
    const double y0 = rng.unit() * height;
    const double angle = rng.unit() * 3.14159265358979323846;
    const double len =
        diag * (spec.min_length + rng.unit() * (spec.max_length - spec.min_length));
    const double ux = std::cos(angle);
    const double uy = std::sin(angle);
    const double x1 = x0 + ux * len;
    const double y1 = y0 + uy * len;

    const int bx0 = std::max(0, static_cast<int>(std::floor(std::min(x0, x1) - half)));
    const int bx1 = std::min(width - 1, static_cast<int>(std::ceil(std::max(x0, x1) + half)));
    const int by0 = std::max(0, static_cast<int>(std::floor(std::min(y0, y1) - half)));
    const int by1 = std::min(height - 1, static_cast<int>(std::ceil(std::max(y0, y1) + half)));

    for (int y = by0; y <= by1 && covered < target; ++y) {
      for (int x = bx0; x <= bx1 && covered < target; ++x) {
        if (marker(x, y) != 0.0) continue;
        // Distance from the pixel center to the segment.
        const double px = x + 0.5 - x0;
        const double py = y + 0.5 - y0;
        const double t = std::clamp(px * ux + py * uy, 0.0, len);
        if (std::hypot(px - t * ux, py - t * uy) <= half) {
          marker(x, y) = 255.0;
          ++covered;
        }
      }
    }
  }
  return marker;
}

Mask make_mask(const MaskSpec& spec, int width, int height) {
  if (spec.kind == MaskSpec::Kind::RandomDensity) {
    return random_mask(width, height, spec.density, spec.seed);
  }
  Mask m = read_mask(spec.path);
  if (m.width() != width || m.height() != height) {
    throw std::invalid_argument("mask file dimensions do not match the image");
  }
  return m;
}

}  // namespace foeed
