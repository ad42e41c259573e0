#pragma once

#include <vector>

#include "foeed/grid.hpp"

namespace foeed {

// Shape coordinates are fractions of the canvas size; a pixel is filled
// when its center lies inside the shape.

struct RectShape {
  double x0, y0, x1, y1;
  double intensity = 255.0;
};

struct CircleShape {
  double cx, cy, radius;
  double intensity = 255.0;
};

struct StarShape {
  double cx, cy;
  double outer_radius, inner_radius;
  int points = 5;
  double rotation = 0.0;  // radians
  double intensity = 255.0;
};

struct SynthSpec {
  int size = 300;
  double background = 0.0;
  std::vector<RectShape> rects;
  std::vector<CircleShape> circles;
  std::vector<StarShape> stars;

  /// Thin bar, thick bar, rectangle, circle and two stars on a black canvas.
  static SynthSpec standard(int size = 300);
};

/// Rasterizes the spec. Shapes are painted in order rects, circles, stars.
ImageGrid make_test_image(const SynthSpec& spec);

}  // namespace foeed
