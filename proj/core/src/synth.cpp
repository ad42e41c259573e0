#include "foeed/synth.hpp"

#include <cmath>
#include <stdexcept>

namespace foeed {

namespace {

constexpr double kPi = 3.14159265358979323846;

struct Point {
  double x, y;
};

std::vector<Point> star_polygon(const StarShape& s, double scale) {
  std::vector<Point> pts;
  const int n = 2 * s.points;
  for (int i = 0; i < n; ++i) {
    const double r = (i % 2 == 0 ? s.outer_radius : s.inner_radius) * scale;
    const double a = s.rotation - kPi / 2 + i * kPi / s.points;
    pts.push_back({s.cx * scale + r * std::cos(a), s.cy * scale + r * std::sin(a)});
  }
  return pts;
}

// Even-odd rule.
bool inside(const std::vector<Point>& poly, double x, double y) {
  bool in = false;
  for (std::size_t i = 0, j = poly.size() - 1; i < poly.size(); j = i++) {
    const Point& a = poly[i];
    const Point& b = poly[j];
    if ((a.y > y) != (b.y > y) && x < (b.x - a.x) * (y - a.y) / (b.y - a.y) + a.x) {
      in = !in;
    }
  }
  return in;
}

}  // namespace

SynthSpec SynthSpec::standard(int size) {
  SynthSpec s;
  s.size = size;
  s.rects = {
      {0.13, 0.10, 0.87, 0.10 + 2.0 / 300.0},  // thin bar
      {0.13, 0.18, 0.87, 0.22},                // thick bar
      {0.10, 0.33, 0.40, 0.60},                // rectangle
  };
  s.circles = {{0.73, 0.47, 0.15}};
  s.stars = {
      {0.28, 0.80, 0.15, 0.06, 5, 0.0},
      {0.72, 0.80, 0.15, 0.065, 5, kPi / 5.0},
  };
  return s;
}

ImageGrid make_test_image(const SynthSpec& spec) {
  if (spec.size < 3) throw std::invalid_argument("synthetic image size must be at least 3");
  const double n = spec.size;
  ImageGrid img(spec.size, spec.size, spec.background);

  for (const RectShape& r : spec.rects) {
    for (int y = 0; y < spec.size; ++y) {
      for (int x = 0; x < spec.size; ++x) {
        const double px = x + 0.5;
        const double py = y + 0.5;
        if (px >= r.x0 * n && px < r.x1 * n && py >= r.y0 * n && py < r.y1 * n) {
          img(x, y) = r.intensity;
        }
      }
    }
  }
  for (const CircleShape& c : spec.circles) {
    for (int y = 0; y < spec.size; ++y) {
      for (int x = 0; x < spec.size; ++x) {
        if (std::hypot(x + 0.5 - c.cx * n, y + 0.5 - c.cy * n) <= c.radius * n) {
          img(x, y) = c.intensity;
        }
      }
    }
  }
  for (const StarShape& s : spec.stars) {
    const auto poly = star_polygon(s, n);
    for (int y = 0; y < spec.size; ++y) {
      for (int x = 0; x < spec.size; ++x) {
        if (inside(poly, x + 0.5, y + 0.5)) img(x, y) = s.intensity;
      }
    }
  }
  return img;
}

}  // namespace foeed
