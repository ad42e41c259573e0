#include "foeed/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace foeed {

namespace {

template <typename F>
double pixel_sum(const ImageGrid& u, const ImageGrid& v, F&& f) {
  if (!u.same_shape(v)) throw std::invalid_argument("metric: image dimensions differ");
  double s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) s += f(u[i] - v[i]);
  return s;
}

template <typename F>
double channel_mean(const std::vector<ImageGrid>& u, const std::vector<ImageGrid>& v, F&& f) {
  if (u.size() != v.size() || u.empty()) {
    throw std::invalid_argument("metric: channel counts differ");
  }
  double s = 0.0;
  std::size_t n = 0;
  for (std::size_t c = 0; c < u.size(); ++c) {
    s += pixel_sum(u[c], v[c], f);
    n += u[c].size();
  }
  return s / static_cast<double>(n);
}

constexpr auto squared = [](double d) { return d * d; };
constexpr auto absolute = [](double d) { return std::abs(d); };

}  // namespace

double mse(const ImageGrid& u, const ImageGrid& v) {
  return pixel_sum(u, v, squared) / static_cast<double>(u.size());
}

double aae(const ImageGrid& u, const ImageGrid& v) {
  return pixel_sum(u, v, absolute) / static_cast<double>(u.size());
}

double mse(const std::vector<ImageGrid>& u, const std::vector<ImageGrid>& v) {
  return channel_mean(u, v, squared);
}

double aae(const std::vector<ImageGrid>& u, const std::vector<ImageGrid>& v) {
  return channel_mean(u, v, absolute);
}

}  // namespace foeed
