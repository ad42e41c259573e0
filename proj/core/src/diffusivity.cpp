#include "foeed/diffusivity.hpp"

#include <cmath>
#include <stdexcept>

namespace foeed {

DiffusivitySpec::DiffusivitySpec(DiffusivityKind kind, double lambda)
    : kind_(kind), lambda_(lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw std::invalid_argument("contrast parameter lambda must be positive");
  }
}

double DiffusivitySpec::eval(double s2) const {
  const double l2 = lambda_ * lambda_;
  switch (kind_) {
    case DiffusivityKind::Charbonnier:
      return 1.0 / std::sqrt(1.0 + s2 / l2);
    case DiffusivityKind::PeronaMalik:
      return 1.0 / (1.0 + s2 / l2);
    case DiffusivityKind::PeronaMalik2:
      return std::exp(-s2 / l2);
    case DiffusivityKind::Aubert: {
      const double d = s2 + l2;
      return (s2 / l2) / (d * d);
    }
    case DiffusivityKind::GemanReynolds: {
      const double d = s2 + l2;
      return 2.0 * l2 / (d * d);
    }
  }
  return 1.0;
}

double DiffusivitySpec::supremum() const {
  const double l2 = lambda_ * lambda_;
  switch (kind_) {
    case DiffusivityKind::Aubert: return 1.0 / (4.0 * l2 * l2);  // attained at s^2 = lambda^2
    case DiffusivityKind::GemanReynolds: return 2.0 / l2;
    default: return 1.0;
  }
}

std::string_view to_string(DiffusivityKind kind) {
  switch (kind) {
    case DiffusivityKind::Charbonnier: return "charbonnier";
    case DiffusivityKind::Aubert: return "aubert";
    case DiffusivityKind::PeronaMalik: return "perona-malik";
    case DiffusivityKind::PeronaMalik2: return "perona-malik2";
    case DiffusivityKind::GemanReynolds: return "geman-reynolds";
  }
  return "unknown";
}

std::optional<DiffusivityKind> parse_diffusivity(std::string_view name) {
  for (DiffusivityKind k : kAllDiffusivities) {
    if (to_string(k) == name) return k;
  }
  if (name == "pm") return DiffusivityKind::PeronaMalik;
  if (name == "pm2") return DiffusivityKind::PeronaMalik2;
  if (name == "gr") return DiffusivityKind::GemanReynolds;
  return std::nullopt;
}

}  // namespace foeed
