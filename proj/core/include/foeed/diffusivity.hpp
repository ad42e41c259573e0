#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace foeed {

enum class DiffusivityKind {
  Charbonnier,
  Aubert,
  PeronaMalik,
  PeronaMalik2,
  GemanReynolds,
};

inline constexpr DiffusivityKind kAllDiffusivities[] = {
    DiffusivityKind::Charbonnier, DiffusivityKind::Aubert,
    DiffusivityKind::PeronaMalik, DiffusivityKind::PeronaMalik2,
    DiffusivityKind::GemanReynolds};

/// Scalar diffusivity g(s^2) with contrast parameter lambda.
///
/// The argument is the squared magnitude s^2, so callers holding the
/// structure tensor eigenvalue |grad u_sigma|^2 can pass it directly.
/// Aubert and Geman-Reynolds follow their printed forms and are not
/// normalized to g(0) = 1.
class DiffusivitySpec {
 public:
  DiffusivitySpec(DiffusivityKind kind, double lambda);

  DiffusivityKind kind() const { return kind_; }
  double lambda() const { return lambda_; }

  double operator()(double s_squared) const { return eval(s_squared); }
  double eval(double s_squared) const;
  /// Largest value g takes over s^2 >= 0; 1 for the normalized kinds.
  double supremum() const;

 private:
  DiffusivityKind kind_;
  double lambda_;
};

std::string_view to_string(DiffusivityKind kind);
std::optional<DiffusivityKind> parse_diffusivity(std::string_view name);

}  // namespace foeed
