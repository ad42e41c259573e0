#pragma once

#include <array>
#include <optional>
#include <string_view>

#include "foeed/diffusivity.hpp"
#include "foeed/grid.hpp"

namespace foeed {

/// Gradients with magnitude below this are treated as having no direction.
inline constexpr double kGradientEpsilon = 1e-10;

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

/// General (not necessarily symmetric) 2x2 matrix, indexed m[i][j].
struct Mat2 {
  std::array<std::array<double, 2>, 2> m{};

  double& operator()(int i, int j) { return m[i][j]; }
  double operator()(int i, int j) const { return m[i][j]; }

  static Mat2 from(const SymMat2& s) { return Mat2{{{{s.xx, s.xy}, {s.xy, s.yy}}}}; }
  static Mat2 outer(const Vec2& a, const Vec2& b) {
    return Mat2{{{{a.x * b.x, a.x * b.y}, {a.y * b.x, a.y * b.y}}}};
  }
};

/// A:B = trace(B^T A).
double frobenius_dot(const Mat2& a, const Mat2& b);

/// Spectral data of the rank-one structure tensor grad u_sigma grad u_sigma^T.
/// lambda2 is identically zero and not stored.
struct Eigenframe {
  double lambda1 = 0.0;
  Vec2 v1{1.0, 0.0};
  Vec2 v2{0.0, 1.0};
  bool degenerate = true;
};

/// Eigenframe of g g^T. v1 is parallel to g, v2 = v1 rotated by +90 degrees.
/// Below kGradientEpsilon the frame falls back to the canonical axes with
/// lambda1 = 0 and is flagged degenerate.
Eigenframe eigenframe_from_gradient(Vec2 g);

/// Fourth-order diffusion tensor: 16 coefficients d_ijkl over {x,y}^4.
class DiffTensor4 {
 public:
  DiffTensor4() { d_.fill(0.0); }

  double& operator()(int i, int j, int k, int l) { return d_[flat(i, j, k, l)]; }
  double operator()(int i, int j, int k, int l) const { return d_[flat(i, j, k, l)]; }

  const std::array<double, 16>& coefficients() const { return d_; }

  /// A (x) B, with coefficients A_ij B_kl.
  static DiffTensor4 outer(const Mat2& a, const Mat2& b);

  DiffTensor4& operator+=(const DiffTensor4& o);
  friend DiffTensor4 operator*(double s, DiffTensor4 t);

 private:
  static constexpr int flat(int i, int j, int k, int l) { return ((i * 2 + j) * 2 + k) * 2 + l; }
  std::array<double, 16> d_;
};

enum class Mu3Rule { One, ArithmeticMean, GeometricMean };

std::string_view to_string(Mu3Rule rule);
std::optional<Mu3Rule> parse_mu3(std::string_view name);
double mu3_value(Mu3Rule rule, double mu1, double mu2);

/// Orthonormal eigentensors E1..E4 of the frame (index 0..3).
std::array<Mat2, 4> eigentensors(const Eigenframe& frame);

/// Second-order edge-enhancing diffusion tensor g(lambda1) v1 v1^T + v2 v2^T.
/// Identity for a degenerate frame.
SymMat2 eed_tensor(const Eigenframe& frame, const DiffusivitySpec& g);

/// mu1 E1(x)E1 + mu2 E2(x)E2 + mu3 E3(x)E3 with mu1 = g(lambda1), mu2 = 1 and
/// mu3 from `rule`. mu4 = 0, so E4 does not appear.
DiffTensor4 foeed_tensor(const Eigenframe& frame, const DiffusivitySpec& g, Mu3Rule rule);

/// Full contraction T_ij = sum_kl d_ijkl A_kl with no symmetrization.
Mat2 contract(const DiffTensor4& d, const Mat2& a);

/// T = D:H, symmetrized as (T + T^T)/2.
SymMat2 double_dot(const DiffTensor4& d, const SymMat2& h);

/// E3:H = (v1^T H v2 + v2^T H v1) / sqrt(2).
double e3_contraction(const Eigenframe& frame, const SymMat2& h);

/// Second directional derivative w^T H w.
double directional_second(const SymMat2& h, const Vec2& w);

// Coefficient adapters expressing earlier fourth-order models as d_ijkl.
// Gradients and Laplacians are in the same units the diffusivity expects;
// g is evaluated at the squared magnitude.

DiffTensor4 coeffs_you_kaveh(double laplacian, const DiffusivitySpec& g);
DiffTensor4 coeffs_hajiaboli(Vec2 gradient, const DiffusivitySpec& g);
DiffTensor4 coeffs_li1(Vec2 gradient, const DiffusivitySpec& g);
DiffTensor4 coeffs_li2(Vec2 gradient);

}  // namespace foeed
