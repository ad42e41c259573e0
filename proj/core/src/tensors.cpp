#include "foeed/tensors.hpp"

#include <cmath>

namespace foeed {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

// Rows xx and yy both hold the inner operator a*u_NN + b*u_TT, where N is the
// gradient direction and T its perpendicular; mixed outer rows stay zero.
// This is the common shape of the Hajiaboli and Li models, whose outer
// operator is the Laplacian.
DiffTensor4 normal_tangent_coeffs(Vec2 grad, double a, double b) {
  DiffTensor4 d;
  const double n2 = grad.x * grad.x + grad.y * grad.y;
  double cxx, cxy, cyy;
  if (std::sqrt(n2) < kGradientEpsilon) {
    cxx = cyy = 0.5 * (a + b);
    cxy = 0.0;
  } else {
    cxx = (a * grad.x * grad.x + b * grad.y * grad.y) / n2;
    cxy = (a - b) * grad.x * grad.y / n2;
    cyy = (a * grad.y * grad.y + b * grad.x * grad.x) / n2;
  }
  for (int r : {0, 1}) {
    d(r, r, 0, 0) = cxx;
    d(r, r, 0, 1) = cxy;
    d(r, r, 1, 0) = cxy;
    d(r, r, 1, 1) = cyy;
  }
  return d;
}

double squared_norm(Vec2 v) { return v.x * v.x + v.y * v.y; }

}  // namespace

double frobenius_dot(const Mat2& a, const Mat2& b) {
  double s = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) s += a(i, j) * b(i, j);
  return s;
}

Eigenframe eigenframe_from_gradient(Vec2 g) {
  const double n2 = squared_norm(g);
  const double n = std::sqrt(n2);
  if (!(n >= kGradientEpsilon)) return Eigenframe{};
  const Vec2 v1{g.x / n, g.y / n};
  return Eigenframe{n2, v1, Vec2{-v1.y, v1.x}, false};
}

DiffTensor4 DiffTensor4::outer(const Mat2& a, const Mat2& b) {
  DiffTensor4 t;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) t(i, j, k, l) = a(i, j) * b(k, l);
  return t;
}

DiffTensor4& DiffTensor4::operator+=(const DiffTensor4& o) {
  for (std::size_t i = 0; i < d_.size(); ++i) d_[i] += o.d_[i];
  return *this;
}

DiffTensor4 operator*(double s, DiffTensor4 t) {
  for (double& c : t.d_) c *= s;
  return t;
}

std::string_view to_string(Mu3Rule rule) {
  switch (rule) {
    case Mu3Rule::One: return "one";
    case Mu3Rule::ArithmeticMean: return "amean";
    case Mu3Rule::GeometricMean: return "gmean";
  }
  return "unknown";
}

std::optional<Mu3Rule> parse_mu3(std::string_view name) {
  for (Mu3Rule r : {Mu3Rule::One, Mu3Rule::ArithmeticMean, Mu3Rule::GeometricMean}) {
    if (to_string(r) == name) return r;
  }
  return std::nullopt;
}

double mu3_value(Mu3Rule rule, double mu1, double mu2) {
  switch (rule) {
    case Mu3Rule::One: return 1.0;
    case Mu3Rule::ArithmeticMean: return 0.5 * (mu1 + mu2);
    case Mu3Rule::GeometricMean: return std::sqrt(mu1 * mu2);
  }
  return 1.0;
}

std::array<Mat2, 4> eigentensors(const Eigenframe& f) {
  const Mat2 v11 = Mat2::outer(f.v1, f.v1);
  const Mat2 v22 = Mat2::outer(f.v2, f.v2);
  const Mat2 v12 = Mat2::outer(f.v1, f.v2);
  const Mat2 v21 = Mat2::outer(f.v2, f.v1);
  Mat2 e3, e4;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      e3(i, j) = kInvSqrt2 * (v12(i, j) + v21(i, j));
      e4(i, j) = kInvSqrt2 * (v12(i, j) - v21(i, j));
    }
  }
  return {v11, v22, e3, e4};
}

SymMat2 eed_tensor(const Eigenframe& f, const DiffusivitySpec& g) {
  if (f.degenerate) return SymMat2::identity();
  const double mu1 = g(f.lambda1);
  const Vec2 a = f.v1;
  const Vec2 b = f.v2;
  return {mu1 * a.x * a.x + b.x * b.x,
          mu1 * a.x * a.y + b.x * b.y,
          mu1 * a.y * a.y + b.y * b.y};
}

DiffTensor4 foeed_tensor(const Eigenframe& f, const DiffusivitySpec& g, Mu3Rule rule) {
  const double mu1 = g(f.lambda1);
  const double mu2 = 1.0;
  const double mu3 = mu3_value(rule, mu1, mu2);
  const auto e = eigentensors(f);
  DiffTensor4 d = mu1 * DiffTensor4::outer(e[0], e[0]);
  d += mu2 * DiffTensor4::outer(e[1], e[1]);
  d += mu3 * DiffTensor4::outer(e[2], e[2]);
  return d;
}

Mat2 contract(const DiffTensor4& d, const Mat2& a) {
  Mat2 t;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      double s = 0.0;
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) s += d(i, j, k, l) * a(k, l);
      t(i, j) = s;
    }
  return t;
}

SymMat2 double_dot(const DiffTensor4& d, const SymMat2& h) {
  const Mat2 t = contract(d, Mat2::from(h));
  return {t(0, 0), 0.5 * (t(0, 1) + t(1, 0)), t(1, 1)};
}

double directional_second(const SymMat2& h, const Vec2& w) {
  return h.xx * w.x * w.x + 2.0 * h.xy * w.x * w.y + h.yy * w.y * w.y;
}

double e3_contraction(const Eigenframe& f, const SymMat2& h) {
  const Vec2 a = f.v1;
  const Vec2 b = f.v2;
  // v1^T H v2 == v2^T H v1 for symmetric H.
  const double cross = h.xx * a.x * b.x + h.xy * (a.x * b.y + a.y * b.x) + h.yy * a.y * b.y;
  return kInvSqrt2 * 2.0 * cross;
}

DiffTensor4 coeffs_you_kaveh(double laplacian, const DiffusivitySpec& g) {
  const double gv = g(laplacian * laplacian);
  DiffTensor4 d;
  d(0, 0, 0, 0) = gv;
  d(0, 0, 1, 1) = gv;
  d(1, 1, 0, 0) = gv;
  d(1, 1, 1, 1) = gv;
  return d;
}

DiffTensor4 coeffs_hajiaboli(Vec2 gradient, const DiffusivitySpec& g) {
  const bool flat = std::sqrt(squared_norm(gradient)) < kGradientEpsilon;
  const double gv = flat ? g(0.0) : g(squared_norm(gradient));
  return normal_tangent_coeffs(gradient, gv * gv, gv);
}

DiffTensor4 coeffs_li1(Vec2 gradient, const DiffusivitySpec& g) {
  const bool flat = std::sqrt(squared_norm(gradient)) < kGradientEpsilon;
  const double gv = flat ? g(0.0) : g(squared_norm(gradient));
  return normal_tangent_coeffs(gradient, gv, 1.0);
}

DiffTensor4 coeffs_li2(Vec2 gradient) {
  return normal_tangent_coeffs(gradient, 0.0, 1.0);
}

}  // namespace foeed
