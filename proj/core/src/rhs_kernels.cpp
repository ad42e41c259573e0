#include "rhs_kernels.hpp"

#include <cmath>
#include <stdexcept>

namespace foeed::detail {

namespace {

ImageGrid generic_fourth_order(const ImageGrid& u, const SolverConfig& cfg) {
  const double s = 1.0 / cfg.intensity_range;
  const DiffusivitySpec& g = cfg.diffusivity;
  const TensorField h = hessian(u);
  TensorField t = TensorField::like(u);

  if (cfg.model == ModelKind::YouKaveh) {
    for (std::size_t i = 0; i < t.size(); ++i) {
      t[i] = double_dot(coeffs_you_kaveh(h[i].trace() * s, g), h[i]);
    }
  } else {
    const VectorField2 grad =
        gradient(cfg.presmooth_adapters ? gaussian_smooth(u, cfg.sigma) : u);
    for (std::size_t i = 0; i < t.size(); ++i) {
      const Vec2 gi{grad.x[i] * s, grad.y[i] * s};
      DiffTensor4 d;
      switch (cfg.model) {
        case ModelKind::Hajiaboli: d = coeffs_hajiaboli(gi, g); break;
        case ModelKind::Li1: d = coeffs_li1(gi, g); break;
        case ModelKind::Li2: d = coeffs_li2(gi); break;
        default: throw std::invalid_argument("generic_fourth_order: unsupported model");
      }
      t[i] = double_dot(d, h[i]);
    }
  }
  ImageGrid out = outer_second(t);
  for (double& v : out.values()) v = -v;
  return out;
}

}  // namespace

RhsEvaluator::RhsEvaluator(const SolverConfig& cfg, int width, int height)
    : cfg_(cfg),
      w_(width),
      h_(height),
      nx_(width),
      ny_(height),
      kernel_(gaussian_kernel(cfg.sigma)) {
  require_stencil_size(width, height, "rhs");
  const std::size_t n = static_cast<std::size_t>(width) * height;
  if (cfg.model == ModelKind::EED || cfg.model == ModelKind::FOEED) {
    smooth_.resize(n);
    tmp_.resize(n);
    a_.resize(n);
    b_.resize(n);
    c_.resize(n);
  }
}

void RhsEvaluator::operator()(const ImageGrid& u, ImageGrid& out) {
  if (u.width() != w_ || u.height() != h_) {
    throw std::invalid_argument("rhs: image size does not match the evaluator");
  }
  if (!out.same_shape(u)) out = ImageGrid::like(u);
  switch (cfg_.model) {
    case ModelKind::EED: eed(u, out); break;
    case ModelKind::FOEED: foeed(u, out); break;
    default: out = generic_fourth_order(u, cfg_); break;
  }
}

void RhsEvaluator::foeed(const ImageGrid& img, ImageGrid& result) {
  const int w = w_;
  const int h = h_;
  const double* u = img.values().data();
  double* out = result.values().data();

  const double* us = u;
  if (!kernel_.empty()) {
    gaussian_blur(u, smooth_.data(), tmp_.data(), w, h, kernel_);
    us = smooth_.data();
  }

  const double scale = 1.0 / cfg_.intensity_range;
  const double hx = scale / (2.0 * img.dx());
  const double hy = scale / (2.0 * img.dy());
  const double ixx = 1.0 / (img.dx() * img.dx());
  const double iyy = 1.0 / (img.dy() * img.dy());
  const double ixy = 1.0 / (4.0 * img.dx() * img.dy());
  const DiffusivitySpec& g = cfg_.diffusivity;
  const Mu3Rule rule = cfg_.mu3;

  double* txx = a_.data();
  double* txy = b_.data();
  double* tyy = c_.data();

  // T = D:H(u) with D built from the eigenframe of the smoothed gradient.
  for (int y = 0; y < h; ++y) {
    const std::size_t rc = static_cast<std::size_t>(y) * w;
    const std::size_t rm = static_cast<std::size_t>(ny_.prev[y]) * w;
    const std::size_t rp = static_cast<std::size_t>(ny_.next[y]) * w;
    for (int x = 0; x < w; ++x) {
      const int xm = nx_.prev[x];
      const int xp = nx_.next[x];

      const double gx = (us[rc + xp] - us[rc + xm]) * hx;
      const double gy = (us[rp + x] - us[rm + x]) * hy;
      const double n2 = gx * gx + gy * gy;
      const double n = std::sqrt(n2);
      double c = 1.0, s = 0.0, lambda1 = 0.0;
      if (n >= kGradientEpsilon) {
        c = gx / n;
        s = gy / n;
        lambda1 = n2;
      }

      const double uc = u[rc + x];
      const double hxx = (u[rc + xm] - 2.0 * uc + u[rc + xp]) * ixx;
      const double hyy = (u[rm + x] - 2.0 * uc + u[rp + x]) * iyy;
      const double hxy = (u[rp + xp] + u[rm + xm] - u[rp + xm] - u[rm + xp]) * ixy;

      const double mu1 = g(lambda1);
      const double mu3 = mu3_value(rule, mu1, 1.0);

      // v1 = (c, s), v2 = (-s, c).
      const double cc = c * c, ss = s * s, cs = c * s;
      const double along = hxx * cc + 2.0 * hxy * cs + hyy * ss;   // v1^T H v1
      const double across = hxx * ss - 2.0 * hxy * cs + hyy * cc;  // v2^T H v2
      const double mixed = (hyy - hxx) * cs + hxy * (cc - ss);     // v1^T H v2

      const std::size_t i = rc + x;
      txx[i] = mu1 * along * cc + across * ss - 2.0 * mu3 * mixed * cs;
      txy[i] = (mu1 * along - across) * cs + mu3 * mixed * (cc - ss);
      tyy[i] = mu1 * along * ss + across * cc + 2.0 * mu3 * mixed * cs;
    }
  }

  // -(d_xx T_xx + 2 d_xy T_xy + d_yy T_yy); T_xy reflects as an odd field.
  for (int y = 0; y < h; ++y) {
    const std::size_t rc = static_cast<std::size_t>(y) * w;
    const std::size_t rm = static_cast<std::size_t>(ny_.prev[y]) * w;
    const std::size_t rp = static_cast<std::size_t>(ny_.next[y]) * w;
    const double sym = ny_.prev_sign[y];
    const double syp = ny_.next_sign[y];
    for (int x = 0; x < w; ++x) {
      const int xm = nx_.prev[x];
      const int xp = nx_.next[x];
      const double sxm = nx_.prev_sign[x];
      const double sxp = nx_.next_sign[x];
      const double dxx = (txx[rc + xm] - 2.0 * txx[rc + x] + txx[rc + xp]) * ixx;
      const double dyy = (tyy[rm + x] - 2.0 * tyy[rc + x] + tyy[rp + x]) * iyy;
      const double dxy = (sxp * syp * txy[rp + xp] + sxm * sym * txy[rm + xm] -
                          sxm * syp * txy[rp + xm] - sxp * sym * txy[rm + xp]) *
                         ixy;
      out[rc + x] = -(dxx + 2.0 * dxy + dyy);
    }
  }
}

void RhsEvaluator::eed(const ImageGrid& img, ImageGrid& result) {
  const int w = w_;
  const int h = h_;
  const double* u = img.values().data();
  double* out = result.values().data();

  const double* us = u;
  if (!kernel_.empty()) {
    gaussian_blur(u, smooth_.data(), tmp_.data(), w, h, kernel_);
    us = smooth_.data();
  }

  const double scale = 1.0 / cfg_.intensity_range;
  const double gx_scale = scale / (2.0 * img.dx());
  const double gy_scale = scale / (2.0 * img.dy());
  const DiffusivitySpec& g = cfg_.diffusivity;

  double* da = a_.data();
  double* db = b_.data();
  double* dc = c_.data();
  for (int y = 0; y < h; ++y) {
    const std::size_t rc = static_cast<std::size_t>(y) * w;
    const std::size_t rm = static_cast<std::size_t>(ny_.prev[y]) * w;
    const std::size_t rp = static_cast<std::size_t>(ny_.next[y]) * w;
    for (int x = 0; x < w; ++x) {
      const double gx = (us[rc + nx_.next[x]] - us[rc + nx_.prev[x]]) * gx_scale;
      const double gy = (us[rp + x] - us[rm + x]) * gy_scale;
      const SymMat2 d = eed_tensor(eigenframe_from_gradient({gx, gy}), g);
      da[rc + x] = d.xx;
      db[rc + x] = d.xy;
      dc[rc + x] = d.yy;
    }
  }

  const double idx2 = 1.0 / (img.dx() * img.dx());
  const double idy2 = 1.0 / (img.dy() * img.dy());
  const double ixy = 1.0 / (4.0 * img.dx() * img.dy());
  for (int y = 0; y < h; ++y) {
    const std::size_t rc = static_cast<std::size_t>(y) * w;
    const std::size_t rm = static_cast<std::size_t>(ny_.prev[y]) * w;
    const std::size_t rp = static_cast<std::size_t>(ny_.next[y]) * w;
    const double sym = ny_.prev_sign[y];
    const double syp = ny_.next_sign[y];
    for (int x = 0; x < w; ++x) {
      const int xm = nx_.prev[x];
      const int xp = nx_.next[x];
      const std::size_t i = rc + x;
      const double uc = u[i];

      const double a_e = 0.5 * (da[rc + xp] + da[i]);
      const double a_w = 0.5 * (da[rc + xm] + da[i]);
      const double c_n = 0.5 * (dc[rp + x] + dc[i]);
      const double c_s = 0.5 * (dc[rm + x] + dc[i]);
      const double diag = (a_e * (u[rc + xp] - uc) - a_w * (uc - u[rc + xm])) * idx2 +
                          (c_n * (u[rp + x] - uc) - c_s * (uc - u[rm + x])) * idy2;

      // d_x(b u_y) + d_y(b u_x); the fluxes are odd across the boundary.
      const double fxp = nx_.next_sign[x] * db[rc + xp] * (u[rp + xp] - u[rm + xp]);
      const double fxm = nx_.prev_sign[x] * db[rc + xm] * (u[rp + xm] - u[rm + xm]);
      const double fyp = syp * db[rp + x] * (u[rp + xp] - u[rp + xm]);
      const double fym = sym * db[rm + x] * (u[rm + xp] - u[rm + xm]);
      out[i] = diag + (fxp - fxm + fyp - fym) * ixy;
    }
  }
}

}  // namespace foeed::detail
