#include "foeed/grid.hpp"

#include "stencil.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace foeed {

std::size_t Mask::known_count() const {
  const auto v = known_.values();
  return static_cast<std::size_t>(std::count(v.begin(), v.end(), 1));
}

void require_stencil_size(int width, int height, const char* what) {
  if (width < 3 || height < 3) {
    throw std::invalid_argument(std::string(what) +
                                ": grid must be at least 3x3");
  }
}

std::vector<double> gaussian_kernel(double sigma) {
  if (sigma < 0.0) throw std::invalid_argument("sigma must be nonnegative");
  if (sigma == 0.0) return {};
  const int radius = static_cast<int>(std::ceil(3.0 * sigma));
  std::vector<double> k(2 * radius + 1);
  for (int i = -radius; i <= radius; ++i) {
    k[i + radius] = std::exp(-(i * i) / (2.0 * sigma * sigma));
  }
  const double sum = std::accumulate(k.begin(), k.end(), 0.0);
  for (double& w : k) w /= sum;
  return k;
}

namespace detail {

void gaussian_blur(const double* in, double* out, double* tmp, int w, int h,
                   const std::vector<double>& kernel) {
  const int radius = static_cast<int>(kernel.size() / 2);
  const double* k = kernel.data() + radius;

  for (int y = 0; y < h; ++y) {
    const double* row = in + static_cast<std::size_t>(y) * w;
    double* dst = tmp + static_cast<std::size_t>(y) * w;
    for (int x = 0; x < w; ++x) {
      double acc = 0.0;
      if (x >= radius && x + radius < w) {
        for (int j = -radius; j <= radius; ++j) acc += k[j] * row[x + j];
      } else {
        for (int j = -radius; j <= radius; ++j) acc += k[j] * row[reflect_index(x + j, w)];
      }
      dst[x] = acc;
    }
  }

  for (int y = 0; y < h; ++y) {
    double* dst = out + static_cast<std::size_t>(y) * w;
    for (int x = 0; x < w; ++x) dst[x] = 0.0;
    for (int j = -radius; j <= radius; ++j) {
      const double* src = tmp + static_cast<std::size_t>(reflect_index(y + j, h)) * w;
      const double kj = k[j];
      for (int x = 0; x < w; ++x) dst[x] += kj * src[x];
    }
  }
}

}  // namespace detail

ImageGrid gaussian_smooth(const ImageGrid& img, double sigma) {
  const std::vector<double> kernel = gaussian_kernel(sigma);
  if (kernel.empty()) return img;
  ImageGrid tmp = ImageGrid::like(img);
  ImageGrid out = ImageGrid::like(img);
  detail::gaussian_blur(img.values().data(), out.values().data(), tmp.values().data(),
                        img.width(), img.height(), kernel);
  return out;
}

VectorField2 gradient(const ImageGrid& img) {
  const int w = img.width();
  const int h = img.height();
  require_stencil_size(w, h, "gradient");

  VectorField2 g{ImageGrid::like(img), ImageGrid::like(img)};
  const double hx = 1.0 / (2.0 * img.dx());
  const double hy = 1.0 / (2.0 * img.dy());
  for (int y = 0; y < h; ++y) {
    const int ym = reflect_index(y - 1, h);
    const int yp = reflect_index(y + 1, h);
    for (int x = 0; x < w; ++x) {
      const int xm = reflect_index(x - 1, w);
      const int xp = reflect_index(x + 1, w);
      g.x(x, y) = (img(xp, y) - img(xm, y)) * hx;
      g.y(x, y) = (img(x, yp) - img(x, ym)) * hy;
    }
  }
  return g;
}

TensorField hessian(const ImageGrid& img) {
  const int w = img.width();
  const int h = img.height();
  require_stencil_size(w, h, "hessian");

  TensorField out = TensorField::like(img);
  const double ixx = 1.0 / (img.dx() * img.dx());
  const double iyy = 1.0 / (img.dy() * img.dy());
  const double ixy = 1.0 / (4.0 * img.dx() * img.dy());
  for (int y = 0; y < h; ++y) {
    const int ym = reflect_index(y - 1, h);
    const int yp = reflect_index(y + 1, h);
    for (int x = 0; x < w; ++x) {
      const int xm = reflect_index(x - 1, w);
      const int xp = reflect_index(x + 1, w);
      const double c = img(x, y);
      SymMat2& hm = out(x, y);
      hm.xx = (img(xm, y) - 2.0 * c + img(xp, y)) * ixx;
      hm.yy = (img(x, ym) - 2.0 * c + img(x, yp)) * iyy;
      hm.xy = (img(xp, yp) + img(xm, ym) - img(xm, yp) - img(xp, ym)) * ixy;
    }
  }
  return out;
}

TensorField structure_tensor(const ImageGrid& img, double sigma) {
  const VectorField2 g = gradient(gaussian_smooth(img, sigma));
  TensorField j = TensorField::like(img);
  for (std::size_t i = 0; i < j.size(); ++i) {
    const double gx = g.x[i];
    const double gy = g.y[i];
    j[i] = {gx * gx, gx * gy, gy * gy};
  }
  return j;
}

ImageGrid outer_div2(const TensorField& diffusion, const ImageGrid& u) {
  if (!diffusion.same_shape(u)) {
    throw std::invalid_argument("outer_div2: tensor field and image differ in size");
  }
  const int w = u.width();
  const int h = u.height();
  require_stencil_size(w, h, "outer_div2");

  const double dx = u.dx();
  const double dy = u.dy();

  // Mixed fluxes b*u_y and b*u_x at pixel centers. b = D_xy is odd under
  // reflection, so both fluxes are odd across the boundary they are
  // differenced over.
  ImageGrid flux_x = ImageGrid::like(u);  // D_xy * u_y, differenced in x
  ImageGrid flux_y = ImageGrid::like(u);  // D_xy * u_x, differenced in y
  for (int y = 0; y < h; ++y) {
    const int ym = reflect_index(y - 1, h);
    const int yp = reflect_index(y + 1, h);
    for (int x = 0; x < w; ++x) {
      const int xm = reflect_index(x - 1, w);
      const int xp = reflect_index(x + 1, w);
      const double b = diffusion(x, y).xy;
      flux_x(x, y) = b * (u(x, yp) - u(x, ym)) / (2.0 * dy);
      flux_y(x, y) = b * (u(xp, y) - u(xm, y)) / (2.0 * dx);
    }
  }

  ImageGrid out = ImageGrid::like(u);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const int xm = reflect_index(x - 1, w);
      const int xp = reflect_index(x + 1, w);
      const int ym = reflect_index(y - 1, h);
      const int yp = reflect_index(y + 1, h);
      const double c = u(x, y);
      const SymMat2& d = diffusion(x, y);

      const double a_e = 0.5 * (diffusion(xp, y).xx + d.xx);
      const double a_w = 0.5 * (diffusion(xm, y).xx + d.xx);
      const double c_n = 0.5 * (diffusion(x, yp).yy + d.yy);
      const double c_s = 0.5 * (diffusion(x, ym).yy + d.yy);
      const double diag = (a_e * (u(xp, y) - c) - a_w * (c - u(xm, y))) / (dx * dx) +
                          (c_n * (u(x, yp) - c) - c_s * (c - u(x, ym))) / (dy * dy);

      const double fxp = reflect_sign(x + 1, w) * flux_x(xp, y);
      const double fxm = reflect_sign(x - 1, w) * flux_x(xm, y);
      const double fyp = reflect_sign(y + 1, h) * flux_y(x, yp);
      const double fym = reflect_sign(y - 1, h) * flux_y(x, ym);
      const double mixed = (fxp - fxm) / (2.0 * dx) + (fyp - fym) / (2.0 * dy);

      out(x, y) = diag + mixed;
    }
  }
  return out;
}

ImageGrid outer_second(const TensorField& t) {
  const int w = t.width();
  const int h = t.height();
  require_stencil_size(w, h, "outer_second");

  const double ixx = 1.0 / (t.dx() * t.dx());
  const double iyy = 1.0 / (t.dy() * t.dy());
  const double ixy = 1.0 / (4.0 * t.dx() * t.dy());

  ImageGrid out(w, h, 0.0, t.dx(), t.dy());
  for (int y = 0; y < h; ++y) {
    const int ym = reflect_index(y - 1, h);
    const int yp = reflect_index(y + 1, h);
    const double sym = reflect_sign(y - 1, h);
    const double syp = reflect_sign(y + 1, h);
    for (int x = 0; x < w; ++x) {
      const int xm = reflect_index(x - 1, w);
      const int xp = reflect_index(x + 1, w);
      const double sxm = reflect_sign(x - 1, w);
      const double sxp = reflect_sign(x + 1, w);
      const SymMat2& c = t(x, y);

      const double dxx = (t(xm, y).xx - 2.0 * c.xx + t(xp, y).xx) * ixx;
      const double dyy = (t(x, ym).yy - 2.0 * c.yy + t(x, yp).yy) * iyy;
      const double dxy = (sxp * syp * t(xp, yp).xy + sxm * sym * t(xm, ym).xy -
                          sxm * syp * t(xm, yp).xy - sxp * sym * t(xp, ym).xy) *
                         ixy;
      // The xy and yx terms coincide for a symmetric field.
      out(x, y) = dxx + 2.0 * dxy + dyy;
    }
  }
  return out;
}

}  // namespace foeed
