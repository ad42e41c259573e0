#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace foeed {

/// Symmetric 2x2 tensor. The off-diagonal entry is stored once, so
/// reading (y,x) always returns the (x,y) component.
struct SymMat2 {
  double xx = 0.0;
  double xy = 0.0;
  double yy = 0.0;

  static constexpr SymMat2 identity() { return {1.0, 0.0, 1.0}; }

  constexpr double yx() const { return xy; }
  constexpr double trace() const { return xx + yy; }

  /// Component access by axis index, 0 = x, 1 = y.
  constexpr double operator()(int i, int j) const {
    if (i == 0 && j == 0) return xx;
    if (i == 1 && j == 1) return yy;
    return xy;
  }

  friend constexpr bool operator==(const SymMat2&, const SymMat2&) = default;
};

/// Dense row-major 2D field over a uniform grid with pixel spacings dx, dy.
/// x runs along the width (columns), y along the height (rows).
template <typename T>
class Grid {
 public:
  Grid() = default;

  Grid(int width, int height, T fill = T{}, double dx = 1.0, double dy = 1.0)
      : width_(width), height_(height), dx_(dx), dy_(dy) {
    if (width < 1 || height < 1) {
      throw std::invalid_argument("grid dimensions must be positive");
    }
    if (!(dx > 0.0) || !(dy > 0.0)) {
      throw std::invalid_argument("grid spacings must be positive");
    }
    data_.assign(static_cast<std::size_t>(width) * height, fill);
  }

  /// Grid with the same dimensions and spacings as `shape`.
  template <typename U>
  static Grid like(const Grid<U>& shape, T fill = T{}) {
    return Grid(shape.width(), shape.height(), fill, shape.dx(), shape.dy());
  }

  int width() const { return width_; }
  int height() const { return height_; }
  double dx() const { return dx_; }
  double dy() const { return dy_; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  T& operator()(int x, int y) { return data_[index(x, y)]; }
  const T& operator()(int x, int y) const { return data_[index(x, y)]; }

  T& operator[](std::size_t i) { return data_[i]; }
  const T& operator[](std::size_t i) const { return data_[i]; }

  std::span<T> values() { return data_; }
  std::span<const T> values() const { return data_; }

  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y) * width_ + x;
  }

  template <typename U>
  bool same_shape(const Grid<U>& other) const {
    return width_ == other.width() && height_ == other.height();
  }

  friend bool operator==(const Grid& a, const Grid& b) {
    return a.width_ == b.width_ && a.height_ == b.height_ && a.data_ == b.data_;
  }

 private:
  int width_ = 0;
  int height_ = 0;
  double dx_ = 1.0;
  double dy_ = 1.0;
  std::vector<T> data_;
};

using ImageGrid = Grid<double>;
using TensorField = Grid<SymMat2>;

struct VectorField2 {
  ImageGrid x;
  ImageGrid y;
};

/// Known-pixel set K. true marks a pixel whose value is pinned to the data.
class Mask {
 public:
  Mask() = default;
  Mask(int width, int height, bool known = false)
      : known_(width, height, known ? 1 : 0) {}

  int width() const { return known_.width(); }
  int height() const { return known_.height(); }
  std::size_t size() const { return known_.size(); }

  bool known(int x, int y) const { return known_(x, y) != 0; }
  bool known(std::size_t i) const { return known_[i] != 0; }
  void set(int x, int y, bool k) { known_(x, y) = k ? 1 : 0; }
  void set(std::size_t i, bool k) { known_[i] = k ? 1 : 0; }

  std::size_t known_count() const;
  std::size_t unknown_count() const { return size() - known_count(); }

  template <typename U>
  bool same_shape(const Grid<U>& g) const {
    return width() == g.width() && height() == g.height();
  }

  friend bool operator==(const Mask&, const Mask&) = default;

 private:
  Grid<unsigned char> known_;
};

/// Half-sample symmetric reflection of an index into [0, n). Realizes
/// homogeneous Neumann conditions: u[-1] = u[0], u[n] = u[n-1].
inline int reflect_index(int i, int n) {
  const int period = 2 * n;
  int m = i % period;
  if (m < 0) m += period;
  return m < n ? m : period - 1 - m;
}

/// Sign picked up by an odd field (for example the xy component of a tensor
/// field) when index i is reflected into [0, n).
inline double reflect_sign(int i, int n) {
  const int period = 2 * n;
  int m = i % period;
  if (m < 0) m += period;
  return m < n ? 1.0 : -1.0;
}

/// Throws std::invalid_argument unless the grid supports 3x3 stencils.
void require_stencil_size(int width, int height, const char* what);

/// Normalized sampled Gaussian, radius ceil(3 sigma), separable x then y,
/// mirrored boundaries. sigma == 0 returns the input unchanged.
ImageGrid gaussian_smooth(const ImageGrid& img, double sigma);

/// Truncated, normalized 1D kernel used by gaussian_smooth (index 0 is the
/// leftmost tap). Empty for sigma == 0.
std::vector<double> gaussian_kernel(double sigma);

/// Central differences with mirrored boundaries.
VectorField2 gradient(const ImageGrid& img);

/// Second-derivative stencils with mirrored boundaries. The mixed entry uses
/// the antisymmetric four-point stencil.
TensorField hessian(const ImageGrid& img);

/// J = grad(u_sigma) grad(u_sigma)^T per pixel.
TensorField structure_tensor(const ImageGrid& img, double sigma);

/// div(D grad u). Diagonal fluxes are averaged onto half-pixel positions;
/// mixed fluxes use central differences of central differences. For D = I
/// this is exactly the 5-point Laplacian.
ImageGrid outer_div2(const TensorField& diffusion, const ImageGrid& u);

/// d_xx T_xx + d_xy T_xy + d_yx T_yx + d_yy T_yy using the same stencils as
/// hessian(). The xy component is reflected as an odd field, which makes
/// this operator the exact adjoint of hessian().
ImageGrid outer_second(const TensorField& t);

}  // namespace foeed
