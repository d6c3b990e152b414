#pragma once

// Uniform rectangular grids and fields stored on their interior nodes.
//
// Storage order is x-fastest: entry (i, j) of an Nx x Ny field lives at
// index i + Nx * j, i.e. U_{1,1}, ..., U_{Nx,1}, U_{1,2}, ... in 1-based
// node numbering.

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace fracrd {

struct GridSpec {
  double x_left = 0.0;
  double x_right = 1.0;
  double y_down = 0.0;
  double y_up = 1.0;
  std::size_t nx = 1;  // interior nodes in x
  std::size_t ny = 1;  // interior nodes in y

  /// Throws std::invalid_argument if the bounds or counts are degenerate.
  void validate() const;

  std::size_t size() const noexcept { return nx * ny; }
  double hx() const noexcept { return (x_right - x_left) / static_cast<double>(nx + 1); }
  double hy() const noexcept { return (y_up - y_down) / static_cast<double>(ny + 1); }
  /// Interior node coordinates, 0-based: x(0) is the first interior node.
  double x(std::size_t i) const noexcept { return x_left + static_cast<double>(i + 1) * hx(); }
  double y(std::size_t j) const noexcept { return y_down + static_cast<double>(j + 1) * hy(); }

  /// Square grid on the unit square with n interior nodes per side (h = 1/(n+1)).
  static GridSpec unit_square(std::size_t n_interior);
};

class FieldVector {
 public:
  FieldVector() = default;
  FieldVector(std::size_t nx, std::size_t ny) : nx_(nx), ny_(ny), values_(nx * ny, 0.0) {}
  FieldVector(std::size_t nx, std::size_t ny, std::vector<double> values)
      : nx_(nx), ny_(ny), values_(std::move(values)) {
    if (values_.size() != nx_ * ny_) throw std::invalid_argument("FieldVector: size does not match nx*ny");
  }

  std::size_t nx() const noexcept { return nx_; }
  std::size_t ny() const noexcept { return ny_; }
  std::size_t size() const noexcept { return values_.size(); }

  double& operator()(std::size_t i, std::size_t j) noexcept { return values_[i + nx_ * j]; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return values_[i + nx_ * j]; }

  std::span<double> span() noexcept { return values_; }
  std::span<const double> span() const noexcept { return values_; }
  const std::vector<double>& values() const noexcept { return values_; }
  std::vector<double>& values() noexcept { return values_; }

  bool conforms_to(const GridSpec& g) const noexcept { return nx_ == g.nx && ny_ == g.ny; }

  friend bool operator==(const FieldVector&, const FieldVector&) = default;

 private:
  std::size_t nx_ = 0;
  std::size_t ny_ = 0;
  std::vector<double> values_;
};

}  // namespace fracrd
