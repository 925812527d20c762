#pragma once
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace tmsv {

// Sampling lattice for 2D fields.  Values at index (ix, iy) correspond to
// (x_axis[ix], y_axis[iy]); storage is row-major in iy (iy*nx + ix).
struct GridSpec {
  double x_min = -3.0, x_max = 3.0;
  std::size_t nx = 201;
  double y_min = -3.0, y_max = 3.0;
  std::size_t ny = 201;

  void validate() const {
    if (!(x_min < x_max) || !(y_min < y_max))
      throw std::invalid_argument("GridSpec: min must be < max on both axes");
    if (nx < 2 || ny < 2)
      throw std::invalid_argument("GridSpec: need at least 2 points per axis");
  }
  // Endpoints are returned exactly: x_min + span*(n-1)/(n-1) can land one
  // ulp off x_max, which would leak into printed sample coordinates.
  double x(std::size_t ix) const {
    if (ix == nx - 1) return x_max;
    return x_min + (x_max - x_min) * static_cast<double>(ix) / static_cast<double>(nx - 1);
  }
  double y(std::size_t iy) const {
    if (iy == ny - 1) return y_max;
    return y_min + (y_max - y_min) * static_cast<double>(iy) / static_cast<double>(ny - 1);
  }
  double dx() const { return (x_max - x_min) / static_cast<double>(nx - 1); }
  double dy() const { return (y_max - y_min) / static_cast<double>(ny - 1); }
  GridSpec refined2x() const {
    return GridSpec{x_min, x_max, 2 * nx - 1, y_min, y_max, 2 * ny - 1};
  }
};

template <class T>
struct Field2D {
  GridSpec grid;
  std::vector<T> value;  // size nx*ny, index iy*nx + ix

  Field2D() = default;
  explicit Field2D(const GridSpec& g) : grid(g), value(g.nx * g.ny) { g.validate(); }
  T& at(std::size_t ix, std::size_t iy) { return value[iy * grid.nx + ix]; }
  const T& at(std::size_t ix, std::size_t iy) const { return value[iy * grid.nx + ix]; }
};

}  // namespace tmsv
