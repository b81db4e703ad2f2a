#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace ibnls::spectral {

using Complex = std::complex<double>;

// Periodic tensor grid on [-L/2, L/2)^dim with M points per axis. With the
// half-cell offset (default) no node coincides with the origin, so the
// singular weight is finite everywhere.
struct Grid {
  int dim = 1;
  int points_per_axis = 0;  // power of two
  double box_length = 0.0;
  bool offset = true;

  void validate() const;

  double h() const { return box_length / points_per_axis; }
  std::size_t size() const {
    std::size_t n = 1;
    for (int d = 0; d < dim; ++d) n *= static_cast<std::size_t>(points_per_axis);
    return n;
  }

  // coordinate of node i along one axis
  double coord(int i) const {
    return -box_length / 2 + (i + (offset ? 0.5 : 0.0)) * h();
  }
  // signed wavenumber 2*pi*k/L for axis index i in DFT order
  double wavenumber(int i) const {
    const int m = points_per_axis;
    const int k = (i < m / 2) ? i : i - m;
    return 2.0 * M_PI * k / box_length;
  }

  // decompose a flat row-major index into per-axis indices
  std::array<int, 3> unflatten(std::size_t idx) const {
    std::array<int, 3> ix{0, 0, 0};
    for (int d = dim - 1; d >= 0; --d) {
      ix[d] = static_cast<int>(idx % points_per_axis);
      idx /= points_per_axis;
    }
    return ix;
  }

  std::array<double, 3> position(std::size_t idx) const {
    const auto ix = unflatten(idx);
    std::array<double, 3> x{0, 0, 0};
    for (int d = 0; d < dim; ++d) x[d] = coord(ix[d]);
    return x;
  }

  double radius2(std::size_t idx) const {
    const auto x = position(idx);
    double r2 = 0;
    for (int d = 0; d < dim; ++d) r2 += x[d] * x[d];
    return r2;
  }

  bool operator==(const Grid& o) const {
    return dim == o.dim && points_per_axis == o.points_per_axis &&
           box_length == o.box_length && offset == o.offset;
  }
};

struct ComplexField {
  Grid grid;
  std::vector<Complex> values;
  double time = 0.0;

  static ComplexField zero(const Grid& g) {
    ComplexField f;
    f.grid = g;
    f.values.assign(g.size(), Complex(0, 0));
    return f;
  }

  bool finite() const;
  double max_abs() const;
};

struct WeightField {
  Grid grid;
  double b = 0.0;      // inhomogeneity exponent as a double (quadrature side)
  double delta = 0.0;  // regularization length
  std::vector<double> values;
};

// (|x|^2 + delta^2)^{-b/2} on the grid; throws std::domain_error when
// delta = 0 and a node sits at the origin.
WeightField make_weight(const Grid& grid, double b, double delta);

// Flat binary field snapshot:
//   16-byte header: magic "IBNL", u32 version, u32 dim, u32 M,
//   then f64 box length, f64 time, then M^dim little-endian complex doubles
//   in row-major order.
void write_field(const ComplexField& f, const std::string& path);
ComplexField read_field(const std::string& path);

}  // namespace ibnls::spectral
