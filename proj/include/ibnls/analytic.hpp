#pragma once

#include <array>
#include <complex>

#include "ibnls/grid.hpp"

namespace ibnls::spectral {

// Closed-form Gaussian wave packet
//   u(x) = A exp(-|x - c|^2 / (2 sigma^2)) exp(i k . x).
// The probes rescale these analytically (never by interpolation), and the
// gradient is available in closed form.
struct GaussianPacket {
  double amplitude = 1.0;
  double sigma = 1.0;
  std::array<double, 3> center{0, 0, 0};
  std::array<double, 3> wavevector{0, 0, 0};

  Complex value(const std::array<double, 3>& x, int dim) const {
    double r2 = 0, kx = 0;
    for (int d = 0; d < dim; ++d) {
      const double dx = x[d] - center[d];
      r2 += dx * dx;
      kx += wavevector[d] * x[d];
    }
    const double env = amplitude * std::exp(-r2 / (2 * sigma * sigma));
    return env * Complex(std::cos(kx), std::sin(kx));
  }

  // gradient component d of u at x
  Complex gradient(const std::array<double, 3>& x, int dim, int d) const {
    const Complex u = value(x, dim);
    return u * Complex(-(x[d] - center[d]) / (sigma * sigma), wavevector[d]);
  }

  // mu^p u(mu x): the analytically rescaled packet
  GaussianPacket scaled(double mu, double p) const {
    GaussianPacket s = *this;
    s.amplitude = amplitude * std::pow(mu, p);
    s.sigma = sigma / mu;
    for (int d = 0; d < 3; ++d) {
      s.center[d] = center[d] / mu;
      s.wavevector[d] = wavevector[d] * mu;
    }
    return s;
  }

  ComplexField sample(const Grid& grid) const {
    grid.validate();
    ComplexField f = ComplexField::zero(grid);
    for (std::size_t i = 0; i < f.values.size(); ++i)
      f.values[i] = value(grid.position(i), grid.dim);
    return f;
  }
};

}  // namespace ibnls::spectral
