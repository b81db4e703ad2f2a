#include "ibnls/spectral.hpp"

#include <cmath>
#include <stdexcept>

#include "ibnls/fft.hpp"

namespace ibnls::spectral {

namespace {

double wavenumber2(const Grid& g, std::size_t idx) {
  const auto ix = g.unflatten(idx);
  double k2 = 0;
  for (int d = 0; d < g.dim; ++d) {
    const double xi = g.wavenumber(ix[d]);
    k2 += xi * xi;
  }
  return k2;
}

}  // namespace

ComplexField free_propagator(const ComplexField& field, double t) {
  if (!std::isfinite(t)) throw std::domain_error("free_propagator: non-finite t");
  ComplexField out = field;
  fft::forward(out.grid, out.values);
  for (std::size_t i = 0; i < out.values.size(); ++i) {
    const double k2 = wavenumber2(out.grid, i);
    const double phase = t * k2 * k2;
    out.values[i] *= Complex(std::cos(phase), std::sin(phase));
  }
  fft::inverse(out.grid, out.values);
  out.time = field.time + t;
  return out;
}

double sobolev_seminorm(const ComplexField& field, double s) {
  if (s < 0) throw std::invalid_argument("sobolev_seminorm: s < 0 unsupported");
  ComplexField tmp = field;
  fft::forward(tmp.grid, tmp.values);
  double acc = 0;
  for (std::size_t i = 0; i < tmp.values.size(); ++i) {
    const double k2 = wavenumber2(tmp.grid, i);
    double w;
    if (s == 0)
      w = 1.0;
    else
      w = (k2 == 0) ? 0.0 : std::pow(k2, s);
    acc += w * std::norm(tmp.values[i]);
  }
  const Grid& g = field.grid;
  const double factor = std::pow(g.h(), 2 * g.dim) / std::pow(g.box_length, g.dim);
  return std::sqrt(factor * acc);
}

double l2_norm(const ComplexField& field) {
  double acc = 0;
  for (const Complex& v : field.values) acc += std::norm(v);
  return std::sqrt(acc * std::pow(field.grid.h(), field.grid.dim));
}

double h2_norm(const ComplexField& field) {
  const double a = l2_norm(field);
  const double b = sobolev_seminorm(field, 2.0);
  return std::sqrt(a * a + b * b);
}

std::vector<double> gradient_magnitude(const ComplexField& field) {
  const Grid& g = field.grid;
  std::vector<double> mag2(g.size(), 0.0);
  for (int d = 0; d < g.dim; ++d) {
    ComplexField comp = field;
    fft::forward(g, comp.values);
    for (std::size_t i = 0; i < comp.values.size(); ++i) {
      const auto ix = g.unflatten(i);
      const double xi = g.wavenumber(ix[d]);
      comp.values[i] *= Complex(0, xi);
    }
    fft::inverse(g, comp.values);
    for (std::size_t i = 0; i < mag2.size(); ++i) mag2[i] += std::norm(comp.values[i]);
  }
  std::vector<double> mag(mag2.size());
  for (std::size_t i = 0; i < mag.size(); ++i) mag[i] = std::sqrt(mag2[i]);
  return mag;
}

Complex fourier_eval(const ComplexField& field, const std::array<double, 3>& x) {
  const Grid& g = field.grid;
  ComplexField hat = field;
  fft::forward(g, hat.values);
  // interpolant: (1/M^d) sum_k F_k exp(i xi_k . (x - x0)), x0 = node 0
  std::array<double, 3> dx{0, 0, 0};
  for (int d = 0; d < g.dim; ++d) dx[d] = x[d] - g.coord(0);
  Complex acc(0, 0);
  for (std::size_t i = 0; i < hat.values.size(); ++i) {
    const auto ix = g.unflatten(i);
    double phase = 0;
    for (int d = 0; d < g.dim; ++d) phase += g.wavenumber(ix[d]) * dx[d];
    acc += hat.values[i] * Complex(std::cos(phase), std::sin(phase));
  }
  return acc / static_cast<double>(g.size());
}

void dealias(ComplexField& field) {
  const Grid& g = field.grid;
  const int m = g.points_per_axis;
  fft::forward(g, field.values);
  for (std::size_t i = 0; i < field.values.size(); ++i) {
    const auto ix = g.unflatten(i);
    for (int d = 0; d < g.dim; ++d) {
      const int k = (ix[d] < m / 2) ? ix[d] : ix[d] - m;
      if (3 * std::abs(k) > m) {
        field.values[i] = Complex(0, 0);
        break;
      }
    }
  }
  fft::inverse(g, field.values);
}

double boundary_mass_fraction(const ComplexField& field) {
  const Grid& g = field.grid;
  const double edge = g.box_length / 2 - g.h();
  double total = 0, boundary = 0;
  for (std::size_t i = 0; i < field.values.size(); ++i) {
    const double m = std::norm(field.values[i]);
    total += m;
    const auto x = g.position(i);
    for (int d = 0; d < g.dim; ++d) {
      if (std::abs(x[d]) >= edge) {
        boundary += m;
        break;
      }
    }
  }
  return total > 0 ? boundary / total : 0.0;
}

}  // namespace ibnls::spectral
