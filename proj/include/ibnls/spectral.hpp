#pragma once

#include <array>

#include "ibnls/grid.hpp"

namespace ibnls::spectral {

// Exact free flow: multiplies each Fourier mode by exp(i t |xi|^4) and
// advances the timestamp. Unitary on the discrete L2 norm.
ComplexField free_propagator(const ComplexField& field, double t);

// Homogeneous Sobolev seminorm of order s >= 0 via the |xi|^s multiplier,
// normalized so that s = 0 reproduces the quadrature L2 norm:
//   ( h^{2d}/L^d * sum_k |xi_k|^{2s} |F_k|^2 )^{1/2}.
// The zero mode carries weight 1 at s = 0 and 0 for s > 0.
double sobolev_seminorm(const ComplexField& field, double s);

// Quadrature L2 norm (h^{d/2} * l2 of samples); used pervasively.
double l2_norm(const ComplexField& field);

// sqrt(l2^2 + seminorm(2)^2); the discrete H^2 size used by the harness.
double h2_norm(const ComplexField& field);

// Gradient magnitude |grad u| per node by spectral differentiation.
std::vector<double> gradient_magnitude(const ComplexField& field);

// Evaluate the trigonometric interpolant at an arbitrary point (costs
// O(M^dim) per point; intended for dim-1 comparisons).
Complex fourier_eval(const ComplexField& field, const std::array<double, 3>& x);

// Zero all modes with |k| > M/3 on any axis (2/3-rule truncation).
void dealias(ComplexField& field);

// Fraction of the total mass within one cell of the box boundary.
double boundary_mass_fraction(const ComplexField& field);

}  // namespace ibnls::spectral
