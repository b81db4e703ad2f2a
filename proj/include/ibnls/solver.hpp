#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "ibnls/grid.hpp"
#include "ibnls/regime.hpp"

namespace ibnls::solver {

using spectral::Complex;
using spectral::ComplexField;
using spectral::Grid;
using spectral::WeightField;

enum class Scheme { Strang, PicardOnWindow };

// Forcing term e(t, x), evaluated at substep centers. Receives the time and
// fills a per-node complex value through the node index.
using Forcing = std::function<Complex(double t, const std::array<double, 3>& x)>;

struct SolverConfig {
  regime::ProblemParams params;
  Grid grid;
  double dt = 1e-3;
  double t_end = 1.0;
  Scheme scheme = Scheme::Strang;
  double delta_reg = 0.0;
  int sample_stride = 1;
  bool dealias = false;
  double boundary_mass_tol = 1e-6;
  // test hooks: run only one half of the splitting
  bool disable_linear = false;
  bool disable_nonlinear = false;

  void validate() const;
  int n_steps() const;
};

struct SampleStats {
  double t = 0;
  double mass = 0;
  double energy = 0;
  double h2 = 0;
  double linf = 0;
  double boundary_mass = 0;
};

struct Trajectory {
  std::vector<ComplexField> samples;
  std::vector<SampleStats> stats;
  SolverConfig config;
  bool blowup = false;
  bool boundary_warning = false;
};

// Exact phase-rotation substep of the ODE i u_t = -lambda w |u|^alpha u:
//   u <- u * exp(i lambda w(x) |u|^alpha dt).
// Preserves |u| pointwise.
ComplexField nonlinear_flow(const ComplexField& field, const WeightField& weight,
                            const regime::ProblemParams& params, double dt);

// Symmetric composition: half linear flow, full nonlinear flow, half linear
// flow. Mass is preserved to roundoff by both substeps.
ComplexField strang_step(const ComplexField& field, const WeightField& weight,
                         const SolverConfig& config, double dt,
                         const Forcing* forcing = nullptr);

// mass M = ||u||_2^2 and energy E = 1/2 ||D^2 u||_2^2
//   + lambda/(alpha+2) * sum w |u|^{alpha+2} h^dim.
double mass_of(const ComplexField& field);
double energy_of(const ComplexField& field, const WeightField& weight,
                 const regime::ProblemParams& params);

// Repeated strang_step with sampling every sample_stride steps (the final
// state is always sampled). Aborts with the blowup flag when max|u| exceeds
// 1e6 times its initial value.
Trajectory evolve(const ComplexField& u0, const SolverConfig& config,
                  const Forcing* forcing = nullptr);

struct PicardReport {
  std::vector<Trajectory> iterates;          // u^(0), ..., u^(n_iters)
  std::vector<double> distances;             // sup-in-time L2 gaps between successive iterates
  std::vector<double> contraction_ratios;    // distances[k+1]/distances[k]
  bool converged = false;
};

// Literal fixed-point iteration of the integral operator
//   G(u)(t) = e^{it D^2} u0 + i lambda int_0^t e^{i(t-s) D^2} w |u|^alpha u ds
// on the uniform slice set {j dt}, with the time integral by composite
// trapezoid and every propagation exact in Fourier space. The distance is
// the sup over slices of the discrete L2 norm.
PicardReport picard_iterate(const ComplexField& u0, const SolverConfig& config, int n_iters);

}  // namespace ibnls::solver
