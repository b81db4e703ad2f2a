#include "ibnls/solver.hpp"

#include <cmath>
#include <stdexcept>

#include "ibnls/fft.hpp"
#include "ibnls/spectral.hpp"

namespace ibnls::solver {

using spectral::fft::forward;
using spectral::fft::inverse;

void SolverConfig::validate() const {
  params.validate();
  grid.validate();
  if (params.dim != grid.dim) throw std::invalid_argument("params.dim != grid.dim");
  if (!(dt > 0) || !std::isfinite(dt)) throw std::invalid_argument("dt must be > 0");
  if (!(t_end > 0) || !std::isfinite(t_end)) throw std::invalid_argument("t_end must be > 0");
  if (t_end / dt > 5e7) throw std::invalid_argument("step count out of range");
  if (sample_stride < 1) throw std::invalid_argument("sample_stride must be >= 1");
  if (delta_reg < 0) throw std::invalid_argument("delta_reg must be >= 0");
  if (!(boundary_mass_tol > 0)) throw std::invalid_argument("boundary_mass_tol must be > 0");
}

int SolverConfig::n_steps() const {
  return static_cast<int>(std::llround(t_end / dt));
}

ComplexField nonlinear_flow(const ComplexField& field, const WeightField& weight,
                            const regime::ProblemParams& params, double dt) {
  if (!(field.grid == weight.grid))
    throw std::invalid_argument("nonlinear_flow: field and weight grids differ");
  const double alpha = to_double(params.alpha);
  const double lam = params.lambda;
  ComplexField out = field;
  for (std::size_t i = 0; i < out.values.size(); ++i) {
    const double a2 = std::norm(out.values[i]);
    if (a2 == 0.0) continue;
    const double phase = lam * weight.values[i] * std::pow(a2, alpha / 2) * dt;
    out.values[i] *= Complex(std::cos(phase), std::sin(phase));
  }
  return out;
}

ComplexField strang_step(const ComplexField& field, const WeightField& weight,
                         const SolverConfig& config, double dt, const Forcing* forcing) {
  ComplexField u = config.disable_linear ? field : spectral::free_propagator(field, dt / 2);
  if (config.disable_linear) u.time += dt / 2;
  if (!config.disable_nonlinear) {
    u = nonlinear_flow(u, weight, config.params, dt);
  }
  if (forcing) {
    // explicit Euler increment -i e dt, with e evaluated at the substep center
    const double tc = u.time;
    for (std::size_t i = 0; i < u.values.size(); ++i) {
      const Complex e = (*forcing)(tc, u.grid.position(i));
      u.values[i] += Complex(0, -1) * e * dt;
    }
  }
  if (config.dealias) spectral::dealias(u);
  if (config.disable_linear) {
    u.time += dt / 2;
    return u;
  }
  return spectral::free_propagator(u, dt / 2);
}

double mass_of(const ComplexField& field) {
  const double n = spectral::l2_norm(field);
  return n * n;
}

double energy_of(const ComplexField& field, const WeightField& weight,
                 const regime::ProblemParams& params) {
  const double kin = spectral::sobolev_seminorm(field, 2.0);
  const double alpha = to_double(params.alpha);
  double pot = 0;
  for (std::size_t i = 0; i < field.values.size(); ++i) {
    const double a2 = std::norm(field.values[i]);
    if (a2 == 0.0) continue;
    pot += weight.values[i] * std::pow(a2, (alpha + 2) / 2);
  }
  pot *= std::pow(field.grid.h(), field.grid.dim);
  return 0.5 * kin * kin + params.lambda * pot / (alpha + 2);
}

namespace {

SampleStats stats_of(const ComplexField& u, const WeightField& w,
                     const regime::ProblemParams& params, bool coupling_off) {
  SampleStats s;
  s.t = u.time;
  s.mass = mass_of(u);
  if (coupling_off) {
    // the free equation conserves the kinetic part alone
    const double kin = spectral::sobolev_seminorm(u, 2.0);
    s.energy = 0.5 * kin * kin;
  } else {
    s.energy = energy_of(u, w, params);
  }
  s.h2 = spectral::h2_norm(u);
  s.linf = u.max_abs();
  s.boundary_mass = spectral::boundary_mass_fraction(u);
  return s;
}

}  // namespace

Trajectory evolve(const ComplexField& u0, const SolverConfig& config, const Forcing* forcing) {
  config.validate();
  if (!(u0.grid == config.grid)) throw std::invalid_argument("evolve: u0 not on config.grid");
  if (!u0.finite()) throw std::invalid_argument("evolve: non-finite initial data");

  const WeightField w = spectral::make_weight(config.grid, to_double(config.params.b),
                                              config.delta_reg);
  Trajectory traj;
  traj.config = config;

  ComplexField u = u0;
  u.time = 0.0;
  const double a0 = u.max_abs();
  traj.samples.push_back(u);
  traj.stats.push_back(stats_of(u, w, config.params, config.disable_nonlinear));

  const int n = config.n_steps();
  for (int k = 1; k <= n; ++k) {
    u = strang_step(u, w, config, config.dt, forcing);
    if (a0 > 0 && u.max_abs() > 1e6 * a0) {
      traj.blowup = true;
      break;
    }
    if (k % config.sample_stride == 0 || k == n) {
      traj.samples.push_back(u);
      traj.stats.push_back(stats_of(u, w, config.params, config.disable_nonlinear));
      if (traj.stats.back().boundary_mass > config.boundary_mass_tol)
        traj.boundary_warning = true;
    }
  }
  return traj;
}

PicardReport picard_iterate(const ComplexField& u0, const SolverConfig& config, int n_iters) {
  config.validate();
  if (n_iters < 2) throw std::invalid_argument("picard_iterate: n_iters must be >= 2");
  if (!(u0.grid == config.grid)) throw std::invalid_argument("picard: u0 not on config.grid");

  const Grid& g = config.grid;
  const int n_slices = config.n_steps();
  if (n_slices < 1) throw std::invalid_argument("picard: window shorter than dt");
  const double dt = config.t_end / n_slices;
  const WeightField w = spectral::make_weight(g, to_double(config.params.b), config.delta_reg);
  const double alpha = to_double(config.params.alpha);
  const double lam = config.params.lambda;

  // per-mode |xi|^4 table
  std::vector<double> sym(g.size());
  for (std::size_t i = 0; i < sym.size(); ++i) {
    const auto ix = g.unflatten(i);
    double k2 = 0;
    for (int d = 0; d < g.dim; ++d) {
      const double xi = g.wavenumber(ix[d]);
      k2 += xi * xi;
    }
    sym[i] = k2 * k2;
  }
  auto phase_mul = [&](std::vector<Complex>& v, double t) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      const double ph = t * sym[i];
      v[i] *= Complex(std::cos(ph), std::sin(ph));
    }
  };

  std::vector<Complex> u0_hat = u0.values;
  forward(g, u0_hat);

  auto slice_time = [&](int j) { return j * dt; };

  auto make_traj = [&](const std::vector<std::vector<Complex>>& slices) {
    Trajectory t;
    t.config = config;
    for (int j = 0; j <= n_slices; ++j) {
      ComplexField f;
      f.grid = g;
      f.values = slices[j];
      f.time = slice_time(j);
      t.samples.push_back(std::move(f));
    }
    return t;
  };

  // u^(0): free evolution on the slice set
  std::vector<std::vector<Complex>> cur(n_slices + 1);
  for (int j = 0; j <= n_slices; ++j) {
    std::vector<Complex> v = u0_hat;
    phase_mul(v, slice_time(j));
    inverse(g, v);
    cur[j] = std::move(v);
  }

  PicardReport rep;
  rep.iterates.push_back(make_traj(cur));
  const double ref_norm = spectral::l2_norm(rep.iterates[0].samples[0]);
  const double cell = std::pow(g.h(), g.dim);

  for (int it = 0; it < n_iters; ++it) {
    // back-propagated nonlinearity at each slice: e^{-i t_j D^2} N(u_j)
    std::vector<std::vector<Complex>> nback(n_slices + 1);
    for (int j = 0; j <= n_slices; ++j) {
      std::vector<Complex> nj(g.size());
      for (std::size_t i = 0; i < nj.size(); ++i) {
        const double a2 = std::norm(cur[j][i]);
        nj[i] = (a2 == 0.0) ? Complex(0, 0)
                            : w.values[i] * std::pow(a2, alpha / 2) * cur[j][i];
      }
      forward(g, nj);
      phase_mul(nj, -slice_time(j));
      nback[j] = std::move(nj);
    }
    // prefix trapezoid sums, then forward-propagate
    std::vector<std::vector<Complex>> nxt(n_slices + 1);
    std::vector<Complex> S(g.size(), Complex(0, 0));
    double max_d2 = 0;
    for (int j = 0; j <= n_slices; ++j) {
      if (j > 0)
        for (std::size_t i = 0; i < S.size(); ++i)
          S[i] += dt * 0.5 * (nback[j - 1][i] + nback[j][i]);
      std::vector<Complex> v(g.size());
      const Complex ilam(0, lam);
      for (std::size_t i = 0; i < v.size(); ++i) v[i] = u0_hat[i] + ilam * S[i];
      phase_mul(v, slice_time(j));
      inverse(g, v);
      double d2 = 0;
      for (std::size_t i = 0; i < v.size(); ++i) d2 += std::norm(v[i] - cur[j][i]);
      max_d2 = std::max(max_d2, d2 * cell);
      nxt[j] = std::move(v);
    }
    rep.distances.push_back(std::sqrt(max_d2));
    cur = std::move(nxt);
    rep.iterates.push_back(make_traj(cur));
  }

  for (std::size_t k = 0; k + 1 < rep.distances.size(); ++k) {
    if (rep.distances[k] > 0)
      rep.contraction_ratios.push_back(rep.distances[k + 1] / rep.distances[k]);
  }
  rep.converged = !rep.distances.empty() && rep.distances.back() <= 1e-8 * ref_norm;
  return rep;
}

}  // namespace ibnls::solver
