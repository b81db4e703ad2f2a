#include "ibnls/probes.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "ibnls/fft.hpp"
#include "ibnls/spectral.hpp"

namespace ibnls::probes {

using spectral::Complex;

ConservationReport conservation_probe(const Trajectory& traj) {
  if (traj.stats.empty()) throw std::domain_error("conservation_probe: empty trajectory");
  ConservationReport rep;
  const double m0 = traj.stats.front().mass;
  const double e0 = traj.stats.front().energy;
  const double eden = std::abs(e0) >= 1e-12 ? std::abs(e0) : 1.0;
  for (const solver::SampleStats& s : traj.stats) {
    rep.times.push_back(s.t);
    rep.mass.push_back(s.mass);
    rep.energy.push_back(s.energy);
    if (m0 > 0) rep.mass_drift = std::max(rep.mass_drift, std::abs(s.mass - m0) / m0);
    rep.energy_drift = std::max(rep.energy_drift, std::abs(s.energy - e0) / eden);
  }
  return rep;
}

namespace {

// Resolvability of a packet on a grid: the envelope must span a few cells,
// its spectral support must sit inside Nyquist, and the tails must clear the
// box edge.
void require_resolvable(const GaussianPacket& p, const Grid& g) {
  const double h = g.h();
  const double nyquist = M_PI / h;
  double kmax = 0;
  for (int d = 0; d < g.dim; ++d) kmax = std::max(kmax, std::abs(p.wavevector[d]));
  double cmax = 0;
  for (int d = 0; d < g.dim; ++d) cmax = std::max(cmax, std::abs(p.center[d]));
  if (p.sigma < 1.5 * h)
    throw std::domain_error("scaling check: envelope narrower than 1.5 cells");
  if (kmax + 3.0 / p.sigma > 0.95 * nyquist)
    throw std::domain_error("scaling check: spectral support too close to Nyquist");
  if (cmax + 4.0 * p.sigma > g.box_length / 2)
    throw std::domain_error("scaling check: support too close to the box edge");
}

double fit_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
  const std::size_t n = xs.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

double static_scaling_check(const GaussianPacket& data, const ProblemParams& params,
                            const ScalingCheckConfig& cfg, const Grid& grid) {
  params.validate();
  if (!(cfg.mu > 0)) throw std::domain_error("static_scaling_check: mu must be > 0");
  const double p = to_double((4 - params.b) / params.alpha);
  const GaussianPacket scaled = data.scaled(cfg.mu, p);
  require_resolvable(data, grid);
  require_resolvable(scaled, grid);

  const double n0 = spectral::sobolev_seminorm(data.sample(grid), cfg.s);
  const double ns = spectral::sobolev_seminorm(scaled.sample(grid), cfg.s);
  const double expo = cfg.s - grid.dim / 2.0 + p;
  return std::abs(ns - std::pow(cfg.mu, expo) * n0) / n0;
}

DynamicScalingResult dynamic_scaling_check(const GaussianPacket& data,
                                           const SolverConfig& base_config, double mu,
                                           double t_probe) {
  base_config.validate();
  if (!(mu > 0)) throw std::domain_error("dynamic_scaling_check: mu must be > 0");
  const double p = to_double((4 - base_config.params.b) / base_config.params.alpha);

  SolverConfig base = base_config;
  base.t_end = std::pow(mu, 4) * t_probe;
  // both runs must land exactly on t_probe and mu^4 t_probe
  for (const double ratio : {t_probe / base_config.dt, base.t_end / base_config.dt}) {
    if (std::abs(ratio - std::llround(ratio)) > 1e-9 * std::max(1.0, ratio))
      throw std::domain_error("dynamic_scaling_check: probe times must be step multiples");
  }

  Grid sgrid = base.grid;
  sgrid.box_length = base.grid.box_length / mu;
  SolverConfig scaled_cfg = base_config;
  scaled_cfg.grid = sgrid;
  scaled_cfg.t_end = t_probe;

  const GaussianPacket sdata = data.scaled(mu, p);
  require_resolvable(data, base.grid);
  require_resolvable(sdata, sgrid);

  base.sample_stride = std::max(1, base.n_steps());     // endpoints only
  scaled_cfg.sample_stride = std::max(1, scaled_cfg.n_steps());

  const Trajectory tb = solver::evolve(data.sample(base.grid), base);
  const Trajectory ts = solver::evolve(sdata.sample(sgrid), scaled_cfg);
  const ComplexField& ub = tb.samples.back();
  const ComplexField& us = ts.samples.back();

  // reference: mu^p u(mu^4 t_probe, mu x') through the interpolant of the
  // base run, evaluated at the scaled grid's nodes
  const double scale = std::pow(mu, p);
  double num = 0, den = 0;
  for (std::size_t i = 0; i < us.values.size(); ++i) {
    auto x = sgrid.position(i);
    for (int d = 0; d < sgrid.dim; ++d) x[d] *= mu;
    const Complex ref = scale * spectral::fourier_eval(ub, x);
    num += std::norm(us.values[i] - ref);
    den += std::norm(ref);
  }
  DynamicScalingResult res;
  res.rel_l2_error = std::sqrt(num / den);
  res.base_steps = base.n_steps();
  res.scaled_steps = scaled_cfg.n_steps();
  return res;
}

PointwiseEstimateReport pointwise_estimate_probe(double alpha, std::size_t samples,
                                                 std::uint64_t seed) {
  if (samples < 1000) throw std::invalid_argument("pointwise_estimate_probe: samples >= 1e3");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(-10.0, 10.0);
  PointwiseEstimateReport rep;
  rep.alpha = alpha;
  rep.min_ratio = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < samples; ++i) {
    const Complex z(uni(rng), uni(rng));
    Complex w(uni(rng), uni(rng));
    if (i % 100 == 0) w = Complex(0, 0);
    const double az = std::abs(z), aw = std::abs(w);
    const double den = (std::pow(az, alpha) + std::pow(aw, alpha)) * std::abs(z - w);
    if (den == 0) continue;  // coincident pair
    const double num = std::abs(std::pow(az, alpha) * z - std::pow(aw, alpha) * w);
    const double ratio = num / den;
    rep.max_ratio = std::max(rep.max_ratio, ratio);
    rep.min_ratio = std::min(rep.min_ratio, ratio);
    ++rep.used;
  }
  return rep;
}

GradientEstimateReport gradient_estimate_probe(double alpha, double b, const GaussianPacket& u,
                                               const GaussianPacket& v, const Grid& grid,
                                               double threshold, double mask_rel) {
  grid.validate();
  GradientEstimateReport rep;
  rep.threshold = threshold;

  const ComplexField fu = u.sample(grid);
  const ComplexField fv = v.sample(grid);

  // F(x,u) - F(x,v) on the grid, then its gradient spectrally
  ComplexField diff = ComplexField::zero(grid);
  const spectral::WeightField w = spectral::make_weight(grid, b, 0.0);
  double sup_max = 0;
  for (std::size_t i = 0; i < diff.values.size(); ++i) {
    const double au = std::abs(fu.values[i]), av = std::abs(fv.values[i]);
    diff.values[i] =
        w.values[i] * (std::pow(au, alpha) * fu.values[i] - std::pow(av, alpha) * fv.values[i]);
    sup_max = std::max(sup_max, au + av);
  }
  if (sup_max == 0) {
    rep.trivial = true;
    rep.pass = true;
    return rep;
  }
  const std::vector<double> lhs = spectral::gradient_magnitude(diff);

  const double h = grid.h();
  bool any = false;
  for (std::size_t i = 0; i < lhs.size(); ++i) {
    const double r2 = grid.radius2(i);
    if (r2 <= h * h) continue;  // |x| > h only
    const double au = std::abs(fu.values[i]), av = std::abs(fv.values[i]);
    if (au + av < mask_rel * sup_max) continue;
    const auto x = grid.position(i);
    double gu2 = 0, gv2 = 0, gd2 = 0;
    for (int d = 0; d < grid.dim; ++d) {
      const Complex du = u.gradient(x, grid.dim, d);
      const Complex dv = v.gradient(x, grid.dim, d);
      gu2 += std::norm(du);
      gv2 += std::norm(dv);
      gd2 += std::norm(du - dv);
    }
    const double advv = std::abs(fu.values[i] - fv.values[i]);
    double rhs = std::pow(r2, -(b + 1) / 2) * (std::pow(au, alpha) + std::pow(av, alpha)) * advv +
                 w.values[i] * std::pow(au, alpha) * std::sqrt(gd2);
    if (alpha > 1) {
      rhs += w.values[i] * (std::pow(au, alpha - 1) + std::pow(av, alpha - 1)) *
             std::sqrt(gv2) * advv;
    } else {
      rhs += w.values[i] * std::sqrt(gv2) * std::pow(advv, alpha);
    }
    if (rhs == 0) continue;
    rep.max_ratio = std::max(rep.max_ratio, lhs[i] / rhs);
    any = true;
  }
  if (!any) rep.trivial = true;
  rep.pass = rep.trivial || rep.max_ratio <= threshold;
  return rep;
}

StrichartzProbeReport strichartz_probe(const Grid& grid, const Rational& s, int trials,
                                       std::uint64_t seed, int time_samples) {
  if (trials < 10) throw std::invalid_argument("strichartz_probe: trials >= 10");
  grid.validate();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  const auto fam = norms::default_family(s, grid.dim);
  const double sd = to_double(s);

  StrichartzProbeReport rep;
  for (int t = 0; t < trials; ++t) {
    GaussianPacket p;
    p.sigma = 0.5 + 1.5 * uni(rng);
    p.amplitude = 0.5 + 1.5 * uni(rng);
    for (int d = 0; d < grid.dim; ++d) {
      p.center[d] = -5.0 + 10.0 * uni(rng);
      p.wavevector[d] = -8.0 + 16.0 * uni(rng);
    }
    ComplexField f = p.sample(grid);
    // hard band limit at |k| <= M/4 per axis
    spectral::fft::forward(grid, f.values);
    const int m = grid.points_per_axis;
    for (std::size_t i = 0; i < f.values.size(); ++i) {
      const auto ix = grid.unflatten(i);
      for (int d = 0; d < grid.dim; ++d) {
        const int k = (ix[d] < m / 2) ? ix[d] : ix[d] - m;
        if (4 * std::abs(k) > m) {
          f.values[i] = Complex(0, 0);
          break;
        }
      }
    }
    spectral::fft::inverse(grid, f.values);

    const double data_norm = spectral::sobolev_seminorm(f, sd);
    if (data_norm == 0) continue;

    Trajectory traj;
    traj.config.grid = grid;
    for (int j = 0; j < time_samples; ++j) {
      const double tj = static_cast<double>(j) / (time_samples - 1);
      traj.samples.push_back(spectral::free_propagator(f, tj));
      traj.samples.back().time = tj;
    }
    rep.ratios.push_back(norms::strichartz_norm(traj, fam).value / data_norm);
  }
  std::vector<double> sorted = rep.ratios;
  std::sort(sorted.begin(), sorted.end());
  rep.min = sorted.front();
  rep.max = sorted.back();
  rep.median = sorted[sorted.size() / 2];
  rep.pass = rep.max / rep.min <= 50.0;
  return rep;
}

ScatteringMonitorReport scattering_monitor(const Trajectory& traj, const ProblemParams& params) {
  const auto crit = regime::critical_index(params);
  if (crit.klass != regime::Klass::Intercritical)
    throw std::domain_error("scattering_monitor: parameters are not intercritical");
  if (traj.samples.size() < 4) throw std::domain_error("scattering_monitor: too few samples");

  const auto fam = norms::default_family(crit.s_c, params.dim);
  ScatteringMonitorReport rep;

  // spatial norms per member, once per sample; then prefix trapezoid
  const std::size_t n = traj.samples.size();
  std::vector<std::vector<double>> sn(fam.members.size(), std::vector<double>(n));
  for (std::size_t i = 0; i < fam.members.size(); ++i)
    for (std::size_t j = 0; j < n; ++j)
      sn[i][j] = norms::lebesgue_norm(traj.samples[j], Exponent(fam.members[i].r));

  std::vector<double> acc(fam.members.size(), 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    rep.times.push_back(traj.samples[j].time);
    double best = 0;
    for (std::size_t i = 0; i < fam.members.size(); ++i) {
      const auto& q = fam.members[i].q;
      double val;
      if (q.is_inf()) {
        val = *std::max_element(sn[i].begin(), sn[i].begin() + j + 1);
      } else {
        if (j > 0) {
          const double dt = traj.samples[j].time - traj.samples[j - 1].time;
          const double qd = q.to_double();
          acc[i] += dt * 0.5 * (std::pow(sn[i][j - 1], qd) + std::pow(sn[i][j], qd));
        }
        val = std::pow(acc[i], 1.0 / q.to_double());
      }
      best = std::max(best, val);
    }
    rep.running_norm.push_back(best);
    rep.sup_h2 = std::max(rep.sup_h2, spectral::h2_norm(traj.samples[j]));
  }

  const double end = rep.running_norm.back();
  const double t_end = rep.times.back();
  double at_three_quarters = end;
  for (std::size_t j = 0; j < n; ++j) {
    if (rep.times[j] >= 0.75 * t_end) {
      at_three_quarters = rep.running_norm[j];
      break;
    }
  }
  rep.plateau = end == 0 || (end - at_three_quarters) <= 0.01 * end;
  return rep;
}

PerturbationReport perturbation_experiment(const ComplexField& u0, const ComplexField& u0_tilde,
                                           const ForcingShape& forcing,
                                           const SolverConfig& config,
                                           const std::vector<double>& eps_ladder) {
  config.validate();
  if (!(u0.grid == config.grid) || !(u0_tilde.grid == config.grid))
    throw std::invalid_argument("perturbation_experiment: data not on config.grid");

  const Trajectory clean = solver::evolve(u0, config);
  const Rational qdiag = Rational(2 * (config.grid.dim + 4)) / config.grid.dim;
  const double qd = to_double(qdiag);

  PerturbationReport rep;
  for (const double eps : eps_ladder) {
    solver::Forcing f = [&forcing, eps, dim = config.grid.dim](
                            double t, const std::array<double, 3>& x) {
      const Complex g = forcing.profile.value(x, dim);
      return eps * g * Complex(std::cos(forcing.omega * t), std::sin(forcing.omega * t));
    };
    const Trajectory forced = solver::evolve(u0_tilde, config, &f);
    if (forced.samples.size() != clean.samples.size())
      throw std::runtime_error("perturbation_experiment: sample count mismatch");

    double sup_l2 = 0;
    double acc = 0;
    const double celld = std::pow(config.grid.h(), config.grid.dim);
    std::vector<double> diag(clean.samples.size());
    for (std::size_t j = 0; j < clean.samples.size(); ++j) {
      double d2 = 0, dq = 0;
      for (std::size_t i = 0; i < u0.values.size(); ++i) {
        const double a2 = std::norm(forced.samples[j].values[i] - clean.samples[j].values[i]);
        d2 += a2;
        if (a2 > 0) dq += std::pow(a2, qd / 2);
      }
      sup_l2 = std::max(sup_l2, std::sqrt(d2 * celld));
      diag[j] = std::pow(dq * celld, 1.0 / qd);
    }
    for (std::size_t j = 0; j + 1 < diag.size(); ++j) {
      const double dt = clean.samples[j + 1].time - clean.samples[j].time;
      acc += dt * 0.5 * (std::pow(diag[j], qd) + std::pow(diag[j + 1], qd));
    }
    rep.eps.push_back(eps);
    rep.dist_sup_l2.push_back(sup_l2);
    rep.dist_diag.push_back(std::pow(acc, 1.0 / qd));
  }

  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < rep.eps.size(); ++i) {
    if (rep.dist_sup_l2[i] > 0) {
      lx.push_back(std::log(rep.eps[i]));
      ly.push_back(std::log(rep.dist_sup_l2[i]));
    }
  }
  if (lx.size() >= 2) rep.slope = fit_slope(lx, ly);
  rep.pass = rep.slope >= 0.8 && rep.slope <= 1.2;
  return rep;
}

namespace {

double riesz_norm(const ComplexField& f, double s, const Exponent& p) {
  if (s == 0) return norms::lebesgue_norm(f, p);
  ComplexField ds = f;
  spectral::fft::forward(ds.grid, ds.values);
  for (std::size_t i = 0; i < ds.values.size(); ++i) {
    const auto ix = ds.grid.unflatten(i);
    double k2 = 0;
    for (int d = 0; d < ds.grid.dim; ++d) {
      const double xi = ds.grid.wavenumber(ix[d]);
      k2 += xi * xi;
    }
    ds.values[i] *= (k2 == 0) ? 0.0 : std::pow(k2, s / 2);
  }
  spectral::fft::inverse(ds.grid, ds.values);
  return norms::lebesgue_norm(ds, p);
}

DilationProbeReport finish_dilation(std::vector<double> sigmas, std::vector<double> ratios) {
  DilationProbeReport rep;
  rep.sigmas = std::move(sigmas);
  rep.ratios = std::move(ratios);
  const auto [lo, hi] = std::minmax_element(rep.ratios.begin(), rep.ratios.end());
  rep.flatness = (*hi - *lo) / *lo;
  rep.pass = rep.flatness <= 0.05;
  return rep;
}

}  // namespace

DilationProbeReport hl_function_probe(const GaussianPacket& base, const Grid& grid,
                                      const Rational& p, const Rational& q, const Rational& s,
                                      const Rational& rho, const std::vector<double>& sigmas) {
  if (!pairs::hl_exponent_check(p, q, s, rho, grid.dim))
    throw ProbeRefused("hl_function_probe: exponent conditions fail");
  grid.validate();
  const double rhod = to_double(rho);
  const double qd = to_double(q);
  std::vector<double> ratios;
  for (const double sg : sigmas) {
    const GaussianPacket u = base.scaled(1.0 / sg, 0.0);  // u(x/sigma)
    const ComplexField f = u.sample(grid);
    double acc = 0;
    for (std::size_t i = 0; i < f.values.size(); ++i) {
      const double a = std::abs(f.values[i]);
      if (a == 0) continue;
      acc += std::pow(std::pow(grid.radius2(i), -rhod / 2) * a, qd);
    }
    const double lhs = std::pow(acc * std::pow(grid.h(), grid.dim), 1.0 / qd);
    const double rhs = riesz_norm(f, to_double(s), Exponent(p));
    ratios.push_back(lhs / rhs);
  }
  return finish_dilation(sigmas, ratios);
}

DilationProbeReport gn_function_probe(const GaussianPacket& base, const Grid& grid,
                                      const Rational& p, const Rational& p0, const Rational& p1,
                                      const Rational& s, const Rational& s1,
                                      const Rational& theta, const std::vector<double>& sigmas) {
  if (!pairs::gn_exponent_check(p, p0, p1, s, s1, theta, grid.dim))
    throw ProbeRefused("gn_function_probe: exponent conditions fail");
  grid.validate();
  const double th = to_double(theta);
  std::vector<double> ratios;
  for (const double sg : sigmas) {
    const GaussianPacket u = base.scaled(1.0 / sg, 0.0);
    const ComplexField f = u.sample(grid);
    const double lhs = riesz_norm(f, to_double(s), Exponent(p));
    const double rhs = std::pow(norms::lebesgue_norm(f, Exponent(p0)), 1.0 - th) *
                       std::pow(riesz_norm(f, to_double(s1), Exponent(p1)), th);
    ratios.push_back(lhs / rhs);
  }
  return finish_dilation(sigmas, ratios);
}

}  // namespace ibnls::probes
