#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ibnls/analytic.hpp"
#include "ibnls/norms.hpp"
#include "ibnls/probes.hpp"
#include "ibnls/solver.hpp"
#include "ibnls/spectral.hpp"

using namespace ibnls;
using namespace ibnls::solver;
using spectral::Complex;
using spectral::ComplexField;
using spectral::GaussianPacket;
using spectral::Grid;

namespace {

Rational rat(long n, long d = 1) { return Rational(n) / Rational(d); }

Grid grid1d(int m, double L) {
  Grid g;
  g.dim = 1;
  g.points_per_axis = m;
  g.box_length = L;
  return g;
}

SolverConfig make_config(const Grid& g, const Rational& b, const Rational& alpha, int lambda,
                         double dt, double t_end) {
  SolverConfig sc;
  sc.params.dim = g.dim;
  sc.params.b = b;
  sc.params.alpha = alpha;
  sc.params.lambda = lambda;
  sc.grid = g;
  sc.dt = dt;
  sc.t_end = t_end;
  return sc;
}

double rel_l2_diff(const ComplexField& a, const ComplexField& b) {
  double num = 0, den = 0;
  for (std::size_t i = 0; i < a.values.size(); ++i) {
    num += std::norm(a.values[i] - b.values[i]);
    den += std::norm(b.values[i]);
  }
  return std::sqrt(num / den);
}

}  // namespace

TEST_CASE("nonlinear flow: exact phase rotation") {
  const Grid g = grid1d(32, 16.0);
  auto w = spectral::make_weight(g, 0.5, 0.0);
  regime::ProblemParams params;
  params.dim = 1;
  params.b = rat(1, 2);
  params.alpha = rat(2);
  params.lambda = -1;

  ComplexField f = ComplexField::zero(g);
  f.values[7] = Complex(2.0, 0.0);
  // dt = 0 is the identity; u = 0 stays 0
  auto same = nonlinear_flow(f, w, params, 0.0);
  CHECK(same.values[7] == f.values[7]);
  CHECK(same.values[3] == Complex(0, 0));

  // scalar oracle: u(t) = u(0) exp(i lambda w |u|^alpha t); with w forced to
  // 1 at the probe node, |u| = 2, alpha = 2, lambda = -1, dt = pi/4 the
  // phase shift is exactly -pi
  w.values[7] = 1.0;
  const auto out = nonlinear_flow(f, w, params, M_PI / 4);
  CHECK(out.values[7].real() == doctest::Approx(-2.0).epsilon(1e-12));
  CHECK(std::abs(out.values[7].imag()) < 1e-12);
  // modulus preserved pointwise
  CHECK(std::abs(out.values[7]) == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("strang step: nonlinear off reduces to the free propagator") {
  const Grid g = grid1d(128, 30.0);
  GaussianPacket p;
  p.sigma = 1.4;
  const ComplexField f = p.sample(g);
  auto sc = make_config(g, rat(1, 2), rat(3), 1, 1e-2, 1.0);
  sc.disable_nonlinear = true;
  const auto w = spectral::make_weight(g, 0.5, 0.0);
  const auto stepped = strang_step(f, w, sc, 1e-2);
  const auto direct = spectral::free_propagator(f, 1e-2);
  CHECK(rel_l2_diff(stepped, direct) < 1e-13);
}

TEST_CASE("strang step: linear off reduces to the nonlinear flow") {
  const Grid g = grid1d(64, 20.0);
  GaussianPacket p;
  const ComplexField f = p.sample(g);
  auto sc = make_config(g, rat(1, 2), rat(2), 1, 1e-2, 1.0);
  sc.disable_linear = true;
  const auto w = spectral::make_weight(g, 0.5, 0.0);
  const auto stepped = strang_step(f, w, sc, 1e-2);
  const auto direct = nonlinear_flow(f, w, sc.params, 1e-2);
  CHECK(rel_l2_diff(stepped, direct) < 1e-14);
  CHECK(stepped.time == doctest::Approx(f.time + 1e-2));
}

TEST_CASE("strang step: third-order local error (Richardson halving)") {
  const Grid g = grid1d(256, 40.0);
  GaussianPacket p;
  p.amplitude = 0.8;
  p.sigma = 1.5;
  p.center[0] = 6.0;
  const ComplexField f = p.sample(g);
  const auto sc = make_config(g, rat(1, 2), rat(3), 1, 1.0, 1.0);
  const auto w = spectral::make_weight(g, 0.5, 0.0);

  auto defect = [&](double dt) {
    const auto one = strang_step(f, w, sc, dt);
    const auto two = strang_step(strang_step(f, w, sc, dt / 2), w, sc, dt / 2);
    double num = 0;
    for (std::size_t i = 0; i < one.values.size(); ++i)
      num += std::norm(one.values[i] - two.values[i]);
    return std::sqrt(num * g.h());
  };
  const double d1 = defect(0.02);
  const double d2 = defect(0.01);
  CHECK(d1 / d2 > 5.0);
  CHECK(d1 / d2 < 11.0);
}

TEST_CASE("evolve: zero data, sampling, and linear-only equals the exact flow") {
  const Grid g = grid1d(128, 30.0);
  auto sc = make_config(g, rat(1, 2), rat(3), 1, 1e-2, 0.2);
  sc.sample_stride = 5;

  const auto zero_traj = evolve(ComplexField::zero(g), sc);
  for (const auto& s : zero_traj.stats) CHECK(s.mass == 0.0);
  CHECK(zero_traj.samples.front().time == 0.0);
  CHECK(zero_traj.samples.back().time == doctest::Approx(0.2).epsilon(1e-12));

  GaussianPacket p;
  p.sigma = 1.2;
  sc.disable_nonlinear = true;
  const auto traj = evolve(p.sample(g), sc);
  const auto exact = spectral::free_propagator(p.sample(g), 0.2);
  CHECK(rel_l2_diff(traj.samples.back(), exact) < 1e-10);
}

TEST_CASE("evolve: mass invariance and time reversibility") {
  const Grid g = grid1d(256, 40.0);
  GaussianPacket p;
  p.amplitude = 1.0;
  p.sigma = 1.5;
  p.center[0] = 6.0;
  auto sc = make_config(g, rat(1, 2), rat(3), 1, 1e-3, 0.3);
  sc.sample_stride = 30;
  const auto traj = evolve(p.sample(g), sc);
  const double m0 = traj.stats.front().mass;
  for (const auto& s : traj.stats) CHECK(std::abs(s.mass - m0) / m0 < 1e-10);

  // reversibility of the lambda-off flow
  sc.disable_nonlinear = true;
  sc.t_end = 0.3;
  const auto fwd = evolve(p.sample(g), sc);
  ComplexField endpoint = fwd.samples.back();
  endpoint.time = 0.0;
  auto back_cfg = sc;
  back_cfg.dt = sc.dt;
  // evolve backward by conjugation: conj(u) evolves with -t
  for (auto& v : endpoint.values) v = std::conj(v);
  const auto bwd = evolve(endpoint, back_cfg);
  ComplexField recovered = bwd.samples.back();
  for (auto& v : recovered.values) v = std::conj(v);
  CHECK(rel_l2_diff(recovered, p.sample(g)) < 1e-10);
}

TEST_CASE("evolve: focusing blow-up guard trips on unstable data") {
  const Grid g = grid1d(64, 10.0);
  GaussianPacket p;
  p.amplitude = 1e-7;  // tiny amplitude so the guard threshold 1e6x is reachable
  p.sigma = 0.8;
  auto sc = make_config(g, rat(1, 2), rat(1), -1, 1e-3, 0.5);
  // forcing pumps the solution well past 1e6 times the initial amplitude
  Forcing f = [](double, const std::array<double, 3>&) { return Complex(1.0, 0.0); };
  const auto traj = evolve(p.sample(g), sc, &f);
  CHECK(traj.blowup);
}

TEST_CASE("dealias flag truncates the top third of the spectrum") {
  const Grid g = grid1d(64, 20.0);
  ComplexField f = ComplexField::zero(g);
  // mode above the 2/3 cutoff (|k| = 28 > 64/3) plus a low mode
  for (int i = 0; i < 64; ++i) {
    const double x = g.coord(i);
    const double hi = 2 * M_PI * 28 / g.box_length;
    const double lo = 2 * M_PI * 2 / g.box_length;
    f.values[i] = Complex(std::cos(hi * x), std::sin(hi * x)) +
                  Complex(std::cos(lo * x), std::sin(lo * x));
  }
  auto sc = make_config(g, rat(1, 2), rat(3), 1, 1e-3, 1e-3);
  sc.dealias = true;
  sc.disable_nonlinear = true;
  sc.disable_linear = true;  // isolate the truncation
  const auto w = spectral::make_weight(g, 0.5, 0.0);
  const auto out = strang_step(f, w, sc, 1e-3);
  // the high mode is gone, the low mode survives
  ComplexField lo_only = ComplexField::zero(g);
  for (int i = 0; i < 64; ++i) {
    const double x = g.coord(i);
    const double lo = 2 * M_PI * 2 / g.box_length;
    lo_only.values[i] = Complex(std::cos(lo * x), std::sin(lo * x));
  }
  CHECK(rel_l2_diff(out, lo_only) < 1e-13);
}

TEST_CASE("boundary contamination warning fires for edge-hugging data") {
  const Grid g = grid1d(128, 20.0);
  GaussianPacket p;
  p.sigma = 1.0;
  p.center[0] = 9.5;  // right against the box edge
  auto sc = make_config(g, rat(1, 2), rat(3), 1, 1e-3, 0.01);
  const auto traj = evolve(p.sample(g), sc);
  CHECK(traj.boundary_warning);
}

TEST_CASE("picard: zero coupling keeps the free iterate fixed") {
  const Grid g = grid1d(64, 20.0);
  GaussianPacket p;
  p.amplitude = 1e-30;  // nonlinearity numerically absent at alpha = 2
  auto sc = make_config(g, rat(1, 2), rat(2), 1, 0.01, 0.05);
  const auto rep = picard_iterate(p.sample(g), sc, 3);
  REQUIRE(rep.distances.size() == 3);
  // distances vanish at the scale of the data itself
  for (const double d : rep.distances) CHECK(d < 1e-30);
  CHECK_THROWS_AS(picard_iterate(p.sample(g), sc, 1), std::invalid_argument);
}

TEST_CASE("picard: small-data contraction and agreement with the split-step flow") {
  const Grid g = grid1d(256, 40.0);
  GaussianPacket p;
  p.sigma = 1.5;
  p.center[0] = 6.0;
  auto sc = make_config(g, rat(1, 2), rat(1, 2), 1, 0.1 / 64, 0.1);
  // normalize to H2 size 1e-3
  ComplexField u0 = p.sample(g);
  const double h2 = spectral::h2_norm(u0);
  for (auto& v : u0.values) v *= 1e-3 / h2;

  const auto rep = picard_iterate(u0, sc, 6);
  REQUIRE(rep.distances.size() == 6);
  CHECK(rep.converged);
  for (const double r : rep.contraction_ratios) CHECK(r < 0.5);
  // nonincreasing distances after the first iterate
  for (std::size_t k = 0; k + 1 < rep.distances.size(); ++k)
    CHECK(rep.distances[k + 1] <= rep.distances[k]);

  auto ref_cfg = sc;
  ref_cfg.dt = 0.1 / 2048;
  ref_cfg.sample_stride = 2048;
  const auto ref = evolve(u0, ref_cfg);
  CHECK(rel_l2_diff(rep.iterates.back().samples.back(), ref.samples.back()) < 1e-4);
}

TEST_CASE("energy drift halves by 3.5x or better when dt halves") {
  const Grid g = grid1d(256, 40.0);
  GaussianPacket p;
  p.amplitude = 0.5;
  p.sigma = 1.5;
  p.center[0] = 8.0;
  auto drift_at = [&](double dt) {
    auto sc = make_config(g, rat(1, 2), rat(3), 1, dt, 0.5);
    sc.sample_stride = std::max(1, sc.n_steps() / 50);
    const auto traj = evolve(p.sample(g), sc);
    return probes::conservation_probe(traj).energy_drift;
  };
  const double d1 = drift_at(2e-3);
  const double d2 = drift_at(1e-3);
  CHECK(d1 > 1e-12);  // measurably above roundoff
  CHECK(d2 <= d1 / 3.5);
}
