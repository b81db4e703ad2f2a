// Acceptance suite: one pass/fail line per criterion, exit code = number of
// failures. Every tolerance is pinned here, in code.
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "ibnls/analytic.hpp"
#include "ibnls/csvio.hpp"
#include "ibnls/norms.hpp"
#include "ibnls/pairs.hpp"
#include "ibnls/probes.hpp"
#include "ibnls/regime.hpp"
#include "ibnls/solver.hpp"
#include "ibnls/spectral.hpp"

using namespace ibnls;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

void report(int number, const std::string& name, bool pass, const std::string& detail,
            double seconds) {
  std::ostringstream line;
  line << (pass ? "PASS" : "FAIL") << " criterion " << number << " (" << name << "): " << detail
       << " [" << seconds << " s]";
  std::cout << line.str() << std::endl;
  if (!pass) ++g_failures;
}

template <typename F>
void criterion(int number, const std::string& name, F&& body) {
  const auto start = Clock::now();
  bool pass = false;
  std::string detail;
  try {
    std::tie(pass, detail) = body();
  } catch (const std::exception& e) {
    pass = false;
    detail = std::string("exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  report(number, name, pass, detail, secs);
}

Rational rat(long n, long d = 1) { return Rational(n) / Rational(d); }

spectral::Grid grid1d(int m, double L) {
  spectral::Grid g;
  g.dim = 1;
  g.points_per_axis = m;
  g.box_length = L;
  return g;
}

solver::SolverConfig config1d(const Rational& b, const Rational& alpha, int lambda, int m,
                              double L, double dt, double t_end) {
  solver::SolverConfig sc;
  sc.params.dim = 1;
  sc.params.b = b;
  sc.params.alpha = alpha;
  sc.params.lambda = lambda;
  sc.grid = grid1d(m, L);
  sc.dt = dt;
  sc.t_end = t_end;
  return sc;
}

double rel_l2_diff(const spectral::ComplexField& a, const spectral::ComplexField& b) {
  double num = 0, den = 0;
  for (std::size_t i = 0; i < a.values.size(); ++i) {
    num += std::norm(a.values[i] - b.values[i]);
    den += std::norm(b.values[i]);
  }
  return std::sqrt(num / den);
}

// ---------- criteria ----------

std::pair<bool, std::string> exact_exponent_suite() {
  const auto rep = pairs::lemma32_exponents(6, rat(1), rat(2), rat(1, 10));
  bool ok = rep.at("a_bar").pair.q.value() == rat(116, 5);
  ok = ok && rep.at("a_bar").pair.r == rat(348, 77);
  ok = ok && rep.at("q_bar").pair.q.value() == rat(232, 97);
  ok = ok && rep.at("a_bar").pair.s == rat(3, 2);
  ok = ok && rep.at("a_bar").admissible && rep.at("q_bar").admissible;
  bool holglo = false;
  for (const auto& idrec : rep.identities)
    if (idrec.name == "holglo") holglo = idrec.holds;
  ok = ok && holglo && rep.all_hold();
  return {ok, "a_bar=" + to_string(rep.at("a_bar").pair.q) +
                  " r_bar=" + to_string(rep.at("a_bar").pair.r) +
                  " q_bar=" + to_string(rep.at("q_bar").pair.q) + " all identities exact"};
}

std::pair<bool, std::string> lemma41_suite() {
  struct Row {
    int N;
    Rational b;
  };
  const Row rows[] = {{6, rat(1)}, {7, rat(1, 2)}, {8, rat(1, 4)}, {10, rat(1, 10)}};
  bool ok = true;
  for (const Row& row : rows) {
    const auto rep = pairs::lemma41_exponents(row.N, row.b);
    ok = ok && rep.all_hold() && rep.at("q_crit").admissible;
  }
  bool rejected = false;
  try {
    pairs::lemma41_exponents(6, rat(3, 2));
  } catch (const pairs::PreconditionError&) {
    rejected = true;
  }
  ok = ok && rejected;
  rejected = false;
  try {
    pairs::lemma41_exponents(12, rat(1, 100));
  } catch (const pairs::PreconditionError&) {
    rejected = true;
  }
  ok = ok && rejected;
  return {ok, "four (N,b) rows exact, boundary and N=12 rejected"};
}

std::pair<bool, std::string> regime_agreement() {
  std::mt19937_64 rng(314159);
  std::uniform_int_distribution<int> dims(1, 12), den(11, 40), num(1, 1000);
  int checked = 0;
  for (int i = 0; i < 10000; ++i) {
    const int N = dims(rng);
    const Rational bound = std::min(Rational(Rational(N) / 2), Rational(4));
    const long q = den(rng);
    const long cap = static_cast<long>(to_double(bound) * q);
    if (cap <= 1) continue;
    const Rational b = rat(1 + num(rng) % (cap - 1 > 0 ? cap - 1 : 1), q);
    Rational alpha;
    if (i % 11 == 0)
      alpha = (8 - 2 * b) / N;  // exact mass-critical boundary
    else if (i % 11 == 5 && N >= 5)
      alpha = (8 - 2 * b) / (N - 4);  // exact energy-critical boundary
    else
      alpha = rat(num(rng), den(rng));
    if (alpha <= 0) continue;

    regime::ProblemParams p;
    p.dim = N;
    p.b = b;
    p.alpha = alpha;
    p.lambda = 1;
    const auto crit = regime::critical_index(p);
    const bool by_sc = crit.klass == regime::Klass::Intercritical;
    const bool lower = alpha > (8 - 2 * b) / N;
    const bool upper = crit.four_star.is_inf() ? true : alpha < crit.four_star.value();
    if (by_sc != (lower && upper)) {
      return {false, "disagreement at N=" + std::to_string(N) + " b=" + to_string(b) +
                         " alpha=" + to_string(alpha)};
    }
    ++checked;
  }
  return {true, std::to_string(checked) + " samples, characterizations agree on every one"};
}

std::pair<bool, std::string> mass_conservation() {
  spectral::GaussianPacket p;
  p.amplitude = 0.5;
  p.sigma = 1.5;
  p.center[0] = 10.0;

  auto drift = [&](double dt) {
    auto sc = config1d(rat(1, 2), rat(3), +1, 512, 40.0, dt, 1.0);
    sc.sample_stride = std::max(1, sc.n_steps() / 100);
    sc.boundary_mass_tol = 1e-3;
    const auto traj = solver::evolve(p.sample(sc.grid), sc);
    return probes::conservation_probe(traj);
  };
  const auto coarse = drift(1e-3);
  const auto fine = drift(5e-4);
  const bool mass_ok = coarse.mass_drift <= 1e-10;
  const bool energy_ok = fine.energy_drift <= coarse.energy_drift / 3.5;
  return {mass_ok && energy_ok,
          "mass_drift=" + csvio::fmt(coarse.mass_drift) +
              " energy_drift(dt)=" + csvio::fmt(coarse.energy_drift) +
              " energy_drift(dt/2)=" + csvio::fmt(fine.energy_drift) +
              " ratio=" + csvio::fmt(coarse.energy_drift / fine.energy_drift)};
}

std::pair<bool, std::string> static_scaling() {
  spectral::GaussianPacket p;
  p.sigma = 0.2;
  p.wavevector[0] = 21.0;
  regime::ProblemParams params;
  params.dim = 1;
  params.b = rat(1, 2);
  params.alpha = rat(8);
  params.lambda = 1;
  const double sc_level = to_double(regime::critical_index(params).s_c);

  double worst_coarse = 0, worst_fine = 0;
  bool each_small = true;
  for (const double s : {0.0, sc_level, 2.0}) {
    probes::ScalingCheckConfig cfg;
    cfg.mu = 2.0;
    cfg.s = s;
    const double e1 = probes::static_scaling_check(p, params, cfg, grid1d(1024, 40.0));
    const double e2 = probes::static_scaling_check(p, params, cfg, grid1d(2048, 40.0));
    worst_coarse = std::max(worst_coarse, e1);
    worst_fine = std::max(worst_fine, e2);
    each_small = each_small && e1 <= 1e-6;
  }
  const bool quarter = worst_fine <= worst_coarse / 4;
  return {each_small && quarter, "max err(M=1024)=" + csvio::fmt(worst_coarse) +
                                     " max err(M=2048)=" + csvio::fmt(worst_fine)};
}

std::pair<bool, std::string> dynamic_scaling() {
  spectral::GaussianPacket p;
  p.amplitude = 0.35;
  p.sigma = 1.2;
  p.center[0] = 10.0;
  auto run = [&](double dt) {
    const auto sc = config1d(rat(1, 2), rat(3), +1, 512, 40.0, dt, 1.0);
    return probes::dynamic_scaling_check(p, sc, 2.0, 0.048).rel_l2_error;
  };
  const double e1 = run(2e-3);
  const double e2 = run(1e-3);
  const bool ok = e1 <= 1e-3 && e2 <= e1 / 2;
  return {ok, "mismatch(dt)=" + csvio::fmt(e1) + " mismatch(dt/2)=" + csvio::fmt(e2)};
}

std::pair<bool, std::string> picard_contraction() {
  spectral::GaussianPacket p;
  p.sigma = 1.5;
  p.center[0] = 6.0;
  auto sc = config1d(rat(1, 2), rat(1, 2), +1, 256, 40.0, 0.1 / 64, 0.1);
  auto u0 = p.sample(sc.grid);
  const double h2 = spectral::h2_norm(u0);
  for (auto& v : u0.values) v *= 1e-3 / h2;

  const auto rep = solver::picard_iterate(u0, sc, 6);
  bool ratios_ok = !rep.contraction_ratios.empty();
  double worst = 0;
  for (const double r : rep.contraction_ratios) {
    worst = std::max(worst, r);
    ratios_ok = ratios_ok && r < 0.5;
  }
  auto ref_cfg = sc;
  ref_cfg.dt = 0.1 / 2048;
  ref_cfg.sample_stride = 2048;
  const auto ref = solver::evolve(u0, ref_cfg);
  const double gap = rel_l2_diff(rep.iterates.back().samples.back(), ref.samples.back());
  const bool ok = ratios_ok && gap <= 1e-4;
  return {ok, "max contraction ratio=" + csvio::fmt(worst) +
                  " final-vs-reference=" + csvio::fmt(gap)};
}

std::pair<bool, std::string> pointwise_estimate() {
  std::string detail;
  bool ok = true;
  int idx = 0;
  for (const double alpha : {0.5, 1.0, 2.0, 3.0}) {
    const auto rep = probes::pointwise_estimate_probe(alpha, 100000, 777 + idx++);
    const bool in_range = rep.max_ratio >= 1.0 - 1e-12 && rep.max_ratio <= alpha + 1 + 1e-12;
    ok = ok && in_range;
    detail += "alpha=" + csvio::fmt(alpha) + ":" + csvio::fmt(rep.max_ratio) + " ";
  }
  return {ok, detail + "(each within [1, alpha+1])"};
}

std::pair<bool, std::string> strichartz_spread() {
  const auto rep = probes::strichartz_probe(grid1d(256, 40.0), rat(0), 20, 12345);
  return {rep.pass, "spread=" + csvio::fmt(rep.max / rep.min) + " min=" + csvio::fmt(rep.min) +
                        " max=" + csvio::fmt(rep.max) + " (<= 50)"};
}

std::pair<bool, std::string> perturbation_ladder() {
  spectral::GaussianPacket p;
  p.amplitude = 0.5;
  p.sigma = 1.5;
  auto sc = config1d(rat(1, 2), rat(3), +1, 256, 40.0, 2e-3, 0.5);
  sc.sample_stride = 10;
  probes::ForcingShape shape;
  shape.profile.amplitude = 1.0;
  shape.profile.sigma = std::sqrt(2.0);
  shape.omega = 2.0;
  const auto u0 = p.sample(sc.grid);
  const auto rep =
      probes::perturbation_experiment(u0, u0, shape, sc, {1e-1, 1e-2, 1e-3, 1e-4});
  return {rep.pass, "log-log slope=" + csvio::fmt(rep.slope) + " (within 1 +- 0.2)"};
}

std::pair<bool, std::string> determinism() {
  const char* cli = std::getenv("IBNLS_CLI");
  if (!cli) return {false, "IBNLS_CLI not set"};
  const fs::path dir = fs::temp_directory_path() / "ibnls_acceptance_det";
  fs::remove_all(dir);
  fs::create_directories(dir);
  {
    std::ofstream f(dir / "sim.cfg");
    f << "seed = 4242\n[params]\ndim = 1\nb = 1/2\nalpha = 3\n"
      << "[grid]\npoints = 128\nlength = 40\n"
      << "[solver]\ndt = 1e-2\nt_end = 0.2\nsample_stride = 4\n"
      << "[data]\namplitude = 0.4\nsigma = 1.3\ncenter = 6\n";
    std::ofstream g(dir / "probe.cfg");
    g << "seed = 4242\n[params]\ndim = 1\n[grid]\npoints = 128\nlength = 40\n"
      << "[probe]\ns = 0\ntrials = 12\n";
    std::ofstream h(dir / "pw.cfg");
    h << "seed = 4242\n[probe]\nkind = pointwise\nalpha = 2\nsamples = 50000\n";
  }
  struct Job {
    std::string args;
    std::string csv;
  };
  const Job jobs[] = {
      {"classify --dim 6 --b 1 --alpha 2", "verdicts.csv"},
      {"pairs --lemma 3.2 --dim 6 --b 1 --alpha 2 --theta 1/10", "identities.csv"},
      {std::string("simulate --config ") + (dir / "sim.cfg").string(), "trajectory.csv"},
      {std::string("strichartz-probe --config ") + (dir / "probe.cfg").string(),
       "strichartz_probe.csv"},
      {std::string("estimate-probe --config ") + (dir / "pw.cfg").string(), "pointwise.csv"},
  };
  for (const Job& job : jobs) {
    for (const char* tag : {"a", "b"}) {
      const std::string cmd = std::string(cli) + " " + job.args + " --out " +
                              (dir / (job.csv + "." + tag)).string() + " > /dev/null 2>&1";
      if (std::system(cmd.c_str()) != 0) return {false, "command failed: " + job.args};
    }
    auto read = [&](const char* tag) {
      std::ifstream in(dir / (job.csv + "." + tag) / job.csv, std::ios::binary);
      std::ostringstream ss;
      ss << in.rdbuf();
      return ss.str();
    };
    const std::string a = read("a"), b = read("b");
    if (a.empty() || a != b) return {false, "CSV mismatch for: " + job.args};
  }
  return {true, "5 subcommands rerun byte-identically"};
}

}  // namespace

int main() {
  criterion(1, "exact exponent suite", exact_exponent_suite);
  criterion(2, "energy-critical exponent suite", lemma41_suite);
  criterion(3, "regime classification agreement", regime_agreement);
  criterion(4, "mass/energy conservation", mass_conservation);
  criterion(5, "static scaling identity", static_scaling);
  criterion(6, "dynamic scaling covariance", dynamic_scaling);
  criterion(7, "contraction of the integral operator", picard_contraction);
  criterion(8, "pointwise nonlinearity estimate", pointwise_estimate);
  criterion(9, "dispersive-bound constant spread", strichartz_spread);
  criterion(10, "perturbation response ladder", perturbation_ladder);
  criterion(11, "byte-identical reruns", determinism);
  if (g_failures == 0)
    std::cout << "ALL CRITERIA PASS" << std::endl;
  else
    std::cout << g_failures << " CRITERIA FAILED" << std::endl;
  return g_failures;
}
