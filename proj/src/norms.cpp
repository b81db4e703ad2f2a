#include "ibnls/norms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ibnls::norms {

double lebesgue_norm(const ComplexField& field, const Exponent& r) {
  if (r.is_inf()) return field.max_abs();
  const Rational& rv = r.value();
  if (rv < 1) throw std::invalid_argument("lebesgue_norm: r < 1 unsupported");
  const double rd = to_double(rv);
  double acc = 0;
  for (const spectral::Complex& v : field.values) {
    const double a2 = std::norm(v);
    if (a2 > 0) acc += std::pow(a2, rd / 2);
  }
  acc *= std::pow(field.grid.h(), field.grid.dim);
  return std::pow(acc, 1.0 / rd);
}

namespace {

constexpr double kTimeSlack = 1e-12;

std::vector<std::size_t> window_indices(const Trajectory& traj, double t0, double t1) {
  if (!(t0 <= t1)) throw std::domain_error("mixed_norm: empty window");
  std::vector<std::size_t> idx;
  for (std::size_t j = 0; j < traj.samples.size(); ++j) {
    const double t = traj.samples[j].time;
    if (t >= t0 - kTimeSlack && t <= t1 + kTimeSlack) idx.push_back(j);
  }
  if (idx.empty()) throw std::domain_error("mixed_norm: window contains no samples");
  return idx;
}

}  // namespace

double mixed_norm(const Trajectory& traj, const NormSpec& spec) {
  const auto idx = window_indices(traj, spec.t0, spec.t1);
  std::vector<double> sn(idx.size());
  for (std::size_t k = 0; k < idx.size(); ++k)
    sn[k] = lebesgue_norm(traj.samples[idx[k]], spec.r);

  if (spec.q.is_inf()) return *std::max_element(sn.begin(), sn.end());

  const double qd = to_double(spec.q.value());
  if (qd < 1) throw std::invalid_argument("mixed_norm: q < 1 unsupported");
  if (idx.size() == 1) return 0.0;  // degenerate window: zero time measure
  double acc = 0;
  for (std::size_t k = 0; k + 1 < idx.size(); ++k) {
    const double dt = traj.samples[idx[k + 1]].time - traj.samples[idx[k]].time;
    acc += dt * 0.5 * (std::pow(sn[k], qd) + std::pow(sn[k + 1], qd));
  }
  return std::pow(acc, 1.0 / qd);
}

StrichartzFamily StrichartzFamily::make(Rational s, std::vector<ExponentPair> members,
                                        FamilyKind kind, int N) {
  if (members.empty()) throw std::invalid_argument("StrichartzFamily: empty family");
  StrichartzFamily fam;
  fam.s = std::move(s);
  fam.kind = kind;
  for (const ExponentPair& p : members) {
    if (!pairs::is_admissible(p.q, p.r, fam.s, N))
      throw std::invalid_argument("StrichartzFamily: inadmissible pair (" +
                                  ibnls::to_string(p.q) + "," + ibnls::to_string(p.r) + ") at s=" +
                                  ibnls::to_string(fam.s));
  }
  fam.members = std::move(members);
  fam.range_flagged = pairs::admissible_r_range(fam.s, N).lo_ambiguous;
  return fam;
}

StrichartzFamily default_family(const Rational& s, int N, FamilyKind kind) {
  const auto rr = pairs::admissible_r_range(s, N);
  // 1/r runs from the exclusive end (upper r) to the inclusive end (lower r)
  const Rational shift(1, 100);
  const Rational inv_hi = rr.hi.is_inf() ? Rational(0) : 1 / rr.hi.value();
  const Rational inv_lo = 1 / rr.lo;
  const Rational left = inv_hi + shift;
  const Rational right = inv_lo - shift;
  if (left >= right)
    throw std::invalid_argument("default_family: admissibility segment too narrow");
  std::vector<ExponentPair> mem;
  const int n = 5;
  for (int k = 0; k < n; ++k) {
    const Rational inv_r = left + (right - left) * k / (n - 1);
    const Rational r = 1 / inv_r;
    // 4/q = N/2 - N/r - s
    const Rational inv_q = (Rational(N) / 2 - Rational(N) * inv_r - s) / 4;
    ExponentPair p;
    p.q = (inv_q == 0) ? Exponent::infinity() : Exponent(1 / inv_q);
    p.r = r;
    p.s = s;
    mem.push_back(std::move(p));
  }
  return StrichartzFamily::make(s, std::move(mem), kind, N);
}

StrichartzValue strichartz_norm(const Trajectory& traj, const StrichartzFamily& family) {
  if (traj.samples.empty()) throw std::domain_error("strichartz_norm: empty trajectory");
  return strichartz_norm(traj, family, traj.samples.front().time, traj.samples.back().time);
}

StrichartzValue strichartz_norm(const Trajectory& traj, const StrichartzFamily& family,
                                double t0, double t1) {
  if (family.members.empty()) throw std::domain_error("strichartz_norm: empty family");
  StrichartzValue out;
  for (std::size_t i = 0; i < family.members.size(); ++i) {
    const ExponentPair& p = family.members[i];
    NormSpec spec;
    if (family.kind == FamilyKind::Sup) {
      spec.q = p.q;
      spec.r = Exponent(p.r);
    } else {
      spec.q = p.q.conjugate();
      spec.r = Exponent(p.r).conjugate();
    }
    spec.t0 = t0;
    spec.t1 = t1;
    const double v = mixed_norm(traj, spec);
    const bool better = (out.attained < 0) ||
                        (family.kind == FamilyKind::Sup ? v > out.value : v < out.value);
    if (better) {
      out.value = v;
      out.attained = static_cast<int>(i);
    }
  }
  return out;
}

}  // namespace ibnls::norms
