#pragma once

#include <string>
#include <vector>

#include "ibnls/grid.hpp"
#include "ibnls/pairs.hpp"
#include "ibnls/solver.hpp"

namespace ibnls::norms {

using pairs::ExponentPair;
using spectral::ComplexField;
using solver::Trajectory;

// Quadrature Lebesgue norm (sum |u|^r h^dim)^{1/r}; max norm for r = inf.
double lebesgue_norm(const ComplexField& field, const Exponent& r);

struct NormSpec {
  Exponent q;  // time exponent (inf = sup over samples)
  Exponent r;  // space exponent (inf = max norm)
  double t0 = 0;
  double t1 = 0;
};

// Composite trapezoid in time of the r-th spatial norm raised to q over the
// trajectory samples inside [t0, t1]; sup over samples for q = inf.
// Throws std::domain_error when the window misses the trajectory span or
// contains fewer than one sample.
double mixed_norm(const Trajectory& traj, const NormSpec& spec);

enum class FamilyKind { Sup, InfDual };

// Finite surrogate of the admissible-pair family at level s. Construction
// verifies admissibility of every pair.
struct StrichartzFamily {
  Rational s;
  std::vector<ExponentPair> members;
  FamilyKind kind = FamilyKind::Sup;
  bool range_flagged = false;  // N <= 4 ambiguity flag from the range rule

  static StrichartzFamily make(Rational s, std::vector<ExponentPair> members,
                               FamilyKind kind, int N);
};

// Default 5-pair family spanning the admissibility segment at level s, with
// the endpoints moved inward by 1/100 in 1/r.
StrichartzFamily default_family(const Rational& s, int N, FamilyKind kind = FamilyKind::Sup);

struct StrichartzValue {
  double value = 0;
  int attained = -1;  // index of the extremal pair
};

// Sup (kind Sup) or inf over the conjugate pairs (kind InfDual) of the mixed
// norms over the trajectory's full span.
StrichartzValue strichartz_norm(const Trajectory& traj, const StrichartzFamily& family);

// Same, over the window [t0, t1].
StrichartzValue strichartz_norm(const Trajectory& traj, const StrichartzFamily& family,
                                double t0, double t1);

}  // namespace ibnls::norms
