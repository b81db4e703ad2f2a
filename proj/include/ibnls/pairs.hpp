#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ibnls/rational.hpp"

namespace ibnls::pairs {

// A space-time exponent pair (q, r) with the Sobolev level s of the
// admissibility claim attached.
struct ExponentPair {
  Exponent q;
  Rational r;
  Rational s;
};

struct RRange {
  Rational lo;
  Exponent hi;         // exclusive upper bound; inf for N <= 4
  bool lo_ambiguous;   // N <= 4, s >= N/2: the s-dependent bound is undefined
};

// r-range of the admissibility condition at level s. For N >= 5 this is
// [2N/(N-2s), 2N/(N-4)). For N <= 4 it is [2, inf), with the s-dependent
// lower bound 2N/(N-2s) additionally enforced when 0 < s < N/2 and it
// exceeds 2; for s >= N/2 the bound degenerates and is flagged instead.
RRange admissible_r_range(const Rational& s, int N);

// (q, r) is level-s admissible iff s < 2, 4/q = N/2 - N/r - s exactly, and
// r lies in admissible_r_range(s, N).
bool is_admissible(const Exponent& q, const Rational& r, const Rational& s, int N);

inline bool is_admissible(const ExponentPair& p, int N) {
  return is_admissible(p.q, p.r, p.s, N);
}

enum class Rel { Eq, Lt, Le, Gt, Ge };

std::string to_string(Rel r);

struct IdentityRecord {
  std::string name;
  Rational lhs;
  Rational rhs;
  Rel rel;
  bool holds;
};

struct ReportPair {
  ExponentPair pair;
  bool admissible;          // computed from the definition
  bool claimed_admissible;  // the construction asserts admissibility
};

// Output of the lemma exponent constructors. `identities` holds every
// verified equality and strict inequality; under valid (non-formal)
// preconditions they must all hold. theta = 0 (and eps = 0) are accepted as
// formal limit evaluations: strict sign conditions degenerate to their
// closures and the report carries formal_limit = true.
struct LemmaExponentReport {
  Rational theta;
  Rational eps;
  Rational theta_max;
  Rational eps_max;
  bool formal_limit = false;
  std::map<std::string, ReportPair> pairs;
  std::map<std::string, Rational> auxiliaries;
  std::vector<IdentityRecord> identities;

  bool all_hold() const;
  // every pair whose construction claims admissibility is admissible;
  // vacuously true for formal-limit reports (endpoints may degenerate)
  bool claims_hold() const;
  const ReportPair& at(const std::string& name) const;
};

struct PreconditionError : std::domain_error {
  explicit PreconditionError(const std::string& what) : std::domain_error(what) {}
};

struct ThetaRangeError : std::out_of_range {
  ThetaRangeError(const std::string& what, Rational max)
      : std::out_of_range(what), limit(std::move(max)) {}
  Rational limit;
};

// Intercritical global-regularity exponent family for N in {5, 6, 7}.
// theta (and, for N = 5, eps) default to half their exact suprema.
LemmaExponentReport lemma32_exponents(int N, const Rational& b, const Rational& alpha,
                                      std::optional<Rational> theta = std::nullopt,
                                      std::optional<Rational> eps = std::nullopt);

// N = 5 family for the full intercritical alpha-range under b <= 3/2.
LemmaExponentReport lemma33_exponents(const Rational& b, const Rational& alpha,
                                      std::optional<Rational> theta = std::nullopt,
                                      std::optional<Rational> eps = std::nullopt);

// Energy-critical family for 5 <= N <= 11 (alpha is determined by (N, b)).
LemmaExponentReport lemma41_exponents(int N, const Rational& b);

enum class WeightIntegrability { BallOnly, ComplementOnly, Neither };

std::string to_string(WeightIntegrability w);

// Sign test for finiteness of || |x|^{-b} ||_{L^gamma} on the unit ball
// (N/gamma - b > 0) versus its complement (N/gamma - b < 0).
WeightIntegrability weight_integrability(int N, const Rational& b, const Rational& gamma);

// Exponent conditions of the fractional interpolation inequality
// ||D^s u||_p <= ||u||_{p0}^{1-theta} ||D^{s1} u||_{p1}^{theta}:
//   N/p - s = (1-theta) N/p0 + theta (N/p1 - s1)  and  s <= theta s1,
// with 1 < p, p0, p1 < inf and theta in [0,1]. Total: false out of domain.
bool gn_exponent_check(const Rational& p, const Rational& p0, const Rational& p1,
                       const Rational& s, const Rational& s1, const Rational& theta, int N);

// Exponent conditions of || |x|^{-rho} u ||_q <= || D^s u ||_p:
//   1 < p <= q < inf, 0 < s < N, rho >= 0, rho < N/q, s = N/p - N/q + rho.
bool hl_exponent_check(const Rational& p, const Rational& q, const Rational& s,
                       const Rational& rho, int N);

}  // namespace ibnls::pairs
