#pragma once

#include <string>
#include <vector>

#include "ibnls/rational.hpp"

namespace ibnls::regime {

// The parameter quadruple (N, b, alpha, lambda) of
//   i u_t + Delta^2 u + lambda |x|^{-b} |u|^alpha u = 0.
struct ProblemParams {
  int dim = 1;          // N >= 1
  Rational b;           // inhomogeneity exponent, > 0
  Rational alpha;       // nonlinearity power, > 0
  int lambda = 1;       // +1 defocusing, -1 focusing

  void validate() const;
};

enum class Klass {
  MassSubcritical,
  MassCritical,
  Intercritical,
  EnergyCritical,
  EnergySupercritical,
};

std::string to_string(Klass k);

struct CriticalityReport {
  Rational s_c;        // N/2 - (4-b)/alpha
  Exponent four_star;  // (8-2b)/(N-4) for N >= 5, inf for N <= 4
  Klass klass;
};

CriticalityReport critical_index(const ProblemParams& params);

enum class TheoremId {
  ThmA_i,
  ThmA_ii,
  ThmA_iii,
  ThmA_iv,
  Thm_GWPH2,
  Thm_GWPH2_N5,
  Cor_N5,
  Thm_EnergyCritical,
};

constexpr TheoremId kAllTheorems[] = {
    TheoremId::ThmA_i,       TheoremId::ThmA_ii,   TheoremId::ThmA_iii,
    TheoremId::ThmA_iv,      TheoremId::Thm_GWPH2, TheoremId::Thm_GWPH2_N5,
    TheoremId::Cor_N5,       TheoremId::Thm_EnergyCritical,
};

std::string to_string(TheoremId id);
TheoremId parse_theorem_id(const std::string& name);  // throws std::invalid_argument

struct HypothesisVerdict {
  TheoremId theorem_id;
  bool satisfied;
  std::vector<std::string> failed_conditions;
};

// Checks every inequality of the named hypothesis in exact arithmetic.
HypothesisVerdict check_theorem(const ProblemParams& params, TheoremId id);

// Smallness threshold for the data in the N=5 global result:
//   min{ (1/(2 c^{t+2} 2^{a+1} eta^{t+1}))^{1/(a-1-t)},
//        (1/(2 c^{t+1} 2^{a+1} eta^{t}))^{1/(a-t)} }
// evaluated in high-precision floating point.
// Throws std::domain_error when a radicand exponent is nonpositive.
double smallness_threshold(const Rational& c, const Rational& eta,
                           const Rational& alpha, const Rational& theta);

}  // namespace ibnls::regime
