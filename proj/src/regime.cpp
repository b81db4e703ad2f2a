#include "ibnls/regime.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <algorithm>
#include <map>

namespace ibnls::regime {

namespace {

using Float50 = boost::multiprecision::cpp_bin_float_50;

Float50 to_float50(const Rational& x) {
  return Float50(numerator(x)) / Float50(denominator(x));
}

// Condition collector: records the verbatim inequality when it fails.
struct Checker {
  std::vector<std::string> failed;
  void require(bool ok, const std::string& text) {
    if (!ok) failed.push_back(text);
  }
};

Rational four_star_value(int N, const Rational& b) {
  return (8 - 2 * b) / Rational(N - 4);
}

}  // namespace

void ProblemParams::validate() const {
  if (dim < 1) throw std::invalid_argument("dim must be >= 1");
  if (b <= 0) throw std::invalid_argument("b must be > 0");
  if (alpha <= 0) throw std::invalid_argument("alpha must be > 0");
  if (lambda != 1 && lambda != -1) throw std::invalid_argument("lambda must be +1 or -1");
}

std::string to_string(Klass k) {
  switch (k) {
    case Klass::MassSubcritical: return "MassSubcritical";
    case Klass::MassCritical: return "MassCritical";
    case Klass::Intercritical: return "Intercritical";
    case Klass::EnergyCritical: return "EnergyCritical";
    case Klass::EnergySupercritical: return "EnergySupercritical";
  }
  return "?";
}

CriticalityReport critical_index(const ProblemParams& params) {
  params.validate();
  const int N = params.dim;
  CriticalityReport rep;
  rep.s_c = Rational(N) / 2 - (4 - params.b) / params.alpha;
  rep.four_star = (N >= 5) ? Exponent(four_star_value(N, params.b)) : Exponent::infinity();
  if (rep.s_c < 0)
    rep.klass = Klass::MassSubcritical;
  else if (rep.s_c == 0)
    rep.klass = Klass::MassCritical;
  else if (rep.s_c < 2)
    rep.klass = Klass::Intercritical;
  else if (rep.s_c == 2)
    rep.klass = Klass::EnergyCritical;
  else
    rep.klass = Klass::EnergySupercritical;
  return rep;
}

std::string to_string(TheoremId id) {
  switch (id) {
    case TheoremId::ThmA_i: return "ThmA_i";
    case TheoremId::ThmA_ii: return "ThmA_ii";
    case TheoremId::ThmA_iii: return "ThmA_iii";
    case TheoremId::ThmA_iv: return "ThmA_iv";
    case TheoremId::Thm_GWPH2: return "Thm_GWPH2";
    case TheoremId::Thm_GWPH2_N5: return "Thm_GWPH2_N5";
    case TheoremId::Cor_N5: return "Cor_N5";
    case TheoremId::Thm_EnergyCritical: return "Thm_EnergyCritical";
  }
  return "?";
}

TheoremId parse_theorem_id(const std::string& name) {
  for (TheoremId id : kAllTheorems)
    if (to_string(id) == name) return id;
  throw std::invalid_argument("unknown theorem_id '" + name + "'");
}

HypothesisVerdict check_theorem(const ProblemParams& params, TheoremId id) {
  params.validate();
  const int N = params.dim;
  const Rational& b = params.b;
  const Rational& a = params.alpha;
  const Rational mass_line = (8 - 2 * b) / Rational(N);
  Checker c;

  switch (id) {
    case TheoremId::ThmA_i: {
      c.require(N >= 8, "N >= 8");
      c.require(b > 0 && b < 4, "0 < b < 4");
      c.require(a > mass_line, "(8-2b)/N < alpha");
      c.require(a < four_star_value(std::max(N, 5), b) || N < 5, "alpha < 4*");
      break;
    }
    case TheoremId::ThmA_ii: {
      c.require(N == 5 || N == 6 || N == 7, "N in {5,6,7}");
      if (N >= 5) {
        c.require(a > mass_line, "(8-2b)/N < alpha");
        c.require(a < (N - 2 * b) / Rational(N - 4), "alpha < (N-2b)/(N-4)");
      }
      c.require(b > 0 && b < Rational(N * N - 8 * N + 32) / 8, "0 < b < (N^2-8N+32)/8");
      break;
    }
    case TheoremId::ThmA_iii: {
      c.require(N == 6 || N == 7, "N in {6,7}");
      c.require(b > 0 && b < N - 4, "0 < b < N-4");
      c.require(a > mass_line, "(8-2b)/N < alpha");
      if (N >= 5) c.require(a < four_star_value(N, b), "alpha < 4*");
      break;
    }
    case TheoremId::ThmA_iv: {
      c.require(N == 3 || N == 4, "N in {3,4}");
      c.require(b > 0 && b < Rational(N) / 2, "0 < b < N/2");
      c.require(a > mass_line, "(8-2b)/N < alpha");
      break;
    }
    case TheoremId::Thm_GWPH2: {
      c.require(N >= 3, "N >= 3");
      const Rational bcap = std::min(Rational(Rational(N) / 2), Rational(4));
      c.require(b > 0 && b < bcap, "0 < b < min{N/2,4}");
      c.require(a > mass_line, "(8-2b)/N < alpha");
      if (N >= 5) c.require(a < four_star_value(N, b), "alpha < 4*");
      if (N == 5) c.require(a < 7 - 2 * b, "alpha < 7-2b");
      break;
    }
    case TheoremId::Thm_GWPH2_N5: {
      c.require(N == 5, "N = 5");
      c.require(b > 0 && b <= Rational(3) / 2, "0 < b <= 3/2");
      c.require(a > (8 - 2 * b) / Rational(5), "(8-2b)/5 < alpha");
      c.require(a < 8 - 2 * b, "alpha < 8-2b");
      break;
    }
    case TheoremId::Cor_N5: {
      c.require(N == 5, "N = 5");
      c.require(b > 0 && b < Rational(5) / 2, "0 < b < 5/2");
      c.require(a > std::min(Rational(1), Rational((8 - 2 * b) / Rational(5))),
                "min{1,(8-2b)/5} < alpha");
      c.require(a < 8 - 2 * b, "alpha < 8-2b");
      break;
    }
    case TheoremId::Thm_EnergyCritical: {
      c.require(N >= 5 && N <= 11, "5 <= N <= 11");
      if (N >= 5) c.require(a == four_star_value(N, b), "alpha = (8-2b)/(N-4)");
      if (N >= 3) c.require(b > 0 && b < Rational(12 - N) / (N - 2), "0 < b < (12-N)/(N-2)");
      break;
    }
  }

  return HypothesisVerdict{id, c.failed.empty(), std::move(c.failed)};
}

double smallness_threshold(const Rational& c, const Rational& eta,
                           const Rational& alpha, const Rational& theta) {
  if (c <= 0 || eta <= 0) throw std::domain_error("smallness_threshold: c, eta must be > 0");
  const Rational e1 = alpha - 1 - theta;
  const Rational e2 = alpha - theta;
  if (e1 <= 0 || e2 <= 0)
    throw std::domain_error("smallness_threshold: need alpha-1-theta > 0 and alpha-theta > 0");

  const Float50 cf = to_float50(c);
  const Float50 ef = to_float50(eta);
  const Float50 tf = to_float50(theta);
  const Float50 af = to_float50(alpha);
  const Float50 two(2);

  const Float50 r1 = 1 / (two * pow(cf, tf + 2) * pow(two, af + 1) * pow(ef, tf + 1));
  const Float50 r2 = 1 / (two * pow(cf, tf + 1) * pow(two, af + 1) * pow(ef, tf));
  const Float50 t1 = pow(r1, 1 / to_float50(e1));
  const Float50 t2 = pow(r2, 1 / to_float50(e2));
  return static_cast<double>(t1 < t2 ? t1 : t2);
}

}  // namespace ibnls::regime
