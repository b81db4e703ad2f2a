#include "ibnls/pairs.hpp"

#include <algorithm>

namespace ibnls::pairs {

namespace {

Rational s_crit(int N, const Rational& b, const Rational& alpha) {
  return Rational(N) / 2 - (4 - b) / alpha;
}

void require(bool ok, const std::string& text) {
  if (!ok) throw PreconditionError("precondition failed: " + text);
}

bool rel_holds(const Rational& lhs, const Rational& rhs, Rel rel) {
  switch (rel) {
    case Rel::Eq: return lhs == rhs;
    case Rel::Lt: return lhs < rhs;
    case Rel::Le: return lhs <= rhs;
    case Rel::Gt: return lhs > rhs;
    case Rel::Ge: return lhs >= rhs;
  }
  return false;
}

// Builder collecting identity rows; in formal-limit mode strict inequalities
// are recorded against their closures.
struct Report {
  LemmaExponentReport rep;

  void id(const std::string& name, const Rational& lhs, const Rational& rhs, Rel rel) {
    if (rep.formal_limit) {
      if (rel == Rel::Lt) rel = Rel::Le;
      if (rel == Rel::Gt) rel = Rel::Ge;
    }
    rep.identities.push_back({name, lhs, rhs, rel, rel_holds(lhs, rhs, rel)});
  }

  void raw(const std::string& name, const Rational& lhs, const Rational& rhs, Rel rel, bool holds) {
    rep.identities.push_back({name, lhs, rhs, rel, holds});
  }

  void pair(const std::string& name, Exponent q, Rational r, Rational s, int N,
            bool claimed) {
    ExponentPair p{std::move(q), std::move(r), std::move(s)};
    rep.pairs.emplace(name, ReportPair{p, is_admissible(p, N), claimed});
  }

  void aux(const std::string& name, Rational v) { rep.auxiliaries.emplace(name, std::move(v)); }
};

Rational pick_theta(const std::optional<Rational>& theta, const Rational& theta_max) {
  if (!theta) return theta_max / 2;
  if (*theta < 0) throw PreconditionError("theta must be >= 0");
  if (*theta >= theta_max)
    throw ThetaRangeError("theta out of range, theta_max = " + ibnls::to_string(theta_max),
                          theta_max);
  return *theta;
}

Rational pick_eps(const std::optional<Rational>& eps, const Rational& eps_max) {
  if (!eps) return eps_max / 2;
  if (*eps < 0) throw PreconditionError("eps must be >= 0");
  if (*eps >= eps_max)
    throw ThetaRangeError("eps out of range, eps_max = " + ibnls::to_string(eps_max), eps_max);
  return *eps;
}

// Shared tail of the intercritical constructions: the reduction chain from
// the Hoelder exponents to the weighted-norm balance. Both r1 choices
// (theta*r1 = 2N/(N-4) on the ball, theta*r1 = 2 outside) are pushed through
//   N/beta  = N/r1 + N(alpha-theta)/r_space + n_over_r_grad,
//   N/gamma = kappa_half - N/beta,
// then checked against the closed forms, the sign conditions deciding where
// the weight is integrable, and the inverse-power exponent conditions.
struct ChainSpec {
  int N;
  Rational b, alpha, theta, sc;
  Rational r_space;        // level-s_c space exponent entering the Hoelder split
  Rational n_over_r_grad;  // N/r2 (gradient chain) or N/r* (second-order chain)
  Rational kappa_half;     // (N+2)/2, or (N+4-2eps)/2 for the second-order chain
  Rational beta_upper;     // N (rho = 1) or N/2 (rho = 2)
  Rational hardy_rho;      // 1 or 2
};

void run_chain(Report& R, const ChainSpec& cs) {
  const int N = cs.N;
  const Rational Nq(N);

  struct Case {
    const char* tag;
    Rational r1_inv;  // 1/r1
    Rational sign;    // (N/gamma - b)/theta expected value
  };
  const Case cases[] = {
      {"ball", cs.theta * Rational(N - 4) / (2 * N), 2 - cs.sc},
      {"complement", cs.theta / 2, -cs.sc},
  };

  for (const Case& c : cases) {
    const Rational n_over_beta =
        Nq * c.r1_inv + Nq * (cs.alpha - cs.theta) / cs.r_space + cs.n_over_r_grad;
    const Rational beta = Nq / n_over_beta;
    const Rational n_over_gamma = cs.kappa_half - n_over_beta;
    const std::string tag(c.tag);

    R.aux("beta_" + tag, beta);
    if (n_over_gamma != 0) {
      const Rational gamma = Nq / n_over_gamma;
      R.aux("gamma_" + tag, gamma);
      R.id("gamma_pos_" + tag, gamma, Rational(0), Rel::Gt);
    } else {
      R.id("gamma_pos_" + tag, Rational(0), Rational(0), Rel::Gt);
    }
    if (c.r1_inv != 0) R.aux("r1_" + tag, Rational(1) / c.r1_inv);

    // weighted-norm balance: N/gamma - b = theta(4-b)/alpha - N/r1
    R.id("lgr2_" + tag, n_over_gamma - cs.b,
         cs.theta * (4 - cs.b) / cs.alpha - Nq * c.r1_inv, Rel::Eq);
    // sign deciding ball/complement integrability of the weight
    R.id("gamma_sign_" + tag, n_over_gamma - cs.b, Rational(0),
         tag == "ball" ? Rel::Gt : Rel::Lt);
    R.id("gamma_sign_value_" + tag, n_over_gamma - cs.b, cs.theta * c.sign, Rel::Eq);
    // closed form
    const Rational beta_cf = 2 * Nq / (2 * cs.kappa_half - 2 * cs.b - 2 * cs.theta * c.sign);
    R.id("beta_closed_form_" + tag, beta, beta_cf, Rel::Eq);
    R.id("beta_gt_1_" + tag, beta, Rational(1), Rel::Gt);
    R.id("beta_upper_" + tag, beta, cs.beta_upper, Rel::Lt);
    // the |x|^{-rho} reduction inside the chain requires its exponent
    // conditions with p = q = beta
    R.raw("hardy_exponents_" + tag, beta, cs.beta_upper, Rel::Lt,
          hl_exponent_check(beta, beta, cs.hardy_rho, cs.hardy_rho, N));
  }
}

}  // namespace

RRange admissible_r_range(const Rational& s, int N) {
  if (N >= 5) {
    return RRange{2 * Rational(N) / (N - 2 * s), Exponent(2 * Rational(N) / (N - 4)), false};
  }
  RRange rr{Rational(2), Exponent::infinity(), false};
  if (s > 0) {
    if (s < Rational(N) / 2) {
      rr.lo = std::max(rr.lo, Rational(2 * Rational(N) / (N - 2 * s)));
    } else {
      rr.lo_ambiguous = true;
    }
  }
  return rr;
}

bool is_admissible(const Exponent& q, const Rational& r, const Rational& s, int N) {
  if (N < 1 || r <= 0) return false;
  if (s >= 2) return false;                       // the definition assumes s < 2
  if (!q.is_inf() && q.value() <= 0) return false;
  if (N >= 5 && N - 2 * s <= 0) return false;     // degenerate range
  // scaling relation 4/q = N/2 - N/r - s
  if (4 * q.reciprocal() != Rational(N) / 2 - Rational(N) / r - s) return false;
  const RRange rr = admissible_r_range(s, N);
  if (r < rr.lo) return false;
  if (!rr.hi.is_inf() && r >= rr.hi.value()) return false;
  return true;
}

std::string to_string(Rel r) {
  switch (r) {
    case Rel::Eq: return "=";
    case Rel::Lt: return "<";
    case Rel::Le: return "<=";
    case Rel::Gt: return ">";
    case Rel::Ge: return ">=";
  }
  return "?";
}

bool LemmaExponentReport::all_hold() const {
  return std::all_of(identities.begin(), identities.end(),
                     [](const IdentityRecord& r) { return r.holds; });
}

bool LemmaExponentReport::claims_hold() const {
  if (formal_limit) return true;
  return std::all_of(pairs.begin(), pairs.end(), [](const auto& kv) {
    return !kv.second.claimed_admissible || kv.second.admissible;
  });
}

const ReportPair& LemmaExponentReport::at(const std::string& name) const {
  auto it = pairs.find(name);
  if (it == pairs.end()) throw std::out_of_range("no pair named '" + name + "'");
  return it->second;
}

LemmaExponentReport lemma32_exponents(int N, const Rational& b, const Rational& alpha,
                                      std::optional<Rational> theta_in,
                                      std::optional<Rational> eps_in) {
  require(N == 5 || N == 6 || N == 7, "N in {5,6,7}");
  require(b > 0, "b > 0");
  require(b < std::min(Rational(Rational(N) / 2), Rational(4)), "b < min{N/2,4}");
  require(alpha > (8 - 2 * b) / Rational(N), "(8-2b)/N < alpha");
  if (N == 5)
    require(alpha < 7 - 2 * b, "alpha < 7-2b");
  else
    require(alpha < (8 - 2 * b) / Rational(N - 4), "alpha < 4*");

  const Rational sc = s_crit(N, b, alpha);
  const Rational Nq(N);

  Report R;

  if (N == 5) {
    // eps window from the strict margins at theta = 0
    const Rational eps_max =
        std::min(Rational(Rational(3) / 2), Rational((7 - 2 * b - alpha) / 2));
    R.rep.eps_max = eps_max;
    const Rational eps = pick_eps(eps_in, eps_max);
    R.rep.eps = eps;

    const Rational bounds[] = {
        alpha,
        alpha * (7 - 2 * b - 2 * eps) / (2 * (4 - b)),
        alpha * (7 - 2 * b - alpha - 2 * eps) / (8 - 2 * b - alpha),
        (7 - 2 * b) / (2 * (2 - sc)),
        (5 - 2 * b) / (2 * (2 - sc)),
        (3 + 2 * b) / (2 * sc),
        b / sc,
    };
    const Rational theta_max = *std::min_element(std::begin(bounds), std::end(bounds));
    R.rep.theta_max = theta_max;
    const Rational theta = pick_theta(theta_in, theta_max);
    R.rep.theta = theta;
    R.rep.formal_limit = (theta == 0) || (eps == 0);

    const Rational qeps = Rational(8) / (3 - 2 * eps);
    const Rational reps = Rational(5) / (1 + eps);
    const Rational a = 8 * (alpha - theta) / (1 + 2 * eps);
    const Rational r = 10 * alpha * (alpha - theta) /
                       (alpha * (7 - 2 * b) - 2 * theta * (4 - b) - 2 * eps * alpha);

    R.pair("a_bar", Exponent(a), r, sc, N, true);
    R.pair("q_eps", Exponent(qeps), reps, Rational(0), N, true);

    R.id("holglo", (alpha - theta) / a + 1 / qeps, Rational(1) / 2, Rel::Eq);
    R.id("scaling_hsc_a_bar", 4 / a, Nq / 2 - Nq / r - sc, Rel::Eq);
    R.id("scaling_b_q_eps", 4 / qeps, Nq / 2 - Nq / reps, Rel::Eq);
    R.id("r_lt_10", r, Rational(10), Rel::Lt);
    R.id("r_eps_lt_5", reps, Rational(5), Rel::Lt);

    run_chain(R, ChainSpec{N, b, alpha, theta, sc,
                           /*r_space=*/r,
                           /*n_over_r_grad=*/Nq / reps - 1,
                           /*kappa_half=*/Rational(N + 2) / 2,
                           /*beta_upper=*/Nq,
                           /*hardy_rho=*/Rational(1)});
    return R.rep;
  }

  // N = 6, 7
  R.rep.eps = 0;
  R.rep.eps_max = 0;
  Rational bounds[] = {
      alpha,
      alpha * (N + 4 - 2 * b) / (2 * (4 - b)),
      alpha * (Nq * alpha - 4 + 2 * b) / (Nq * alpha - 8 + 2 * b),
      alpha,  // replaced below when r_bar < N binds theta
      (N + 2 - 2 * b) / (2 * (2 - sc)),
      (N - 2 * b) / (2 * (2 - sc)),
      (N - 2 + 2 * b) / (2 * sc),
      b / sc,
  };
  if (4 - b - alpha > 0)
    bounds[3] = alpha * (N + 2 - 2 * b - 2 * alpha) / (2 * (4 - b - alpha));
  const Rational theta_max = *std::min_element(std::begin(bounds), std::end(bounds));
  R.rep.theta_max = theta_max;
  const Rational theta = pick_theta(theta_in, theta_max);
  R.rep.theta = theta;
  R.rep.formal_limit = (theta == 0);

  const Rational abar = 8 * alpha * (alpha + 1 - theta) / (8 - 2 * b - alpha * (N - 4));
  const Rational rbar =
      2 * alpha * Nq * (alpha + 1 - theta) / (alpha * (N + 4 - 2 * b) - 2 * theta * (4 - b));
  const Rational qbar = 8 * alpha * (alpha + 1 - theta) /
                        (alpha * (Nq * alpha - 4 + 2 * b) - theta * (Nq * alpha - 8 + 2 * b));

  R.pair("a_bar", Exponent(abar), rbar, sc, N, true);
  R.pair("q_bar", Exponent(qbar), rbar, Rational(0), N, true);

  R.id("holglo", (alpha - theta) / abar + 1 / qbar, Rational(1) / 2, Rel::Eq);
  R.id("scaling_hsc_a_bar", 4 / abar, Nq / 2 - Nq / rbar - sc, Rel::Eq);
  R.id("scaling_b_q_bar", 4 / qbar, Nq / 2 - Nq / rbar, Rel::Eq);
  R.id("r_bar_lt_N", rbar, Nq, Rel::Lt);

  run_chain(R, ChainSpec{N, b, alpha, theta, sc,
                         /*r_space=*/rbar,
                         /*n_over_r_grad=*/Nq / rbar - 1,
                         /*kappa_half=*/Rational(N + 2) / 2,
                         /*beta_upper=*/Nq,
                         /*hardy_rho=*/Rational(1)});
  return R.rep;
}

LemmaExponentReport lemma33_exponents(const Rational& b, const Rational& alpha,
                                      std::optional<Rational> theta_in,
                                      std::optional<Rational> eps_in) {
  const int N = 5;
  const Rational Nq(N);
  require(b > 0, "b > 0");
  require(b <= Rational(3) / 2, "b <= 3/2");
  require(alpha > (8 - 2 * b) / Nq, "(8-2b)/5 < alpha");
  require(alpha < 8 - 2 * b, "alpha < 8-2b");

  const Rational sc = s_crit(N, b, alpha);

  Report R;
  const Rational eps_max = std::min(
      {Rational((8 - 2 * b - alpha) / 2), Rational((5 - 2 * b) / 2), Rational(2)});
  R.rep.eps_max = eps_max;
  const Rational eps = pick_eps(eps_in, eps_max);
  R.rep.eps = eps;

  const Rational bounds[] = {
      alpha,
      alpha * (9 - 2 * b - 2 * eps) / (2 * (4 - b)),
      alpha * (5 * alpha - 4 + 2 * b + 2 * eps) / (5 * alpha - 8 + 2 * b),
      alpha * (8 - 2 * b - alpha - 2 * eps) / (8 - 2 * b - alpha),
      (9 - 2 * b - 2 * eps) / (2 * (2 - sc)),
      (5 - 2 * b - 2 * eps) / (2 * (2 - sc)),
      (1 + 2 * b + 2 * eps) / (2 * sc),
      b / sc,
      (5 * alpha + 1 + 2 * sc - 2 * eps) / 5,
      (4 * alpha + 2 * sc - 2 * eps) / 4,
      (9 - 2 * b - 2 * eps) / (5 - 2 * sc),
  };
  const Rational theta_max = *std::min_element(std::begin(bounds), std::end(bounds));
  R.rep.theta_max = theta_max;
  const Rational theta = pick_theta(theta_in, theta_max);
  R.rep.theta = theta;
  R.rep.formal_limit = (theta == 0) || (eps == 0);

  const Rational astar = 8 * alpha * (alpha + 1 - theta) / (8 - 2 * b - alpha + 2 * eps * alpha);
  const Rational rstar = 2 * alpha * Nq * (alpha + 1 - theta) /
                         (alpha * (N + 4 - 2 * b) - 2 * theta * (4 - b) - 2 * eps * alpha);
  const Rational qstar =
      8 * alpha * (alpha + 1 - theta) /
      (alpha * (Nq * alpha - 4 + 2 * b) - theta * (Nq * alpha - 8 + 2 * b) + 2 * eps * alpha);
  const Rational qeps = Rational(4) / (2 - eps);
  const Rational reps = 2 * Nq / (N - 4 + 2 * eps);
  const Rational pstar = 10 * (alpha + 1 - theta) / (5 * alpha + 1 + 2 * sc - 5 * theta - 2 * eps);

  // (a*, r*) carries no admissibility claim: the construction only uses its
  // scaling relation (the computed verdict is still reported)
  R.pair("a_star", Exponent(astar), rstar, sc, N, false);
  R.pair("q_star", Exponent(qstar), rstar, Rational(0), N, true);
  R.pair("q_eps", Exponent(qeps), reps, Rational(0), N, true);
  R.pair("p_star", Exponent(astar), pstar, Rational(0), N, true);

  R.id("scaling_hsc_a_star", 4 / astar, Nq / 2 - Nq / rstar - sc, Rel::Eq);
  R.id("scaling_b_q_star", 4 / qstar, Nq / 2 - Nq / rstar, Rel::Eq);
  R.id("scaling_b_q_eps", 4 / qeps, Nq / 2 - Nq / reps, Rel::Eq);
  // 1/q_eps' = (alpha-theta)/a* + 1/q*
  R.id("dual_time_split", 1 - 1 / qeps, (alpha - theta) / astar + 1 / qstar, Rel::Eq);
  R.id("scaling_b_p_star", 4 / astar, Nq / 2 - Nq / pstar, Rel::Eq);
  R.id("pstar_sobolev_level", sc, 5 / pstar - 5 / rstar, Rel::Eq);
  R.id("pstar_times_sc_lt_5", pstar * sc, Rational(5), Rel::Lt);
  R.id("pstar_gt_2", pstar, Rational(2), Rel::Gt);
  R.id("pstar_lt_10", pstar, Rational(10), Rel::Lt);
  R.id("r_star_lt_10", rstar, Rational(10), Rel::Lt);

  run_chain(R, ChainSpec{N, b, alpha, theta, sc,
                         /*r_space=*/rstar,
                         /*n_over_r_grad=*/Nq / rstar,  // second-order chain ends in 1/r*
                         /*kappa_half=*/(Nq + 4 - 2 * eps) / 2,
                         /*beta_upper=*/Nq / 2,
                         /*hardy_rho=*/Rational(2)});
  return R.rep;
}

LemmaExponentReport lemma41_exponents(int N, const Rational& b) {
  require(N >= 5 && N <= 11, "5 <= N <= 11");
  require(b > 0, "b > 0");
  require(b < Rational(12 - N) / (N - 2), "b < (12-N)/(N-2)");

  const Rational Nq(N);
  const Rational alpha = (8 - 2 * b) / (N - 4);
  const Rational q = 2 * (N + 4) * (b + 1) / (b * (N - 2) + N - 4);
  const Rational r = 2 * Nq * (N + 4) * (b + 1) / (Nq * Nq + b * (Nq * Nq + 8) + 16);
  const Rational rbar = Rational(2 * (N + 4)) / (N - 4);
  const Rational beta = Nq * r / (Nq - r);

  Report R;
  R.rep.theta = 0;
  R.rep.eps = 0;
  R.rep.theta_max = 0;
  R.rep.eps_max = 0;

  R.pair("q_crit", Exponent(q), r, Rational(0), N, true);
  R.pair("r_bar_crit", Exponent(rbar), rbar, Rational(2), N, false);
  R.aux("beta_crit", beta);

  R.id("beta_lt_N", beta, Nq, Rel::Lt);
  R.id("dual_holder", Rational(N + 2) / (2 * N), (alpha - b) / rbar + (b + 1) / beta, Rel::Eq);
  R.id("time_holder", Rational(1) / 2, (alpha - b) / rbar + (b + 1) / q, Rel::Eq);
  R.id("sobolev_step", Rational(1), Nq / r - Nq / beta, Rel::Eq);
  R.id("scaling_b_q_crit", 4 / q, Nq / 2 - Nq / r, Rel::Eq);
  R.id("alpha_minus_b_minus_1_pos", alpha - b - 1, Rational(0), Rel::Gt);
  R.raw("hardy_exponents", beta, Nq, Rel::Lt,
        hl_exponent_check(beta, beta, Rational(1), Rational(1), N));
  return R.rep;
}

std::string to_string(WeightIntegrability w) {
  switch (w) {
    case WeightIntegrability::BallOnly: return "BallOnly";
    case WeightIntegrability::ComplementOnly: return "ComplementOnly";
    case WeightIntegrability::Neither: return "Neither";
  }
  return "?";
}

WeightIntegrability weight_integrability(int N, const Rational& b, const Rational& gamma) {
  if (gamma <= 0) throw std::domain_error("weight_integrability: gamma must be > 0");
  const Rational margin = Rational(N) / gamma - b;
  if (margin > 0) return WeightIntegrability::BallOnly;
  if (margin < 0) return WeightIntegrability::ComplementOnly;
  return WeightIntegrability::Neither;
}

bool gn_exponent_check(const Rational& p, const Rational& p0, const Rational& p1,
                       const Rational& s, const Rational& s1, const Rational& theta, int N) {
  if (!(p > 1 && p0 > 1 && p1 > 1)) return false;
  if (theta < 0 || theta > 1) return false;
  const Rational Nq(N);
  if (Nq / p - s != (1 - theta) * (Nq / p0) + theta * (Nq / p1 - s1)) return false;
  return s <= theta * s1;
}

bool hl_exponent_check(const Rational& p, const Rational& q, const Rational& s,
                       const Rational& rho, int N) {
  if (!(p > 1 && p <= q)) return false;
  if (!(s > 0 && s < N)) return false;
  if (rho < 0) return false;
  const Rational Nq(N);
  if (!(rho < Nq / q)) return false;
  return s == Nq / p - Nq / q + rho;
}

}  // namespace ibnls::pairs
