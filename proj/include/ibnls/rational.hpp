#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

namespace ibnls {

// Exact rational arithmetic. All exponent bookkeeping in the regime and
// pairs modules happens in this type; doubles appear only at the boundary
// (grids, norms, thresholds).
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline double to_double(const Rational& x) { return static_cast<double>(x); }

inline std::string to_string(const Rational& x) {
  const BigInt num = numerator(x);
  const BigInt den = denominator(x);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

// Parses "P", "-P", or "P/Q". Throws std::invalid_argument on malformed
// input or zero denominator.
Rational parse_rational(const std::string& text);

// A positive exponent extended with a point at infinity. The working
// convention is 1/inf = 0, so identities involving the pair (inf, 2) can be
// evaluated exactly.
class Exponent {
 public:
  Exponent() : inf_(false), v_(0) {}
  Exponent(Rational v) : inf_(false), v_(std::move(v)) {}  // NOLINT(google-explicit-constructor)
  Exponent(int v) : inf_(false), v_(v) {}                  // NOLINT(google-explicit-constructor)

  static Exponent infinity() {
    Exponent e;
    e.inf_ = true;
    return e;
  }

  bool is_inf() const { return inf_; }

  const Rational& value() const {
    if (inf_) throw std::logic_error("Exponent: value() on infinity");
    return v_;
  }

  Rational reciprocal() const {
    if (inf_) return Rational(0);
    if (v_ == 0) throw std::domain_error("Exponent: reciprocal of zero");
    return Rational(1) / v_;
  }

  // Hoelder conjugate: 1/q + 1/q' = 1.  conj(1) = inf, conj(inf) = 1.
  Exponent conjugate() const {
    if (inf_) return Exponent(Rational(1));
    if (v_ == 1) return infinity();
    if (v_ < 1) throw std::domain_error("Exponent: conjugate needs q >= 1");
    return Exponent(v_ / (v_ - 1));
  }

  bool operator==(const Exponent& o) const {
    if (inf_ != o.inf_) return false;
    return inf_ || v_ == o.v_;
  }

  double to_double() const {
    if (inf_) return std::numeric_limits<double>::infinity();
    return ibnls::to_double(v_);
  }

 private:
  bool inf_;
  Rational v_;
};

inline std::string to_string(const Exponent& e) {
  return e.is_inf() ? "inf" : to_string(e.value());
}

// Parses a rational or the literal "inf".
Exponent parse_exponent(const std::string& text);

}  // namespace ibnls
