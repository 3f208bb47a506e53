#pragma once

#include <gmpxx.h>

#include <compare>
#include <stdexcept>
#include <string>
#include <vector>

namespace slopelab {

// Exact rational scalar. Always kept in canonical form (lowest terms,
// positive denominator) by the helpers below.
using Rational = mpq_class;
using Integer = mpz_class;

// Thrown for malformed user input (bad rationals, dimension mismatches,
// dependent generators, ...). The CLI maps it to exit code 2.
class input_error : public std::runtime_error {
 public:
  explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

// Parses "p", "-p" or "p/q" (q > 0 after canonicalization). Rejects q = 0.
Rational parse_rational(const std::string& text);

// Canonical "p/q" with q >= 1, e.g. "0/1", "-3/2".
std::string fraction_string(const Rational& x);

// Canonical numerator / denominator strings (lowest terms, den >= 1).
std::string numerator_string(const Rational& x);
std::string denominator_string(const Rational& x);

// Presentation-only decimal rendering: 15 significant digits, round half
// to even. Comparisons elsewhere are always exact.
std::string decimal_string(const Rational& x);

Rational rational_min(const Rational& a, const Rational& b);
Rational rational_max(const Rational& a, const Rational& b);
Rational rational_abs(const Rational& a);

// floor(x) and ceil(x) as arbitrary-precision integers.
Integer rational_floor(const Rational& x);
Integer rational_ceil(const Rational& x);

// n! as a Rational (n small).
Rational factorial(int n);

// Exact rational upper bound for ln(m), m >= 1. `terms` controls the
// truncation of the underlying series (error ~ 2^-terms).
Rational ln_upper_bound(const Integer& m, int terms = 32);

// Rational extended with +inf / -inf, for the zero-space slope conventions
// and lambda of the zero vector.
class ExtRational {
 public:
  enum class Kind { NegInf, Finite, PosInf };

  ExtRational() : kind_(Kind::Finite), value_(0) {}
  explicit ExtRational(Rational v) : kind_(Kind::Finite), value_(std::move(v)) {}
  static ExtRational pos_inf() { return ExtRational(Kind::PosInf); }
  static ExtRational neg_inf() { return ExtRational(Kind::NegInf); }

  bool is_finite() const { return kind_ == Kind::Finite; }
  bool is_pos_inf() const { return kind_ == Kind::PosInf; }
  bool is_neg_inf() const { return kind_ == Kind::NegInf; }

  // Finite value; throws if infinite.
  const Rational& value() const;

  std::string to_string() const;

  friend bool operator==(const ExtRational& a, const ExtRational& b) {
    if (a.kind_ != b.kind_) return false;
    if (a.kind_ != Kind::Finite) return true;
    return a.value_ == b.value_;
  }
  friend bool operator<(const ExtRational& a, const ExtRational& b) {
    if (a.kind_ == b.kind_) return a.kind_ == Kind::Finite && a.value_ < b.value_;
    return static_cast<int>(a.kind_) < static_cast<int>(b.kind_);
  }
  friend bool operator<=(const ExtRational& a, const ExtRational& b) { return a < b || a == b; }
  friend bool operator>(const ExtRational& a, const ExtRational& b) { return b < a; }
  friend bool operator>=(const ExtRational& a, const ExtRational& b) { return b <= a; }
  friend bool operator!=(const ExtRational& a, const ExtRational& b) { return !(a == b); }

  friend ExtRational min(const ExtRational& a, const ExtRational& b) { return a < b ? a : b; }
  friend ExtRational max(const ExtRational& a, const ExtRational& b) { return a < b ? b : a; }

 private:
  explicit ExtRational(Kind k) : kind_(k), value_(0) {}
  Kind kind_;
  Rational value_;
};

}  // namespace slopelab
