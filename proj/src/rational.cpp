#include "slopelab/rational.hpp"

#include <cctype>

namespace slopelab {

Rational parse_rational(const std::string& text) {
  if (text.empty()) throw input_error("empty rational literal");
  for (char c : text) {
    if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' || c == '/')) {
      throw input_error("malformed rational literal: \"" + text + "\"");
    }
  }
  mpq_class q;
  if (q.set_str(text, 10) != 0) {
    throw input_error("malformed rational literal: \"" + text + "\"");
  }
  if (q.get_den() == 0) {
    throw input_error("zero denominator in rational literal: \"" + text + "\"");
  }
  q.canonicalize();
  return q;
}

std::string fraction_string(const Rational& x) {
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

std::string numerator_string(const Rational& x) { return x.get_num().get_str(); }
std::string denominator_string(const Rational& x) { return x.get_den().get_str(); }

Rational rational_min(const Rational& a, const Rational& b) { return a < b ? a : b; }
Rational rational_max(const Rational& a, const Rational& b) { return a < b ? b : a; }
Rational rational_abs(const Rational& a) { return a < 0 ? Rational(-a) : a; }

Integer rational_floor(const Rational& x) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
  return q;
}

Integer rational_ceil(const Rational& x) {
  Integer q;
  mpz_cdiv_q(q.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
  return q;
}

Rational factorial(int n) {
  Rational r = 1;
  for (int k = 2; k <= n; ++k) r *= k;
  return r;
}

namespace {

Integer pow10(unsigned long e) {
  Integer p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, e);
  return p;
}

}  // namespace

std::string decimal_string(const Rational& x) {
  if (x == 0) return "0";
  const bool negative = x < 0;
  Integer a = negative ? Integer(-x.get_num()) : x.get_num();
  const Integer& b = x.get_den();

  // Decimal exponent e with 10^e <= a/b < 10^(e+1).
  long e = static_cast<long>(mpz_sizeinbase(a.get_mpz_t(), 10)) -
           static_cast<long>(mpz_sizeinbase(b.get_mpz_t(), 10));
  auto at_least = [&](long k) {
    // a/b >= 10^k ?
    if (k >= 0) return a >= b * pow10(static_cast<unsigned long>(k));
    return a * pow10(static_cast<unsigned long>(-k)) >= b;
  };
  while (!at_least(e)) --e;
  while (at_least(e + 1)) ++e;

  constexpr int kDigits = 15;
  // Scale so the integer part has exactly kDigits digits, then round
  // half to even.
  long shift = kDigits - 1 - e;
  Integer num = a, den = b;
  if (shift >= 0) {
    num *= pow10(static_cast<unsigned long>(shift));
  } else {
    den *= pow10(static_cast<unsigned long>(-shift));
  }
  Integer q, r;
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  Integer twice_r = r * 2;
  if (twice_r > den || (twice_r == den && mpz_odd_p(q.get_mpz_t()))) q += 1;
  std::string digits = q.get_str();
  if (static_cast<int>(digits.size()) > kDigits) {
    // Rounding carried into a new leading digit.
    digits.pop_back();
    ++e;
  }

  std::string out = negative ? "-" : "";
  if (e >= -4 && e < kDigits) {
    if (e >= 0) {
      out += digits.substr(0, static_cast<size_t>(e) + 1);
      out += ".";
      out += digits.substr(static_cast<size_t>(e) + 1);
      if (out.back() == '.') out.pop_back();
    } else {
      out += "0.";
      out += std::string(static_cast<size_t>(-e - 1), '0');
      out += digits;
    }
  } else {
    out += digits.substr(0, 1);
    out += ".";
    out += digits.substr(1);
    out += "e";
    out += (e >= 0 ? "+" : "-");
    std::string es = std::to_string(e >= 0 ? e : -e);
    if (es.size() < 2) es.insert(es.begin(), '0');
    out += es;
  }
  return out;
}

Rational ln_upper_bound(const Integer& m, int terms) {
  if (m < 1) throw input_error("ln_upper_bound requires m >= 1");
  if (m == 1) return Rational(0);
  if (terms < 1) terms = 1;

  // ln 2 = sum_{j>=1} 1/(j 2^j); truncation plus tail bound gives an
  // exact rational upper bound.
  Rational ln2_ub = 0;
  Rational pw = Rational(1, 2);
  for (int j = 1; j <= terms; ++j) {
    ln2_ub += pw / j;
    pw /= 2;
  }
  Integer two_k;
  mpz_ui_pow_ui(two_k.get_mpz_t(), 2, static_cast<unsigned long>(terms));
  ln2_ub += Rational(1, two_k * (terms + 1));

  // m = 2^k * r with r in [1, 2).
  long k = static_cast<long>(mpz_sizeinbase(m.get_mpz_t(), 2)) - 1;
  Integer two_to_k;
  mpz_ui_pow_ui(two_to_k.get_mpz_t(), 2, static_cast<unsigned long>(k));
  Rational r(m, two_to_k);
  r.canonicalize();

  // ln(1+u) for u in [0,1): alternating series; stopping after an odd
  // number of terms overshoots.
  Rational u = r - 1;
  Rational ln_r_ub = 0;
  Rational upow = u;
  int odd_terms = terms | 1;
  for (int j = 1; j <= odd_terms; ++j) {
    if (j % 2 == 1) {
      ln_r_ub += upow / j;
    } else {
      ln_r_ub -= upow / j;
    }
    upow *= u;
  }
  return Rational(k) * ln2_ub + ln_r_ub;
}

const Rational& ExtRational::value() const {
  if (kind_ != Kind::Finite) throw std::logic_error("ExtRational: value() on infinity");
  return value_;
}

std::string ExtRational::to_string() const {
  switch (kind_) {
    case Kind::PosInf:
      return "inf";
    case Kind::NegInf:
      return "-inf";
    default:
      return fraction_string(value_);
  }
}

}  // namespace slopelab
