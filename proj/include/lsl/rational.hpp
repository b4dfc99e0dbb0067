#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>

#include "lsl/error.hpp"

namespace lsl {

using Integer = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline Integer ipow(const Integer& base, unsigned long e) {
  Integer out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), e);
  return out;
}

inline Rational pow(const Rational& base, unsigned long e) {
  Rational out(ipow(base.get_num(), e), ipow(base.get_den(), e));
  out.canonicalize();
  return out;
}

inline Integer factorial(unsigned long n) {
  Integer out;
  mpz_fac_ui(out.get_mpz_t(), n);
  return out;
}

inline Integer binomial(unsigned long n, unsigned long k) {
  Integer out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

inline Integer floor(const Rational& q) {
  Integer out;
  mpz_fdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return out;
}

inline Integer ceil(const Rational& q) {
  Integer out;
  mpz_cdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return out;
}

inline Rational abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

// Canonical "p/q" (or "p" for integers).
inline std::string to_string(const Rational& q) {
  Rational c(q);
  c.canonicalize();
  return c.get_str();
}

inline double to_double(const Rational& q) { return q.get_d(); }

// Natural log of a positive rational, safe for numerators and denominators
// far outside the double range.
inline double log(const Rational& q) {
  if (q <= 0) throw DomainError("log of non-positive rational " + to_string(q));
  auto log_int = [](const Integer& z) {
    long exp2 = 0;
    const double mant = mpz_get_d_2exp(&exp2, z.get_mpz_t());
    return std::log(mant) + static_cast<double>(exp2) * std::log(2.0);
  };
  return log_int(q.get_num()) - log_int(q.get_den());
}

// Decimal rendering with `digits` significant digits, e.g. "8.3333333333333333333e-2".
inline std::string to_decimal(const Rational& q, int digits = 20) {
  if (q == 0) return "0";
  mpf_class f(q, 256);
  mp_exp_t exp10 = 0;
  std::string mant = f.get_str(exp10, 10, static_cast<size_t>(digits));
  std::string sign;
  if (!mant.empty() && mant[0] == '-') {
    sign = "-";
    mant.erase(0, 1);
  }
  std::string out = sign + mant.substr(0, 1);
  if (mant.size() > 1) out += "." + mant.substr(1);
  const long e = static_cast<long>(exp10) - 1;
  if (e != 0) out += "e" + std::to_string(e);
  return out;
}

// Accepts "p/q", "p", and finite decimals such as "0.75" or "-1.5e-3"; all
// parsed exactly.
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto fail = [&]() -> Rational { throw ValidationError("not a rational number: '" + s + "'"); };
  if (s.empty()) return fail();
  try {
    if (s.find_first_of(".eE") == std::string::npos) {
      Rational q(s, 10);
      if (q.get_den() == 0) return fail();
      q.canonicalize();
      return q;
    }
  } catch (const std::invalid_argument&) {
    return fail();
  }
  std::size_t pos = 0;
  bool negative = false;
  if (s[pos] == '+' || s[pos] == '-') negative = s[pos++] == '-';
  std::string digits;
  long scale = 0;
  bool seen_dot = false, seen_digit = false;
  for (; pos < s.size(); ++pos) {
    const char c = s[pos];
    if (c >= '0' && c <= '9') {
      digits += c;
      seen_digit = true;
      if (seen_dot) ++scale;
    } else if (c == '.' && !seen_dot) {
      seen_dot = true;
    } else {
      break;
    }
  }
  if (!seen_digit) return fail();
  long exponent = 0;
  if (pos < s.size()) {
    if (s[pos] != 'e' && s[pos] != 'E') return fail();
    try {
      std::size_t used = 0;
      exponent = std::stol(s.substr(pos + 1), &used);
      if (pos + 1 + used != s.size()) return fail();
    } catch (const std::exception&) {
      return fail();
    }
  }
  Rational q{Integer(digits, 10)};
  const long shift = exponent - scale;
  const Integer ten_pow = ipow(Integer(10), static_cast<unsigned long>(shift < 0 ? -shift : shift));
  if (shift >= 0) {
    q *= ten_pow;
  } else {
    q /= ten_pow;
  }
  q.canonicalize();
  return negative ? Rational(-q) : q;
}

}  // namespace lsl
