#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace mcmr {

/// Exact rational number in canonical form (gcd 1, positive denominator).
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

/// Parses "p", "p/q", "-p/q" or a finite decimal such as "0.25" or "1e-3".
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto bad = [&] { return std::invalid_argument("malformed rational: '" + s + "'"); };
  if (s.empty()) throw bad();
  if (s.find_first_of(".eE") != std::string::npos) {
    // Decimal literal, converted exactly.
    std::size_t epos = s.find_first_of("eE");
    std::string mant = s.substr(0, epos);
    long exponent = 0;
    if (epos != std::string::npos) {
      try {
        std::size_t used = 0;
        exponent = std::stol(s.substr(epos + 1), &used);
        if (used != s.size() - epos - 1) throw bad();
      } catch (const std::logic_error&) {
        throw bad();
      }
    }
    bool neg = false;
    if (!mant.empty() && (mant[0] == '-' || mant[0] == '+')) {
      neg = mant[0] == '-';
      mant.erase(0, 1);
    }
    std::size_t dot = mant.find('.');
    std::string digits = mant;
    long frac = 0;
    if (dot != std::string::npos) {
      digits = mant.substr(0, dot) + mant.substr(dot + 1);
      frac = static_cast<long>(mant.size() - dot - 1);
    }
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos) throw bad();
    mpz_class num(digits, 10);
    mpz_class ten_pow;
    long shift = exponent - frac;
    mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(shift < 0 ? -shift : shift));
    Rational r = shift < 0 ? Rational(num, ten_pow) : Rational(num * ten_pow);
    r.canonicalize();
    return neg ? Rational(-r) : r;
  }
  std::size_t slash = s.find('/');
  auto valid_int = [](const std::string& t) {
    std::size_t start = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
    return t.size() > start && t.find_first_not_of("0123456789", start) == std::string::npos;
  };
  std::string num = slash == std::string::npos ? s : s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+') throw bad();
  if (num[0] == '+') num.erase(0, 1);
  mpz_class d(den, 10);
  if (d == 0) throw bad();
  Rational r{mpz_class(num, 10), d};
  r.canonicalize();
  return r;
}

/// Canonical text: "p" for integers, "p/q" otherwise.
inline std::string to_string(const Rational& r) { return r.get_str(10); }

inline double to_double(const Rational& r) { return r.get_d(); }

inline mpz_class ceil(const Rational& r) {
  mpz_class out;
  mpz_cdiv_q(out.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return out;
}

inline mpz_class floor(const Rational& r) {
  mpz_class out;
  mpz_fdiv_q(out.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return out;
}

/// Exact square root when r is the square of a rational.
inline std::optional<Rational> exact_sqrt(const Rational& r) {
  if (r < 0) return std::nullopt;
  mpz_class n = r.get_num(), d = r.get_den();
  if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return std::nullopt;
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
  Rational out(rn, rd);
  out.canonicalize();
  return out;
}

}  // namespace mcmr
