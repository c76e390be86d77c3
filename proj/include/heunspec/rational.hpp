#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include "heunspec/errors.hpp"

namespace heunspec {

/// Exact rational number. Always canonical: positive denominator,
/// gcd(numerator, denominator) == 1.
class Rational {
public:
  Rational() : v_(0) {}
  Rational(long n) : v_(n) {}          // NOLINT: implicit by design
  Rational(int n) : v_(n) {}           // NOLINT
  Rational(long num, long den) : v_(num, den) {
    if (den == 0) throw contract_error("Rational: zero denominator");
    v_.canonicalize();
  }
  explicit Rational(const mpq_class& q) : v_(q) { v_.canonicalize(); }
  explicit Rational(const mpz_class& num, const mpz_class& den) : v_(num, den) {
    if (den == 0) throw contract_error("Rational: zero denominator");
    v_.canonicalize();
  }

  /// Parses "p", "-p", or "p/q". Throws contract_error on malformed input.
  static Rational from_string(std::string_view s) {
    mpq_class q;
    if (s.empty() || q.set_str(std::string(s), 10) != 0)
      throw contract_error("Rational: malformed literal '" + std::string(s) + "'");
    if (q.get_den() == 0)
      throw contract_error("Rational: zero denominator in '" + std::string(s) + "'");
    q.canonicalize();
    return Rational(q);
  }

  /// 10^e for e >= 0, 1/10^(-e) for e < 0.
  static Rational pow_of_ten(long e) {
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(e < 0 ? -e : e));
    return e >= 0 ? Rational(mpq_class(p)) : Rational(mpz_class(1), p);
  }

  const mpq_class& raw() const { return v_; }
  mpz_class numerator() const { return v_.get_num(); }
  mpz_class denominator() const { return v_.get_den(); }

  bool is_zero() const { return v_ == 0; }
  bool is_integer() const { return v_.get_den() == 1; }
  int sign() const { return sgn(v_); }

  Rational operator-() const { return Rational(mpq_class(-v_)); }
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw division_by_zero("Rational: division by zero");
    v_ /= o.v_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
         : c > 0 ? std::strong_ordering::greater
                 : std::strong_ordering::equal;
  }

  Rational abs() const { return v_ < 0 ? Rational(mpq_class(-v_)) : *this; }

  Rational pow(unsigned e) const {
    Rational r(1), base(*this);
    while (e) {
      if (e & 1u) r *= base;
      base *= base;
      e >>= 1u;
    }
    return r;
  }

  Rational inverse() const {
    if (is_zero()) throw division_by_zero("Rational: inverse of zero");
    return Rational(mpq_class(1) / v_);
  }

  double to_double() const { return v_.get_d(); }

  /// "p/q" (or "p" for integers).
  std::string to_string() const { return v_.get_str(); }

  /// Fixed-point decimal expansion with `digits` fractional digits,
  /// rounded to nearest (ties away from zero).
  std::string decimal_string(std::size_t digits) const {
    mpz_class num = v_.get_num(), den = v_.get_den();
    bool neg = num < 0;
    if (neg) num = -num;
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, digits);
    mpz_class scaled = num * scale;
    mpz_class q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), scaled.get_mpz_t(), den.get_mpz_t());
    if (2 * r >= den) q += 1;
    mpz_class ipart = q / scale, fpart = q % scale;
    std::string out = neg && (ipart != 0 || fpart != 0) ? "-" : "";
    out += ipart.get_str();
    if (digits > 0) {
      std::string frac = fpart.get_str();
      frac.insert(0, digits - frac.size(), '0');
      out += "." + frac;
    }
    return out;
  }

private:
  mpq_class v_;
};

inline std::ostream& operator<<(std::ostream& os, const Rational& r) {
  return os << r.to_string();
}

/// Rising factorial x(x+1)...(x+k-1); empty product = 1.
inline Rational pochhammer(const Rational& x, unsigned k) {
  Rational p(1);
  for (unsigned i = 0; i < k; ++i) p *= x + Rational(static_cast<long>(i));
  return p;
}

inline Rational factorial(unsigned k) {
  Rational p(1);
  for (unsigned i = 2; i <= k; ++i) p *= Rational(static_cast<long>(i));
  return p;
}

} // namespace heunspec
