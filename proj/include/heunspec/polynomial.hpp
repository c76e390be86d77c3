#pragma once

#include <algorithm>
#include <initializer_list>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "heunspec/rational.hpp"

namespace heunspec {

/// Variable tag for the three symbol domains used across the solver:
/// the radial coordinate r, the spectral variable zeta (= epsilon0), and
/// the scaled energy root.
enum class Var { r, zeta, energy };

inline const char* var_name(Var v) {
  switch (v) {
    case Var::r: return "r";
    case Var::zeta: return "zeta";
    case Var::energy: return "energy";
  }
  return "?";
}

/// Dense univariate polynomial over exact rationals. Coefficient index equals
/// the power; the zero polynomial stores no coefficients, otherwise the
/// leading coefficient is nonzero.
class RationalPoly {
public:
  explicit RationalPoly(Var var = Var::zeta) : var_(var) {}
  RationalPoly(Var var, std::vector<Rational> coeffs)
      : c_(std::move(coeffs)), var_(var) {
    trim();
  }
  RationalPoly(Var var, std::initializer_list<Rational> coeffs)
      : c_(coeffs), var_(var) {
    trim();
  }

  static RationalPoly zero(Var var) { return RationalPoly(var); }
  static RationalPoly constant(Var var, const Rational& c) {
    return RationalPoly(var, {c});
  }
  /// c * x^p
  static RationalPoly monomial(Var var, const Rational& c, unsigned p) {
    std::vector<Rational> v(p + 1, Rational(0));
    v[p] = c;
    return RationalPoly(var, std::move(v));
  }

  Var var() const { return var_; }
  bool is_zero() const { return c_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<Rational>& coefficients() const { return c_; }

  Rational coeff(int i) const {
    return (i < 0 || i >= static_cast<int>(c_.size())) ? Rational(0) : c_[i];
  }
  const Rational& leading() const {
    static const Rational kZero(0);
    return c_.empty() ? kZero : c_.back();
  }

  friend bool operator==(const RationalPoly& a, const RationalPoly& b) {
    return a.var_ == b.var_ && a.c_ == b.c_;
  }

  RationalPoly operator-() const {
    RationalPoly r(*this);
    for (auto& c : r.c_) c = -c;
    return r;
  }

  friend RationalPoly operator+(const RationalPoly& a, const RationalPoly& b) {
    check_same_var(a, b, "add");
    RationalPoly r(a.var_);
    r.c_.resize(std::max(a.c_.size(), b.c_.size()), Rational(0));
    for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = a.coeff(static_cast<int>(i)) + b.coeff(static_cast<int>(i));
    r.trim();
    return r;
  }
  friend RationalPoly operator-(const RationalPoly& a, const RationalPoly& b) {
    check_same_var(a, b, "sub");
    return a + (-b);
  }
  friend RationalPoly operator*(const RationalPoly& a, const RationalPoly& b) {
    check_same_var(a, b, "mul");
    if (a.is_zero() || b.is_zero()) return zero(a.var_);
    RationalPoly r(a.var_);
    r.c_.assign(a.c_.size() + b.c_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
    r.trim();
    return r;
  }
  friend RationalPoly operator*(const RationalPoly& a, const Rational& s) {
    RationalPoly r(a);
    for (auto& c : r.c_) c *= s;
    r.trim();
    return r;
  }
  friend RationalPoly operator*(const Rational& s, const RationalPoly& a) { return a * s; }
  friend RationalPoly operator/(const RationalPoly& a, const Rational& s) {
    return a * s.inverse();
  }

  /// Exact Euclidean division: a = q*b + r with deg(r) < deg(b).
  /// Throws division_by_zero when b == 0.
  friend std::pair<RationalPoly, RationalPoly> divmod(const RationalPoly& a,
                                                      const RationalPoly& b) {
    check_same_var(a, b, "divmod");
    if (b.is_zero()) throw division_by_zero("divmod: zero divisor polynomial");
    RationalPoly q(a.var_), r(a);
    q.c_.assign(a.c_.size(), Rational(0));
    const Rational lead_inv = b.leading().inverse();
    while (!r.is_zero() && r.degree() >= b.degree()) {
      int shift = r.degree() - b.degree();
      Rational f = r.leading() * lead_inv;
      q.c_[static_cast<std::size_t>(shift)] = f;
      for (int i = 0; i <= b.degree(); ++i)
        r.c_[static_cast<std::size_t>(i + shift)] -= f * b.c_[static_cast<std::size_t>(i)];
      r.trim();
    }
    q.trim();
    return {q, r};
  }

  RationalPoly derivative() const {
    RationalPoly r(var_);
    if (degree() < 1) return r;
    r.c_.resize(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i)
      r.c_[i - 1] = c_[i] * Rational(static_cast<long>(i));
    r.trim();
    return r;
  }

  Rational operator()(const Rational& x) const {
    Rational acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }
  double operator()(double x) const {
    double acc = 0.0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + it->to_double();
    return acc;
  }

  /// p(a*x + b), reported in variable `out_var`.
  RationalPoly compose_affine(const Rational& a, const Rational& b, Var out_var) const {
    RationalPoly lin(out_var, {b, a});
    RationalPoly acc = zero(out_var);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it)
      acc = acc * lin + constant(out_var, *it);
    return acc;
  }

  RationalPoly with_var(Var var) const {
    RationalPoly r(*this);
    r.var_ = var;
    return r;
  }

  /// Divides out x^a where a is the lowest power with nonzero coefficient.
  /// Returns the stripped power; no-op on the zero polynomial.
  unsigned strip_monomial() {
    if (is_zero()) return 0;
    std::size_t a = 0;
    while (a < c_.size() && c_[a].is_zero()) ++a;
    c_.erase(c_.begin(), c_.begin() + static_cast<long>(a));
    return static_cast<unsigned>(a);
  }

  /// Content: the positive rational c such that p/c has coprime integer
  /// coefficients; sign chosen so p/content() has positive leading coefficient.
  Rational content() const {
    if (is_zero()) return Rational(1);
    mpz_class g(0), l(1);
    for (const auto& c : c_) {
      if (c.is_zero()) continue;
      mpz_class num = c.numerator();
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), num.get_mpz_t());
      mpz_class den = c.denominator();
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), den.get_mpz_t());
    }
    Rational content(mpz_class(g), l);
    return leading().sign() < 0 ? -content : content;
  }

  /// p / content(): coprime integer coefficients, positive leading coefficient.
  RationalPoly primitive_part() const {
    if (is_zero()) return *this;
    return *this / content();
  }

  std::string to_string() const {
    if (is_zero()) return "0";
    std::string out;
    const char* x = var_name(var_);
    for (int i = degree(); i >= 0; --i) {
      const Rational& c = c_[static_cast<std::size_t>(i)];
      if (c.is_zero()) continue;
      if (!out.empty()) out += c.sign() > 0 ? " + " : " - ";
      else if (c.sign() < 0) out += "-";
      std::string mag = c.abs().to_string();
      if (i == 0) out += mag;
      else {
        if (mag != "1") out += mag + "*";
        out += x;
        if (i > 1) out += "^" + std::to_string(i);
      }
    }
    return out;
  }

private:
  static void check_same_var(const RationalPoly& a, const RationalPoly& b, const char* op) {
    if (a.var_ != b.var_)
      throw contract_error(std::string("RationalPoly ") + op + ": variable tag mismatch (" +
                           var_name(a.var_) + " vs " + var_name(b.var_) + ")");
  }
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }

  std::vector<Rational> c_;
  Var var_;
};

inline std::ostream& operator<<(std::ostream& os, const RationalPoly& p) {
  return os << p.to_string();
}

/// Monic gcd via Euclid; gcd(p, 0) = monic p.
inline RationalPoly poly_gcd(RationalPoly a, RationalPoly b) {
  while (!b.is_zero()) {
    auto [q, r] = divmod(a, b);
    a = std::move(b);
    b = r.is_zero() ? r : r.primitive_part();  // rescaling keeps coefficients small
  }
  if (!a.is_zero()) a = a / a.leading();
  return a;
}

/// p with repeated factors removed: p / gcd(p, p').
inline RationalPoly squarefree_part(const RationalPoly& p) {
  if (p.degree() < 1) return p;
  RationalPoly g = poly_gcd(p, p.derivative());
  if (g.degree() < 1) return p;
  return divmod(p, g).first;
}

} // namespace heunspec
