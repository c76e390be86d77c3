#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "heunspec/polynomial.hpp"

namespace heunspec {

/// Isolating bracket for one distinct real root. For roots recognized as
/// exact rationals lo == hi == approx and exact is set.
struct RootBracket {
  Rational lo, hi, approx;
  bool exact = false;

  double width() const { return (hi - lo).to_double(); }
};

/// Sturm chain of p (primitive-rescaled remainders; signs preserved).
inline std::vector<RationalPoly> sturm_chain(const RationalPoly& p) {
  std::vector<RationalPoly> chain;
  if (p.is_zero()) return chain;
  chain.push_back(p.primitive_part());
  RationalPoly d = p.derivative();
  if (d.is_zero()) return chain;
  chain.push_back(d.primitive_part());
  while (true) {
    auto [q, r] = divmod(chain[chain.size() - 2], chain.back());
    if (r.is_zero()) break;
    RationalPoly next = -r;
    // positive rescaling only, so sign variations are unchanged
    next = next / next.content().abs();
    chain.push_back(std::move(next));
  }
  return chain;
}

namespace detail {

inline int sign_variations(const std::vector<RationalPoly>& chain, const Rational& x) {
  int var = 0, prev = 0;
  for (const auto& q : chain) {
    int s = q(x).sign();
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++var;
    prev = s;
  }
  return var;
}

/// Cauchy bound: every real root lies in (-B, B).
inline Rational cauchy_bound(const RationalPoly& p) {
  Rational m(0);
  const Rational lead = p.leading().abs();
  for (int i = 0; i < p.degree(); ++i) m = std::max(m, p.coeff(i).abs() / lead);
  return m + 1;
}

inline Rational rational_floor(const Rational& x) {
  mpz_class q;
  mpz_class num = x.numerator(), den = x.denominator();
  mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return Rational(mpq_class(q));
}

/// The rational with smallest denominator in [lo, hi]
/// (continued-fraction walk).
inline Rational simplest_rational_in(const Rational& lo, const Rational& hi) {
  if (lo > hi) return simplest_rational_in(hi, lo);
  if (lo.sign() <= 0 && hi.sign() >= 0) return Rational(0);
  if (hi.sign() < 0) return -simplest_rational_in(-hi, -lo);
  // 0 < lo <= hi
  if (lo.is_integer()) return lo;
  Rational fl = rational_floor(lo);
  if (fl + 1 <= hi) return fl + 1;
  return fl + (simplest_rational_in((hi - fl).inverse(), (lo - fl).inverse())).inverse();
}

} // namespace detail

/// Number of distinct real roots of p in the half-open interval (a, b].
inline int count_real_roots(const RationalPoly& p, const Rational& a, const Rational& b) {
  if (p.is_zero()) throw contract_error("count_real_roots: zero polynomial");
  if (a >= b) return 0;
  auto chain = sturm_chain(squarefree_part(p));
  return detail::sign_variations(chain, a) - detail::sign_variations(chain, b);
}

/// Isolates and refines all distinct real roots of p. Deterministic: Sturm
/// isolation over (-B, B] followed by midpoint bisection until the bracket
/// width is <= tol. A bracket that collapses onto a rational root (degree-1
/// factor, midpoint hit, or simplest-rational snap) is returned exact.
inline std::vector<RootBracket> isolate_real_roots(const RationalPoly& p, const Rational& tol) {
  if (p.is_zero()) throw contract_error("isolate_real_roots: zero polynomial");
  if (tol.sign() <= 0) throw contract_error("isolate_real_roots: tol must be positive");

  std::vector<Rational> exact_roots;
  RationalPoly f = squarefree_part(p).primitive_part();

  // peel off rational roots found at subdivision midpoints by deflation
  auto deflate_at = [&](const Rational& root) {
    exact_roots.push_back(root);
    RationalPoly lin(f.var(), {-root, Rational(1)});
    f = divmod(f, lin).first;
  };

  while (f.degree() == 1) {
    deflate_at(-f.coeff(0) / f.coeff(1));
  }

  std::vector<std::pair<Rational, Rational>> isolating;
  if (f.degree() >= 2) {
    auto chain = sturm_chain(f);
    Rational bound = detail::cauchy_bound(f);
    while (f(bound).is_zero() || f(-bound).is_zero()) bound += 1;

    std::vector<std::pair<Rational, Rational>> work{{-bound, bound}};
    bool deflated = false;
    while (!work.empty()) {
      auto [a, b] = work.back();
      work.pop_back();
      int count = detail::sign_variations(chain, a) - detail::sign_variations(chain, b);
      if (count == 0) continue;
      if (count == 1) {
        isolating.emplace_back(a, b);
        continue;
      }
      Rational mid = (a + b) / 2;
      if (f(mid).is_zero()) {
        deflate_at(mid);
        deflated = true;
        break;
      }
      work.emplace_back(a, mid);
      work.emplace_back(mid, b);
    }
    if (deflated) {
      // chain is stale after deflation; redo isolation on the quotient
      auto rest = isolate_real_roots(f, tol);
      std::vector<RootBracket> out;
      out.reserve(rest.size() + exact_roots.size());
      for (const auto& r : exact_roots)
        out.push_back({r, r, r, true});
      for (auto& r : rest) out.push_back(std::move(r));
      std::sort(out.begin(), out.end(),
                [](const RootBracket& x, const RootBracket& y) { return x.approx < y.approx; });
      return out;
    }
  }

  std::vector<RootBracket> out;
  for (const auto& r : exact_roots) out.push_back({r, r, r, true});

  for (auto& [a, b] : isolating) {
    Rational lo = a, hi = b;
    int slo = f(lo).sign();
    std::optional<Rational> hit;
    while (hi - lo > tol) {
      Rational mid = (lo + hi) / 2;
      int sm = f(mid).sign();
      if (sm == 0) {
        hit = mid;
        break;
      }
      if (sm == slo) lo = mid; else hi = mid;
    }
    if (!hit) {
      // cheap exactness recovery: the simplest rational in the bracket
      Rational cand = detail::simplest_rational_in(lo, hi);
      if (f(cand).is_zero()) hit = cand;
    }
    if (hit)
      out.push_back({*hit, *hit, *hit, true});
    else
      out.push_back({lo, hi, (lo + hi) / 2, false});
  }

  std::sort(out.begin(), out.end(),
            [](const RootBracket& x, const RootBracket& y) { return x.approx < y.approx; });
  return out;
}

} // namespace heunspec
