#pragma once

#include <span>
#include <vector>

#include "heunspec/roots.hpp"

namespace heunspec {

/// Coefficients of the generalized confluent Heun equation
///   r(alpha2 r + alpha1) f'' + (beta2 r^2 + beta1 r + beta0) f'
///     - (epsilon1 r + epsilon0) f = 0.
struct GcheParams {
  Rational alpha2, alpha1, beta2, beta1, beta0;

  GcheParams(Rational a2, Rational a1, Rational b2, Rational b1, Rational b0)
      : alpha2(std::move(a2)), alpha1(std::move(a1)),
        beta2(std::move(b2)), beta1(std::move(b1)), beta0(std::move(b0)) {
    if (alpha2.is_zero() && alpha1.is_zero())
      throw contract_error("GcheParams: alpha2 and alpha1 must not both vanish");
  }
};

namespace heun {

/// epsilon1 = n*beta2, the linear-coefficient constraint for a degree-n
/// polynomial solution.
inline Rational required_epsilon1(const GcheParams& p, int n) {
  if (n < 0) throw contract_error("required_epsilon1: n must be >= 0");
  return Rational(n) * p.beta2;
}

/// Diagonal entries of the (n+1)x(n+1) Jacobi matrix whose determinant is the
/// sufficient condition. diag[j] = S_j is linear in epsilon0 (tagged zeta);
/// super[j-1] = T_j and sub[j-1] = gamma_j for j = 1..n.
struct TridiagonalSystem {
  int size = 0;
  std::vector<RationalPoly> diag;
  std::vector<Rational> super;
  std::vector<Rational> sub;
};

inline TridiagonalSystem build_tridiagonal(const GcheParams& p, int n) {
  if (n < 0) throw contract_error("build_tridiagonal: n must be >= 0");
  TridiagonalSystem t;
  t.size = n + 1;
  for (int j = 0; j <= n; ++j) {
    Rational sj = Rational(j) * (Rational(j - 1) * p.alpha2 + p.beta1);
    t.diag.emplace_back(Var::zeta, std::vector<Rational>{sj, Rational(-1)});
  }
  for (int j = 1; j <= n; ++j) {
    t.super.push_back(Rational(j) * (Rational(j - 1) * p.alpha1 + p.beta0));
    t.sub.push_back(-Rational(n - j + 1) * p.beta2);
  }
  return t;
}

/// Leading principal minors Delta_{-1}..Delta_{n+1} of the Jacobi matrix as
/// exact polynomials in epsilon0. Delta_{j+1} = S_j Delta_j - T_j gamma_j
/// Delta_{j-1}; Delta_j has degree j with leading coefficient (-1)^j.
struct MinorSequence {
  std::vector<RationalPoly> v;  // v[i] = Delta_{i-1}

  const RationalPoly& at(int j) const { return v.at(static_cast<std::size_t>(j + 1)); }
  int max_index() const { return static_cast<int>(v.size()) - 2; }
};

inline MinorSequence determinant_sequence(const GcheParams& p, int n) {
  if (n < 0) throw contract_error("determinant_sequence: n must be >= 0");
  MinorSequence seq;
  seq.v.push_back(RationalPoly::zero(Var::zeta));                    // Delta_{-1}
  seq.v.push_back(RationalPoly::constant(Var::zeta, Rational(1)));   // Delta_0
  for (int j = 0; j <= n; ++j) {
    Rational sj = Rational(j) * (Rational(j - 1) * p.alpha2 + p.beta1);
    RationalPoly S(Var::zeta, {sj, Rational(-1)});
    Rational tj = Rational(j) * (Rational(j - 1) * p.alpha1 + p.beta0);
    Rational gj = -Rational(n - j + 1) * p.beta2;
    seq.v.push_back(S * seq.at(j) - (tj * gj) * seq.at(j - 1));
  }
  return seq;
}

/// Exact sign test: T_j * gamma_j > 0 for all j = 1..n (the regime in which
/// the characteristic roots are guaranteed real and simple).
inline bool offdiagonal_products_positive(const GcheParams& p, int n) {
  for (int j = 1; j <= n; ++j) {
    Rational tj = Rational(j) * (Rational(j - 1) * p.alpha1 + p.beta0);
    Rational gj = -Rational(n - j + 1) * p.beta2;
    if ((tj * gj).sign() <= 0) return false;
  }
  return true;
}

struct SolvabilityCondition {
  int degree_n = 0;
  Rational epsilon1;
  std::vector<RootBracket> epsilon0_roots;  // ascending
  bool full_count_guaranteed = false;       // T_j gamma_j > 0 for all j
};

/// Roots of Delta_{n+1}(epsilon0), isolated and refined to tol. When the
/// off-diagonal products are all positive the count must equal n+1 (all
/// simple); a shortfall raises solvability_error.
inline SolvabilityCondition solve_epsilon0(const GcheParams& p, int n, const Rational& tol) {
  if (n < 0) throw contract_error("solve_epsilon0: n must be >= 0");
  if (tol.sign() <= 0) throw contract_error("solve_epsilon0: tol must be positive");
  SolvabilityCondition sc;
  sc.degree_n = n;
  sc.epsilon1 = required_epsilon1(p, n);
  sc.full_count_guaranteed = offdiagonal_products_positive(p, n);
  const RationalPoly delta = determinant_sequence(p, n).at(n + 1);
  sc.epsilon0_roots = isolate_real_roots(delta, tol);
  if (sc.full_count_guaranteed &&
      static_cast<int>(sc.epsilon0_roots.size()) != n + 1)
    throw solvability_error("solve_epsilon0: expected " + std::to_string(n + 1) +
                            " simple real roots, found " +
                            std::to_string(sc.epsilon0_roots.size()));
  return sc;
}

/// Degree-n polynomial solution data at one epsilon0 root. overflow is the
/// implied C_{n+1} from the j = n recurrence row; it vanishes exactly at an
/// exact root and to refinement accuracy otherwise.
struct PolySolution {
  int degree_n = 0;
  int root_index = 0;  // 1-based, ascending epsilon0 order
  Rational epsilon0;
  std::vector<Rational> coeffs;  // C_0..C_n
  Rational overflow;             // implied C_{n+1}

  RationalPoly as_poly() const { return RationalPoly(Var::r, coeffs); }
};

/// Runs the three-term coefficient recurrence
///   (j+1)(j a1 + b0) C_{j+1} + (j(j-1) a2 + j b1 - e0) C_j
///     + ((j-1) b2 - n b2) C_{j-1} = 0,      C_{-1} = 0, C_0 = 1,
/// for j = 0..n. Throws singular_pivot_error when a pivot vanishes.
inline PolySolution polynomial_solution(const GcheParams& p, int n,
                                        const Rational& epsilon0, int root_index = 0) {
  if (n < 0) throw contract_error("polynomial_solution: n must be >= 0");
  PolySolution sol;
  sol.degree_n = n;
  sol.root_index = root_index;
  sol.epsilon0 = epsilon0;
  std::vector<Rational> c(static_cast<std::size_t>(n) + 2, Rational(0));
  c[0] = Rational(1);
  const Rational eps1 = required_epsilon1(p, n);
  for (int j = 0; j <= n; ++j) {
    Rational pivot = Rational(j + 1) * (Rational(j) * p.alpha1 + p.beta0);
    if (pivot.is_zero())
      throw singular_pivot_error(j, "polynomial_solution: recurrence pivot (j+1)(j*alpha1+beta0) vanishes at j=" +
                                        std::to_string(j));
    Rational mid = Rational(j) * (Rational(j - 1) * p.alpha2 + p.beta1) - epsilon0;
    Rational low = Rational(j - 1) * p.beta2 - eps1;
    Rational prev = (j == 0) ? Rational(0) : c[static_cast<std::size_t>(j - 1)];
    c[static_cast<std::size_t>(j + 1)] =
        -(mid * c[static_cast<std::size_t>(j)] + low * prev) / pivot;
  }
  sol.overflow = c.back();
  c.pop_back();
  sol.coeffs = std::move(c);
  return sol;
}

/// Exact residual polynomial r(a2 r + a1) f'' + (b2 r^2 + b1 r + b0) f'
/// - (e1 r + e0) f in Q[r] for a candidate solution.
inline RationalPoly residual_poly(const GcheParams& p, const PolySolution& sol) {
  RationalPoly f = sol.as_poly();
  RationalPoly df = f.derivative(), ddf = df.derivative();
  RationalPoly lead(Var::r, {Rational(0), p.alpha1, p.alpha2});
  RationalPoly first(Var::r, {p.beta0, p.beta1, p.beta2});
  const Rational eps1 = required_epsilon1(p, sol.degree_n);
  RationalPoly last(Var::r, {sol.epsilon0, eps1});
  return lead * ddf + first * df - last * f;
}

/// Sup of |residual| over the sample points (exact evaluation, then one
/// rounding to double).
inline double ode_residual(const GcheParams& p, const PolySolution& sol,
                           std::span<const Rational> sample_points) {
  RationalPoly res = residual_poly(p, sol);
  Rational sup(0);
  for (const auto& x : sample_points) sup = std::max(sup, res(x).abs());
  return sup.to_double();
}

} // namespace heun
} // namespace heunspec
