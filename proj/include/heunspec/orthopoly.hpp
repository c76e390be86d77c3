#pragma once

#include <string>
#include <utility>
#include <vector>

#include "heunspec/heun.hpp"

namespace heunspec {
namespace orthopoly {

/// The finite monic orthogonal family P_0..P_m in the spectral variable,
///   P_{j+1} = (z - j(j-1)a2 - j b1) P_j + j(n+1-j) b2 ((j-1)a1 + b0) P_{j-1},
/// P_{-1} = 0, P_0 = 1. deg P_j = j, monic.
struct OrthoSequence {
  GcheParams params;
  int degree_n = 0;
  std::vector<RationalPoly> polys;  // polys[j] = P_j, j = 0..m

  const RationalPoly& at(int j) const {
    static const RationalPoly kZero(Var::zeta);
    return j < 0 ? kZero : polys.at(static_cast<std::size_t>(j));
  }
  int max_index() const { return static_cast<int>(polys.size()) - 1; }
};

inline OrthoSequence finite_sequence(const GcheParams& p, int n, int m) {
  if (n < 0 || m < 0) throw contract_error("finite_sequence: n, m must be >= 0");
  OrthoSequence seq{p, n, {}};
  seq.polys.push_back(RationalPoly::constant(Var::zeta, Rational(1)));
  RationalPoly prev = RationalPoly::zero(Var::zeta);
  for (int j = 0; j < m; ++j) {
    RationalPoly lin(Var::zeta, {-(Rational(j) * (Rational(j - 1) * p.alpha2 + p.beta1)),
                                 Rational(1)});
    Rational low = Rational(j) * Rational(n + 1 - j) * p.beta2 *
                   (Rational(j - 1) * p.alpha1 + p.beta0);
    RationalPoly next = lin * seq.polys.back() + low * prev;
    prev = seq.polys.back();
    seq.polys.push_back(std::move(next));
  }
  return seq;
}

/// lambda_{k+1} = k(k-n-1) b2 ((k-1)a1 + b0): the subtracted recurrence
/// coefficient, also the squared-norm ratio G_k / G_{k-1}.
inline Rational lambda_factor(const GcheParams& p, int n, int k) {
  return Rational(k) * Rational(k - n - 1) * p.beta2 *
         (Rational(k - 1) * p.alpha1 + p.beta0);
}

/// h_k = prod_{i=1..k} lambda_{i+1} = k! (b2 a1)^k (-n)_k (b0/a1)_k.
inline Rational norm_product(const GcheParams& p, int n, int k) {
  Rational h(1);
  for (int i = 1; i <= k; ++i) h *= lambda_factor(p, n, i);
  return h;
}

/// Scale factors s_j with C_j = s_j P_j(epsilon0):
/// s_j = 1 / (j! a1^j (b0/a1)_j). Undefined when a1 = 0 or a pivot
/// b0 + i*a1 vanishes (bridge_undefined; fall back to the C recurrence).
inline std::vector<Rational> coefficient_bridge(const OrthoSequence& seq) {
  const GcheParams& p = seq.params;
  if (p.alpha1.is_zero())
    throw bridge_undefined("coefficient_bridge: alpha1 = 0");
  std::vector<Rational> s;
  Rational denom(1);
  for (int j = 0; j <= seq.max_index(); ++j) {
    if (j > 0) {
      Rational factor = Rational(j) * (p.beta0 + Rational(j - 1) * p.alpha1);
      if (factor.is_zero())
        throw bridge_undefined("coefficient_bridge: pivot j(beta0+(j-1)alpha1) vanishes at j=" +
                               std::to_string(j));
      denom *= factor;
    }
    s.push_back(denom.inverse());
  }
  return s;
}

/// Christoffel-Darboux identity at distinct points:
///   lhs = sum_{j<=m} P_j(z1) P_j(z2) / h_j,
///   rhs = (P_{m+1}(z1) P_m(z2) - P_m(z1) P_{m+1}(z2)) / (h_m (z1 - z2)).
/// Both sides exact; equal for 1 <= m <= n-1 (m = 0 degenerates to 1 = 1).
inline std::pair<Rational, Rational> christoffel_darboux(const OrthoSequence& seq,
                                                         const Rational& z1,
                                                         const Rational& z2, int m) {
  if (z1 == z2) throw contract_error("christoffel_darboux: needs z1 != z2 (use the confluent form)");
  if (m < 0 || m + 1 > seq.max_index())
    throw contract_error("christoffel_darboux: m out of range");
  const GcheParams& p = seq.params;
  Rational lhs(0), h(1);
  for (int j = 0; j <= m; ++j) {
    if (j > 0) {
      h *= lambda_factor(p, seq.degree_n, j);
      if (h.is_zero()) throw contract_error("christoffel_darboux: vanishing normalizer (m too large)");
    }
    lhs += seq.at(j)(z1) * seq.at(j)(z2) / h;
  }
  Rational rhs = (seq.at(m + 1)(z1) * seq.at(m)(z2) - seq.at(m)(z1) * seq.at(m + 1)(z2)) /
                 (h * (z1 - z2));
  return {lhs, rhs};
}

/// Confluent Christoffel-Darboux (z2 -> z1): rhs uses the symbolic derivative.
inline std::pair<Rational, Rational> christoffel_darboux_confluent(const OrthoSequence& seq,
                                                                   const Rational& z, int m) {
  if (m < 0 || m + 1 > seq.max_index())
    throw contract_error("christoffel_darboux_confluent: m out of range");
  const GcheParams& p = seq.params;
  Rational lhs(0), h(1);
  for (int j = 0; j <= m; ++j) {
    if (j > 0) {
      h *= lambda_factor(p, seq.degree_n, j);
      if (h.is_zero()) throw contract_error("christoffel_darboux_confluent: vanishing normalizer");
    }
    Rational v = seq.at(j)(z);
    lhs += v * v / h;
  }
  RationalPoly dp1 = seq.at(m + 1).derivative(), dp0 = seq.at(m).derivative();
  Rational rhs = (dp1(z) * seq.at(m)(z) - dp0(z) * seq.at(m + 1)(z)) / h;
  return {lhs, rhs};
}

/// Squared norms G_0..G_m, computed by the closed form
/// k! (b2 a1)^k (-n)_k (b0/a1)_k and cross-checked against the two-term
/// recursion G_k = k(k-1-n) b2 ((k-1)a1+b0) G_{k-1}; G_k = 0 for k >= n+1.
struct NormTable {
  std::vector<Rational> values;
};

inline NormTable norms(const GcheParams& p, int n, int m) {
  if (m < 0) throw contract_error("norms: m must be >= 0");
  if (p.alpha1.is_zero()) throw contract_error("norms: closed form needs alpha1 != 0");
  NormTable t;
  Rational rec(1);
  for (int k = 0; k <= m; ++k) {
    Rational closed = factorial(static_cast<unsigned>(k)) *
                      (p.beta2 * p.alpha1).pow(static_cast<unsigned>(k)) *
                      pochhammer(Rational(-n), static_cast<unsigned>(k)) *
                      pochhammer(p.beta0 / p.alpha1, static_cast<unsigned>(k));
    if (k > 0) rec *= lambda_factor(p, n, k);
    if (!(closed == rec))
      throw std::logic_error("norms: closed form and recursion disagree");
    t.values.push_back(closed);
  }
  return t;
}

/// Moments mu_0..mu_order of the spectral weight, from the triangular system
/// L[P_j] = delta_{j0} (j <= n) and L[z^{t-n} P_n] = G_n delta_{t,2n}
/// (n < t <= 2n). Orders beyond 2n are not pinned by the finite family.
struct MomentTable {
  std::vector<Rational> values;
};

inline MomentTable moments(const GcheParams& p, int n, int order) {
  if (n < 0 || order < 0) throw contract_error("moments: n, order must be >= 0");
  if (order > 2 * n)
    throw underdetermined_error("moments: order " + std::to_string(order) +
                                " exceeds 2n = " + std::to_string(2 * n));
  OrthoSequence seq = finite_sequence(p, n, std::min(order, n));
  MomentTable t;
  t.values.push_back(Rational(1));  // mu_0 (normalization)
  for (int j = 1; j <= order; ++j) {
    if (j <= n) {
      // mu_j = -sum_{i<j} a_{j,i} mu_i  from L[P_j] = 0 (monic)
      const RationalPoly& pj = seq.at(j);
      Rational acc(0);
      for (int i = 0; i < j; ++i) acc += pj.coeff(i) * t.values[static_cast<std::size_t>(i)];
      t.values.push_back(-acc);
    } else {
      // L[z^{j-n} P_n] = G_n delta_{j-n,n}
      int shift = j - n;
      const RationalPoly& pn = seq.at(n);
      Rational rhs = (shift == n) ? norm_product(p, n, n) : Rational(0);
      Rational acc(0);
      for (int i = 0; i < n; ++i)
        acc += pn.coeff(i) * t.values[static_cast<std::size_t>(i + shift)];
      t.values.push_back(rhs - acc);
    }
  }
  return t;
}

/// The moment functional L[p] = sum_k coeff_k mu_k.
inline Rational apply_moments(const MomentTable& t, const RationalPoly& q) {
  if (q.degree() + 1 > static_cast<int>(t.values.size()))
    throw underdetermined_error("apply_moments: polynomial degree exceeds available moments");
  Rational acc(0);
  for (int i = 0; i <= q.degree(); ++i) acc += q.coeff(i) * t.values[static_cast<std::size_t>(i)];
  return acc;
}

/// One evaluated orthogonality identity: lhs from the moment functional,
/// rhs from the closed form.
struct IdentityCheck {
  std::string name;
  Rational lhs, rhs;
  bool pass = false;
};

struct WeightedIdentityReport {
  std::vector<IdentityCheck> checks;
  bool all_pass = true;

  void add(std::string name, Rational lhs, Rational rhs) {
    bool ok = lhs == rhs;
    all_pass = all_pass && ok;
    checks.push_back({std::move(name), std::move(lhs), std::move(rhs), ok});
  }
};

/// Evaluates the first/second-moment orthogonality identities for index k:
/// L[P_k] = 0, L[P_j P_k] = 0 (j < k), L[P_k^2] = G_k, L[z P_k P_{k-1}] = G_k,
/// L[z P_k^2] = k((k-1)a2+b1) G_k, and the z^2 P_k^2 formula. Requires
/// moments to order 2k+2 (so k <= n-1).
inline WeightedIdentityReport weighted_identities(const GcheParams& p, int n, int k) {
  if (k < 0 || k > n) throw contract_error("weighted_identities: need 0 <= k <= n");
  MomentTable mu = moments(p, n, std::min(2 * k + 2, 2 * n));
  OrthoSequence seq = finite_sequence(p, n, k + 1);
  const RationalPoly z = RationalPoly::monomial(Var::zeta, Rational(1), 1);
  WeightedIdentityReport rep;
  Rational gk = norm_product(p, n, k);
  if (k >= 1) rep.add("L[P_k] = 0", apply_moments(mu, seq.at(k)), Rational(0));
  for (int j = 0; j < k; ++j)
    if (j + k <= 2 * n)
      rep.add("L[P_" + std::to_string(j) + " P_k] = 0",
              apply_moments(mu, seq.at(j) * seq.at(k)), Rational(0));
  rep.add("L[P_k^2] = G_k", apply_moments(mu, seq.at(k) * seq.at(k)), gk);
  if (k >= 1)
    rep.add("L[z P_k P_{k-1}] = G_k", apply_moments(mu, z * seq.at(k) * seq.at(k - 1)), gk);
  if (2 * k + 1 <= 2 * n)
    rep.add("L[z P_k^2] = k((k-1)a2+b1) G_k",
            apply_moments(mu, z * seq.at(k) * seq.at(k)),
            Rational(k) * (Rational(k - 1) * p.alpha2 + p.beta1) * gk);
  if (2 * k + 2 <= 2 * n) {
    Rational bracket = Rational(k + 1) * p.beta2 * Rational(k - n) * (p.beta0 + Rational(k) * p.alpha1) +
                       lambda_factor(p, n, k) +
                       (Rational(k) * (Rational(k - 1) * p.alpha2 + p.beta1)).pow(2);
    rep.add("L[z^2 P_k^2] = [..] G_k",
            apply_moments(mu, z * z * seq.at(k) * seq.at(k)), bracket * gk);
  }
  return rep;
}

/// The factored-out quotient family Q_0..Q_m:
///   Q_k = (z - (k+n)((k+n-1)a2 + b1)) Q_{k-1}
///         - (k-1)(k+n) b2 ((k+n-1)a1 + b0) Q_{k-2}.
struct QuotientSequence {
  GcheParams params;
  int degree_n = 0;
  std::vector<RationalPoly> polys;

  const RationalPoly& at(int j) const {
    static const RationalPoly kZero(Var::zeta);
    return j < 0 ? kZero : polys.at(static_cast<std::size_t>(j));
  }
  int max_index() const { return static_cast<int>(polys.size()) - 1; }
};

inline QuotientSequence quotient_sequence(const GcheParams& p, int n, int m) {
  if (n < 0 || m < 0) throw contract_error("quotient_sequence: n, m must be >= 0");
  QuotientSequence seq{p, n, {}};
  seq.polys.push_back(RationalPoly::constant(Var::zeta, Rational(1)));
  RationalPoly prev = RationalPoly::zero(Var::zeta);
  for (int k = 1; k <= m; ++k) {
    RationalPoly lin(Var::zeta,
                     {-(Rational(k + n) * (Rational(k + n - 1) * p.alpha2 + p.beta1)), Rational(1)});
    Rational low = Rational(k - 1) * Rational(k + n) * p.beta2 *
                   (Rational(k + n - 1) * p.alpha1 + p.beta0);
    RationalPoly next = lin * seq.polys.back() - low * prev;
    prev = seq.polys.back();
    seq.polys.push_back(std::move(next));
  }
  return seq;
}

/// Critical polynomial P_{n+1} and the quotient family, with the exact
/// division P_{k+n+1} = Q_k P_{n+1} verified for 0 <= k <= m-n-1.
/// A nonzero remainder raises factorization_error.
struct Factorization {
  RationalPoly critical;
  QuotientSequence quotients;
  bool ok = false;
};

inline Factorization factorize(const GcheParams& p, int n, int m) {
  if (m < n + 1) throw contract_error("factorize: need m >= n+1");
  OrthoSequence seq = finite_sequence(p, n, m);
  Factorization f{seq.at(n + 1), quotient_sequence(p, n, m - n - 1), false};
  for (int k = 0; k <= m - n - 1; ++k) {
    auto [q, r] = divmod(seq.at(k + n + 1), f.critical);
    if (!r.is_zero())
      throw factorization_error("factorize: nonzero remainder dividing P_" +
                                std::to_string(k + n + 1) + " by the critical polynomial");
    if (!(q == f.quotients.at(k)))
      throw factorization_error("factorize: quotient mismatch with the Q recurrence at k=" +
                                std::to_string(k));
  }
  f.ok = true;
  return f;
}

/// lambda^Q_{k+1} = k(k+n+1) b2 ((k+n)a1 + b0); products give the Q norms
/// G^Q_k = k!(n+2)_k (b2 a1)^k (n+1+b0/a1)_k.
inline Rational quotient_lambda(const GcheParams& p, int n, int k) {
  return Rational(k) * Rational(k + n + 1) * p.beta2 * (Rational(k + n) * p.alpha1 + p.beta0);
}

/// Verifies the quotient-family norms (closed form vs recursion) and its
/// Christoffel-Darboux identities at the given sample points.
inline WeightedIdentityReport quotient_norms_and_cd(const GcheParams& p, int n, int m,
                                                    const Rational& z1, const Rational& z2) {
  if (m < 1) throw contract_error("quotient_norms_and_cd: need m >= 1");
  if (p.alpha1.is_zero())
    throw contract_error("quotient_norms_and_cd: closed form needs alpha1 != 0");
  WeightedIdentityReport rep;
  Rational rec(1);
  std::vector<Rational> h{Rational(1)};
  for (int k = 0; k <= m; ++k) {
    Rational closed = factorial(static_cast<unsigned>(k)) *
                      pochhammer(Rational(n + 2), static_cast<unsigned>(k)) *
                      (p.beta2 * p.alpha1).pow(static_cast<unsigned>(k)) *
                      pochhammer(Rational(n + 1) + p.beta0 / p.alpha1, static_cast<unsigned>(k));
    if (k > 0) {
      rec *= quotient_lambda(p, n, k);
      h.push_back(rec);
    }
    rep.add("G^Q_" + std::to_string(k) + " closed = recursion", closed, rec);
  }
  QuotientSequence q = quotient_sequence(p, n, m);
  for (int k = 1; k < m; ++k) {
    if (h[static_cast<std::size_t>(k)].is_zero()) continue;
    Rational lhs(0);
    for (int j = 0; j <= k; ++j)
      lhs += q.at(j)(z1) * q.at(j)(z2) / h[static_cast<std::size_t>(j)];
    if (z1 == z2) continue;
    Rational rhs = (q.at(k + 1)(z1) * q.at(k)(z2) - q.at(k)(z1) * q.at(k + 1)(z2)) /
                   (h[static_cast<std::size_t>(k)] * (z1 - z2));
    rep.add("Q-CD two-point k=" + std::to_string(k), lhs, rhs);
    Rational lhs2(0);
    for (int j = 0; j <= k; ++j) {
      Rational v = q.at(j)(z1);
      lhs2 += v * v / h[static_cast<std::size_t>(j)];
    }
    Rational rhs2 = (q.at(k + 1).derivative()(z1) * q.at(k)(z1) -
                     q.at(k).derivative()(z1) * q.at(k + 1)(z1)) / h[static_cast<std::size_t>(k)];
    rep.add("Q-CD confluent k=" + std::to_string(k), lhs2, rhs2);
  }
  return rep;
}

} // namespace orthopoly
} // namespace heunspec
