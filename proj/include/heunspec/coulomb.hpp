#pragma once

#include <cmath>
#include <limits>
#include <vector>

#include "heunspec/heun.hpp"
#include "heunspec/oracle.hpp"

namespace heunspec {
namespace coulomb {

/// d-dimensional softcore Coulomb problem in scaled units
/// (potential -v/(r+1), k = d + 2*ell), seeking the degree-n polynomial
/// factor of the wave function.
struct CoulombProblem {
  int dimension;
  int ell;
  int degree_n;

  CoulombProblem(int d, int l, int n) : dimension(d), ell(l), degree_n(n) {
    if (d <= 1) throw contract_error("CoulombProblem: dimension must be > 1");
    if (l < 0) throw contract_error("CoulombProblem: angular momentum must be >= 0");
    if (n < 0) throw contract_error("CoulombProblem: degree must be >= 0");
  }

  int k() const { return dimension + 2 * ell; }
  /// Quantization: v = (2n + k - 1) * eroot.
  Rational coupling(const Rational& eroot) const {
    return Rational(2 * degree_n + k() - 1) * eroot;
  }
  /// Unscaled input convenience: v = b * e^2 Z.
  static Rational coupling_from_unscaled(const Rational& b, const Rational& e2z) {
    return b * e2z;
  }
};

/// The generalized-confluent-Heun image of the radial equation at energy
/// root `eroot` and coupling `v`: parameters plus the epsilon images.
struct GcheImage {
  GcheParams params;
  Rational epsilon1;
  Rational epsilon0;
};

inline GcheImage to_gche(const CoulombProblem& prob, const Rational& eroot, const Rational& v) {
  const Rational k(prob.k());
  return GcheImage{
      GcheParams(Rational(1), Rational(1), Rational(-2) * eroot, k - 1 - Rational(2) * eroot,
                 k - 1),
      (k - 1) * eroot - v,
      (k - 1) * eroot,
  };
}

/// The spectral-coefficient family in the energy variable:
///   P_{j+1} = (E(k+2j-1) - j(j+k-2)) P_j - 2E j (n+1-j)(j+k-2) P_{j-1},
/// exact in Q[E]; run through j = n so the critical polynomial P_{n+1}
/// is produced.
inline std::vector<RationalPoly> energy_polynomials(const CoulombProblem& prob, int m) {
  if (m < 0) throw contract_error("energy_polynomials: m must be >= 0");
  const int k = prob.k(), n = prob.degree_n;
  std::vector<RationalPoly> polys;
  polys.push_back(RationalPoly::constant(Var::energy, Rational(1)));
  RationalPoly prev = RationalPoly::zero(Var::energy);
  for (int j = 0; j < m; ++j) {
    RationalPoly lin(Var::energy, {Rational(-j * (j + k - 2)), Rational(k + 2 * j - 1)});
    RationalPoly low = RationalPoly::monomial(
        Var::energy, Rational(-2 * j) * Rational(n + 1 - j) * Rational(j + k - 2), 1);
    RationalPoly next = lin * polys.back() + low * prev;
    prev = polys.back();
    polys.push_back(std::move(next));
  }
  return polys;
}

/// Critical polynomial P_{n+1} with its trivial content stripped:
/// the energy-monomial factor E^a and the scalar content are divided out
/// exactly, leaving coprime integer coefficients with positive leading term.
struct ReducedCritical {
  RationalPoly raw;
  RationalPoly reduced;
  unsigned stripped_power = 0;
  Rational content;
};

inline ReducedCritical reduced_critical(const CoulombProblem& prob) {
  auto polys = energy_polynomials(prob, prob.degree_n + 1);
  ReducedCritical rc{polys.back(), polys.back(), 0, Rational(1)};
  rc.stripped_power = rc.reduced.strip_monomial();
  rc.content = rc.reduced.content();
  rc.reduced = rc.reduced.primitive_part();
  return rc;
}

/// One closed-form spectral line: energy root, coupling, energy, polynomial
/// coefficients and the node count of f_n on (0, inf).
struct SpectralLine {
  int index = 0;  // 1-based, ascending energy-root order
  RootBracket eroot;
  Rational coupling_v;
  Rational energy;  // E = -eroot^2
  std::vector<Rational> coeffs;
  Rational overflow;
  int node_count = 0;
};

/// Coefficients of f_n at a given energy root (the energy-variable
/// counterpart of the generic recurrence).
inline std::vector<Rational> coefficients_at(const CoulombProblem& prob, const Rational& eroot,
                                             Rational* overflow = nullptr) {
  const int k = prob.k(), n = prob.degree_n;
  std::vector<Rational> c(static_cast<std::size_t>(n) + 2, Rational(0));
  c[0] = Rational(1);
  for (int j = 0; j <= n; ++j) {
    Rational pivot = Rational(j + 1) * Rational(j + k - 1);
    Rational mid = eroot * Rational(k + 2 * j - 1) - Rational(j) * Rational(j + k - 2);
    Rational low = Rational(-2) * eroot * Rational(n + 1 - j);
    Rational prev = (j == 0) ? Rational(0) : c[static_cast<std::size_t>(j - 1)];
    c[static_cast<std::size_t>(j + 1)] = (mid * c[static_cast<std::size_t>(j)] + low * prev) / pivot;
  }
  if (overflow) *overflow = c.back();
  c.pop_back();
  return c;
}

/// All strictly positive roots of the reduced critical polynomial, with
/// coupling, energy, coefficients and node counts attached. The root count
/// must equal the reduced degree (they are all simple positive reals);
/// anything else raises solvability_error.
inline std::vector<SpectralLine> spectrum(const CoulombProblem& prob, const Rational& tol) {
  if (prob.degree_n < 1) throw contract_error("spectrum: need degree n >= 1");
  ReducedCritical rc = reduced_critical(prob);
  auto roots = isolate_real_roots(rc.reduced, tol);
  std::vector<SpectralLine> lines;
  for (const auto& rb : roots) {
    if (rb.approx.sign() <= 0) continue;
    SpectralLine line;
    line.index = static_cast<int>(lines.size()) + 1;
    line.eroot = rb;
    line.coupling_v = prob.coupling(rb.approx);
    line.energy = -(rb.approx * rb.approx);
    line.coeffs = coefficients_at(prob, rb.approx, &line.overflow);
    RationalPoly f(Var::r, line.coeffs);
    if (f.degree() >= 1) {
      Rational bound = detail::cauchy_bound(f);
      line.node_count = count_real_roots(f, Rational(0), bound);
    }
    lines.push_back(std::move(line));
  }
  if (static_cast<int>(lines.size()) != rc.reduced.degree())
    throw solvability_error("spectrum: expected " + std::to_string(rc.reduced.degree()) +
                            " positive simple roots, found " + std::to_string(lines.size()));
  return lines;
}

/// psi(r) = r^{(k-1)/2} e^{-eroot r} f_n(r), unnormalized.
inline double wavefunction(const SpectralLine& line, const CoulombProblem& prob, double r) {
  if (!(r > 0.0)) throw contract_error("wavefunction: need r > 0");
  RationalPoly f(Var::r, line.coeffs);
  double e = line.eroot.approx.to_double();
  return std::pow(r, 0.5 * (prob.k() - 1)) * std::exp(-e * r) * f(r);
}

/// Relative residual of the radial operator equation
///   [-d^2/dr^2 + (k-1)(k-3)/(4r^2) - v/(r+1) + eroot^2] psi = 0
/// at the sample points. Factoring psi = r^{(k-1)/2} e^{-eroot r} f reduces
/// the residual to -R(r)/(r(r+1)) times the prefactor, with R the exact
/// polynomial residual of the mapped equation, so everything up to the final
/// division is exact rational arithmetic. Normalization: |R| / (r(r+1) e^2 |f|).
inline double operator_residual(const SpectralLine& line, const CoulombProblem& prob,
                                std::span<const Rational> sample_points) {
  auto image = to_gche(prob, line.eroot.approx, line.coupling_v);
  heun::PolySolution sol;
  sol.degree_n = prob.degree_n;
  sol.epsilon0 = image.epsilon0;
  sol.coeffs = line.coeffs;
  RationalPoly res = heun::residual_poly(image.params, sol);
  RationalPoly f(Var::r, line.coeffs);
  const Rational e2 = line.eroot.approx * line.eroot.approx;
  double sup = 0.0;
  for (const auto& r : sample_points) {
    Rational denom = r * (r + 1) * e2 * f(r).abs();
    if (denom.is_zero()) continue;
    sup = std::max(sup, (res(r).abs() / denom).to_double());
  }
  return sup;
}

/// Quotient family in the energy variable
///   Q_{j+1} = (E(2(n+j+1)+k-1) - (n+j+1)(n+j+k-1)) Q_j
///             + 2 j E (n+j+1)(n+j+k-1) Q_{j-1},
/// with the exact division P_{j+n+1} = Q_j P_{n+1} verified up to index m.
inline std::vector<RationalPoly> quotient_polynomials(const CoulombProblem& prob, int m) {
  if (m < 0) throw contract_error("quotient_polynomials: m must be >= 0");
  const int k = prob.k(), n = prob.degree_n;
  std::vector<RationalPoly> q;
  q.push_back(RationalPoly::constant(Var::energy, Rational(1)));
  RationalPoly prev = RationalPoly::zero(Var::energy);
  for (int j = 0; j < m; ++j) {
    RationalPoly lin(Var::energy, {Rational(-(n + j + 1)) * Rational(n + j + k - 1),
                                   Rational(2 * (n + j + 1) + k - 1)});
    RationalPoly low = RationalPoly::monomial(
        Var::energy, Rational(2 * j) * Rational(n + j + 1) * Rational(n + j + k - 1), 1);
    RationalPoly next = lin * q.back() + low * prev;
    prev = q.back();
    q.push_back(std::move(next));
  }
  // verify the factorization exactly
  auto polys = energy_polynomials(prob, n + 1 + m);
  const RationalPoly& critical = polys[static_cast<std::size_t>(n + 1)];
  for (int j = 0; j <= m; ++j) {
    auto [quo, rem] = divmod(polys[static_cast<std::size_t>(j + n + 1)], critical);
    if (!rem.is_zero() || !(quo == q[static_cast<std::size_t>(j)]))
      throw factorization_error("quotient_polynomials: P_{n+1} does not factor P_" +
                                std::to_string(j + n + 1) + " with the recurrence quotient");
  }
  return q;
}

/// The 3-dimensional (k = 3) reduction: generates the scaled critical
/// polynomials by their dedicated recurrence, peels the (n+1)! and 2E
/// factors, and matches the result against the independent Laguerre oracle,
///   V_n(E) = (-1)^n n! L_n^(1)(2E),
/// as an exact polynomial identity; root sets are compared numerically.
struct LaguerreReduction {
  std::vector<RationalPoly> scaled;      // index n-1 -> P_n of the k=3 recurrence
  std::vector<RationalPoly> v_polys;     // V_n = P_n / ((n+1)! 2E)
  std::vector<RationalPoly> reduced;     // primitive part of V_n
  bool identity_ok = false;
  double max_root_gap = 0.0;
};

inline LaguerreReduction laguerre_reduction(int n_max, const Rational& tol) {
  if (n_max < 1) throw contract_error("laguerre_reduction: need n >= 1");
  LaguerreReduction red;
  RationalPoly e = RationalPoly::monomial(Var::energy, Rational(1), 1);
  RationalPoly p1 = Rational(8) * e * RationalPoly(Var::energy, {Rational(-1), Rational(1)});
  RationalPoly p2 =
      Rational(24) * e * RationalPoly(Var::energy, {Rational(3), Rational(-6), Rational(2)});
  red.scaled.push_back(p1);
  if (n_max >= 2) red.scaled.push_back(p2);
  for (int n = 3; n <= n_max; ++n) {
    RationalPoly lin(Var::energy, {Rational(-2 * (n + 1) * n), Rational(2 * (n + 1))});
    RationalPoly next = lin * red.scaled[static_cast<std::size_t>(n - 2)] -
                        Rational(static_cast<long>(n) * n * (static_cast<long>(n) * n - 1)) *
                            red.scaled[static_cast<std::size_t>(n - 3)];
    red.scaled.push_back(std::move(next));
  }
  red.identity_ok = true;
  for (int n = 1; n <= n_max; ++n) {
    RationalPoly q = red.scaled[static_cast<std::size_t>(n - 1)] /
                     factorial(static_cast<unsigned>(n + 1));
    auto [v, rem] = divmod(q, Rational(2) * e);
    if (!rem.is_zero())
      throw factorization_error("laguerre_reduction: 2E does not divide the scaled polynomial");
    RationalPoly lag = oracle::laguerre_poly(n, 1, Var::energy)
                           .compose_affine(Rational(2), Rational(0), Var::energy);
    Rational sign = (n % 2 == 0) ? Rational(1) : Rational(-1);
    if (!(v == sign * factorial(static_cast<unsigned>(n)) * lag)) red.identity_ok = false;
    red.v_polys.push_back(v);
    red.reduced.push_back(v.primitive_part());
  }
  // root sets: reduction polynomials vs the Laguerre oracle route
  for (int n = 1; n <= n_max; ++n) {
    auto a = isolate_real_roots(red.reduced[static_cast<std::size_t>(n - 1)], tol);
    RationalPoly lag2e = oracle::laguerre_poly(n, 1, Var::energy)
                             .compose_affine(Rational(2), Rational(0), Var::energy);
    auto b = isolate_real_roots(lag2e, tol);
    if (a.size() != b.size()) {
      red.max_root_gap = std::numeric_limits<double>::infinity();
      continue;
    }
    for (std::size_t i = 0; i < a.size(); ++i)
      red.max_root_gap =
          std::max(red.max_root_gap, (a[i].approx - b[i].approx).abs().to_double());
  }
  return red;
}

} // namespace coulomb
} // namespace heunspec
