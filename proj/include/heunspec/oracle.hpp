#pragma once

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "heunspec/polynomial.hpp"

namespace heunspec {
namespace oracle {

// ---------------------------------------------------------------------------
// Finite-difference radial eigensolver
// ---------------------------------------------------------------------------

/// Uniform grid for the 3-point discretization of
///   -d^2/dr^2 + (k-1)(k-3)/(4 r^2) - v/(r+1)
/// with Dirichlet conditions at both ends. The left wall sits at a small
/// r_min > 0; the induced shift is far below the O(h^2) truncation error
/// with the default r_min = 1e-9 * r_max.
struct FdGrid {
  double r_min;
  double r_max;
  int points;

  FdGrid(double rmin, double rmax, int n) : r_min(rmin), r_max(rmax), points(n) {
    if (!(0.0 < r_min && r_min < r_max))
      throw contract_error("FdGrid: need 0 < r_min < r_max");
    if (points < 100) throw contract_error("FdGrid: need at least 100 points");
  }
  static FdGrid standard(double rmax, int n) { return FdGrid(1e-9 * rmax, rmax, n); }

  double spacing() const { return (r_max - r_min) / (points - 1); }
};

namespace detail {

/// Number of eigenvalues of the symmetric tridiagonal matrix (diag d,
/// off-diagonal e) strictly below x, by the Sturm / LDL^T sign count.
inline int eigen_count_below(const std::vector<double>& d, double off_sq, double x) {
  int count = 0;
  double q = 1.0;
  const double tiny = std::numeric_limits<double>::min() / std::numeric_limits<double>::epsilon();
  for (std::size_t i = 0; i < d.size(); ++i) {
    q = (i == 0) ? d[0] - x : (d[i] - x) - off_sq / q;
    if (std::abs(q) < tiny) q = -tiny;
    if (q < 0) ++count;
  }
  return count;
}

} // namespace detail

/// Lowest `count` eigenvalues of the discretized radial operator,
/// by deterministic bisection on the Sturm count. O(h^2) accurate.
inline std::vector<double> fd_spectrum(double v, int k, const FdGrid& grid, int count) {
  if (!(v > 0.0)) throw contract_error("fd_spectrum: need v > 0");
  if (k < 2) throw contract_error("fd_spectrum: need k >= 2");
  const int m = grid.points - 2;  // interior points
  if (count < 1 || count > m)
    throw resolution_error("fd_spectrum: grid with " + std::to_string(m) +
                           " interior points cannot resolve " + std::to_string(count) +
                           " states; increase points");
  const double h = grid.spacing();
  const double inv_h2 = 1.0 / (h * h);
  std::vector<double> d(static_cast<std::size_t>(m));
  const double cf = 0.25 * (k - 1) * (k - 3);
  for (int i = 0; i < m; ++i) {
    double r = grid.r_min + (i + 1) * h;
    d[static_cast<std::size_t>(i)] = 2.0 * inv_h2 + cf / (r * r) - v / (r + 1.0);
  }
  const double off_sq = inv_h2 * inv_h2;  // e_i = -1/h^2

  // Gershgorin bounds
  double lo = d[0], hi = d[0];
  for (int i = 0; i < m; ++i) {
    double radius = (i == 0 || i == m - 1) ? inv_h2 : 2.0 * inv_h2;
    if (i == 0 && m == 1) radius = 0.0;
    lo = std::min(lo, d[static_cast<std::size_t>(i)] - radius);
    hi = std::max(hi, d[static_cast<std::size_t>(i)] + radius);
  }

  std::vector<double> eigs;
  eigs.reserve(static_cast<std::size_t>(count));
  for (int idx = 1; idx <= count; ++idx) {
    double a = lo, b = hi;
    for (int it = 0; it < 140 && b - a > 1e-13 * (1.0 + std::abs(a) + std::abs(b)); ++it) {
      double mid = 0.5 * (a + b);
      if (detail::eigen_count_below(d, off_sq, mid) >= idx) b = mid;
      else a = mid;
    }
    eigs.push_back(0.5 * (a + b));
  }
  return eigs;
}

// ---------------------------------------------------------------------------
// Laguerre polynomials
// ---------------------------------------------------------------------------

/// L_n^(alpha)(x) by the classical three-term recurrence.
inline double laguerre(int n, int alpha, double x) {
  if (n < 0) throw contract_error("laguerre: n must be >= 0");
  double lm1 = 1.0;
  if (n == 0) return lm1;
  double l = 1.0 + alpha - x;
  for (int i = 1; i < n; ++i) {
    double next = ((2.0 * i + 1.0 + alpha - x) * l - (i + alpha) * lm1) / (i + 1.0);
    lm1 = l;
    l = next;
  }
  return l;
}

/// Exact-rational evaluation of L_n^(alpha)(x).
inline Rational laguerre_exact(int n, int alpha, const Rational& x) {
  if (n < 0) throw contract_error("laguerre_exact: n must be >= 0");
  Rational lm1(1);
  if (n == 0) return lm1;
  Rational l = Rational(1 + alpha) - x;
  for (int i = 1; i < n; ++i) {
    Rational next = ((Rational(2 * i + 1 + alpha) - x) * l - Rational(i + alpha) * lm1) /
                    Rational(i + 1);
    lm1 = l;
    l = next;
  }
  return l;
}

/// L_n^(alpha) as an exact polynomial in the given variable.
inline RationalPoly laguerre_poly(int n, int alpha, Var var) {
  if (n < 0) throw contract_error("laguerre_poly: n must be >= 0");
  RationalPoly lm1 = RationalPoly::constant(var, Rational(1));
  if (n == 0) return lm1;
  RationalPoly l(var, {Rational(1 + alpha), Rational(-1)});
  for (int i = 1; i < n; ++i) {
    RationalPoly lin(var, {Rational(2 * i + 1 + alpha), Rational(-1)});
    RationalPoly next = (lin * l - Rational(i + alpha) * lm1) / Rational(i + 1);
    lm1 = l;
    l = next;
  }
  return l;
}

// ---------------------------------------------------------------------------
// Adaptive quadrature (GSL QAGS / QAGIU)
// ---------------------------------------------------------------------------

/// Integration domain: (0, upper) or (0, infinity).
struct Domain {
  enum class Kind { finite, semi_infinite };
  Kind kind;
  double upper = 0.0;

  static Domain to(double L) { return {Kind::finite, L}; }
  static Domain half_line() { return {Kind::semi_infinite, 0.0}; }
};

struct QuadratureResult {
  double value = 0.0;
  double abs_error = 0.0;
};

namespace detail {

inline double gsl_trampoline(double x, void* params) {
  auto* f = static_cast<std::function<double(double)>*>(params);
  return (*f)(x);
}

struct WorkspaceDeleter {
  void operator()(gsl_integration_workspace* w) const { gsl_integration_workspace_free(w); }
};

inline void disable_gsl_abort() {
  static const auto once = [] { gsl_set_error_handler_off(); return 0; }();
  (void)once;
}

} // namespace detail

/// Adaptive Gauss-Kronrod integration over (0, L) or (0, inf) with endpoint
/// singularities of algebraic exponent > -1 handled by extrapolation and the
/// semi-infinite tail by the standard variable substitution. Throws
/// accuracy_error (with the achieved estimate) on nonconvergence.
inline QuadratureResult integrate(const std::function<double(double)>& f, Domain dom,
                                  double abs_tol = 1e-10, double rel_tol = 1e-8) {
  detail::disable_gsl_abort();
  constexpr std::size_t kLimit = 4096;
  std::unique_ptr<gsl_integration_workspace, detail::WorkspaceDeleter> ws(
      gsl_integration_workspace_alloc(kLimit));
  std::function<double(double)> fn = f;
  gsl_function gf;
  gf.function = &detail::gsl_trampoline;
  gf.params = &fn;

  double value = 0.0, err = 0.0;
  int status = 0;
  if (dom.kind == Domain::Kind::finite) {
    status = gsl_integration_qags(&gf, 0.0, dom.upper, abs_tol, rel_tol, kLimit, ws.get(),
                                  &value, &err);
  } else {
    // split: singular behaviour near 0 via QAGS, tail via QAGIU
    double v0 = 0.0, e0 = 0.0, v1 = 0.0, e1 = 0.0;
    int s0 = gsl_integration_qags(&gf, 0.0, 1.0, 0.5 * abs_tol, rel_tol, kLimit, ws.get(),
                                  &v0, &e0);
    int s1 = gsl_integration_qagiu(&gf, 1.0, 0.5 * abs_tol, rel_tol, kLimit, ws.get(),
                                   &v1, &e1);
    value = v0 + v1;
    err = e0 + e1;
    status = s0 != 0 ? s0 : s1;
  }
  if (status != 0 && err > std::max(abs_tol, rel_tol * std::abs(value)))
    throw accuracy_error("integrate: requested tolerance not reached (" +
                             std::string(gsl_strerror(status)) + ")",
                         err);
  return {value, err};
}

// ---------------------------------------------------------------------------
// Confluent hypergeometric functions
// ---------------------------------------------------------------------------

/// 1F1(a; b; z) by Taylor series with term-ratio stopping at 1e-14 relative.
/// b at a nonpositive integer is a pole.
inline double kummer_m(double a, double b, double z) {
  if (b <= 0.0 && b == std::floor(b))
    throw weight_domain_error("kummer_m: pole at nonpositive integer b = " + std::to_string(b));
  double term = 1.0, sum = 1.0;
  for (int k = 0; k < 20000; ++k) {
    term *= (a + k) * z / ((b + k) * (k + 1.0));
    sum += term;
    if (std::abs(term) <= 1e-14 * std::abs(sum) && k > 2) return sum;
  }
  throw accuracy_error("kummer_m: series did not converge", std::abs(term));
}

/// U(a, b, z) for a > 0, z > 0 via the integral representation
///   U = (1/Gamma(a)) Int_0^inf e^{-z t} t^{a-1} (1+t)^{b-a-1} dt,
/// evaluated with the adaptive quadrature above.
inline double kummer_u(double a, double b, double z, double abs_tol = 1e-12,
                       double rel_tol = 1e-10) {
  if (!(a > 0.0) || !(z > 0.0))
    throw weight_domain_error("kummer_u: integral representation needs a > 0 and z > 0");
  auto integrand = [a, b, z](double t) {
    return std::exp(-z * t) * std::pow(t, a - 1.0) * std::pow(1.0 + t, b - a - 1.0);
  };
  QuadratureResult q = integrate(integrand, Domain::half_line(), abs_tol, rel_tol);
  return q.value / std::tgamma(a);
}

} // namespace oracle
} // namespace heunspec
