#pragma once

#include <cmath>
#include <vector>

#include "heunspec/heun.hpp"
#include "heunspec/oracle.hpp"

namespace heunspec {
namespace weights {

/// Radial weight w(r) = r^p e^{lambda r} (alpha1 + alpha2 r)^s with
///   p = beta0/alpha1 - 1,
///   s = beta1/alpha2 - alpha1 beta2/alpha2^2 - beta0/alpha1 - 1,
///   lambda = beta2/alpha2,
/// on (0, inf) when alpha1*alpha2 > 0, else on (0, -alpha1/alpha2).
struct RadialWeight {
  GcheParams params;
  Rational p, s, lambda;
  bool infinite_domain = true;
  Rational upper;  // -alpha1/alpha2 for the finite domain

  static RadialWeight from_params(const GcheParams& gp) {
    if (gp.alpha2.is_zero())
      throw weight_domain_error("RadialWeight: alpha2 != 0 required for the weight exponents");
    if (gp.alpha1.is_zero())
      throw weight_domain_error("RadialWeight: alpha1 != 0 required for the weight exponents");
    RadialWeight w{gp, {}, {}, {}, true, {}};
    w.p = gp.beta0 / gp.alpha1 - 1;
    w.lambda = gp.beta2 / gp.alpha2;
    w.s = gp.beta1 / gp.alpha2 - gp.alpha1 * gp.beta2 / (gp.alpha2 * gp.alpha2) -
          gp.beta0 / gp.alpha1 - 1;
    w.infinite_domain = (gp.alpha1 * gp.alpha2).sign() > 0;
    w.upper = w.infinite_domain ? Rational(0) : -gp.alpha1 / gp.alpha2;
    return w;
  }

  struct Flags {
    bool exponent_positive;   // beta0/alpha1 > 0
    bool decay_negative;      // beta2/alpha2 < 0
    bool edge_exponent_ok;    // s + 1 >= 0
  };
  Flags integrability_flags() const {
    return {(params.beta0 / params.alpha1).sign() > 0, lambda.sign() < 0,
            (s + 1).sign() >= 0};
  }

  double evaluate(double r) const {
    if (!(r > 0.0) || (!infinite_domain && !(r < upper.to_double())))
      throw contract_error("RadialWeight::evaluate: r outside the domain interior");
    return density(r);
  }

  /// Like evaluate() but extended by zero outside the open domain; safe to
  /// hand to C quadrature callbacks, which must not unwind.
  double density(double r) const noexcept {
    if (!(r > 0.0) || (!infinite_domain && !(r < upper.to_double()))) return 0.0;
    double base = params.alpha1.to_double() + params.alpha2.to_double() * r;
    return std::pow(r, p.to_double()) * std::exp(lambda.to_double() * r) *
           std::pow(base, s.to_double());
  }
};

namespace detail {

struct HypergeometricArgs {
  double a, b, z, s;  // a = beta0/alpha1 (+i+j), b = a + s + 1 (+i+j), z = -a1 b2/a2^2
};

inline HypergeometricArgs hyper_args(const RadialWeight& w, int ij) {
  const GcheParams& gp = w.params;
  double a = (gp.beta0 / gp.alpha1).to_double() + ij;
  double z = (-(gp.alpha1 * gp.beta2) / (gp.alpha2 * gp.alpha2)).to_double();
  double s = w.s.to_double();
  double b = ((gp.alpha2 * gp.beta1 - gp.alpha1 * gp.beta2) / (gp.alpha2 * gp.alpha2)).to_double() + ij;
  return {a, b, z, s};
}

} // namespace detail

/// Closed form of Int r^{p+i+j} e^{lambda r} (a1+a2 r)^s dr over the domain:
/// Gamma*U on (0,inf) (via the U integral representation for i+j = 0, the
/// two-term 1F1 connection otherwise), Gamma-ratio * 1F1 on the finite
/// interval. Throws weight_domain_error naming any violated constraint.
inline double overlap_moment_closed(const RadialWeight& w, int i, int j) {
  const GcheParams& gp = w.params;
  const int ij = i + j;
  auto [a, b, z, s] = detail::hyper_args(w, ij);
  if (w.infinite_domain) {
    if (gp.alpha1.sign() < 0 || gp.alpha2.sign() < 0)
      throw weight_domain_error("closed form: alpha1 > 0 and alpha2 > 0 required on (0,inf)");
    if (!(z > 0.0))
      throw weight_domain_error("closed form: alpha1*beta2/alpha2^2 < 0 violated");
    if (!(a > 0.0))
      throw weight_domain_error("closed form: beta0/alpha1 + i + j > 0 violated");
    double prefix = std::pow(gp.alpha1.to_double(), s) *
                    std::pow((gp.alpha1 / gp.alpha2).to_double(), a) * std::tgamma(a);
    if (ij == 0) return prefix * oracle::kummer_u(a, b, z);
    if (b == std::floor(b))
      throw weight_domain_error("closed form: two-term 1F1 connection has a pole at integer b = " +
                                std::to_string(b));
    double u = std::tgamma(1.0 - b) / std::tgamma(a - b + 1.0) * oracle::kummer_m(a, b, z) +
               std::tgamma(b - 1.0) / std::tgamma(a) * std::pow(z, 1.0 - b) *
                   oracle::kummer_m(a - b + 1.0, 2.0 - b, z);
    return prefix * u;
  }
  // finite domain (0, -alpha1/alpha2)
  if (gp.alpha1.sign() < 0)
    throw weight_domain_error("closed form: alpha1 > 0 required on the finite domain");
  if (!(a > 0.0))
    throw weight_domain_error("closed form: beta0/alpha1 + i + j > 0 violated");
  if (!(s + 1.0 > 0.0))
    throw weight_domain_error(
        "closed form: alpha2^2 beta0 + alpha1^2 beta2 < alpha1 alpha2 beta1 violated (s+1 <= 0)");
  double prefix = std::pow(gp.alpha1.to_double(), s) * std::pow(w.upper.to_double(), a);
  double gammas = std::tgamma(a) * std::tgamma(s + 1.0) / std::tgamma(b);
  return prefix * gammas * oracle::kummer_m(a, b, z);
}

inline double normalization_closed_form(const RadialWeight& w) {
  return overlap_moment_closed(w, 0, 0);
}

/// Same integral by adaptive quadrature.
inline oracle::QuadratureResult overlap_moment_quadrature(const RadialWeight& w, int i, int j,
                                                          double abs_tol = 1e-10,
                                                          double rel_tol = 1e-8) {
  const int ij = i + j;
  auto flags = w.integrability_flags();
  if (!flags.exponent_positive)
    throw weight_domain_error("quadrature: beta0/alpha1 > 0 violated (non-integrable at 0)");
  if (w.infinite_domain && !flags.decay_negative)
    throw weight_domain_error("quadrature: beta2/alpha2 < 0 violated (no decay at infinity)");
  auto f = [&w, ij](double r) { return w.density(r) * std::pow(r, ij); };
  oracle::Domain dom = w.infinite_domain ? oracle::Domain::half_line()
                                         : oracle::Domain::to(w.upper.to_double());
  return oracle::integrate(f, dom, abs_tol, rel_tol);
}

/// Gram matrix G_ij = Int f_i f_j w dr of the degree-n solutions at the
/// epsilon0 roots (fixed parameters). Off-diagonals vanish up to root
/// refinement and quadrature accuracy.
struct GramResult {
  std::vector<std::vector<double>> matrix;
  double max_offdiagonal_normalized = 0.0;
};

inline GramResult eigenfunction_gram(const GcheParams& gp,
                                     const std::vector<heun::PolySolution>& solutions,
                                     double abs_tol = 1e-12, double rel_tol = 1e-10) {
  RadialWeight w = RadialWeight::from_params(gp);
  auto flags = w.integrability_flags();
  if (!flags.exponent_positive || (w.infinite_domain && !flags.decay_negative))
    throw weight_domain_error("eigenfunction_gram: weight not integrable on its domain");
  const std::size_t m = solutions.size();
  GramResult g;
  g.matrix.assign(m, std::vector<double>(m, 0.0));
  std::vector<RationalPoly> fs;
  fs.reserve(m);
  for (const auto& sol : solutions) fs.push_back(sol.as_poly());
  oracle::Domain dom = w.infinite_domain ? oracle::Domain::half_line()
                                         : oracle::Domain::to(w.upper.to_double());
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i; j < m; ++j) {
      auto f = [&](double r) { return fs[i](r) * fs[j](r) * w.density(r); };
      double val = oracle::integrate(f, dom, abs_tol, rel_tol).value;
      g.matrix[i][j] = g.matrix[j][i] = val;
    }
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      if (i != j)
        g.max_offdiagonal_normalized =
            std::max(g.max_offdiagonal_normalized,
                     std::abs(g.matrix[i][j]) / std::sqrt(g.matrix[i][i] * g.matrix[j][j]));
  return g;
}

/// Which printed exponent of (alpha1 + alpha2 r) the integrating-factor
/// derivation actually produces.
enum class WeightForm {
  appendix,       // s = b1/a2 - a1 b2/a2^2 - b0/a1 - 1
  section_one,    // the same without the trailing -1
  neither,
};

/// Symbolic check in Q[r]: with sigma = r(a2 r + a1) and the candidate
/// exponents (p, s, lambda), the self-adjoint expansion requires
///   sigma' + sigma (p/r + lambda + s a2/(a1 + a2 r)) == b2 r^2 + b1 r + b0,
/// i.e. (2 a2 r + a1) + p(a2 r + a1) + lambda(a2 r^2 + a1 r) + s a2 r equals
/// the first-order coefficient polynomial exactly.
inline WeightForm derive_weight_form(const GcheParams& gp) {
  if (gp.alpha1.is_zero() || gp.alpha2.is_zero()) return WeightForm::neither;
  RadialWeight w = RadialWeight::from_params(gp);
  auto expand = [&gp](const Rational& p, const Rational& s, const Rational& lambda) {
    RationalPoly sigma_prime(Var::r, {gp.alpha1, Rational(2) * gp.alpha2});
    RationalPoly term_p(Var::r, {p * gp.alpha1, p * gp.alpha2});
    RationalPoly term_lambda(Var::r, {Rational(0), lambda * gp.alpha1, lambda * gp.alpha2});
    RationalPoly term_s(Var::r, {Rational(0), s * gp.alpha2});
    return sigma_prime + term_p + term_lambda + term_s;
  };
  RationalPoly target(Var::r, {gp.beta0, gp.beta1, gp.beta2});
  if (expand(w.p, w.s, w.lambda) == target) return WeightForm::appendix;
  if (expand(w.p, w.s + 1, w.lambda) == target) return WeightForm::section_one;
  return WeightForm::neither;
}

} // namespace weights
} // namespace heunspec
