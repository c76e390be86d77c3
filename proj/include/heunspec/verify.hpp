#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "heunspec/coulomb.hpp"
#include "heunspec/orthopoly.hpp"
#include "heunspec/weights.hpp"

namespace heunspec {
namespace verify {

struct Check {
  std::string name;
  bool pass = false;
  double gap = 0.0;
  std::string detail;
};

class Suite {
public:
  void exact(const std::string& name, const Rational& lhs, const Rational& rhs) {
    Rational d = (lhs - rhs).abs();
    checks.push_back({name, d.is_zero(), d.to_double(), ""});
  }
  void within(const std::string& name, double gap, double tol) {
    checks.push_back({name, gap <= tol, gap, "tol " + std::to_string(tol)});
  }
  void holds(const std::string& name, bool ok, const std::string& detail = "") {
    checks.push_back({name, ok, ok ? 0.0 : 1.0, detail});
  }
  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
  double max_gap() const {
    double g = 0.0;
    for (const auto& c : checks) g = std::max(g, c.gap);
    return g;
  }
  std::vector<Check> checks;
};

/// Deterministic cross-platform generator (splitmix64).
class Rng {
public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  /// uniform in [lo, hi]
  long range(long lo, long hi) {
    return lo + static_cast<long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  Rational rational(long max_num = 6, long max_den = 4, bool nonzero = true,
                    bool positive = false) {
    while (true) {
      long num = range(positive ? 1 : -max_num, max_num);
      long den = range(1, max_den);
      if (nonzero && num == 0) continue;
      return Rational(num, den);
    }
  }

private:
  std::uint64_t state_;
};

/// Random parameter tuple with alpha1, beta0 > 0 (pivots never vanish) and
/// beta2 != 0; alpha2, beta1 unrestricted.
inline GcheParams random_params(Rng& rng) {
  return GcheParams(rng.rational(4, 3, false), rng.rational(5, 3, true, true),
                    rng.rational(5, 3, true), rng.rational(5, 3, false),
                    rng.rational(5, 3, true, true));
}

// ---------------------------------------------------------------------------

inline Suite run_ortho_suite(std::uint64_t seed, int tuples = 50) {
  Suite s;
  Rng rng(seed);
  for (int t = 0; t < tuples; ++t) {
    GcheParams p = random_params(rng);
    int n = static_cast<int>(rng.range(1, 5));
    const std::string tag = "tuple " + std::to_string(t) + " (n=" + std::to_string(n) + ") ";
    int m = n + 5;
    auto seq = orthopoly::finite_sequence(p, n, m);

    bool monic = true;
    for (int j = 0; j <= m; ++j)
      monic = monic && seq.at(j).degree() == j && seq.at(j).leading() == Rational(1);
    s.holds(tag + "monic degrees", monic);

    Rational z1 = rng.rational(6, 3), z2 = rng.rational(6, 3);
    if (z1 == z2) z2 += 1;
    for (int mm = 1; mm <= n - 1; ++mm) {
      auto [lhs, rhs] = orthopoly::christoffel_darboux(seq, z1, z2, mm);
      s.exact(tag + "CD two-point m=" + std::to_string(mm), lhs, rhs);
      auto [lhs2, rhs2] = orthopoly::christoffel_darboux_confluent(seq, z1, mm);
      s.exact(tag + "CD confluent m=" + std::to_string(mm), lhs2, rhs2);
    }

    auto norm = orthopoly::norms(p, n, m);  // throws if closed form != recursion
    bool vanish = true;
    for (int k = n + 1; k <= m; ++k)
      vanish = vanish && norm.values[static_cast<std::size_t>(k)].is_zero();
    s.holds(tag + "norms vanish for k >= n+1", vanish);
    if (n >= 1)
      s.exact(tag + "G_1 = -n b0 b2", norm.values[1], -Rational(n) * p.beta0 * p.beta2);

    auto mu = orthopoly::moments(p, n, 2 * n);
    s.exact(tag + "mu_0 = 1", mu.values[0], Rational(1));
    if (n >= 1) s.exact(tag + "mu_1 = 0", mu.values[1], Rational(0));
    if (n >= 1) s.exact(tag + "mu_2 = -n b0 b2", mu.values[2], -Rational(n) * p.beta0 * p.beta2);
    if (n >= 2)
      s.exact(tag + "mu_3 = -n b0 b1 b2", mu.values[3],
              -Rational(n) * p.beta0 * p.beta1 * p.beta2);
    if (n >= 2) {
      Rational mu4 = Rational(n) * p.beta0 * p.beta2 *
                     (Rational(2 * (n - 1)) * p.alpha1 * p.beta2 +
                      Rational(3 * n - 2) * p.beta0 * p.beta2 - p.beta1 * p.beta1);
      s.exact(tag + "mu_4 formula", mu.values[4], mu4);
    }

    for (int k = 0; k <= n; ++k) {
      auto rep = orthopoly::weighted_identities(p, n, k);
      s.holds(tag + "weighted identities k=" + std::to_string(k), rep.all_pass);
    }

    // recurrence re-derivation from the moment functional, k <= n-1
    {
      bool ok = true;
      const RationalPoly z = RationalPoly::monomial(Var::zeta, Rational(1), 1);
      for (int k = 1; k <= n - 1; ++k) {
        Rational num_a = orthopoly::apply_moments(mu, z * seq.at(k) * seq.at(k));
        Rational den_a = orthopoly::apply_moments(mu, seq.at(k) * seq.at(k));
        Rational den_b = orthopoly::apply_moments(mu, seq.at(k - 1) * seq.at(k - 1));
        RationalPoly lin(Var::zeta, {-(num_a / den_a), Rational(1)});
        RationalPoly rebuilt = lin * seq.at(k) - (den_a / den_b) * seq.at(k - 1);
        ok = ok && rebuilt == seq.at(k + 1);
      }
      s.holds(tag + "moment-quotient recurrence rebuild", ok);
    }

    auto fac = orthopoly::factorize(p, n, m);  // throws on nonzero remainder
    s.holds(tag + "factorization P_{n+1} | P_{k+n+1}", fac.ok);

    auto qrep = orthopoly::quotient_norms_and_cd(p, n, 4, z1, z2);
    s.holds(tag + "quotient norms + CD", qrep.all_pass);

    // Eq-17-style bridge: C_j * j! * prod(b0 + i a1) == P_j(e0) at a rational e0
    {
      Rational e0 = rng.rational(6, 3);
      auto bridge = orthopoly::coefficient_bridge(seq);
      auto sol = heun::polynomial_solution(p, n, e0);
      bool ok = true;
      for (int j = 0; j <= n; ++j)
        ok = ok && sol.coeffs[static_cast<std::size_t>(j)] ==
                       bridge[static_cast<std::size_t>(j)] * seq.at(j)(e0);
      s.holds(tag + "coefficient bridge", ok);
    }

    // critical polynomial vs determinant: Delta_{n+1} == (-1)^{n+1} P_{n+1}
    {
      auto minors = heun::determinant_sequence(p, n);
      RationalPoly expect =
          (n % 2 == 0) ? -seq.at(n + 1) : seq.at(n + 1);
      s.holds(tag + "Delta_{n+1} = (-1)^{n+1} P_{n+1}", minors.at(n + 1) == expect);
    }
  }
  return s;
}

// ---------------------------------------------------------------------------

inline Suite run_coulomb_suite(std::uint64_t seed, bool with_fd) {
  Suite s;
  Rng rng(seed);
  const Rational tol = Rational::pow_of_ten(-50);

  // ground line, exact, k = 2..12
  for (int k = 2; k <= 12; ++k) {
    coulomb::CoulombProblem prob(k, 0, 1);  // d = k, ell = 0
    auto lines = coulomb::spectrum(prob, tol);
    bool ok = lines.size() == 1 && lines[0].eroot.exact && lines[0].eroot.approx == Rational(1) &&
              lines[0].energy == Rational(-1) && lines[0].coupling_v == Rational(k + 1);
    s.holds("n=1 k=" + std::to_string(k) + " line is (1, -1, k+1) exact", ok);
  }

  // n=2 reduced polynomial and root residuals
  for (int k : {2, 3, 5, 8, 12}) {
    coulomb::CoulombProblem prob(k, 0, 2);
    auto rc = coulomb::reduced_critical(prob);
    RationalPoly target(Var::energy, {Rational(2 * k), Rational(-3 * (k + 1)), Rational(k + 1)});
    s.holds("n=2 k=" + std::to_string(k) + " reduced critical polynomial",
            rc.reduced == target.primitive_part());
    auto lines = coulomb::spectrum(prob, tol);
    double worst = 0.0;
    for (const auto& line : lines)
      worst = std::max(worst, target(line.eroot.approx).abs().to_double());
    s.within("n=2 k=" + std::to_string(k) + " root residual", worst, 1e-40);
  }

  // factorization of the energy family
  for (int n = 1; n <= 3; ++n) {
    coulomb::CoulombProblem prob(3, 0, n);
    bool ok = true;
    try {
      coulomb::quotient_polynomials(prob, 4);
    } catch (const factorization_error&) {
      ok = false;
    }
    s.holds("energy-family factorization n=" + std::to_string(n), ok);
  }

  // Laguerre reduction
  {
    auto red = coulomb::laguerre_reduction(8, tol);
    s.holds("V_n = (-1)^n n! L_n^(1)(2E) for n <= 8", red.identity_ok);
    s.within("Laguerre root gap", red.max_root_gap, 1e-10);
  }

  // determinant route vs energy-family route
  const Rational tol35 = Rational::pow_of_ten(-35);
  for (int n = 1; n <= 6; ++n)
    for (int k : {2, 3, 5, 7, 10}) {
      coulomb::CoulombProblem prob(k, 0, n);
      auto lines = coulomb::spectrum(prob, tol35);
      double worst = 0.0;
      for (const auto& line : lines) {
        auto image = coulomb::to_gche(prob, line.eroot.approx, line.coupling_v);
        auto sc = heun::solve_epsilon0(image.params, n, tol35);
        double best = std::numeric_limits<double>::infinity();
        for (const auto& rb : sc.epsilon0_roots)
          best = std::min(best, (rb.approx - image.epsilon0).abs().to_double());
        worst = std::max(worst, best);
      }
      s.within("determinant route n=" + std::to_string(n) + " k=" + std::to_string(k), worst,
               1e-30);
    }

  // interlacing of successive reduced critical polynomials at fixed k
  for (int k : {3, 5, 9}) {
    bool ok = true;
    for (int n = 1; n <= 5; ++n) {
      auto a = coulomb::spectrum(coulomb::CoulombProblem(k, 0, n), tol);
      auto b = coulomb::spectrum(coulomb::CoulombProblem(k, 0, n + 1), tol);
      for (std::size_t i = 0; i + 1 < b.size(); ++i) {
        int between = 0;
        for (const auto& line : a)
          if (line.eroot.approx > b[i].eroot.approx && line.eroot.approx < b[i + 1].eroot.approx)
            ++between;
        ok = ok && between == 1;
      }
    }
    s.holds("spectra interlace across n, k=" + std::to_string(k), ok);
  }

  (void)rng;
  if (with_fd) {
    struct Case { int n, k; };
    for (Case c : {Case{1, 3}, Case{1, 5}, Case{2, 5}, Case{3, 3}}) {
      coulomb::CoulombProblem prob(c.k, 0, c.n);
      auto lines = coulomb::spectrum(prob, tol);
      double worst = 0.0;
      for (const auto& line : lines) {
        auto grid = oracle::FdGrid::standard(40.0, 4000);
        auto eigs = oracle::fd_spectrum(line.coupling_v.to_double(), c.k, grid, 6);
        double target = line.energy.to_double();
        double best = std::numeric_limits<double>::infinity();
        for (double e : eigs) best = std::min(best, std::abs(e - target));
        worst = std::max(worst, best);
      }
      s.within("FD gap n=" + std::to_string(c.n) + " k=" + std::to_string(c.k), worst, 5e-4);
    }
  }
  return s;
}

// ---------------------------------------------------------------------------

/// Draws a parameter tuple meeting the closed-form constraints for the
/// normalization/overlap integrals on the requested domain.
inline GcheParams random_weight_params(Rng& rng, bool infinite) {
  while (true) {
    Rational a1 = rng.rational(3, 2, true, true);
    Rational a2 = rng.rational(3, 2, true, true);
    if (!infinite) a2 = -a2;
    Rational b0 = rng.rational(4, 3, true, true);
    Rational b1 = rng.rational(4, 3, false);
    Rational b2 = -rng.rational(3, 2, true, true);
    GcheParams p(a2, a1, b2, b1, b0);
    weights::RadialWeight w = weights::RadialWeight::from_params(p);
    if (!infinite && (w.s + 1).sign() <= 0) continue;
    // keep the hypergeometric b-parameter away from integers (A.7 poles)
    Rational b = (a2 * b1 - a1 * b2) / (a2 * a2);
    if (infinite && b.is_integer()) continue;
    // keep exponents mild so quadrature converges comfortably
    if (w.p > Rational(8) || w.s.abs() > Rational(10)) continue;
    return p;
  }
}

inline Suite run_weights_suite(std::uint64_t seed, int tuples = 20) {
  Suite s;
  Rng rng(seed);

  // integrating-factor derivation reproduces the appendix exponent
  for (int t = 0; t < 10; ++t) {
    GcheParams p = random_params(rng);
    if (p.alpha2.is_zero()) continue;
    s.holds("weight form (tuple " + std::to_string(t) + ") is the appendix exponent",
            weights::derive_weight_form(p) == weights::WeightForm::appendix);
  }

  // domain rule
  {
    GcheParams pos(Rational(1), Rational(2), Rational(-1), Rational(0), Rational(1));
    GcheParams neg(Rational(-1), Rational(2), Rational(-1), Rational(0), Rational(1));
    auto wp = weights::RadialWeight::from_params(pos);
    auto wn = weights::RadialWeight::from_params(neg);
    s.holds("domain switches with sign(alpha1 alpha2)",
            wp.infinite_domain && !wn.infinite_domain && wn.upper == Rational(2));
  }

  // closed forms vs quadrature on seeded tuples
  for (int t = 0; t < tuples; ++t) {
    bool infinite = (t % 2 == 0);
    GcheParams p = random_weight_params(rng, infinite);
    auto w = weights::RadialWeight::from_params(p);
    int ij = static_cast<int>(rng.range(0, 3));
    int i = ij / 2, j = ij - i;
    double closed = weights::overlap_moment_closed(w, i, j);
    auto quad = weights::overlap_moment_quadrature(w, i, j);
    double rel = std::abs(closed - quad.value) / std::max(1e-300, std::abs(closed));
    s.within("tuple " + std::to_string(t) + (infinite ? " (0,inf)" : " (0,L)") +
                 " i+j=" + std::to_string(ij) + " closed vs quadrature",
             rel, 1e-8);
  }

  // eigenfunction Gram matrices at fixed parameters
  {
    const Rational tol = Rational::pow_of_ten(-50);
    auto gram_for = [&](const GcheParams& p, int n) {
      auto sc = heun::solve_epsilon0(p, n, tol);
      std::vector<heun::PolySolution> sols;
      for (std::size_t i = 0; i < sc.epsilon0_roots.size(); ++i)
        sols.push_back(heun::polynomial_solution(p, n, sc.epsilon0_roots[i].approx,
                                                 static_cast<int>(i) + 1));
      return weights::eigenfunction_gram(p, sols);
    };
    GcheParams cmap(Rational(1), Rational(1), Rational(-2), Rational(0), Rational(2));
    s.within("Gram offdiag, n=1 softcore map", gram_for(cmap, 1).max_offdiagonal_normalized,
             1e-8);
    GcheParams gen(Rational(1, 2), Rational(1), Rational(-1), Rational(3, 2), Rational(2));
    s.within("Gram offdiag, n=2 generic", gram_for(gen, 2).max_offdiagonal_normalized, 1e-8);
    bool diag_pos = true;
    auto g = gram_for(gen, 2);
    for (std::size_t i = 0; i < g.matrix.size(); ++i) diag_pos = diag_pos && g.matrix[i][i] > 0;
    s.holds("Gram diagonal positive", diag_pos);
  }
  return s;
}

inline Suite run_all(std::uint64_t seed, bool with_fd) {
  Suite all;
  for (Suite part : {run_ortho_suite(seed), run_coulomb_suite(seed, with_fd),
                     run_weights_suite(seed)})
    for (auto& c : part.checks) all.checks.push_back(std::move(c));
  return all;
}

} // namespace verify
} // namespace heunspec
