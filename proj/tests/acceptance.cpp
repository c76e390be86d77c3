// Acceptance suite: one check per numbered criterion, one PASS/FAIL line
// each, nonzero exit on any failure.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "heunspec/coulomb.hpp"
#include "heunspec/orthopoly.hpp"
#include "heunspec/verify.hpp"
#include "heunspec/weights.hpp"
#include "oracles.hpp"

using namespace heunspec;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

void criterion(int number, const std::string& title, double time_limit_s,
               const std::function<bool(std::string&)>& body) {
  std::string detail;
  auto t0 = Clock::now();
  bool ok = false;
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  if (secs >= time_limit_s) {
    ok = false;
    detail += (detail.empty() ? "" : "; ") + std::string("over time budget");
  }
  if (!ok) ++g_failures;
  std::printf("[%s] criterion %d: %s (%.2fs%s%s)\n", ok ? "PASS" : "FAIL", number, title.c_str(),
              secs, detail.empty() ? "" : " - ", detail.c_str());
  std::fflush(stdout);
}

RationalPoly ep(std::vector<Rational> c) { return RationalPoly(Var::energy, std::move(c)); }

const Rational kTol = Rational::pow_of_ten(-50);

} // namespace

int main() {
  // 1 ------------------------------------------------------------------
  criterion(1, "n=1 ground line exact for k = 2..12", 1.0, [](std::string& detail) {
    for (int k = 2; k <= 12; ++k) {
      coulomb::CoulombProblem prob(k, 0, 1);
      auto lines = coulomb::spectrum(prob, kTol);
      if (lines.size() != 1 || !lines[0].eroot.exact || !(lines[0].eroot.approx == Rational(1)) ||
          !(lines[0].energy == Rational(-1)) || !(lines[0].coupling_v == Rational(k + 1))) {
        detail = "mismatch at k=" + std::to_string(k);
        return false;
      }
    }
    return true;
  });

  // 2 ------------------------------------------------------------------
  criterion(2, "n=2 reduced quadratic and roots to 1e-12", 1.0, [](std::string& detail) {
    const Rational tol12 = Rational::pow_of_ten(-12);
    for (int k = 2; k <= 12; ++k) {
      coulomb::CoulombProblem prob(k, 0, 2);
      auto rc = coulomb::reduced_critical(prob);
      RationalPoly target =
          ep({Rational(2 * k), Rational(-3 * (k + 1)), Rational(k + 1)});
      if (!(rc.reduced == target.primitive_part())) {
        detail = "polynomial mismatch at k=" + std::to_string(k);
        return false;
      }
      auto lines = coulomb::spectrum(prob, kTol);
      if (lines.size() != 2) return false;
      Rational half_sqrt =
          testor::sqrt_oracle(Rational(k + 9) / Rational(k + 1), Rational::pow_of_ten(-30)) / 2;
      Rational lo = Rational(3, 2) - half_sqrt, hi = Rational(3, 2) + half_sqrt;
      if ((lines[0].eroot.approx - lo).abs() > tol12 ||
          (lines[1].eroot.approx - hi).abs() > tol12) {
        detail = "root gap exceeds 1e-12 at k=" + std::to_string(k);
        return false;
      }
    }
    return true;
  });

  // 3 ------------------------------------------------------------------
  criterion(3, "tabulated spectral polynomials n <= 4, j <= n+1 (exact)", 5.0,
            [](std::string& detail) {
    for (int k = 2; k <= 9; ++k) {
      const Rational K(k);
      const RationalPoly E1 = ep({Rational(0), Rational(1)});
      auto rows = [&](int n) {
        std::vector<RationalPoly> t(static_cast<std::size_t>(n) + 2,
                                    RationalPoly::zero(Var::energy));
        t[0] = ep({Rational(1)});
        t[1] = ep({Rational(0), K - 1});
        if (n == 1) t[2] = (K * K - 1) * ep({Rational(0), Rational(-1), Rational(1)});
        if (n >= 2) t[2] = (K - 1) * E1 * ep({-(K + Rational(2 * n - 1)), K + 1});
        if (n == 2)
          t[3] = (K - 1) * (K + 3) * E1 *
                 ep({Rational(2) * K, Rational(-3) * (K + 1), K + 1});
        if (n >= 3)
          t[3] = (K - 1) * E1 *
                 ep({Rational(2) * K * (K + Rational(2 * n - 1)),
                     Rational(-3) * (K + 1) * (K + Rational(2 * n - 1)), (K + 1) * (K + 3)});
        if (n == 3)
          t[4] = (K - 1) * (K + 5) * E1 *
                 ep({Rational(-6) * K * (K + 1),
                     Rational(11) * K * K + Rational(34) * K + Rational(15),
                     Rational(-6) * (K + 1) * (K + 3), (K + 1) * (K + 3)});
        if (n == 4)
          t[4] = (K - 1) * E1 *
                 ep({Rational(-6) * K * (K + 1) * (K + 7),
                     (K + 3) * (K + 7) * (Rational(11) * K + 7),
                     Rational(-6) * (K + 1) * (K + 3) * (K + 7), (K + 1) * (K + 3) * (K + 5)});
        if (n == 4)
          t[5] = (K - 1) * (K + 7) * E1 *
                 ep({Rational(24) * K * (K + 1) * (K + 2),
                     Rational(-2) * (Rational(25) * K * K * K + Rational(156) * K * K +
                                     Rational(239) * K + Rational(84)),
                     Rational(35) * K * K * K + Rational(285) * K * K + Rational(637) * K +
                         Rational(339),
                     Rational(-10) * (K + 1) * (K + 3) * (K + 5), (K + 1) * (K + 3) * (K + 5)});
        return t;
      };
      for (int n = 1; n <= 4; ++n) {
        auto polys = coulomb::energy_polynomials(coulomb::CoulombProblem(k, 0, n), n + 1);
        auto expect = rows(n);
        for (int j = 0; j <= n + 1; ++j)
          if (!(polys[static_cast<std::size_t>(j)] == expect[static_cast<std::size_t>(j)])) {
            detail = "row n=" + std::to_string(n) + " j=" + std::to_string(j) +
                     " k=" + std::to_string(k);
            return false;
          }
      }
    }
    return true;
  });

  // 4 ------------------------------------------------------------------
  criterion(4, "3-d reduction equals scaled Laguerre, roots to 1e-10", 5.0,
            [](std::string& detail) {
    auto red = coulomb::laguerre_reduction(8, Rational::pow_of_ten(-30));
    if (!red.identity_ok) {
      detail = "polynomial identity failed";
      return false;
    }
    if (!(red.max_root_gap <= 1e-10)) {
      detail = "root gap " + std::to_string(red.max_root_gap);
      return false;
    }
    return true;
  });

  // 5 ------------------------------------------------------------------
  criterion(5, "FD oracle agreement within 5e-4 with O(h^2) shrink", 60.0,
            [](std::string& detail) {
    struct Case { int n, k; };
    for (Case c : {Case{1, 3}, Case{1, 5}, Case{2, 5}, Case{3, 3}}) {
      coulomb::CoulombProblem prob(c.k, 0, c.n);
      auto lines = coulomb::spectrum(prob, Rational::pow_of_ten(-30));
      for (const auto& line : lines) {
        double v = line.coupling_v.to_double();
        double target = line.energy.to_double();
        auto gap_at = [&](int points) {
          auto eigs = oracle::fd_spectrum(v, c.k, oracle::FdGrid::standard(40.0, points), 6);
          double best = std::numeric_limits<double>::infinity();
          for (double e : eigs) best = std::min(best, std::abs(e - target));
          return best;
        };
        double g4 = gap_at(4000), g8 = gap_at(8000);
        if (!(g4 < 5e-4)) {
          detail = "gap " + std::to_string(g4) + " at n=" + std::to_string(c.n) +
                   " k=" + std::to_string(c.k);
          return false;
        }
        double ratio = g4 / g8;
        if (!(ratio > 3.2 && ratio < 4.8)) {
          detail = "shrink ratio " + std::to_string(ratio) + " at n=" + std::to_string(c.n) +
                   " k=" + std::to_string(c.k);
          return false;
        }
      }
    }
    return true;
  });

  // 6 ------------------------------------------------------------------
  criterion(6, "orthogonal-family identities on 50 seeded tuples (exact)", 30.0,
            [](std::string& detail) {
    verify::Rng rng(20250814);
    for (int t = 0; t < 50; ++t) {
      GcheParams p = verify::random_params(rng);
      int n = 1 + static_cast<int>(rng.next() % 5);
      auto seq = orthopoly::finite_sequence(p, n, n + 5);
      Rational z1 = rng.rational(6, 3), z2 = rng.rational(6, 3);
      if (z1 == z2) z2 += Rational(1, 9);

      for (int m = 1; m <= n - 1; ++m) {
        auto [lhs, rhs] = orthopoly::christoffel_darboux(seq, z1, z2, m);
        auto [clhs, crhs] = orthopoly::christoffel_darboux_confluent(seq, z2, m);
        if (!(lhs == rhs) || !(clhs == crhs)) {
          detail = "CD gap nonzero, tuple " + std::to_string(t);
          return false;
        }
      }
      orthopoly::NormTable norm;
      try {
        norm = orthopoly::norms(p, n, n + 5);  // throws if closed != recursion
      } catch (const std::logic_error&) {
        detail = "norm closed/recursion mismatch, tuple " + std::to_string(t);
        return false;
      }
      for (int k = n + 1; k <= n + 5; ++k)
        if (!norm.values[static_cast<std::size_t>(k)].is_zero()) {
          detail = "norm tail nonzero, tuple " + std::to_string(t);
          return false;
        }
      auto mu = orthopoly::moments(p, n, 2 * n);
      bool mom = mu.values[0] == Rational(1);
      if (n >= 1) {
        mom = mom && mu.values[1] == Rational(0);
        mom = mom && mu.values[2] == -Rational(n) * p.beta0 * p.beta2;
      }
      if (n >= 2) {
        mom = mom && mu.values[3] == -Rational(n) * p.beta0 * p.beta1 * p.beta2;
        Rational mu4 = Rational(n) * p.beta0 * p.beta2 *
                       (Rational(2 * (n - 1)) * p.alpha1 * p.beta2 +
                        Rational(3 * n - 2) * p.beta0 * p.beta2 - p.beta1 * p.beta1);
        mom = mom && mu.values[4] == mu4;
      }
      if (!mom) {
        detail = "moment mismatch, tuple " + std::to_string(t);
        return false;
      }
      try {
        auto fac = orthopoly::factorize(p, n, n + 5);
        if (!fac.ok) return false;
      } catch (const factorization_error&) {
        detail = "nonzero factorization remainder, tuple " + std::to_string(t);
        return false;
      }
      auto qrep = orthopoly::quotient_norms_and_cd(p, n, 4, z1, z2);
      if (!qrep.all_pass) {
        detail = "quotient-family identity failed, tuple " + std::to_string(t);
        return false;
      }
    }
    return true;
  });

  // 7 ------------------------------------------------------------------
  criterion(7, "determinant equivalence (n <= 6) and strict interlacing", 10.0,
            [](std::string& detail) {
    verify::Rng rng(97);
    for (int n = 0; n <= 6; ++n) {
      GcheParams p = verify::random_params(rng);
      auto minors = heun::determinant_sequence(p, n);
      auto det = testor::cofactor_determinant(testor::dense_jacobi_matrix(p, n));
      if (!(minors.at(n + 1) == det)) {
        detail = "determinant mismatch at n=" + std::to_string(n);
        return false;
      }
    }
    for (int t = 0; t < 10; ++t) {
      GcheParams p(rng.rational(4, 3, false), rng.rational(5, 3, true, true),
                   -rng.rational(5, 3, true, true), rng.rational(5, 3, false),
                   rng.rational(5, 3, true, true));
      int n = 2 + static_cast<int>(rng.next() % 5);  // 2..6
      auto minors = heun::determinant_sequence(p, n);
      auto rb = isolate_real_roots(minors.at(n + 1), Rational::pow_of_ten(-40));
      if (rb.size() != static_cast<std::size_t>(n) + 1) {
        detail = "root count at tuple " + std::to_string(t);
        return false;
      }
      for (std::size_t i = 0; i + 1 < rb.size(); ++i)
        if (count_real_roots(minors.at(n), rb[i].hi, rb[i + 1].lo) != 1) {
          detail = "interlacing violated at tuple " + std::to_string(t);
          return false;
        }
      for (const auto& b : rb)
        if (!b.exact && count_real_roots(minors.at(n), b.lo, b.hi) != 0) {
          detail = "minor root inside a bracket at tuple " + std::to_string(t);
          return false;
        }
    }
    return true;
  });

  // 8 ------------------------------------------------------------------
  criterion(8, "appendix closed forms vs quadrature (1e-8) and Gram orthogonality", 60.0,
            [](std::string& detail) {
    verify::Rng rng(4711);
    for (int t = 0; t < 20; ++t) {
      bool infinite = (t % 2 == 0);
      GcheParams p = verify::random_weight_params(rng, infinite);
      auto w = weights::RadialWeight::from_params(p);
      int ij = static_cast<int>(rng.next() % 4);
      double closed = weights::overlap_moment_closed(w, ij, 0);
      auto quad = weights::overlap_moment_quadrature(w, ij, 0);
      double rel = std::abs(closed - quad.value) / std::max(1e-300, std::abs(closed));
      if (!(rel <= 1e-8)) {
        detail = "tuple " + std::to_string(t) + " rel " + std::to_string(rel);
        return false;
      }
    }
    auto gram_for = [&](const GcheParams& p, int n) {
      auto sc = heun::solve_epsilon0(p, n, kTol);
      std::vector<heun::PolySolution> sols;
      for (std::size_t i = 0; i < sc.epsilon0_roots.size(); ++i)
        sols.push_back(heun::polynomial_solution(p, n, sc.epsilon0_roots[i].approx,
                                                 static_cast<int>(i) + 1));
      return weights::eigenfunction_gram(p, sols).max_offdiagonal_normalized;
    };
    GcheParams cmap(Rational(1), Rational(1), Rational(-2), Rational(0), Rational(2));
    GcheParams gen(Rational(1, 2), Rational(1), Rational(-1), Rational(3, 2), Rational(2));
    Rational e(736237384174027LL, 1000000000000000LL);
    GcheParams img(Rational(1), Rational(1), Rational(-2) * e, Rational(4) - Rational(2) * e,
                   Rational(4));
    for (const GcheParams* p : {&cmap, &gen, &img}) {
      int n = (p == &cmap) ? 1 : 2;
      double off = gram_for(*p, n);
      if (!(off <= 1e-8)) {
        detail = "Gram offdiagonal " + std::to_string(off);
        return false;
      }
    }
    return true;
  });

  std::printf("%s: %d criterion(s) failed\n", g_failures == 0 ? "ALL PASS" : "FAILURES",
              g_failures);
  return g_failures == 0 ? 0 : 1;
}
