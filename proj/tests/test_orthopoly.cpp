#include <catch2/catch_amalgamated.hpp>

#include "heunspec/orthopoly.hpp"
#include "heunspec/verify.hpp"
#include "oracles.hpp"

using namespace heunspec;
using orthopoly::finite_sequence;

TEST_CASE("low-order members of the finite sequence") {
  verify::Rng rng(2718);
  for (int t = 0; t < 12; ++t) {
    GcheParams p = verify::random_params(rng);
    const Rational &b2 = p.beta2, &b1 = p.beta1, &b0 = p.beta0;
    for (int n = 1; n <= 4; ++n) {
      auto seq = finite_sequence(p, n, 2);
      CHECK(seq.at(1) == RationalPoly(Var::zeta, {Rational(0), Rational(1)}));  // P_1 = z
      CHECK(seq.at(2) == RationalPoly(Var::zeta, {Rational(n) * b2 * b0, -b1, Rational(1)}));
    }
  }
}

TEST_CASE("monicity and degree for all members") {
  verify::Rng rng(606);
  GcheParams p = verify::random_params(rng);
  auto seq = finite_sequence(p, 3, 9);
  for (int j = 0; j <= 9; ++j) {
    CHECK(seq.at(j).degree() == j);
    CHECK(seq.at(j).leading() == Rational(1));
  }
}

TEST_CASE("coefficient bridge scale factors") {
  verify::Rng rng(11);
  GcheParams p = verify::random_params(rng);
  auto seq = finite_sequence(p, 3, 3);
  auto s = orthopoly::coefficient_bridge(seq);
  CHECK(s[0] == Rational(1));
  CHECK(s[1] == p.beta0.inverse());
  CHECK(s[2] == (Rational(2) * p.beta0 * (p.beta0 + p.alpha1)).inverse());

  // undefined cases
  GcheParams zero_a1(Rational(1), Rational(0), Rational(1), Rational(1), Rational(1));
  auto seq0 = finite_sequence(zero_a1, 2, 2);
  CHECK_THROWS_AS(orthopoly::coefficient_bridge(seq0), bridge_undefined);
  GcheParams bad_pivot(Rational(1), Rational(-1), Rational(1), Rational(1), Rational(2));
  auto seqb = finite_sequence(bad_pivot, 4, 4);
  CHECK_THROWS_AS(orthopoly::coefficient_bridge(seqb), bridge_undefined);
}

TEST_CASE("bridge reproduces the solution coefficients symbolically") {
  verify::Rng rng(13);
  for (int n = 1; n <= 4; ++n) {
    GcheParams p = verify::random_params(rng);
    auto seq = finite_sequence(p, n, n);
    auto s = orthopoly::coefficient_bridge(seq);
    auto c = testor::symbolic_coefficients(p, n, n);
    for (int j = 0; j <= n; ++j)
      CHECK(c[static_cast<std::size_t>(j)] == s[static_cast<std::size_t>(j)] * seq.at(j));
  }
}

TEST_CASE("christoffel-darboux: degenerate m = 0") {
  verify::Rng rng(21);
  GcheParams p = verify::random_params(rng);
  auto seq = finite_sequence(p, 3, 1);
  auto [lhs, rhs] = orthopoly::christoffel_darboux(seq, Rational(1), Rational(2), 0);
  CHECK(lhs == Rational(1));
  CHECK(rhs == Rational(1));
  auto [lhs2, rhs2] = orthopoly::christoffel_darboux_confluent(seq, Rational(5, 3), 0);
  CHECK(lhs2 == Rational(1));
  CHECK(rhs2 == Rational(1));
}

TEST_CASE("christoffel-darboux identities hold exactly") {
  verify::Rng rng(22);
  for (int t = 0; t < 10; ++t) {
    GcheParams p = verify::random_params(rng);
    int n = static_cast<int>(rng.range(2, 5));
    auto seq = finite_sequence(p, n, n);
    Rational z1 = rng.rational(6, 3), z2 = rng.rational(6, 3);
    if (z1 == z2) z2 += Rational(1, 7);
    for (int m = 1; m <= n - 1; ++m) {
      auto [lhs, rhs] = orthopoly::christoffel_darboux(seq, z1, z2, m);
      CHECK(lhs == rhs);
      auto [clhs, crhs] = orthopoly::christoffel_darboux_confluent(seq, z1, m);
      CHECK(clhs == crhs);
    }
  }
  // explicit coulomb-image case: n=2, k=5 parameters at E=1
  GcheParams pc(Rational(1), Rational(1), Rational(-2), Rational(2), Rational(4));
  auto seq = finite_sequence(pc, 2, 2);
  auto [lhs, rhs] = orthopoly::christoffel_darboux(seq, Rational(1), Rational(2), 1);
  CHECK(lhs == rhs);
  CHECK_THROWS_AS(orthopoly::christoffel_darboux(seq, Rational(1), Rational(1), 1),
                  contract_error);
}

TEST_CASE("norms: closed form, recursion, and vanishing tail") {
  verify::Rng rng(23);
  for (int t = 0; t < 10; ++t) {
    GcheParams p = verify::random_params(rng);
    int n = static_cast<int>(rng.range(1, 5));
    auto table = orthopoly::norms(p, n, n + 5);  // throws if the two routes disagree
    CHECK(table.values[0] == Rational(1));
    CHECK(table.values[1] == -Rational(n) * p.beta2 * p.beta0);
    for (int k = n + 1; k <= n + 5; ++k)
      CHECK(table.values[static_cast<std::size_t>(k)] == Rational(0));
  }
}

TEST_CASE("moments: pinned values and under-determination") {
  verify::Rng rng(24);
  for (int t = 0; t < 10; ++t) {
    GcheParams p = verify::random_params(rng);
    int n = static_cast<int>(rng.range(2, 5));
    auto mu = orthopoly::moments(p, n, 2 * n);
    CHECK(mu.values[0] == Rational(1));
    CHECK(mu.values[1] == Rational(0));
    CHECK(mu.values[2] == -Rational(n) * p.beta0 * p.beta2);
    CHECK(mu.values[3] == -Rational(n) * p.beta0 * p.beta1 * p.beta2);
    // cross-check mu_3 = beta1 * eta_1^2
    CHECK(mu.values[3] == p.beta1 * orthopoly::norm_product(p, n, 1));
    Rational mu4 = Rational(n) * p.beta0 * p.beta2 *
                   (Rational(2 * (n - 1)) * p.alpha1 * p.beta2 +
                    Rational(3 * n - 2) * p.beta0 * p.beta2 - p.beta1 * p.beta1);
    CHECK(mu.values[4] == mu4);
    CHECK_THROWS_AS(orthopoly::moments(p, n, 2 * n + 1), underdetermined_error);
  }
}

TEST_CASE("weighted identities") {
  verify::Rng rng(25);
  GcheParams p = verify::random_params(rng);
  int n = 4;
  for (int k = 0; k <= n; ++k) {
    auto rep = orthopoly::weighted_identities(p, n, k);
    for (const auto& c : rep.checks) {
      INFO(c.name);
      CHECK(c.pass);
    }
  }
  // spot values: k=1 first-moment identity equals beta1 * G_1
  auto mu = orthopoly::moments(p, n, 4);
  auto seq = finite_sequence(p, n, 1);
  RationalPoly z = RationalPoly::monomial(Var::zeta, Rational(1), 1);
  CHECK(orthopoly::apply_moments(mu, z * seq.at(1) * seq.at(1)) ==
        p.beta1 * orthopoly::norm_product(p, n, 1));
  // k=0 second-moment identity reduces to mu_2
  CHECK(orthopoly::apply_moments(mu, z * z) == -Rational(n) * p.beta0 * p.beta2);
  CHECK_THROWS_AS(orthopoly::weighted_identities(p, n, n + 1), contract_error);
}

TEST_CASE("factorization against the printed n=1 and n=2 lists") {
  verify::Rng rng(26);
  for (int t = 0; t < 8; ++t) {
    GcheParams p = verify::random_params(rng);
    const Rational &a2 = p.alpha2, &a1 = p.alpha1, &b2 = p.beta2, &b1 = p.beta1, &b0 = p.beta0;

    auto f1 = orthopoly::factorize(p, 1, 6);
    CHECK(f1.ok);
    // Q_1^1 = z - 2 b1 - 2 a2
    CHECK(f1.quotients.at(1) ==
          RationalPoly(Var::zeta, {-Rational(2) * b1 - Rational(2) * a2, Rational(1)}));
    // Q_2^1 = z^2 - (5 b1 + 8 a2) z + 6 b1^2 - 3 b2 b0 + 18 b1 a2 + 12 a2^2 - 6 b2 a1
    RationalPoly q21(Var::zeta,
                     {Rational(6) * b1 * b1 - Rational(3) * b2 * b0 + Rational(18) * b1 * a2 +
                          Rational(12) * a2 * a2 - Rational(6) * b2 * a1,
                      -(Rational(5) * b1 + Rational(8) * a2), Rational(1)});
    CHECK(f1.quotients.at(2) == q21);

    auto f2 = orthopoly::factorize(p, 2, 7);
    CHECK(f2.ok);
    // P_4^2 = (z - 3 b1 - 6 a2) P_3^2
    CHECK(f2.quotients.at(1) ==
          RationalPoly(Var::zeta, {-Rational(3) * b1 - Rational(6) * a2, Rational(1)}));

    // division route equals the recurrence route for the whole range
    auto seq = finite_sequence(p, 2, 7);
    for (int k = 0; k <= 4; ++k) {
      auto [q, r] = divmod(seq.at(k + 3), f2.critical);
      CHECK(r.is_zero());
      CHECK(q == f2.quotients.at(k));
    }
  }
  GcheParams p(Rational(1), Rational(1), Rational(-1), Rational(0), Rational(1));
  CHECK_THROWS_AS(orthopoly::factorize(p, 2, 2), contract_error);  // m < n+1
}

TEST_CASE("quotient norms and CD report") {
  verify::Rng rng(27);
  for (int t = 0; t < 6; ++t) {
    GcheParams p = verify::random_params(rng);
    int n = static_cast<int>(rng.range(1, 4));
    auto rep = orthopoly::quotient_norms_and_cd(p, n, 4, Rational(0), Rational(1));
    for (const auto& c : rep.checks) {
      INFO(c.name);
      CHECK(c.pass);
    }
    // G^Q_1 example: (n+2)(b2 a1)(n+1+b0/a1)
    CHECK(orthopoly::quotient_lambda(p, n, 1) ==
          Rational(n + 2) * (p.beta2 * p.alpha1) * (Rational(n + 1) + p.beta0 / p.alpha1));
  }
}

TEST_CASE("critical polynomial shares roots with the characteristic minor") {
  verify::Rng rng(28);
  for (int n = 1; n <= 5; ++n) {
    GcheParams p = verify::random_params(rng);
    auto seq = finite_sequence(p, n, n + 1);
    auto minors = heun::determinant_sequence(p, n);
    RationalPoly expected = (n % 2 == 0) ? -seq.at(n + 1) : seq.at(n + 1);
    CHECK(minors.at(n + 1) == expected);
  }
}
