#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>

#include "heunspec/record.hpp"

using namespace heunspec;

namespace {

record::Json sample_gche_record() {
  GcheParams p(Rational(1), Rational(1), Rational(-2), Rational(0), Rational(2));
  auto sc = heun::solve_epsilon0(p, 1, Rational::pow_of_ten(-50));
  std::vector<heun::PolySolution> sols;
  std::vector<double> residuals;
  for (std::size_t i = 0; i < sc.epsilon0_roots.size(); ++i) {
    sols.push_back(
        heun::polynomial_solution(p, 1, sc.epsilon0_roots[i].approx, static_cast<int>(i) + 1));
    residuals.push_back(0.0);
  }
  return record::gche_result(p, 1, 50, sc, sols, residuals);
}

} // namespace

TEST_CASE("gche record carries schema, annotations, exact roots") {
  auto j = sample_gche_record();
  CHECK(j["schema_version"] == "1");
  CHECK(j["mode"] == "gche");
  CHECK(j["precision"]["digits"] == 50);
  CHECK(j["precision"]["tolerance"] == "1e-50");
  REQUIRE(j["epsilon0_roots"].size() == 2);
  CHECK(j["epsilon0_roots"][0]["rational"] == "-2");
  CHECK(j["epsilon0_roots"][1]["rational"] == "2");
  CHECK(j["epsilon0_roots"][1]["exact"] == true);
  CHECK(j["epsilon0_roots"][1]["digits"] == 50);
  CHECK(j["epsilon1"]["rational"] == "-2");
  // every numeric field carries annotation: spot-check a coefficient
  CHECK(j["solutions"][0]["coefficients"][0].contains("digits"));
  CHECK(j["solutions"][0]["residual_sup"].contains("tolerance"));
}

TEST_CASE("coulomb record includes the exact critical polynomial") {
  coulomb::CoulombProblem prob(3, 1, 2);  // k = 5
  auto lines = coulomb::spectrum(prob, Rational::pow_of_ten(-50));
  auto rc = coulomb::reduced_critical(prob);
  auto j = record::coulomb_result(prob, 50, rc, lines);
  CHECK(j["problem"]["k"] == 5);
  CHECK(j["critical_polynomial"]["reduced"]["coefficients"].size() == 3);
  // (k+1)E^2 - 3(k+1)E + 2k at k=5 -> primitive 3E^2 - 9E + 5
  auto& c = j["critical_polynomial"]["reduced"]["coefficients"];
  CHECK(c[0] == "5");
  CHECK(c[1] == "-9");
  CHECK(c[2] == "3");
  REQUIRE(j["lines"].size() == 2);
  CHECK(j["lines"][0]["node_count"] == 1);
  CHECK(j["lines"][1]["node_count"] == 0);
}

TEST_CASE("round trip is field-for-field identical") {
  auto j = sample_gche_record();
  auto reparsed = record::Json::parse(j.dump(2));
  CHECK(reparsed == j);
  CHECK(reparsed.dump(2) == j.dump(2));
}

TEST_CASE("timestamps honor SOURCE_DATE_EPOCH") {
  setenv("SOURCE_DATE_EPOCH", "1700000000", 1);
  CHECK(record::iso_timestamp() == "2023-11-14T22:13:20Z");
  auto a = sample_gche_record();
  auto b = sample_gche_record();
  CHECK(a.dump(2) == b.dump(2));  // byte-identical under a pinned epoch
  unsetenv("SOURCE_DATE_EPOCH");
}

TEST_CASE("decimal annotations match the requested digit count") {
  Rational r(2, 3);
  auto f = record::rational_field(r, 12);
  CHECK(f["decimal"] == "0.666666666667");
  CHECK(f["rational"] == "2/3");
  CHECK(f["digits"] == 12);
}
