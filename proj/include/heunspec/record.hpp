#pragma once

#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <string>
#include <vector>

#include <json.hpp>

#include "heunspec/coulomb.hpp"
#include "heunspec/heun.hpp"

namespace heunspec {
namespace record {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "1";

/// ISO-8601 UTC timestamp. Honors SOURCE_DATE_EPOCH for reproducible output.
inline std::string iso_timestamp() {
  std::time_t t = std::time(nullptr);
  if (const char* sde = std::getenv("SOURCE_DATE_EPOCH")) {
    char* end = nullptr;
    long long v = std::strtoll(sde, &end, 10);
    if (end && *end == '\0') t = static_cast<std::time_t>(v);
  }
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

/// Exact value plus decimal rendering with its digit count.
inline Json rational_field(const Rational& r, int digits) {
  return Json{{"rational", r.to_string()},
              {"decimal", r.decimal_string(static_cast<std::size_t>(digits))},
              {"digits", digits}};
}

inline Json root_field(const RootBracket& rb, int digits) {
  Json j = rational_field(rb.approx, digits);
  j["exact"] = rb.exact;
  j["bracket"] = Json::array({rb.lo.to_string(), rb.hi.to_string()});
  return j;
}

inline Json poly_field(const RationalPoly& p) {
  Json coeffs = Json::array();
  for (int i = 0; i <= p.degree(); ++i) coeffs.push_back(p.coeff(i).to_string());
  return Json{{"variable", var_name(p.var())}, {"coefficients", coeffs}};
}

inline Json gche_result(const GcheParams& params, int n, int digits,
                        const heun::SolvabilityCondition& sc,
                        const std::vector<heun::PolySolution>& solutions,
                        const std::vector<double>& residuals) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["created_at"] = iso_timestamp();
  j["mode"] = "gche";
  j["problem"] = Json{{"alpha2", params.alpha2.to_string()},
                      {"alpha1", params.alpha1.to_string()},
                      {"beta2", params.beta2.to_string()},
                      {"beta1", params.beta1.to_string()},
                      {"beta0", params.beta0.to_string()},
                      {"n", n}};
  j["precision"] = Json{{"digits", digits},
                        {"tolerance", "1e-" + std::to_string(digits)}};
  j["epsilon1"] = rational_field(sc.epsilon1, digits);
  j["full_count_guaranteed"] = sc.full_count_guaranteed;
  Json roots = Json::array();
  for (std::size_t i = 0; i < sc.epsilon0_roots.size(); ++i) {
    Json r = root_field(sc.epsilon0_roots[i], digits);
    r["index"] = static_cast<int>(i) + 1;
    roots.push_back(std::move(r));
  }
  j["epsilon0_roots"] = std::move(roots);
  Json sols = Json::array();
  for (std::size_t i = 0; i < solutions.size(); ++i) {
    const auto& s = solutions[i];
    Json coeffs = Json::array();
    for (const auto& c : s.coeffs) coeffs.push_back(rational_field(c, digits));
    const int residual_digits = digits > 11 ? digits - 10 : 1;
    char res[40];
    std::snprintf(res, sizeof res, "%.17g", residuals.at(i));
    sols.push_back(Json{{"root_index", s.root_index},
                        {"coefficients", coeffs},
                        {"overflow_next_coefficient", rational_field(s.overflow, digits)},
                        {"residual_sup",
                         Json{{"value", res},
                              {"tolerance", "1e-" + std::to_string(residual_digits)}}}});
  }
  j["solutions"] = std::move(sols);
  return j;
}

inline Json coulomb_result(const coulomb::CoulombProblem& prob, int digits,
                           const coulomb::ReducedCritical& rc,
                           const std::vector<coulomb::SpectralLine>& lines,
                           const Json& fd_comparison = Json()) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["created_at"] = iso_timestamp();
  j["mode"] = "coulomb";
  j["problem"] = Json{{"d", prob.dimension},
                      {"ell", prob.ell},
                      {"k", prob.k()},
                      {"n", prob.degree_n}};
  j["precision"] = Json{{"digits", digits},
                        {"tolerance", "1e-" + std::to_string(digits)}};
  j["critical_polynomial"] = Json{{"raw", poly_field(rc.raw)},
                                  {"reduced", poly_field(rc.reduced)},
                                  {"stripped_power", rc.stripped_power},
                                  {"content", rc.content.to_string()}};
  Json jl = Json::array();
  for (const auto& line : lines) {
    Json coeffs = Json::array();
    for (const auto& c : line.coeffs) coeffs.push_back(rational_field(c, digits));
    jl.push_back(Json{{"index", line.index},
                      {"energy_root", root_field(line.eroot, digits)},
                      {"coupling_v", rational_field(line.coupling_v, digits)},
                      {"energy", rational_field(line.energy, digits)},
                      {"coefficients", coeffs},
                      {"overflow_next_coefficient", rational_field(line.overflow, digits)},
                      {"node_count", line.node_count}});
  }
  j["lines"] = std::move(jl);
  if (!fd_comparison.is_null()) j["fd_comparison"] = fd_comparison;
  return j;
}

} // namespace record
} // namespace heunspec
