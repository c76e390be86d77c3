// heunspec - polynomial spectra of the generalized confluent Heun equation
// and the d-dimensional softcore Coulomb potential.
//
// Subcommands:
//   solve-gche      solvability condition, epsilon0 roots, coefficients
//   solve-coulomb   closed-form spectral lines (optionally FD-verified)
//   verify          property suites (ortho / coulomb / weights / all)
//   plot-data       CSV emission for the standard figures

#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "heunspec/record.hpp"
#include "heunspec/verify.hpp"

namespace fs = std::filesystem;
using namespace heunspec;

namespace {

int default_digits() {
  if (const char* env = std::getenv("HEUNSPEC_DIGITS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end && *end == '\0' && v >= 5 && v <= 5000) return static_cast<int>(v);
  }
  return 50;
}

Rational parse_rational_flag(const std::string& token, const std::string& flag) {
  try {
    return Rational::from_string(token);
  } catch (const contract_error&) {
    throw CLI::ValidationError(flag, "expected a rational 'p' or 'p/q', got '" + token + "'");
  }
}

void emit(const record::Json& j, const std::string& out_path) {
  std::string text = j.dump(2);
  text += "\n";
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file " + out_path);
    f << text;
  }
}

std::vector<Rational> residual_sample_grid(const GcheParams& p) {
  std::vector<Rational> grid;
  bool finite = !p.alpha2.is_zero() && (p.alpha1 * p.alpha2).sign() < 0;
  if (finite) {
    Rational upper = -p.alpha1 / p.alpha2;
    for (int i = 1; i <= 8; ++i) grid.push_back(upper * Rational(i, 9));
  } else {
    for (long q : {10L, 2L, 1L}) grid.push_back(Rational(1, q));
    for (long v : {2L, 5L, 10L, 20L}) grid.push_back(Rational(v));
  }
  return grid;
}

int run_solve_gche(const std::string& a2, const std::string& a1, const std::string& b2,
                   const std::string& b1, const std::string& b0, int n, int digits,
                   const std::string& tol_str, const std::string& out_path) {
  GcheParams params(parse_rational_flag(a2, "--alpha2"), parse_rational_flag(a1, "--alpha1"),
                    parse_rational_flag(b2, "--beta2"), parse_rational_flag(b1, "--beta1"),
                    parse_rational_flag(b0, "--beta0"));
  Rational tol =
      tol_str.empty() ? Rational::pow_of_ten(-digits) : parse_rational_flag(tol_str, "--tol");
  auto sc = heun::solve_epsilon0(params, n, tol);
  std::vector<heun::PolySolution> sols;
  std::vector<double> residuals;
  auto grid = residual_sample_grid(params);
  for (std::size_t i = 0; i < sc.epsilon0_roots.size(); ++i) {
    auto sol = heun::polynomial_solution(params, n, sc.epsilon0_roots[i].approx,
                                         static_cast<int>(i) + 1);
    residuals.push_back(heun::ode_residual(params, sol, grid));
    sols.push_back(std::move(sol));
  }
  emit(record::gche_result(params, n, digits, sc, sols, residuals), out_path);
  return 0;
}

int run_solve_coulomb(int d, int ell, int n, int digits, bool verify_fd,
                      const std::string& out_path) {
  if (d <= 1) throw CLI::ValidationError("--d", "dimension must be > 1");
  if (ell < 0) throw CLI::ValidationError("--ell", "angular momentum must be >= 0");
  if (n < 1) throw CLI::ValidationError("--nn", "degree must be >= 1");
  coulomb::CoulombProblem prob(d, ell, n);
  auto lines = coulomb::spectrum(prob, Rational::pow_of_ten(-digits));
  auto rc = coulomb::reduced_critical(prob);
  record::Json fd;
  if (verify_fd) {
    fd = record::Json::array();
    for (const auto& line : lines) {
      auto grid = oracle::FdGrid::standard(40.0, 4000);
      auto eigs = oracle::fd_spectrum(line.coupling_v.to_double(), prob.k(), grid, 6);
      double target = line.energy.to_double();
      double best = eigs.front();
      int best_idx = 0;
      for (std::size_t i = 0; i < eigs.size(); ++i)
        if (std::abs(eigs[i] - target) < std::abs(best - target)) {
          best = eigs[i];
          best_idx = static_cast<int>(i);
        }
      char gap[32], eig[40];
      std::snprintf(gap, sizeof gap, "%.3e", std::abs(best - target));
      std::snprintf(eig, sizeof eig, "%.17g", best);
      fd.push_back(record::Json{{"line_index", line.index},
                                {"matched_eigenvalue_index", best_idx},
                                {"fd_eigenvalue", eig},
                                {"gap", gap},
                                {"tolerance", "5e-4"},
                                {"grid", record::Json{{"r_max", "40"}, {"points", 4000}}}});
    }
  }
  emit(record::coulomb_result(prob, digits, rc, lines, fd), out_path);
  return 0;
}

void print_suite(const verify::Suite& s, const std::string& name, std::uint64_t seed) {
  record::Json j;
  j["suite"] = name;
  j["seed"] = seed;
  record::Json checks = record::Json::array();
  for (const auto& c : s.checks) {
    char gap[32];
    std::snprintf(gap, sizeof gap, "%.3e", c.gap);
    checks.push_back(record::Json{
        {"name", c.name}, {"pass", c.pass}, {"gap", gap}, {"detail", c.detail}});
  }
  j["checks"] = std::move(checks);
  j["total"] = s.checks.size();
  j["all_pass"] = s.all_pass();
  std::cout << j.dump(2) << "\n";
}

int run_verify(const std::string& suite, std::uint64_t seed, bool skip_fd) {
  verify::Suite s;
  if (suite == "ortho") s = verify::run_ortho_suite(seed);
  else if (suite == "coulomb") s = verify::run_coulomb_suite(seed, !skip_fd);
  else if (suite == "weights") s = verify::run_weights_suite(seed);
  else if (suite == "all") s = verify::run_all(seed, !skip_fd);
  else throw CLI::ValidationError("--suite", "unknown suite '" + suite + "'");
  print_suite(s, suite, seed);
  return s.all_pass() ? 0 : 3;
}

void write_csv_line(std::FILE* f, double r, double V, double psi, double E) {
  std::fprintf(f, "%.17g,%.17g,%.17g,%.17g\n", r, V, psi, E);
}

void write_wavefunction_csv(const fs::path& path, const coulomb::CoulombProblem& prob,
                            const coulomb::SpectralLine& line, int samples, double r_max) {
  std::FILE* f = std::fopen(path.string().c_str(), "wb");
  if (!f) throw std::runtime_error("cannot open " + path.string());
  std::fprintf(f, "r,V,psi,E\n");
  double v = line.coupling_v.to_double();
  double E = line.energy.to_double();
  for (int i = 1; i <= samples; ++i) {
    double r = r_max * i / samples;
    write_csv_line(f, r, -v / (r + 1.0), coulomb::wavefunction(line, prob, r), E);
  }
  std::fclose(f);
  std::cout << path.string() << "\n";
}

int run_plot_data(int figure, int k, int n, int root_index, int samples,
                  const std::string& out_dir) {
  fs::path dir(out_dir);
  fs::create_directories(dir);
  const Rational tol = Rational::pow_of_ten(-50);
  if (figure == 1) {
    for (int kk : {3, 4, 5}) {
      coulomb::CoulombProblem prob(kk, 0, 1);
      auto lines = coulomb::spectrum(prob, tol);
      write_wavefunction_csv(dir / ("fig1_k" + std::to_string(kk) + ".csv"), prob,
                             lines.front(), samples, 10.0);
    }
    return 0;
  }
  if (figure == 2) {
    coulomb::CoulombProblem prob(5, 0, 2);
    auto lines = coulomb::spectrum(prob, tol);
    for (const auto& line : lines)
      write_wavefunction_csv(dir / ("fig2_k5_n2_root" + std::to_string(line.index) + ".csv"),
                             prob, line, samples, 12.0);
    return 0;
  }
  if (figure == 3) {
    fs::path path = dir / "fig3_laguerre_roots.csv";
    std::FILE* f = std::fopen(path.string().c_str(), "wb");
    if (!f) throw std::runtime_error("cannot open " + path.string());
    std::fprintf(f, "n,index,eroot,E\n");
    for (int nn = 1; nn <= 6; ++nn) {
      auto lag = oracle::laguerre_poly(nn, 1, Var::energy)
                     .compose_affine(Rational(2), Rational(0), Var::energy);
      auto roots = isolate_real_roots(lag, tol);
      for (std::size_t i = 0; i < roots.size(); ++i) {
        double e = roots[i].approx.to_double();
        std::fprintf(f, "%d,%zu,%.17g,%.17g\n", nn, i + 1, e, -e * e);
      }
    }
    std::fclose(f);
    std::cout << path.string() << "\n";
    return 0;
  }
  // explicit (k, n, root-index) mode
  if (figure != 0) throw CLI::ValidationError("--figure", "figure id must be 1, 2 or 3");
  if (k < 2 || n < 1 || root_index < 1)
    throw CLI::ValidationError("plot-data", "explicit mode needs --k >= 2, --nn >= 1, --root-index >= 1");
  coulomb::CoulombProblem prob(k, 0, n);
  auto lines = coulomb::spectrum(prob, tol);
  if (root_index > static_cast<int>(lines.size()))
    throw CLI::ValidationError("--root-index", "only " + std::to_string(lines.size()) +
                                                   " lines available");
  write_wavefunction_csv(dir / ("plot_k" + std::to_string(k) + "_n" + std::to_string(n) +
                                "_root" + std::to_string(root_index) + ".csv"),
                         prob, lines[static_cast<std::size_t>(root_index - 1)], samples, 12.0);
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"polynomial solutions and spectra of the generalized confluent Heun equation"};
  app.require_subcommand(1);

  // solve-gche
  std::string a2, a1, b2, b1, b0, tol_str, out_path;
  int n = 0, digits = default_digits();
  auto* gche = app.add_subcommand("solve-gche", "solve the polynomial condition for given coefficients");
  gche->add_option("--alpha2", a2, "alpha2 as p or p/q")->required();
  gche->add_option("--alpha1", a1, "alpha1 as p or p/q")->required();
  gche->add_option("--beta2", b2, "beta2 as p or p/q")->required();
  gche->add_option("--beta1", b1, "beta1 as p or p/q")->required();
  gche->add_option("--beta0", b0, "beta0 as p or p/q")->required();
  gche->add_option("--n", n, "polynomial degree")->required()->check(CLI::NonNegativeNumber);
  gche->add_option("--digits", digits, "root refinement decimal digits");
  gche->add_option("--tol", tol_str, "explicit refinement tolerance (rational)");
  gche->add_option("--out", out_path, "write the JSON record here instead of stdout");

  // solve-coulomb
  int d = 0, ell = 0, nn = 0, digits_c = default_digits();
  bool verify_fd = false;
  std::string out_path_c;
  auto* coul = app.add_subcommand("solve-coulomb", "closed-form softcore Coulomb spectral lines");
  coul->add_option("--d", d, "dimension (> 1)")->required();
  coul->add_option("--ell", ell, "angular momentum quantum number");
  coul->add_option("--nn", nn, "polynomial degree n")->required();
  coul->add_flag("--verify-fd", verify_fd, "cross-check each line against the FD eigensolver");
  coul->add_option("--digits", digits_c, "root refinement decimal digits");
  coul->add_option("--out", out_path_c, "write the JSON record here instead of stdout");

  // verify
  std::string suite = "all";
  std::uint64_t seed = 0;
  bool skip_fd = false;
  auto* ver = app.add_subcommand("verify", "run property suites and report pass/fail with gaps");
  ver->add_option("--suite", suite, "ortho | coulomb | weights | all");
  ver->add_option("--seed", seed, "seed for randomized parameter draws");
  ver->add_flag("--skip-fd", skip_fd, "skip the finite-difference cross-checks");

  // plot-data
  int figure = 0, pk = 0, pn = 0, proot = 0, samples = 400;
  std::string out_dir = ".";
  auto* plot = app.add_subcommand("plot-data", "emit CSV data for the standard figures");
  plot->add_option("--figure", figure, "figure id: 1, 2 or 3");
  plot->add_option("--k", pk, "explicit mode: k = d + 2*ell");
  plot->add_option("--nn", pn, "explicit mode: degree n");
  plot->add_option("--root-index", proot, "explicit mode: 1-based line index");
  plot->add_option("--samples", samples, "rows per CSV")->check(CLI::PositiveNumber);
  plot->add_option("--out-dir", out_dir, "output directory");

  try {
    app.parse(argc, argv);
    if (gche->parsed())
      return run_solve_gche(a2, a1, b2, b1, b0, n, digits, tol_str, out_path);
    if (coul->parsed())
      return run_solve_coulomb(d, ell, nn, digits_c, verify_fd, out_path_c);
    if (ver->parsed()) return run_verify(suite, seed, skip_fd);
    if (plot->parsed()) return run_plot_data(figure, pk, pn, proot, samples, out_dir);
    return 1;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  } catch (const contract_error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const solvability_error& e) {
    std::cerr << "solvability failure: " << e.what() << "\n";
    return 2;
  } catch (const accuracy_error& e) {
    std::cerr << "accuracy failure: " << e.what() << " (achieved " << e.achieved_error << ")\n";
    return 3;
  } catch (const resolution_error& e) {
    std::cerr << "oracle failure: " << e.what() << "\n";
    return 3;
  } catch (const std::domain_error& e) {
    std::cerr << "mathematical failure: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
