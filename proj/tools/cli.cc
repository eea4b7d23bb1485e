#include "cli.h"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <spdlog/sinks/ostream_sink.h>
#include <spdlog/spdlog.h>

#include "spinlattice/batch.h"
#include "spinlattice/example.h"
#include "spinlattice/io.h"
#include "spinlattice/verify.h"
#include "spinlattice/weyl_direct.h"
#include "spinlattice/weyl_inverse.h"

namespace spinlattice::cli {

namespace {

using io::Json;

struct Grid {
  Complex center{0.0, 0.0};
  double radius = 0.0;
  int count = 0;
};

struct TimeGrid {
  double from = 0.0;
  double to = 0.0;
  int steps = 0;
};

struct Config {
  std::string input;
  std::string output;
  std::string format = "json";
  std::vector<std::string> tol_overrides;
  std::vector<std::string> lambdas;
  std::string lambda_grid;
  std::string time_grid;
  std::string method = "auto";
  std::string sites = "1,3";
  std::vector<std::string> checks;
  int nmax = 20;
  std::uint64_t seed = 1;
  int triples = 10;
  double h = 2.0;
  bool serial = false;
};

std::vector<double> numbers(const std::string& text, std::size_t count, const std::string& flag) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    char* end = nullptr;
    const double v = std::strtod(item.c_str(), &end);
    if (item.empty() || *end != '\0') throw Error(ErrorCode::kParse, flag + ": '" + item + "' is not a number");
    out.push_back(v);
  }
  if (out.size() != count) {
    throw Error(ErrorCode::kParse, flag + " expects " + std::to_string(count) + " comma-separated values");
  }
  return out;
}

Tolerances tolerances(const Config& c) {
  Tolerances tol;
  for (const auto& kv : c.tol_overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw Error(ErrorCode::kParse, "--tol expects name=value, got '" + kv + "'");
    tol.set(kv.substr(0, eq), numbers(kv.substr(eq + 1), 1, "--tol " + kv.substr(0, eq))[0]);
  }
  return tol;
}

Complex parse_lambda(const std::string& text) {
  const auto v = numbers(text, 2, "--lambda");
  return {v[0], v[1]};
}

std::vector<Complex> lambda_grid(const Config& c, const ComplexMatrix& a) {
  if (c.lambda_grid.empty()) return default_grid(a);
  const auto v = numbers(c.lambda_grid, 4, "--lambda-grid");
  if (!(v[2] > 0.0) || v[3] < 1 || v[3] != std::floor(v[3])) {
    throw Error(ErrorCode::kPrecondition, "--lambda-grid needs a positive radius and count");
  }
  return circle_grid({v[0], v[1]}, v[2], static_cast<int>(v[3]));
}

std::vector<double> time_grid(const Config& c) {
  if (c.time_grid.empty()) throw Error(ErrorCode::kPrecondition, "evolve needs --time-grid a,b,k");
  const auto v = numbers(c.time_grid, 3, "--time-grid");
  if (v[2] < 1 || v[2] != std::floor(v[2])) throw Error(ErrorCode::kPrecondition, "--time-grid needs k ≥ 1");
  const int k = static_cast<int>(v[2]);
  std::vector<double> out;
  for (int i = 0; i < k; ++i) out.push_back(k == 1 ? v[0] : v[0] + (v[1] - v[0]) * i / (k - 1));
  return out;
}

SigmaMethod method(const Config& c) {
  if (c.method == "auto") return SigmaMethod::kAuto;
  if (c.method == "sylvester") return SigmaMethod::kSylvester;
  if (c.method == "ode") return SigmaMethod::kOde;
  throw Error(ErrorCode::kParse, "--method must be sylvester, ode or auto");
}

std::string shortest(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

int exit_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kParse:
    case ErrorCode::kDimension:
    case ErrorCode::kPrecondition:
    case ErrorCode::kAdmissibility:
    case ErrorCode::kInconsistent:
    case ErrorCode::kSpectrum:
    case ErrorCode::kPole:
      return kInputError;
    default:
      return kNumericFailure;
  }
}

// ---------------------------------------------------------------------------

int cmd_validate(const Config& c, std::ostream& out) {
  const Tolerances tol = tolerances(c);
  const AdmissibilityReport r = validate(io::triple_from_json(io::read_file(c.input), tol), tol);
  spdlog::info("classified as {}", to_string(r.triple_class));
  out << io::dump(io::to_json(r)) << '\n';
  return kOk;
}

int cmd_spins(const Config& c, std::ostream& out) {
  const Tolerances tol = tolerances(c);
  const LatticeState st = LatticeState::generate(io::triple_from_json(io::read_file(c.input), tol), c.nmax, tol);
  if (st.truncation()) spdlog::warn("{}", *st.truncation());
  if (c.format == "csv") {
    io::write_spins_csv(out, st);
  } else {
    out << io::dump(io::to_json(st)) << '\n';
  }
  return kOk;
}

int cmd_fundamental(const Config& c, std::ostream& out) {
  const Tolerances tol = tolerances(c);
  if (c.lambdas.empty()) throw Error(ErrorCode::kPrecondition, "fundamental needs at least one --lambda re,im");
  const ParameterTriple t = io::triple_from_json(io::read_file(c.input), tol);
  const TransferFunction w(std::make_shared<const LatticeState>(LatticeState::generate(t, c.nmax, tol)));
  std::vector<Complex> lams;
  for (const auto& l : c.lambdas) lams.push_back(parse_lambda(l));
  std::vector<int> ns;
  for (int n = 0; n <= c.nmax; ++n) ns.push_back(n);
  const auto table = fundamental_table(w, ns, lams, c.serial ? Execution::kSerial : Execution::kParallel);
  if (c.format == "csv") {
    out << "n,lambda_re,lambda_im,i,j,re,im\n";
    for (std::size_t i = 0; i < ns.size(); ++i) {
      for (std::size_t k = 0; k < lams.size(); ++k) {
        const ComplexMatrix& m = table[i][k];
        for (Eigen::Index r = 0; r < m.rows(); ++r) {
          for (Eigen::Index q = 0; q < m.cols(); ++q) {
            out << ns[i] << ',' << shortest(lams[k].real()) << ',' << shortest(lams[k].imag()) << ',' << r
                << ',' << q << ',' << shortest(m(r, q).real()) << ',' << shortest(m(r, q).imag()) << '\n';
          }
        }
      }
    }
    return kOk;
  }
  Json rows = Json::array();
  for (std::size_t i = 0; i < ns.size(); ++i) {
    for (std::size_t k = 0; k < lams.size(); ++k) {
      Json j;
      j["n"] = ns[i];
      j["lambda"] = io::to_json(lams[k]);
      j["W"] = io::to_json(table[i][k]);
      rows.push_back(std::move(j));
    }
  }
  out << io::dump(rows) << '\n';
  return kOk;
}

void write_samples(const Config& c, const std::vector<Complex>& grid, const std::vector<ComplexMatrix>& phi,
                   std::ostream& out) {
  if (c.format == "csv") {
    out << "lambda_re,lambda_im,i,j,re,im\n";
    for (std::size_t k = 0; k < grid.size(); ++k) {
      for (Eigen::Index r = 0; r < phi[k].rows(); ++r) {
        for (Eigen::Index q = 0; q < phi[k].cols(); ++q) {
          out << shortest(grid[k].real()) << ',' << shortest(grid[k].imag()) << ',' << r << ',' << q << ','
              << shortest(phi[k](r, q).real()) << ',' << shortest(phi[k](r, q).imag()) << '\n';
        }
      }
    }
    return;
  }
  Json rows = Json::array();
  for (std::size_t k = 0; k < grid.size(); ++k) {
    rows.push_back(Json{{"lambda", io::to_json(grid[k])}, {"phi", io::to_json(phi[k])}});
  }
  out << io::dump(rows) << '\n';
}

int cmd_weyl(const Config& c, std::ostream& out) {
  const Tolerances tol = tolerances(c);
  const ParameterTriple t = io::triple_from_json(io::read_file(c.input), tol);
  const WeylFunction phi = weyl(t, tol);
  const auto grid = lambda_grid(c, t.alpha());
  write_samples(c, grid, sample_weyl(phi.realization(), grid, c.serial ? Execution::kSerial : Execution::kParallel, tol),
                out);
  return kOk;
}

int cmd_invert(const Config& c, std::ostream& out) {
  const Tolerances tol = tolerances(c);
  const Realization r = io::realization_from_json(io::read_file(c.input));
  const ParameterTriple t = invert(r, tol);
  spdlog::info("recovered a triple of order {} (input order {})", t.order(), r.order());
  out << io::dump(io::to_json(t)) << '\n';
  return kOk;
}

int cmd_evolve(const Config& c, std::ostream& out) {
  const Tolerances tol = tolerances(c);
  const ParameterTriple t = io::triple_from_json(io::read_file(c.input), tol);
  const auto sites = numbers(c.sites, 2, "--sites");
  TrajectoryOptions opt;
  opt.n_first = static_cast<int>(sites[0]);
  opt.n_last = static_cast<int>(sites[1]);
  if (!c.lambdas.empty()) opt.lambda = parse_lambda(c.lambdas.front());
  const EvolutionState s = EvolutionState::create(t, opt.n_last + 2, method(c), tol);
  spdlog::info("Σ₀(t) by {}", to_string(s.method()));
  const auto rows = evolve_trajectory(s, time_grid(c), opt, c.serial ? Execution::kSerial : Execution::kParallel);
  if (c.format == "json") {
    out << io::dump(io::to_json(rows)) << '\n';
  } else {
    io::write_trajectory_csv(out, rows);
  }
  return kOk;
}

int cmd_verify(const Config& c, std::ostream& out) {
  VerifyOptions opt;
  opt.seed = c.seed;
  opt.triples = c.triples;
  opt.horizon = c.nmax;
  opt.tol = tolerances(c);
  opt.exec = c.serial ? Execution::kSerial : Execution::kParallel;
  const auto results = run_checks(opt, c.checks);
  bool ok = true;
  Json rows = Json::array();
  for (const auto& r : results) {
    ok = ok && r.passed;
    if (c.format == "json") {
      rows.push_back(Json{{"name", r.name},
                          {"passed", r.passed},
                          {"residual", std::isnan(r.residual) ? Json(nullptr) : Json(r.residual)},
                          {"tolerance", r.tolerance},
                          {"detail", r.detail}});
    } else {
      char line[96];
      std::snprintf(line, sizeof(line), "%-4s %-26s %10.3e <= %.0e  ", r.passed ? "ok" : "FAIL", r.name.c_str(),
                    r.residual, r.tolerance);
      out << line << r.detail << '\n';
    }
  }
  if (c.format == "json") out << io::dump(rows) << '\n';
  return ok ? kOk : kCheckFailure;
}

int cmd_example(const Config& c, std::ostream& out) {
  const ScalarExample ex(c.h);
  const Tolerances tol = tolerances(c);
  const ParameterTriple t = ex.triple();
  const int horizon = std::min(c.nmax, 30);
  const LatticeState st = LatticeState::generate(t, horizon, tol);
  const WeylFunction phi = weyl(t, tol);
  const auto grid = lambda_grid(c, t.alpha());

  double sigma_diff = 0.0, spin_diff = 0.0, phi_diff = 0.0;
  for (int n = 0; n <= horizon; ++n) {
    sigma_diff = std::max(sigma_diff, std::abs(st.sigmas()[n].matrix()(0, 0) - ex.sigma(n)) / ex.sigma(n));
  }
  for (int n = 0; n < static_cast<int>(st.spins().size()); ++n) {
    spin_diff = std::max(spin_diff, (st.spin(n).matrix() - ex.spin(n, 0.0)).cwiseAbs().maxCoeff());
  }
  std::vector<ComplexMatrix> values;
  for (Complex lam : grid) {
    values.push_back(phi(lam, tol));
    phi_diff = std::max(phi_diff, std::abs(values.back()(0, 0) - ex.phi(0.0, lam)));
  }
  const double limit = 1e-12;
  const bool ok = sigma_diff <= limit && spin_diff <= limit && phi_diff <= limit;

  if (c.format == "json") {
    Json j;
    j["h"] = c.h;
    j["sigma"] = Json::array();
    for (int n = 0; n <= std::min(horizon, 3); ++n) j["sigma"].push_back(st.sigmas()[n].matrix()(0, 0).real());
    j["S0"] = io::to_json(st.spin(0).matrix());
    Json samples = Json::array();
    for (std::size_t k = 0; k < grid.size(); ++k) {
      samples.push_back(Json{{"lambda", io::to_json(grid[k])}, {"phi", io::to_json(values[k](0, 0))}});
    }
    j["phi"] = samples;
    j["diff"] = Json{{"sigma", sigma_diff}, {"spins", spin_diff}, {"phi", phi_diff}};
    j["passed"] = ok;
    out << io::dump(j) << '\n';
    return ok ? kOk : kCheckFailure;
  }
  const ComplexMatrix& s0 = st.spin(0).matrix();
  out << "h = " << shortest(c.h) << '\n';
  for (int n = 0; n <= std::min(horizon, 3); ++n) {
    out << "Sigma_" << n << " = " << shortest(st.sigmas()[n].matrix()(0, 0).real()) << '\n';
  }
  out << "S_0 = [[" << shortest(s0(0, 0).real()) << ", " << shortest(s0(0, 1).real()) << "], ["
      << shortest(s0(1, 0).real()) << ", " << shortest(s0(1, 1).real()) << "]]\n";
  out << "lambda_re,lambda_im,phi_re,phi_im,closed_re,closed_im\n";
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const Complex e = ex.phi(0.0, grid[k]);
    out << shortest(grid[k].real()) << ',' << shortest(grid[k].imag()) << ',' << shortest(values[k](0, 0).real())
        << ',' << shortest(values[k](0, 0).imag()) << ',' << shortest(e.real()) << ',' << shortest(e.imag()) << '\n';
  }
  char line[128];
  std::snprintf(line, sizeof(line), "max diff: sigma %.2e, spins %.2e, phi %.2e (limit %.0e) %s\n", sigma_diff,
                spin_diff, phi_diff, limit, ok ? "ok" : "FAIL");
  out << line;
  return ok ? kOk : kCheckFailure;
}

void configure_logging(std::ostream& err) {
  auto sink = std::make_shared<spdlog::sinks::ostream_sink_mt>(err);
  auto logger = std::make_shared<spdlog::logger>("spinlattice", sink);
  logger->set_pattern("[%l] %v");
  const char* env = std::getenv("SPINLATTICE_LOG");
  logger->set_level(env ? spdlog::level::from_str(env) : spdlog::level::warn);
  spdlog::set_default_logger(logger);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  configure_logging(err);
  Config c;
  CLI::App app{"Spin sequences, transfer functions and Weyl functions of discrete canonical systems"};
  app.require_subcommand(1);
  app.set_help_flag("--help", "Print this help message and exit");
  app.set_help_all_flag("--help-all");

  auto common = [&](CLI::App* sub) {
    sub->set_help_flag("--help", "Print this help message and exit");
    sub->add_option("--tol", c.tol_overrides, "Tolerance override name=value")->take_all();
    sub->add_option("-o,--output", c.output, "Write results to this file");
    sub->add_option("--format", c.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--nmax", c.nmax, "Horizon n_max")->check(CLI::Range(0, 1000));
  };

  auto* validate_cmd = app.add_subcommand("validate", "Classify a triple");
  validate_cmd->add_option("input", c.input, "triple.json")->required();
  auto* spins_cmd = app.add_subcommand("spins", "Spin sequence S_0 … S_{n_max−1}");
  spins_cmd->add_option("input", c.input, "triple.json")->required();
  auto* fundamental_cmd = app.add_subcommand("fundamental", "W_n(λ) for n = 0 … n_max");
  fundamental_cmd->add_option("input", c.input, "triple.json")->required();
  fundamental_cmd->add_option("--lambda", c.lambdas, "re,im (repeatable)")->take_all();
  auto* weyl_cmd = app.add_subcommand("weyl", "Samples of the Weyl function");
  weyl_cmd->add_option("input", c.input, "triple.json")->required();
  weyl_cmd->add_option("--lambda-grid", c.lambda_grid, "c_re,c_im,r,k");
  auto* invert_cmd = app.add_subcommand("invert", "Triple from a realization of φ");
  invert_cmd->add_option("input", c.input, "realization.json")->required();
  auto* evolve_cmd = app.add_subcommand("evolve", "IHM trajectory of the spins");
  evolve_cmd->add_option("input", c.input, "triple.json (m = 1)")->required();
  evolve_cmd->add_option("--time-grid", c.time_grid, "a,b,k")->required();
  evolve_cmd->add_option("--method", c.method, "sylvester, ode or auto");
  evolve_cmd->add_option("--sites", c.sites, "first,last");
  evolve_cmd->add_option("--lambda", c.lambdas, "re,im spectral point for the zero-curvature residual");
  auto* verify_cmd = app.add_subcommand("verify", "Run the invariant checks");
  verify_cmd->add_option("--seed", c.seed, "Corpus seed");
  verify_cmd->add_option("--triples", c.triples, "Random triples per check")->check(CLI::Range(1, 1000));
  verify_cmd->add_option("--check", c.checks, "Run only these checks")->take_all();
  verify_cmd->add_flag("--serial", c.serial, "Run checks one after another");
  auto* example_cmd = app.add_subcommand("example", "Scalar example against its closed form");
  example_cmd->add_option("--h", c.h, "h > 1");
  example_cmd->add_option("--lambda-grid", c.lambda_grid, "c_re,c_im,r,k");
  for (auto* sub : {validate_cmd, spins_cmd, fundamental_cmd, weyl_cmd, invert_cmd, evolve_cmd, verify_cmd, example_cmd}) {
    common(sub);
  }
  for (auto* sub : {fundamental_cmd, weyl_cmd, evolve_cmd}) {
    sub->add_flag("--serial", c.serial, "Disable OpenMP for the batch");
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  // csv is the natural default for trajectories and text for the reports.
  const bool format_given = app.get_subcommands().front()->count("--format") > 0;
  if (!format_given) {
    if (evolve_cmd->parsed()) c.format = "csv";
    if (verify_cmd->parsed() || example_cmd->parsed()) c.format = "text";
  }

  std::ofstream file;
  if (!c.output.empty()) {
    file.open(c.output);
    if (!file) {
      err << "error: cannot write '" << c.output << "'\n";
      return kInputError;
    }
  }
  std::ostream& dest = c.output.empty() ? out : file;

  try {
    if (validate_cmd->parsed()) return cmd_validate(c, dest);
    if (spins_cmd->parsed()) return cmd_spins(c, dest);
    if (fundamental_cmd->parsed()) return cmd_fundamental(c, dest);
    if (weyl_cmd->parsed()) return cmd_weyl(c, dest);
    if (invert_cmd->parsed()) return cmd_invert(c, dest);
    if (evolve_cmd->parsed()) return cmd_evolve(c, dest);
    if (verify_cmd->parsed()) return cmd_verify(c, dest);
    if (example_cmd->parsed()) return cmd_example(c, dest);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kNumericFailure;
  }
  return kInputError;
}

}  // namespace spinlattice::cli
