// Command-line front end: experiment runs, LMI checks, potential
// construction and the grid-refinement study.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "hyperstab/config.hpp"
#include "hyperstab/error.hpp"
#include "hyperstab/experiments.hpp"
#include "hyperstab/lmi.hpp"
#include "hyperstab/systems.hpp"

namespace fs = std::filesystem;
using namespace hyperstab;

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string short_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string column_name(const ExperimentResult& r, std::size_t q) {
  if (r.names.size() == 1) return "L";
  return "L_" + r.names[q];
}

void write_timeseries(const fs::path& path, const ExperimentResult& r) {
  std::ofstream out(path);
  out << "t";
  for (std::size_t q = 0; q < r.names.size(); ++q) out << "," << column_name(r, q);
  out << ",bound\n";
  const double l0 = r.lyapunov.front().front();
  for (std::size_t n = 0; n < r.times.size(); ++n) {
    out << num(r.times[n]);
    for (const auto& series : r.lyapunov) out << "," << num(series[n]);
    out << "," << num(l0 * std::exp(-r.rate * r.times[n])) << "\n";
  }
}

void write_fields(const fs::path& dir, const GridState& s, const SystemSpec& sys) {
  const Grid& g = s.grid();
  for (std::size_t k = 0; k < s.n(); ++k) {
    const std::string label = k < sys.labels.size() ? sys.labels[k] : "w" + std::to_string(k + 1);
    std::ofstream out(dir / ("field_" + label + ".txt"));
    for (int j = 0; j < g.ny; ++j) {
      for (int i = 0; i < g.nx; ++i) out << (i ? " " : "") << num(s.at(i, j, k));
      out << "\n";
    }
  }
}

void write_summary(std::ostream& out, const RunConfig& c, const ExperimentSetup& setup,
                   const ExperimentResult& r) {
  const Grid& g = setup.initial.grid();
  out << "experiment: " << to_string(c.experiment) << "\n";
  out << "grid: " << g.nx << " x " << g.ny << " (dx = " << short_num(g.dx)
      << ", dy = " << short_num(g.dy) << ")\n";
  out << "cfl: " << short_num(setup.cfl) << "\n";
  out << "t_end: " << short_num(setup.t_end) << "\n";
  out << "steps: " << r.steps << "\n";
  out << "rate: " << short_num(r.rate) << "\n";
  out << "slack: " << short_num(r.slack) << "\n";
  for (std::size_t q = 0; q < r.names.size(); ++q) {
    const auto& series = r.lyapunov[q];
    out << "[" << column_name(r, q) << "]\n";
    out << "  L0: " << short_num(series.front()) << "\n";
    out << "  L_end: " << short_num(series.back()) << "\n";
    out << "  fitted_rate: " << (std::isnan(r.fitted_rates[q]) ? "n/a" : short_num(r.fitted_rates[q]))
        << "\n";
    out << "  worst_ratio: "
        << (std::isnan(r.worst_ratio[q]) ? "n/a" : short_num(r.worst_ratio[q])) << "\n";
    out << "  bound: " << (r.bound_ok[q] ? "satisfied" : "violated") << "\n";
  }
}

int cmd_run(RunConfig c, bool to_stdout) {
  c.validate();
  const ExperimentSetup setup = make_setup(c);
  const ExperimentResult r = run_experiment(setup);

  const fs::path dir = c.out;
  fs::create_directories(dir);
  write_timeseries(dir / "timeseries.csv", r);
  write_fields(dir, r.final_state, setup.system);
  {
    std::ofstream out(dir / "summary.txt");
    write_summary(out, c, setup, r);
  }
  if (to_stdout) write_summary(std::cout, c, setup, r);
  std::cout << "wrote " << dir.string() << "\n";
  return 0;
}

int cmd_lmi_check(const RunConfig& c, std::optional<std::vector<double>> m,
                  std::optional<double> chi, std::optional<double> rate) {
  const SystemSpec sys = config_system(c);
  PotentialSpec p = c.potential.value_or(PotentialSpec{});
  if (!c.potential && c.experiment == ExperimentKind::SaintVenant) {
    p.m = {-1.0, 0.0};
    p.chi = 2.0 * c.sv.domain_l;
    p.decay_c = 1.4;
  }
  if (m) {
    if (m->size() != 2) throw Error(ErrorKind::InvalidInput, "--m takes two values");
    p.m = {(*m)[0], (*m)[1]};
  }
  if (chi) p.chi = *chi;
  if (rate) p.decay_c = *rate;

  const LmiVerdict v = check_feasibility(sys, p);
  std::cout << "system: " << to_string(c.experiment) << "\n";
  std::cout << "m: " << short_num(p.m[0]) << " " << short_num(p.m[1]) << "\n";
  std::cout << "chi: " << short_num(p.chi) << "\n";
  std::cout << "decay_c: " << short_num(p.decay_c) << "\n";
  std::cout << "lambda_max: " << num(v.lambda_max) << "\n";
  std::cout << "tolerance: " << num(v.tolerance) << "\n";
  std::cout << "verdict: " << (v.feasible ? "feasible" : "infeasible") << "\n";
  if (c.experiment == ExperimentKind::SaintVenant) {
    std::cout << "sv_max_decay_rate: " << num(sv_max_decay_rate(c.sv)) << "\n";
  }
  return 0;
}

int cmd_construct(const std::string& path, double rate) {
  const SscSystem s = load_ssc(path);
  const ValidationReport report = validate_ssc(s);
  if (!report.all_ok()) {
    std::cerr << "error: " << path << " fails the structural conditions\n";
    for (const auto& f : report.failures()) std::cerr << "  " << f << "\n";
    return 1;
  }
  const ConstructedPotential cp = construct_potential_from_ssc(s, rate);
  std::cout << "K: " << num(cp.k) << "\n";
  std::cout << "m: " << num(cp.potential.m[0]) << " " << num(cp.potential.m[1]) << "\n";
  std::cout << "decay_c: " << num(cp.potential.decay_c) << "\n";
  std::cout << "lambda_max: " << num(cp.verdict.lambda_max) << "\n";
  std::cout << "tolerance: " << num(cp.verdict.tolerance) << "\n";
  std::cout << "verdict: " << (cp.verdict.feasible ? "feasible" : "infeasible") << "\n";
  return 0;
}

int cmd_convergence(double dx, int levels, double cfl, double t_end) {
  if (!(dx > 0.0) || levels < 2) {
    throw Error(ErrorKind::InvalidInput, "convergence needs dx > 0 and at least two levels");
  }
  const int nx0 = static_cast<int>(std::lround(1.0 / dx));
  if (std::abs(nx0 * dx - 1.0) > 1e-9) throw Error(ErrorKind::InvalidInput, "dx must divide 1");
  std::vector<int> nxs;
  for (int q = 0; q < levels; ++q) nxs.push_back(nx0 << q);
  std::cout << "nx,dx,l1_error,order\n";
  for (const auto& row : advection_convergence(nxs, cfl, t_end)) {
    std::cout << row.nx << "," << num(row.dx) << "," << num(row.l1_error) << ","
              << (std::isnan(row.order) ? "" : num(row.order)) << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Boundary feedback stabilization of 2D linear hyperbolic systems"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<double> dx, t_end, cfl;
  std::optional<std::string> out, weight;

  auto* run = app.add_subcommand("run", "simulate a closed-loop experiment");
  std::optional<std::string> experiment;
  bool quiet = false;
  run->add_option("experiment", experiment, "saint_venant | diagonal | custom")
      ->check(CLI::IsMember({"saint_venant", "diagonal", "custom"}));
  run->add_option("--config", config_path, "INI run configuration")->check(CLI::ExistingFile);
  run->add_option("--dx", dx, "cell size");
  run->add_option("--t-end", t_end, "final time");
  run->add_option("--cfl", cfl, "CFL number");
  run->add_option("--out", out, "output directory");
  run->add_option("--weight", weight, "Lyapunov weights to monitor")
      ->check(CLI::IsMember({"exp", "linear", "both", "dia"}));
  run->add_flag("--quiet", quiet, "do not print the summary");

  auto* lmi = app.add_subcommand("lmi-check", "check feasibility of a Lyapunov potential");
  std::optional<std::string> lmi_system;
  std::optional<std::vector<double>> lmi_m;
  std::optional<double> lmi_chi, lmi_rate;
  lmi->add_option("system", lmi_system, "saint_venant | diagonal | custom")
      ->check(CLI::IsMember({"saint_venant", "diagonal", "custom"}));
  lmi->add_option("--config", config_path, "INI configuration")->check(CLI::ExistingFile);
  lmi->add_option("--m", lmi_m, "gradient m1 m2")->expected(2);
  lmi->add_option("--chi", lmi_chi, "coupling scale");
  lmi->add_option("--rate", lmi_rate, "decay rate C");

  auto* construct = app.add_subcommand("construct", "construct a potential for an SSC system");
  std::string ssc_path;
  double construct_rate = 1e-3;
  construct->add_option("ssc", ssc_path, "INI file with an [ssc] section")
      ->required()
      ->check(CLI::ExistingFile);
  construct->add_option("--rate", construct_rate, "decay rate c");

  auto* conv = app.add_subcommand("convergence", "grid refinement study on scalar advection");
  double conv_dx = 1.0 / 50.0;
  int levels = 3;
  double conv_cfl = 0.5;
  double conv_t = 0.5;
  conv->add_option("--dx", conv_dx, "coarsest cell size");
  conv->add_option("--levels", levels, "number of grids");
  conv->add_option("--cfl", conv_cfl, "CFL number");
  conv->add_option("--t-end", conv_t, "final time");

  CLI11_PARSE(app, argc, argv);

  // The positional experiment wins when there is no config; with a config
  // it must agree with run.experiment.
  auto load = [&](const std::optional<std::string>& name) {
    if (config_path.empty()) {
      return RunConfig::defaults(parse_experiment(name.value_or("saint_venant")));
    }
    RunConfig c = load_run_config(config_path);
    if (name && c.experiment != parse_experiment(*name)) {
      throw Error(ErrorKind::InvalidInput, config_path + ": run.experiment is " +
                                               to_string(c.experiment) + ", not " + *name);
    }
    return c;
  };

  try {
    if (*run) {
      RunConfig c = load(experiment);
      if (dx) c.grid = {*dx, 0, 0};
      if (t_end) c.t_end = *t_end;
      if (cfl) c.cfl = *cfl;
      if (out) c.out = *out;
      if (weight) c.weights = parse_weight_set(*weight);
      return cmd_run(c, !quiet);
    }
    if (*lmi) return cmd_lmi_check(load(lmi_system), lmi_m, lmi_chi, lmi_rate);
    if (*construct) return cmd_construct(ssc_path, construct_rate);
    if (*conv) return cmd_convergence(conv_dx, levels, conv_cfl, conv_t);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    if (e.kind() == ErrorKind::BlowUp) return 2;
    if (e.kind() == ErrorKind::NoFeasibleK) return 3;
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
