#include "chronos/cli.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "CLI11.hpp"

#include "chronos/analysis.hpp"
#include "chronos/errors.hpp"
#include "chronos/problems.hpp"

namespace chronos {

SchemeSpec RunConfig::scheme() const {
  SchemeSpec s;
  s.family = family;
  s.order = order;
  s.rho_inf = rho_inf;
  return s;
}

void RunConfig::merge(const nlohmann::json& obj) {
  if (!obj.is_object()) throw InvalidArgument("config file must hold a flat JSON object");
  for (const auto& [key, val] : obj.items()) {
    try {
      if (key == "benchmark") benchmark = val.get<std::string>();
      else if (key == "family") family = parse_family(val.get<std::string>());
      else if (key == "order") order = val.get<int>();
      else if (key == "rho") rho_inf = val.get<double>();
      else if (key == "dt") dt = val.get<double>();
      else if (key == "cfl") cfl = val.get<double>();
      else if (key == "t_end") t_end = val.get<double>();
      else if (key == "tol") iteration.tol_rel = val.get<double>();
      else if (key == "max_iter") iteration.max_iter = val.get<int>();
      else if (key == "refresh_tangents") iteration.refresh_tangents = val.get<bool>();
      else if (key == "out") out = val.get<std::string>();
      else if (key == "emit_acceleration") emit_acceleration = val.get<bool>();
      else if (key == "dts") dts = val.get<std::vector<double>>();
      else if (key == "elements") rod_elements = val.get<int>();
      else if (key == "omega_min") omega_min = val.get<double>();
      else if (key == "omega_max") omega_max = val.get<double>();
      else if (key == "omega_count") omega_count = val.get<int>();
      else throw InvalidArgument("unknown config key '" + key + "'");
    } catch (const nlohmann::json::exception& e) {
      throw InvalidArgument("config key '" + key + "' has the wrong type: " + e.what());
    }
  }
}

nlohmann::json coeffs_json(const SchemeCoefficients& c) {
  using nlohmann::json;
  auto matrix = [](const Eigen::MatrixXd& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      json row = json::array();
      for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
      rows.push_back(row);
    }
    return rows;
  };
  auto complex_pair = [](Complex z) { return json::array({z.real(), z.imag()}); };

  json j;
  j["family"] = std::string(to_string(c.family()));
  j["order"] = c.order();
  j["rho_inf"] = c.spec.rho_inf;
  j["force_order"] = c.force_order();
  j["theoretical_order"] = theoretical_order(c.spec);
  j["rho"] = c.rho;
  j["numerator"] = c.numerator.coeffs();
  j["denominator"] = c.denominator.coeffs();
  j["force_coeffs"] = matrix(c.force_coeffs);
  j["sample_points"] = c.sample_points;
  j["transform"] = matrix(c.transform);
  if (c.family() == Family::DistinctRoots) {
    json roots = json::array(), residues = json::array(), pl = json::array();
    for (std::size_t i = 0; i < c.roots.roots.size(); ++i) {
      roots.push_back(complex_pair(c.roots.roots[i]));
      residues.push_back(complex_pair(c.residues[i]));
      pl.push_back(complex_pair(c.pl_at_roots[i]));
    }
    j["roots"] = roots;
    j["real_root_count"] = c.roots.real_count;
    j["residues"] = residues;
    j["reduced_numerator"] = c.reduced_numerator.coeffs();
    j["pl_at_roots"] = pl;
  } else {
    j["root"] = c.root;
    j["shifted_numerator"] = c.shifted_numerator.coeffs();
    j["shifted_force_coeffs"] = matrix(c.shifted_force_coeffs);
  }
  return j;
}

std::string history_csv(const TimeHistory& h, const std::vector<std::string>& labels, bool emit_acceleration) {
  const Eigen::Index n = h.dofs();
  if (static_cast<Eigen::Index>(labels.size()) != n) throw InvalidArgument("label count does not match DOF count");
  std::ostringstream os;
  os << 't';
  for (const auto& l : labels) {
    os << ',' << l << "_u," << l << "_v";
    if (emit_acceleration) os << ',' << l << "_a";
  }
  os << '\n';
  for (std::size_t i = 0; i < h.size(); ++i) {
    os << format_number(h.times[i]);
    for (Eigen::Index d = 0; d < n; ++d) {
      os << ',' << format_number(h.u[i][d]) << ',' << format_number(h.v[i][d]);
      if (emit_acceleration) os << ',' << format_number(h.a[i][d]);
    }
    os << '\n';
  }
  return os.str();
}

namespace {

struct Flags {
  CLI::Option* config = nullptr;
  std::map<std::string, CLI::Option*> opts;
};

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InvalidArgument("cannot open output file '" + path + "'");
  f << text;
}

BenchmarkDef load_benchmark(const RunConfig& cfg) {
  BenchmarkOptions bo;
  bo.rod_elements = cfg.rod_elements;
  return make_benchmark(cfg.benchmark, bo);
}

double resolve_dt(const RunConfig& cfg, const BenchmarkDef& bench) {
  if (cfg.dt.has_value() == cfg.cfl.has_value()) throw InvalidArgument("specify exactly one of --dt and --cfl");
  if (cfg.cfl) {
    if (cfg.benchmark != "rod") throw InvalidArgument("--cfl is only valid for the rod benchmark");
    if (!(*cfg.cfl > 0.0)) throw InvalidArgument("CFL number must be positive");
    RodMesh mesh;
    mesh.elements = cfg.rod_elements;
    return mesh.dt_for_cfl(*cfg.cfl);
  }
  if (!(*cfg.dt > 0.0)) throw InvalidArgument("time step must be positive");
  (void)bench;
  return *cfg.dt;
}

int cmd_coeffs(const RunConfig& cfg, std::ostream& out) {
  const SchemeCoefficients c = init_scheme(cfg.scheme());
  write_output(cfg.out, coeffs_json(c).dump(2) + "\n", out);
  return kExitOk;
}

int cmd_run(const RunConfig& cfg, std::ostream& out) {
  const BenchmarkDef bench = load_benchmark(cfg);
  const double dt = resolve_dt(cfg, bench);
  const double t_end = cfg.t_end.value_or(bench.t_end);
  if (!(t_end > 0.0)) throw InvalidArgument("t_end must be positive");
  auto scheme = std::make_shared<const SchemeCoefficients>(init_scheme(cfg.scheme()));
  SimulationOptions opts;
  opts.iteration = cfg.iteration;
  opts.report_initial_acceleration = cfg.emit_acceleration;
  const TimeHistory h = simulate(*bench.system, scheme, dt, std::lround(t_end / dt), bench.u0, bench.v0, 0.0, opts);
  write_output(cfg.out, history_csv(h, bench.dof_labels, cfg.emit_acceleration), out);
  return kExitOk;
}

int cmd_converge(const RunConfig& cfg, std::ostream& out) {
  BenchmarkDef bench = load_benchmark(cfg);
  if (cfg.t_end) bench.t_end = *cfg.t_end;
  const std::vector<double> dts = cfg.dts.empty() ? bench.dt_grid : cfg.dts;
  SimulationOptions opts;
  opts.iteration = cfg.iteration;
  const ConvergenceReport rep = convergence_study(bench, cfg.scheme(), dts, opts);
  const bool csv = cfg.out.size() >= 4 && cfg.out.compare(cfg.out.size() - 4, 4, ".csv") == 0;
  write_output(cfg.out, csv ? rep.to_csv() : rep.to_json().dump(2) + "\n", out);
  return kExitOk;
}

int cmd_spectral(const RunConfig& cfg, std::ostream& out) {
  const SchemeCoefficients c = init_scheme(cfg.scheme());
  const std::vector<double> grid = log_grid(cfg.omega_min, cfg.omega_max, cfg.omega_count);
  std::ostringstream os;
  os << "omega,radius\n";
  for (const RadiusSample& s : radius_sweep(c, grid)) os << format_number(s.omega) << ',' << format_number(s.radius) << '\n';
  write_output(cfg.out, os.str(), out);
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"High-order implicit time integration for structural dynamics"};
  app.require_subcommand(1);

  RunConfig flags;
  std::string family = "distinct";
  std::string config_path;
  std::string dts_text;
  std::map<std::string, std::map<std::string, CLI::Option*>> seen;

  auto add_common = [&](CLI::App* sub) {
    auto& s = seen[sub->get_name()];
    s["config"] = sub->add_option("--config", config_path, "JSON file with default settings");
    s["family"] = sub->add_option("--family", family, "distinct or multiroot")->check(CLI::IsMember({"distinct", "multiroot"}));
    s["order"] = sub->add_option("--order", flags.order, "number of sub-steps M");
    s["rho"] = sub->add_option("--rho", flags.rho_inf, "high-frequency spectral radius in [0,1]");
    s["out"] = sub->add_option("--out", flags.out, "output path (stdout when omitted)");
  };
  auto add_run = [&](CLI::App* sub) {
    auto& s = seen[sub->get_name()];
    s["benchmark"] = sub->add_option("--benchmark", flags.benchmark, "sdof, pendulum, 3dof-linear, 3dof-sinh or rod");
    s["t_end"] = sub->add_option("--t-end", flags.t_end, "end time");
    s["tol"] = sub->add_option("--tol", flags.iteration.tol_rel, "relative fixed-point tolerance");
    s["max_iter"] = sub->add_option("--max-iter", flags.iteration.max_iter, "fixed-point iteration cap");
    s["elements"] = sub->add_option("--elements", flags.rod_elements, "rod element count");
  };

  CLI::App* coeffs = app.add_subcommand("coeffs", "print scheme coefficients as JSON");
  add_common(coeffs);
  CLI::App* run = app.add_subcommand("run", "simulate a benchmark and write its time history as CSV");
  add_common(run);
  add_run(run);
  seen["run"]["dt"] = run->add_option("--dt", flags.dt, "time step");
  seen["run"]["cfl"] = run->add_option("--cfl", flags.cfl, "CFL number (rod only)");
  seen["run"]["emit_acceleration"] = run->add_flag("--emit-acceleration,!--no-acceleration", flags.emit_acceleration,
                                                   "include acceleration columns");
  CLI::App* converge = app.add_subcommand("converge", "L2 error and fitted orders over a step-size grid");
  add_common(converge);
  add_run(converge);
  seen["converge"]["dts"] = converge->add_option("--dts", dts_text, "comma-separated decreasing step sizes");
  CLI::App* spectral = app.add_subcommand("spectral", "spectral radius table over a log frequency grid");
  add_common(spectral);
  seen["spectral"]["omega_min"] = spectral->add_option("--omega-min", flags.omega_min, "smallest omega dt");
  seen["spectral"]["omega_max"] = spectral->add_option("--omega-max", flags.omega_max, "largest omega dt");
  seen["spectral"]["omega_count"] = spectral->add_option("--omega-count", flags.omega_count, "number of log-spaced samples");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  CLI::App* active = app.get_subcommands().front();
  const auto& given = seen[active->get_name()];
  auto has = [&](const char* key) {
    auto it = given.find(key);
    return it != given.end() && it->second->count() > 0;
  };

  try {
    RunConfig cfg;
    if (has("config")) {
      std::ifstream f(config_path);
      if (!f) throw InvalidArgument("cannot read config file '" + config_path + "'");
      nlohmann::json obj;
      try {
        f >> obj;
      } catch (const nlohmann::json::exception& e) {
        throw InvalidArgument(std::string("config file is not valid JSON: ") + e.what());
      }
      cfg.merge(obj);
    }
    if (has("family")) cfg.family = parse_family(family);
    if (has("order")) cfg.order = flags.order;
    if (has("rho")) cfg.rho_inf = flags.rho_inf;
    if (has("out")) cfg.out = flags.out;
    if (has("benchmark")) cfg.benchmark = flags.benchmark;
    if (has("t_end")) cfg.t_end = flags.t_end;
    if (has("tol")) cfg.iteration.tol_rel = flags.iteration.tol_rel;
    if (has("max_iter")) cfg.iteration.max_iter = flags.iteration.max_iter;
    if (has("elements")) cfg.rod_elements = flags.rod_elements;
    if (has("dt")) {
      cfg.dt = flags.dt;
      cfg.cfl.reset();
    }
    if (has("cfl")) {
      cfg.cfl = flags.cfl;
      if (!has("dt")) cfg.dt.reset();
    }
    if (has("emit_acceleration")) cfg.emit_acceleration = flags.emit_acceleration;
    if (has("omega_min")) cfg.omega_min = flags.omega_min;
    if (has("omega_max")) cfg.omega_max = flags.omega_max;
    if (has("omega_count")) cfg.omega_count = flags.omega_count;
    if (has("dts")) {
      cfg.dts.clear();
      std::stringstream ss(dts_text);
      std::string item;
      while (std::getline(ss, item, ',')) {
        try {
          cfg.dts.push_back(std::stod(item));
        } catch (const std::exception&) {
          throw InvalidArgument("cannot parse step size '" + item + "'");
        }
      }
    }
    cfg.scheme().validate();
    cfg.iteration.validate();

    const std::string name = active->get_name();
    if (name == "coeffs") return cmd_coeffs(cfg, out);
    if (name == "run") return cmd_run(cfg, out);
    if (name == "converge") return cmd_converge(cfg, out);
    return cmd_spectral(cfg, out);
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const NonConvergence& e) {
    err << "error: " << e.what() << '\n';
    if (e.step() >= 0) err << "failing step: " << e.step() << '\n';
    return kExitNonConvergence;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace chronos
