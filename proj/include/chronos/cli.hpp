#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

#include "chronos/schemes.hpp"
#include "chronos/stepper.hpp"

namespace chronos {

/// Exit codes of the command-line tool.
enum ExitCode : int { kExitOk = 0, kExitFailure = 1, kExitInvalid = 2, kExitNonConvergence = 3 };

struct RunConfig {
  std::string benchmark = "sdof";
  Family family = Family::DistinctRoots;
  int order = 2;
  double rho_inf = 0.0;
  std::optional<double> dt;
  std::optional<double> cfl;
  std::optional<double> t_end;
  IterationSettings iteration;
  std::string out;
  bool emit_acceleration = true;
  std::vector<double> dts;
  int rod_elements = 200;
  double omega_min = 1e-3;
  double omega_max = 1e6;
  int omega_count = 181;

  SchemeSpec scheme() const;
  /// Applies keys of a flat JSON object.
  void merge(const nlohmann::json& obj);
};

nlohmann::json coeffs_json(const SchemeCoefficients& coeffs);

/// CSV with t followed by u, v (and optionally a) per DOF.
std::string history_csv(const TimeHistory& history, const std::vector<std::string>& labels, bool emit_acceleration);

/// Entry point shared by the executable and the tests; returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace chronos
