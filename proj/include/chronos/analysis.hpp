#pragma once

#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "chronos/problems.hpp"
#include "chronos/schemes.hpp"
#include "chronos/stepper.hpp"

namespace chronos {

/// Sum of squared differences over sum of squared reference values, in percent (no square root).
double l2_error(std::span<const double> numerical, std::span<const double> reference);

/// Same ratio with trapezoidal weights (half weight on both end samples).
double l2_error_trapezoid(std::span<const double> numerical, std::span<const double> reference);

/// Ratio over steps 1..n of a history for one quantity ('u', 'v' or 'a'), all DOFs pooled.
double l2_error(const TimeHistory& history, const ReferenceFn& reference, char quantity);

/// Converts the squared ratio in percent to a root-mean-square relative error in percent.
double rms_percent(double l2_percent);

/// Root-mean-square relative error (percent) below which double round-off dominates a single-DOF history.
inline constexpr double kRoundoffFloorRmsPercent = 3e-9;

/// Least-squares slope of log(error) against log(dt), skipping points below floor.
double fit_slope(std::span<const double> dts, std::span<const double> errors, double floor = 1e-11);

struct RadiusSample {
  double omega = 0.0;
  double radius = 0.0;
};

std::vector<RadiusSample> radius_sweep(const SchemeCoefficients& coeffs, std::span<const double> omegas);

/// |radius - rho_inf| never grows for omega >= from_omega.
bool tail_monotone(std::span<const RadiusSample> sweep, double rho_inf, double from_omega = 10.0, double slack = 1e-12);

std::vector<double> log_grid(double lo, double hi, int count);

struct ConvergenceReport {
  std::string scheme_id;
  std::string benchmark;
  int theoretical_order = 0;
  std::vector<double> dts;
  /// Squared-ratio errors in percent.
  std::vector<double> err_u, err_v, err_a;
  /// Orders fitted to the root-mean-square form of each error, up to the smallest error and above the round-off floor.
  double slope_u = 0.0, slope_v = 0.0, slope_a = 0.0;

  std::string to_csv() const;
  nlohmann::json to_json() const;
};

/// Worker count from CHRONOS_THREADS, else the hardware concurrency.
int default_thread_count();

ConvergenceReport convergence_study(const BenchmarkDef& bench, const SchemeSpec& spec, std::span<const double> dts,
                                    const SimulationOptions& options = {}, int threads = 0);

/// Shortest decimal string that round-trips to the same double.
std::string format_number(double v);

}  // namespace chronos
