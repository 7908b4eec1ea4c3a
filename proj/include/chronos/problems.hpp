#pragma once

#include <array>
#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "chronos/model.hpp"

namespace chronos {

struct ReferenceState {
  Vector u, v, a;
};

using ReferenceFn = std::function<ReferenceState(double)>;

struct BenchmarkDef {
  std::string name;
  std::shared_ptr<const DynamicSystem> system;
  Vector u0, v0;
  /// Exact or high-accuracy reference; empty when none is available.
  ReferenceFn reference;
  std::vector<std::string> dof_labels;
  std::vector<double> dt_grid;
  std::vector<double> rho_set;
  double t_end = 0.0;
  /// Characteristic period used to build dt grids.
  double period = 0.0;
};

/// Undamped oscillator, omega = 2 pi, two-tone harmonic load.
BenchmarkDef sdof_linear();

inline constexpr double kPendulumRate = 1.999999238456499;

/// theta'' + sin(theta) = 0 from the bottom with initial rate theta_dot0.
BenchmarkDef pendulum(double theta_dot0 = kPendulumRate);

/// Exact period 4 K(k) with k = theta_dot0 / 2.
double pendulum_period(double theta_dot0);

/// Tight-tolerance embedded Runge-Kutta solution, cached on a uniform table.
class PendulumOracle {
 public:
  PendulumOracle(double theta_dot0, double t_max, double tol = 1e-14);

  ReferenceState at(double t) const;
  double t_max() const { return t_max_; }

 private:
  double spacing_;
  double t_max_;
  double tol_;
  std::vector<std::array<double, 2>> table_;
};

enum class SpringKind { Linear, Sinh };

struct ThreeDofParams {
  double k1 = 1e7;
  double k2 = 1.0;
  double m2 = 1.0;
  double m3 = 1.0;
  double omega_p = 1.2;
};

/// Two-mass chain driven through a stiff spring by u1 = sin(omega_p t), condensed to (u2, u3).
BenchmarkDef three_dof(SpringKind kind, const ThreeDofParams& params = {});

/// Force k1 (u1 - u2) in the stiff spring.
double reaction_force(const ThreeDofParams& params, double t, double u2);

/// Modal solution of the linear case; the stiff mode keeps only its forced part unless requested.
ReferenceState three_dof_modal_reference(const ThreeDofParams& params, double t, bool stiff_transient = false);

/// Triangular pulse rising to peak at t_peak and back to zero at duration.
struct TriangularLoad {
  double peak = 1e-4;
  double t_peak = 0.2;
  double duration = 0.4;

  double value(double t) const;
  double rate(double t) const;
  /// Integral of value from 0 to t.
  double integral(double t) const;
};

struct RodMesh {
  double length = 1.0;
  double area = 1.0;
  double modulus = 1.0;
  double density = 1.0;
  int elements = 200;

  double dx() const { return length / elements; }
  double wave_speed() const;
  double total_mass() const { return density * area * length; }
  double dt_for_cfl(double cfl) const { return cfl * dx() / wave_speed(); }
  /// Free DOF j sits at node j+1, x = (j+1) dx.
  double dof_coordinate(Eigen::Index dof) const { return (static_cast<double>(dof) + 1.0) * dx(); }
  Eigen::Index free_end_dof() const { return elements - 1; }
  Eigen::Index midpoint_dof() const { return elements / 2 - 1; }
};

/// Linear finite elements, left end fixed, load at the free end.
BenchmarkDef rod(const RodMesh& mesh = {}, const TriangularLoad& load = {});

struct PointState {
  double u = 0.0, v = 0.0, a = 0.0;
};

/// Exact wave solution by images: sign flips at the fixed end, kept at the free end.
PointState rod_dalembert(const RodMesh& mesh, double x, double t, const TriangularLoad& load);

struct BenchmarkOptions {
  int rod_elements = 200;
  double pendulum_rate = kPendulumRate;
};

/// Names: sdof, pendulum, 3dof-linear, 3dof-sinh, rod.
BenchmarkDef make_benchmark(std::string_view name, const BenchmarkOptions& options = {});
std::vector<std::string> benchmark_names();

}  // namespace chronos
