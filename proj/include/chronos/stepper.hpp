#pragma once

#include <memory>
#include <vector>

#include "chronos/model.hpp"
#include "chronos/schemes.hpp"

namespace chronos {

struct IterationSettings {
  /// Bound on ||z_k - z_{k-1}||_inf / (||z_k||_inf + 1e-300).
  double tol_rel = 1e-12;
  int max_iter = 30;
  /// Re-evaluate tangents at every iterate instead of once per step.
  bool refresh_tangents = false;

  void validate() const;
};

template <typename Scalar>
struct SubstepSolution {
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> x1;
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> x2;
};

/// New state and dimensionless acceleration dt^2 u''.
struct StepResult {
  Vector z;
  Vector acc;
};

/// Workspace for one running simulation at fixed dt.
class StepContext {
 public:
  StepContext(std::shared_ptr<const SchemeCoefficients> scheme, const DynamicSystem& sys, double dt);

  /// Stores the tangents and refactorizes every effective stiffness.
  void set_tangents(Tangents tangents);
  bool has_tangents() const { return has_tangents_; }
  const Tangents& tangents() const { return tangents_; }

  const SchemeCoefficients& scheme() const { return *scheme_; }
  double dt() const { return dt_; }
  Eigen::Index dofs() const { return mass_.rows(); }
  const std::vector<double>& sample_points() const { return scheme_->sample_points; }

  /// n x N matrix of forces at the sampling points.
  Eigen::MatrixXd& sampled_forces() { return forces_; }
  const Eigen::MatrixXd& sampled_forces() const { return forces_; }

  SubstepSolution<double> substep_solve(std::size_t root, const Vector& g1, const Vector& g2, const Vector& f) const;
  SubstepSolution<Complex> substep_solve(std::size_t root, const CVector& g1, const CVector& g2, const CVector& f) const;

  std::vector<CVector> force_vectors_distinct() const;
  std::vector<Vector> force_vectors_multiroot() const;

  StepResult step_distinct(const Vector& z_prev, const Vector& acc_prev) const;
  StepResult step_multiroot(const Vector& z_prev, const Vector& acc_prev) const;
  StepResult step(const Vector& z_prev, const Vector& acc_prev) const;

 private:
  Complex root_value(std::size_t root) const;
  void check_ready() const;

  std::shared_ptr<const SchemeCoefficients> scheme_;
  double dt_;
  SparseMatrix mass_;
  /// dt^2 / lumped mass.
  Vector inv_lumped_;
  Tangents tangents_;
  bool has_tangents_ = false;
  std::vector<Factorization<double>> real_lu_;
  std::vector<Factorization<Complex>> complex_lu_;
  Eigen::MatrixXd forces_;
};

/// rho * acc_prev + contributions; acc_prev is not read when rho == 0.
Vector acc_update(double rho, const Vector& acc_prev, const Vector& contributions);

struct HermiteSample {
  Vector u;
  Vector udot;
};

/// Quintic through (u, u', u'') at s = 0 and s = 1, derivatives with respect to s.
HermiteSample hermite_interpolate(const Vector& z_prev, const Vector& acc_prev, const Vector& z_est,
                                  const Vector& acc_est, double s);

struct AdvanceResult {
  Vector z;
  Vector acc;
  int iterations = 0;
};

/// One full time step: force sampling, and fixed-point iteration for nonlinear systems.
AdvanceResult advance(StepContext& ctx, const DynamicSystem& sys, const IterationSettings& settings,
                      const Vector& z_prev, const Vector& acc_prev, double t_prev);

AdvanceResult advance(const DynamicSystem& sys, std::shared_ptr<const SchemeCoefficients> scheme,
                      const IterationSettings& settings, const Vector& z_prev, const Vector& acc_prev, double t_prev,
                      double dt);

/// Physical histories; step 0 holds the initial state.
struct TimeHistory {
  double dt = 0.0;
  std::vector<double> times;
  std::vector<Vector> u, v, a;
  std::vector<int> iterations;

  std::size_t size() const { return times.size(); }
  Eigen::Index dofs() const { return u.empty() ? 0 : u.front().size(); }
  /// Series of one component of u, v or a.
  std::vector<double> series(char quantity, Eigen::Index dof) const;
};

struct SimulationOptions {
  IterationSettings iteration;
  /// Compute u''(t0) for the history even when the stepping does not need it.
  bool report_initial_acceleration = true;
};

/// True when the stepping path consumes the initial acceleration.
bool needs_initial_acceleration(const SchemeSpec& spec, const DynamicSystem& sys);

TimeHistory simulate(const DynamicSystem& sys, std::shared_ptr<const SchemeCoefficients> scheme, double dt, long steps,
                     const Vector& u0, const Vector& v0, double t0 = 0.0, const SimulationOptions& options = {});

}  // namespace chronos
