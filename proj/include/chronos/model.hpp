#pragma once

#include <functional>
#include <optional>

#include "chronos/linalg.hpp"

namespace chronos {

/// Tangent damping and stiffness frozen at a step start.
struct Tangents {
  SparseMatrix damping;
  SparseMatrix stiffness;
};

/// Second-order system M u'' + f_I(u, u') = f_E(t).
class DynamicSystem {
 public:
  virtual ~DynamicSystem() = default;

  virtual Eigen::Index size() const = 0;
  virtual const SparseMatrix& mass() const = 0;
  /// Row-sum lumping of mass() unless overridden.
  virtual Vector lumped_mass() const;
  virtual Vector external_force(double t) const = 0;
  virtual Vector internal_force(const Vector& u, const Vector& v) const = 0;
  virtual SparseMatrix tangent_stiffness(const Vector& u, const Vector& v) const = 0;
  virtual SparseMatrix tangent_damping(const Vector& u, const Vector& v) const = 0;
  virtual bool is_linear() const = 0;
};

/// Constant M, C, K with an arbitrary load history.
class LinearSystem : public DynamicSystem {
 public:
  using Load = std::function<Vector(double)>;

  /// lumped overrides the row-sum lumping of mass.
  LinearSystem(SparseMatrix mass, SparseMatrix damping, SparseMatrix stiffness, Load load,
               std::optional<Vector> lumped = std::nullopt);

  Eigen::Index size() const override { return mass_.rows(); }
  const SparseMatrix& mass() const override { return mass_; }
  Vector lumped_mass() const override { return lumped_; }
  Vector external_force(double t) const override;
  Vector internal_force(const Vector& u, const Vector& v) const override;
  SparseMatrix tangent_stiffness(const Vector&, const Vector&) const override { return stiffness_; }
  SparseMatrix tangent_damping(const Vector&, const Vector&) const override { return damping_; }
  bool is_linear() const override { return true; }

  const SparseMatrix& damping() const { return damping_; }
  const SparseMatrix& stiffness() const { return stiffness_; }

 private:
  SparseMatrix mass_, damping_, stiffness_;
  Vector lumped_;
  Load load_;
};

Vector lump_rows(const SparseMatrix& mass);

/// Stacked state [udot_dl; u] with udot_dl = dt * u'.
class StateVector {
 public:
  StateVector(Vector stacked, double dt);

  static StateVector from_physical(const Vector& u, const Vector& v, double dt);

  const Vector& stacked() const { return z_; }
  double dt() const { return dt_; }
  Eigen::Index dofs() const { return z_.size() / 2; }
  Vector velocity_dl() const { return z_.head(dofs()); }
  Vector displacement() const { return z_.tail(dofs()); }
  Vector velocity() const { return velocity_dl() / dt_; }
  /// Same physical state paired with a new step size.
  StateVector rescaled(double new_dt) const;

 private:
  Vector z_;
  double dt_;
};

/// f_E(t) - f_I(u, v) + C v + K u with C, K frozen at the step start; exactly f_E for linear systems.
Vector nonlinear_remainder(const DynamicSystem& sys, const Vector& u, const Vector& v, double t, const Tangents& frozen);

/// Physical acceleration from M a = f_E(t0) - f_I(u0, v0) using the consistent mass.
Vector initial_acceleration(const DynamicSystem& sys, const Vector& u, const Vector& v, double t0);

Tangents freeze_tangents(const DynamicSystem& sys, const Vector& u, const Vector& v);

}  // namespace chronos
