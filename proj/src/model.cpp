#include "chronos/model.hpp"

#include "chronos/errors.hpp"

namespace chronos {

Vector lump_rows(const SparseMatrix& mass) {
  Vector lumped = Vector::Zero(mass.rows());
  for (int k = 0; k < mass.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(mass, k); it; ++it) lumped[it.row()] += it.value();
  return lumped;
}

Vector DynamicSystem::lumped_mass() const { return lump_rows(mass()); }

LinearSystem::LinearSystem(SparseMatrix mass, SparseMatrix damping, SparseMatrix stiffness, Load load,
                           std::optional<Vector> lumped)
    : mass_(std::move(mass)), damping_(std::move(damping)), stiffness_(std::move(stiffness)), load_(std::move(load)) {
  const auto n = mass_.rows();
  for (const SparseMatrix* a : {&mass_, &damping_, &stiffness_})
    if (a->rows() != n || a->cols() != n) throw InvalidArgument("M, C and K must be square with equal dimension");
  if (!load_) throw InvalidArgument("linear system needs a load function");
  lumped_ = lumped ? std::move(*lumped) : lump_rows(mass_);
  if (lumped_.size() != n) throw InvalidArgument("lumped mass does not match the system size");
  if ((lumped_.array() <= 0.0).any()) throw InvalidArgument("lumped mass must be positive");
}

Vector LinearSystem::external_force(double t) const {
  Vector f = load_(t);
  if (f.size() != size()) throw InvalidArgument("load function returned a vector of the wrong size");
  return f;
}

Vector LinearSystem::internal_force(const Vector& u, const Vector& v) const { return damping_ * v + stiffness_ * u; }

StateVector::StateVector(Vector stacked, double dt) : z_(std::move(stacked)), dt_(dt) {
  if (z_.size() % 2 != 0) throw InvalidArgument("state vector length must be even");
  if (!(dt > 0.0)) throw InvalidArgument("time step must be positive");
}

StateVector StateVector::from_physical(const Vector& u, const Vector& v, double dt) {
  if (u.size() != v.size()) throw InvalidArgument("displacement and velocity sizes differ");
  Vector z(2 * u.size());
  z << dt * v, u;
  return StateVector(std::move(z), dt);
}

StateVector StateVector::rescaled(double new_dt) const {
  Vector z = z_;
  z.head(dofs()) *= new_dt / dt_;
  return StateVector(std::move(z), new_dt);
}

Vector nonlinear_remainder(const DynamicSystem& sys, const Vector& u, const Vector& v, double t, const Tangents& frozen) {
  if (sys.is_linear()) return sys.external_force(t);
  return sys.external_force(t) - sys.internal_force(u, v) + frozen.damping * v + frozen.stiffness * u;
}

Vector initial_acceleration(const DynamicSystem& sys, const Vector& u, const Vector& v, double t0) {
  const Vector rhs = sys.external_force(t0) - sys.internal_force(u, v);
  return factorize(sys.mass()).solve(rhs);
}

Tangents freeze_tangents(const DynamicSystem& sys, const Vector& u, const Vector& v) {
  return {sys.tangent_damping(u, v), sys.tangent_stiffness(u, v)};
}

}  // namespace chronos
