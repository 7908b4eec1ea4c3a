#include "chronos/stepper.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "chronos/errors.hpp"

namespace chronos {

NonConvergence::NonConvergence(int iterations, double residual, long step)
    : std::runtime_error("fixed-point iteration did not converge after " + std::to_string(iterations) +
                         " iterations (residual " + std::to_string(residual) + ")" +
                         (step >= 0 ? " at step " + std::to_string(step) : std::string())),
      iterations_(iterations),
      residual_(residual),
      step_(step) {}

void IterationSettings::validate() const {
  if (!(tol_rel > 0.0)) throw InvalidArgument("iteration tolerance must be positive");
  if (max_iter < 1) throw InvalidArgument("max_iter must be >= 1");
}

StepContext::StepContext(std::shared_ptr<const SchemeCoefficients> scheme, const DynamicSystem& sys, double dt)
    : scheme_(std::move(scheme)), dt_(dt), mass_(sys.mass()) {
  if (!scheme_) throw InvalidArgument("step context needs a scheme");
  if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidArgument("time step must be positive and finite");
  const Vector lumped = sys.lumped_mass();
  if (lumped.size() != mass_.rows() || (lumped.array() <= 0.0).any())
    throw InvalidArgument("lumped mass must be positive");
  inv_lumped_ = (dt * dt) * lumped.cwiseInverse();
  forces_ = Eigen::MatrixXd::Zero(mass_.rows(), static_cast<Eigen::Index>(scheme_->sample_points.size()));
}

Complex StepContext::root_value(std::size_t root) const {
  if (scheme_->family() == Family::SingleMultipleRoot) return scheme_->root;
  return scheme_->roots.roots.at(root);
}

void StepContext::set_tangents(Tangents tangents) {
  tangents_ = std::move(tangents);
  real_lu_.clear();
  complex_lu_.clear();
  const SparseMatrix& c = tangents_.damping;
  const SparseMatrix& k = tangents_.stiffness;
  if (scheme_->family() == Family::SingleMultipleRoot) {
    real_lu_.push_back(factorize(assemble_effective(scheme_->root, dt_, mass_, c, k)));
  } else {
    const RootSet& rs = scheme_->roots;
    for (std::size_t i = 0; i < rs.roots.size(); ++i) {
      if (rs.is_real(i))
        real_lu_.push_back(factorize(assemble_effective(rs.roots[i].real(), dt_, mass_, c, k)));
      else
        complex_lu_.push_back(factorize(assemble_effective(rs.roots[i], dt_, mass_, c, k)));
    }
  }
  has_tangents_ = true;
}

void StepContext::check_ready() const {
  if (!has_tangents_) throw InvalidArgument("step context has no tangents; call set_tangents first");
}

SubstepSolution<double> StepContext::substep_solve(std::size_t root, const Vector& g1, const Vector& g2,
                                                   const Vector& f) const {
  check_ready();
  const Complex rc = root_value(root);
  if (rc.imag() != 0.0) throw InvalidArgument("real sub-step requested for a complex root");
  const double r = rc.real();
  const std::size_t slot = scheme_->family() == Family::SingleMultipleRoot ? 0 : root;
  const Vector rhs = r * (mass_ * g1) - (dt_ * dt_) * (tangents_.stiffness * g2) + (r * dt_ * dt_) * f;
  SubstepSolution<double> out;
  out.x1 = real_lu_.at(slot).solve(rhs);
  out.x2 = (out.x1 + g2) / r;
  return out;
}

SubstepSolution<Complex> StepContext::substep_solve(std::size_t root, const CVector& g1, const CVector& g2,
                                                    const CVector& f) const {
  check_ready();
  if (scheme_->family() != Family::DistinctRoots || scheme_->roots.is_real(root))
    throw InvalidArgument("complex sub-step requested for a real root");
  const Complex r = root_value(root);
  const CVector rhs = r * (mass_.cast<Complex>() * g1) - Complex(dt_ * dt_) * (tangents_.stiffness.cast<Complex>() * g2) +
                      (r * dt_ * dt_) * f;
  SubstepSolution<Complex> out;
  out.x1 = complex_lu_.at(root - scheme_->roots.real_count).solve(rhs);
  out.x2 = (out.x1 + g2) / r;
  return out;
}

std::vector<CVector> StepContext::force_vectors_distinct() const {
  const Eigen::MatrixXcd f = forces_.cast<Complex>() * scheme_->distinct_weights;
  std::vector<CVector> out;
  for (Eigen::Index i = 0; i < f.cols(); ++i) out.emplace_back(f.col(i));
  return out;
}

std::vector<Vector> StepContext::force_vectors_multiroot() const {
  const Eigen::MatrixXd f = forces_ * scheme_->multiroot_weights;
  std::vector<Vector> out;
  for (Eigen::Index i = 0; i < f.cols(); ++i) out.emplace_back(f.col(i));
  return out;
}

Vector acc_update(double rho, const Vector& acc_prev, const Vector& contributions) {
  if (rho == 0.0) return contributions;
  return rho * acc_prev + contributions;
}

namespace {

// Force terms that turn the upper block of A z into the acceleration dt^2 u''.
Vector endpoint_correction(const Eigen::MatrixXd& forces, const Vector& inv_lumped, double rho) {
  Vector out = inv_lumped.cwiseProduct(forces.col(forces.cols() - 1));
  if (rho != 0.0) out -= rho * inv_lumped.cwiseProduct(forces.col(0));
  return out;
}

}  // namespace

StepResult StepContext::step_distinct(const Vector& z_prev, const Vector& acc_prev) const {
  check_ready();
  const SchemeCoefficients& sc = *scheme_;
  if (sc.family() != Family::DistinctRoots) throw InvalidArgument("distinct step on a multiple-root scheme");
  const Eigen::Index n = dofs();
  if (z_prev.size() != 2 * n) throw InvalidArgument("state vector size does not match the system");

  const std::vector<CVector> fr = force_vectors_distinct();
  const Vector g1 = z_prev.head(n), g2 = z_prev.tail(n);
  Vector z = sc.rho * z_prev;
  Vector contrib = Vector::Zero(n);
  for (std::size_t i = 0; i < sc.roots.roots.size(); ++i) {
    const Complex r = sc.roots.roots[i];
    const Complex a = sc.residues[i];
    if (sc.roots.is_real(i)) {
      const double pl = sc.pl_at_roots[i].real();
      const Vector f = fr[i].real();
      const Vector h1 = pl * g1;
      const SubstepSolution<double> s = substep_solve(i, h1, Vector(pl * g2), f);
      z.head(n) += a.real() * s.x1;
      z.tail(n) += a.real() * s.x2;
      contrib += a.real() * (r.real() * s.x1 - h1 - inv_lumped_.cwiseProduct(f));
    } else {
      const Complex pl = sc.pl_at_roots[i];
      const CVector h1 = pl * g1.cast<Complex>();
      const SubstepSolution<Complex> s = substep_solve(i, h1, CVector(pl * g2.cast<Complex>()), fr[i]);
      // The conjugate root contributes the conjugate term.
      z.head(n) += 2.0 * (a * s.x1).real();
      z.tail(n) += 2.0 * (a * s.x2).real();
      contrib += 2.0 * (a * (r * s.x1 - h1 - inv_lumped_.cast<Complex>().cwiseProduct(fr[i]))).real();
    }
  }
  contrib += endpoint_correction(forces_, inv_lumped_, sc.rho);
  return {std::move(z), acc_update(sc.rho, acc_prev, contrib)};
}

StepResult StepContext::step_multiroot(const Vector& z_prev, const Vector& acc_prev) const {
  check_ready();
  const SchemeCoefficients& sc = *scheme_;
  if (sc.family() != Family::SingleMultipleRoot) throw InvalidArgument("multiple-root step on a distinct scheme");
  const Eigen::Index n = dofs();
  if (z_prev.size() != 2 * n) throw InvalidArgument("state vector size does not match the system");

  const std::vector<Vector> fr = force_vectors_multiroot();
  const int m = sc.order();
  Vector zi = Vector::Zero(2 * n);
  Vector contrib;
  for (int i = 0; i < m; ++i) {
    const Vector g = zi + sc.shifted_numerator[i] * z_prev;
    const Vector g1 = g.head(n);
    const SubstepSolution<double> s = substep_solve(0, g1, Vector(g.tail(n)), fr[i]);
    zi.head(n) = s.x1;
    zi.tail(n) = s.x2;
    if (i == m - 1) contrib = sc.root * s.x1 - g1 - inv_lumped_.cwiseProduct(fr[i]);
  }
  Vector z = sc.rho * z_prev + zi;
  contrib += endpoint_correction(forces_, inv_lumped_, sc.rho);
  return {std::move(z), acc_update(sc.rho, acc_prev, contrib)};
}

StepResult StepContext::step(const Vector& z_prev, const Vector& acc_prev) const {
  return scheme_->family() == Family::DistinctRoots ? step_distinct(z_prev, acc_prev) : step_multiroot(z_prev, acc_prev);
}

HermiteSample hermite_interpolate(const Vector& z_prev, const Vector& acc_prev, const Vector& z_est,
                                  const Vector& acc_est, double s) {
  const Eigen::Index n = z_prev.size() / 2;
  const double s2 = s * s, s3 = s2 * s, s4 = s3 * s, s5 = s4 * s;
  const double h[6] = {1.0 - 10.0 * s3 + 15.0 * s4 - 6.0 * s5,
                       s - 6.0 * s3 + 8.0 * s4 - 3.0 * s5,
                       0.5 * s2 - 1.5 * s3 + 1.5 * s4 - 0.5 * s5,
                       10.0 * s3 - 15.0 * s4 + 6.0 * s5,
                       -4.0 * s3 + 7.0 * s4 - 3.0 * s5,
                       0.5 * s3 - s4 + 0.5 * s5};
  const double d[6] = {-30.0 * s2 + 60.0 * s3 - 30.0 * s4,
                       1.0 - 18.0 * s2 + 32.0 * s3 - 15.0 * s4,
                       s - 4.5 * s2 + 6.0 * s3 - 2.5 * s4,
                       30.0 * s2 - 60.0 * s3 + 30.0 * s4,
                       -12.0 * s2 + 28.0 * s3 - 15.0 * s4,
                       1.5 * s2 - 4.0 * s3 + 2.5 * s4};
  const auto u0 = z_prev.tail(n), v0 = z_prev.head(n);
  const auto u1 = z_est.tail(n), v1 = z_est.head(n);
  HermiteSample out;
  out.u = h[0] * u0 + h[1] * v0 + h[2] * acc_prev + h[3] * u1 + h[4] * v1 + h[5] * acc_est;
  out.udot = d[0] * u0 + d[1] * v0 + d[2] * acc_prev + d[3] * u1 + d[4] * v1 + d[5] * acc_est;
  return out;
}

namespace {

void sample_external(StepContext& ctx, const DynamicSystem& sys, double t_prev) {
  Eigen::MatrixXd& f = ctx.sampled_forces();
  const auto& pts = ctx.sample_points();
  for (std::size_t k = 0; k < pts.size(); ++k)
    f.col(static_cast<Eigen::Index>(k)) = sys.external_force(t_prev + pts[k] * ctx.dt());
}

}  // namespace

AdvanceResult advance(StepContext& ctx, const DynamicSystem& sys, const IterationSettings& settings,
                      const Vector& z_prev, const Vector& acc_prev, double t_prev) {
  settings.validate();
  const Eigen::Index n = ctx.dofs();
  const double dt = ctx.dt();

  if (sys.is_linear()) {
    if (!ctx.has_tangents()) {
      const Vector zero = Vector::Zero(n);
      ctx.set_tangents(freeze_tangents(sys, zero, zero));
    }
    sample_external(ctx, sys, t_prev);
    StepResult r = ctx.step(z_prev, acc_prev);
    return {std::move(r.z), std::move(r.acc), 1};
  }

  ctx.set_tangents(freeze_tangents(sys, z_prev.tail(n), z_prev.head(n) / dt));

  // First-order Taylor extrapolation in dimensionless time.
  Vector z_est(2 * n);
  z_est.head(n) = z_prev.head(n) + acc_prev;
  z_est.tail(n) = z_prev.tail(n) + z_prev.head(n);
  Vector acc_est = acc_prev;

  const auto& pts = ctx.sample_points();
  double residual = std::numeric_limits<double>::infinity();
  for (int it = 1; it <= settings.max_iter; ++it) {
    if (settings.refresh_tangents && it > 1) ctx.set_tangents(freeze_tangents(sys, z_est.tail(n), z_est.head(n) / dt));
    Eigen::MatrixXd& f = ctx.sampled_forces();
    for (std::size_t k = 0; k < pts.size(); ++k) {
      const HermiteSample hs = hermite_interpolate(z_prev, acc_prev, z_est, acc_est, pts[k]);
      f.col(static_cast<Eigen::Index>(k)) =
          nonlinear_remainder(sys, hs.u, hs.udot / dt, t_prev + pts[k] * dt, ctx.tangents());
    }
    StepResult r = ctx.step(z_prev, acc_prev);
    if (!r.z.allFinite()) throw NumericalError("non-finite state during fixed-point iteration");
    residual = (r.z - z_est).lpNorm<Eigen::Infinity>() / (r.z.lpNorm<Eigen::Infinity>() + 1e-300);
    z_est = std::move(r.z);
    acc_est = std::move(r.acc);
    if (residual <= settings.tol_rel) return {std::move(z_est), std::move(acc_est), it};
  }
  throw NonConvergence(settings.max_iter, residual);
}

AdvanceResult advance(const DynamicSystem& sys, std::shared_ptr<const SchemeCoefficients> scheme,
                      const IterationSettings& settings, const Vector& z_prev, const Vector& acc_prev, double t_prev,
                      double dt) {
  StepContext ctx(std::move(scheme), sys, dt);
  return advance(ctx, sys, settings, z_prev, acc_prev, t_prev);
}

std::vector<double> TimeHistory::series(char quantity, Eigen::Index dof) const {
  const std::vector<Vector>* src = nullptr;
  switch (quantity) {
    case 'u': src = &u; break;
    case 'v': src = &v; break;
    case 'a': src = &a; break;
    default: throw InvalidArgument(std::string("unknown history quantity '") + quantity + "'");
  }
  std::vector<double> out;
  out.reserve(src->size());
  for (const Vector& x : *src) out.push_back(x[dof]);
  return out;
}

bool needs_initial_acceleration(const SchemeSpec& spec, const DynamicSystem& sys) {
  return spec.rho_inf != 0.0 || !sys.is_linear();
}

TimeHistory simulate(const DynamicSystem& sys, std::shared_ptr<const SchemeCoefficients> scheme, double dt, long steps,
                     const Vector& u0, const Vector& v0, double t0, const SimulationOptions& options) {
  if (steps < 0) throw InvalidArgument("step count must be non-negative");
  const Eigen::Index n = sys.size();
  if (u0.size() != n || v0.size() != n) throw InvalidArgument("initial conditions do not match the system size");
  options.iteration.validate();

  StepContext ctx(scheme, sys, dt);
  const bool needed = needs_initial_acceleration(scheme->spec, sys);
  Vector a0 = Vector::Constant(n, std::numeric_limits<double>::quiet_NaN());
  if (needed || options.report_initial_acceleration) a0 = initial_acceleration(sys, u0, v0, t0);
  Vector acc = needed ? Vector(dt * dt * a0) : Vector::Constant(n, std::numeric_limits<double>::quiet_NaN());

  TimeHistory h;
  h.dt = dt;
  h.times.reserve(steps + 1);
  h.times.push_back(t0);
  h.u.push_back(u0);
  h.v.push_back(v0);
  h.a.push_back(a0);
  h.iterations.push_back(0);

  Vector z(2 * n);
  z << dt * v0, u0;
  double t = t0;
  for (long step = 1; step <= steps; ++step) {
    AdvanceResult r;
    try {
      r = advance(ctx, sys, options.iteration, z, acc, t);
    } catch (const NonConvergence& e) {
      throw e.at_step(step);
    }
    z = std::move(r.z);
    acc = std::move(r.acc);
    t = t0 + static_cast<double>(step) * dt;
    h.times.push_back(t);
    h.u.push_back(z.tail(n));
    h.v.push_back(z.head(n) / dt);
    h.a.push_back(acc / (dt * dt));
    h.iterations.push_back(r.iterations);
  }
  return h;
}

}  // namespace chronos
