#include "chronos/problems.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>
#include <boost/math/special_functions/ellint_1.hpp>
#include <boost/numeric/odeint.hpp>

#include "chronos/errors.hpp"

namespace chronos {

namespace {

using std::numbers::pi;

Vector scalar(double x) { return Vector::Constant(1, x); }

ReferenceState scalar_state(double u, double v, double a) { return {scalar(u), scalar(v), scalar(a)}; }

std::vector<double> grid_from_period(double period, std::initializer_list<int> divisions) {
  std::vector<double> out;
  for (int d : divisions) out.push_back(period / d);
  return out;
}

class PendulumSystem : public DynamicSystem {
 public:
  PendulumSystem() : mass_(sparse_diagonal(Vector::Ones(1))) {}

  Eigen::Index size() const override { return 1; }
  const SparseMatrix& mass() const override { return mass_; }
  Vector external_force(double) const override { return Vector::Zero(1); }
  Vector internal_force(const Vector& u, const Vector&) const override { return scalar(std::sin(u[0])); }
  SparseMatrix tangent_stiffness(const Vector& u, const Vector&) const override {
    return sparse_diagonal(scalar(std::cos(u[0])));
  }
  SparseMatrix tangent_damping(const Vector&, const Vector&) const override { return SparseMatrix(1, 1); }
  bool is_linear() const override { return false; }

 private:
  SparseMatrix mass_;
};

class SinhChain : public DynamicSystem {
 public:
  explicit SinhChain(const ThreeDofParams& p) : p_(p) {
    Vector m(2);
    m << p.m2, p.m3;
    mass_ = sparse_diagonal(m);
  }

  Eigen::Index size() const override { return 2; }
  const SparseMatrix& mass() const override { return mass_; }
  Vector external_force(double t) const override {
    Vector f(2);
    f << p_.k1 * std::sin(p_.omega_p * t), 0.0;
    return f;
  }
  Vector internal_force(const Vector& u, const Vector&) const override {
    const double n2 = p_.k2 * std::sinh(u[1] - u[0]);
    Vector f(2);
    f << p_.k1 * u[0] - n2, n2;
    return f;
  }
  SparseMatrix tangent_stiffness(const Vector& u, const Vector&) const override {
    const double kt = p_.k2 * std::cosh(u[1] - u[0]);
    Eigen::Matrix2d k;
    k << p_.k1 + kt, -kt, -kt, kt;
    return sparse_from_dense(k);
  }
  SparseMatrix tangent_damping(const Vector&, const Vector&) const override { return SparseMatrix(2, 2); }
  bool is_linear() const override { return false; }

 private:
  ThreeDofParams p_;
  SparseMatrix mass_;
};

using PendulumState = std::array<double, 2>;

void pendulum_rhs(const PendulumState& x, PendulumState& dx, double) {
  dx[0] = x[1];
  dx[1] = -std::sin(x[0]);
}

auto pendulum_stepper(double tol) {
  return boost::numeric::odeint::make_controlled(tol, tol,
                                                 boost::numeric::odeint::runge_kutta_fehlberg78<PendulumState>());
}

}  // namespace

BenchmarkDef sdof_linear() {
  constexpr double omega = 2.0 * pi;
  const double w1 = 2.0 * std::sqrt(5.0) / 5.0;
  const double w2 = 2.0 * std::sqrt(10.0);
  const double k = omega * omega;
  const double c1 = 10.0 / (k - w1 * w1);
  const double c2 = 70.0 / (k - w2 * w2);
  const double u0 = 2.0, v0 = pi / 3.0;
  const double a_h = u0 - c1;
  const double b_h = (v0 - c2 * w2) / omega;

  auto load = [w1, w2](double t) { return scalar(10.0 * std::cos(w1 * t) + 70.0 * std::sin(w2 * t)); };
  BenchmarkDef def;
  def.name = "sdof";
  def.system = std::make_shared<LinearSystem>(sparse_diagonal(Vector::Ones(1)), SparseMatrix(1, 1),
                                              sparse_diagonal(scalar(k)), load);
  def.u0 = scalar(u0);
  def.v0 = scalar(v0);
  def.reference = [=](double t) {
    const double ch = std::cos(omega * t), sh = std::sin(omega * t);
    const double c_1 = std::cos(w1 * t), s_1 = std::sin(w1 * t);
    const double c_2 = std::cos(w2 * t), s_2 = std::sin(w2 * t);
    const double u = a_h * ch + b_h * sh + c1 * c_1 + c2 * s_2;
    const double v = omega * (-a_h * sh + b_h * ch) - w1 * c1 * s_1 + w2 * c2 * c_2;
    const double a = -k * (a_h * ch + b_h * sh) - w1 * w1 * c1 * c_1 - w2 * w2 * c2 * s_2;
    return scalar_state(u, v, a);
  };
  def.dof_labels = {"u"};
  def.period = 1.0;
  def.t_end = 10.0;
  def.dt_grid = grid_from_period(def.period, {10, 20, 40, 80, 160, 320});
  def.rho_set = {0.0, 1.0};
  return def;
}

double pendulum_period(double theta_dot0) {
  const double k = theta_dot0 / 2.0;
  if (!(k > 0.0 && k < 1.0)) throw InvalidArgument("pendulum rate must lie in (0, 2) for an oscillating solution");
  return 4.0 * boost::math::ellint_1(k);
}

PendulumOracle::PendulumOracle(double theta_dot0, double t_max, double tol)
    : spacing_(0.05), t_max_(t_max), tol_(tol) {
  if (!(t_max > 0.0)) throw InvalidArgument("oracle horizon must be positive");
  PendulumState x{0.0, theta_dot0};
  const double horizon = spacing_ * std::ceil(t_max / spacing_ + 1.0);
  boost::numeric::odeint::integrate_const(pendulum_stepper(tol_), pendulum_rhs, x, 0.0, horizon, spacing_,
                                          [this](const PendulumState& s, double) { table_.push_back(s); });
}

ReferenceState PendulumOracle::at(double t) const {
  if (t < 0.0 || t > t_max_ + spacing_) throw InvalidArgument("time outside the oracle horizon");
  auto idx = static_cast<std::size_t>(std::floor(t / spacing_));
  idx = std::min(idx, table_.size() - 1);
  PendulumState x = table_[idx];
  const double t0 = static_cast<double>(idx) * spacing_;
  if (t > t0) {
    boost::numeric::odeint::integrate_adaptive(pendulum_stepper(tol_), pendulum_rhs, x, t0, t,
                                               std::min(spacing_, t - t0));
  }
  return scalar_state(x[0], x[1], -std::sin(x[0]));
}

BenchmarkDef pendulum(double theta_dot0) {
  BenchmarkDef def;
  def.name = "pendulum";
  def.system = std::make_shared<PendulumSystem>();
  def.u0 = scalar(0.0);
  def.v0 = scalar(theta_dot0);
  def.period = pendulum_period(theta_dot0);
  def.t_end = 2.0 * def.period;
  auto oracle = std::make_shared<const PendulumOracle>(theta_dot0, def.t_end);
  def.reference = [oracle](double t) { return oracle->at(t); };
  def.dof_labels = {"theta"};
  def.dt_grid = grid_from_period(def.period, {200, 400, 800, 1600, 3200, 6400});
  def.rho_set = {0.0, 1.0};
  return def;
}

BenchmarkDef three_dof(SpringKind kind, const ThreeDofParams& p) {
  BenchmarkDef def;
  if (kind == SpringKind::Linear) {
    def.name = "3dof-linear";
    Eigen::Matrix2d m, k;
    m << p.m2, 0.0, 0.0, p.m3;
    k << p.k1 + p.k2, -p.k2, -p.k2, p.k2;
    auto load = [p](double t) {
      Vector f(2);
      f << p.k1 * std::sin(p.omega_p * t), 0.0;
      return f;
    };
    def.system = std::make_shared<LinearSystem>(sparse_from_dense(m), SparseMatrix(2, 2), sparse_from_dense(k), load);
    def.reference = [p](double t) { return three_dof_modal_reference(p, t); };
  } else {
    def.name = "3dof-sinh";
    def.system = std::make_shared<SinhChain>(p);
  }
  def.u0 = Vector::Zero(2);
  def.v0 = Vector::Zero(2);
  def.dof_labels = {"u2", "u3"};
  def.period = 2.0 * pi / p.omega_p;
  def.t_end = 10.0;
  def.dt_grid = {kind == SpringKind::Linear ? 0.14 : 0.03};
  def.rho_set = {0.0};
  return def;
}

double reaction_force(const ThreeDofParams& p, double t, double u2) { return p.k1 * (std::sin(p.omega_p * t) - u2); }

ReferenceState three_dof_modal_reference(const ThreeDofParams& p, double t, bool stiff_transient) {
  Eigen::Matrix2d m, k;
  m << p.m2, 0.0, 0.0, p.m3;
  k << p.k1 + p.k2, -p.k2, -p.k2, p.k2;
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::Matrix2d> eig(k, m);
  const Eigen::Vector2d lambda = eig.eigenvalues();
  const Eigen::Matrix2d phi = eig.eigenvectors();
  const double wp = p.omega_p;
  Vector q(2), qd(2), qdd(2);
  for (int j = 0; j < 2; ++j) {
    const double wj = std::sqrt(lambda[j]);
    const double amp = p.k1 * phi(0, j) / (lambda[j] - wp * wp);
    // Eigenvalues are ascending; index 1 is the stiff mode.
    const double free = (j == 0 || stiff_transient) ? wp / wj : 0.0;
    q[j] = amp * (std::sin(wp * t) - free * std::sin(wj * t));
    qd[j] = amp * (wp * std::cos(wp * t) - free * wj * std::cos(wj * t));
    qdd[j] = amp * (-wp * wp * std::sin(wp * t) + free * wj * wj * std::sin(wj * t));
  }
  return {phi * q, phi * qd, phi * qdd};
}

double TriangularLoad::value(double t) const {
  if (t <= 0.0 || t >= duration) return 0.0;
  if (t <= t_peak) return peak * t / t_peak;
  return peak * (duration - t) / (duration - t_peak);
}

double TriangularLoad::rate(double t) const {
  if (t <= 0.0 || t >= duration) return 0.0;
  if (t < t_peak) return peak / t_peak;
  return -peak / (duration - t_peak);
}

double TriangularLoad::integral(double t) const {
  if (t <= 0.0) return 0.0;
  if (t <= t_peak) return 0.5 * peak * t * t / t_peak;
  const double rise = 0.5 * peak * t_peak;
  if (t >= duration) return rise + 0.5 * peak * (duration - t_peak);
  const double fall = duration - t_peak;
  const double remaining = duration - t;
  return rise + 0.5 * peak * fall - 0.5 * peak * remaining * remaining / fall;
}

double RodMesh::wave_speed() const { return std::sqrt(modulus / density); }

BenchmarkDef rod(const RodMesh& mesh, const TriangularLoad& load) {
  if (mesh.elements < 2) throw InvalidArgument("rod needs at least two elements");
  const int n = mesh.elements;
  const double h = mesh.dx();
  const double me = mesh.density * mesh.area * h / 6.0;
  const double ke = mesh.modulus * mesh.area / h;
  std::vector<Eigen::Triplet<double>> mt, kt;
  for (int e = 0; e < n; ++e) {
    // Element e joins nodes e and e+1; node 0 is fixed, node j maps to DOF j-1.
    const int dofs[2] = {e - 1, e};
    const double mloc[2][2] = {{2.0 * me, me}, {me, 2.0 * me}};
    const double kloc[2][2] = {{ke, -ke}, {-ke, ke}};
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) {
        if (dofs[a] < 0 || dofs[b] < 0) continue;
        mt.emplace_back(dofs[a], dofs[b], mloc[a][b]);
        kt.emplace_back(dofs[a], dofs[b], kloc[a][b]);
      }
    }
  }
  SparseMatrix m(n, n), k(n, n);
  m.setFromTriplets(mt.begin(), mt.end());
  k.setFromTriplets(kt.begin(), kt.end());

  auto loadfn = [load, n](double t) {
    Vector f = Vector::Zero(n);
    f[n - 1] = load.value(t);
    return f;
  };
  BenchmarkDef def;
  def.name = "rod";
  // Element lumping rho A h / 2 per node; row sums of the reduced matrix would drop the fixed-node share.
  Vector lumped = Vector::Constant(n, mesh.density * mesh.area * h);
  lumped[n - 1] *= 0.5;
  def.system = std::make_shared<LinearSystem>(m, SparseMatrix(n, n), k, loadfn, std::move(lumped));
  def.u0 = Vector::Zero(n);
  def.v0 = Vector::Zero(n);
  def.reference = [mesh, load, n](double t) {
    ReferenceState s{Vector(n), Vector(n), Vector(n)};
    for (int j = 0; j < n; ++j) {
      const PointState p = rod_dalembert(mesh, mesh.dof_coordinate(j), t, load);
      s.u[j] = p.u;
      s.v[j] = p.v;
      s.a[j] = p.a;
    }
    return s;
  };
  for (int j = 0; j < n; ++j) def.dof_labels.push_back("x" + std::to_string(j + 1));
  def.period = mesh.length / mesh.wave_speed();
  def.t_end = 1.0;
  def.dt_grid = {mesh.dt_for_cfl(1.0)};
  def.rho_set = {0.0};
  return def;
}

PointState rod_dalembert(const RodMesh& mesh, double x, double t, const TriangularLoad& load) {
  const double c = mesh.wave_speed();
  const double ea = mesh.modulus * mesh.area;
  const double len = mesh.length;
  // G' = c F / (EA) is the particle velocity carried by a wave leaving the loaded end.
  auto term = [&](double tau) {
    PointState p;
    if (tau <= 0.0) return p;
    p.u = c / ea * load.integral(tau);
    p.v = c / ea * load.value(tau);
    p.a = c / ea * load.rate(tau);
    return p;
  };
  PointState out;
  for (int k = 0;; ++k) {
    const double delay_in = ((2 * k + 1) * len - x) / c;
    if (delay_in >= t) break;
    const double sign = k % 2 == 0 ? 1.0 : -1.0;
    const PointState a = term(t - delay_in);
    const PointState b = term(t - ((2 * k + 1) * len + x) / c);
    out.u += sign * (a.u - b.u);
    out.v += sign * (a.v - b.v);
    out.a += sign * (a.a - b.a);
  }
  return out;
}

BenchmarkDef make_benchmark(std::string_view name, const BenchmarkOptions& options) {
  if (name == "sdof") return sdof_linear();
  if (name == "pendulum") return pendulum(options.pendulum_rate);
  if (name == "3dof-linear") return three_dof(SpringKind::Linear);
  if (name == "3dof-sinh") return three_dof(SpringKind::Sinh);
  if (name == "rod") {
    RodMesh mesh;
    mesh.elements = options.rod_elements;
    return rod(mesh);
  }
  throw InvalidArgument("unknown benchmark '" + std::string(name) + "'");
}

std::vector<std::string> benchmark_names() { return {"sdof", "pendulum", "3dof-linear", "3dof-sinh", "rod"}; }

}  // namespace chronos
