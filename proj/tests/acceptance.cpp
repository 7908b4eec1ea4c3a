// Acceptance criteria runner: `acceptance [N ...]` runs the listed criteria (all when none given)
// and prints one PASS/FAIL line per criterion. Exit status is non-zero when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "chronos/analysis.hpp"
#include "chronos/cli.hpp"
#include "chronos/errors.hpp"
#include "chronos/problems.hpp"
#include "chronos/stepper.hpp"
#include "dense_oracle.hpp"

using namespace chronos;

namespace {

constexpr double pi = std::numbers::pi;

struct Report {
  bool ok = true;
  std::vector<std::string> notes;

  void fail(const std::string& why) {
    ok = false;
    notes.push_back("FAIL " + why);
  }
  void note(const std::string& text) { notes.push_back(text); }
  /// Records a failure unless cond holds.
  void expect(bool cond, const std::string& what) {
    if (!cond) fail(what);
  }
};

std::string fmt(double v, int digits = 6) {
  std::ostringstream os;
  os.precision(digits);
  os << v;
  return os.str();
}

std::shared_ptr<const SchemeCoefficients> make_scheme(const SchemeSpec& spec) {
  return std::make_shared<const SchemeCoefficients>(init_scheme(spec));
}

/// Distinct M = 1..4 and multiroot M = 2..5, each at rho_inf 0 and 1.
std::vector<SchemeSpec> convergence_schemes() {
  std::vector<SchemeSpec> out;
  for (int m = 1; m <= 4; ++m)
    for (double rho : {0.0, 1.0}) out.push_back({Family::DistinctRoots, m, rho});
  for (int m = 2; m <= 5; ++m)
    for (double rho : {0.0, 1.0}) out.push_back({Family::SingleMultipleRoot, m, rho});
  return out;
}

std::vector<SchemeSpec> all_schemes(std::initializer_list<double> rhos) {
  std::vector<SchemeSpec> out;
  for (double rho : rhos) {
    for (int m = 1; m <= kMaxDistinctOrder; ++m) out.push_back({Family::DistinctRoots, m, rho});
    for (int m = 1; m <= kMaxMultirootOrder; ++m) out.push_back({Family::SingleMultipleRoot, m, rho});
  }
  return out;
}

bool close_rel(double got, double want, double rel) {
  if (want == 0.0) return std::abs(got) <= rel;
  return std::abs(got - want) <= rel * std::abs(want);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

TimeHistory run(const BenchmarkDef& b, const SchemeSpec& spec, double dt, double t_end) {
  return simulate(*b.system, make_scheme(spec), dt, std::lround(t_end / dt), b.u0, b.v0);
}

// 1. Printed coefficients of the worked examples.
Report criterion1() {
  Report r;
  const auto t0 = std::chrono::steady_clock::now();
  auto coeffs = [&](const char* family) {
    const char* argv[] = {"chronos", "coeffs", "--family", family, "--order", "3", "--rho", "0.125"};
    std::ostringstream out, err;
    if (run_cli(8, argv, out, err) != 0) throw std::runtime_error("coeffs failed: " + err.str());
    return nlohmann::json::parse(out.str());
  };
  constexpr double tol = 5e-4;
  // A printed value with fewer than four significant digits is matched to the digits shown; a tie is a mismatch.
  auto check = [&](const std::string& what, double got, double want) {
    std::ostringstream os;
    os << want;
    const std::string text = os.str();
    const auto dot = text.find('.');
    const int decimals = dot == std::string::npos ? 0 : static_cast<int>(text.size() - dot - 1);
    const double half_unit = 0.5 * std::pow(10.0, -decimals);
    if (!close_rel(got, want, tol) && !(std::abs(got - want) < half_unit))
      r.fail(what + " = " + fmt(got) + ", printed " + fmt(want));
  };

  const nlohmann::json d = coeffs("distinct");
  const double p[] = {67.5, 28, 4.125, 0.125}, q[] = {67.5, -39, 9.375, -1};
  for (int i = 0; i < 4; ++i) {
    check("P[" + std::to_string(i) + "]", d["numerator"][i].get<double>(), p[i]);
    check("Q[" + std::to_string(i) + "]", d["denominator"][i].get<double>(), q[i]);
  }
  check("r1", d["roots"][0][0].get<double>(), 3.7821);
  check("Re r2", d["roots"][1][0].get<double>(), 2.7964);
  check("Im r2", std::abs(d["roots"][1][1].get<double>()), 3.1665);
  check("a1", d["residues"][0][0].get<double>(), 0.909);
  check("Re a2", d["residues"][1][0].get<double>(), -0.0455);
  check("Im a2", d["residues"][1][1].get<double>(), 0.0142);
  const double pl[] = {75.9375, 23.6250, 5.2969};
  for (int i = 0; i < 3; ++i) check("P_L[" + std::to_string(i) + "]", d["reduced_numerator"][i].get<double>(), pl[i]);
  const double c[4][3] = {{67.5, -5.25, 1.125}, {0, -0.5625, 0.4375}, {5.625, -0.4375, 0.2812}, {0, -0.8438, 0.1094}};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 3; ++j)
      check("c[" + std::to_string(i) + "][" + std::to_string(j) + "]", d["force_coeffs"][i][j].get<double>(), c[i][j]);

  const nlohmann::json m = coeffs("multiroot");
  check("r", m["root"].get<double>(), 2.3917);
  const double pr[] = {-14.3410, 20.6678, -4.0418, 0.125};
  for (int i = 0; i < 4; ++i) check("pr[" + std::to_string(i) + "]", m["shifted_numerator"][i].get<double>(), pr[i]);
  const double cr[4][3] = {{-5.9963, 6.1345, 0.8750},
                           {0.4910, -1.5506, 0.5625},
                           {-1.0885, 0.4086, 0.2187},
                           {-0.6158, -0.8251, 0.1406}};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 3; ++j)
      check("c_r[" + std::to_string(i) + "][" + std::to_string(j) + "]", m["shifted_force_coeffs"][i][j].get<double>(),
            cr[i][j]);

  const double elapsed = seconds_since(t0);
  r.note("runtime " + fmt(elapsed, 3) + " s");
  r.expect(elapsed < 1.0, "runtime " + fmt(elapsed, 3) + " s exceeds 1 s");
  return r;
}

// 2. Backward Euler and trapezoidal rule as special cases.
Report criterion2() {
  Report r;
  auto sys = std::make_shared<LinearSystem>(sparse_diagonal(Vector::Ones(1)), SparseMatrix(1, 1),
                                            sparse_diagonal(Vector::Ones(1)), [](double) { return Vector(Vector::Zero(1)); });
  const double dt = 0.1;
  Eigen::Matrix2d a;
  a << 0.0, -dt * dt, 1.0, 0.0;
  const Eigen::Matrix2d id = Eigen::Matrix2d::Identity();
  const Eigen::Matrix2d be = (id - a).inverse();
  const Eigen::Matrix2d trap = (2.0 * id - a).inverse() * (2.0 * id + a);

  struct Case {
    SchemeSpec spec;
    Eigen::Matrix2d map;
    double v1, u1;
    const char* name;
  };
  const Case cases[] = {{{Family::SingleMultipleRoot, 1, 0.0}, be, -0.01 / 1.01, 1.0 / 1.01, "backward Euler"},
                        {{Family::DistinctRoots, 1, 1.0}, trap, -0.01 / 1.0025, 0.9975 / 1.0025, "trapezoidal"}};
  for (const Case& c : cases) {
    const TimeHistory h = simulate(*sys, make_scheme(c.spec), dt, 20, Vector::Ones(1), Vector::Zero(1));
    const double v1 = h.v[1][0] * dt, u1 = h.u[1][0];
    r.note(std::string(c.name) + ": z1 = (" + fmt(v1, 8) + ", " + fmt(u1, 8) + ")");
    r.expect(std::abs(v1 - c.v1) <= 1e-12 && std::abs(u1 - c.u1) <= 1e-12, std::string(c.name) + " first step");
    Eigen::Vector2d z(0.0, 1.0);
    double worst = 0.0;
    for (std::size_t i = 1; i < h.size(); ++i) {
      z = c.map * z;
      worst = std::max({worst, std::abs(h.v[i][0] * dt - z[0]), std::abs(h.u[i][0] - z[1])});
    }
    r.expect(worst <= 1e-12, std::string(c.name) + " 20-step deviation " + fmt(worst));
  }
  return r;
}

// 3. One step equals the explicit matrix-polynomial evaluation.
Report criterion3() {
  Report r;
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937 gen(2024);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double worst = 0.0;
  int cases = 0;
  for (Family fam : {Family::DistinctRoots, Family::SingleMultipleRoot})
    for (int m = 1; m <= 3; ++m)
      for (double rho : {0.0, 0.5, 1.0})
        for (int n : {1, 2, 4})
          for (int trial = 0; trial < 3; ++trial) {
            const testing::DenseSystem d = testing::random_system(n, gen);
            auto sys = std::make_shared<LinearSystem>(sparse_from_dense(d.m), sparse_from_dense(d.c),
                                                      sparse_from_dense(d.k),
                                                      [n](double) { return Vector(Vector::Zero(n)); });
            const auto sc = make_scheme({fam, m, rho});
            const double dt = 0.05 + 0.45 * std::abs(u(gen));
            StepContext ctx(sc, *sys, dt);
            ctx.set_tangents(freeze_tangents(*sys, Vector::Zero(n), Vector::Zero(n)));
            // Polynomial force of degree p_f in s, sampled at the scheme's points.
            const int pf = sc->force_order();
            Eigen::MatrixXd poly(n, pf + 1);
            for (auto& e : poly.reshaped()) e = u(gen);
            for (std::size_t k = 0; k < sc->sample_points.size(); ++k) {
              const double s = sc->sample_points[k];
              Vector f = Vector::Zero(n);
              for (int j = pf; j >= 0; --j) f = f * s + poly.col(j);
              ctx.sampled_forces().col(static_cast<Eigen::Index>(k)) = f;
            }
            Vector z(2 * n);
            for (auto& e : z) e = u(gen);
            const StepResult got = ctx.step(z, Vector::Zero(n));
            const Eigen::MatrixXd taylor = ctx.sampled_forces() * sc->transform;
            const Eigen::VectorXd want = testing::dense_step(*sc, d, dt, z, taylor);
            const double rel = (got.z - want).norm() / want.norm();
            worst = std::max(worst, rel);
            if (!(rel <= 1e-10)) r.fail(sc->spec.id() + " n=" + std::to_string(n) + " relative " + fmt(rel));
            ++cases;
          }
  const double elapsed = seconds_since(t0);
  r.note(std::to_string(cases) + " cases, worst relative difference " + fmt(worst, 3) + ", runtime " + fmt(elapsed, 3) +
         " s");
  r.expect(elapsed < 10.0, "runtime exceeds 10 s");
  return r;
}

// 4. Orders on the linear oscillator.
Report criterion4() {
  Report r;
  const auto t0 = std::chrono::steady_clock::now();
  const BenchmarkDef b = sdof_linear();
  for (const SchemeSpec& spec : convergence_schemes()) {
    const ConvergenceReport rep = convergence_study(b, spec, b.dt_grid);
    const double target = rep.theoretical_order;
    std::string line = spec.id() + ": order " + fmt(target) + ", slopes u " + fmt(rep.slope_u, 4) + " v " +
                       fmt(rep.slope_v, 4) + " a " + fmt(rep.slope_a, 4);
    const bool ok = std::abs(rep.slope_u - target) <= 0.25 && std::abs(rep.slope_v - target) <= 0.25 &&
                    std::abs(rep.slope_a - target) <= 0.25;
    if (ok)
      r.note(line);
    else
      r.fail(line);
  }
  const double elapsed = seconds_since(t0);
  r.note("runtime " + fmt(elapsed, 3) + " s");
  r.expect(elapsed < 60.0, "runtime exceeds 60 s");
  return r;
}

// Slope over the asymptotic window: errors at most 1e-2 and at least ten times the smallest error,
// taken only from step sizes at or above the one with the smallest error.
double window_slope(const std::vector<double>& dts, const std::vector<double>& rel, int& used) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < rel.size(); ++i)
    if (rel[i] < rel[best]) best = i;
  std::vector<double> x, y;
  for (std::size_t i = 0; i <= best; ++i)
    if (rel[i] <= 1e-2 && rel[i] >= 10.0 * rel[best]) {
      x.push_back(dts[i]);
      y.push_back(rel[i]);
    }
  used = static_cast<int>(x.size());
  return used >= 2 ? fit_slope(x, y, 0.0) : std::nan("");
}

// 5. Orders on the pendulum and the spurious revolution at a coarse step.
Report criterion5() {
  Report r;
  const auto t0 = std::chrono::steady_clock::now();
  BenchmarkDef b = pendulum();
  b.t_end = 2.0 * 33.712;
  std::vector<double> dts;
  for (int k = 0; k <= 9; ++k) dts.push_back(b.period / (200.0 * std::pow(2.0, k)));

  for (const SchemeSpec& spec : convergence_schemes()) {
    const ConvergenceReport rep = convergence_study(b, spec, dts);
    const double target = std::min(rep.theoretical_order, 7);
    std::string line = spec.id() + ": target " + fmt(target);
    bool ok = true;
    for (const auto& [name, err] : {std::pair{"u", &rep.err_u}, std::pair{"v", &rep.err_v}, std::pair{"a", &rep.err_a}}) {
      std::vector<double> rel;
      for (double e : *err) rel.push_back(rms_percent(e) / 100.0);
      int used = 0;
      const double s = window_slope(dts, rel, used);
      line += std::string(", ") + name + " " + fmt(s, 4) + " (" + std::to_string(used) + " pts)";
      ok = ok && used >= 2 && std::abs(s - target) <= 0.25;
    }
    if (ok) {
      r.note(line);
    } else {
      line += "; relative rms error in a:";
      for (double e : rep.err_a) line += " " + fmt(rms_percent(e) / 100.0, 3);
      r.fail(line);
    }
  }

  const double dt = 0.1686;
  for (int m : {2, 3, 4}) {
    const SchemeSpec spec{Family::DistinctRoots, m, 1.0};
    const TimeHistory h = run(b, spec, dt, b.t_end);
    double peak = 0.0;
    for (const Vector& u : h.u) peak = std::max(peak, std::abs(u[0]));
    const bool revolves = peak > pi;
    const std::string line = spec.id() + " at dt 0.1686: max |theta| " + fmt(peak, 5);
    if (m == 2 ? revolves : !revolves)
      r.note(line);
    else
      r.fail(line);
  }
  const double elapsed = seconds_since(t0);
  r.note("runtime " + fmt(elapsed, 3) + " s");
  r.expect(elapsed < 120.0, "runtime exceeds 120 s");
  return r;
}

// Worst relative L-infinity gap between the recovered and the directly solved acceleration.
double acceleration_gap(const BenchmarkDef& b, const TimeHistory& h) {
  const Factorization<double> mass = factorize(b.system->mass());
  double diff = 0.0, scale = 0.0;
  for (std::size_t i = 1; i < h.size(); ++i) {
    const Vector rhs = b.system->external_force(h.times[i]) - b.system->internal_force(h.u[i], h.v[i]);
    const Vector direct = mass.solve(rhs);
    diff = std::max(diff, (h.a[i] - direct).lpNorm<Eigen::Infinity>());
    scale = std::max(scale, direct.lpNorm<Eigen::Infinity>());
  }
  return diff / scale;
}

// 6. Recovered acceleration against the equation of motion.
Report criterion6() {
  Report r;
  struct Problem {
    BenchmarkDef bench;
    double dt;
  };
  const Problem problems[] = {{sdof_linear(), 0.025}, {three_dof(SpringKind::Linear), 0.14}, {three_dof(SpringKind::Sinh), 0.03}};
  for (const Problem& p : problems) {
    double worst = 0.0;
    std::string worst_id;
    for (const SchemeSpec& spec : convergence_schemes()) {
      const double gap = acceleration_gap(p.bench, run(p.bench, spec, p.dt, 10.0));
      if (!(gap < 1e-8)) r.fail(p.bench.name + " " + spec.id() + ": " + fmt(gap, 3));
      if (gap > worst) {
        worst = gap;
        worst_id = spec.id();
      }
    }
    r.note(p.bench.name + ": worst " + fmt(worst, 3) + " (" + worst_id + ")");
  }
  const BenchmarkDef rod_bench = rod();
  RodMesh mesh;
  const double gap = acceleration_gap(rod_bench, run(rod_bench, {Family::SingleMultipleRoot, 3, 0.0}, mesh.dt_for_cfl(5.0), 1.0));
  r.note("rod multiroot-M3-rho0 CFL 5: " + fmt(gap, 3));
  r.expect(gap < 1e-8, "rod gap " + fmt(gap, 3));
  return r;
}

// 7. Spectral radius bounds and limits.
Report criterion7() {
  Report r;
  const std::vector<double> grid = log_grid(1e-3, 1e6, 181);
  int count = 0;
  for (const SchemeSpec& spec : all_schemes({0.0, 0.125, 0.25, 0.5, 0.75, 1.0})) {
    const SchemeCoefficients c = init_scheme(spec);
    double peak = 0.0, flat = 0.0;
    for (const RadiusSample& s : radius_sweep(c, grid)) {
      peak = std::max(peak, s.radius);
      flat = std::max(flat, std::abs(s.radius - 1.0));
    }
    const double limit = std::abs(spectral_radius(c, 1e8) - spec.rho_inf);
    r.expect(peak <= 1.0 + 1e-9, spec.id() + ": peak radius " + fmt(peak, 12));
    r.expect(limit < 1e-4, spec.id() + ": |rho(1e8) - rho_inf| = " + fmt(limit, 3));
    if (spec.family == Family::DistinctRoots && spec.rho_inf == 1.0)
      r.expect(flat <= 1e-10, spec.id() + ": radius departs from 1 by " + fmt(flat, 3));
    ++count;
  }
  r.note(std::to_string(count) + " schemes swept");
  return r;
}

// 8. Three-DOF problems: long-run boundedness, reaction accuracy, nonlinear agreement.
Report criterion8() {
  Report r;
  const BenchmarkDef lin = three_dof(SpringKind::Linear);
  for (const SchemeSpec& spec : all_schemes({0.0})) {
    const TimeHistory h = run(lin, spec, 0.14, 5000.0);
    double early = 0.0, late = 0.0;
    for (std::size_t i = 0; i < h.size(); ++i) {
      const double m = h.u[i].cwiseAbs().maxCoeff();
      if (!std::isfinite(m)) late = std::numeric_limits<double>::infinity();
      if (h.times[i] <= 100.0) early = std::max(early, m);
      late = std::max(late, m);
    }
    r.expect(late < 10.0 * early, spec.id() + ": max |u| " + fmt(late) + " vs " + fmt(early) + " in the first 100 s");
  }

  const ThreeDofParams params;
  auto reaction_error = [&](int m, std::size_t first = 1) {
    const TimeHistory h = run(lin, {Family::SingleMultipleRoot, m, 0.0}, 0.14, 10.0);
    std::vector<double> num, ref;
    for (std::size_t i = first; i < h.size(); ++i) {
      num.push_back(reaction_force(params, h.times[i], h.u[i][0]));
      ref.push_back(reaction_force(params, h.times[i], three_dof_modal_reference(params, h.times[i]).u[0]));
    }
    return l2_error(num, ref);
  };
  const double e2 = reaction_error(2), e5 = reaction_error(5);
  r.note("reaction L2 on [0,10]: M=2 " + fmt(e2, 4) + "%, M=5 " + fmt(e5, 4) + "%");
  // Informational: the first step still carries the stiff start-up transient left out of the reference.
  const double late2 = reaction_error(2, 2), late5 = reaction_error(5, 2);
  r.note("reaction L2 from the second step: M=2 " + fmt(late2, 4) + "%, M=5 " + fmt(late5, 4) + "%");
  r.expect(e5 * 10.0 <= e2, "M=5 reaction error is not 10x below M=2");

  const BenchmarkDef nl = three_dof(SpringKind::Sinh);
  const SchemeSpec group[] = {{Family::SingleMultipleRoot, 4, 0.0},
                              {Family::SingleMultipleRoot, 5, 0.0},
                              {Family::SingleMultipleRoot, 6, 0.0},
                              {Family::DistinctRoots, 3, 0.0},
                              {Family::DistinctRoots, 4, 0.0}};
  std::vector<std::vector<double>> acc, settled;
  for (const SchemeSpec& spec : group) {
    const TimeHistory h = run(nl, spec, 0.03, 10.0);
    std::vector<double> a, late;
    for (std::size_t i = 1; i < h.size(); ++i)
      for (Eigen::Index d = 0; d < h.a[i].size(); ++d) {
        a.push_back(h.a[i][d]);
        if (h.times[i] >= 0.15) late.push_back(h.a[i][d]);
      }
    acc.push_back(std::move(a));
    settled.push_back(std::move(late));
  }
  // Informational: agreement once the stiff start-up transient has been damped out.
  double worst_settled = 0.0;
  for (std::size_t i = 0; i < settled.size(); ++i)
    for (std::size_t j = 0; j < settled.size(); ++j)
      if (i != j) worst_settled = std::max(worst_settled, l2_error(settled[i], settled[j]));
  r.note("sinh pairwise acceleration L2 on [0.15,10]: worst " + fmt(worst_settled, 4) + "%");
  double worst = 0.0;
  for (std::size_t i = 0; i < acc.size(); ++i)
    for (std::size_t j = 0; j < acc.size(); ++j)
      if (i != j) {
        const double e = l2_error(acc[i], acc[j]);
        worst = std::max(worst, e);
        r.expect(e < 1.0, group[i].id() + " vs " + group[j].id() + ": " + fmt(e, 4) + "%");
      }
  r.note("sinh pairwise acceleration L2: worst " + fmt(worst, 4) + "%");
  return r;
}

// 9. Rod: free-end velocity accuracy and spurious acceleration after the pulse.
Report criterion9() {
  Report r;
  RodMesh mesh;
  const TriangularLoad load;
  const BenchmarkDef b = rod(mesh, load);

  const TimeHistory h = run(b, {Family::DistinctRoots, 2, 0.0}, mesh.dt_for_cfl(10.0), 1.0);
  std::vector<double> num, ref;
  for (std::size_t i = 1; i < h.size(); ++i) {
    num.push_back(h.v[i][mesh.free_end_dof()]);
    ref.push_back(rod_dalembert(mesh, mesh.length, h.times[i], load).v);
  }
  const double err = l2_error(num, ref);
  r.note("distinct-M2-rho0 CFL 10 free-end velocity L2 " + fmt(err, 4) + "%");
  r.expect(err < 5.0, "free-end velocity error not below 5%");

  // Point B is the mid-span node; the pulse has left it by t = 0.9 and the reflection returns at t = 1.5.
  double overshoot[2] = {0.0, 0.0};
  auto spurious = [&](int m, double cfl) {
    const TimeHistory hb = run(b, {Family::SingleMultipleRoot, m, 0.0}, mesh.dt_for_cfl(cfl), 1.45);
    double peak = 0.0;
    for (std::size_t i = 0; i < hb.size(); ++i) {
      if (hb.times[i] >= 0.95 && hb.times[i] <= 1.45) peak = std::max(peak, std::abs(hb.a[i][mesh.midpoint_dof()]));
      if (hb.times[i] <= 0.4) overshoot[m - 2] = std::max(overshoot[m - 2], std::abs(hb.a[i][mesh.free_end_dof()]));
    }
    return peak;
  };
  const double s3 = spurious(3, 5.0), s2 = spurious(2, 1.0);
  r.note("peak |a| at B on [0.95, 1.45]: M=3 CFL 5 " + fmt(s3, 4) + ", M=2 CFL 1 " + fmt(s2, 4));
  // Informational: overshoot at the loaded end during the pulse, where the exact peak is 5e-4.
  r.note("peak |a| at A on [0, 0.4]: M=3 CFL 5 " + fmt(overshoot[1], 4) + ", M=2 CFL 1 " + fmt(overshoot[0], 4));
  r.expect(5.0 * s3 <= s2, "M=3 spurious acceleration is not 5x below M=2");
  return r;
}

const std::function<Report()> kCriteria[] = {criterion1, criterion2, criterion3, criterion4, criterion5,
                                             criterion6, criterion7, criterion8, criterion9};

const char* kTitles[] = {"coefficient reproduction",
                         "degenerate-scheme identities",
                         "dense-oracle equivalence",
                         "linear SDOF convergence",
                         "nonlinear pendulum convergence",
                         "acceleration consistency",
                         "stability and dissipation",
                         "3DOF boundedness and agreement",
                         "rod wave propagation"};

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) {
    const int n = std::atoi(argv[i]);
    if (n < 1 || n > 9) {
      std::cerr << "usage: acceptance [1-9 ...]\n";
      return 2;
    }
    selected.push_back(n);
  }
  if (selected.empty())
    for (int n = 1; n <= 9; ++n) selected.push_back(n);

  bool all_ok = true;
  for (int n : selected) {
    Report rep;
    try {
      rep = kCriteria[n - 1]();
    } catch (const std::exception& e) {
      rep.fail(std::string("exception: ") + e.what());
    }
    for (const std::string& line : rep.notes) std::cout << "  [" << n << "] " << line << '\n';
    std::cout << "criterion " << n << " (" << kTitles[n - 1] << "): " << (rep.ok ? "PASS" : "FAIL") << std::endl;
    all_ok = all_ok && rep.ok;
  }
  return all_ok ? 0 : 1;
}
