#include "chronos/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

#include "chronos/errors.hpp"

namespace chronos {

namespace {

double weighted_ratio(std::span<const double> num, std::span<const double> ref, double end_weight) {
  if (num.size() != ref.size()) throw InvalidArgument("numerical and reference series differ in length");
  if (num.empty()) throw InvalidArgument("error norm needs at least one sample");
  double diff = 0.0, energy = 0.0;
  for (std::size_t i = 0; i < num.size(); ++i) {
    const double w = (i == 0 || i + 1 == num.size()) && num.size() > 1 ? end_weight : 1.0;
    diff += w * (num[i] - ref[i]) * (num[i] - ref[i]);
    energy += w * ref[i] * ref[i];
  }
  if (!(energy > 0.0)) throw InvalidArgument("reference signal has zero energy");
  return diff / energy * 100.0;
}

}  // namespace

double l2_error(std::span<const double> numerical, std::span<const double> reference) {
  return weighted_ratio(numerical, reference, 1.0);
}

double l2_error_trapezoid(std::span<const double> numerical, std::span<const double> reference) {
  return weighted_ratio(numerical, reference, 0.5);
}

double l2_error(const TimeHistory& history, const ReferenceFn& reference, char quantity) {
  if (!reference) throw InvalidArgument("benchmark has no reference solution");
  std::vector<double> num, ref;
  for (std::size_t i = 1; i < history.size(); ++i) {
    const ReferenceState r = reference(history.times[i]);
    const Vector* x = nullptr;
    const Vector* y = nullptr;
    switch (quantity) {
      case 'u': x = &history.u[i]; y = &r.u; break;
      case 'v': x = &history.v[i]; y = &r.v; break;
      case 'a': x = &history.a[i]; y = &r.a; break;
      default: throw InvalidArgument(std::string("unknown quantity '") + quantity + "'");
    }
    for (Eigen::Index d = 0; d < x->size(); ++d) {
      num.push_back((*x)[d]);
      ref.push_back((*y)[d]);
    }
  }
  return l2_error(num, ref);
}

double rms_percent(double l2_percent) { return std::sqrt(l2_percent / 100.0) * 100.0; }

double fit_slope(std::span<const double> dts, std::span<const double> errors, double floor) {
  if (dts.size() != errors.size()) throw InvalidArgument("dt and error lists differ in length");
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  int n = 0;
  for (std::size_t i = 0; i < dts.size(); ++i) {
    if (!(errors[i] >= floor) || !std::isfinite(errors[i]) || !(dts[i] > 0.0)) continue;
    const double x = std::log(dts[i]), y = std::log(errors[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  if (n < 2) return std::numeric_limits<double>::quiet_NaN();
  const double den = n * sxx - sx * sx;
  if (den == 0.0) return std::numeric_limits<double>::quiet_NaN();
  return (n * sxy - sx * sy) / den;
}

std::vector<RadiusSample> radius_sweep(const SchemeCoefficients& coeffs, std::span<const double> omegas) {
  std::vector<RadiusSample> out;
  out.reserve(omegas.size());
  for (double w : omegas) out.push_back({w, spectral_radius(coeffs, w)});
  return out;
}

bool tail_monotone(std::span<const RadiusSample> sweep, double rho_inf, double from_omega, double slack) {
  double last = std::numeric_limits<double>::infinity();
  for (const RadiusSample& s : sweep) {
    if (s.omega < from_omega) continue;
    const double gap = std::abs(s.radius - rho_inf);
    if (gap > last + slack) return false;
    last = gap;
  }
  return true;
}

std::vector<double> log_grid(double lo, double hi, int count) {
  if (!(lo > 0.0 && hi > lo) || count < 2) throw InvalidArgument("log grid needs 0 < lo < hi and count >= 2");
  std::vector<double> out(count);
  const double a = std::log10(lo), b = std::log10(hi);
  for (int i = 0; i < count; ++i) out[i] = std::pow(10.0, a + (b - a) * i / (count - 1));
  return out;
}

std::string format_number(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string ConvergenceReport::to_csv() const {
  std::ostringstream os;
  os << "dt,err_u,err_v,err_a\n";
  for (std::size_t i = 0; i < dts.size(); ++i)
    os << format_number(dts[i]) << ',' << format_number(err_u[i]) << ',' << format_number(err_v[i]) << ','
       << format_number(err_a[i]) << '\n';
  return os.str();
}

nlohmann::json ConvergenceReport::to_json() const {
  return {{"scheme", scheme_id}, {"benchmark", benchmark}, {"theoretical_order", theoretical_order},
          {"dt", dts},           {"err_u", err_u},         {"err_v", err_v},
          {"err_a", err_a},      {"slope_u", slope_u},     {"slope_v", slope_v},
          {"slope_a", slope_a}};
}

int default_thread_count() {
  int hw = static_cast<int>(std::thread::hardware_concurrency());
  if (hw < 1) hw = 1;
  if (const char* env = std::getenv("CHRONOS_THREADS")) {
    int cap = 0;
    auto res = std::from_chars(env, env + std::char_traits<char>::length(env), cap);
    if (res.ec == std::errc() && cap >= 1) return cap;
  }
  return hw;
}

ConvergenceReport convergence_study(const BenchmarkDef& bench, const SchemeSpec& spec, std::span<const double> dts,
                                    const SimulationOptions& options, int threads) {
  if (dts.empty()) throw InvalidArgument("convergence study needs at least one step size");
  for (std::size_t i = 1; i < dts.size(); ++i)
    if (!(dts[i] < dts[i - 1])) throw InvalidArgument("step sizes must be strictly decreasing");
  if (!bench.reference) throw InvalidArgument("benchmark '" + bench.name + "' has no reference solution");

  auto scheme = std::make_shared<const SchemeCoefficients>(init_scheme(spec));
  ConvergenceReport rep;
  rep.scheme_id = spec.id();
  rep.benchmark = bench.name;
  rep.theoretical_order = theoretical_order(spec);
  rep.dts.assign(dts.begin(), dts.end());
  rep.err_u.assign(dts.size(), 0.0);
  rep.err_v.assign(dts.size(), 0.0);
  rep.err_a.assign(dts.size(), 0.0);

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < dts.size(); i = next++) {
      try {
        const long steps = std::lround(bench.t_end / dts[i]);
        const TimeHistory h = simulate(*bench.system, scheme, dts[i], steps, bench.u0, bench.v0, 0.0, options);
        rep.err_u[i] = l2_error(h, bench.reference, 'u');
        rep.err_v[i] = l2_error(h, bench.reference, 'v');
        rep.err_a[i] = l2_error(h, bench.reference, 'a');
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const int count = std::clamp(threads > 0 ? threads : default_thread_count(), 1, static_cast<int>(dts.size()));
  std::vector<std::thread> pool;
  for (int t = 1; t < count; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);

  // Points past the smallest error are dominated by accumulated round-off and are left out.
  auto slope = [&](const std::vector<double>& err) {
    const auto best = static_cast<std::size_t>(std::min_element(err.begin(), err.end()) - err.begin());
    std::vector<double> rms;
    for (std::size_t i = 0; i <= best; ++i) rms.push_back(rms_percent(err[i]));
    return fit_slope(std::span(rep.dts).first(best + 1), rms, kRoundoffFloorRmsPercent);
  };
  rep.slope_u = slope(rep.err_u);
  rep.slope_v = slope(rep.err_v);
  rep.slope_a = slope(rep.err_a);
  return rep;
}

}  // namespace chronos
