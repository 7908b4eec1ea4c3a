#include "chronos/schemes.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/LU>

#include "chronos/errors.hpp"

namespace chronos {

namespace {

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

double binomial(int n, int k) { return factorial(n) / (factorial(k) * factorial(n - k)); }

std::string shortest(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

struct PadeTerms {
  std::vector<double> p, q;
};

// Pade (L,M) expansion of e^x.
PadeTerms pade_expansion(int m, int l) {
  PadeTerms t;
  for (int i = 0; i <= l; ++i) t.p.push_back(factorial(m + l - i) / (factorial(i) * factorial(l - i)));
  for (int i = 0; i <= m; ++i) {
    const double sign = i % 2 == 0 ? 1.0 : -1.0;
    t.q.push_back(factorial(m + l - i) * sign / (factorial(i) * factorial(m - i)) * factorial(m) / factorial(l));
  }
  return t;
}

Complex rational_eval(const Polynomial& p, const Polynomial& q, Complex x) { return poly_eval(p, x) / poly_eval(q, x); }

double radius_of(const Polynomial& p, const Polynomial& q, double omega) {
  const Complex x(0.0, omega);
  return std::max(std::abs(rational_eval(p, q, x)), std::abs(rational_eval(p, q, std::conj(x))));
}

Polynomial multiple_root_denominator(int m, double r) {
  std::vector<double> q(m + 1);
  for (int i = 0; i <= m; ++i) q[i] = binomial(m, i) * std::pow(r, m - i) * (i % 2 == 0 ? 1.0 : -1.0);
  return Polynomial(std::move(q));
}

template <typename T>
using Table = std::vector<std::vector<T>>;

// Division-free C_k recursion; row k holds the ascending coefficients of C_k.
template <typename T>
Table<T> force_recursion(const std::vector<T>& p, const std::vector<T>& q, int force_order) {
  const int m = static_cast<int>(p.size()) - 1;
  Table<T> c(force_order + 1, std::vector<T>(m, T(0)));
  for (int j = 0; j < m; ++j) c[0][j] = p[j + 1] - q[j + 1];
  T weight = 1;
  for (int k = 1; k <= force_order; ++k) {
    weight *= T(-0.5);
    const T sign = k % 2 == 0 ? T(1) : T(-1);
    // Only entries 1..M survive the division by x; the constant term cancels.
    for (int j = 0; j < m; ++j) {
      T t = weight * (p[j + 1] - sign * q[j + 1]);
      if (j + 1 < m) t += T(k) * c[k - 1][j + 1];
      c[k][j] = t;
    }
  }
  return c;
}

template <typename T>
Eigen::MatrixXd to_double(const Table<T>& t) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(t.size()), t.empty() ? 0 : static_cast<Eigen::Index>(t[0].size()));
  for (std::size_t i = 0; i < t.size(); ++i)
    for (std::size_t j = 0; j < t[i].size(); ++j) out(i, j) = static_cast<double>(t[i][j]);
  return out;
}

Polynomial to_polynomial(const std::vector<long double>& c) {
  std::vector<double> out(c.begin(), c.end());
  return Polynomial(std::move(out));
}

// Coefficients of e^x (r - x)^M and of (r - x)^M.
std::vector<long double> mscheme_numerator_ld(int m, long double r) {
  std::vector<long double> p(m + 1, 0.0L);
  for (int i = 0; i <= m; ++i)
    for (int j = 0; j <= i; ++j) {
      const long double sign = j % 2 == 0 ? 1.0L : -1.0L;
      p[i] += sign * static_cast<long double>(binomial(m, j)) * std::pow(r, m - j) /
              static_cast<long double>(factorial(i - j));
    }
  return p;
}

std::vector<long double> mscheme_denominator_ld(int m, long double r) {
  std::vector<long double> q(m + 1);
  for (int i = 0; i <= m; ++i)
    q[i] = static_cast<long double>(binomial(m, i)) * std::pow(r, m - i) * (i % 2 == 0 ? 1.0L : -1.0L);
  return q;
}

// Coefficients of p(r - y) in powers of y.
std::vector<long double> shift_ld(const std::vector<long double>& p, long double r) {
  const int m = static_cast<int>(p.size()) - 1;
  std::vector<long double> out(m + 1, 0.0L);
  for (int k = 0; k <= m; ++k) {
    long double acc = 0.0L;
    for (int i = k; i <= m; ++i)
      acc += p[i] * static_cast<long double>(binomial(i, k)) * std::pow(r, i - k);
    out[k] = k % 2 == 0 ? acc : -acc;
  }
  return out;
}

// Scheme constants are formed in extended precision and rounded once to double.
using LComplex = std::complex<long double>;

LComplex eval_extended(const Polynomial& p, LComplex x) {
  LComplex acc = 0.0L;
  for (std::size_t i = p.size(); i-- > 0;) acc = acc * x + static_cast<long double>(p[i]);
  return acc;
}

LComplex refine_root(const Polynomial& p, Complex r, bool real) {
  LComplex x(r.real(), real ? 0.0L : r.imag());
  for (int it = 0; it < 8; ++it) {
    LComplex v = 0.0L, d = 0.0L;
    for (std::size_t i = p.size(); i-- > 0;) {
      d = d * x + v;
      v = v * x + static_cast<long double>(p[i]);
    }
    if (std::abs(d) == 0.0L) break;
    const LComplex step = v / d;
    x -= real ? LComplex(step.real(), 0.0L) : step;
    if (std::abs(step) <= 1e-19L * std::abs(x)) break;
  }
  return x;
}

}  // namespace

std::string_view to_string(Family family) {
  return family == Family::DistinctRoots ? "distinct" : "multiroot";
}

Family parse_family(std::string_view name) {
  if (name == "distinct") return Family::DistinctRoots;
  if (name == "multiroot") return Family::SingleMultipleRoot;
  throw InvalidArgument("unknown scheme family '" + std::string(name) + "' (expected distinct or multiroot)");
}

void SchemeSpec::validate() const {
  const int max_order = family == Family::DistinctRoots ? kMaxDistinctOrder : kMaxMultirootOrder;
  if (order < 1 || order > max_order)
    throw InvalidArgument("order M must lie in [1, " + std::to_string(max_order) + "] for the " +
                          std::string(to_string(family)) + " family, got " + std::to_string(order));
  if (!(rho_inf >= 0.0 && rho_inf <= 1.0))
    throw InvalidArgument("rho_inf must lie in [0, 1], got " + shortest(rho_inf));
  if (resolved_force_order() < 1)
    throw InvalidArgument("force order must be >= 1 (at least two sampling points)");
}

std::string SchemeSpec::id() const {
  std::string s(to_string(family));
  s += "-M" + std::to_string(order) + "-rho" + shortest(rho_inf);
  if (force_order && *force_order != order) s += "-pf" + std::to_string(*force_order);
  return s;
}

int theoretical_order(const SchemeSpec& spec) {
  if (spec.family == Family::DistinctRoots) return spec.rho_inf == 1.0 ? 2 * spec.order : 2 * spec.order - 1;
  // The one-step multiple-root scheme with rho_inf = 1 is the trapezoidal rule.
  if (spec.order == 1 && spec.rho_inf == 1.0) return 2;
  return spec.order;
}

PadePair pade_mixed(int m, double rho_inf) {
  if (m < 1) throw InvalidArgument("Pade order must be >= 1");
  const PadeTerms diag = pade_expansion(m, m);
  const PadeTerms sub = pade_expansion(m, m - 1);
  std::vector<double> p(m + 1), q(m + 1);
  for (int i = 0; i <= m; ++i) {
    const double p_sub = i < m ? sub.p[i] : 0.0;
    p[i] = rho_inf * diag.p[i] + (1.0 - rho_inf) * p_sub;
    q[i] = rho_inf * diag.q[i] + (1.0 - rho_inf) * sub.q[i];
  }
  return {Polynomial(std::move(p)), Polynomial(std::move(q))};
}

ReducedNumerator reduce_numerator(const Polynomial& p, const Polynomial& q) {
  if (p.size() != q.size()) throw InvalidArgument("numerator and denominator must have equal length");
  if (q.leading() == 0.0) throw InvalidArgument("denominator leading coefficient is zero");
  ReducedNumerator out;
  out.rho = p.leading() / q.leading();
  std::vector<double> pl(p.size() - 1);
  for (std::size_t i = 0; i < pl.size(); ++i) pl[i] = p[i] - q[i] * out.rho;
  if (pl.empty()) pl.push_back(0.0);
  out.reduced = Polynomial(std::move(pl));
  return out;
}

Eigen::MatrixXd force_coeff_matrix(const Polynomial& p, const Polynomial& q, int force_order) {
  if (p.size() != q.size()) throw InvalidArgument("numerator and denominator must have equal length");
  if (force_order < 0) throw InvalidArgument("force order must be non-negative");
  const double scale = std::max(std::abs(p[0]), std::abs(q[0]));
  if (std::abs(p[0] - q[0]) > 1e-12 * std::max(scale, 1.0))
    throw InvalidArgument("force coefficients need P(0) == Q(0)");
  return to_double(force_recursion<double>(p.coeffs(), q.coeffs(), force_order));
}

Polynomial mscheme_numerator(int m, double r) {
  if (m < 1) throw InvalidArgument("sub-step count must be >= 1");
  std::vector<double> p(m + 1, 0.0);
  for (int i = 0; i <= m; ++i) {
    for (int j = 0; j <= i; ++j) {
      const double sign = j % 2 == 0 ? 1.0 : -1.0;
      p[i] += sign * binomial(m, j) * std::pow(r, m - j) / factorial(i - j);
    }
  }
  return Polynomial(std::move(p));
}

double mscheme_root(int m, double rho_inf) {
  if (m < 1) throw InvalidArgument("sub-step count must be >= 1");
  if (!(rho_inf >= 0.0 && rho_inf <= 1.0)) throw InvalidArgument("rho_inf must lie in [0, 1]");

  // p_M(r) as a polynomial in r: coefficient of r^k is binom(M, M-k) (-1)^(M-k) / k!.
  std::vector<double> base(m + 1);
  for (int k = 0; k <= m; ++k) base[k] = binomial(m, m - k) * ((m - k) % 2 == 0 ? 1.0 : -1.0) / factorial(k);

  std::vector<double> candidates;
  for (double sign : {1.0, -1.0}) {
    if (sign < 0.0 && rho_inf == 0.0) break;
    std::vector<double> eq = base;
    eq[0] -= sign * rho_inf;
    const RootSet rs = poly_roots(Polynomial(eq));
    for (std::size_t i = 0; i < rs.real_count; ++i)
      if (rs.roots[i].real() > 1e-8) candidates.push_back(rs.roots[i].real());
  }

  std::vector<double> sweep(2000);
  for (std::size_t i = 0; i < sweep.size(); ++i)
    sweep[i] = std::pow(10.0, -3.0 + 9.0 * static_cast<double>(i) / static_cast<double>(sweep.size() - 1));

  constexpr double probe = 0.1;
  double best = std::numeric_limits<double>::quiet_NaN();
  double best_err = std::numeric_limits<double>::infinity();
  for (double r : candidates) {
    const Polynomial p = mscheme_numerator(m, r);
    const Polynomial q = multiple_root_denominator(m, r);
    bool stable = true;
    for (double w : sweep) {
      if (radius_of(p, q, w) > 1.0 + 1e-9) {
        stable = false;
        break;
      }
    }
    if (!stable) continue;
    const double phase = std::arg(rational_eval(p, q, Complex(0.0, probe)));
    const double err = std::abs(probe / phase - 1.0);
    if (err < best_err) {
      best_err = err;
      best = r;
    }
  }
  if (!std::isfinite(best))
    throw NumericalError("no stable real root for the multiple-root scheme with M=" + std::to_string(m));
  return best;
}

std::vector<double> gauss_lobatto(int n) {
  if (n < 2) throw InvalidArgument("Gauss-Lobatto needs at least 2 points");
  const int deg = n - 1;
  std::vector<double> x(n);
  for (int j = 0; j < n; ++j) x[j] = std::cos(std::numbers::pi * j / deg);
  // Newton on (1 - x^2) P'_deg(x) using the Legendre recurrence.
  std::vector<double> prev(n, 2.0);
  for (int it = 0; it < 100; ++it) {
    double change = 0.0;
    for (int j = 0; j < n; ++j) {
      double p0 = 1.0, p1 = x[j];
      for (int k = 2; k <= deg; ++k) {
        const double p2 = ((2 * k - 1) * x[j] * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      const double pn = deg == 1 ? x[j] : p1;
      const double pm = deg == 1 ? 1.0 : p0;
      const double old = x[j];
      x[j] = old - (old * pn - pm) / (n * pn);
      change = std::max(change, std::abs(x[j] - old));
    }
    if (change < 1e-16) break;
  }
  std::vector<double> s(n);
  for (int j = 0; j < n; ++j) s[j] = 0.5 * (1.0 - x[j]);
  std::sort(s.begin(), s.end());
  s.front() = 0.0;
  s.back() = 1.0;
  for (int j = 0; j < n / 2; ++j) {
    const double mid = 0.5 * (s[j] + 1.0 - s[n - 1 - j]);
    s[j] = mid;
    s[n - 1 - j] = 1.0 - mid;
  }
  if (n % 2 == 1) s[n / 2] = 0.5;
  return s;
}

Eigen::MatrixXd trans_matrix(std::span<const double> points, int force_order) {
  const auto n = static_cast<Eigen::Index>(points.size());
  if (n != force_order + 1) throw InvalidArgument("transform needs exactly force_order + 1 sampling points");
  Eigen::MatrixXd v(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    double pw = 1.0;
    for (Eigen::Index k = 0; k < n; ++k) {
      v(j, k) = pw;
      pw *= points[j] - 0.5;
    }
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(v);
  if (!lu.isInvertible()) throw NumericalError("sampling points are not distinct; transform is singular");
  return lu.inverse().transpose();
}

std::size_t SchemeCoefficients::solves_per_step() const {
  return spec.family == Family::DistinctRoots ? roots.roots.size() : static_cast<std::size_t>(spec.order);
}

SchemeCoefficients init_scheme(const SchemeSpec& spec) {
  spec.validate();
  SchemeCoefficients c;
  c.spec = spec;
  const int m = spec.order;
  const int pf = spec.resolved_force_order();

  if (spec.family == Family::DistinctRoots) {
    PadePair pq = pade_mixed(m, spec.rho_inf);
    c.numerator = pq.numerator;
    c.denominator = pq.denominator;
    c.roots = poly_roots(c.denominator);
    if (c.roots.real_count != static_cast<std::size_t>(m % 2))
      throw NumericalError("mixed Pade denominator has an unexpected number of real roots");
    ReducedNumerator red = reduce_numerator(c.numerator, c.denominator);
    c.rho = red.rho;
    c.reduced_numerator = red.reduced;
    // Validates separation; the stored residues are recomputed below in extended precision.
    partial_fraction_residues(c.roots.expanded());
    c.force_coeffs = force_coeff_matrix(c.numerator, c.denominator, pf);

    const auto nr = static_cast<Eigen::Index>(c.roots.roots.size());
    std::vector<LComplex> fine, all;
    for (Eigen::Index i = 0; i < nr; ++i) fine.push_back(refine_root(c.denominator, c.roots.roots[i], c.roots.is_real(i)));
    all = fine;
    for (Eigen::Index i = static_cast<Eigen::Index>(c.roots.real_count); i < nr; ++i) all.push_back(std::conj(fine[i]));

    c.root_force_cols = Eigen::MatrixXcd::Zero(pf + 1, nr);
    for (Eigen::Index i = 0; i < nr; ++i) {
      const LComplex r = fine[i];
      c.roots.roots[i] = Complex(static_cast<double>(r.real()), static_cast<double>(r.imag()));
      LComplex prod = 1.0L;
      for (std::size_t j = 0; j < all.size(); ++j)
        if (j != static_cast<std::size_t>(i)) prod *= all[j] - r;
      const LComplex a = 1.0L / prod;
      const LComplex pl = eval_extended(c.reduced_numerator, r);
      c.residues.emplace_back(static_cast<double>(a.real()), static_cast<double>(a.imag()));
      c.pl_at_roots.emplace_back(static_cast<double>(pl.real()), static_cast<double>(pl.imag()));
      for (int k = 0; k <= pf; ++k) {
        LComplex acc = 0.0L;
        for (int j = m; j-- > 0;) acc = acc * r + static_cast<long double>(c.force_coeffs(k, j));
        c.root_force_cols(k, i) = Complex(static_cast<double>(acc.real()), static_cast<double>(acc.imag()));
      }
    }
  } else {
    c.root = mscheme_root(m, spec.rho_inf);
    // The shifted coefficients cancel heavily, so they are formed in extended precision.
    const long double r = c.root;
    const std::vector<long double> num = mscheme_numerator_ld(m, r);
    const std::vector<long double> den = mscheme_denominator_ld(m, r);
    c.numerator = to_polynomial(num);
    c.denominator = to_polynomial(den);
    std::vector<long double> shifted = shift_ld(num, r);
    // r solves p_M(r) = 0 here, so the leading shifted coefficient is zero up to rounding.
    if (spec.rho_inf == 0.0) shifted[m] = 0.0L;
    c.shifted_numerator = to_polynomial(shifted);
    c.rho = c.shifted_numerator.leading();
    const Table<long double> force = force_recursion(num, den, pf);
    Table<long double> shifted_force;
    for (const auto& row : force) shifted_force.push_back(shift_ld(row, r));
    c.force_coeffs = to_double(force);
    c.shifted_force_coeffs = to_double(shifted_force);
  }

  c.sample_points = gauss_lobatto(pf + 1);
  c.transform = trans_matrix(c.sample_points, pf);
  if (spec.family == Family::DistinctRoots) {
    c.distinct_weights = c.transform.cast<Complex>() * c.root_force_cols;
  } else {
    c.multiroot_weights = c.transform * c.shifted_force_coeffs;
  }
  return c;
}

Complex amplification(const SchemeCoefficients& coeffs, Complex x) {
  return rational_eval(coeffs.numerator, coeffs.denominator, x);
}

double spectral_radius(const SchemeCoefficients& coeffs, double omega) {
  if (omega < 0.0) throw InvalidArgument("Omega must be non-negative");
  return radius_of(coeffs.numerator, coeffs.denominator, omega);
}

}  // namespace chronos
