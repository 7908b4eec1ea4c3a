#include "chronos/polytools.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "chronos/errors.hpp"

namespace chronos {

Polynomial::Polynomial(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw InvalidArgument("polynomial needs at least one coefficient");
}

Polynomial::Polynomial(std::initializer_list<double> coeffs) : Polynomial(std::vector<double>(coeffs)) {}

std::vector<Complex> RootSet::expanded() const {
  std::vector<Complex> all(roots.begin(), roots.end());
  for (std::size_t i = real_count; i < roots.size(); ++i) all.push_back(std::conj(roots[i]));
  return all;
}

Complex poly_eval(const Polynomial& p, Complex x) {
  Complex acc = 0.0;
  for (std::size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
  return acc;
}

double poly_eval(const Polynomial& p, double x) {
  double acc = 0.0;
  for (std::size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
  return acc;
}

namespace {

// Newton refinement of a companion-matrix eigenvalue; kept only if it lowers |p|.
Complex polish(const Polynomial& p, Complex x) {
  auto value_and_slope = [&](Complex z) {
    Complex v = 0.0, d = 0.0;
    for (std::size_t i = p.size(); i-- > 0;) {
      d = d * z + v;
      v = v * z + p[i];
    }
    return std::pair{v, d};
  };
  auto [v, d] = value_and_slope(x);
  for (int it = 0; it < 4 && std::abs(d) > 0.0; ++it) {
    const Complex trial = x - v / d;
    auto [vt, dt] = value_and_slope(trial);
    if (!(std::abs(vt) < std::abs(v))) break;
    x = trial;
    v = vt;
    d = dt;
  }
  return x;
}

}  // namespace

RootSet poly_roots(const Polynomial& p) {
  const int m = p.degree();
  if (m < 1) throw InvalidArgument("root finding needs degree >= 1");
  if (p.leading() == 0.0 || !std::isfinite(p.leading()))
    throw InvalidArgument("root finding needs a nonzero leading coefficient");

  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(m, m);
  for (int i = 1; i < m; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < m; ++i) companion(i, m - 1) = -p[i] / p.leading();

  Eigen::EigenSolver<Eigen::MatrixXd> eig(companion, false);
  if (eig.info() != Eigen::Success) throw NumericalError("companion eigenvalue iteration failed");

  std::vector<Complex> reals, complexes;
  for (int i = 0; i < m; ++i) {
    Complex r = polish(p, eig.eigenvalues()[i]);
    if (std::abs(r.imag()) <= kImagTolerance) {
      reals.emplace_back(r.real(), 0.0);
    } else if (r.imag() > 0.0) {
      complexes.push_back(r);
    }
  }
  std::sort(reals.begin(), reals.end(), [](Complex a, Complex b) { return a.real() < b.real(); });
  std::sort(complexes.begin(), complexes.end(), [](Complex a, Complex b) { return a.imag() < b.imag(); });

  RootSet set;
  set.real_count = reals.size();
  set.roots = std::move(reals);
  set.roots.insert(set.roots.end(), complexes.begin(), complexes.end());
  if (set.implied_degree() != m)
    throw NumericalError("retained roots do not account for the polynomial degree");
  return set;
}

Polynomial shift_poly(const Polynomial& p, double r) {
  Eigen::MatrixXd row(1, p.size());
  for (std::size_t i = 0; i < p.size(); ++i) row(0, i) = p[i];
  Eigen::MatrixXd shifted = shift_poly_rows(row, r);
  std::vector<double> out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) out[i] = shifted(0, i);
  return Polynomial(std::move(out));
}

Eigen::MatrixXd shift_poly_rows(const Eigen::MatrixXd& coeffs, double r) {
  Eigen::MatrixXd pr = coeffs;
  const Eigen::Index m = coeffs.cols() - 1;
  // Horner in reverse: multiply the running tail by (r - x_r) and add the next coefficient.
  for (Eigen::Index i = m - 1; i >= 0; --i) {
    Eigen::MatrixXd tail = pr.middleCols(i, m - i + 1);
    Eigen::MatrixXd next = Eigen::MatrixXd::Zero(pr.rows(), m - i + 1);
    next.col(0) = tail.col(0) + r * tail.col(1);
    for (Eigen::Index j = 1; j <= m - i; ++j) {
      const Eigen::VectorXd up = j + 1 <= m - i ? Eigen::VectorXd(r * tail.col(j + 1)) : Eigen::VectorXd::Zero(pr.rows());
      next.col(j) = up - tail.col(j);
    }
    pr.middleCols(i, m - i + 1) = next;
  }
  return pr;
}

std::vector<Complex> partial_fraction_residues(std::span<const Complex> roots) {
  double scale = 0.0;
  for (const Complex& r : roots) scale = std::max(scale, std::abs(r));
  const double min_gap = 1e-8 * scale;

  std::vector<Complex> residues;
  residues.reserve(roots.size());
  for (std::size_t i = 0; i < roots.size(); ++i) {
    Complex prod = 1.0;
    for (std::size_t j = 0; j < roots.size(); ++j) {
      if (j == i) continue;
      const Complex gap = roots[j] - roots[i];
      if (std::abs(gap) <= min_gap)
        throw NumericalError("partial fractions are ill-conditioned: roots " + std::to_string(i) + " and " +
                             std::to_string(j) + " nearly coincide");
      prod *= gap;
    }
    residues.push_back(1.0 / prod);
  }
  return residues;
}

Polynomial poly_from_roots(std::span<const Complex> roots) {
  std::vector<Complex> c{1.0};
  for (const Complex& r : roots) {
    std::vector<Complex> next(c.size() + 1, 0.0);
    for (std::size_t i = 0; i < c.size(); ++i) {
      next[i + 1] += c[i];
      next[i] -= r * c[i];
    }
    c = std::move(next);
  }
  std::vector<double> out(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) out[i] = c[i].real();
  return Polynomial(std::move(out));
}

}  // namespace chronos
