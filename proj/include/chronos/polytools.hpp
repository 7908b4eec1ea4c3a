#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace chronos {

using Complex = std::complex<double>;

/// Roots with |Im| at or below this are treated as real; roots below -kImagTolerance are dropped.
inline constexpr double kImagTolerance = 1e-6;

/// Real polynomial stored in ascending powers: coeffs[i] multiplies x^i.
class Polynomial {
 public:
  Polynomial() : coeffs_{0.0} {}
  explicit Polynomial(std::vector<double> coeffs);
  Polynomial(std::initializer_list<double> coeffs);

  const std::vector<double>& coeffs() const { return coeffs_; }
  std::size_t size() const { return coeffs_.size(); }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

  double operator[](std::size_t i) const { return coeffs_[i]; }
  double& operator[](std::size_t i) { return coeffs_[i]; }

  double leading() const { return coeffs_.back(); }

 private:
  std::vector<double> coeffs_;
};

/// Retained roots of a real polynomial: real roots first, then one member of
/// each conjugate pair (Im > 0) sorted by imaginary part.
struct RootSet {
  std::vector<Complex> roots;
  std::size_t real_count = 0;

  std::size_t complex_count() const { return roots.size() - real_count; }
  /// Degree implied by the retained roots plus their conjugates.
  int implied_degree() const { return static_cast<int>(real_count + 2 * complex_count()); }
  bool is_real(std::size_t i) const { return i < real_count; }
  /// Every root, conjugate partners included.
  std::vector<Complex> expanded() const;
};

/// Horner evaluation.
Complex poly_eval(const Polynomial& p, Complex x);
double poly_eval(const Polynomial& p, double x);

RootSet poly_roots(const Polynomial& p);

/// Coefficients of p_r with p_r(r - x) == p(x).
Polynomial shift_poly(const Polynomial& p, double r);

/// Row-wise shift_poly on a coefficient matrix whose columns are ascending powers.
Eigen::MatrixXd shift_poly_rows(const Eigen::MatrixXd& coeffs, double r);

/// a_i = 1 / prod_{j != i} (r_j - r_i) for each entry of a complete root list.
std::vector<Complex> partial_fraction_residues(std::span<const Complex> roots);

/// prod (x - r_i) expanded to real coefficients; imaginary parts are discarded.
Polynomial poly_from_roots(std::span<const Complex> roots);

}  // namespace chronos
