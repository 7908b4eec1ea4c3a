#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "chronos/polytools.hpp"

namespace chronos {

enum class Family { DistinctRoots, SingleMultipleRoot };

std::string_view to_string(Family family);
/// Accepts "distinct" or "multiroot".
Family parse_family(std::string_view name);

inline constexpr int kMaxDistinctOrder = 4;
inline constexpr int kMaxMultirootOrder = 6;

struct SchemeSpec {
  Family family = Family::DistinctRoots;
  /// Number of sub-steps M.
  int order = 2;
  double rho_inf = 0.0;
  /// Force polynomial order; defaults to M.
  std::optional<int> force_order;

  int resolved_force_order() const { return force_order.value_or(order); }
  void validate() const;
  /// Short identifier such as "distinct-M3-rho0.125".
  std::string id() const;
};

/// Order of accuracy for the linear homogeneous problem.
int theoretical_order(const SchemeSpec& spec);

struct PadePair {
  Polynomial numerator;
  Polynomial denominator;
};

/// rho_inf-weighted blend of the (M,M) and (M-1,M) Pade expansions of e^x.
PadePair pade_mixed(int m, double rho_inf);

struct ReducedNumerator {
  double rho = 0.0;
  Polynomial reduced;
};

/// Splits P/Q = rho + P_L/Q with deg P_L = M-1.
ReducedNumerator reduce_numerator(const Polynomial& p, const Polynomial& q);

/// Row k holds the ascending coefficients of C_k(A); shape (p_f+1) x M.
Eigen::MatrixXd force_coeff_matrix(const Polynomial& p, const Polynomial& q, int force_order);

/// Numerator for the denominator (r - x)^M: Taylor coefficients of e^x (r - x)^M.
Polynomial mscheme_numerator(int m, double r);

/// Real root r for the single-multiple-root family, selected by stability and low-frequency period error.
double mscheme_root(int m, double rho_inf);

/// Gauss-Lobatto points mapped to [0,1].
std::vector<double> gauss_lobatto(int n);

/// Maps sampled forces to Taylor coefficients about s = 0.5: F_tilde = F_p * Tp.
Eigen::MatrixXd trans_matrix(std::span<const double> points, int force_order);

/// Fully initialized, immutable scheme constants.
struct SchemeCoefficients {
  SchemeSpec spec;
  /// Weight of z_{n-1} in the step: p_M/q_M (distinct) or p_rM (multiroot).
  double rho = 0.0;
  /// Rational approximation R = P/Q of e^x.
  Polynomial numerator;
  Polynomial denominator;
  /// (p_f+1) x M force coefficients in powers of x.
  Eigen::MatrixXd force_coeffs;

  // Distinct roots.
  RootSet roots;
  Polynomial reduced_numerator;
  std::vector<Complex> residues;
  std::vector<Complex> pl_at_roots;
  /// (p_f+1) x retained roots: C_k(r_i).
  Eigen::MatrixXcd root_force_cols;

  // Single multiple root.
  double root = 0.0;
  Polynomial shifted_numerator;
  Eigen::MatrixXd shifted_force_coeffs;

  std::vector<double> sample_points;
  Eigen::MatrixXd transform;
  /// Tp applied to the per-root force columns: f_ri = F_p * weights.col(i).
  Eigen::MatrixXcd distinct_weights;
  Eigen::MatrixXd multiroot_weights;

  Family family() const { return spec.family; }
  int order() const { return spec.order; }
  int force_order() const { return spec.resolved_force_order(); }
  /// Number of linear solves per pass.
  std::size_t solves_per_step() const;
};

SchemeCoefficients init_scheme(const SchemeSpec& spec);

/// R(x) for a scalar argument.
Complex amplification(const SchemeCoefficients& coeffs, Complex x);

/// Spectral radius of the homogeneous step map for the undamped oscillator of frequency Omega (times dt).
double spectral_radius(const SchemeCoefficients& coeffs, double omega);

}  // namespace chronos
