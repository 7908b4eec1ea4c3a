#pragma once

#include <memory>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "chronos/polytools.hpp"

namespace chronos {

using Vector = Eigen::VectorXd;
using CVector = Eigen::VectorXcd;
using SparseMatrix = Eigen::SparseMatrix<double>;
using CSparseMatrix = Eigen::SparseMatrix<Complex>;

/// Systems up to this size are factorized densely.
inline constexpr Eigen::Index kDenseThreshold = 64;

/// r^2 M + r dt C + dt^2 K.
SparseMatrix assemble_effective(double r, double dt, const SparseMatrix& m, const SparseMatrix& c, const SparseMatrix& k);
CSparseMatrix assemble_effective(Complex r, double dt, const SparseMatrix& m, const SparseMatrix& c,
                                 const SparseMatrix& k);

/// LU factorization of a square real or complex matrix; immutable once built.
template <typename Scalar>
class Factorization {
 public:
  using Matrix = Eigen::SparseMatrix<Scalar>;
  using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  Factorization() = default;
  explicit Factorization(const Matrix& a);

  Vec solve(const Vec& b) const;
  Eigen::Index size() const { return n_; }
  bool dense() const { return dense_ != nullptr; }

 private:
  struct DenseImpl;
  struct SparseImpl;
  Eigen::Index n_ = 0;
  std::shared_ptr<const DenseImpl> dense_;
  std::shared_ptr<const SparseImpl> sparse_;
};

Factorization<double> factorize(const SparseMatrix& a);
Factorization<Complex> factorize(const CSparseMatrix& a);

template <typename Scalar>
typename Factorization<Scalar>::Vec solve(const Factorization<Scalar>& f, const typename Factorization<Scalar>::Vec& b) {
  return f.solve(b);
}

Vector matvec(const SparseMatrix& a, const Vector& x);

SparseMatrix sparse_from_dense(const Eigen::MatrixXd& dense);
SparseMatrix sparse_diagonal(const Vector& diag);

}  // namespace chronos
