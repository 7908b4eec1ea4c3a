#include "chronos/linalg.hpp"

#include <cmath>
#include <string>

#include <Eigen/LU>
#include <Eigen/SparseLU>

#include "chronos/errors.hpp"

namespace chronos {

namespace {

void check_dims(const SparseMatrix& m, const SparseMatrix& c, const SparseMatrix& k) {
  const auto n = m.rows();
  for (const SparseMatrix* a : {&m, &c, &k})
    if (a->rows() != n || a->cols() != n)
      throw InvalidArgument("mass, damping and stiffness must be square with equal dimension");
}

template <typename Scalar>
Eigen::SparseMatrix<Scalar> combine(Scalar r, double dt, const SparseMatrix& m, const SparseMatrix& c,
                                    const SparseMatrix& k) {
  check_dims(m, c, k);
  Eigen::SparseMatrix<Scalar> out = (r * r) * m.cast<Scalar>() + (r * dt) * c.cast<Scalar>() + Scalar(dt * dt) * k.cast<Scalar>();
  out.makeCompressed();
  return out;
}

}  // namespace

SparseMatrix assemble_effective(double r, double dt, const SparseMatrix& m, const SparseMatrix& c, const SparseMatrix& k) {
  return combine<double>(r, dt, m, c, k);
}

CSparseMatrix assemble_effective(Complex r, double dt, const SparseMatrix& m, const SparseMatrix& c,
                                 const SparseMatrix& k) {
  return combine<Complex>(r, dt, m, c, k);
}

template <typename Scalar>
struct Factorization<Scalar>::DenseImpl {
  Eigen::PartialPivLU<Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>> lu;
};

template <typename Scalar>
struct Factorization<Scalar>::SparseImpl {
  Eigen::SparseLU<Eigen::SparseMatrix<Scalar>, Eigen::COLAMDOrdering<int>> lu;
};

template <typename Scalar>
Factorization<Scalar>::Factorization(const Matrix& a) : n_(a.rows()) {
  if (a.rows() != a.cols()) throw InvalidArgument("factorization needs a square matrix");
  if (n_ == 0) throw InvalidArgument("factorization needs a non-empty matrix");

  if (n_ <= kDenseThreshold) {
    auto impl = std::make_shared<DenseImpl>();
    const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> dense(a);
    impl->lu.compute(dense);
    const auto& lu = impl->lu.matrixLU();
    const double scale = dense.cwiseAbs().maxCoeff();
    for (Eigen::Index i = 0; i < n_; ++i) {
      const double piv = std::abs(lu(i, i));
      if (!(piv > 1e3 * std::numeric_limits<double>::epsilon() * scale * static_cast<double>(n_)))
        throw NumericalError("matrix is numerically singular: pivot " + std::to_string(i) + " is " +
                             std::to_string(piv));
    }
    dense_ = std::move(impl);
  } else {
    auto impl = std::make_shared<SparseImpl>();
    Matrix copy = a;
    copy.makeCompressed();
    impl->lu.analyzePattern(copy);
    impl->lu.factorize(copy);
    if (impl->lu.info() != Eigen::Success)
      throw NumericalError("sparse factorization failed: " + impl->lu.lastErrorMessage());
    if (!std::isfinite(std::real(impl->lu.logAbsDeterminant())))
      throw NumericalError("matrix is numerically singular (zero pivot in sparse LU)");
    sparse_ = std::move(impl);
  }
}

template <typename Scalar>
typename Factorization<Scalar>::Vec Factorization<Scalar>::solve(const Vec& b) const {
  if (b.size() != n_) throw InvalidArgument("right-hand side dimension does not match the factorization");
  if (dense_) return dense_->lu.solve(b);
  if (sparse_) return sparse_->lu.solve(b);
  throw InvalidArgument("solve called on an empty factorization");
}

template class Factorization<double>;
template class Factorization<Complex>;

Factorization<double> factorize(const SparseMatrix& a) { return Factorization<double>(a); }
Factorization<Complex> factorize(const CSparseMatrix& a) { return Factorization<Complex>(a); }

Vector matvec(const SparseMatrix& a, const Vector& x) {
  if (a.cols() != x.size()) throw InvalidArgument("matvec dimension mismatch");
  return a * x;
}

SparseMatrix sparse_from_dense(const Eigen::MatrixXd& dense) {
  SparseMatrix s = dense.sparseView();
  s.makeCompressed();
  return s;
}

SparseMatrix sparse_diagonal(const Vector& diag) {
  SparseMatrix s(diag.size(), diag.size());
  s.reserve(Eigen::VectorXi::Constant(diag.size(), 1));
  for (Eigen::Index i = 0; i < diag.size(); ++i) s.insert(i, i) = diag[i];
  s.makeCompressed();
  return s;
}

}  // namespace chronos
