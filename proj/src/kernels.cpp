#include "eddr/kernels.hpp"

#include "eddr/errors.hpp"

namespace eddr {

namespace {

inline void fill_column(const Matrix& X, Matrix& out, Eigen::Index j) {
  const auto xj = X.col(j);
  for (Eigen::Index i = 0; i <= j; ++i) out(i, j) = X.col(i).dot(xj);
}

void mirror_upper(Matrix& out) {
  for (Eigen::Index j = 0; j < out.cols(); ++j)
    for (Eigen::Index i = j + 1; i < out.rows(); ++i) out(i, j) = out(j, i);
}

}  // namespace

Matrix crossprod_serial(const Matrix& X) {
  const Eigen::Index k = X.cols();
  Matrix out(k, k);
  for (Eigen::Index j = 0; j < k; ++j) fill_column(X, out, j);
  mirror_upper(out);
  return out;
}

Matrix crossprod_parallel(const Matrix& X) {
  const Eigen::Index k = X.cols();
  Matrix out(k, k);
  // column j costs j+1 dots; dynamic scheduling keeps threads balanced
#pragma omp parallel for schedule(dynamic, 8)
  for (Eigen::Index j = 0; j < k; ++j) fill_column(X, out, j);
  mirror_upper(out);
  return out;
}

Matrix crossprod(const Matrix& X, Exec exec) {
  return exec == Exec::Parallel ? crossprod_parallel(X) : crossprod_serial(X);
}

double frobenius_dot(const Matrix& A, const Matrix& B) {
  if (A.rows() != B.rows() || A.cols() != B.cols())
    throw DataError("frobenius_dot: dimension mismatch");
  return A.cwiseProduct(B).sum();
}

}  // namespace eddr
