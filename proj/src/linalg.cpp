#include "eddr/linalg.hpp"

#include <algorithm>
#include <cmath>

#include "eddr/errors.hpp"

namespace eddr {

namespace {

void require_square(const Matrix& A, const char* who) {
  if (A.rows() != A.cols() || A.rows() == 0)
    throw DataError(std::string(who) + ": matrix must be square and non-empty");
}

}  // namespace

bool is_symmetric(const Matrix& A, double rel_tol) {
  if (A.rows() != A.cols()) return false;
  const double scale = std::max(1.0, A.cwiseAbs().maxCoeff());
  return (A - A.transpose()).cwiseAbs().maxCoeff() <= rel_tol * scale;
}

Matrix cholesky(const Matrix& A) {
  require_square(A, "cholesky");
  Eigen::LLT<Matrix> llt(A);
  if (llt.info() != Eigen::Success)
    throw DataError("cholesky: matrix is not positive definite");
  return llt.matrixL();
}

Matrix sym_sqrt(const Matrix& A) {
  require_square(A, "sym_sqrt");
  Eigen::SelfAdjointEigenSolver<Matrix> es(A);
  if (es.info() != Eigen::Success) throw DataError("sym_sqrt: eigensolver failed");
  Vector ev = es.eigenvalues();
  const double norm = std::max(ev.cwiseAbs().maxCoeff(), 1e-300);
  if (ev.minCoeff() < -1e-10 * norm)
    throw DataError("sym_sqrt: matrix has a negative eigenvalue");
  ev = ev.cwiseMax(0.0).cwiseSqrt();
  const Matrix& Q = es.eigenvectors();
  Matrix R = Q * ev.asDiagonal() * Q.transpose();
  return 0.5 * (R + R.transpose());
}

BandedLower::BandedLower(const Matrix& L, int bandwidth)
    : lt_(L.transpose()), bw_(bandwidth) {
  require_square(L, "BandedLower");
  if (bandwidth < 0) throw DataError("BandedLower: negative bandwidth");
}

Matrix BandedLower::apply(const Matrix& Z) const {
  const int p = dim();
  if (Z.rows() != p) throw DataError("BandedLower::apply: dimension mismatch");
  Matrix out(p, Z.cols());
  for (Eigen::Index k = 0; k < Z.cols(); ++k) {
    for (int i = 0; i < p; ++i) {
      const int j0 = std::max(0, i - bw_);
      const int len = i - j0 + 1;
      out(i, k) = lt_.col(i).segment(j0, len).dot(Z.col(k).segment(j0, len));
    }
  }
  return out;
}

}  // namespace eddr
