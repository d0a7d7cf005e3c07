#pragma once

#include <Eigen/Dense>

namespace eddr {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Lower Cholesky factor, L L' = A. Throws DataError if A is not PD.
Matrix cholesky(const Matrix& A);

// Symmetric PSD square root from a full eigendecomposition.
Matrix sym_sqrt(const Matrix& A);

bool is_symmetric(const Matrix& A, double rel_tol = 1e-12);

// Lower-triangular factor with known bandwidth (L(i,j) = 0 for i-j > bw).
// Stores L transposed so that each row of L is a contiguous column.
class BandedLower {
 public:
  BandedLower() = default;
  BandedLower(const Matrix& L, int bandwidth);

  int dim() const { return static_cast<int>(lt_.cols()); }
  int bandwidth() const { return bw_; }

  // Returns L * Z for a dim() x k block Z.
  Matrix apply(const Matrix& Z) const;

 private:
  Matrix lt_;
  int bw_ = 0;
};

}  // namespace eddr
