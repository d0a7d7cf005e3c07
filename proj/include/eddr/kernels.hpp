#pragma once

#include "eddr/linalg.hpp"

namespace eddr {

enum class Exec { Serial, Parallel };

// X'X. Every entry is one dot product of two contiguous columns, done the same
// way on both paths, so the serial and OpenMP results are bitwise identical.
// For symmetric A, crossprod(A) is A*A.
Matrix crossprod_serial(const Matrix& X);
Matrix crossprod_parallel(const Matrix& X);
Matrix crossprod(const Matrix& X, Exec exec);

// Frobenius inner product sum_ij A_ij B_ij (tr AB for symmetric A, B).
double frobenius_dot(const Matrix& A, const Matrix& B);

}  // namespace eddr
