#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "eddr/linalg.hpp"

namespace eddr {

// W ~ W_p(n, Sigma); A, B symmetric.
struct MomentQuery {
  int n = 1;
  Matrix sigma, A, B;
};

// Corrected: coefficients fixed where the typeset formulas (vi) and (vii)
// disagree with the exact expansion. AsPrinted: exactly as typeset.
enum class Coefficients { Corrected, AsPrinted };

// Trace invariants t(i) = tr S^i, tA(i) = tr S^i A, tB(i) = tr S^i B and
// tAB(i,j) = tr S^i A S^j B (symmetric in i, j), S = Sigma.
template <class T>
struct TraceInvariants {
  std::array<T, 7> t{}, tA{}, tB{};
  std::array<std::array<T, 7>, 7> tAB{};
};

TraceInvariants<double> trace_invariants(const MomentQuery& q);

// Scalar case p = 1 with Sigma = A = B = 1: every invariant is 1.
template <class T>
TraceInvariants<T> unit_invariants() {
  TraceInvariants<T> v;
  for (int i = 0; i < 7; ++i) {
    v.t[i] = v.tA[i] = v.tB[i] = T(1);
    for (int j = 0; j < 7; ++j) v.tAB[i][j] = T(1);
  }
  return v;
}

namespace moments {

// E[(tr AW)(tr BW)]
template <class T>
T i(const TraceInvariants<T>& v, T n) {
  return n * n * v.tA[1] * v.tB[1] + 2 * n * v.tAB[1][1];
}

// E[tr AWBW]
template <class T>
T ii(const TraceInvariants<T>& v, T n) {
  return (n * n + n) * v.tAB[1][1] + n * v.tA[1] * v.tB[1];
}

// E[tr AW^3]
template <class T>
T iii(const TraceInvariants<T>& v, T n) {
  const auto& t = v.t;
  const auto& tA = v.tA;
  return (n * n * n + 3 * n * n + 4 * n) * tA[3] + (n * n + n) * t[2] * tA[1] +
         2 * n * (n + 1) * t[1] * tA[2] + n * t[1] * t[1] * tA[1];
}

// E[(tr AW^2)(tr BW^2)]
template <class T>
T iv(const TraceInvariants<T>& v, T n) {
  const auto& t = v.t;
  const auto& tA = v.tA;
  const auto& tB = v.tB;
  const auto& tAB = v.tAB;
  const T q = n * n + n + 2;
  return n * q * (n + 1) * tA[2] * tB[2] +
         t[1] * t[1] * (n * n * tA[1] * tB[1] + 2 * n * tAB[1][1]) +
         t[1] * (n * q * tA[2] * tB[1] + n * q * tA[1] * tB[2] + 8 * n * (n + 1) * tAB[2][1]) +
         t[2] * (2 * n * tA[1] * tB[1] + 2 * n * (n + 1) * tAB[1][1]) +
         4 * n * (n + 1) * (n + 1) * tAB[2][2] + 4 * n * (n * n + 3 * n + 4) * tAB[3][1] +
         4 * n * (n + 1) * (tA[3] * tB[1] + tA[1] * tB[3]);
}

// E[tr AW^2BW^2]
template <class T>
T v(const TraceInvariants<T>& x, T n) {
  const auto& t = x.t;
  const auto& tA = x.tA;
  const auto& tB = x.tB;
  const auto& tAB = x.tAB;
  const T q = n * n + 3 * n + 4;
  return 2 * n * (n + 1) * (n + 1) * tA[2] * tB[2] + n * q * (n + 1) * tAB[2][2] +
         t[1] * t[1] * (n * tA[1] * tB[1] + n * (n + 1) * tAB[1][1]) +
         t[1] * (2 * n * (n + 1) * (tA[2] * tB[1] + tA[1] * tB[2]) + 2 * n * q * tAB[2][1]) +
         t[2] * (n * (n + 1) * tA[1] * tB[1] + n * (n + 3) * tAB[1][1]) +
         n * q * (tA[3] * tB[1] + tA[1] * tB[3]) + 2 * n * (n * n + 7 * n + 8) * tAB[3][1];
}

// E[(tr AW^3)(tr BW^3)]
template <class T>
T vi(const TraceInvariants<T>& x, T n, Coefficients coef = Coefficients::Corrected) {
  const auto& t = x.t;
  const auto& tA = x.tA;
  const auto& tB = x.tB;
  const auto& tAB = x.tAB;
  const T n2 = n * n, n3 = n2 * n, n4 = n3 * n, n5 = n4 * n;
  const T t1 = t[1];
  const T c31 = coef == Coefficients::Corrected ? n3 + 3 * n2 + 24 * n + 20
                                                : n3 + 3 * n + 24 * n + 20;
  const T k1 = 2 * n2 + 5 * n + 5;
  const T k2 = n3 + 6 * n2 + 21 * n + 20;
  const T k3 = n3 + 5 * n2 + 14 * n + 12;
  const T k4 = 2 * n3 + 9 * n2 + 21 * n + 16;
  const T k5 = n4 + 4 * n3 + 21 * n2 + 38 * n + 32;
  T r = (n2 * tA[1] * tB[1] + 2 * n * tAB[1][1]) * t1 * t1 * t1 * t1;
  r += (2 * n * (n2 + n + 2) * (tB[1] * tA[2] + tA[1] * tB[2]) + 16 * n * (n + 1) * tAB[2][1]) *
       t1 * t1 * t1;
  r += (2 * n * (n2 + n + 4) * tA[1] * tB[1] * t[2] + 12 * n * (n + 1) * tAB[1][1] * t[2] +
        4 * n * (n + 1) * (n2 + n + 4) * tA[2] * tB[2] +
        n * c31 * (tB[1] * tA[3] + tA[1] * tB[3]) + 4 * n * (5 * n2 + 11 * n + 8) * tAB[2][2] +
        24 * n * (n2 + 3 * n + 4) * tAB[3][1]) *
       t1 * t1;
  r += (2 * n * (n + 1) * (n2 + n + 10) * (tB[1] * t[2] * tA[2] + tA[1] * t[2] * tB[2]) +
        2 * n * k5 * tB[3] * tA[2] + 16 * n * (n + 1) * tA[1] * tB[1] * t[3] +
        8 * n * (n2 + 3 * n + 4) * t[3] * tAB[1][1] + 2 * n * k5 * tB[2] * tA[3] +
        16 * n * k1 * t[2] * tAB[2][1] + 4 * n * (7 * n2 + 19 * n + 22) * (tB[1] * tA[4] + tA[1] * tB[4]) +
        16 * n * k4 * tAB[3][2] + 16 * n * k2 * tAB[4][1]) *
       t1;
  r += n * (n + 1) * (n2 + n + 4) * tA[1] * tB[1] * t[2] * t[2] +
       4 * n * (5 * n2 + 11 * n + 8) * t[2] * tA[2] * tB[2] +
       4 * n * (3 * n2 + 7 * n + 6) * (tB[1] * tA[2] + tA[1] * tB[2]) * t[3] +
       2 * n * k1 * t[2] * t[2] * tAB[1][1] +
       n * (n4 + 4 * n3 + 19 * n2 + 36 * n + 36) * (tB[1] * tA[3] + tA[1] * tB[3]) * t[2] +
       n * (n5 + 6 * n4 + 27 * n3 + 74 * n2 + 156 * n + 120) * tA[3] * tB[3] +
       4 * n * k1 * tA[1] * tB[1] * t[4] + 2 * n * k2 * tAB[1][1] * t[4] +
       8 * n * k3 * t[3] * tAB[2][1] +
       4 * n * k4 * (2 * tB[2] * tA[4] + 2 * tA[2] * tB[4] + t[2] * tAB[2][2]) +
       12 * n * k3 * (t[2] * tAB[3][1] + tB[1] * tA[5] + tA[1] * tB[5]) +
       2 * n * (3 * n4 + 20 * n3 + 77 * n2 + 152 * n + 132) * tAB[3][3] +
       8 * n * (n4 + 8 * n3 + 39 * n2 + 80 * n + 64) * tAB[4][2] +
       4 * n * (n4 + 10 * n3 + 65 * n2 + 160 * n + 148) * tAB[5][1];
  return r;
}

// E[tr AW^3BW^3]
template <class T>
T vii(const TraceInvariants<T>& x, T n, Coefficients coef = Coefficients::Corrected) {
  const auto& t = x.t;
  const auto& tA = x.tA;
  const auto& tB = x.tB;
  const auto& tAB = x.tAB;
  const bool fix = coef == Coefficients::Corrected;
  const T n2 = n * n, n3 = n2 * n, n4 = n3 * n, n5 = n4 * n;
  const T t1 = t[1];
  const T k1 = 2 * n2 + 5 * n + 5;
  const T k2 = n3 + 6 * n2 + 21 * n + 20;
  const T k3 = n3 + 5 * n2 + 14 * n + 12;
  const T k4 = 2 * n3 + 9 * n2 + 21 * n + 16;
  const T k6 = n4 + 8 * n3 + 39 * n2 + 80 * n + 64;
  const T lead = fix ? tA[1] * tB[1] : tAB[1][1];
  const T c31 = fix ? n4 + 7 * n3 + 34 * n2 + 78 * n + 72
                    : n5 + 7 * n4 + 34 * n3 + 78 * n2 + 72;
  T r = ((n2 + n) * tAB[1][1] + n * lead) * t1 * t1 * t1 * t1;
  r += (4 * n * (n + 1) * (tB[1] * tA[2] + tA[1] * tB[2]) + 4 * n * (n2 + 3 * n + 4) * tAB[2][1]) *
       t1 * t1 * t1;
  r += (6 * n * (n + 1) * tA[1] * tB[1] * t[2] + 2 * n * (n2 + 4 * n + 7) * tAB[1][1] * t[2] +
        2 * n * (5 * n2 + 11 * n + 8) * tA[2] * tB[2] +
        6 * n * (n2 + 3 * n + 4) * (tB[1] * tA[3] + tA[1] * tB[3]) + 2 * n * k4 * tAB[2][2] +
        2 * n * (n3 + 9 * n2 + 42 * n + 44) * tAB[3][1]) *
       t1 * t1;
  r += (4 * n * k1 * (tB[1] * tA[2] + tA[1] * tB[2]) * t[2] +
        4 * n * k4 * (tB[3] * tA[2] + tB[2] * tA[3]) +
        4 * n * (n2 + 3 * n + 4) * tA[1] * tB[1] * t[3] + 4 * n * (n2 + 7 * n + 8) * t[3] * tAB[1][1] +
        4 * n * k2 * (t[2] * tAB[2][1] + tB[1] * tA[4] + tA[1] * tB[4]) + 4 * n * k6 * tAB[3][2] +
        8 * n * (n3 + 13 * n2 + 40 * n + 42) * tAB[4][1]) *
       t1;
  r += n * k1 * tA[1] * tB[1] * t[2] * t[2] + 2 * n * k4 * t[2] * tA[2] * tB[2] +
       n * k3 *
           (2 * (tB[1] * tA[2] + tA[1] * tB[2]) * t[3] +
            3 * (tB[1] * t[2] * tA[3] + tA[1] * t[2] * tB[3])) +
       n * (n3 + 4 * n2 + 10 * n + 9) * t[2] * t[2] * tAB[1][1] +
       n * (3 * n4 + 20 * n3 + 77 * n2 + 152 * n + 132) * tA[3] * tB[3] +
       n * k2 * tA[1] * tB[1] * t[4] + n * (n3 + 14 * n2 + 41 * n + 40) * tAB[1][1] * t[4] +
       4 * n * (n3 + 11 * n2 + 28 * n + 24) * t[3] * tAB[2][1] +
       2 * n * k6 * (tB[2] * tA[4] + tA[2] * tB[4]) +
       2 * n * (2 * n3 + 19 * n2 + 43 * n + 32) * t[2] * tAB[2][2] +
       2 * n * c31 * t[2] * tAB[3][1] +
       n * (n4 + 10 * n3 + 65 * n2 + 160 * n + 148) * (tB[1] * tA[5] + tA[1] * tB[5]) +
       n * (n5 + 9 * n4 + 47 * n3 + 151 * n2 + 308 * n + 252) * tAB[3][3] +
       4 * n * (n4 + 16 * n3 + 75 * n2 + 164 * n + 128) * tAB[4][2] +
       2 * n * (n4 + 22 * n3 + 125 * n2 + 328 * n + 292) * tAB[5][1];
  return r;
}

}  // namespace moments

double moment_i(const MomentQuery& q);
double moment_ii(const MomentQuery& q);
double moment_iii(const MomentQuery& q);
double moment_iv(const MomentQuery& q);
double moment_v(const MomentQuery& q);
double moment_vi(const MomentQuery& q, Coefficients coef = Coefficients::Corrected);
double moment_vii(const MomentQuery& q, Coefficients coef = Coefficients::Corrected);

// All seven in order, sharing one set of invariants.
std::array<double, 7> all_moments(const MomentQuery& q,
                                  Coefficients coef = Coefficients::Corrected);

// x ~ N_p(0, I): E[x'Ax] = tr A, E[x'Ax x'Bx] = 2 tr AB + tr A tr B.
double quad_moment_mean(const Matrix& A);
double quad_moment_product(const Matrix& A, const Matrix& B);

double var_a1(int n, int p, double a2);
double var_a2(int n, int p, double a2, double a4);  // as typeset; approximate
double var_delta0(int N1, int N2, int p, double delta1, double a2);
double var_delta1(int N1, int N2, int p, double delta1, double delta3, double a2, double a4);

// Bartlett construction: W = L C C' L' with C lower triangular,
// C_ii ~ sqrt(chi2_{n-i}) and standard normals below the diagonal.
// For n < p falls back to a sum of n outer products.
Matrix sample_wishart(int n, const Matrix& sigma_chol, std::mt19937_64& rng);

struct MomentCheck {
  std::string name;
  double expected = 0;  // formula value
  double observed = 0;  // exact value or Monte Carlo mean
  double se = 0;        // Monte Carlo standard error, 0 for exact checks
  bool pass = false;
};

// p = 1, Sigma = A = B = 1: each formula against prod_k (n + 2k), integer
// arithmetic, for n = 1..n_max.
std::vector<MomentCheck> verify_moments_exact(int n_max = 20,
                                              Coefficients coef = Coefficients::Corrected);

// Random SPD Sigma and symmetric A, B (seeded), `draws` Wishart and Gaussian
// draws; each formula must lie within `z` standard errors of the MC mean.
std::vector<MomentCheck> verify_moments_mc(int p, int n, long draws, std::uint64_t seed,
                                           double z = 5.0,
                                           Coefficients coef = Coefficients::Corrected);

}  // namespace eddr
