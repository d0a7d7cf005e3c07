#include "eddr/wishart.hpp"

#include <cmath>

#include "eddr/errors.hpp"
#include "eddr/rng.hpp"

namespace eddr {

namespace {

void check_query(const MomentQuery& q) {
  const auto p = q.sigma.rows();
  if (q.n < 1) throw UsageError("moment query: n must be >= 1");
  if (p < 1 || q.sigma.cols() != p || q.A.rows() != p || q.A.cols() != p || q.B.rows() != p ||
      q.B.cols() != p)
    throw DataError("moment query: dimension mismatch");
}

}  // namespace

TraceInvariants<double> trace_invariants(const MomentQuery& q) {
  check_query(q);
  const auto p = q.sigma.rows();
  std::array<Matrix, 7> P;
  P[0] = Matrix::Identity(p, p);
  for (int i = 1; i < 7; ++i) P[i] = P[i - 1] * q.sigma;
  TraceInvariants<double> v;
  std::array<Matrix, 7> PA, PB;
  for (int i = 0; i < 7; ++i) {
    PA[i] = P[i] * q.A;
    PB[i] = P[i] * q.B;
    v.t[i] = P[i].trace();
    v.tA[i] = PA[i].trace();
    v.tB[i] = PB[i].trace();
  }
  for (int i = 0; i < 7; ++i)
    for (int j = 0; i + j < 7; ++j)
      v.tAB[i][j] = (PA[i] * PB[j]).trace();
  return v;
}

double moment_i(const MomentQuery& q) { return moments::i(trace_invariants(q), double(q.n)); }
double moment_ii(const MomentQuery& q) { return moments::ii(trace_invariants(q), double(q.n)); }
double moment_iii(const MomentQuery& q) { return moments::iii(trace_invariants(q), double(q.n)); }
double moment_iv(const MomentQuery& q) { return moments::iv(trace_invariants(q), double(q.n)); }
double moment_v(const MomentQuery& q) { return moments::v(trace_invariants(q), double(q.n)); }

double moment_vi(const MomentQuery& q, Coefficients coef) {
  return moments::vi(trace_invariants(q), double(q.n), coef);
}

double moment_vii(const MomentQuery& q, Coefficients coef) {
  return moments::vii(trace_invariants(q), double(q.n), coef);
}

std::array<double, 7> all_moments(const MomentQuery& q, Coefficients coef) {
  const auto v = trace_invariants(q);
  const double n = q.n;
  return {moments::i(v, n),  moments::ii(v, n),       moments::iii(v, n),       moments::iv(v, n),
          moments::v(v, n), moments::vi(v, n, coef), moments::vii(v, n, coef)};
}

double quad_moment_mean(const Matrix& A) {
  if (A.rows() != A.cols()) throw DataError("quad_moment_mean: A must be square");
  return A.trace();
}

double quad_moment_product(const Matrix& A, const Matrix& B) {
  if (A.rows() != A.cols() || B.rows() != A.rows() || B.cols() != A.cols())
    throw DataError("quad_moment_product: dimension mismatch");
  return 2 * (A * B).trace() + A.trace() * B.trace();
}

double var_a1(int n, int p, double a2) { return 2 * a2 / (double(n) * p); }

double var_a2(int n_, int p_, double a2, double a4) {
  const double n = n_, p = p_;
  const double n4 = n * n * n * n;
  return 8 * (n + 2) * (n + 3) * (n - 1) * (n - 1) / (p * n4 * n) * a4 +
         4 * (n + 2) * (n - 1) / n4 * (a2 * a2 - a4 / p);
}

double var_delta0(int N1_, int N2_, int p_, double delta1, double a2) {
  const double N1 = N1_, N2 = N2_, N = N1 + N2, p = p_;
  return 4 * N / (N1 * N2) * delta1 + 2 * N * N * p / (N1 * N1 * N2 * N2) * a2;
}

double var_delta1(int N1_, int N2_, int p_, double delta1, double delta3, double a2, double a4) {
  const double N1 = N1_, N2 = N2_, N = N1 + N2, p = p_, n = N - 2;
  const double m = N1 * N2;
  return 2 * a2 * a2 * N * N * p * p / (n * m * m) + 4 * a2 * delta1 * N * p / (n * m) +
         2 * a4 * N * N * N * p / (n * m * m) + 2 * delta1 * delta1 / n +
         4 * delta3 * N * N / (n * m);
}

Matrix sample_wishart(int n, const Matrix& L, std::mt19937_64& rng) {
  if (n < 1) throw UsageError("sample_wishart: n must be >= 1");
  const auto p = L.rows();
  std::normal_distribution<double> z;
  Matrix C;
  if (n >= p) {
    C = Matrix::Zero(p, p);
    for (Eigen::Index i = 0; i < p; ++i) {
      std::chi_squared_distribution<double> chi(double(n - i));
      C(i, i) = std::sqrt(chi(rng));
      for (Eigen::Index j = 0; j < i; ++j) C(i, j) = z(rng);
    }
  } else {
    C.resize(p, n);
    for (Eigen::Index j = 0; j < n; ++j)
      for (Eigen::Index i = 0; i < p; ++i) C(i, j) = z(rng);
  }
  const Matrix LC = L.triangularView<Eigen::Lower>() * C;
  Matrix W = LC * LC.transpose();
  return 0.5 * (W + W.transpose());
}

namespace {

constexpr const char* kMomentNames[7] = {"i",  "ii", "iii", "iv",
                                         "v", "vi", "vii"};
constexpr int kMomentPower[7] = {2, 2, 3, 4, 4, 6, 6};

// Welford running mean and variance.
struct Running {
  long count = 0;
  double mean = 0, m2 = 0;
  void add(double x) {
    ++count;
    const double d = x - mean;
    mean += d / count;
    m2 += d * (x - mean);
  }
  double se() const { return count > 1 ? std::sqrt(m2 / (count - 1) / count) : 0.0; }
};

}  // namespace

std::vector<MomentCheck> verify_moments_exact(int n_max, Coefficients coef) {
  using I = long long;
  const auto v = unit_invariants<I>();
  std::vector<MomentCheck> out;
  for (int k = 0; k < 7; ++k) {
    MomentCheck c;
    c.name = std::string("moment_") + kMomentNames[k] + " p=1 n=1.." + std::to_string(n_max);
    c.pass = true;
    for (I n = 1; n <= n_max; ++n) {
      I chi = 1;
      for (int j = 0; j < kMomentPower[k]; ++j) chi *= n + 2 * j;
      I f = 0;
      switch (k) {
        case 0: f = moments::i(v, n); break;
        case 1: f = moments::ii(v, n); break;
        case 2: f = moments::iii(v, n); break;
        case 3: f = moments::iv(v, n); break;
        case 4: f = moments::v(v, n); break;
        case 5: f = moments::vi(v, n, coef); break;
        case 6: f = moments::vii(v, n, coef); break;
      }
      if (f != chi && c.pass) {
        // report the first failing n
        c.pass = false;
        c.expected = double(f);
        c.observed = double(chi);
        c.name += " (first mismatch n=" + std::to_string(n) + ")";
      }
      if (c.pass) {
        c.expected = double(f);
        c.observed = double(chi);
      }
    }
    out.push_back(c);
  }
  return out;
}

std::vector<MomentCheck> verify_moments_mc(int p, int n, long draws, std::uint64_t seed,
                                           double z, Coefficients coef) {
  if (p < 1) throw UsageError("verify_moments_mc: p must be >= 1");
  if (n < 1) throw UsageError("verify_moments_mc: n must be >= 1");
  if (draws < 2) throw UsageError("verify_moments_mc: need at least 2 draws");
  auto setup = substream(seed, 0);
  const Matrix G = standard_normal(p, p, setup);
  MomentQuery q;
  q.n = n;
  q.sigma = G * G.transpose() / p + 0.5 * Matrix::Identity(p, p);
  const Matrix HA = standard_normal(p, p, setup);
  const Matrix HB = standard_normal(p, p, setup);
  q.A = 0.5 * (HA + HA.transpose());
  q.B = 0.5 * (HB + HB.transpose());
  const auto expected = all_moments(q, coef);
  const Matrix L = cholesky(q.sigma);

  std::array<Running, 9> acc;
  auto rng = substream(seed, 1);
  for (long d = 0; d < draws; ++d) {
    const Matrix W = sample_wishart(n, L, rng);
    const Matrix W2 = W * W;
    const Matrix W3 = W2 * W;
    const Matrix AW = q.A * W, BW = q.B * W;
    const Matrix AW2 = q.A * W2, BW2 = q.B * W2;
    const Matrix AW3 = q.A * W3, BW3 = q.B * W3;
    acc[0].add(AW.trace() * BW.trace());
    acc[1].add((AW * BW).trace());
    acc[2].add(AW3.trace());
    acc[3].add(AW2.trace() * BW2.trace());
    acc[4].add((AW2 * BW2).trace());
    acc[5].add(AW3.trace() * BW3.trace());
    acc[6].add((AW3 * BW3).trace());
    const Vector x = standard_normal(p, 1, rng);
    const double xa = x.dot(q.A * x), xb = x.dot(q.B * x);
    acc[7].add(xa);
    acc[8].add(xa * xb);
  }

  std::vector<MomentCheck> out;
  for (int k = 0; k < 9; ++k) {
    MomentCheck c;
    if (k < 7) {
      c.name = std::string("moment_") + kMomentNames[k];
      c.expected = expected[k];
    } else if (k == 7) {
      c.name = "quad_moment_mean";
      c.expected = quad_moment_mean(q.A);
    } else {
      c.name = "quad_moment_product";
      c.expected = quad_moment_product(q.A, q.B);
    }
    c.observed = acc[k].mean;
    c.se = acc[k].se();
    c.pass = std::fabs(c.observed - c.expected) <= z * c.se;
    out.push_back(c);
  }
  return out;
}

}  // namespace eddr
