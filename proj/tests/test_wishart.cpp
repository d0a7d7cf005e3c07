#include "doctest.h"
#include "eddr/errors.hpp"
#include "eddr/wishart.hpp"
#include "test_util.hpp"
#include "wick_oracle.hpp"

using namespace eddr;
using testutil::rel_err;

namespace {

// Small integer matrices keep every invariant exactly representable.
MomentQuery int_query(int p, int n) {
  MomentQuery q;
  q.n = n;
  if (p == 2) {
    q.sigma = (Matrix(2, 2) << 2, 1, 1, 3).finished();
    q.A = (Matrix(2, 2) << 1, -2, -2, 0).finished();
    q.B = (Matrix(2, 2) << 3, 1, 1, -1).finished();
  } else {
    q.sigma = (Matrix(3, 3) << 3, 1, 0, 1, 2, 1, 0, 1, 2).finished();
    q.A = (Matrix(3, 3) << 1, 0, 2, 0, -1, 1, 2, 1, 0).finished();
    q.B = (Matrix(3, 3) << 0, 1, -1, 1, 2, 0, -1, 0, 1).finished();
  }
  return q;
}

std::array<double, 7> wick_moments(const MomentQuery& q) {
  const Matrix I = Matrix::Identity(q.sigma.rows(), q.sigma.cols());
  const Matrix *A = &q.A, *B = &q.B, *E = &I;
  const double n = q.n;
  using wick::expectation;
  return {expectation({{A}, {B}}, q.sigma, n),
          expectation({{A, B}}, q.sigma, n),
          expectation({{A, E, E}}, q.sigma, n),
          expectation({{A, E}, {B, E}}, q.sigma, n),
          expectation({{A, E, B, E}}, q.sigma, n),
          expectation({{A, E, E}, {B, E, E}}, q.sigma, n),
          expectation({{A, E, E, B, E, E}}, q.sigma, n)};
}

}  // namespace

TEST_SUITE("wishart") {

TEST_CASE("oracle reproduces elementary moments") {
  const auto q = int_query(2, 4);
  // E[W] = n Sigma
  const Matrix I = Matrix::Identity(2, 2);
  CHECK(wick::expectation({{&q.A}}, q.sigma, 4) == doctest::Approx(4 * (q.A * q.sigma).trace()));
  // scalar chi-square moments
  const Matrix one = Matrix::Ones(1, 1);
  CHECK(wick::expectation({{&one}, {&one}, {&one}}, one, 5) == doctest::Approx(5 * 7 * 9));
  CHECK(wick::expectation({{&one, &one, &one, &one}}, one, 3) == doctest::Approx(3 * 5 * 7 * 9));
  (void)I;
}

TEST_CASE("closed forms match the pairing oracle") {
  for (int p : {2, 3}) {
    for (int n : {1, 2, 3, 7, 12}) {
      const auto q = int_query(p, n);
      const auto f = all_moments(q);
      const auto w = wick_moments(q);
      for (int k = 0; k < 7; ++k) {
        INFO("p=" << p << " n=" << n << " moment " << k + 1 << " formula " << f[k] << " oracle "
                  << w[k]);
        CHECK(rel_err(f[k], w[k]) < 1e-10);
      }
    }
  }
}

TEST_CASE("typeset coefficients of vi and vii disagree with the oracle") {
  for (int n : {2, 5}) {
    const auto q = int_query(3, n);
    const auto w = wick_moments(q);
    CHECK(rel_err(moment_vi(q, Coefficients::AsPrinted), w[5]) > 1e-6);
    CHECK(rel_err(moment_vii(q, Coefficients::AsPrinted), w[6]) > 1e-6);
    CHECK(rel_err(moment_vi(q), w[5]) < 1e-10);
    CHECK(rel_err(moment_vii(q), w[6]) < 1e-10);
  }
}

TEST_CASE("exact scalar suite") {
  for (const auto& c : verify_moments_exact(20)) {
    INFO(c.name);
    CHECK(c.pass);
  }
  const auto printed = verify_moments_exact(20, Coefficients::AsPrinted);
  for (int k = 0; k < 5; ++k) CHECK(printed[k].pass);
  CHECK_FALSE(printed[5].pass);
  CHECK_FALSE(printed[6].pass);
}

TEST_CASE("symmetry in A and B") {
  auto q = int_query(3, 6);
  const auto a = all_moments(q);
  std::swap(q.A, q.B);
  const auto b = all_moments(q);
  for (int k : {0, 1, 3, 4, 5, 6}) CHECK(rel_err(a[k], b[k]) < 1e-12);
}

TEST_CASE("similarity invariance") {
  MomentQuery q;
  q.n = 9;
  q.sigma = testutil::random_spd(4, 1);
  q.A = testutil::random_sym(4, 2);
  q.B = testutil::random_sym(4, 3);
  const auto base = all_moments(q);
  const Matrix Q = testutil::random_orthogonal(4, 4);
  MomentQuery r = q;
  r.sigma = Q * q.sigma * Q.transpose();
  r.A = Q * q.A * Q.transpose();
  r.B = Q * q.B * Q.transpose();
  const auto rot = all_moments(r);
  for (int k = 0; k < 7; ++k) CHECK(rel_err(base[k], rot[k]) < 1e-10);
}

TEST_CASE("quadratic form moments") {
  const Matrix A = testutil::random_sym(3, 5), B = testutil::random_sym(3, 6);
  CHECK(quad_moment_mean(A) == A.trace());
  CHECK(quad_moment_product(A, B) == doctest::Approx(2 * (A * B).trace() + A.trace() * B.trace()));
  CHECK_THROWS_AS(quad_moment_product(A, Matrix::Identity(2, 2)), DataError);
}

TEST_CASE("variance formulas") {
  CHECK(var_a1(64, 64, 1.0) == doctest::Approx(2.0 / 4096));
  CHECK(var_delta0(32, 32, 64, 5, 1) == doctest::Approx(1.75));
  // a2 = a4 = 1, p = 1: only the leading term survives the (a2^2 - a4/p) bracket
  const double n = 30;
  CHECK(var_a2(30, 1, 1, 1) == doctest::Approx(8 * 32 * 33 * 29 * 29 / std::pow(n, 5)));
  CHECK(var_delta1(32, 32, 64, 0, 0, 0, 0) == 0.0);
}

TEST_CASE("Wishart sampler mean") {
  const Matrix S = testutil::random_spd(5, 11);
  const Matrix L = cholesky(S);
  for (int n : {3, 8}) {
    auto rng = substream(n, 0);
    Matrix sum = Matrix::Zero(5, 5);
    const int draws = 20000;
    for (int d = 0; d < draws; ++d) {
      const Matrix W = sample_wishart(n, L, rng);
      CHECK_MESSAGE(W == W.transpose(), "not symmetric");
      sum += W;
    }
    const Matrix mean = sum / draws;
    // entrywise var of W_ij is n (S_ij^2 + S_ii S_jj)
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j) {
        const double se = std::sqrt(n * (S(i, j) * S(i, j) + S(i, i) * S(j, j)) / draws);
        CHECK(std::fabs(mean(i, j) - n * S(i, j)) < 5 * se);
      }
  }
}

TEST_CASE("small Monte Carlo suite") {
  for (const auto& c : verify_moments_mc(2, 6, 40000, 5)) {
    INFO(c.name << " expected " << c.expected << " observed " << c.observed << " se " << c.se);
    CHECK(c.pass);
  }
}

}
