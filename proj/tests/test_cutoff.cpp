#include "doctest.h"
#include "eddr/cutoff.hpp"
#include "eddr/errors.hpp"
#include "eddr/normal.hpp"
#include "eddr/rng.hpp"

using namespace eddr;

namespace {

LimitParams lp_of(double U0, double V0) {
  LimitParams lp;
  lp.U0 = U0;
  lp.V0 = V0;
  lp.N1 = lp.N2 = 32;
  lp.p = 64;
  lp.n = 62;
  return lp;
}

TraceEstimates unit_traces() {
  TraceEstimates t;
  t.a1 = t.a2 = t.a3 = t.a4 = 1;
  t.p = 64;
  t.n = 62;
  return t;
}

}  // namespace

TEST_SUITE("cutoff") {

TEST_CASE("m1") {
  const auto lp = lp_of(-2.5, 4);
  CHECK(m1_cutoff(lp, 0.5).c == 2.5);
  CHECK(m1_cutoff(lp, 0.1).c == doctest::Approx(-0.0631031310892009).epsilon(1e-12));
  double prev = -1e300;
  for (double a = 0.01; a < 1; a += 0.07) {
    const double c = m1_cutoff(lp, a).c;
    CHECK(c > prev);
    prev = c;
  }
  CHECK_THROWS_AS(m1_cutoff(lp, 0.0), UsageError);
}

TEST_CASE("m1 exactness over random triples") {
  auto rng = substream(123, 0);
  std::uniform_real_distribution<double> U(-10, 10), V(0.01, 50), A(1e-4, 1 - 1e-4);
  for (int i = 0; i < 1000; ++i) {
    const auto lp = lp_of(U(rng), V(rng));
    const double a = A(rng);
    CHECK(std::fabs(expected_error(lp, m1_cutoff(lp, a).c) - a) < 1e-12);
  }
}

TEST_CASE("gamma_normal and gamma_logit") {
  CHECK(gamma_normal(0.2, 0.05, 0.0) == 0.2);
  CHECK(gamma_normal(0.2, 0.05, 0.05) == doctest::Approx(0.117757318652426).epsilon(1e-12));
  CHECK(gamma_normal(0.1, 0.01, 0.1) == doctest::Approx(-0.132634787404084).epsilon(1e-12));
  CHECK(gamma_logit(0.2, 0.05, 0.0) == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(gamma_logit(0.2, 0.05, 0.3) == doctest::Approx(0.132417540089995).epsilon(1e-12));
  CHECK(gamma_logit(0.2, 0.05, 30.0) > 0.0);
  CHECK(gamma_logit(0.2, 0.05, 30.0) < 1e-15);
  auto rng = substream(7, 0);
  // keep |logit| well inside the range where 1 - g is representable
  std::uniform_real_distribution<double> u(1e-3, 1 - 1e-3), tl(0, 5);
  for (int i = 0; i < 2000; ++i) {
    const double g = gamma_logit(u(rng), u(rng), tl(rng));
    CHECK(g > 0);
    CHECK(g < 1);
  }
}

TEST_CASE("m2 single evaluation") {
  const auto lp = lp_of(-2.5, 9);
  AsymptoticLaw law;
  law.tau2 = 0.05 * 0.05;
  law.e0 = 0.2;
  law.tau_ell2 = 0.3 * 0.3;
  CutoffRequest req;
  req.method = Method::M2Normal;
  req.eu = 0.2;
  req.beta = 0.05;
  const auto r = m2_cutoff(lp, law, 1.0, req);
  CHECK_FALSE(r.fell_back);
  CHECK(r.gamma == doctest::Approx(0.117757318652426).epsilon(1e-12));
  CHECK(r.c == doctest::Approx(-1.05881799977852).epsilon(1e-10));
  // a1 = 1: same algebraic form as m1 at gamma
  CHECK(r.c == doctest::Approx(m1_cutoff(lp, r.gamma).c).epsilon(1e-14));
  // dividing by a1
  CHECK(m2_cutoff(lp, law, 2.0, req).c == doctest::Approx(r.c / 2).epsilon(1e-14));
  CHECK_THROWS_AS(m2_cutoff(lp, law, 0.0, req), InfeasibleError);

  req.method = Method::M2Logit;
  const auto g = m2_cutoff(lp, law, 1.0, req);
  CHECK(g.variant_used == Method::M2Logit);
  CHECK_FALSE(g.fell_back);
  CHECK(g.gamma == doctest::Approx(0.132417540089995).epsilon(1e-12));
}

TEST_CASE("m2 fallback") {
  const auto lp = lp_of(-2.5, 9);
  AsymptoticLaw law;
  law.tau2 = 0.1 * 0.1;
  law.e0 = 0.1;
  law.tau_ell2 = 0.5;
  CutoffRequest req;
  req.method = Method::M2Normal;
  req.eu = 0.1;
  req.beta = 0.01;
  const auto r = m2_cutoff(lp, law, 1.0, req);
  CHECK(r.fell_back);
  CHECK(r.variant_used == Method::M2Logit);
  CHECK(r.gamma == doctest::Approx(gamma_logit(0.1, 0.01, std::sqrt(0.5))));
  req.method = Method::M2Logit;
  CHECK_FALSE(m2_cutoff(lp, law, 1.0, req).fell_back);
}

TEST_CASE("calibrate: fixed point is self-consistent") {
  const Dims dims{32, 32, 64};
  const DeltaEstimates d{5, 5, 5, 5};
  const auto t = unit_traces();
  const auto lp = limit_params(d, t, dims);
  for (auto m : {Method::M2Normal, Method::M2Logit}) {
    CutoffRequest req;
    req.method = m;
    req.eu = 0.2;
    req.beta = 0.1;
    const auto r = calibrate(lp, d, t, req);
    const auto law = asymptotic_law(lp, d, t, r.c, req.logit_variance);
    const auto again = m2_cutoff(lp, law, t.a1, req);
    CHECK(again.c == doctest::Approx(r.c).epsilon(1e-11));
    CHECK(r.e0 < 0.2);
    req.anchor = M2Anchor::AtTarget;
    const auto once = calibrate(lp, d, t, req);
    CHECK(once.iterations == 1);
    const auto law0 = asymptotic_law(lp, d, t, m1_cutoff(lp, 0.2).c, req.logit_variance);
    CHECK(once.c == doctest::Approx(m2_cutoff(lp, law0, 1.0, req).c));
  }
}

TEST_CASE("calibrate: cutoff shrinks as confidence 1 - beta grows") {
  const Dims dims{32, 32, 64};
  const DeltaEstimates d{5, 5, 5, 5};
  const auto t = unit_traces();
  const auto lp = limit_params(d, t, dims);
  for (auto m : {Method::M2Normal, Method::M2Logit}) {
    double prev = -1e300;
    for (double beta : {0.5, 0.3, 0.2, 0.1, 0.05, 0.01}) {
      CutoffRequest req;
      req.method = m;
      req.eu = 0.2;
      req.beta = beta;
      const double c = calibrate(lp, d, t, req).c;
      if (prev != -1e300) CHECK(c <= prev);
      prev = c;
    }
  }
}

TEST_CASE("request validation and parsing") {
  CutoffRequest r;
  r.method = Method::M2Logit;
  r.eu = 1.2;
  CHECK_THROWS_AS(validate(r), UsageError);
  CHECK(parse_method("m2-normal") == Method::M2Normal);
  CHECK_THROWS_AS(parse_method("m3"), UsageError);
}

}
