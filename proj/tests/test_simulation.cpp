#include <Eigen/Eigenvalues>

#include "doctest.h"
#include "eddr/errors.hpp"
#include "eddr/simulation.hpp"

using namespace eddr;

namespace {

SimConfig small_config(CutoffSource src) {
  SimConfig c;
  c.p = 24;
  c.N1 = 10;
  c.N2 = 13;
  c.rho = 0.4;
  c.bandwidth = 5;
  c.reps = 150;
  c.seed = 17;
  c.source = src;
  c.request.method = Method::M2Logit;
  c.request.eu = 0.2;
  c.request.beta = 0.1;
  return c;
}

bool same(const std::vector<TrialRecord>& a, const std::vector<TrialRecord>& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i].cond_error != b[i].cond_error || a[i].cutoff != b[i].cutoff ||
        a[i].feasible != b[i].feasible || a[i].U != b[i].U || a[i].V != b[i].V)
      return false;
  return true;
}

}  // namespace

TEST_SUITE("simulation") {

TEST_CASE("band_sigma") {
  const Matrix s = band_sigma(5, 0.5, 2);
  CHECK(s(0, 0) == 1.0);
  CHECK(s(0, 1) == 0.5);
  CHECK(s(3, 1) == 0.25);
  CHECK(s(0, 3) == 0.0);
  CHECK(s == s.transpose());
  CHECK(band_sigma(4, 0.0) == Matrix::Identity(4, 4));
  CHECK_THROWS_AS(band_sigma(4, 1.0), UsageError);
}

TEST_CASE("design means") {
  const auto id = design_means(Matrix::Identity(16, 16));
  CHECK(id.mu1.squaredNorm() == doctest::Approx(5.0));
  CHECK(id.mu2.isZero());
  const Matrix S = band_sigma(12, 0.5, 50);
  const auto m = design_means(S);
  Eigen::SelfAdjointEigenSolver<Matrix> es(S);
  const Vector ref = es.operatorSqrt() * Vector::Constant(12, std::sqrt(5.0 / 12));
  CHECK((m.mu1 - ref).norm() < 1e-12);
  const auto plain = design_means(S, MeanPlacement::Identity);
  CHECK(plain.mu1 == Vector::Constant(12, std::sqrt(5.0 / 12)));
}

TEST_CASE("design carries true parameters") {
  auto cfg = small_config(CutoffSource::Population);
  cfg.rho = 0;
  const auto d = make_design(cfg);
  CHECK(d.traces.a2 == doctest::Approx(1.0));
  CHECK(d.deltas.d0 == doctest::Approx(5.0));
  CHECK(d.deltas.d3 == doctest::Approx(5.0));
  REQUIRE(d.population_cutoff.has_value());
  CHECK(std::isfinite(d.population_cutoff->c));
  CHECK_FALSE(make_design(small_config(CutoffSource::PlugIn)).population_cutoff.has_value());
}

TEST_CASE("parallel trials equal the serial reference") {
  for (auto src : {CutoffSource::PlugIn, CutoffSource::Population}) {
    auto cfg = small_config(src);
    const auto d = make_design(cfg);
    const auto ref = run_trials_serial(cfg, d);
    for (int w : {2, 3, 5}) {
      cfg.workers = w;
      CHECK(same(ref, run_trials(cfg, d)));
    }
  }
}

TEST_CASE("seed determinism") {
  auto cfg = small_config(CutoffSource::PlugIn);
  const auto d = make_design(cfg);
  CHECK(same(run_trials(cfg, d), run_trials(cfg, d)));
  const auto a = run_trial(cfg, d, 3);
  cfg.seed = 18;
  CHECK(a.U != run_trial(cfg, d, 3).U);
}

TEST_CASE("bias term vanishes for balanced designs") {
  auto cfg = small_config(CutoffSource::PlugIn);
  cfg.N2 = cfg.N1;
  const auto d = make_design(cfg);
  const auto a = run_trials(cfg, d);
  cfg.bias_correction = false;
  CHECK(same(a, run_trials(cfg, d)));
}

TEST_CASE("attained error increases with alpha") {
  SimConfig cfg;
  cfg.p = 16;
  cfg.N1 = cfg.N2 = 8;
  cfg.reps = 300;
  cfg.source = CutoffSource::Population;
  cfg.request.method = Method::M1;
  double prev = 0;
  for (double alpha : {0.05, 0.1, 0.2, 0.3}) {
    cfg.request.alpha = alpha;
    const auto d = make_design(cfg);
    const double ae = attained_error_rate(run_trials(cfg, d)).value;
    CHECK(ae > prev);
    prev = ae;
  }
}

TEST_CASE("population M1 error is near alpha") {
  SimConfig cfg;
  cfg.reps = 2000;
  cfg.source = CutoffSource::Population;
  cfg.request.method = Method::M1;
  cfg.request.alpha = 0.1;
  const auto d = make_design(cfg);
  const auto ae = attained_error_rate(run_trials(cfg, d));
  CHECK(ae.excluded == 0);
  CHECK(std::fabs(ae.value - 0.1) < 0.01);
}

TEST_CASE("aggregates") {
  std::vector<TrialRecord> r(4);
  r[0].cond_error = 0.1;
  r[1].cond_error = 0.3;
  r[2].cond_error = 0.2;
  r[3].feasible = false;
  const auto ae = attained_error_rate(r);
  CHECK(ae.value == doctest::Approx(0.2));
  CHECK(ae.se == doctest::Approx(0.1 / std::sqrt(3.0)));
  CHECK(ae.used == 3);
  CHECK(ae.excluded == 1);
  const auto acl = attained_confidence_level(r, 0.2);
  CHECK(acl.value == doctest::Approx(2.0 / 3));
  CHECK_THROWS_AS(check_exclusions(r), InfeasibleError);
  CHECK_NOTHROW(check_exclusions(r, 0.5));
  std::vector<TrialRecord> none(2);
  none[0].feasible = none[1].feasible = false;
  CHECK_THROWS_AS(attained_error_rate(none), DataError);
}

TEST_CASE("config validation") {
  SimConfig c;
  c.reps = 0;
  CHECK_THROWS_AS(validate(c), UsageError);
  c = SimConfig{};
  c.N1 = 3;
  c.N2 = 3;
  CHECK_THROWS_AS(validate(c), UsageError);
  c.source = CutoffSource::Population;
  CHECK_NOTHROW(validate(c));
}

}
