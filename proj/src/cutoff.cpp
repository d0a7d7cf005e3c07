#include "eddr/cutoff.hpp"

#include <cmath>

#include "eddr/errors.hpp"
#include "eddr/normal.hpp"

namespace eddr {

namespace {

constexpr int kMaxIterations = 500;

bool in_unit(double x) { return x > 0.0 && x < 1.0; }

}  // namespace

void validate(const CutoffRequest& req) {
  if (req.method == Method::M1) {
    if (!in_unit(req.alpha)) throw UsageError("alpha must lie in (0,1)");
  } else {
    if (!in_unit(req.eu)) throw UsageError("eu must lie in (0,1)");
    if (!in_unit(req.beta)) throw UsageError("beta must lie in (0,1)");
  }
}

CutoffResult m1_cutoff(const LimitParams& lp, double alpha) {
  if (!in_unit(alpha)) throw UsageError("alpha must lie in (0,1)");
  if (!(lp.V0 > 0)) throw InfeasibleError("m1_cutoff: V0 must be positive");
  CutoffResult r;
  r.variant_used = Method::M1;
  r.c = std::sqrt(lp.V0) * normal_quantile(alpha) - lp.U0;
  r.e0 = expected_error(lp, r.c);
  return r;
}

double gamma_normal(double eu, double beta, double tau) {
  return eu - tau * normal_quantile(1 - beta);
}

double gamma_logit(double eu, double beta, double tau_ell) {
  return eu / ((1 - eu) * std::exp(tau_ell * normal_quantile(1 - beta)) + eu);
}

CutoffResult m2_cutoff(const LimitParams& lp, const AsymptoticLaw& law, double a1,
                       const CutoffRequest& req) {
  validate(req);
  if (req.method == Method::M1) throw UsageError("m2_cutoff: request is not an M2 method");
  if (!(lp.V0 > 0)) throw InfeasibleError("m2_cutoff: V0 must be positive");
  if (!(a1 > 0)) throw InfeasibleError("m2_cutoff: a1 must be positive");
  if (!(law.tau2 >= 0) || !(law.tau_ell2 >= 0))
    throw InfeasibleError("m2_cutoff: law variance is negative");
  CutoffResult r;
  r.a1 = a1;
  r.tau2 = law.tau2;
  r.variant_used = req.method;
  if (req.method == Method::M2Normal) {
    r.gamma = gamma_normal(req.eu, req.beta, std::sqrt(law.tau2));
    if (!in_unit(r.gamma)) {
      r.fell_back = true;
      r.variant_used = Method::M2Logit;
    }
  }
  if (r.variant_used == Method::M2Logit)
    r.gamma = gamma_logit(req.eu, req.beta, std::sqrt(law.tau_ell2));
  if (!in_unit(r.gamma)) throw InfeasibleError("m2_cutoff: percentile underflowed to 0");
  r.c = (-lp.U0 + std::sqrt(lp.V0) * normal_quantile(r.gamma)) / a1;
  r.e0 = expected_error(lp, r.c);
  return r;
}

CutoffResult calibrate(const LimitParams& lp, const DeltaEstimates& d, const TraceEstimates& t,
                       const CutoffRequest& req) {
  validate(req);
  if (req.method == Method::M1) return m1_cutoff(lp, req.alpha);

  double c = m1_cutoff(lp, req.eu).c;
  CutoffResult r;
  for (int it = 1; it <= kMaxIterations; ++it) {
    const AsymptoticLaw law = asymptotic_law(lp, d, t, c, req.logit_variance);
    r = m2_cutoff(lp, law, t.a1, req);
    r.iterations = it;
    if (req.anchor == M2Anchor::AtTarget) return r;
    if (std::fabs(r.c - c) <= 1e-12 * std::max(1.0, std::fabs(c))) return r;
    c = r.c;
  }
  throw InfeasibleError("calibrate: M2 fixed point did not converge");
}

std::string to_string(Method m) {
  switch (m) {
    case Method::M1: return "m1";
    case Method::M2Normal: return "m2-normal";
    case Method::M2Logit: return "m2-logit";
  }
  return "?";
}

Method parse_method(const std::string& s) {
  if (s == "m1") return Method::M1;
  if (s == "m2-normal") return Method::M2Normal;
  if (s == "m2-logit") return Method::M2Logit;
  throw UsageError("unknown method '" + s + "' (expected m1, m2-normal or m2-logit)");
}

}  // namespace eddr
