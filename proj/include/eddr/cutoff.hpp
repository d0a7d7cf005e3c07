#pragma once

#include <string>

#include "eddr/error_model.hpp"

namespace eddr {

enum class Method { M1, M2Normal, M2Logit };

// Where the M2 law (e0, tau) is evaluated. The law depends on c and the
// cutoff depends on the law, so by default we solve for the self-consistent c.
// AtTarget evaluates once at the c where e0 = eu.
enum class M2Anchor { FixedPoint, AtTarget };

struct CutoffRequest {
  Method method = Method::M1;
  double alpha = 0.1;  // M1
  double eu = 0.2;     // M2
  double beta = 0.1;   // M2
  LogitVariance logit_variance = LogitVariance::DeltaMethod;
  M2Anchor anchor = M2Anchor::FixedPoint;
};

struct CutoffResult {
  double c = 0;
  Method variant_used = Method::M1;
  double gamma = 0;  // effective percentile (M2 only)
  bool fell_back = false;
  double e0 = 0;    // Phi((U0 + c)/sqrt(V0)) at the returned c
  double tau2 = 0;  // M2 only
  double a1 = 0;    // divisor used by the M2 formula
  int iterations = 0;
};

void validate(const CutoffRequest& req);

// sqrt(V0) z_alpha - U0
CutoffResult m1_cutoff(const LimitParams& lp, double alpha);

// eu - tau z_{1-beta}; may leave (0,1)
double gamma_normal(double eu, double beta, double tau);

// eu / ((1 - eu) exp(tau_ell z_{1-beta}) + eu); always in (0,1)
double gamma_logit(double eu, double beta, double tau_ell);

// One evaluation of (-U0 + sqrt(V0) z_gamma) / a1 for a given law. A normal
// request whose gamma leaves (0,1) falls back to the logit percentile.
CutoffResult m2_cutoff(const LimitParams& lp, const AsymptoticLaw& law, double a1,
                       const CutoffRequest& req);

// Full calibration for any method, including the M2 fixed point.
CutoffResult calibrate(const LimitParams& lp, const DeltaEstimates& d, const TraceEstimates& t,
                       const CutoffRequest& req);

std::string to_string(Method m);
Method parse_method(const std::string& s);

}  // namespace eddr
