#pragma once

#include <Eigen/Dense>

#include "eddr/spectral.hpp"

namespace eddr {

struct Dims {
  int N1 = 0, N2 = 0, p = 0;
  int N() const { return N1 + N2; }
  int n() const { return N1 + N2 - 2; }
};

struct LimitParams {
  double U0 = 0, V0 = 0;
  int N1 = 0, N2 = 0, p = 0, n = 0;
  Dims dims() const { return {N1, N2, p}; }
};

// U0 = -Delta0/2, V0 = Delta1 + N p a2 / (N1 N2). Throws InfeasibleError if V0 <= 0.
LimitParams limit_params(const DeltaEstimates& d, const TraceEstimates& t, Dims dims);

// Phi((U0 + c) / sqrt(V0))
double expected_error(const LimitParams& lp, double c);

double h_u(double delta1, double a2, Dims dims);
double h_v(double delta3, double a4, Dims dims);
double h_uv(double delta2, double a3, Dims dims);

// DeltaMethod: tau_ell2 = tau2 / (e0 (1 - e0))^2.
// AsPrinted:   tau_ell2 = tau2 / (e0 (1 - e0)).
enum class LogitVariance { DeltaMethod, AsPrinted };

struct AsymptoticLaw {
  double e0 = 0, ell0 = 0;
  double tau2 = 0, tau_ell2 = 0;
  Eigen::Matrix2d theta = Eigen::Matrix2d::Zero();  // n * [[H_U, H_UV], [H_UV, H_V]]
  Eigen::Vector2d grad = Eigen::Vector2d::Zero();   // d e0 / d(U0, V0)
};

// tau2 = grad' theta grad / n, the variance of ce(2|1) itself.
AsymptoticLaw asymptotic_law(const LimitParams& lp, const DeltaEstimates& d,
                             const TraceEstimates& t, double c,
                             LogitVariance conv = LogitVariance::DeltaMethod);

}  // namespace eddr
