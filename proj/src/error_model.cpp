#include "eddr/error_model.hpp"

#include <cmath>

#include "eddr/errors.hpp"
#include "eddr/normal.hpp"

namespace eddr {

namespace {

void require_feasible(const LimitParams& lp) {
  if (!(lp.V0 > 0) || !std::isfinite(lp.V0) || !std::isfinite(lp.U0))
    throw InfeasibleError("V0 must be positive and finite (got " + std::to_string(lp.V0) + ")");
}

}  // namespace

LimitParams limit_params(const DeltaEstimates& d, const TraceEstimates& t, Dims dims) {
  if (dims.N1 < 1 || dims.N2 < 1 || dims.p < 1) throw UsageError("limit_params: bad dims");
  LimitParams lp;
  lp.N1 = dims.N1;
  lp.N2 = dims.N2;
  lp.p = dims.p;
  lp.n = dims.n();
  const double k = double(dims.N()) * dims.p / (double(dims.N1) * dims.N2);
  lp.U0 = -d.d0 / 2;
  lp.V0 = d.d1 + k * t.a2;
  require_feasible(lp);
  return lp;
}

double expected_error(const LimitParams& lp, double c) {
  require_feasible(lp);
  return normal_cdf((lp.U0 + c) / std::sqrt(lp.V0));
}

double h_u(double delta1, double a2, Dims dims) {
  const double N1 = dims.N1, N2 = dims.N2, p = dims.p;
  return delta1 / N2 + (N1 * N1 + N2 * N2) * p * a2 / (2 * N1 * N1 * N2 * N2);
}

double h_v(double delta3, double a4, Dims dims) {
  const double N1 = dims.N1, N2 = dims.N2, N = dims.N(), p = dims.p;
  const double m = N1 * N2;
  return 4 * N * delta3 / m + 2 * N * N * p * a4 / (m * m);
}

double h_uv(double delta2, double a3, Dims dims) {
  const double N1 = dims.N1, N2 = dims.N2, N = dims.N(), p = dims.p;
  const double m = N1 * N2;
  return -2 * delta2 / N2 - N * (N1 - N2) * p * a3 / (m * m);
}

AsymptoticLaw asymptotic_law(const LimitParams& lp, const DeltaEstimates& d,
                             const TraceEstimates& t, double c, LogitVariance conv) {
  require_feasible(lp);
  if (!std::isfinite(c)) throw InfeasibleError("asymptotic_law: cutoff is not finite");
  const Dims dims = lp.dims();
  const double n = lp.n;
  AsymptoticLaw law;
  const double sv = std::sqrt(lp.V0);
  const double x = (lp.U0 + c) / sv;
  const double phi = normal_pdf(x);
  law.e0 = normal_cdf(x);
  if (!(law.e0 > 0 && law.e0 < 1)) throw InfeasibleError("asymptotic_law: e0 is 0 or 1");
  law.ell0 = std::log(law.e0 / (1 - law.e0));
  law.grad << phi / sv, -(lp.U0 + c) / (2 * lp.V0 * sv) * phi;
  const double hu = h_u(d.d1, t.a2, dims);
  const double hv = h_v(d.d3, t.a4, dims);
  const double huv = h_uv(d.d2, t.a3, dims);
  law.theta << n * hu, n * huv, n * huv, n * hv;
  law.tau2 = law.grad.dot(law.theta * law.grad) / n;
  if (!(law.tau2 >= 0) || !std::isfinite(law.tau2))
    throw InfeasibleError("asymptotic_law: tau2 is negative (indefinite plug-in theta)");
  const double v = law.e0 * (1 - law.e0);
  law.tau_ell2 = conv == LogitVariance::DeltaMethod ? law.tau2 / (v * v) : law.tau2 / v;
  return law;
}

}  // namespace eddr
