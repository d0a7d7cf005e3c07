#pragma once

namespace eddr {

double normal_pdf(double x);

// Phi(x). Absolute error well under 1e-15 (erfc based).
double normal_cdf(double x);

// Inverse of Phi on (0,1); throws UsageError outside.
// Wichura AS241 followed by one Halley step.
double normal_quantile(double u);

}  // namespace eddr
