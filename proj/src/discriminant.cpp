#include "eddr/discriminant.hpp"

#include <cmath>

#include "eddr/errors.hpp"

namespace eddr {

double oracle_score(const Vector& x, const NormalParams& params1, const NormalParams& params2) {
  if (x.size() != params1.mu.size() || x.size() != params2.mu.size())
    throw DataError("oracle_score: dimension mismatch");
  return (x - params2.mu).squaredNorm() - (x - params1.mu).squaredNorm();
}

double discriminant_score(const Vector& x, const TwoSampleSummary& s) {
  if (x.size() != s.p || s.xbar1.size() != s.p || s.xbar2.size() != s.p)
    throw DataError("discriminant_score: dimension mismatch");
  double score = (x - s.xbar2).squaredNorm() - (x - s.xbar1).squaredNorm();
  if (s.N1 != s.N2) {
    const double N1 = s.N1, N2 = s.N2;
    score -= (N1 - N2) / (N1 * N2) * s.S.trace();
  }
  return score;
}

Label classify_score(double score, double c) {
  if (!std::isfinite(c)) throw UsageError("classify: cutoff must be finite");
  return score > 2.0 * c ? Label::Pi1 : Label::Pi2;
}

Label classify(const Vector& x, const TwoSampleSummary& s, double c) {
  return classify_score(discriminant_score(x, s), c);
}

}  // namespace eddr
