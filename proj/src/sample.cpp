#include "eddr/sample.hpp"

#include <cmath>
#include <string>

#include "eddr/errors.hpp"

namespace eddr {

namespace {

void check_pair(const LabeledSample& s1, const LabeledSample& s2) {
  if (s1.observations.cols() != s2.observations.cols())
    throw DataError("pooled_summary: samples have different dimensions (" +
                    std::to_string(s1.observations.cols()) + " vs " +
                    std::to_string(s2.observations.cols()) + ")");
  if (s1.observations.cols() < 1) throw DataError("pooled_summary: p must be >= 1");
  if (s1.observations.rows() < 2 || s2.observations.rows() < 2)
    throw DataError("pooled_summary: each group needs at least 2 observations");
  if (!s1.observations.allFinite() || !s2.observations.allFinite())
    throw DataError("pooled_summary: non-finite entries");
}

}  // namespace

Matrix pooled_centered(const LabeledSample& s1, const LabeledSample& s2) {
  check_pair(s1, s2);
  const auto N1 = s1.observations.rows(), N2 = s2.observations.rows();
  const auto p = s1.observations.cols();
  Matrix X(p, N1 + N2);
  const Vector m1 = s1.observations.colwise().mean().transpose();
  const Vector m2 = s2.observations.colwise().mean().transpose();
  X.leftCols(N1) = s1.observations.transpose().colwise() - m1;
  X.rightCols(N2) = s2.observations.transpose().colwise() - m2;
  return X;
}

TwoSampleSummary pooled_summary(const LabeledSample& s1, const LabeledSample& s2) {
  const Matrix X = pooled_centered(s1, s2);
  TwoSampleSummary s;
  s.N1 = static_cast<int>(s1.observations.rows());
  s.N2 = static_cast<int>(s2.observations.rows());
  s.n = s.N1 + s.N2 - 2;
  s.p = static_cast<int>(X.rows());
  s.xbar1 = s1.observations.colwise().mean().transpose();
  s.xbar2 = s2.observations.colwise().mean().transpose();
  s.S = X * X.transpose() / static_cast<double>(s.n);
  s.S = 0.5 * (s.S + s.S.transpose());
  return s;
}

void validate(const TwoSampleSummary& s) {
  if (s.N1 < 1 || s.N2 < 1) throw DataError("summary: group sizes must be positive");
  if (s.n != s.N1 + s.N2 - 2 || s.n < 1) throw DataError("summary: n must equal N1+N2-2 >= 1");
  if (s.p < 1 || s.xbar1.size() != s.p || s.xbar2.size() != s.p || s.S.rows() != s.p ||
      s.S.cols() != s.p)
    throw DataError("summary: dimension mismatch");
  if (!is_symmetric(s.S, 1e-12)) throw DataError("summary: S is not symmetric");
  if (s.S.rows() > 0) {
    Eigen::LDLT<Matrix> ldlt(s.S);
    const double floor = -1e-10 * std::max(s.S.trace() / s.p, 1e-300);
    if (ldlt.vectorD().minCoeff() < floor) throw DataError("summary: S is not PSD");
  }
}

void validate(const NormalParams& np) {
  if (np.sigma.rows() != np.mu.size() || np.sigma.cols() != np.mu.size())
    throw DataError("normal params: dimension mismatch");
  Eigen::LLT<Matrix> llt(np.sigma);
  if (llt.info() != Eigen::Success) throw DataError("normal params: sigma is not PD");
}

}  // namespace eddr
