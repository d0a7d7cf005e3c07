#pragma once

#include "eddr/linalg.hpp"

namespace eddr {

struct LabeledSample {
  Matrix observations;  // N_g rows, p columns
  int group = 1;
};

struct TwoSampleSummary {
  Vector xbar1, xbar2;
  Matrix S;  // pooled covariance, divisor n
  int N1 = 0, N2 = 0;
  int n = 0;  // N1 + N2 - 2
  int p = 0;

  int N() const { return N1 + N2; }
  Vector delta() const { return xbar1 - xbar2; }
};

struct NormalParams {
  Vector mu;
  Matrix sigma;
};

TwoSampleSummary pooled_summary(const LabeledSample& s1, const LabeledSample& s2);

// Columns are the within-group centered observations, p x (N1+N2).
// S = X X' / n for the returned X.
Matrix pooled_centered(const LabeledSample& s1, const LabeledSample& s2);

// Throws DataError when the summary violates its invariants.
void validate(const TwoSampleSummary& s);
void validate(const NormalParams& np);

}  // namespace eddr
