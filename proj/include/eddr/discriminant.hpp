#pragma once

#include "eddr/sample.hpp"

namespace eddr {

enum class Label { Pi1 = 1, Pi2 = 2 };

// ||x - mu2||^2 - ||x - mu1||^2
double oracle_score(const Vector& x, const NormalParams& params1, const NormalParams& params2);

// Same distance difference with sample means, minus (N1-N2)/(N1 N2) tr S.
double discriminant_score(const Vector& x, const TwoSampleSummary& s);

// Cutoffs are kept on the c scale; the decision threshold is 2c.
// A score equal to the threshold goes to Pi2.
Label classify(const Vector& x, const TwoSampleSummary& s, double c);
Label classify_score(double score, double c);

}  // namespace eddr
