#pragma once

#include "eddr/kernels.hpp"
#include "eddr/sample.hpp"

namespace eddr {

// Everything the estimators need from the training data: tr S^k for k = 1..4
// and q_k = d' S^k d with d = xbar1 - xbar2 for k = 0..3.
struct SampleMoments {
  double tr1 = 0, tr2 = 0, tr3 = 0, tr4 = 0;
  double q0 = 0, q1 = 0, q2 = 0, q3 = 0;
  int N1 = 0, N2 = 0, n = 0, p = 0;

  // N p / (N1 N2)
  double k() const { return double(N1 + N2) * p / (double(N1) * N2); }
};

SampleMoments sample_moments(const TwoSampleSummary& s, Exec exec = Exec::Serial);

// From centered data (columns are observations, p x (N1+N2)); works on the
// N x N Gram matrix when N < p, so S is never formed.
SampleMoments sample_moments(const Matrix& centered, const Vector& delta, int N1, int N2,
                             Exec exec = Exec::Serial);

struct TraceEstimates {
  double a1 = 0, a2 = 0, a3 = 0, a4 = 0;
  int p = 0, n = 0;
};

struct DeltaEstimates {
  double d0 = 0, d1 = 0, d2 = 0, d3 = 0;
};

// Linear: Delta3 uses Delta1, Delta2 linearly (unbiased form).
// AsPrinted: the squared Delta1^2, Delta2^2 terms as typeset.
enum class Delta3Form { Linear, AsPrinted };

double a1_hat(const SampleMoments& m);
double a2_hat(const SampleMoments& m);  // n >= 2
double a3_hat(const SampleMoments& m);  // n >= 5
double a4_hat(const SampleMoments& m);  // n >= 7

double a1_hat(const TwoSampleSummary& s);
double a2_hat(const TwoSampleSummary& s);
double a3_hat(const TwoSampleSummary& s);
double a4_hat(const TwoSampleSummary& s);

double delta0_hat(const SampleMoments& m, double a1);
double delta1_hat(const SampleMoments& m, double a2);
double delta2_hat(const SampleMoments& m, const TraceEstimates& t, double d1);
double delta3_hat(const SampleMoments& m, const TraceEstimates& t, double d1, double d2,
                  Delta3Form form = Delta3Form::Linear);

double delta0_hat(const TwoSampleSummary& s);
double delta1_hat(const TwoSampleSummary& s);
double delta2_hat(const TwoSampleSummary& s, const TraceEstimates& t, double d1);
double delta3_hat(const TwoSampleSummary& s, const TraceEstimates& t, double d1, double d2,
                  Delta3Form form = Delta3Form::Linear);

TraceEstimates estimate_traces(const SampleMoments& m);
DeltaEstimates estimate_deltas(const SampleMoments& m, const TraceEstimates& t,
                               Delta3Form form = Delta3Form::Linear);

// Population values a_i = tr Sigma^i / p and Delta_i = d' Sigma^i d.
TraceEstimates true_traces(const Matrix& sigma);
DeltaEstimates true_deltas(const Vector& delta, const Matrix& sigma);

}  // namespace eddr
