#include "eddr/spectral.hpp"

#include <string>

#include "eddr/errors.hpp"

namespace eddr {

namespace {

void require_n(const SampleMoments& m, int min_n, const char* who) {
  if (m.n < min_n)
    throw DataError(std::string(who) + ": needs n >= " + std::to_string(min_n) + ", got " +
                    std::to_string(m.n));
}

}  // namespace

SampleMoments sample_moments(const TwoSampleSummary& s, Exec exec) {
  validate(s);
  SampleMoments m;
  m.N1 = s.N1;
  m.N2 = s.N2;
  m.n = s.n;
  m.p = s.p;
  const Matrix S2 = crossprod(s.S, exec);
  const Vector d = s.delta();
  const Vector Sd = s.S * d;
  m.tr1 = s.S.trace();
  m.tr2 = S2.trace();
  m.tr3 = frobenius_dot(s.S, S2);
  m.tr4 = S2.squaredNorm();
  m.q0 = d.squaredNorm();
  m.q1 = d.dot(Sd);
  m.q2 = Sd.squaredNorm();
  m.q3 = Sd.dot(s.S * Sd);
  return m;
}

SampleMoments sample_moments(const Matrix& X, const Vector& delta, int N1, int N2, Exec exec) {
  if (X.rows() != delta.size()) throw DataError("sample_moments: dimension mismatch");
  if (X.cols() != N1 + N2) throw DataError("sample_moments: column count must be N1+N2");
  SampleMoments m;
  m.N1 = N1;
  m.N2 = N2;
  m.n = N1 + N2 - 2;
  m.p = static_cast<int>(X.rows());
  if (m.n < 1) throw DataError("sample_moments: n must be >= 1");
  const double n = m.n;
  m.q0 = delta.squaredNorm();
  if (X.cols() < X.rows()) {
    // dual side: tr S^k = tr G^k / n^k and d' S^k d = w' G^(k-1) w / n^k
    const Matrix G = crossprod(X, exec);
    const Matrix G2 = crossprod(G, exec);
    const Vector w = X.transpose() * delta;
    const Vector Gw = G * w;
    m.tr1 = G.trace() / n;
    m.tr2 = G2.trace() / (n * n);
    m.tr3 = frobenius_dot(G, G2) / (n * n * n);
    m.tr4 = G2.squaredNorm() / (n * n * n * n);
    m.q1 = w.squaredNorm() / n;
    m.q2 = w.dot(Gw) / (n * n);
    m.q3 = Gw.squaredNorm() / (n * n * n);
  } else {
    const Matrix Xt = X.transpose();
    const Matrix S = crossprod(Xt, exec) / n;
    const Matrix S2 = crossprod(S, exec);
    const Vector Sd = S * delta;
    m.tr1 = S.trace();
    m.tr2 = S2.trace();
    m.tr3 = frobenius_dot(S, S2);
    m.tr4 = S2.squaredNorm();
    m.q1 = delta.dot(Sd);
    m.q2 = Sd.squaredNorm();
    m.q3 = Sd.dot(S * Sd);
  }
  return m;
}

double a1_hat(const SampleMoments& m) { return m.tr1 / m.p; }

double a2_hat(const SampleMoments& m) {
  require_n(m, 2, "a2_hat");
  const double n = m.n, p = m.p;
  return n * n / (p * (n + 2) * (n - 1)) * (m.tr2 - m.tr1 * m.tr1 / n);
}

double a3_hat(const SampleMoments& m) {
  require_n(m, 5, "a3_hat");
  const double n = m.n, p = m.p, t1 = m.tr1;
  const double scale = n * n / ((n + 4) * (n + 2) * (n - 1) * (n - 2) * p);
  return scale * (n * n * m.tr3 - 3 * n * m.tr2 * t1 + 2 * t1 * t1 * t1);
}

double a4_hat(const SampleMoments& m) {
  require_n(m, 7, "a4_hat");
  const double n = m.n, p = m.p;
  const double n3 = n * n * n, n4 = n3 * n, n5 = n4 * n;
  const double D = (n + 6) * (n + 4) * (n + 2) * (n + 1) * (n - 1) * (n - 2) * (n - 3);
  const double b1 = n5 * (n * n + n + 2) / D;
  const double b2 = -4 * n4 * (n * n + n + 2) / D;
  const double b3 = -n4 * (2 * n * n + 3 * n - 6) / D;
  const double b4 = 2 * n4 * (5 * n + 6) / D;
  const double b5 = -n3 * (5 * n + 6) / D;
  const double t1 = m.tr1, t2 = m.tr2;
  return (b1 * m.tr4 + b2 * m.tr3 * t1 + b3 * t2 * t2 + b4 * t1 * t1 * t2 +
          b5 * t1 * t1 * t1 * t1) / p;
}

double a1_hat(const TwoSampleSummary& s) { return a1_hat(sample_moments(s)); }
double a2_hat(const TwoSampleSummary& s) { return a2_hat(sample_moments(s)); }
double a3_hat(const TwoSampleSummary& s) { return a3_hat(sample_moments(s)); }
double a4_hat(const TwoSampleSummary& s) { return a4_hat(sample_moments(s)); }

double delta0_hat(const SampleMoments& m, double a1) { return m.q0 - m.k() * a1; }

double delta1_hat(const SampleMoments& m, double a2) { return m.q1 - m.k() * a2; }

double delta2_hat(const SampleMoments& m, const TraceEstimates& t, double d1) {
  require_n(m, 7, "delta2_hat");
  const double n = m.n, p = m.p;
  const double body = m.q2 - p / n * t.a1 * d1 -
                      m.k() * ((n + 1) / n * t.a3 + p / n * t.a1 * t.a2);
  return body / (1 + 1 / n);
}

double delta3_hat(const SampleMoments& m, const TraceEstimates& t, double d1, double d2,
                  Delta3Form form) {
  require_n(m, 7, "delta3_hat");
  const double n = m.n, p = m.p, n2 = n * n;
  const double c3 = (n * (n + 3) + 4) / n2;
  const double u = (n + 1) * p / n2;
  const double v = p * p / n2;
  double e1 = d1, e2 = d2;
  if (form == Delta3Form::AsPrinted) {
    e1 = d1 * d1;
    e2 = d2 * d2;
  }
  const double body = m.q3 - u * t.a2 * e1 - 2 * u * t.a1 * e2 - v * t.a1 * t.a1 * e1 -
                      m.k() * (c3 * t.a4 + u * t.a2 * t.a2 + 2 * u * t.a1 * t.a3 +
                               v * t.a1 * t.a1 * t.a2);
  return body / c3;
}

double delta0_hat(const TwoSampleSummary& s) {
  const auto m = sample_moments(s);
  return delta0_hat(m, a1_hat(m));
}

double delta1_hat(const TwoSampleSummary& s) {
  const auto m = sample_moments(s);
  return delta1_hat(m, a2_hat(m));
}

double delta2_hat(const TwoSampleSummary& s, const TraceEstimates& t, double d1) {
  return delta2_hat(sample_moments(s), t, d1);
}

double delta3_hat(const TwoSampleSummary& s, const TraceEstimates& t, double d1, double d2,
                  Delta3Form form) {
  return delta3_hat(sample_moments(s), t, d1, d2, form);
}

TraceEstimates estimate_traces(const SampleMoments& m) {
  TraceEstimates t;
  t.p = m.p;
  t.n = m.n;
  t.a1 = a1_hat(m);
  t.a2 = a2_hat(m);
  t.a3 = a3_hat(m);
  t.a4 = a4_hat(m);
  return t;
}

DeltaEstimates estimate_deltas(const SampleMoments& m, const TraceEstimates& t,
                               Delta3Form form) {
  DeltaEstimates d;
  d.d0 = delta0_hat(m, t.a1);
  d.d1 = delta1_hat(m, t.a2);
  d.d2 = delta2_hat(m, t, d.d1);
  d.d3 = delta3_hat(m, t, d.d1, d.d2, form);
  return d;
}

TraceEstimates true_traces(const Matrix& sigma) {
  if (sigma.rows() != sigma.cols()) throw DataError("true_traces: sigma must be square");
  const double p = static_cast<double>(sigma.rows());
  const Matrix S2 = sigma * sigma;
  TraceEstimates t;
  t.p = static_cast<int>(sigma.rows());
  t.a1 = sigma.trace() / p;
  t.a2 = S2.trace() / p;
  t.a3 = frobenius_dot(sigma, S2) / p;
  t.a4 = S2.squaredNorm() / p;
  return t;
}

DeltaEstimates true_deltas(const Vector& delta, const Matrix& sigma) {
  if (sigma.rows() != delta.size() || sigma.cols() != delta.size())
    throw DataError("true_deltas: dimension mismatch");
  const Vector Sd = sigma * delta;
  DeltaEstimates d;
  d.d0 = delta.squaredNorm();
  d.d1 = delta.dot(Sd);
  d.d2 = Sd.squaredNorm();
  d.d3 = Sd.dot(sigma * Sd);
  return d;
}

}  // namespace eddr
