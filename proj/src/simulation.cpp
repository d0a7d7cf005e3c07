#include "eddr/simulation.hpp"

#include <cmath>
#include <string>

#include "eddr/errors.hpp"
#include "eddr/normal.hpp"

namespace eddr {

void validate(const SimConfig& cfg) {
  if (cfg.p < 1) throw UsageError("p must be >= 1");
  if (cfg.N1 < 2 || cfg.N2 < 2) throw UsageError("N1 and N2 must be >= 2");
  if (cfg.reps < 1) throw UsageError("reps must be >= 1");
  if (cfg.workers < 1) throw UsageError("workers must be >= 1");
  if (cfg.bandwidth < 0) throw UsageError("bandwidth must be >= 0");
  if (!(std::fabs(cfg.rho) < 1)) throw UsageError("rho must satisfy |rho| < 1");
  if (cfg.source == CutoffSource::PlugIn && cfg.N1 + cfg.N2 - 2 < 7)
    throw UsageError("plug-in calibration needs n = N1+N2-2 >= 7");
  validate(cfg.request);
}

Matrix band_sigma(int p, double rho, int bandwidth) {
  if (p < 1) throw UsageError("band_sigma: p must be >= 1");
  if (!(std::fabs(rho) < 1)) throw UsageError("band_sigma: |rho| must be < 1");
  Matrix s = Matrix::Zero(p, p);
  for (int j = 0; j < p; ++j)
    for (int i = 0; i < p; ++i) {
      const int d = std::abs(i - j);
      if (d <= bandwidth) s(i, j) = d == 0 ? 1.0 : std::pow(rho, d);
    }
  return s;
}

MeanPair design_means(const Matrix& sigma, MeanPlacement placement) {
  const auto p = sigma.rows();
  const Vector ones = Vector::Constant(p, std::sqrt(5.0 / double(p)));
  MeanPair m;
  m.mu1 = placement == MeanPlacement::SymSqrt ? Vector(sym_sqrt(sigma) * ones) : ones;
  m.mu2 = Vector::Zero(p);
  return m;
}

Design make_design(const SimConfig& cfg) {
  validate(cfg);
  Design d;
  d.sigma = band_sigma(cfg.p, cfg.rho, cfg.bandwidth);
  const int bw = cfg.rho == 0.0 ? 0 : std::min(cfg.bandwidth, cfg.p - 1);
  d.chol = BandedLower(cholesky(d.sigma), bw);
  const auto means = design_means(d.sigma, cfg.placement);
  d.mu1 = means.mu1;
  d.mu2 = means.mu2;
  d.traces = true_traces(d.sigma);
  d.traces.n = cfg.N1 + cfg.N2 - 2;
  d.deltas = true_deltas(d.mu1 - d.mu2, d.sigma);
  if (cfg.source == CutoffSource::Population) {
    const Dims dims{cfg.N1, cfg.N2, cfg.p};
    const auto lp = limit_params(d.deltas, d.traces, dims);
    d.population_cutoff = calibrate(lp, d.deltas, d.traces, cfg.request);
  }
  return d;
}

TrialRecord run_trial(const SimConfig& cfg, const Design& design, std::uint64_t index) {
  auto rng = substream(cfg.seed, index);
  const int p = cfg.p, N1 = cfg.N1, N2 = cfg.N2;
  Matrix X(p, N1 + N2);
  X.leftCols(N1) = design.chol.apply(standard_normal(p, N1, rng));
  X.rightCols(N2) = design.chol.apply(standard_normal(p, N2, rng));
  const Vector m1 = X.leftCols(N1).rowwise().mean();
  const Vector m2 = X.rightCols(N2).rowwise().mean();
  X.leftCols(N1).colwise() -= m1;
  X.rightCols(N2).colwise() -= m2;
  const Vector xbar1 = design.mu1 + m1;
  const Vector xbar2 = design.mu2 + m2;
  const Vector dh = xbar1 - xbar2;

  TrialRecord rec;
  rec.U = dh.dot(xbar1 - design.mu1) - 0.5 * dh.squaredNorm();
  rec.V = dh.dot(design.sigma * dh);
  const int n = N1 + N2 - 2;
  const double a1 = X.squaredNorm() / n / p;

  if (cfg.source == CutoffSource::Population) {
    const auto& pc = *design.population_cutoff;
    rec.cutoff = pc.c;
    rec.fell_back = pc.fell_back;
  } else {
    try {
      const auto m = sample_moments(X, dh, N1, N2, Exec::Serial);
      const auto t = estimate_traces(m);
      const auto d = estimate_deltas(m, t, cfg.delta3);
      const auto lp = limit_params(d, t, Dims{N1, N2, p});
      const auto r = calibrate(lp, d, t, cfg.request);
      rec.cutoff = r.c;
      rec.fell_back = r.fell_back;
    } catch (const InfeasibleError&) {
      rec.feasible = false;
      return rec;
    }
  }
  double bias = 0;
  if (cfg.bias_correction && N1 != N2) bias = (1.0 / N2 - 1.0 / N1) * p * a1 / 2;
  rec.cond_error = normal_cdf((rec.U + bias + rec.cutoff) / std::sqrt(rec.V));
  return rec;
}

std::vector<TrialRecord> run_trials_serial(const SimConfig& cfg, const Design& design) {
  std::vector<TrialRecord> out(cfg.reps);
  for (int i = 0; i < cfg.reps; ++i) out[i] = run_trial(cfg, design, std::uint64_t(i));
  return out;
}

std::vector<TrialRecord> run_trials(const SimConfig& cfg, const Design& design) {
  if (cfg.workers <= 1) return run_trials_serial(cfg, design);
  std::vector<TrialRecord> out(cfg.reps);
#pragma omp parallel for num_threads(cfg.workers) schedule(dynamic, 16)
  for (int i = 0; i < cfg.reps; ++i) out[i] = run_trial(cfg, design, std::uint64_t(i));
  return out;
}

namespace {

long count_used(const std::vector<TrialRecord>& records) {
  long used = 0;
  for (const auto& r : records) used += r.feasible;
  if (used == 0) throw DataError("no feasible trial records to aggregate");
  return used;
}

}  // namespace

Aggregate attained_error_rate(const std::vector<TrialRecord>& records) {
  Aggregate a;
  a.used = count_used(records);
  a.excluded = long(records.size()) - a.used;
  // in index order, so the result is independent of how trials were scheduled
  double sum = 0;
  for (const auto& r : records)
    if (r.feasible) sum += r.cond_error;
  a.value = sum / a.used;
  double ss = 0;
  for (const auto& r : records)
    if (r.feasible) ss += (r.cond_error - a.value) * (r.cond_error - a.value);
  a.se = a.used > 1 ? std::sqrt(ss / (a.used - 1) / a.used) : 0.0;
  return a;
}

Aggregate attained_confidence_level(const std::vector<TrialRecord>& records, double eu) {
  Aggregate a;
  a.used = count_used(records);
  a.excluded = long(records.size()) - a.used;
  long hits = 0;
  for (const auto& r : records)
    if (r.feasible && r.cond_error <= eu) ++hits;
  a.value = double(hits) / a.used;
  a.se = std::sqrt(a.value * (1 - a.value) / a.used);
  return a;
}

void check_exclusions(const std::vector<TrialRecord>& records, double max_rate) {
  long bad = 0;
  for (const auto& r : records) bad += !r.feasible;
  if (!records.empty() && double(bad) > max_rate * double(records.size()))
    throw InfeasibleError(std::to_string(bad) + " of " + std::to_string(records.size()) +
                          " trials had infeasible calibration");
}

}  // namespace eddr
