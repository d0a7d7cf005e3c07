#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "eddr/cutoff.hpp"
#include "eddr/rng.hpp"

namespace eddr {

// PlugIn: every trial calibrates from its own training sample.
// Population: one cutoff computed from the true Sigma and means, shared by all
// trials (the conditional error still uses each trial's sample means).
enum class CutoffSource { PlugIn, Population };

// SymSqrt: mu1 = Sigma^{1/2} sqrt(5/p) 1. Identity: mu1 = sqrt(5/p) 1.
enum class MeanPlacement { SymSqrt, Identity };

struct SimConfig {
  int p = 64;
  int N1 = 32, N2 = 32;
  double rho = 0.0;
  int bandwidth = 50;
  int reps = 20000;
  std::uint64_t seed = 1;
  CutoffRequest request;
  int workers = 1;
  CutoffSource source = CutoffSource::PlugIn;
  MeanPlacement placement = MeanPlacement::SymSqrt;
  Delta3Form delta3 = Delta3Form::Linear;
  bool bias_correction = true;  // off only to check the balanced-design identity
};

void validate(const SimConfig& cfg);

// sigma_ij = rho^|i-j| for |i-j| <= bandwidth, else 0
Matrix band_sigma(int p, double rho, int bandwidth = 50);

struct MeanPair {
  Vector mu1, mu2;
};
MeanPair design_means(const Matrix& sigma, MeanPlacement placement = MeanPlacement::SymSqrt);

// Everything about the population that trials share.
struct Design {
  Matrix sigma;
  BandedLower chol;
  Vector mu1, mu2;
  TraceEstimates traces;  // true a_i
  DeltaEstimates deltas;  // true Delta_i
  std::optional<CutoffResult> population_cutoff;
};

Design make_design(const SimConfig& cfg);

struct TrialRecord {
  double cond_error = 0;
  double cutoff = 0;
  bool fell_back = false;
  bool feasible = true;
  double U = 0, V = 0;  // conditioning variables of the conditional error
};

TrialRecord run_trial(const SimConfig& cfg, const Design& design, std::uint64_t index);

// Serial reference and OpenMP version; identical records for any worker count.
std::vector<TrialRecord> run_trials_serial(const SimConfig& cfg, const Design& design);
std::vector<TrialRecord> run_trials(const SimConfig& cfg, const Design& design);

struct Aggregate {
  double value = 0;
  double se = 0;
  long used = 0;
  long excluded = 0;
};

Aggregate attained_error_rate(const std::vector<TrialRecord>& records);
Aggregate attained_confidence_level(const std::vector<TrialRecord>& records, double eu);

// Throws InfeasibleError when more than max_rate of the trials were excluded.
void check_exclusions(const std::vector<TrialRecord>& records, double max_rate = 0.001);

}  // namespace eddr
