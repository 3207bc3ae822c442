#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "mimocap/approx.hpp"
#include "mimocap/pilots.hpp"

namespace mimocap {

struct ScenarioTag {
  PilotScheme scheme = PilotScheme::different_sets;
  int reuse_factor = 1;
  int users_per_cell = 1;
  long antennas = 0;  // 0 = large-M limit
  bool shadowing = false;

  std::string describe() const;
};

struct SirSampleSet {
  std::vector<double> samples;  // linear SIR, one per trial
  ScenarioTag tag;
  std::uint64_t seed = 0;
};

struct OutageEstimate {
  double probability = 0.0;
  double lower = 0.0;  // Wilson 95% interval
  double upper = 0.0;
  std::size_t trials = 0;
};

OutageEstimate wilson_interval(std::size_t hits, std::size_t trials);

/// Fraction of samples strictly below qos.min_sir_linear. Throws on an empty set.
OutageEstimate empirical_outage(const SirSampleSet& set, const QosTarget& qos);

std::vector<double> sorted_samples(const SirSampleSet& set);

/// Right-continuous ECDF of an ascending sample vector.
double ecdf(const std::vector<double>& sorted, double x);

/// Empirical p-quantile (inverse ECDF) of an ascending sample vector.
double quantile(const std::vector<double>& sorted, double p);

/// Two-sample Kolmogorov-Smirnov statistic on ascending inputs.
double ks_statistic(const std::vector<double>& a, const std::vector<double>& b);

struct TailGap {
  double max_abs = 0.0;     // sup |F_emp - F_approx| where F_emp <= cap
  double max_signed = 0.0;  // largest F_emp - F_approx there (> 0: approx optimistic)
  double min_signed = 0.0;
};

/// Compares an empirical SIR CDF with the Gaussian approximation over the
/// lower tail F_emp <= cdf_cap, at both sides of every ECDF jump.
TailGap lower_tail_gap(const std::vector<double>& sorted, const GaussianInterference& approx,
                       double cdf_cap = 0.1);

/// Columns trial_index,sir_linear,sir_db.
void write_samples_csv(const SirSampleSet& set, std::ostream& out);

/// Columns sir_db,empirical_cdf, one row per sorted sample.
void write_cdf_csv(const SirSampleSet& set, std::ostream& out);

}  // namespace mimocap
