#include "mimocap/sample_set.hpp"

#include "mimocap/format.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace mimocap {

std::string ScenarioTag::describe() const {
  std::ostringstream s;
  s << name(scheme) << "/w" << reuse_factor << "/k" << users_per_cell << '/';
  if (antennas == 0) {
    s << "limit";
  } else {
    s << 'M' << antennas;
  }
  if (shadowing) s << "/shadowed";
  return s.str();
}

OutageEstimate wilson_interval(std::size_t hits, std::size_t trials) {
  if (trials == 0) throw std::invalid_argument("wilson_interval: no trials");
  if (hits > trials) throw std::invalid_argument("wilson_interval: hits exceed trials");
  constexpr double z = 1.959963984540054;
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(hits) / n;
  const double z2 = z * z;
  const double centre = (p + z2 / (2.0 * n)) / (1.0 + z2 / n);
  const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / (1.0 + z2 / n);
  return {p, std::max(0.0, centre - half), std::min(1.0, centre + half), trials};
}

OutageEstimate empirical_outage(const SirSampleSet& set, const QosTarget& qos) {
  if (set.samples.empty()) throw std::invalid_argument("empirical_outage: empty sample set");
  const auto hits = static_cast<std::size_t>(
      std::count_if(set.samples.begin(), set.samples.end(),
                    [&](double s) { return s < qos.min_sir_linear; }));
  return wilson_interval(hits, set.samples.size());
}

std::vector<double> sorted_samples(const SirSampleSet& set) {
  std::vector<double> s = set.samples;
  std::sort(s.begin(), s.end());
  return s;
}

double ecdf(const std::vector<double>& sorted, double x) {
  if (sorted.empty()) throw std::invalid_argument("ecdf: empty sample");
  const auto it = std::upper_bound(sorted.begin(), sorted.end(), x);
  return static_cast<double>(it - sorted.begin()) / static_cast<double>(sorted.size());
}

double quantile(const std::vector<double>& sorted, double p) {
  if (sorted.empty()) throw std::invalid_argument("quantile: empty sample");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("quantile: p outside [0, 1]");
  const double n = static_cast<double>(sorted.size());
  const auto idx = static_cast<std::size_t>(std::max(0.0, std::ceil(p * n) - 1.0));
  return sorted[std::min(idx, sorted.size() - 1)];
}

double ks_statistic(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("ks_statistic: empty sample");
  std::size_t i = 0, j = 0;
  double d = 0.0;
  const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

TailGap lower_tail_gap(const std::vector<double>& sorted, const GaussianInterference& approx,
                       double cdf_cap) {
  if (sorted.empty()) throw std::invalid_argument("lower_tail_gap: empty sample");
  TailGap gap;
  const double n = static_cast<double>(sorted.size());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (!std::isfinite(sorted[i])) break;
    const double after = static_cast<double>(i + 1) / n;
    if (after > cdf_cap) break;
    const double f = gaussian_sir_cdf(sorted[i], approx);
    for (const double emp : {static_cast<double>(i) / n, after}) {
      const double d = emp - f;
      gap.max_abs = std::max(gap.max_abs, std::abs(d));
      gap.max_signed = std::max(gap.max_signed, d);
      gap.min_signed = std::min(gap.min_signed, d);
    }
  }
  return gap;
}

void write_samples_csv(const SirSampleSet& set, std::ostream& out) {
  out << "trial_index,sir_linear,sir_db\n";
  for (std::size_t t = 0; t < set.samples.size(); ++t) {
    const double s = set.samples[t];
    out << t << ',' << Num{s} << ',' << Num{linear_to_db(s)} << '\n';
  }
}

void write_cdf_csv(const SirSampleSet& set, std::ostream& out) {
  const auto s = sorted_samples(set);
  out << "sir_db,empirical_cdf\n";
  const double n = static_cast<double>(s.size());
  for (std::size_t i = 0; i < s.size(); ++i)
    out << Num{linear_to_db(s[i])} << ',' << Num{static_cast<double>(i + 1) / n} << '\n';
}

}  // namespace mimocap
