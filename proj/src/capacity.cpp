#include "mimocap/capacity.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace mimocap {

double effective_interference(double mu, double variance, const QosTarget& qos) {
  qos.validate();
  if (!(mu > 0.0)) throw std::invalid_argument("effective_interference: mean must be positive");
  if (variance < 0.0) throw std::invalid_argument("effective_interference: negative variance");
  const double q = q_inverse(qos.outage);
  const double denom = q * q * variance * qos.min_sir_linear;
  if (denom == 0.0) return mu;
  const double z = 4.0 * mu / denom;
  if (!std::isfinite(z)) return mu;
  const double s = std::sqrt(1.0 + z);
  return mu * (s + 1.0) * (s + 1.0) / z;
}

double effective_interference(const TierMoments& moments, const QosTarget& qos) {
  return effective_interference(moments.mu_y, moments.var_y, qos);
}

long max_interferers(double y_e, double min_sir_linear) {
  if (!(y_e > 0.0) || !(min_sir_linear > 0.0))
    throw std::invalid_argument("max_interferers: y_E and S must be positive");
  const double n = std::floor(1.0 / (y_e * min_sir_linear));
  if (n >= static_cast<double>(std::numeric_limits<long>::max()))
    return std::numeric_limits<long>::max();
  return static_cast<long>(n);
}

int pilot_budget(int pilot_length, int w) {
  if (pilot_length < 1) throw std::invalid_argument("pilot length must be >= 1");
  if (!supported_reuse(w))
    throw std::invalid_argument("reuse_factor " + std::to_string(w) +
                                " unsupported; expected one of 1, 3, 7");
  return pilot_length / w;
}

std::size_t CapacityModel::slot(int w) {
  switch (w) {
    case 1: return 0;
    case 3: return 1;
    case 7: return 2;
  }
  throw std::invalid_argument("reuse_factor " + std::to_string(w) +
                              " unsupported; expected one of 1, 3, 7");
}

CapacityModel::CapacityModel(const NetworkGeometry& geometry, PilotScheme scheme,
                             int pilot_length, const CapacityOptions& options)
    : scheme_(scheme), pilot_length_(pilot_length) {
  if (options.tiers < 1) throw std::invalid_argument("capacity: tiers must be >= 1");
  for (const int w : kReuseFactors) {
    NetworkGeometry g = geometry;
    g.reuse_factor = w;
    g.wrap_around = false;
    const std::size_t s = slot(w);
    tiers_[s] = tier_specs(g, options.tiers);
    // Each frequency resource carries floor(K / w) orthogonal pilots, so that
    // is the sequence length the pilot weighting sees.
    const int budget = pilot_budget(pilot_length, w);
    if (budget < 1) throw std::invalid_argument("capacity: pilot length shorter than reuse factor");
    for (const auto& t : tiers_[s]) {
      const CirclePatch patch = circle_approximation(g, t, options.circle_mode);
      moments_[s].push_back(compute_tier_moments(patch, g.path_loss_exponent, budget, scheme,
                                                 t.tier_index, options.variance_model,
                                                 options.quadrature));
    }
  }
}

const std::vector<TierSpec>& CapacityModel::tiers(int w) const { return tiers_[slot(w)]; }
const std::vector<TierMoments>& CapacityModel::moments(int w) const { return moments_[slot(w)]; }

CapacityReport CapacityModel::for_reuse(const QosTarget& qos, int w) const {
  qos.validate();
  const auto& tiers = tiers_[slot(w)];
  const auto& moments = moments_[slot(w)];
  CapacityReport rep;
  rep.scheme = scheme_;
  rep.chosen_reuse = w;
  rep.pilot_budget = pilot_budget(pilot_length_, w);
  rep.tier1 = moments.front();
  const double cells1 = tiers.front().cell_count;

  if (moments.size() == 1) {
    rep.effective_interference = effective_interference(moments.front(), qos);
  } else {
    // Per-cell aggregate over tiers, expressed per tier-1 interferer.
    double mu = 0.0, var = 0.0;
    for (std::size_t t = 0; t < moments.size(); ++t) {
      mu += tiers[t].cell_count * moments[t].mu_y;
      var += tiers[t].cell_count * moments[t].var_y;
    }
    rep.effective_interference = effective_interference(mu, var, qos) / cells1;
  }
  rep.n_max = max_interferers(rep.effective_interference, qos.min_sir_linear);
  rep.k_u = static_cast<double>(rep.n_max) / cells1;

  if (scheme_ == PilotScheme::reused_sets) {
    // A reused pilot has exactly one contaminating user per co-channel cell
    // however many users the cells carry.
    rep.k_max = rep.n_max >= static_cast<long>(cells1) ? rep.pilot_budget : 0;
  } else {
    rep.k_max = static_cast<int>(std::min<double>(std::floor(rep.k_u), rep.pilot_budget));
  }
  return rep;
}

CapacityReport CapacityModel::best(const QosTarget& qos) const {
  CapacityReport best = for_reuse(qos, kReuseFactors[0]);
  for (std::size_t i = 1; i < kReuseFactors.size(); ++i) {
    const CapacityReport r = for_reuse(qos, kReuseFactors[i]);
    if (r.k_max > best.k_max) best = r;
  }
  return best;
}

CapacityReport capacity_for_reuse(const NetworkGeometry& geometry, PilotScheme scheme,
                                  const QosTarget& qos, int pilot_length, int w,
                                  const CapacityOptions& options) {
  return CapacityModel(geometry, scheme, pilot_length, options).for_reuse(qos, w);
}

CapacityReport best_reuse(const NetworkGeometry& geometry, PilotScheme scheme,
                          const QosTarget& qos, int pilot_length, const CapacityOptions& options) {
  return CapacityModel(geometry, scheme, pilot_length, options).best(qos);
}

bool cooperative_admission_check(std::span<const int> per_cell_counts,
                                 const NetworkGeometry& geometry, long n_max, int pilot_length) {
  const auto layout = build_layout(geometry);
  if (per_cell_counts.size() != layout.size())
    throw std::invalid_argument("cooperative_admission_check: expected " +
                                std::to_string(layout.size()) + " cell counts, got " +
                                std::to_string(per_cell_counts.size()));
  const int budget = pilot_budget(pilot_length, geometry.reuse_factor);
  for (std::size_t l = 0; l < per_cell_counts.size(); ++l) {
    if (per_cell_counts[l] < 0 || per_cell_counts[l] > budget)
      throw std::invalid_argument("cooperative_admission_check: cell " + std::to_string(l) +
                                  " count " + std::to_string(per_cell_counts[l]) +
                                  " outside pilot budget [0, " + std::to_string(budget) + "]");
  }
  for (std::size_t j = 0; j < layout.size(); ++j) {
    long load = 0;
    for (const std::size_t l : cochannel_cells(geometry, layout, j, 1)) load += per_cell_counts[l];
    if (load > n_max) return false;
  }
  return true;
}

std::vector<CapacityRow> capacity_sweep(const CapacityModel& model, std::span<const double> sir_db,
                                        double alpha) {
  std::vector<CapacityRow> rows;
  rows.reserve(sir_db.size());
  for (const double s : sir_db) {
    const QosTarget qos = QosTarget::from_db(s, alpha);
    CapacityRow row;
    row.sir_db = s;
    row.alpha = alpha;
    for (std::size_t i = 0; i < kReuseFactors.size(); ++i)
      row.per_reuse[i] = model.for_reuse(qos, kReuseFactors[i]);
    row.best = model.best(qos);
    rows.push_back(row);
  }
  return rows;
}

std::vector<SwitchPoint> switching_points(const std::vector<CapacityRow>& rows) {
  std::vector<SwitchPoint> out;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const int from = rows[i - 1].best.chosen_reuse, to = rows[i].best.chosen_reuse;
    if (from != to) out.push_back({from, to, rows[i].sir_db});
  }
  return out;
}

double last_sir_with_k_max(const std::vector<CapacityRow>& rows, int k) {
  double last = std::numeric_limits<double>::quiet_NaN();
  for (const auto& r : rows) {
    if (r.best.k_max < k) break;
    last = r.sir_db;
  }
  return last;
}

}  // namespace mimocap
