#include "mimocap/large_m.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <set>
#include <stdexcept>
#include <string>

#include "mimocap/kernels.hpp"
#include "mimocap/parallel.hpp"

namespace mimocap {

std::string_view name(Placement p) { return p == Placement::hexagon ? "hexagon" : "circle"; }

Placement parse_placement(std::string_view text) {
  if (text == "hexagon") return Placement::hexagon;
  if (text == "circle") return Placement::circle;
  throw std::invalid_argument("unknown placement '" + std::string(text) +
                              "' (expected hexagon or circle)");
}

std::vector<InterfererCell> interfering_cells(const NetworkGeometry& geometry, int max_tier) {
  geometry.validate();
  if (max_tier < 0) throw std::invalid_argument("max_tier must be >= 0");
  const auto layout = build_layout(geometry);
  std::vector<InterfererCell> cells;
  std::set<long long> distinct;
  for (std::size_t l = 1; l < layout.size(); ++l) {
    if (layout[l].resource != layout[0].resource) continue;
    const Point off = cell_offset(geometry, layout[0].hex, layout[l].hex);
    cells.push_back({l, off, 0});
    distinct.insert(std::llround(norm2(off)));
  }
  if (cells.empty()) return cells;
  const int enumerated = std::max(max_tier, 2 * static_cast<int>(distinct.size()) + 2);
  const auto tiers = tier_specs(geometry, enumerated);
  std::vector<InterfererCell> kept;
  for (auto& c : cells) {
    c.tier = tier_of(tiers, std::sqrt(norm2(c.offset)));
    if (max_tier == 0 || (c.tier >= 1 && c.tier <= max_tier)) kept.push_back(c);
  }
  return kept;
}

LargeMSampler::LargeMSampler(const NetworkGeometry& geometry, const LargeMConfig& config)
    : geometry_(geometry), config_(config) {
  geometry_.validate();
  if (config_.trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (config_.pilot_length < 1) throw std::invalid_argument("pilot length must be >= 1");
  pilot_dim_ = config_.pilot_length / geometry_.reuse_factor;
  if (config_.users_per_cell < 1 || config_.users_per_cell > pilot_dim_)
    throw std::invalid_argument("users per cell " + std::to_string(config_.users_per_cell) +
                                " outside pilot budget [1, " + std::to_string(pilot_dim_) + "]");
  if (!(config_.shadow_sigma_db >= 0.0) || !std::isfinite(config_.shadow_sigma_db))
    throw std::invalid_argument("shadowing sigma must be finite and >= 0");
  if (config_.shadow_sigma_db > 0.0) {
    if (config_.placement != Placement::hexagon)
      throw std::invalid_argument("shadowing requires hexagon placement");
    if (geometry_.wrap_around)
      throw std::invalid_argument("shadowing is not supported with wrap_around");
  }
  cells_ = interfering_cells(geometry_, config_.max_tier);
  const auto layout = build_layout(geometry_);
  for (const auto& c : layout) bs_.push_back(cell_offset(geometry_, layout[0].hex, c.hex));
  own_bs_.push_back(0);
  for (const auto& c : cells_) own_bs_.push_back(c.layout_index);
  circle_radius_ = circle_radius(geometry_, config_.circle_mode);
}

namespace {

// Relative positions of the hexagons within two rings of a cell.
const std::vector<Hex>& neighbourhood() {
  static const std::vector<Hex> hexes = [] {
    std::vector<Hex> out;
    for (int q = -2; q <= 2; ++q)
      for (int r = -2; r <= 2; ++r)
        if (hex_ring({q, r}) <= 2) out.push_back({q, r});
    return out;
  }();
  return hexes;
}

}  // namespace

template <class Rng>
LargeMSampler::Placed LargeMSampler::place(std::size_t slot, Rng& rng) const {
  const Point bs = bs_[own_bs_[slot]];
  const double a = geometry_.cell_radius_m;
  if (config_.shadow_sigma_db == 0.0) {
    const Point local = config_.placement == Placement::hexagon
                            ? sample_in_hexagon(a, geometry_.hole_radius_m, rng)
                            : sample_in_disc(circle_radius_, rng);
    return {bs + local, norm2(local), 1.0, 1.0};
  }
  const auto& hood = neighbourhood();
  std::uniform_int_distribution<std::size_t> pick(0, hood.size() - 1);
  std::normal_distribution<double> shadow(0.0, config_.shadow_sigma_db);
  const double hole2 = geometry_.hole_radius_m * geometry_.hole_radius_m;
  const double gamma = geometry_.path_loss_exponent;
  const std::size_t own = own_bs_[slot];
  std::vector<double> gain_db(bs_.size());
  for (;;) {
    const Point local = hex_center(hood[pick(rng)], a) + sample_in_hexagon(a, 0.0, rng);
    if (norm2(local) < hole2) continue;
    const Point p = bs + local;
    // Compare 10 log10(beta) = shadow_dB - 5 gamma log10(d^2).
    double best_other = -std::numeric_limits<double>::infinity();
    double own_db = 0.0;
    for (std::size_t m = 0; m < bs_.size(); ++m) {
      gain_db[m] = shadow(rng);
      const double level = gain_db[m] - 5.0 * gamma * std::log10(norm2(p - bs_[m]));
      if (m == own) {
        own_db = level;
      } else {
        best_other = std::max(best_other, level);
      }
    }
    if (own_db < best_other) continue;
    return {p, norm2(local), std::pow(10.0, gain_db[0] / 10.0), std::pow(10.0, gain_db[own] / 10.0)};
  }
}

TrialResult LargeMSampler::trial(std::uint64_t index, bool keep_terms) const {
  auto rng = trial_stream(config_.seed, index);
  const int k = config_.users_per_cell;
  const std::size_t n_cells = cells_.size();
  const Placed tagged = place(0, rng);
  std::vector<Placed> users;
  users.reserve(n_cells * static_cast<std::size_t>(k));
  for (std::size_t c = 0; c < n_cells; ++c)
    for (int u = 0; u < k; ++u) users.push_back(place(c + 1, rng));
  const auto weights = contamination_weights(config_.scheme, config_.pilot_model, pilot_dim_, k,
                                             n_cells + 1, rng);

  TrialResult out;
  if (users.empty()) {
    out.sir = std::numeric_limits<double>::infinity();
    return out;
  }
  const double gamma = geometry_.path_loss_exponent;
  std::vector<double> num(users.size()), den(users.size()), x(users.size()), phi(users.size()),
      ratio(users.size());
  for (std::size_t i = 0; i < users.size(); ++i) {
    const Placed& p = users[i];
    const double to_centre2 = norm2(p.position);
    phi[i] = weights[i / static_cast<std::size_t>(k) + 1][i % static_cast<std::size_t>(k)];
    // beta_jkl / beta_lkl, squared distances to the power gamma.
    num[i] = p.own_ratio2;
    den[i] = to_centre2;
  }
  kernels::ratio_pow(num, den, 0.5 * gamma, ratio);
  const bool shadowed = config_.shadow_sigma_db > 0.0;
  if (shadowed)
    for (std::size_t i = 0; i < users.size(); ++i)
      ratio[i] *= users[i].centre_gain / users[i].own_gain;
  if (config_.power_control) {
    for (std::size_t i = 0; i < users.size(); ++i) x[i] = ratio[i] * ratio[i];
  } else {
    // (beta_j,user / beta_j,tagged)^2
    for (std::size_t i = 0; i < users.size(); ++i) num[i] = tagged.own_ratio2;
    kernels::ratio_pow(num, den, gamma, x);
    if (shadowed)
      for (std::size_t i = 0; i < users.size(); ++i) {
        const double g = users[i].centre_gain / tagged.centre_gain;
        x[i] *= g * g;
      }
  }
  const double denominator = kernels::dot(phi, x);
  out.sir = denominator > 0.0 ? 1.0 / denominator : std::numeric_limits<double>::infinity();
  if (keep_terms) {
    out.terms.reserve(users.size());
    for (std::size_t i = 0; i < users.size(); ++i) {
      const std::size_t c = i / static_cast<std::size_t>(k);
      out.terms.push_back({c, static_cast<int>(i % static_cast<std::size_t>(k)), cells_[c].tier,
                           phi[i], ratio[i], phi[i] * x[i]});
    }
  }
  return out;
}

SirSampleSet LargeMSampler::run() const {
  SirSampleSet set;
  set.tag = {config_.scheme, geometry_.reuse_factor, config_.users_per_cell, 0,
             config_.shadow_sigma_db > 0.0};
  set.seed = config_.seed;
  set.samples.resize(config_.trials);
  parallel_for(config_.trials, config_.workers, [&](std::size_t begin, std::size_t end) {
    for (std::size_t t = begin; t < end; ++t) set.samples[t] = trial(t).sir;
  });
  return set;
}

SirSampleSet sample_sir_limit(const NetworkGeometry& geometry, const LargeMConfig& config) {
  LargeMConfig c = config;
  c.shadow_sigma_db = 0.0;
  return LargeMSampler(geometry, c).run();
}

double ShadowedResult::tier_share(int tier) const {
  double total = 0.0;
  for (const double v : tier_mean_interference) total += v;
  if (tier < 0 || static_cast<std::size_t>(tier) >= tier_mean_interference.size() || total == 0.0)
    return 0.0;
  return tier_mean_interference[static_cast<std::size_t>(tier)] / total;
}

ShadowedResult sample_sir_limit_shadowed(const NetworkGeometry& geometry, LargeMConfig config,
                                         double sigma_db) {
  config.shadow_sigma_db = sigma_db;
  const LargeMSampler sampler(geometry, config);
  ShadowedResult res;
  res.set.tag = {config.scheme, geometry.reuse_factor, config.users_per_cell, 0, sigma_db > 0.0};
  res.set.seed = config.seed;
  res.set.samples.resize(config.trials);
  int max_tier = 0;
  for (const auto& c : sampler.interferers()) max_tier = std::max(max_tier, c.tier);
  const std::size_t slots = static_cast<std::size_t>(max_tier) + 1;

  const unsigned workers = std::max(1u, config.workers);
  // Per-trial partials reduced in trial order keep the sums independent of
  // the worker count.
  std::vector<std::vector<double>> per_trial(config.trials);
  std::vector<double> trial_max(config.trials, 0.0);
  std::vector<std::size_t> trial_viol(config.trials, 0);
  parallel_for(config.trials, workers, [&](std::size_t begin, std::size_t end) {
    for (std::size_t t = begin; t < end; ++t) {
      const TrialResult r = sampler.trial(t, true);
      res.set.samples[t] = r.sir;
      per_trial[t].assign(slots, 0.0);
      for (const auto& term : r.terms) {
        per_trial[t][static_cast<std::size_t>(term.tier)] += term.term;
        trial_max[t] = std::max(trial_max[t], term.ratio);
        if (term.ratio >= 1.0) ++trial_viol[t];
      }
    }
  });
  res.tier_mean_interference.assign(slots, 0.0);
  for (std::size_t t = 0; t < config.trials; ++t) {
    for (std::size_t s = 0; s < slots; ++s) res.tier_mean_interference[s] += per_trial[t][s];
    res.max_ratio = std::max(res.max_ratio, trial_max[t]);
    res.ratio_violations += trial_viol[t];
  }
  for (auto& v : res.tier_mean_interference) v /= static_cast<double>(config.trials);
  return res;
}

}  // namespace mimocap
