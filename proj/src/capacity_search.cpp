#include "mimocap/capacity_search.hpp"

#include <stdexcept>
#include <string>

#include "mimocap/capacity.hpp"

namespace mimocap {

std::string_view name(SamplerKind k) { return k == SamplerKind::large_m ? "large_m" : "finite_m"; }

SamplerKind parse_sampler_kind(std::string_view text) {
  if (text == "large_m") return SamplerKind::large_m;
  if (text == "finite_m") return SamplerKind::finite_m;
  throw std::invalid_argument("unknown sampler '" + std::string(text) +
                              "' (expected large_m or finite_m)");
}

CapacitySearcher::CapacitySearcher(const NetworkGeometry& geometry, const SamplerSelector& selector)
    : geometry_(geometry), selector_(selector) {
  geometry_.validate();
  if (selector_.trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (selector_.kind == SamplerKind::finite_m) selector_.finite_m.validate();
}

int CapacitySearcher::budget(int w) const {
  const int k = selector_.kind == SamplerKind::finite_m ? selector_.finite_m.pilot_length
                                                         : selector_.pilot_length;
  return pilot_budget(k, w);
}

std::uint64_t CapacitySearcher::derive_seed(std::uint64_t base, PilotScheme scheme, int w, int k) {
  // splitmix64 finaliser over the packed key.
  std::uint64_t x = base ^ (static_cast<std::uint64_t>(scheme == PilotScheme::reused_sets) << 56) ^
                    (static_cast<std::uint64_t>(w) << 40) ^ static_cast<std::uint64_t>(k);
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

const SirSampleSet& CapacitySearcher::samples(PilotScheme scheme, int w, int k) {
  const auto key = std::make_tuple(static_cast<int>(scheme), w, k);
  if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  NetworkGeometry g = geometry_;
  g.reuse_factor = w;
  const std::uint64_t seed = derive_seed(selector_.seed, scheme, w, k);
  SirSampleSet set;
  if (selector_.kind == SamplerKind::finite_m) {
    FiniteMRun run{scheme, k, selector_.pilot_model, selector_.trials, seed, selector_.workers};
    set = sample_sir_finite_m(g, selector_.finite_m, run);
  } else {
    LargeMConfig c;
    c.scheme = scheme;
    c.users_per_cell = k;
    c.pilot_length = selector_.pilot_length;
    c.pilot_model = selector_.pilot_model;
    c.trials = selector_.trials;
    c.seed = seed;
    c.workers = selector_.workers;
    set = sample_sir_limit(g, c);
  }
  return cache_.emplace(key, std::move(set)).first->second;
}

ReuseSearchResult CapacitySearcher::search(PilotScheme scheme, const QosTarget& qos, int w) {
  qos.validate();
  ReuseSearchResult res;
  res.reuse_factor = w;
  for (int k = budget(w); k >= 1; --k) {
    const OutageEstimate est = empirical_outage(samples(scheme, w, k), qos);
    res.outage = est;
    if (est.probability <= qos.outage) {
      res.k_max = k;
      return res;
    }
  }
  return res;
}

CapacitySearchResult CapacitySearcher::search_all(PilotScheme scheme, const QosTarget& qos) {
  CapacitySearchResult out;
  out.scheme = scheme;
  for (const int w : kReuseFactors) {
    out.per_reuse.push_back(search(scheme, qos, w));
    if (out.per_reuse.back().k_max > out.best_k) {
      out.best_k = out.per_reuse.back().k_max;
      out.best_reuse = w;
    }
  }
  return out;
}

CapacitySearchResult empirical_capacity_search(const NetworkGeometry& geometry,
                                               PilotScheme scheme, const QosTarget& qos,
                                               const SamplerSelector& selector) {
  CapacitySearcher s(geometry, selector);
  return s.search_all(scheme, qos);
}

}  // namespace mimocap
