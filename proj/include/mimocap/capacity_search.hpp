#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string_view>
#include <tuple>
#include <vector>

#include "mimocap/finite_m.hpp"
#include "mimocap/large_m.hpp"

namespace mimocap {

enum class SamplerKind { large_m, finite_m };

std::string_view name(SamplerKind k);
SamplerKind parse_sampler_kind(std::string_view text);

struct SamplerSelector {
  SamplerKind kind = SamplerKind::finite_m;
  FiniteMConfig finite_m;             // used when kind == finite_m
  int pilot_length = 42;              // K for the large-M sampler
  PilotModel pilot_model = PilotModel::projection;
  std::size_t trials = 10000;
  std::uint64_t seed = 1;
  unsigned workers = 1;
};

struct ReuseSearchResult {
  int reuse_factor = 1;
  int k_max = 0;
  /// Outage at k_max, or at k = 1 when nothing passes.
  OutageEstimate outage;
};

struct CapacitySearchResult {
  PilotScheme scheme = PilotScheme::different_sets;
  std::vector<ReuseSearchResult> per_reuse;
  int best_reuse = 1;
  int best_k = 0;
};

/// Sample sets keyed by (scheme, w, k), so several QoS targets evaluated on
/// one searcher share their draws.
class CapacitySearcher {
 public:
  CapacitySearcher(const NetworkGeometry& geometry, const SamplerSelector& selector);

  /// Largest k <= floor(K / w) whose empirical outage point estimate is <=
  /// alpha, scanning down from the pilot budget.
  ReuseSearchResult search(PilotScheme scheme, const QosTarget& qos, int w);

  /// All w in {1, 3, 7}; best is the largest k, ties to the smaller w.
  CapacitySearchResult search_all(PilotScheme scheme, const QosTarget& qos);

  const SirSampleSet& samples(PilotScheme scheme, int w, int k);
  std::size_t cached_sets() const { return cache_.size(); }

  /// Seed of the sample set for (scheme, w, k), derived from the base seed.
  static std::uint64_t derive_seed(std::uint64_t base, PilotScheme scheme, int w, int k);

 private:
  int budget(int w) const;

  NetworkGeometry geometry_;
  SamplerSelector selector_;
  std::map<std::tuple<int, int, int>, SirSampleSet> cache_;
};

CapacitySearchResult empirical_capacity_search(const NetworkGeometry& geometry,
                                               PilotScheme scheme, const QosTarget& qos,
                                               const SamplerSelector& selector);

}  // namespace mimocap
