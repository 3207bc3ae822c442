#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "mimocap/geometry.hpp"
#include "mimocap/pilots.hpp"
#include "mimocap/rng.hpp"
#include "mimocap/sample_set.hpp"

namespace mimocap {

/// User placement inside each cell.
///  hexagon - uniform in the hexagon minus the cell hole
///  circle  - uniform in the approximating disc around the BS
enum class Placement { hexagon, circle };

std::string_view name(Placement p);
Placement parse_placement(std::string_view text);

/// A co-channel cell of the centre cell, as seen from the centre BS.
struct InterfererCell {
  std::size_t layout_index = 0;
  Point offset;  // BS position relative to the centre BS
  int tier = 0;  // 0 if beyond the enumerated tiers
};

/// Co-channel cells of the centre cell in the built lattice, restricted to
/// tiers <= max_tier unless max_tier is 0.
std::vector<InterfererCell> interfering_cells(const NetworkGeometry& geometry, int max_tier = 0);

struct LargeMConfig {
  PilotScheme scheme = PilotScheme::different_sets;
  int users_per_cell = 1;
  int pilot_length = 42;  // K; each resource carries floor(K / w)
  bool power_control = true;
  PilotModel pilot_model = PilotModel::projection;
  Placement placement = Placement::hexagon;
  CircleMode circle_mode = CircleMode::equal_area;
  int max_tier = 0;
  double shadow_sigma_db = 0.0;
  std::size_t trials = 1000;
  std::uint64_t seed = 1;
  unsigned workers = 1;
};

/// One interference term of a trial's SIR denominator.
struct InterferenceTerm {
  std::size_t cell = 0;  // index into the interferer list
  int user = 0;
  int tier = 0;
  double phi = 0.0;
  double ratio = 0.0;  // beta_jkl / beta_lkl (shadowing included)
  double term = 0.0;   // phi-weighted contribution to 1 / SIR
};

struct TrialResult {
  double sir = 0.0;
  std::vector<InterferenceTerm> terms;  // only when requested
};

class LargeMSampler {
 public:
  LargeMSampler(const NetworkGeometry& geometry, const LargeMConfig& config);

  /// SIR of trial `index`; a pure function of (config, seed, index).
  TrialResult trial(std::uint64_t index, bool keep_terms = false) const;

  SirSampleSet run() const;

  const std::vector<InterfererCell>& interferers() const { return cells_; }
  int pilot_dimension() const { return pilot_dim_; }

 private:
  struct Placed {
    Point position;      // relative to the centre BS
    double own_ratio2;   // squared own-BS distance (or gain) term
    double centre_gain;  // shadow factor towards the centre BS, linear
    double own_gain;     // shadow factor towards the own BS, linear
  };

  template <class Rng>
  Placed place(std::size_t cell_slot, Rng& rng) const;

  NetworkGeometry geometry_;
  LargeMConfig config_;
  std::vector<InterfererCell> cells_;
  std::vector<Point> bs_;  // all BSs of the lattice relative to the centre BS
  std::vector<std::size_t> own_bs_;  // index into bs_ of each interferer slot
  std::vector<int> tier_cache_;
  double circle_radius_ = 0.0;
  int pilot_dim_ = 0;
};

/// Large-M SIR samples, one tagged user (centre cell, user 0) per trial.
/// A layout without co-channel cells gives +inf for every trial.
SirSampleSet sample_sir_limit(const NetworkGeometry& geometry, const LargeMConfig& config);

struct ShadowedResult {
  SirSampleSet set;
  /// Largest beta_jkl / beta_lkl observed; < 1 whenever every user is served
  /// by its strongest BS.
  double max_ratio = 0.0;
  std::size_t ratio_violations = 0;
  /// Mean interference (1/SIR contribution) per tier; index 0 collects cells
  /// beyond the enumerated tiers.
  std::vector<double> tier_mean_interference;
  double tier_share(int tier) const;
};

/// Log-normal shadowing with best-server association; users of cell l are
/// redrawn until l is their strongest BS. sigma = 0 reproduces
/// sample_sir_limit exactly.
ShadowedResult sample_sir_limit_shadowed(const NetworkGeometry& geometry, LargeMConfig config,
                                         double sigma_db);

}  // namespace mimocap
