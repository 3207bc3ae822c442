#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mimocap/approx.hpp"
#include "mimocap/finite_m.hpp"
#include "mimocap/geometry.hpp"
#include "mimocap/large_m.hpp"
#include "mimocap/pilots.hpp"

namespace mimocap {

/// Bad configuration file, key, value or override.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class SchemeSelection { reused, different, both };

std::vector<PilotScheme> schemes_of(SchemeSelection s);

struct QosGrid {
  double sir_db_min = 0.0;
  double sir_db_max = 40.0;
  double sir_db_step = 0.1;
  std::vector<double> alphas{0.05};

  /// Grid points min, min + step, ... up to max (inclusive within step/2).
  std::vector<double> sir_db_values() const;
};

struct ScenarioConfig {
  NetworkGeometry geometry;
  CircleMode circle_mode = CircleMode::equal_area;

  int pilot_length = 42;
  SchemeSelection schemes = SchemeSelection::both;
  PilotModel pilot_model = PilotModel::projection;

  QosGrid qos;
  int tiers = 1;
  VarianceModel variance_model = VarianceModel::approximate;

  std::size_t trials = 100000;
  std::uint64_t seed = 1;
  unsigned workers = 1;
  Placement placement = Placement::hexagon;
  bool power_control = true;
  int max_tier = 0;
  double shadow_sigma_db = 8.0;

  int cdf_reuse = 7;
  int cdf_users = 6;
  double cdf_db_min = -10.0;
  double cdf_db_max = 60.0;
  double cdf_db_step = 0.1;

  FiniteMConfig finite_m;
  std::size_t finite_m_trials = 10000;
  std::vector<QosTarget> finite_m_presets{QosTarget::from_db(0.0, 0.01), QosTarget::from_db(10.0, 0.05),
                                          QosTarget::from_db(25.0, 0.05), QosTarget::from_db(30.0, 0.005)};

  std::size_t validate_trials = 200000;
  double validate_sigma = 3.0;     // Monte Carlo tolerance in standard errors
  double validate_rel_tol = 1e-9;  // closed form vs root solve

  /// Throws ConfigError on any inconsistency.
  void validate() const;

  /// One "section.key=value" line per result-affecting key, in a fixed order.
  std::vector<std::string> canonical_lines() const;
  /// FNV-1a 64 of the canonical lines, as 16 hex digits.
  std::string hash() const;
};

/// Defaults, then the file (if given), then each "section.key=value"
/// override in order. Unknown sections or keys are rejected.
ScenarioConfig load_config(const std::optional<std::string>& path,
                           const std::vector<std::string>& overrides = {});

/// Apply one override to an existing config (validates the result).
void apply_override(ScenarioConfig& config, const std::string& assignment);

}  // namespace mimocap
