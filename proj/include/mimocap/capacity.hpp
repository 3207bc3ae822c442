#pragma once

#include <array>
#include <span>
#include <vector>

#include "mimocap/approx.hpp"
#include "mimocap/geometry.hpp"
#include "mimocap/pilots.hpp"

namespace mimocap {

inline constexpr std::array<int, 3> kReuseFactors{1, 3, 7};

struct CapacityOptions {
  CircleMode circle_mode = CircleMode::equal_area;
  VarianceModel variance_model = VarianceModel::approximate;
  int tiers = 1;  // interfering tiers in the Gaussian condition
  QuadratureOptions quadrature;
};

struct CapacityReport {
  PilotScheme scheme = PilotScheme::different_sets;
  int chosen_reuse = 1;
  int pilot_budget = 0;  // floor(K / w)
  double effective_interference = 0.0;
  long n_max = 0;     // budget of tier-1 interferers
  double k_u = 0.0;   // n_max / (tier-1 cell count)
  int k_max = 0;
  TierMoments tier1;
};

/// Closed-form effective interference of one interferer type,
/// mu / (1 + (2/z)(1 - sqrt(1 + z))) with z = 4 mu / (Q^-1(alpha)^2 sigma^2 S),
/// evaluated in the cancellation-free form mu (sqrt(1+z) + 1)^2 / z.
double effective_interference(double mu, double variance, const QosTarget& qos);
double effective_interference(const TierMoments& moments, const QosTarget& qos);

/// floor(1 / (y_E S)).
long max_interferers(double effective_interference, double min_sir_linear);

/// Moments for every tier and reuse factor of one scenario, computed once so
/// (S, alpha) sweeps only evaluate closed forms.
class CapacityModel {
 public:
  CapacityModel(const NetworkGeometry& geometry, PilotScheme scheme, int pilot_length,
                const CapacityOptions& options = {});

  CapacityReport for_reuse(const QosTarget& qos, int w) const;
  /// Maximises k_max over w in {1, 3, 7}; ties go to the smaller w.
  CapacityReport best(const QosTarget& qos) const;

  const std::vector<TierSpec>& tiers(int w) const;
  const std::vector<TierMoments>& moments(int w) const;
  PilotScheme scheme() const { return scheme_; }
  int pilot_length() const { return pilot_length_; }

 private:
  static std::size_t slot(int w);

  PilotScheme scheme_;
  int pilot_length_;
  std::array<std::vector<TierSpec>, 3> tiers_;
  std::array<std::vector<TierMoments>, 3> moments_;
};

/// Pilot sequences available per cell at reuse w.
int pilot_budget(int pilot_length, int w);

CapacityReport capacity_for_reuse(const NetworkGeometry& geometry, PilotScheme scheme,
                                  const QosTarget& qos, int pilot_length, int w,
                                  const CapacityOptions& options = {});

CapacityReport best_reuse(const NetworkGeometry& geometry, PilotScheme scheme,
                          const QosTarget& qos, int pilot_length,
                          const CapacityOptions& options = {});

/// True iff every cell's tier-1 co-channel set carries at most n_max users.
/// Throws if a count is negative or exceeds floor(K / w), or if the count
/// vector does not match the layout.
bool cooperative_admission_check(std::span<const int> per_cell_counts,
                                 const NetworkGeometry& geometry, long n_max, int pilot_length);

struct CapacityRow {
  double sir_db = 0.0;
  double alpha = 0.0;
  CapacityReport best;
  std::array<CapacityReport, 3> per_reuse;  // w = 1, 3, 7
};

/// best() and every for_reuse() at each SIR grid point, in grid order.
std::vector<CapacityRow> capacity_sweep(const CapacityModel& model, std::span<const double> sir_db,
                                        double alpha);

struct SwitchPoint {
  int from_reuse = 1;
  int to_reuse = 1;
  double sir_db = 0.0;  // first grid SIR with the new reuse factor
};

/// Grid points where the chosen reuse factor changes, in sweep order.
std::vector<SwitchPoint> switching_points(const std::vector<CapacityRow>& rows);

/// Largest grid SIR up to which every row has best.k_max >= k (NaN if the
/// first row already falls short).
double last_sir_with_k_max(const std::vector<CapacityRow>& rows, int k);

}  // namespace mimocap
