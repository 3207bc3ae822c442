#pragma once

#include <cstdint>
#include <string_view>

#include "mimocap/large_m.hpp"

namespace mimocap {

/// How the M-dimensional channel products are evaluated.
///  explicit_vectors - draw every channel as an M-vector (reference route)
///  reduced          - exact law of the MRC inner products given the
///                     estimate direction: one Gamma(M, 1) draw and one
///                     projected Gaussian vector per trial, O(users) work
enum class ChannelEngine { explicit_vectors, reduced };

std::string_view name(ChannelEngine e);
ChannelEngine parse_channel_engine(std::string_view text);

struct FiniteMConfig {
  long antennas = 500;
  int pilot_length = 42;          // tau; each resource carries floor(tau / w)
  double ul_snr_db = 10.0;        // cell-edge data SNR; +inf disables noise
  double pilot_snr_db = 10.0;     // cell-edge pilot SNR per symbol; +inf = noiseless
  int max_tier = 1;               // 0 = every co-channel cell of the lattice
  ChannelEngine engine = ChannelEngine::reduced;

  void validate() const;
};

struct FiniteMRun {
  PilotScheme scheme = PilotScheme::different_sets;
  int users_per_cell = 1;
  PilotModel pilot_model = PilotModel::projection;
  std::size_t trials = 1000;
  std::uint64_t seed = 1;
  unsigned workers = 1;
};

class FiniteMSampler {
 public:
  FiniteMSampler(const NetworkGeometry& geometry, const FiniteMConfig& config, const FiniteMRun& run);

  /// Post-MRC SINR of the tagged user for trial `index`.
  double trial(std::uint64_t index) const;
  SirSampleSet run() const;

 private:
  NetworkGeometry geometry_;
  FiniteMConfig config_;
  FiniteMRun run_;
  std::vector<InterfererCell> cells_;
  int pilot_dim_ = 0;
  double pilot_noise_sd_ = 0.0;  // sqrt of the estimate noise variance
  double data_noise_ = 0.0;      // N0
};

SirSampleSet sample_sir_finite_m(const NetworkGeometry& geometry, const FiniteMConfig& config,
                                 const FiniteMRun& run);

}  // namespace mimocap
