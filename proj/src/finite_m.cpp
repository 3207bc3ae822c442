#include "mimocap/finite_m.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>

#include "mimocap/kernels.hpp"
#include "mimocap/parallel.hpp"

namespace mimocap {

std::string_view name(ChannelEngine e) {
  return e == ChannelEngine::explicit_vectors ? "explicit" : "reduced";
}

ChannelEngine parse_channel_engine(std::string_view text) {
  if (text == "explicit") return ChannelEngine::explicit_vectors;
  if (text == "reduced") return ChannelEngine::reduced;
  throw std::invalid_argument("unknown channel engine '" + std::string(text) +
                              "' (expected explicit or reduced)");
}

void FiniteMConfig::validate() const {
  if (antennas < 1) throw std::invalid_argument("antennas must be >= 1");
  if (pilot_length < 1) throw std::invalid_argument("pilot length must be >= 1");
  if (std::isnan(ul_snr_db) || std::isnan(pilot_snr_db))
    throw std::invalid_argument("SNR must not be NaN");
  if (max_tier < 0) throw std::invalid_argument("max_tier must be >= 0");
}

FiniteMSampler::FiniteMSampler(const NetworkGeometry& geometry, const FiniteMConfig& config,
                               const FiniteMRun& run)
    : geometry_(geometry), config_(config), run_(run) {
  geometry_.validate();
  config_.validate();
  if (run_.trials < 1) throw std::invalid_argument("trials must be >= 1");
  pilot_dim_ = config_.pilot_length / geometry_.reuse_factor;
  if (run_.users_per_cell < 1 || run_.users_per_cell > pilot_dim_)
    throw std::invalid_argument("users per cell " + std::to_string(run_.users_per_cell) +
                                " infeasible: pilot budget per cell is " +
                                std::to_string(pilot_dim_));
  cells_ = interfering_cells(geometry_, config_.max_tier);
  // With ULPC every user arrives at its own BS with unit power; the cell-edge
  // SNRs fix the noise levels relative to that.
  pilot_noise_sd_ =
      std::isinf(config_.pilot_snr_db) && config_.pilot_snr_db > 0
          ? 0.0
          : std::sqrt(1.0 / (pilot_dim_ * db_to_linear(config_.pilot_snr_db)));
  data_noise_ = std::isinf(config_.ul_snr_db) && config_.ul_snr_db > 0
                    ? 0.0
                    : 1.0 / db_to_linear(config_.ul_snr_db);
  if (cells_.empty() && run_.users_per_cell == 1 && data_noise_ == 0.0)
    throw std::invalid_argument("finite-M SINR undefined: no interferers and no noise");
}

namespace {

cplx complex_normal(std::normal_distribution<double>& n, Philox4x32& rng) {
  const double re = n(rng);
  return {re, n(rng)};
}

}  // namespace

double FiniteMSampler::trial(std::uint64_t index) const {
  auto rng = trial_stream(run_.seed, index);
  const int k = run_.users_per_cell;
  const std::size_t kk = static_cast<std::size_t>(k);
  const double a = geometry_.cell_radius_m;
  const double hole = geometry_.hole_radius_m;
  const double gamma = geometry_.path_loss_exponent;

  // Effective amplitudes d_u = sqrt(beta_centre / beta_own); own-cell users 1.
  const std::size_t n_users = (cells_.size() + 1) * kk;
  std::vector<double> d(n_users, 1.0);
  for (int u = 0; u < k; ++u) sample_in_hexagon(a, hole, rng);
  for (std::size_t c = 0; c < cells_.size(); ++c)
    for (std::size_t u = 0; u < kk; ++u) {
      const Point local = sample_in_hexagon(a, hole, rng);
      const Point p = cells_[c].offset + local;
      d[(c + 1) * kk + u] = std::pow(norm2(local) / norm2(p), 0.25 * gamma);
    }
  const auto w = contamination_weights(run_.scheme, run_.pilot_model, pilot_dim_, k,
                                       cells_.size() + 1, rng);
  // Estimate coefficients: g_hat = sum_u sqrt(phi_u) d_u h_u + sd * n.
  std::vector<double> coef(n_users + 1);
  for (std::size_t i = 0; i < n_users; ++i) coef[i] = std::sqrt(w[i / kk][i % kk]) * d[i];
  coef[n_users] = pilot_noise_sd_;

  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  // s[i] = g_hat^H h_i, scaled by a common positive factor that cancels.
  std::vector<cplx> s(n_users);
  double estimate_norm2 = 0.0;
  if (config_.engine == ChannelEngine::explicit_vectors) {
    const std::size_t m = static_cast<std::size_t>(config_.antennas);
    std::vector<cplx> h(n_users * m), ghat(m, cplx{0.0, 0.0});
    for (auto& v : h) v = complex_normal(normal, rng);
    for (std::size_t i = 0; i < n_users; ++i)
      if (coef[i] != 0.0)
        kernels::caxpy(cplx{coef[i], 0.0}, std::span<const cplx>(h.data() + i * m, m), ghat);
    if (pilot_noise_sd_ > 0.0) {
      std::vector<cplx> noise(m);
      for (auto& v : noise) v = complex_normal(normal, rng);
      kernels::caxpy(cplx{pilot_noise_sd_, 0.0}, noise, ghat);
    }
    for (std::size_t i = 0; i < n_users; ++i)
      s[i] = kernels::cdotc(ghat, std::span<const cplx>(h.data() + i * m, m));
    estimate_norm2 = kernels::cnorm2(ghat);
  } else {
    // Write the stacked channels as A (M x N, iid entries) and the estimate
    // as A c. With e = c / |c|, w = A e is CN(0, I_M) and A (I - e e^T) is
    // independent of w, so g_hat^H h_i = |c| (e_i |w|^2 + |w| z_i) with
    // z ~ CN(0, I - e e^T). Everything is reported up to the factor |c|.
    double c2 = 0.0;
    for (const double c : coef) c2 += c * c;
    const double cn = std::sqrt(c2);
    std::gamma_distribution<double> gamma_m(static_cast<double>(config_.antennas), 1.0);
    const double g = gamma_m(rng);
    std::vector<cplx> z(n_users + 1);
    for (auto& v : z) v = complex_normal(normal, rng);
    cplx ez{0.0, 0.0};
    for (std::size_t i = 0; i <= n_users; ++i) ez += (coef[i] / cn) * z[i];
    const double sg = std::sqrt(g);
    for (std::size_t i = 0; i < n_users; ++i) {
      const double e = coef[i] / cn;
      s[i] = e * g + sg * (z[i] - e * ez);
    }
    estimate_norm2 = g;
  }

  const double signal = std::norm(s[0]);
  double interference = 0.0;
  for (std::size_t i = 1; i < n_users; ++i) interference += d[i] * d[i] * std::norm(s[i]);
  const double denom = interference + estimate_norm2 * data_noise_;
  return denom > 0.0 ? signal / denom : std::numeric_limits<double>::infinity();
}

SirSampleSet FiniteMSampler::run() const {
  SirSampleSet set;
  set.tag = {run_.scheme, geometry_.reuse_factor, run_.users_per_cell, config_.antennas, false};
  set.seed = run_.seed;
  set.samples.resize(run_.trials);
  parallel_for(run_.trials, run_.workers, [&](std::size_t begin, std::size_t end) {
    for (std::size_t t = begin; t < end; ++t) set.samples[t] = trial(t);
  });
  return set;
}

SirSampleSet sample_sir_finite_m(const NetworkGeometry& geometry, const FiniteMConfig& config,
                                 const FiniteMRun& run) {
  return FiniteMSampler(geometry, config, run).run();
}

}  // namespace mimocap
