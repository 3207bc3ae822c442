#pragma once

#include <cmath>
#include <span>
#include <string_view>

#include "mimocap/geometry.hpp"
#include "mimocap/pilots.hpp"
#include "mimocap/quadrature.hpp"

namespace mimocap {

/// Variance of phi used for the pilot-weighted moments under DifferentSets.
///  approximate - Var[phi] = 1/K^2, giving (2 var_x + mu_x^2) / K^2
///  exact - phi ~ Beta(1, K-1), E[phi^2] = 2 / (K (K+1))
enum class VarianceModel { approximate, exact };

std::string_view name(VarianceModel model);
VarianceModel parse_variance_model(std::string_view text);

/// Per-interferer interference moments for one tier. x = (r_l / r_j)^(2 gamma)
/// is the path-loss ratio, y = phi * x its pilot-weighted version.
struct TierMoments {
  int tier_index = 1;
  double mu_x = 0.0;
  double var_x = 0.0;
  double mu_y = 0.0;
  double var_y = 0.0;
};

struct QosTarget {
  double min_sir_linear = 1.0;
  double outage = 0.05;

  static QosTarget from_db(double sir_db, double outage);
  double min_sir_db() const;
  void validate() const;
};

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

/// (r^2 / (r^2 + d^2 - 2 d r cos theta))^gamma. Requires 0 <= r < d.
double integrand_v(double r, double theta, double separation, double gamma);

/// Path-loss moments to pilot-weighted moments.
TierMoments pilot_weighted(int tier_index, double mu_x, double var_x, int pilot_length,
                           PilotScheme scheme, VarianceModel model = VarianceModel::approximate);

TierMoments compute_tier_moments(const CirclePatch& patch, double gamma, int pilot_length,
                                 PilotScheme scheme, int tier_index = 1,
                                 VarianceModel model = VarianceModel::approximate,
                                 const QuadratureOptions& options = {});

/// Q(z) = 1 - Phi(z).
double q_function(double z);

/// z with Q(z) = alpha, |error| <= 1e-9. Throws for alpha outside (0, 1).
double q_inverse(double alpha);

struct GaussianInterference {
  double mean = 0.0;
  double variance = 0.0;
};

struct TierLoad {
  double count = 0.0;  // n_t, number of interferers of this type
  TierMoments moments;
};

GaussianInterference aggregate(std::span<const TierLoad> load);

/// P(SIR < s) when the SIR denominator is N(mean, variance).
double gaussian_sir_cdf(double sir_linear, const GaussianInterference& g);

struct Feasibility {
  bool feasible = true;
  double slack = 0.0;  // (1/S - mu) / sigma - Q^-1(alpha)
};

Feasibility qos_feasible(std::span<const TierLoad> load, const QosTarget& qos);

}  // namespace mimocap
