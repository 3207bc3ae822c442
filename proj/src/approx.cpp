#include "mimocap/approx.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace mimocap {

std::string_view name(VarianceModel model) {
  return model == VarianceModel::approximate ? "approximate" : "exact";
}

VarianceModel parse_variance_model(std::string_view text) {
  if (text == "approximate") return VarianceModel::approximate;
  if (text == "exact") return VarianceModel::exact;
  throw std::invalid_argument("unknown variance model '" + std::string(text) +
                              "' (expected approximate or exact)");
}

QosTarget QosTarget::from_db(double sir_db, double outage) {
  QosTarget q{db_to_linear(sir_db), outage};
  q.validate();
  return q;
}

double QosTarget::min_sir_db() const { return linear_to_db(min_sir_linear); }

void QosTarget::validate() const {
  if (!(min_sir_linear > 0.0) || !std::isfinite(min_sir_linear))
    throw std::invalid_argument("QoS: minimum SIR must be positive and finite");
  if (!(outage > 0.0 && outage < 0.5))
    throw std::invalid_argument("QoS: outage must lie in (0, 0.5)");
}

double integrand_v(double r, double theta, double separation, double gamma) {
  if (!(r >= 0.0)) throw std::invalid_argument("integrand_v: r must be >= 0");
  if (!(r < separation))
    throw std::invalid_argument("integrand_v: r must be below the separation (singular)");
  const double r2 = r * r;
  return std::pow(r2 / (r2 + separation * separation - 2.0 * separation * r * std::cos(theta)),
                  gamma);
}

TierMoments pilot_weighted(int tier_index, double mu_x, double var_x, int pilot_length,
                           PilotScheme scheme, VarianceModel model) {
  if (pilot_length < 1) throw std::invalid_argument("pilot length must be >= 1");
  TierMoments m{tier_index, mu_x, var_x, mu_x, var_x};
  if (scheme == PilotScheme::reused_sets) return m;
  const double k = pilot_length;
  m.mu_y = mu_x / k;
  if (model == VarianceModel::approximate) {
    m.var_y = (2.0 * var_x + mu_x * mu_x) / (k * k);
  } else {
    const double second = var_x + mu_x * mu_x;
    m.var_y = 2.0 * second / (k * (k + 1.0)) - mu_x * mu_x / (k * k);
  }
  return m;
}

TierMoments compute_tier_moments(const CirclePatch& patch, double gamma, int pilot_length,
                                 PilotScheme scheme, int tier_index, VarianceModel model,
                                 const QuadratureOptions& options) {
  if (!(patch.circle_radius_m < patch.separation_m))
    throw std::invalid_argument("compute_tier_moments: circle must not contain the BS");
  const CircleMoments x = circle_moments(patch.circle_radius_m, patch.separation_m, gamma, options);
  return pilot_weighted(tier_index, x.mean, x.variance, pilot_length, scheme, model);
}

double q_function(double z) { return 0.5 * std::erfc(z / std::numbers::sqrt2); }

double q_inverse(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("q_inverse: alpha must lie in (0, 1)");
  if (alpha > 0.5) return -q_inverse(1.0 - alpha);
  if (alpha == 0.5) return 0.0;
  // Q is decreasing; Q(0) = 0.5 and Q(40) underflows below any double alpha.
  double lo = 0.0, hi = 40.0;
  for (int i = 0; i < 200 && hi - lo > 1e-12; ++i) {
    const double mid = 0.5 * (lo + hi);
    (q_function(mid) > alpha ? lo : hi) = mid;
  }
  double z = 0.5 * (lo + hi);
  // Newton polish in relative terms: Q'(z) = -pdf(z).
  for (int i = 0; i < 3; ++i) {
    const double pdf = std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi);
    if (pdf <= 0.0) break;
    z += (q_function(z) - alpha) / pdf;
  }
  return z;
}

GaussianInterference aggregate(std::span<const TierLoad> load) {
  GaussianInterference g;
  for (const auto& t : load) {
    if (t.count < 0.0) throw std::invalid_argument("interferer count must be >= 0");
    g.mean += t.count * t.moments.mu_y;
    g.variance += t.count * t.moments.var_y;
  }
  return g;
}

double gaussian_sir_cdf(double sir_linear, const GaussianInterference& g) {
  if (!(sir_linear > 0.0)) throw std::invalid_argument("gaussian_sir_cdf: SIR must be positive");
  const double margin = 1.0 / sir_linear - g.mean;
  if (g.variance <= 0.0) return margin < 0.0 ? 1.0 : 0.0;
  return q_function(margin / std::sqrt(g.variance));
}

Feasibility qos_feasible(std::span<const TierLoad> load, const QosTarget& qos) {
  qos.validate();
  const GaussianInterference g = aggregate(load);
  const double margin = 1.0 / qos.min_sir_linear - g.mean;
  constexpr double inf = std::numeric_limits<double>::infinity();
  if (g.variance <= 0.0) {
    if (margin > 0.0) return {true, inf};
    if (margin == 0.0) return {true, 0.0};
    return {false, -inf};
  }
  const double slack = margin / std::sqrt(g.variance) - q_inverse(qos.outage);
  return {slack >= 0.0, slack};
}

}  // namespace mimocap
