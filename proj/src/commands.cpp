#include "mimocap/commands.hpp"

#include <boost/math/tools/roots.hpp>

#include <cmath>
#include <iomanip>
#include <limits>
#include <locale>
#include <ostream>
#include <sstream>

#include "mimocap/capacity.hpp"
#include "mimocap/capacity_search.hpp"
#include "mimocap/format.hpp"

namespace mimocap {

void prepare_stream(std::ostream& out) {
  out.imbue(std::locale::classic());
}

void write_csv_header(std::ostream& out, const std::string& command, const ScenarioConfig& config) {
  out << "# command: " << command << '\n';
  out << "# config_hash: " << config.hash() << '\n';
  out << "# seed: " << config.seed << '\n';
  out << "# units: distances m, angles rad, SIR dB\n";
  for (const auto& line : config.canonical_lines()) out << "# config " << line << '\n';
}

int cmd_capacity_table(const ScenarioConfig& config, std::ostream& out) {
  prepare_stream(out);
  CapacityOptions opts;
  opts.circle_mode = config.circle_mode;
  opts.variance_model = config.variance_model;
  opts.tiers = config.tiers;
  const auto grid = config.qos.sir_db_values();

  struct Block {
    PilotScheme scheme;
    std::vector<CapacityRow> rows;
  };
  std::vector<Block> blocks;
  for (const PilotScheme scheme : schemes_of(config.schemes)) {
    const CapacityModel model(config.geometry, scheme, config.pilot_length, opts);
    for (const double alpha : config.qos.alphas)
      blocks.push_back({scheme, capacity_sweep(model, grid, alpha)});
  }

  write_csv_header(out, "capacity-table", config);
  for (const auto& b : blocks) {
    for (const auto& sp : switching_points(b.rows))
      out << "# switch scheme=" << name(b.scheme) << " alpha=" << Num{b.rows.front().alpha} << " w "
          << sp.from_reuse << "->" << sp.to_reuse << " at_sir_db=" << Num{sp.sir_db} << '\n';
  }
  out << "sir_db,alpha,scheme,w_best,k_u,k_max,y_E,n_max";
  for (const int w : kReuseFactors)
    out << ",k_u_w" << w << ",k_max_w" << w << ",y_E_w" << w << ",n_max_w" << w;
  out << '\n';
  for (const auto& b : blocks) {
    for (const auto& r : b.rows) {
      out << Num{r.sir_db} << ',' << Num{r.alpha} << ',' << name(b.scheme) << ','
          << r.best.chosen_reuse << ',' << Num{r.best.k_u} << ',' << r.best.k_max << ','
          << Num{r.best.effective_interference} << ',' << r.best.n_max;
      for (const auto& p : r.per_reuse)
        out << ',' << Num{p.k_u} << ',' << p.k_max << ',' << Num{p.effective_interference} << ','
            << p.n_max;
      out << '\n';
    }
  }
  return kExitOk;
}

namespace {

GaussianInterference cdf_approximation(const ScenarioConfig& config, PilotScheme scheme) {
  CapacityOptions opts;
  opts.circle_mode = config.circle_mode;
  opts.variance_model = config.variance_model;
  const CapacityModel model(config.geometry, scheme, config.pilot_length, opts);
  const TierMoments& m = model.moments(config.cdf_reuse).front();
  const double cells = model.tiers(config.cdf_reuse).front().cell_count;
  // One co-channel user per cell under reused pilots, k per cell otherwise.
  const double n = scheme == PilotScheme::reused_sets ? cells : cells * config.cdf_users;
  return {n * m.mu_y, n * m.var_y};
}

LargeMConfig large_m_config(const ScenarioConfig& config, PilotScheme scheme, int users) {
  LargeMConfig c;
  c.scheme = scheme;
  c.users_per_cell = users;
  c.pilot_length = config.pilot_length;
  c.power_control = config.power_control;
  c.pilot_model = config.pilot_model;
  c.placement = config.placement;
  c.circle_mode = config.circle_mode;
  c.max_tier = config.max_tier;
  c.trials = config.trials;
  c.seed = config.seed;
  c.workers = config.workers;
  return c;
}

}  // namespace

int cmd_sir_cdf(const ScenarioConfig& config, std::ostream& out) {
  prepare_stream(out);
  NetworkGeometry g = config.geometry;
  g.reuse_factor = config.cdf_reuse;
  struct Curve {
    PilotScheme scheme;
    std::vector<double> sorted;
    GaussianInterference approx;
    TailGap gap;
  };
  std::vector<Curve> curves;
  for (const PilotScheme scheme : schemes_of(config.schemes)) {
    const SirSampleSet set = sample_sir_limit(g, large_m_config(config, scheme, config.cdf_users));
    Curve c{scheme, sorted_samples(set), cdf_approximation(config, scheme), {}};
    c.gap = lower_tail_gap(c.sorted, c.approx);
    curves.push_back(std::move(c));
  }
  write_csv_header(out, "sir-cdf", config);
  for (const auto& c : curves)
    out << "# lower_tail scheme=" << name(c.scheme) << " max_abs_gap=" << Num{c.gap.max_abs}
        << " max_emp_minus_approx=" << Num{c.gap.max_signed} << '\n';
  out << "curve,scheme,sir_db,cdf\n";
  const QosGrid dbgrid{config.cdf_db_min, config.cdf_db_max, config.cdf_db_step, {}};
  const auto xs = dbgrid.sir_db_values();
  for (const auto& c : curves) {
    for (const double x : xs)
      out << "empirical," << name(c.scheme) << ',' << Num{x} << ','
          << Num{ecdf(c.sorted, db_to_linear(x))} << '\n';
    for (const double x : xs)
      out << "gaussian," << name(c.scheme) << ',' << Num{x} << ','
          << Num{gaussian_sir_cdf(db_to_linear(x), c.approx)} << '\n';
  }
  return kExitOk;
}

int cmd_finite_m_table(const ScenarioConfig& config, std::ostream& out) {
  prepare_stream(out);
  SamplerSelector sel;
  sel.kind = SamplerKind::finite_m;
  sel.finite_m = config.finite_m;
  sel.pilot_length = config.pilot_length;
  sel.pilot_model = config.pilot_model;
  sel.trials = config.finite_m_trials;
  sel.seed = config.seed;
  sel.workers = config.workers;
  CapacitySearcher searcher(config.geometry, sel);
  std::vector<std::pair<QosTarget, CapacitySearchResult>> rows;
  for (const PilotScheme scheme : schemes_of(config.schemes))
    for (const auto& q : config.finite_m_presets) rows.emplace_back(q, searcher.search_all(scheme, q));

  write_csv_header(out, "finite-m-table", config);
  out << "scheme,sir_db,alpha,k_max_w1,k_max_w3,k_max_w7,w_best,k_max,outage_at_best,outage_ci_low,"
         "outage_ci_high\n";
  for (const auto& [q, r] : rows) {
    out << name(r.scheme) << ',' << Num{q.min_sir_db()} << ',' << Num{q.outage};
    for (const auto& p : r.per_reuse) out << ',' << p.k_max;
    OutageEstimate est{};
    for (const auto& p : r.per_reuse)
      if (p.reuse_factor == r.best_reuse) est = p.outage;
    out << ',' << r.best_reuse << ',' << r.best_k << ',' << Num{est.probability} << ','
        << Num{est.lower} << ',' << Num{est.upper} << '\n';
  }
  return kExitOk;
}

double effective_interference_by_root(double mu, double variance, const QosTarget& qos) {
  qos.validate();
  const double q = q_inverse(qos.outage);
  const double sigma = std::sqrt(variance);
  const double inv_s = 1.0 / qos.min_sir_linear;
  // Equality in u = sqrt(n): 1/S - mu u^2 - q sigma u = 0, one positive root.
  const auto f = [&](double u) { return inv_s - mu * u * u - q * sigma * u; };
  const double hi = std::sqrt(inv_s / mu);
  if (f(hi) == 0.0) return mu;
  std::uintmax_t iters = 200;
  const auto [lo_u, hi_u] =
      boost::math::tools::toms748_solve(f, 0.0, hi, boost::math::tools::eps_tolerance<double>(52), iters);
  const double u = 0.5 * (lo_u + hi_u);
  return 1.0 / (qos.min_sir_linear * u * u);
}

namespace {

std::string fmt(double v) {
  std::ostringstream s;
  s.imbue(std::locale::classic());
  s << std::setprecision(6) << v;
  return s.str();
}

CheckResult check_quadrature(const ScenarioConfig& config) {
  CheckResult r{"quadrature_vs_sampling", true, ""};
  double worst = 0.0;
  for (const int w : kReuseFactors) {
    NetworkGeometry g = config.geometry;
    g.reuse_factor = w;
    g.wrap_around = false;
    const auto tiers = tier_specs(g, 2);
    for (const auto& t : tiers) {
      const CirclePatch patch = circle_approximation(g, t, config.circle_mode);
      const CircleMoments m = circle_moments(patch.circle_radius_m, patch.separation_m, g.path_loss_exponent);
      auto rng = trial_stream(config.seed ^ 0x5157a11dull, static_cast<std::uint64_t>(w * 10 + t.tier_index));
      const std::size_t n = config.validate_trials;
      // Shifted accumulation around the quadrature mean keeps the sums well
      // conditioned.
      double s1 = 0.0, s2 = 0.0, s3 = 0.0, s4 = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const Polar p = sample_in_circle(patch.circle_radius_m, rng);
        const double e = integrand_v(p.r, p.theta, patch.separation_m, g.path_loss_exponent) - m.mean;
        s1 += e;
        s2 += e * e;
        s3 += e * e * e;
        s4 += e * e * e * e;
      }
      const double nn = static_cast<double>(n);
      const double mean_dev = s1 / nn;
      const double var = s2 / nn - mean_dev * mean_dev;
      const double m4 = s4 / nn - 4.0 * mean_dev * s3 / nn + 6.0 * mean_dev * mean_dev * s2 / nn -
                        3.0 * std::pow(mean_dev, 4);
      const double se_mean = std::sqrt(var / nn);
      const double se_var = std::sqrt(std::max(0.0, m4 - var * var) / nn);
      const double z_mean = std::abs(mean_dev) / se_mean;
      const double z_var = std::abs(var - m.variance) / se_var;
      worst = std::max({worst, z_mean, z_var});
      if (z_mean > config.validate_sigma || z_var > config.validate_sigma) {
        r.pass = false;
        r.detail += " w=" + std::to_string(w) + "/tier" + std::to_string(t.tier_index) +
                    " z_mean=" + fmt(z_mean) + " z_var=" + fmt(z_var);
      }
    }
  }
  r.detail = "worst z=" + fmt(worst) + " (limit " + fmt(config.validate_sigma) + ")" + r.detail;
  return r;
}

CheckResult check_closed_form(const ScenarioConfig& config) {
  CheckResult r{"closed_form_vs_root", true, ""};
  double worst = 0.0;
  int points = 0;
  const double alphas[] = {0.005, 0.01, 0.05, 0.1, 0.3};
  const double sirs[] = {-5.0, 0.0, 10.0, 20.0, 35.0};
  const double mus[] = {0.028324373, 4.39634e-5};
  const double ratios[] = {0.5, 25.0};  // variance / mu^2
  for (const double a : alphas)
    for (const double s : sirs)
      for (const double mu : mus)
        for (const double k : ratios) {
          const QosTarget q = QosTarget::from_db(s, a);
          const double var = k * mu * mu;
          const double closed = effective_interference(mu, var, q);
          const double root = effective_interference_by_root(mu, var, q);
          worst = std::max(worst, std::abs(closed - root) / root);
          ++points;
        }
  r.pass = worst <= config.validate_rel_tol;
  r.detail = std::to_string(points) + " points, max rel err " + fmt(worst) + " (limit " +
             fmt(config.validate_rel_tol) + ")";
  return r;
}

CheckResult check_moment_identities(const ScenarioConfig& config) {
  CheckResult r{"pilot_moment_identities", true, ""};
  const double mu = 0.028324373, var = 0.019922443;
  double worst = 0.0;
  for (const int k : {1, 2, 6, 14, 42}) {
    const double kk = k;
    // Var(phi x) = E[phi^2] E[x^2] - E[phi]^2 E[x]^2 with the chosen E[phi^2].
    const double second = var + mu * mu;
    const double approx_ref = (1.0 / (kk * kk) + 1.0 / (kk * kk)) * second - mu * mu / (kk * kk);
    const double exact_ref = 2.0 / (kk * (kk + 1.0)) * second - mu * mu / (kk * kk);
    const TierMoments a = pilot_weighted(1, mu, var, k, PilotScheme::different_sets, VarianceModel::approximate);
    const TierMoments e = pilot_weighted(1, mu, var, k, PilotScheme::different_sets, VarianceModel::exact);
    worst = std::max({worst, std::abs(a.mu_y - mu / kk) / (mu / kk),
                      std::abs(a.var_y - approx_ref) / approx_ref,
                      std::abs(e.var_y - exact_ref) / std::max(exact_ref, 1e-300)});
  }
  // Sampled pilot weights: mean 1/K, variance (K-1)/(K^2 (K+1)).
  const int k = config.pilot_length;
  auto rng = trial_stream(config.seed ^ 0x9170ull, 0);
  const std::size_t n = std::max<std::size_t>(config.validate_trials / 10, 2);
  double s1 = 0.0, s2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double phi = projection_weights(k, 1, rng)[0];
    s1 += phi;
    s2 += phi * phi;
  }
  const double kk = k, nn = static_cast<double>(n);
  const double mean = s1 / nn, sample_var = s2 / nn - mean * mean;
  const double want_var = (kk - 1.0) / (kk * kk * (kk + 1.0));
  const double z = std::abs(mean - 1.0 / kk) / std::sqrt(want_var / nn);
  r.pass = worst <= 1e-12 && z <= config.validate_sigma;
  r.detail = "algebra max rel err " + fmt(worst) + ", phi mean z=" + fmt(z) + ", phi var " +
             fmt(sample_var) + " vs " + fmt(want_var);
  return r;
}

CheckResult check_q_inverse() {
  CheckResult r{"q_inverse_round_trip", true, ""};
  double worst = 0.0;
  for (const double a : {1e-9, 1e-6, 0.001, 0.005, 0.01, 0.05, 0.1, 0.25, 0.49}) {
    worst = std::max(worst, std::abs(q_function(q_inverse(a)) - a) / a);
  }
  r.pass = worst <= 1e-9;
  r.detail = "max rel err " + fmt(worst);
  return r;
}

CheckResult check_feasibility(const ScenarioConfig& config) {
  CheckResult r{"feasibility_round_trip", true, ""};
  int points = 0;
  CapacityOptions opts;
  opts.circle_mode = config.circle_mode;
  opts.variance_model = config.variance_model;
  for (const PilotScheme scheme : {PilotScheme::reused_sets, PilotScheme::different_sets}) {
    const CapacityModel model(config.geometry, scheme, config.pilot_length, opts);
    for (const int w : kReuseFactors) {
      const TierMoments& m = model.moments(w).front();
      for (double s = -5.0; s <= 40.0; s += 2.5)
        for (const double a : config.qos.alphas) {
          const QosTarget q = QosTarget::from_db(s, a);
          const long n = max_interferers(effective_interference(m, q), q.min_sir_linear);
          const TierLoad at{static_cast<double>(n), m}, over{static_cast<double>(n + 1), m};
          const bool ok = qos_feasible(std::span(&at, 1), q).feasible &&
                          !qos_feasible(std::span(&over, 1), q).feasible;
          ++points;
          if (!ok) {
            r.pass = false;
            r.detail += " fail " + std::string(name(scheme)) + " w=" + std::to_string(w) + " S=" + fmt(s);
          }
        }
    }
  }
  r.detail = std::to_string(points) + " points" + r.detail;
  return r;
}

CheckResult check_pilot_completeness(const ScenarioConfig& config) {
  CheckResult r{"pilot_completeness", true, ""};
  auto rng = trial_stream(config.seed ^ 0xb00cull, 0);
  const int k = config.pilot_length;
  const auto book = generate_pilot_book(PilotScheme::different_sets, k, 4, rng);
  double worst = 0.0;
  for (std::size_t c = 0; c < book.matrices.size(); ++c) {
    const Eigen::VectorXcd psi = book.pilot(0, 0);
    double total = 0.0;
    for (int u = 0; u < k; ++u) total += cross_correlation(psi, book.pilot(c, static_cast<std::size_t>(u)));
    worst = std::max(worst, std::abs(total - 1.0));
  }
  r.pass = worst <= 1e-10;
  r.detail = "max |sum phi - 1| " + fmt(worst);
  return r;
}

CheckResult check_scheme_ordering(const ScenarioConfig& config) {
  CheckResult r{"k_max_ordering", true, ""};
  CapacityOptions opts;
  opts.circle_mode = config.circle_mode;
  opts.variance_model = config.variance_model;
  opts.tiers = config.tiers;
  const CapacityModel reused(config.geometry, PilotScheme::reused_sets, config.pilot_length, opts);
  const CapacityModel different(config.geometry, PilotScheme::different_sets, config.pilot_length, opts);
  int points = 0, violations = 0;
  for (const double s : config.qos.sir_db_values())
    for (const double a : config.qos.alphas) {
      const QosTarget q = QosTarget::from_db(s, a);
      ++points;
      if (different.best(q).k_max < reused.best(q).k_max) ++violations;
    }
  r.pass = violations == 0;
  r.detail = std::to_string(points) + " grid points, " + std::to_string(violations) + " violations";
  return r;
}

}  // namespace

std::vector<CheckResult> run_validation(const ScenarioConfig& config) {
  config.validate();
  return {check_quadrature(config),      check_closed_form(config),
          check_moment_identities(config), check_q_inverse(),
          check_feasibility(config),     check_pilot_completeness(config),
          check_scheme_ordering(config)};
}

int cmd_validate(const ScenarioConfig& config, std::ostream& out) {
  prepare_stream(out);
  const auto checks = run_validation(config);
  write_csv_header(out, "validate", config);
  out << "check,result,detail\n";
  bool all = true;
  for (const auto& c : checks) {
    all = all && c.pass;
    out << c.name << ',' << (c.pass ? "PASS" : "FAIL") << ",\"" << c.detail << "\"\n";
  }
  return all ? kExitOk : kExitValidationFailure;
}

}  // namespace mimocap
