#include <doctest.h>

#include <cmath>
#include <vector>

#include "mimocap/capacity.hpp"
#include "mimocap/commands.hpp"

using namespace mimocap;

namespace {

std::vector<double> grid(double lo, double hi, double step) {
  std::vector<double> v;
  for (int i = 0; lo + i * step <= hi + 1e-9; ++i) v.push_back(std::round((lo + i * step) * 1e9) / 1e9);
  return v;
}

const NetworkGeometry kGeometry{};

}  // namespace

TEST_SUITE("capacity") {
  TEST_CASE("effective interference limits") {
    const auto q = QosTarget::from_db(10.0, 0.05);
    CHECK(effective_interference(0.2, 0.0, q) == 0.2);
    // alpha -> 0.5 drives Q^-1 to 0 and y_E to the mean.
    const auto half = QosTarget::from_db(10.0, 0.4999999999);
    CHECK(effective_interference(0.2, 0.3, half) == doctest::Approx(0.2).epsilon(1e-8));
    CHECK_THROWS_AS(effective_interference(0.0, 0.1, q), std::invalid_argument);
    CHECK_THROWS_AS(effective_interference(0.1, -0.1, q), std::invalid_argument);
  }

  TEST_CASE("closed form equals the numeric root of the QoS equality") {
    double worst = 0.0, below_mean = 0.0;
    int points = 0;
    for (const double s : {-5.0, 0.0, 10.0, 20.0, 30.0})
      for (const double a : {0.001, 0.01, 0.05, 0.2})
        for (const double mu : {0.0283, 4.4e-5, 7.95e-7})
          for (const double ratio : {0.1, 24.8}) {
            if (points == 100) break;
            const auto q = QosTarget::from_db(s, a);
            const double var = ratio * mu * mu;
            const double y = effective_interference(mu, var, q);
            worst = std::max(worst, std::abs(y - effective_interference_by_root(mu, var, q)) / y);
            below_mean = std::max(below_mean, mu - y);
            ++points;
          }
    CHECK(points == 100);
    CHECK(worst <= 1e-9);
    CHECK(below_mean <= 0.0);  // mu_y <= y_E
  }

  TEST_CASE("closed form with the shipped tier-1 moments at 10 dB") {
    const CapacityModel m(kGeometry, PilotScheme::different_sets, 42);
    const auto& t = m.moments(1).front();
    const auto q = QosTarget::from_db(10.0, 0.05);
    const double y = effective_interference(t, q);
    CHECK(std::abs(y - effective_interference_by_root(t.mu_y, t.var_y, q)) / y <= 1e-9);
  }

  TEST_CASE("max_interferers floors") {
    CHECK(max_interferers(0.1, 10.0) == 1);
    CHECK(max_interferers(0.0249, 10.0) == 4);
    CHECK_THROWS_AS(max_interferers(0.0, 1.0), std::invalid_argument);
  }

  TEST_CASE("n_max is feasible and n_max + 1 is not") {
    for (const auto scheme : {PilotScheme::reused_sets, PilotScheme::different_sets}) {
      const CapacityModel m(kGeometry, scheme, 42);
      for (const int w : kReuseFactors)
        for (const double s : grid(-5, 40, 1.5))
          for (const double a : {0.005, 0.05, 0.2}) {
            const auto q = QosTarget::from_db(s, a);
            const auto& t = m.moments(w).front();
            const long n = max_interferers(effective_interference(t, q), q.min_sir_linear);
            const TierLoad at{static_cast<double>(n), t}, over{static_cast<double>(n + 1), t};
            CHECK(qos_feasible(std::span(&at, 1), q).feasible);
            CHECK_FALSE(qos_feasible(std::span(&over, 1), q).feasible);
          }
    }
  }

  TEST_CASE("report invariants") {
    for (const auto scheme : {PilotScheme::reused_sets, PilotScheme::different_sets}) {
      const CapacityModel m(kGeometry, scheme, 42);
      for (const double s : grid(-5, 40, 2.5))
        for (const int w : kReuseFactors) {
          const auto r = m.for_reuse(QosTarget::from_db(s, 0.05), w);
          CHECK(r.effective_interference >= r.tier1.mu_y);
          CHECK(r.k_u == doctest::Approx(r.n_max / 6.0));
          CHECK(r.k_max >= 0);
          CHECK(r.k_max <= 42 / w);
          CHECK(r.pilot_budget == 42 / w);
          if (scheme == PilotScheme::different_sets)
            CHECK(r.k_max == std::min<int>(static_cast<int>(std::floor(r.k_u)), 42 / w));
          else
            CHECK(r.k_max == (r.n_max >= 6 ? 42 / w : 0));
        }
    }
  }

  TEST_CASE("pilot-limited regime at 0 dB") {
    for (const auto scheme : {PilotScheme::reused_sets, PilotScheme::different_sets}) {
      const auto r = capacity_for_reuse(kGeometry, scheme, QosTarget::from_db(0.0, 0.05), 42, 1);
      CHECK(r.k_max == 42);
      CHECK(best_reuse(kGeometry, scheme, QosTarget::from_db(0.0, 0.05), 42).chosen_reuse == 1);
    }
  }

  TEST_CASE("reused pilots just above 1 dB force reuse 3") {
    const auto q = QosTarget::from_db(1.5, 0.05);
    CHECK(capacity_for_reuse(kGeometry, PilotScheme::reused_sets, q, 42, 1).k_max == 0);
    const auto best = best_reuse(kGeometry, PilotScheme::reused_sets, q, 42);
    CHECK(best.chosen_reuse == 3);
    CHECK(best.k_max == 14);
  }

  TEST_CASE("different pilots stay pilot-limited to about 5 dB and fall below 14 near 9 dB") {
    const CapacityModel m(kGeometry, PilotScheme::different_sets, 42);
    const auto rows = capacity_sweep(m, grid(0, 15, 0.1), 0.05);
    const double last42 = last_sir_with_k_max(rows, 42);
    MESSAGE("k_max = 42 up to " << last42 << " dB");
    CHECK(last42 == doctest::Approx(5.0).epsilon(0.2));
    double first_below_14 = NAN;
    for (const auto& r : rows)
      if (r.per_reuse[0].k_u < 14.0) {
        first_below_14 = r.sir_db;
        break;
      }
    MESSAGE("k_u(w=1) < 14 from " << first_below_14 << " dB");
    CHECK(std::abs(first_below_14 - 9.0) <= 1.0);
  }

  TEST_CASE("switching points and scheme ordering at alpha = 0.05") {
    const auto g = grid(0, 40, 0.1);
    const CapacityModel reused(kGeometry, PilotScheme::reused_sets, 42);
    const CapacityModel different(kGeometry, PilotScheme::different_sets, 42);
    const auto rr = capacity_sweep(reused, g, 0.05), dr = capacity_sweep(different, g, 0.05);
    const auto rs = switching_points(rr), ds = switching_points(dr);
    REQUIRE(rs.size() == 2);
    REQUIRE(ds.size() == 2);
    CHECK(rs[0].from_reuse == 1);
    CHECK(rs[0].to_reuse == 3);
    CHECK(std::abs(rs[0].sir_db - 1.0) <= 1.0);
    CHECK(std::abs(rs[1].sir_db - 30.0) <= 2.0);
    CHECK(std::abs(ds[0].sir_db - 9.0) <= 1.0);
    CHECK(ds[1].to_reuse == 7);
    CHECK(std::abs(ds[1].sir_db - 35.0) <= 2.0);
    for (std::size_t i = 0; i < g.size(); ++i) CHECK(dr[i].best.k_max >= rr[i].best.k_max);
  }

  TEST_CASE("k_max is monotone in S and alpha") {
    for (const auto scheme : {PilotScheme::reused_sets, PilotScheme::different_sets}) {
      const CapacityModel m(kGeometry, scheme, 42);
      const double alphas[] = {0.2, 0.1, 0.05, 0.01, 0.001};
      for (const double s : grid(-5, 40, 0.5)) {
        int prev_alpha = 1 << 30;
        for (const double a : alphas) {
          const int k = m.best(QosTarget::from_db(s, a)).k_max;
          CHECK(k <= prev_alpha);
          prev_alpha = k;
          CHECK(m.best(QosTarget::from_db(s + 0.5, a)).k_max <= k);
        }
      }
    }
  }

  TEST_CASE("ties go to the smaller reuse factor") {
    // At very low SIR both w = 1 and w = 3 cannot beat the pilot budget of w = 1.
    const auto r = best_reuse(kGeometry, PilotScheme::different_sets, QosTarget::from_db(-10.0, 0.05), 42);
    CHECK(r.chosen_reuse == 1);
    // With K = 7 every reuse factor caps at floor(7 / w); w = 7 gives 1.
    const auto tiny = best_reuse(kGeometry, PilotScheme::different_sets, QosTarget::from_db(40.0, 0.05), 7);
    CHECK(tiny.k_max <= 1);
    if (tiny.k_max == 0) CHECK(tiny.chosen_reuse == 1);
  }

  TEST_CASE("two tiers only tighten the budget slightly") {
    CapacityOptions two;
    two.tiers = 2;
    const CapacityModel m1(kGeometry, PilotScheme::different_sets, 42);
    const CapacityModel m2(kGeometry, PilotScheme::different_sets, 42, two);
    for (const double s : grid(0, 30, 5)) {
      const auto q = QosTarget::from_db(s, 0.05);
      const auto a = m1.for_reuse(q, 1), b = m2.for_reuse(q, 1);
      CHECK(b.effective_interference >= a.effective_interference);
      CHECK(b.effective_interference <= a.effective_interference * 1.01);
    }
    CapacityOptions bad;
    bad.tiers = 0;
    CHECK_THROWS_AS(CapacityModel(kGeometry, PilotScheme::different_sets, 42, bad), std::invalid_argument);
  }

  TEST_CASE("cooperative admission") {
    NetworkGeometry g;
    g.reuse_factor = 1;
    const auto n_cells = build_layout(g).size();
    const long n_max = 12;
    std::vector<int> uniform(n_cells, static_cast<int>(n_max / 6));
    CHECK(cooperative_admission_check(uniform, g, n_max, 42));
    std::vector<int> over(n_cells, static_cast<int>(n_max / 6) + 1);
    CHECK_FALSE(cooperative_admission_check(over, g, n_max, 42));
    // One loaded cell, its tier-1 neighbours empty: still admissible.
    std::vector<int> skew(n_cells, 0);
    skew[0] = static_cast<int>(n_max);
    CHECK(cooperative_admission_check(skew, g, n_max, 42));
    std::vector<int> too_many(n_cells, 0);
    too_many[0] = 43;
    CHECK_THROWS_AS(cooperative_admission_check(too_many, g, 100, 42), std::invalid_argument);
    std::vector<int> negative(n_cells, 0);
    negative[3] = -1;
    CHECK_THROWS_AS(cooperative_admission_check(negative, g, 10, 42), std::invalid_argument);
    CHECK_THROWS_AS(cooperative_admission_check(std::vector<int>(3, 0), g, 10, 42), std::invalid_argument);
  }

  TEST_CASE("unsupported reuse factors are rejected") {
    CHECK_THROWS_AS(capacity_for_reuse(kGeometry, PilotScheme::reused_sets, QosTarget::from_db(0, 0.05), 42, 4),
                    std::invalid_argument);
    CHECK_THROWS_AS(capacity_for_reuse(kGeometry, PilotScheme::reused_sets, QosTarget::from_db(0, 0.05), 0, 1),
                    std::invalid_argument);
  }
}
