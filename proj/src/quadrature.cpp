#include "mimocap/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "mimocap/kernels.hpp"

namespace mimocap {

GaussLegendreRule gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
  GaussLegendreRule rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[static_cast<std::size_t>(i)] = -x;
    rule.nodes[static_cast<std::size_t>(n - 1 - i)] = x;
    rule.weights[static_cast<std::size_t>(i)] = w;
    rule.weights[static_cast<std::size_t>(n - 1 - i)] = w;
  }
  return rule;
}

namespace {

// Nodes and weights of an n-panel composite rule on [lo, hi].
void composite(const GaussLegendreRule& rule, double lo, double hi, int panels,
               std::vector<double>& x, std::vector<double>& w) {
  const std::size_t m = rule.nodes.size();
  x.resize(m * static_cast<std::size_t>(panels));
  w.resize(x.size());
  const double h = (hi - lo) / panels;
  for (int p = 0; p < panels; ++p) {
    const double mid = lo + (p + 0.5) * h;
    for (std::size_t i = 0; i < m; ++i) {
      const std::size_t k = static_cast<std::size_t>(p) * m + i;
      x[k] = mid + 0.5 * h * rule.nodes[i];
      w[k] = 0.5 * h * rule.weights[i];
    }
  }
}

struct LevelSums {
  double mean;
  double variance;
};

LevelSums evaluate(const GaussLegendreRule& rule, double b, double d, double gamma, int panels,
                   double shift) {
  std::vector<double> r, wr, t, wt;
  composite(rule, 0.0, b, panels, r, wr);
  composite(rule, 0.0, std::numbers::pi, panels, t, wt);
  std::vector<double> num(r.size()), den(r.size()), v(r.size()), dev2(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) {
    num[i] = r[i] * r[i];
    wr[i] *= 2.0 * r[i] / (b * b);  // radial density folded into the weight
  }
  double s1 = 0.0, s2 = 0.0;
  for (std::size_t j = 0; j < t.size(); ++j) {
    const double c = 2.0 * d * std::cos(t[j]);
    for (std::size_t i = 0; i < r.size(); ++i) den[i] = num[i] + d * d - c * r[i];
    kernels::ratio_pow(num, den, gamma, v);
    for (std::size_t i = 0; i < r.size(); ++i) {
      const double e = v[i] - shift;
      v[i] = e;
      dev2[i] = e * e;
    }
    const double wj = wt[j] / std::numbers::pi;
    s1 += wj * kernels::dot(wr, v);
    s2 += wj * kernels::dot(wr, dev2);
  }
  // Shifted moments: E[v - c] and E[(v - c)^2].
  const double mean = shift + s1;
  return {mean, s2 - s1 * s1};
}

}  // namespace

CircleMoments circle_moments(double b, double d, double gamma, const QuadratureOptions& options) {
  if (!(b > 0.0) || !(d > b))
    throw std::invalid_argument("circle_moments: need 0 < circle radius < separation");
  if (!(gamma > 0.0)) throw std::invalid_argument("circle_moments: gamma must be positive");
  const auto rule = gauss_legendre(options.points_per_panel);
  LevelSums prev = evaluate(rule, b, d, gamma, 1, 0.0);
  CircleMoments out{prev.mean, prev.variance, 1, 1.0};
  for (int panels = 2; panels <= options.max_panels; panels *= 2) {
    const LevelSums cur = evaluate(rule, b, d, gamma, panels, prev.mean);
    const double dm = std::abs(cur.mean - prev.mean) / std::abs(cur.mean);
    const double dv = std::abs(cur.variance - prev.variance) / std::abs(cur.variance);
    out = {cur.mean, cur.variance, panels, std::max(dm, dv)};
    if (out.residual <= options.rel_tol) return out;
    prev = cur;
  }
  throw QuadratureError("circle_moments: no convergence to rel_tol " +
                            std::to_string(options.rel_tol) + " within " +
                            std::to_string(options.max_panels) + " panels",
                        out);
}

}  // namespace mimocap
