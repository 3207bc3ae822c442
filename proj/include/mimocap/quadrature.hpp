#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace mimocap {

struct GaussLegendreRule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule, nodes by Newton iteration on P_n.
GaussLegendreRule gauss_legendre(int n);

struct QuadratureOptions {
  double rel_tol = 1e-8;
  int max_panels = 512;  // per axis
  int points_per_panel = 16;
};

struct CircleMoments {
  double mean = 0.0;
  double variance = 0.0;
  int panels = 0;         // per axis at acceptance
  double residual = 0.0;  // relative change over the last doubling
};

class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, CircleMoments last)
      : std::runtime_error(what), last_(last) {}
  const CircleMoments& last_estimate() const { return last_; }
  double residual() const { return last_.residual; }

 private:
  CircleMoments last_;
};

/// Mean and variance of v(r, theta) = (r^2 / (r^2 + d^2 - 2 d r cos theta))^gamma
/// for r with density 2r/b^2 on [0, b) and theta uniform on [0, pi).
///
/// Composite tensor Gauss-Legendre; the panel count per axis doubles until
/// both moments change by at most rel_tol between levels.
CircleMoments circle_moments(double b, double d, double gamma,
                             const QuadratureOptions& options = {});

}  // namespace mimocap
