#pragma once

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

namespace mimocap {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

inline Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
inline Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
inline double norm2(Point p) { return p.x * p.x + p.y * p.y; }
inline double distance(Point a, Point b) { return std::sqrt(norm2(a - b)); }

struct Polar {
  double r = 0.0;
  double theta = 0.0;
};

enum class CircleMode { equal_area, radius_match };

/// Hexagonal layout. cell_radius_m is the hexagon circumradius; cells are
/// pointy-top with neighbouring centres sqrt(3) * cell_radius_m apart.
struct NetworkGeometry {
  double cell_radius_m = 1600.0;
  double hole_radius_m = 100.0;
  int reuse_factor = 1;
  int ring_count = 3;
  double path_loss_exponent = 4.0;
  bool wrap_around = false;

  /// Throws std::invalid_argument on any broken invariant.
  void validate() const;
};

bool supported_reuse(int w);

/// Axial lattice coordinates.
struct Hex {
  int q = 0;
  int r = 0;
};

int hex_ring(Hex h);
Point hex_center(Hex h, double cell_radius_m);

/// Frequency resource of a lattice cell under reuse w, in 1..w. The centre
/// cell always gets resource 1.
int reuse_resource(Hex h, int w);

struct Cell {
  Hex hex;
  Point center;
  int ring = 0;
  int resource = 1;
};

/// Centre cell first, then rings outward; 1 + 3R(R+1) cells.
std::vector<Cell> build_layout(const NetworkGeometry& geometry);

struct TierSpec {
  int tier_index = 1;
  int cell_count = 0;
  double separation_m = 0.0;
};

/// Co-channel tiers of the infinite lattice, independent of ring_count. The
/// first separation is cell_radius * sqrt(3w).
std::vector<TierSpec> tier_specs(const NetworkGeometry& geometry, int max_tier);

/// Tier of a co-channel displacement (1-based), or 0 if it is not one of the
/// first max_tier co-channel distances.
int tier_of(const std::vector<TierSpec>& tiers, double separation_m);

/// Displacement between two cells, taking the nearest periodic image when
/// wrap_around is on.
Point cell_offset(const NetworkGeometry& geometry, Hex from, Hex to);

/// Indices (into build_layout) of the co-channel cells of `cell` at the given
/// tier, honouring wrap_around.
std::vector<std::size_t> cochannel_cells(const NetworkGeometry& geometry,
                                         const std::vector<Cell>& layout,
                                         std::size_t cell, int tier);

struct CirclePatch {
  double circle_radius_m = 0.0;
  double separation_m = 0.0;
};

double circle_radius(const NetworkGeometry& geometry, CircleMode mode);
CirclePatch circle_approximation(const NetworkGeometry& geometry,
                                 const TierSpec& tier,
                                 CircleMode mode = CircleMode::equal_area);

inline bool inside_hexagon(Point p, double circumradius) {
  const double ax = std::abs(p.x);
  const double ay = std::abs(p.y);
  return ax <= 0.5 * std::numbers::sqrt3 * circumradius &&
         ay <= circumradius - ax / std::numbers::sqrt3;
}

/// Uniform over the disc of radius b: density 2r/b^2 on [0, b), theta uniform
/// on [0, pi).
template <class Rng>
Polar sample_in_circle(double b, Rng& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double r = b * std::sqrt(u(rng));
  const double theta = std::numbers::pi * u(rng);
  return {r, theta};
}

/// Uniform over the full disc as a planar offset from the BS.
template <class Rng>
Point sample_in_disc(double b, Rng& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double r = b * std::sqrt(u(rng));
  const double phi = 2.0 * std::numbers::pi * u(rng);
  return {r * std::cos(phi), r * std::sin(phi)};
}

/// Uniform over the hexagon of the given circumradius with the disc of radius
/// `hole` around the BS removed (rejection from the bounding box).
template <class Rng>
Point sample_in_hexagon(double circumradius, double hole, Rng& rng) {
  const double half_width = 0.5 * std::numbers::sqrt3 * circumradius;
  std::uniform_real_distribution<double> ux(-half_width, half_width);
  std::uniform_real_distribution<double> uy(-circumradius, circumradius);
  const double hole2 = hole * hole;
  for (;;) {
    const Point p{ux(rng), uy(rng)};
    if (inside_hexagon(p, circumradius) && norm2(p) >= hole2) return p;
  }
}

}  // namespace mimocap
