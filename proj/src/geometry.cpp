#include "mimocap/geometry.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <stdexcept>
#include <string>

namespace mimocap {
namespace {

constexpr std::array<Hex, 6> kDirections{{{1, 0}, {1, -1}, {0, -1}, {-1, 0}, {-1, 1}, {0, 1}}};

// q^2 + qr + r^2: squared centre distance in units of (sqrt(3) a)^2.
inline long loeschian(Hex h) {
  return static_cast<long>(h.q) * h.q + static_cast<long>(h.q) * h.r +
         static_cast<long>(h.r) * h.r;
}

inline Hex rotate60(Hex h) { return {-h.r, h.q + h.r}; }

// Periodic translations of a ring-R hexagonal cluster.
std::array<Hex, 6> cluster_translations(int rings) {
  std::array<Hex, 6> out{};
  Hex t{2 * rings + 1, -rings};
  for (auto& o : out) {
    o = t;
    t = rotate60(t);
  }
  return out;
}

}  // namespace

bool supported_reuse(int w) { return w == 1 || w == 3 || w == 7; }

void NetworkGeometry::validate() const {
  if (!(cell_radius_m > 0.0)) throw std::invalid_argument("cell_radius_m must be positive");
  if (!(hole_radius_m >= 0.0 && hole_radius_m < cell_radius_m))
    throw std::invalid_argument("hole_radius_m must satisfy 0 <= hole < cell_radius_m");
  if (!supported_reuse(reuse_factor))
    throw std::invalid_argument("reuse_factor " + std::to_string(reuse_factor) +
                                " unsupported; expected one of 1, 3, 7");
  if (ring_count < 1) throw std::invalid_argument("ring_count must be >= 1");
  if (!(path_loss_exponent > 2.0))
    throw std::invalid_argument("path_loss_exponent must exceed 2");
  if (wrap_around) {
    // The cluster translation must map the reuse pattern onto itself.
    for (const Hex t : cluster_translations(ring_count)) {
      if (reuse_resource(t, reuse_factor) != 1)
        throw std::invalid_argument("wrap_around: a " + std::to_string(ring_count) +
                                    "-ring cluster cannot tile reuse " +
                                    std::to_string(reuse_factor));
    }
  }
}

int hex_ring(Hex h) { return std::max({std::abs(h.q), std::abs(h.r), std::abs(h.q + h.r)}); }

Point hex_center(Hex h, double a) {
  return {std::numbers::sqrt3 * a * (h.q + 0.5 * h.r), 1.5 * a * h.r};
}

int reuse_resource(Hex h, int w) {
  // Colourings whose kernel is the co-channel sublattice spanned by (1,1)
  // for w = 3 and (2,1) for w = 7, together with their 60 degree rotations.
  auto mod = [](long v, long m) { return static_cast<int>(((v % m) + m) % m); };
  switch (w) {
    case 1: return 1;
    case 3: return 1 + mod(h.q + 2L * h.r, 3);
    case 7: return 1 + mod(3L * h.q + h.r, 7);
  }
  throw std::invalid_argument("reuse_factor " + std::to_string(w) +
                              " unsupported; expected one of 1, 3, 7");
}

std::vector<Cell> build_layout(const NetworkGeometry& geometry) {
  geometry.validate();
  const int w = geometry.reuse_factor;
  std::vector<Cell> cells;
  cells.reserve(1 + 3 * geometry.ring_count * (geometry.ring_count + 1));
  cells.push_back({{0, 0}, {0.0, 0.0}, 0, reuse_resource({0, 0}, w)});
  for (int ring = 1; ring <= geometry.ring_count; ++ring) {
    // Walk the ring starting from ring * direction 4.
    Hex h{kDirections[4].q * ring, kDirections[4].r * ring};
    for (const Hex d : kDirections) {
      for (int step = 0; step < ring; ++step) {
        cells.push_back({h, hex_center(h, geometry.cell_radius_m), ring, reuse_resource(h, w)});
        h = {h.q + d.q, h.r + d.r};
      }
    }
  }
  return cells;
}

std::vector<TierSpec> tier_specs(const NetworkGeometry& geometry, int max_tier) {
  geometry.validate();
  if (max_tier < 1) throw std::invalid_argument("max_tier must be >= 1");
  const int w = geometry.reuse_factor;
  // loeschian(h) >= 3/4 ring(h)^2, so every co-channel cell with
  // loeschian <= limit sits within `extent` rings.
  const int extent = 4 * (max_tier + 2) * static_cast<int>(std::ceil(std::sqrt(w)));
  const long limit = 3L * extent * extent / 4;
  std::map<long, int> counts;
  for (int q = -extent; q <= extent; ++q) {
    for (int r = -extent; r <= extent; ++r) {
      const Hex h{q, r};
      const long n = loeschian(h);
      if (n == 0 || n > limit || reuse_resource(h, w) != 1) continue;
      ++counts[n];
    }
  }
  std::vector<TierSpec> tiers;
  for (const auto& [n, count] : counts) {
    if (static_cast<int>(tiers.size()) == max_tier) break;
    tiers.push_back({static_cast<int>(tiers.size()) + 1, count,
                     std::numbers::sqrt3 * geometry.cell_radius_m * std::sqrt(static_cast<double>(n))});
  }
  if (static_cast<int>(tiers.size()) < max_tier)
    throw std::logic_error("tier_specs: enumeration window too small");
  return tiers;
}

int tier_of(const std::vector<TierSpec>& tiers, double separation_m) {
  for (const auto& t : tiers) {
    if (std::abs(separation_m - t.separation_m) <= 1e-9 * t.separation_m) return t.tier_index;
  }
  return 0;
}

Point cell_offset(const NetworkGeometry& geometry, Hex from, Hex to) {
  Hex d{to.q - from.q, to.r - from.r};
  if (geometry.wrap_around) {
    Hex best = d;
    for (const Hex t : cluster_translations(geometry.ring_count)) {
      const Hex c{d.q + t.q, d.r + t.r};
      if (loeschian(c) < loeschian(best)) best = c;
    }
    d = best;
  }
  return hex_center(d, geometry.cell_radius_m);
}

std::vector<std::size_t> cochannel_cells(const NetworkGeometry& geometry,
                                         const std::vector<Cell>& layout,
                                         std::size_t cell, int tier) {
  if (cell >= layout.size()) throw std::out_of_range("cochannel_cells: cell index");
  const auto tiers = tier_specs(geometry, tier);
  const double target = tiers.back().separation_m;
  std::vector<std::size_t> out;
  for (std::size_t l = 0; l < layout.size(); ++l) {
    if (l == cell || layout[l].resource != layout[cell].resource) continue;
    const double d = std::sqrt(norm2(cell_offset(geometry, layout[cell].hex, layout[l].hex)));
    if (std::abs(d - target) <= 1e-9 * target) out.push_back(l);
  }
  return out;
}

double circle_radius(const NetworkGeometry& geometry, CircleMode mode) {
  if (mode == CircleMode::radius_match) return geometry.cell_radius_m;
  // Hexagon area (3 sqrt(3) / 2) a^2 equals pi b^2.
  return geometry.cell_radius_m * std::sqrt(3.0 * std::numbers::sqrt3 / (2.0 * std::numbers::pi));
}

CirclePatch circle_approximation(const NetworkGeometry& geometry, const TierSpec& tier,
                                 CircleMode mode) {
  CirclePatch patch{circle_radius(geometry, mode), tier.separation_m};
  if (!(patch.circle_radius_m < patch.separation_m))
    throw std::invalid_argument("circle patch would contain the BS of interest");
  return patch;
}

}  // namespace mimocap
