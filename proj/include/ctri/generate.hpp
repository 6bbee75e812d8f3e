#pragma once

// Seeded random point sets on small integer grids. Grids make collinear
// triples common, which is the point. Draws use mt19937_64 reduced modulo the
// bound so the output depends on nothing but the seed.

#include "ctri/geom.hpp"

#include <cstdint>
#include <random>
#include <set>

namespace ctri {

struct GenOptions {
  int n = 5;
  int grid = 5;
  bool equal_hull = false;
  std::optional<int> interior;  // exact interior count per set
  int max_retries = 100000;
};

namespace detail {

inline std::uint64_t draw(std::mt19937_64& rng, std::uint64_t bound) { return rng() % bound; }

inline bool all_collinear(const std::vector<Point>& pts) {
  for (std::size_t k = 2; k < pts.size(); ++k)
    if (orientation(pts[0], pts[1], pts[k]) != Orientation::Collinear) return false;
  return true;
}

inline std::vector<Point> sample_grid_points(std::mt19937_64& rng, int count, int grid) {
  std::set<std::pair<int, int>> used;
  std::vector<Point> pts;
  while (static_cast<int>(pts.size()) < count) {
    const int x = static_cast<int>(draw(rng, grid)), y = static_cast<int>(draw(rng, grid));
    if (used.emplace(x, y).second) pts.push_back({static_cast<int>(pts.size()) + 1, Coord(x), Coord(y)});
  }
  return pts;
}

inline std::optional<PointSet> try_uniform(std::mt19937_64& rng, int n, int grid) {
  auto pts = sample_grid_points(rng, n, grid);
  if (all_collinear(pts)) return std::nullopt;
  return PointSet(std::move(pts));
}

// Boundary points of a random cloud stay on the boundary of any subset's hull,
// so a random subset of them gives the hull; interior lattice points fill in.
inline std::optional<PointSet> try_with_interior(std::mt19937_64& rng, int n, int k, int grid) {
  const int h = n - k;
  const int cloud = std::min(grid * grid, std::max(3 * grid, 2 * n));
  PointSet c(sample_grid_points(rng, cloud, grid));
  if (all_collinear(c.points())) return std::nullopt;
  auto boundary = convex_hull_boundary(c).ids;
  if (static_cast<int>(boundary.size()) < h) return std::nullopt;
  std::sort(boundary.begin(), boundary.end());
  std::vector<Point> chosen;
  for (int i = 0; i < h; ++i) {
    const auto pick = static_cast<std::size_t>(draw(rng, boundary.size()));
    chosen.push_back(c.by_id(boundary[pick]));
    boundary.erase(boundary.begin() + static_cast<long>(pick));
  }
  if (all_collinear(chosen)) return std::nullopt;
  for (std::size_t i = 0; i < chosen.size(); ++i) chosen[i].id = static_cast<int>(i) + 1;
  PointSet hull_set(chosen);
  const auto hull = convex_hull_boundary(hull_set);
  std::vector<Point> inside;
  for (int x = 0; x < grid; ++x)
    for (int y = 0; y < grid; ++y) {
      Point p{0, Coord(x), Coord(y)};
      if (strictly_inside(hull_set, hull, p)) inside.push_back(p);
    }
  if (static_cast<int>(inside.size()) < k) return std::nullopt;
  for (int i = 0; i < k; ++i) {
    const auto pick = static_cast<std::size_t>(draw(rng, inside.size()));
    Point p = inside[pick];
    p.id = h + i + 1;
    chosen.push_back(p);
    inside.erase(inside.begin() + static_cast<long>(pick));
  }
  PointSet out(std::move(chosen));
  if (convex_hull_boundary(out).size() != static_cast<std::size_t>(h)) return std::nullopt;
  return out;
}

}  // namespace detail

/// One random set: n distinct points of the grid x grid lattice, not all
/// collinear, with ids 1..n.
inline PointSet generate_set(std::mt19937_64& rng, const GenOptions& opts) {
  if (opts.n < 3 || opts.grid < 2)
    throw Error(ErrorCode::PreconditionViolated, "need n >= 3 and grid >= 2");
  if (opts.n > opts.grid * opts.grid)
    throw Error(ErrorCode::Unsatisfiable, "grid has fewer than n points");
  if (opts.interior && (*opts.interior < 0 || opts.n - *opts.interior < 3))
    throw Error(ErrorCode::Unsatisfiable, "interior count leaves fewer than 3 hull points");
  for (int attempt = 0; attempt < opts.max_retries; ++attempt) {
    auto s = opts.interior ? detail::try_with_interior(rng, opts.n, *opts.interior, opts.grid)
                           : detail::try_uniform(rng, opts.n, opts.grid);
    if (s) return *s;
  }
  throw Error(ErrorCode::Unsatisfiable, "no point set met the constraints within the retry limit");
}

/// A pair of sets; with equal_hull, resampled until hull counts agree.
inline std::pair<PointSet, PointSet> generate_pair(std::mt19937_64& rng, const GenOptions& opts) {
  for (int attempt = 0; attempt < opts.max_retries; ++attempt) {
    auto p = generate_set(rng, opts);
    auto q = generate_set(rng, opts);
    if (!opts.equal_hull || convex_hull_boundary(p).size() == convex_hull_boundary(q).size()) {
      p.set_name("P");
      q.set_name("Q");
      return {std::move(p), std::move(q)};
    }
  }
  throw Error(ErrorCode::Unsatisfiable, "no equal-hull pair within the retry limit");
}

}  // namespace ctri
