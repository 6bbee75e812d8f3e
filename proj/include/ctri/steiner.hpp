#pragma once

// Steiner points under a fixed full mapping. A Steiner point only matters
// through its orientation against every line through two input points, so
// one sample per cell of that line arrangement covers every placement.
//
// Cells are sampled by stepping a small exact distance from every vertex of
// the arrangement into each wedge around it. Every face of a line arrangement
// (with two non-parallel lines) has a vertex, so this reaches all of them
// once the step is below the distance to the nearest line not through the
// vertex; the step is found by exact halving.

#include "ctri/compat.hpp"

#include <map>
#include <mutex>

namespace ctri {

/// A line through two distinct points; signs follow orientation(a, b, x).
struct Line {
  Point a, b;
};

/// One representative point per cell, with its sign against every line.
struct CellSample {
  Point position;
  std::vector<std::int8_t> signature;
  bool inside = true;  // strictly inside the hull
};

namespace detail {

inline int line_sign(const Line& l, const Coord& x, const Coord& y) {
  return cross_sign(l.a.x, l.a.y, l.b.x, l.b.y, x, y);
}

inline Coord line_value(const Line& l, const Coord& x, const Coord& y) {
  return (l.b.x - l.a.x) * (y - l.a.y) - (l.b.y - l.a.y) * (x - l.a.x);
}

inline Coord line_slope_value(const Line& l, const Coord& dx, const Coord& dy) {
  return (l.b.x - l.a.x) * dy - (l.b.y - l.a.y) * dx;
}

inline std::optional<std::pair<Coord, Coord>> intersect(const Line& l, const Line& m) {
  const Coord dx = l.b.x - l.a.x, dy = l.b.y - l.a.y;
  const Coord ex = m.b.x - m.a.x, ey = m.b.y - m.a.y;
  const Coord denom = dx * ey - dy * ex;
  if (sgn(denom) == 0) return std::nullopt;
  const Coord t = ((m.a.x - l.a.x) * ey - (m.a.y - l.a.y) * ex) / denom;
  return std::make_pair(Coord(l.a.x + t * dx), Coord(l.a.y + t * dy));
}

struct Vec {
  Coord x, y;
};

inline bool angle_less(const Vec& a, const Vec& b) {
  auto half = [](const Vec& v) { return (sgn(v.y) > 0 || (sgn(v.y) == 0 && sgn(v.x) > 0)) ? 0 : 1; };
  if (half(a) != half(b)) return half(a) < half(b);
  return sgn(a.x * b.y - a.y * b.x) > 0;
}

}  // namespace detail

/// Distinct lines through pairs of points of s, each listed once (by its two
/// smallest-index points), in index order.
inline std::vector<Line> pair_lines(const PointSet& s) {
  std::vector<Line> out;
  const std::size_t n = s.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      bool smallest = true;
      for (std::size_t k = 0; k < j && smallest; ++k)
        smallest = k == i || orientation(s[i], s[j], s[k]) != Orientation::Collinear;
      if (smallest) out.push_back({s[i], s[j]});
    }
  return out;
}

/// One sample per face of the arrangement, sorted by signature. `keep`
/// filters sample positions (e.g. to the open hull interior). With
/// `audit`, every face is re-sampled at half the step and the signature
/// sets must agree.
template <class Keep>
std::vector<CellSample> arrangement_cells(const std::vector<Line>& lines, Keep&& keep, bool audit = true) {
  using detail::Vec;
  std::set<std::pair<Coord, Coord>> vertices;
  for (std::size_t i = 0; i < lines.size(); ++i)
    for (std::size_t j = i + 1; j < lines.size(); ++j)
      if (auto v = detail::intersect(lines[i], lines[j])) vertices.insert(*v);
  if (vertices.empty()) throw Error(ErrorCode::AllCollinear, "arrangement has no vertex");

  Coord lo_x = vertices.begin()->first, hi_x = lo_x, lo_y = vertices.begin()->second, hi_y = lo_y;
  for (const auto& [x, y] : vertices) {
    lo_x = std::min(lo_x, x);
    hi_x = std::max(hi_x, x);
    lo_y = std::min(lo_y, y);
    hi_y = std::max(hi_y, y);
  }
  Coord scale = std::max({Coord(hi_x - lo_x), Coord(hi_y - lo_y), Coord(1)}) / 16;

  static const int compass[8][2] = {{1, 0}, {1, 1}, {0, 1}, {-1, 1}, {-1, 0}, {-1, -1}, {0, -1}, {1, -1}};

  std::map<std::vector<std::int8_t>, CellSample> found;
  std::set<std::vector<std::int8_t>> audited;
  for (const auto& [bx, by] : vertices) {
    std::vector<Vec> dirs;
    for (const auto& c : compass) dirs.push_back({Coord(c[0]), Coord(c[1])});
    // One direction strictly inside each wedge between consecutive rays.
    std::vector<Vec> rays;
    for (const auto& l : lines)
      if (detail::line_sign(l, bx, by) == 0) {
        rays.push_back({l.b.x - l.a.x, l.b.y - l.a.y});
        rays.push_back({l.a.x - l.b.x, l.a.y - l.b.y});
      }
    std::sort(rays.begin(), rays.end(), detail::angle_less);
    for (std::size_t r = 0; r < rays.size(); ++r) {
      const Vec& a = rays[r];
      const Vec& b = rays[(r + 1) % rays.size()];
      dirs.push_back({a.x + b.x, a.y + b.y});
    }

    for (const auto& d : dirs) {
      // Largest admissible step: no line off the vertex changes sign.
      bool on_line = false;
      std::optional<Coord> limit;
      for (const auto& l : lines) {
        const Coord f0 = detail::line_value(l, bx, by);
        const Coord f1 = detail::line_slope_value(l, d.x, d.y);
        if (sgn(f0) == 0) {
          on_line = on_line || sgn(f1) == 0;
          continue;
        }
        if (sgn(f1) != 0 && sgn(f1) != sgn(f0)) {
          Coord bound = abs(f0 / f1);
          if (!limit || bound < *limit) limit = bound;
        }
      }
      if (on_line) continue;
      Coord eps = scale;
      while (limit && eps >= *limit) eps /= 2;

      auto sample = [&](const Coord& step) {
        CellSample c;
        c.position = {0, bx + step * d.x, by + step * d.y};
        c.signature.reserve(lines.size());
        for (const auto& l : lines)
          c.signature.push_back(static_cast<std::int8_t>(detail::line_sign(l, c.position.x, c.position.y)));
        return c;
      };
      CellSample c = sample(eps);
      if (!keep(c)) continue;
      if (audit) audited.insert(sample(eps / 2).signature);
      found.try_emplace(c.signature, std::move(c));
    }
  }

  std::vector<CellSample> out;
  out.reserve(found.size());
  for (auto& [sig, c] : found) out.push_back(std::move(c));
  if (audit) {
    std::set<std::vector<std::int8_t>> first;
    for (const auto& c : out) first.insert(c.signature);
    if (first != audited)
      throw Error(ErrorCode::InternalAssertionFailed, "cell signatures changed when the step was halved");
  }
  return out;
}

/// Cells of the arrangement of all pair lines of s. By default only cells in
/// the open hull interior; with `include_exterior`, all faces of the plane.
inline std::vector<CellSample> interior_cells(const PointSet& s, bool include_exterior = false) {
  const auto hull = convex_hull_boundary(s);
  const auto lines = pair_lines(s);
  return arrangement_cells(lines, [&](CellSample& c) {
    c.inside = strictly_inside(s, hull, c.position);
    return include_exterior || c.inside;
  });
}

enum class SteinerVerdict { Found, ExhaustedAllCells, Budget };

inline std::string_view to_string(SteinerVerdict v) {
  switch (v) {
    case SteinerVerdict::Found: return "Found";
    case SteinerVerdict::ExhaustedAllCells: return "ExhaustedAllCells";
    case SteinerVerdict::Budget: return "Budget";
  }
  return "?";
}

struct SteinerOptions {
  int k = 1;
  SearchOptions search;          // node budget per mapped check; wall clock overall
  bool allow_exterior = false;
  bool allow_redundant = false;  // search even if no Steiner point is needed
  bool must_break_crossings = true;  // k = 2: first point must reduce forced-edge conflicts
};

struct SteinerOutcome {
  SteinerVerdict verdict = SteinerVerdict::ExhaustedAllCells;
  std::vector<std::pair<Point, Point>> placements;  // (in P's plane, in Q's plane), ids assigned
  std::optional<Certificate> certificate;
  std::uint64_t pairs_examined = 0;  // cell pairs given to the mapped check
  std::uint64_t pairs_pruned = 0;    // first-level pairs skipped by must_break_crossings
  std::size_t cells_p = 0;
  std::size_t cells_q = 0;
  std::string detail;
};

struct Augmented {
  PointSet p, q;
  Correspondence phi;
};

/// Adds Steiner points to both sets with fresh ids (max id + 1, + 2, ...) and
/// extends the mapping.
inline Augmented augment(const PointSet& sP, const PointSet& sQ, const Correspondence& phi,
                         const std::vector<std::pair<Point, Point>>& placements) {
  std::vector<Point> p = sP.points(), q = sQ.points();
  Correspondence ext = phi;
  int next_p = sP.max_id(), next_q = sQ.max_id();
  for (auto [a, b] : placements) {
    a.id = ++next_p;
    b.id = ++next_q;
    p.push_back(a);
    q.push_back(b);
    ext.pairs.emplace_back(a.id, b.id);
  }
  std::sort(ext.pairs.begin(), ext.pairs.end());
  return {PointSet(std::move(p), sP.name()), PointSet(std::move(q), sQ.name()), std::move(ext)};
}

namespace detail {

inline void require_full_hull_mapping(const PointSet& sP, const PointSet& sQ, const Correspondence& phi) {
  const auto idx = index_mapping(sP, sQ, phi);
  if (!idx) throw Error(ErrorCode::PreconditionViolated, "mapping is not a bijection between the point sets");
  const OrderTable tP(sP), tQ(sQ);
  if (!hull_rotation_of(tP, tQ, *idx))
    throw Error(ErrorCode::PreconditionViolated, "mapping does not preserve the clockwise hull order");
}

}  // namespace detail

/// Searches k = 1 or 2 Steiner points (one per set, mapped to each other)
/// over every pair of cells. The reported solution is the first in canonical
/// cell order.
inline SteinerOutcome steiner_search(const PointSet& sP, const PointSet& sQ, const Correspondence& phi,
                                     const SteinerOptions& opts = {}) {
  if (opts.k != 1 && opts.k != 2) throw Error(ErrorCode::PreconditionViolated, "k must be 1 or 2");
  detail::require_full_hull_mapping(sP, sQ, phi);
  MappedOptions mapped;
  mapped.search = opts.search;
  mapped.search.budget_secs = 0;
  mapped.search.workers = 1;
  if (!opts.allow_redundant && compatible_under_full_mapping(sP, sQ, phi, mapped).verdict == Verdict::Compatible)
    throw Error(ErrorCode::PreconditionViolated, "already compatible without Steiner points");

  const auto deadline = detail::deadline_from(opts.search.budget_secs);
  const auto cellsP = interior_cells(sP, opts.allow_exterior);
  const auto cellsQ = interior_cells(sQ, opts.allow_exterior);
  SteinerOutcome out;
  out.cells_p = cellsP.size();
  out.cells_q = cellsQ.size();
  const std::size_t pairs = cellsP.size() * cellsQ.size();

  // Order tables depend on one side's placements only, so they are built
  // once per cell and shared by every pair using it.
  auto with_point = [](const PointSet& s, const Point& at) {
    return s.with({s.max_id() + 1, at.x, at.y});
  };
  auto sides_for = [&](const PointSet& s, const std::vector<CellSample>& cells) {
    std::vector<MappedSide> out;
    for (const auto& c : cells) out.push_back(mapped_side(with_point(s, c.position)));
    return out;
  };
  const auto sidesP = sides_for(sP, cellsP);
  const auto sidesQ = sides_for(sQ, cellsQ);
  auto extend = [](Correspondence c, const PointSet& a, const PointSet& b) {
    c.pairs.emplace_back(a.max_id() + 1, b.max_id() + 1);
    return c;
  };
  const Correspondence phi1 = extend(phi, sP, sQ);

  struct Slot {
    std::vector<std::pair<Point, Point>> placements;
    std::optional<Certificate> certificate;
    std::uint64_t examined = 0;
    bool pruned = false;
    bool budget = false;
  };
  std::vector<Slot> slots(pairs);
  FirstSuccess best;
  std::atomic<bool> out_of_time{false};

  auto check = [&](Slot& slot, const MappedSide& a, const MappedSide& b, const Correspondence& ext,
                   const std::vector<std::pair<Point, Point>>& placed) {
    ++slot.examined;
    auto r = compatible_under_full_mapping(a, b, ext, mapped);
    if (r.verdict == Verdict::Inconclusive) slot.budget = true;
    if (r.verdict != Verdict::Compatible) return false;
    slot.placements = placed;
    for (std::size_t i = 0; i < placed.size(); ++i) {
      slot.placements[i].first.id = sP.max_id() + static_cast<int>(i) + 1;
      slot.placements[i].second.id = sQ.max_id() + static_cast<int>(i) + 1;
    }
    slot.certificate = std::move(r.certificate);
    return true;
  };
  auto timed_out = [&] {
    if (deadline && detail::Clock::now() > *deadline) out_of_time = true;
    return out_of_time.load();
  };

  if (opts.k == 1) {
    parallel_for(pairs, opts.search.workers, [&](std::size_t t) {
      if (!best.worth_running(t) || timed_out()) return;
      const std::size_t i = t / cellsQ.size(), j = t % cellsQ.size();
      if (check(slots[t], sidesP[i], sidesQ[j], phi1, {{cellsP[i].position, cellsQ[j].position}}))
        best.offer(t);
    });
  } else {
    const int base_conflicts = opts.must_break_crossings ? forced_edge_conflicts(sP, sQ, phi) : 0;
    const Correspondence phi2 = extend(phi1, sidesP.front().s, sidesQ.front().s);
    // Second-level cells and sides per first-level cell, built on first use.
    struct Inner {
      std::vector<CellSample> cells;
      std::vector<MappedSide> sides;
    };
    std::vector<Inner> innerP(cellsP.size()), innerQ(cellsQ.size());
    std::vector<std::once_flag> onceP(cellsP.size()), onceQ(cellsQ.size());
    auto build = [&](const MappedSide& side, Inner& inner) {
      inner.cells = interior_cells(side.s, opts.allow_exterior);
      for (const auto& c : inner.cells) inner.sides.push_back(mapped_side(with_point(side.s, c.position)));
    };
    parallel_for(pairs, opts.search.workers, [&](std::size_t t) {
      if (!best.worth_running(t) || timed_out()) return;
      const std::size_t i = t / cellsQ.size(), j = t % cellsQ.size();
      Slot& slot = slots[t];
      if (opts.must_break_crossings && forced_edge_conflicts(sidesP[i], sidesQ[j], phi1) >= base_conflicts) {
        slot.pruned = true;
        return;
      }
      std::call_once(onceP[i], [&] { build(sidesP[i], innerP[i]); });
      std::call_once(onceQ[j], [&] { build(sidesQ[j], innerQ[j]); });
      const Inner& a = innerP[i];
      const Inner& b = innerQ[j];
      for (std::size_t x = 0; x < a.cells.size(); ++x)
        for (std::size_t y = 0; y < b.cells.size(); ++y) {
          if (!best.worth_running(t) || timed_out()) return;
          if (check(slot, a.sides[x], b.sides[y], phi2,
                    {{cellsP[i].position, cellsQ[j].position}, {a.cells[x].position, b.cells[y].position}})) {
            best.offer(t);
            return;
          }
        }
    });
  }

  for (const auto& s : slots) {
    out.pairs_examined += s.examined;
    out.pairs_pruned += s.pruned;
  }
  if (best.best() != FirstSuccess::kNone) {
    Slot& s = slots[best.best()];
    out.verdict = SteinerVerdict::Found;
    out.placements = std::move(s.placements);
    out.certificate = std::move(s.certificate);
    out.pairs_examined = 0;  // depends on scheduling once a solution exists
    out.pairs_pruned = 0;
    out.detail = "solution found";
    return out;
  }
  bool budget = out_of_time;
  for (const auto& s : slots) budget = budget || s.budget;
  if (budget) {
    out.verdict = SteinerVerdict::Budget;
    out.detail = out_of_time ? "wall-clock budget exhausted" : "a mapped check hit the node budget";
    return out;
  }
  out.verdict = SteinerVerdict::ExhaustedAllCells;
  out.detail = std::to_string(out.cells_p) + " x " + std::to_string(out.cells_q) + " cells, " +
               std::to_string(out.pairs_examined) + " placements checked";
  if (out.pairs_pruned)
    out.detail += ", " + std::to_string(out.pairs_pruned) + " first-level pairs pruned (no conflict removed)";
  return out;
}

/// Replays a Steiner solution: placements strictly inside both hulls, both
/// edge sets triangulate the augmented sets, and the extended mapping makes
/// them compatible.
inline bool verify_steiner_solution(const PointSet& sP, const PointSet& sQ, const Correspondence& phi,
                                    const std::vector<std::pair<Point, Point>>& placements,
                                    const Triangulation& tP, const Triangulation& tQ) {
  const auto hp = convex_hull_boundary(sP), hq = convex_hull_boundary(sQ);
  for (const auto& [a, b] : placements)
    if (!strictly_inside(sP, hp, a) || !strictly_inside(sQ, hq, b)) return false;
  try {
    auto aug = augment(sP, sQ, phi, placements);
    if (!is_triangulation(aug.p, tP.edges) || !is_triangulation(aug.q, tQ.edges)) return false;
    return are_compatible(aug.p, triangles_of(aug.p, tP.edges), aug.q, triangles_of(aug.q, tQ.edges), aug.phi);
  } catch (const Error&) {
    return false;
  }
}

}  // namespace ctri
