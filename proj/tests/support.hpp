#pragma once

// Shared fixtures and independent oracles for the test suites. Nothing here
// goes through OrderTable or the enumerator: the oracles work on raw rational
// predicates only.

#include "ctri/geom.hpp"
#include "ctri/tri.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <vector>

namespace ctri::testing {

inline PointSet make_set(std::initializer_list<std::pair<long, long>> xy, int first_id = 1) {
  std::vector<Point> pts;
  int id = first_id;
  for (auto [x, y] : xy) pts.push_back({id++, Coord(x), Coord(y)});
  return PointSet(std::move(pts));
}

inline PointSet convex_polygon(int n) {
  // Points on the parabola y = x^2: convex position, no three collinear.
  std::vector<Point> pts;
  for (int i = 0; i < n; ++i) pts.push_back({i + 1, Coord(i), Coord(i * i)});
  return PointSet(std::move(pts));
}

inline std::uint64_t draw(std::mt19937_64& rng, std::uint64_t bound) { return rng() % bound; }

/// n distinct points on a grid x grid lattice, not all collinear.
inline PointSet random_grid_set(std::mt19937_64& rng, int n, int grid) {
  for (;;) {
    std::set<std::pair<int, int>> used;
    std::vector<Point> pts;
    while (static_cast<int>(pts.size()) < n) {
      const int x = static_cast<int>(draw(rng, grid)), y = static_cast<int>(draw(rng, grid));
      if (!used.emplace(x, y).second) continue;
      pts.push_back({static_cast<int>(pts.size()) + 1, Coord(x), Coord(y)});
    }
    bool collinear = true;
    for (int k = 2; k < n && collinear; ++k)
      collinear = orientation(pts[0], pts[1], pts[k]) == Orientation::Collinear;
    if (!collinear) return PointSet(std::move(pts));
  }
}

/// A pair of random grid sets with equal size and equal hull boundary count.
inline std::pair<PointSet, PointSet> random_equal_hull_pair(std::mt19937_64& rng, int n, int grid) {
  for (;;) {
    auto p = random_grid_set(rng, n, grid);
    auto q = random_grid_set(rng, n, grid);
    if (convex_hull_boundary(p).size() == convex_hull_boundary(q).size()) return {p, q};
  }
}

/// Every maximal crossing-free subset of candidate edges, by plain subset DFS
/// with a direct maximality check (no edge-count shortcut).
inline std::set<std::vector<Edge>> naive_triangulations(const PointSet& s) {
  std::vector<Edge> cand;
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j) {
      bool blocked = false;
      for (std::size_t k = 0; k < s.size(); ++k)
        if (k != i && k != j && point_on_open_segment(s[k], s[i], s[j])) blocked = true;
      if (!blocked) cand.emplace_back(s[i].id, s[j].id);
    }
  const std::size_t m = cand.size();
  std::vector<std::vector<bool>> cross(m, std::vector<bool>(m, false));
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b)
      if (a != b)
        cross[a][b] = segments_cross(s.by_id(cand[a].u), s.by_id(cand[a].v), s.by_id(cand[b].u),
                                     s.by_id(cand[b].v));

  std::set<std::vector<Edge>> out;
  std::vector<std::size_t> chosen;
  auto compatible_with_chosen = [&](std::size_t e) {
    for (std::size_t c : chosen)
      if (cross[e][c]) return false;
    return true;
  };
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == m) {
      std::vector<bool> in(m, false);
      for (std::size_t c : chosen) in[c] = true;
      for (std::size_t e = 0; e < m; ++e)
        if (!in[e] && compatible_with_chosen(e)) return;  // not maximal
      std::vector<Edge> edges;
      for (std::size_t c : chosen) edges.push_back(cand[c]);
      std::sort(edges.begin(), edges.end());
      out.insert(edges);
      return;
    }
    if (compatible_with_chosen(i)) {
      chosen.push_back(i);
      rec(i + 1);
      chosen.pop_back();
    }
    rec(i + 1);
  };
  rec(0);
  return out;
}

/// Candidate edges only, pairwise non-crossing, and nothing more can be added.
inline bool naive_is_triangulation(const PointSet& s, const std::vector<Edge>& edges) {
  auto candidate = [&](int a, int b) {
    for (const auto& p : s)
      if (point_on_open_segment(p, s.by_id(a), s.by_id(b))) return false;
    return true;
  };
  auto crosses = [&](const Edge& e, const Edge& f) {
    return segments_cross(s.by_id(e.u), s.by_id(e.v), s.by_id(f.u), s.by_id(f.v));
  };
  std::set<Edge> in;
  for (const auto& e : edges) {
    if (!s.contains(e.u) || !s.contains(e.v) || !candidate(e.u, e.v) || !in.insert(e).second) return false;
  }
  for (const auto& e : edges)
    for (const auto& f : edges)
      if (e < f && crosses(e, f)) return false;
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j) {
      const Edge g(s[i].id, s[j].id);
      if (in.count(g) || !candidate(g.u, g.v)) continue;
      bool blocked = false;
      for (const auto& e : edges) blocked = blocked || crosses(e, g);
      if (!blocked) return false;
    }
  return true;
}

/// Faces of an edge set: triangles of edges with no other point in the closed
/// triangle, as clockwise triples rotated to start at the smallest id.
inline std::set<std::array<int, 3>> naive_faces(const PointSet& s, const std::vector<Edge>& edges) {
  std::set<Edge> in(edges.begin(), edges.end());
  std::set<std::array<int, 3>> out;
  for (const auto& e : edges)
    for (const auto& p : s) {
      const int c = p.id;
      if (c == e.u || c == e.v || !in.count(Edge(e.u, c)) || !in.count(Edge(e.v, c))) continue;
      const Point &A = s.by_id(e.u), &B = s.by_id(e.v), &C = p;
      const auto o = orientation(A, B, C);
      if (o == Orientation::Collinear) continue;
      const auto away = o == Orientation::Clockwise ? Orientation::Counterclockwise : Orientation::Clockwise;
      bool empty = true;
      for (const auto& x : s) {
        if (x.id == e.u || x.id == e.v || x.id == c) continue;
        const auto o1 = orientation(A, B, x), o2 = orientation(B, C, x), o3 = orientation(C, A, x);
        const bool outside = o1 == away || o2 == away || o3 == away;
        if (!outside) empty = false;
      }
      if (!empty) continue;
      std::array<int, 3> t = o == Orientation::Clockwise ? std::array<int, 3>{e.u, e.v, c}
                                                         : std::array<int, 3>{e.u, c, e.v};
      std::rotate(t.begin(), std::min_element(t.begin(), t.end()), t.end());
      out.insert(t);
    }
  return out;
}

/// Both edge sets triangulate their sets and the bijection carries clockwise
/// faces of P exactly onto clockwise faces of Q.
inline bool naive_compatible(const PointSet& sP, const std::vector<Edge>& eP, const PointSet& sQ,
                             const std::vector<Edge>& eQ, const std::vector<std::pair<int, int>>& phi) {
  if (sP.size() != sQ.size() || phi.size() != sP.size()) return false;
  if (!naive_is_triangulation(sP, eP) || !naive_is_triangulation(sQ, eQ)) return false;
  std::map<int, int> f;
  std::set<int> image;
  for (auto [a, b] : phi) {
    if (!sP.contains(a) || !sQ.contains(b) || !f.emplace(a, b).second || !image.insert(b).second) return false;
  }
  std::set<std::array<int, 3>> mapped;
  for (auto t : naive_faces(sP, eP)) {
    std::array<int, 3> m{f[t[0]], f[t[1]], f[t[2]]};
    std::rotate(m.begin(), std::min_element(m.begin(), m.end()), m.end());
    mapped.insert(m);
  }
  return mapped == naive_faces(sQ, eQ);
}

}  // namespace ctri::testing
