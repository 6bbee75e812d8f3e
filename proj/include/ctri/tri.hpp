#pragma once

// Triangulations of point sets with collinearities.

#include "ctri/order_table.hpp"

#include <array>
#include <chrono>
#include <optional>
#include <cstdint>
#include <functional>
#include <map>
#include <set>

namespace ctri {

/// Unordered pair of point ids, stored with u < v.
struct Edge {
  int u = 0;
  int v = 0;

  Edge() = default;
  Edge(int a, int b) : u(std::min(a, b)), v(std::max(a, b)) {}

  auto operator<=>(const Edge&) const = default;
};

inline std::string to_string(const Edge& e) {
  return std::to_string(e.u) + "-" + std::to_string(e.v);
}

/// Triangle as three ids in clockwise order, rotated so the smallest id leads.
using Triangle = std::array<int, 3>;

inline Triangle canonical_triangle(int a, int b, int c) {
  if (b < a && b < c) return {b, c, a};
  if (c < a && c < b) return {c, a, b};
  return {a, b, c};
}

struct Triangulation {
  std::vector<Edge> edges;          // sorted
  std::vector<Triangle> triangles;  // clockwise, sorted
  // rotation[i]: neighbours of the i-th point (PointSet order) in clockwise
  // angular order, starting from the smallest neighbour id.
  std::vector<std::vector<int>> rotation;

  std::size_t degree(std::size_t index) const { return rotation[index].size(); }
};

inline std::vector<Edge> candidate_edges(const PointSet& s) {
  std::vector<Edge> out;
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j) {
      bool blocked = false;
      for (std::size_t k = 0; k < s.size() && !blocked; ++k)
        blocked = k != i && k != j && point_on_open_segment(s[k], s[i], s[j]);
      if (!blocked) out.emplace_back(s[i].id, s[j].id);
    }
  return out;
}

namespace detail {

inline std::vector<std::pair<int, int>> to_indices(const PointSet& s, const std::vector<Edge>& edges) {
  std::vector<std::pair<int, int>> out;
  out.reserve(edges.size());
  for (const auto& e : edges) {
    const int a = s.index_of(e.u), b = s.index_of(e.v);
    out.emplace_back(std::min(a, b), std::max(a, b));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Sorts the neighbours of `center` clockwise, starting at the first entry
// (callers pass them sorted by id so the smallest id leads).
inline void sort_clockwise(const OrderTable& t, int center, std::vector<int>& nbrs) {
  if (nbrs.size() < 2) return;
  const int ref = nbrs.front();
  auto group = [&](int x) {
    if (x == ref) return 0;
    const int o = t.orient(center, ref, x);
    if (o < 0) return 1;   // within (0, 180) degrees clockwise of ref
    if (o == 0) return 2;  // straight opposite
    return 3;
  };
  std::sort(nbrs.begin() + 1, nbrs.end(), [&](int a, int b) {
    const int ga = group(a), gb = group(b);
    if (ga != gb) return ga < gb;
    return t.orient(center, a, b) < 0;
  });
}

// Builds rotation system and faces from an index edge set already known to be
// a triangulation. Throws NonTriangularFace on any inner face of length != 3.
inline Triangulation assemble(const PointSet& s, const OrderTable& t,
                              const std::vector<std::pair<int, int>>& idx_edges) {
  const int n = t.size();
  std::vector<std::vector<int>> nbrs(n);
  for (auto [a, b] : idx_edges) {
    nbrs[a].push_back(b);
    nbrs[b].push_back(a);
  }
  // Position of each neighbour within its rotation, for O(1) face stepping.
  std::vector<int> slot(static_cast<std::size_t>(n) * n, -1);
  for (int v = 0; v < n; ++v) {
    std::sort(nbrs[v].begin(), nbrs[v].end());
    sort_clockwise(t, v, nbrs[v]);
    for (std::size_t k = 0; k < nbrs[v].size(); ++k) slot[v * n + nbrs[v][k]] = static_cast<int>(k);
  }

  // The face to the right of u->v continues to the neighbour of v that
  // precedes u in v's clockwise rotation.
  auto step = [&](int u, int v) {
    const auto& r = nbrs[v];
    const int k = slot[v * n + u];
    return r[(k + r.size() - 1) % r.size()];
  };

  const auto& hull = t.hull();
  const int outer_u = hull[1], outer_v = hull[0];

  std::vector<std::uint8_t> seen(static_cast<std::size_t>(n) * n, 0);
  auto mark_face = [&](int u, int v, std::vector<int>& cycle) {
    cycle.clear();
    int a = u, b = v;
    do {
      seen[a * n + b] = 1;
      cycle.push_back(a);
      const int c = step(a, b);
      a = b;
      b = c;
      if (cycle.size() > static_cast<std::size_t>(2 * idx_edges.size() + 2))
        throw Error(ErrorCode::NonTriangularFace, "face walk does not close");
    } while (a != u || b != v);
  };

  Triangulation out;
  std::vector<int> cycle;
  if (t.is_candidate(outer_u, outer_v) && slot[outer_v * n + outer_u] >= 0) mark_face(outer_u, outer_v, cycle);
  else throw Error(ErrorCode::NonTriangularFace, "hull edge missing");

  for (int u = 0; u < n; ++u)
    for (int v : nbrs[u]) {
      if (seen[u * n + v]) continue;
      mark_face(u, v, cycle);
      if (cycle.size() != 3 || t.orient(cycle[0], cycle[1], cycle[2]) >= 0)
        throw Error(ErrorCode::NonTriangularFace,
                    "inner face of length " + std::to_string(cycle.size()) + " at point " +
                        std::to_string(s[u].id));
      out.triangles.push_back(canonical_triangle(s[cycle[0]].id, s[cycle[1]].id, s[cycle[2]].id));
    }
  std::sort(out.triangles.begin(), out.triangles.end());

  for (auto [a, b] : idx_edges) out.edges.emplace_back(s[a].id, s[b].id);
  std::sort(out.edges.begin(), out.edges.end());

  out.rotation.resize(n);
  for (int v = 0; v < n; ++v)
    for (int w : nbrs[v]) out.rotation[v].push_back(s[w].id);
  return out;
}

inline bool is_triangulation_indices(const OrderTable& t, const std::vector<std::pair<int, int>>& e) {
  if (static_cast<int>(e.size()) != t.target_edges()) return false;
  for (auto [a, b] : e)
    if (!t.is_candidate(a, b)) return false;
  for (std::size_t i = 0; i < e.size(); ++i)
    for (std::size_t j = i + 1; j < e.size(); ++j)
      if (t.crossing(t.edge_index(e[i].first, e[i].second))
              .test(t.edge_index(e[j].first, e[j].second)))
        return false;
  return true;
}

}  // namespace detail

/// Candidate edges only, pairwise non-crossing, and exactly 3n - 3 - h of them.
inline bool is_triangulation(const PointSet& s, const std::vector<Edge>& edges) {
  const auto idx = detail::to_indices(s, edges);
  if (idx.size() != edges.size()) return false;  // repeated edge
  const OrderTable table(s);
  return detail::is_triangulation_indices(table, idx);
}

inline Triangulation triangles_of(const PointSet& s, const std::vector<Edge>& edges) {
  const OrderTable table(s);
  return detail::assemble(s, table, detail::to_indices(s, edges));
}

struct EnumOptions {
  std::uint64_t budget_nodes = 10'000'000;
  std::vector<Edge> required;  // included in every result
};

struct EnumStats {
  std::uint64_t nodes = 0;
};

namespace detail {

// Edges indexed 0..m-1 with their pairwise conflicts; a leaf is any
// conflict-free subset of size `target`.
struct EdgeSystem {
  std::vector<EdgeMask> crossing;
  int target = 0;

  int size() const { return static_cast<int>(crossing.size()); }
};

inline EdgeSystem edge_system(const OrderTable& t) {
  EdgeSystem sys;
  for (int e = 0; e < t.edge_count(); ++e) sys.crossing.push_back(t.crossing(e));
  sys.target = t.target_edges();
  return sys;
}

// Include-first DFS over candidate edges in lexicographic order. A crossing
// free set reaching 3n - 3 - h edges is maximal, so leaves are exactly the
// triangulations and each is produced once.
class Enumerator {
 public:
  using Visit = std::function<bool(const EdgeMask&)>;  // false stops the walk
  using Clock = std::chrono::steady_clock;

  Enumerator(const EdgeSystem& sys, std::uint64_t budget,
             std::optional<Clock::time_point> deadline = std::nullopt)
      : sys_(sys), budget_(budget), deadline_(deadline) {
    const int m = sys_.size();
    suffix_.assign(m + 1, EdgeMask{});
    for (int i = m - 1; i >= 0; --i) {
      suffix_[i] = suffix_[i + 1];
      suffix_[i].set(i);
    }
  }

  std::uint64_t nodes() const { return nodes_; }

  /// Returns false when the visitor stopped the walk early.
  bool run(const EdgeMask& required, const Visit& visit) {
    EdgeMask blocked;
    int count = 0;
    for (int e = 0; e < sys_.size(); ++e)
      if (required.test(e)) {
        if (blocked.test(e)) return true;  // required edges conflict: nothing to emit
        blocked |= sys_.crossing[e];
        ++count;
      }
    visit_ = &visit;
    stopped_ = false;
    dfs(0, required, blocked, count);
    return !stopped_;
  }

 private:
  void dfs(int i, const EdgeMask& chosen, const EdgeMask& blocked, int count) {
    if (stopped_) return;
    if (++nodes_ > budget_)
      throw Error(ErrorCode::BudgetExceeded,
                  "enumeration exceeded " + std::to_string(budget_) + " nodes");
    if (deadline_ && (nodes_ & 0xfff) == 0 && Clock::now() > *deadline_)
      throw Error(ErrorCode::BudgetExceeded, "wall-clock budget exhausted");
    const int target = sys_.target;
    if (count == target) {
      if (!(*visit_)(chosen)) stopped_ = true;
      return;
    }
    const int m = sys_.size();
    while (i < m && (chosen.test(i) || blocked.test(i))) ++i;
    if (i == m) return;
    const EdgeMask open = suffix_[i] & ~blocked & ~chosen;
    if (count + static_cast<int>(open.count()) < target) return;

    EdgeMask with = chosen;
    with.set(i);
    dfs(i + 1, with, blocked | sys_.crossing[i], count + 1);
    dfs(i + 1, chosen, blocked, count);
  }

  const EdgeSystem& sys_;
  std::uint64_t budget_;
  std::optional<Clock::time_point> deadline_;
  std::uint64_t nodes_ = 0;
  std::vector<EdgeMask> suffix_;
  const Visit* visit_ = nullptr;
  bool stopped_ = false;
};

inline std::vector<std::pair<int, int>> mask_edges(const OrderTable& t, const EdgeMask& m) {
  std::vector<std::pair<int, int>> out;
  for (int e = 0; e < t.edge_count(); ++e)
    if (m.test(e)) out.push_back(t.candidates()[e]);
  return out;
}

// Returns false (no triangulation possible) when a required edge is not a
// candidate edge.
inline bool required_mask(const PointSet& s, const OrderTable& t, const std::vector<Edge>& req,
                          EdgeMask& out) {
  out.reset();
  for (auto [a, b] : to_indices(s, req)) {
    const int e = t.edge_index(a, b);
    if (e < 0) return false;
    out.set(e);
  }
  return true;
}

}  // namespace detail

/// All triangulations in canonical (include-first lexicographic DFS) order.
inline std::vector<Triangulation> enumerate_triangulations(const PointSet& s,
                                                           const EnumOptions& opts = {},
                                                           EnumStats* stats = nullptr) {
  const OrderTable table(s);
  std::vector<Triangulation> out;
  EdgeMask required;
  if (!detail::required_mask(s, table, opts.required, required)) return out;
  const detail::EdgeSystem sys = detail::edge_system(table);
  detail::Enumerator walk(sys, opts.budget_nodes);
  walk.run(required, [&](const EdgeMask& m) {
    out.push_back(detail::assemble(s, table, detail::mask_edges(table, m)));
    return true;
  });
  if (stats) stats->nodes = walk.nodes();
  return out;
}

/// Candidate edges whose interior no other candidate edge crosses.
inline std::vector<Edge> forced_edges_claim1(const PointSet& s) {
  const OrderTable table(s);
  std::vector<Edge> out;
  for (int e = 0; e < table.edge_count(); ++e)
    if (table.crossing(e).none()) {
      auto [a, b] = table.candidates()[e];
      out.emplace_back(s[a].id, s[b].id);
    }
  return out;
}

/// For each hull point p: interior points that reach the hull once p is removed
/// are joined to p. Removals that leave a collinear remainder contribute nothing.
inline std::vector<Edge> forced_edges_claim2(const PointSet& s) {
  const HullSequence hull = convex_hull_boundary(s);
  const OrderTable table(s);
  std::set<Edge> out;
  for (int p : hull.ids) {
    std::vector<Point> rest;
    for (const auto& q : s)
      if (q.id != p) rest.push_back(q);
    HullSequence reduced;
    try {
      reduced = convex_hull_boundary(PointSet(rest));
    } catch (const Error& e) {
      if (e.code() == ErrorCode::AllCollinear) continue;
      throw;
    }
    for (int q : reduced.ids)
      if (!hull.contains(q) && table.is_candidate(s.index_of(p), s.index_of(q)))
        out.emplace(p, q);
  }
  return {out.begin(), out.end()};
}

/// Degrees of the hull points, in clockwise hull order.
inline std::vector<int> hull_degree_sequence(const PointSet& s, const Triangulation& t) {
  const HullSequence hull = convex_hull_boundary(s);
  std::vector<int> out;
  for (int id : hull.ids) out.push_back(static_cast<int>(t.degree(s.index_of(id))));
  return out;
}

inline std::size_t max_degree(const Triangulation& t) {
  std::size_t best = 0;
  for (const auto& r : t.rotation) best = std::max(best, r.size());
  return best;
}

}  // namespace ctri
