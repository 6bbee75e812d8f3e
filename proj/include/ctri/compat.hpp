#pragma once

// The compatibility relation between triangulations of two point sets, and
// the exhaustive searches that decide it.

#include "ctri/parallel.hpp"
#include "ctri/tri.hpp"

#include <chrono>
#include <deque>
#include <numeric>
#include <optional>
#include <sstream>

namespace ctri {

/// Bijection P -> Q given as (P id, Q id) pairs sorted by P id.
struct Correspondence {
  std::vector<std::pair<int, int>> pairs;
  int hull_rotation = 0;  // P hull[i] maps to Q hull[i + hull_rotation]

  std::optional<int> image(int p) const {
    auto it = std::lower_bound(pairs.begin(), pairs.end(), std::make_pair(p, INT32_MIN));
    if (it == pairs.end() || it->first != p) return std::nullopt;
    return it->second;
  }

  Correspondence inverse() const {
    Correspondence inv;
    for (auto [p, q] : pairs) inv.pairs.emplace_back(q, p);
    std::sort(inv.pairs.begin(), inv.pairs.end());
    return inv;
  }

  bool operator==(const Correspondence&) const = default;
};

struct Constraints {
  std::vector<std::pair<int, int>> pinned;  // partial mapping, P id -> Q id
  std::vector<Edge> required_p;
  std::vector<Edge> required_q;

  bool empty() const { return pinned.empty() && required_p.empty() && required_q.empty(); }
};

enum class Verdict { Compatible, Incompatible, Inconclusive };

inline std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Compatible: return "Compatible";
    case Verdict::Incompatible: return "Incompatible";
    case Verdict::Inconclusive: return "Inconclusive";
  }
  return "?";
}

enum class EvidenceKind {
  None,
  SizeMismatch,
  HullCountMismatch,
  NotHullPreserving,
  NoTriangulation,
  DegreeSequenceMismatch,
  ForcedEdgeCrossing,
  ExhaustedSearch,
  Budget,
};

inline std::string_view to_string(EvidenceKind k) {
  switch (k) {
    case EvidenceKind::None: return "None";
    case EvidenceKind::SizeMismatch: return "SizeMismatch";
    case EvidenceKind::HullCountMismatch: return "HullCountMismatch";
    case EvidenceKind::NotHullPreserving: return "NotHullPreserving";
    case EvidenceKind::NoTriangulation: return "NoTriangulation";
    case EvidenceKind::DegreeSequenceMismatch: return "DegreeSequenceMismatch";
    case EvidenceKind::ForcedEdgeCrossing: return "ForcedEdgeCrossing";
    case EvidenceKind::ExhaustedSearch: return "ExhaustedSearch";
    case EvidenceKind::Budget: return "Budget";
  }
  return "?";
}

struct Evidence {
  EvidenceKind kind = EvidenceKind::None;
  std::string detail;
  std::uint64_t triangulations_p = 0;
  std::uint64_t triangulations_q = 0;
  std::uint64_t candidates_examined = 0;  // (T_P, T_Q, rotation) triples or mapped leaves
  std::uint64_t extensions = 0;
};

struct Certificate {
  Triangulation tp;
  Triangulation tq;
  Correspondence phi;
};

struct SearchOutcome {
  Verdict verdict = Verdict::Inconclusive;
  std::optional<Certificate> certificate;
  Evidence evidence;
};

struct SearchOptions {
  std::uint64_t budget_nodes = 10'000'000;
  double budget_secs = 0;  // 0: unlimited
  unsigned workers = 1;
};

enum class ExtendStatus { Ok, Conflict, Incomplete, TriangleMismatch };

inline std::string_view to_string(ExtendStatus s) {
  switch (s) {
    case ExtendStatus::Ok: return "Ok";
    case ExtendStatus::Conflict: return "Conflict";
    case ExtendStatus::Incomplete: return "Incomplete";
    case ExtendStatus::TriangleMismatch: return "TriangleMismatch";
  }
  return "?";
}

struct Extension {
  ExtendStatus status = ExtendStatus::Incomplete;
  Correspondence phi;

  bool ok() const { return status == ExtendStatus::Ok; }
};

/// True iff phi maps the clockwise triangles of tP exactly onto those of tQ.
inline bool are_compatible(const PointSet& sP, const Triangulation& tP, const PointSet& sQ,
                           const Triangulation& tQ, const Correspondence& phi) {
  if (sP.size() != sQ.size() || phi.pairs.size() != sP.size()) return false;
  if (tP.triangles.size() != tQ.triangles.size()) return false;
  std::vector<int> images;
  for (auto [p, q] : phi.pairs) {
    if (!sP.contains(p) || !sQ.contains(q)) return false;
    images.push_back(q);
  }
  std::sort(images.begin(), images.end());
  if (std::adjacent_find(images.begin(), images.end()) != images.end()) return false;

  std::vector<Triangle> mapped;
  mapped.reserve(tP.triangles.size());
  for (const auto& tri : tP.triangles)
    mapped.push_back(canonical_triangle(*phi.image(tri[0]), *phi.image(tri[1]), *phi.image(tri[2])));
  std::sort(mapped.begin(), mapped.end());
  return mapped == tQ.triangles;
}

namespace detail {

// apex[a * n + b]: third vertex of the triangle to the right of a->b, or -1.
inline std::vector<int> right_apex(const PointSet& s, const Triangulation& t) {
  const int n = static_cast<int>(s.size());
  std::vector<int> apex(static_cast<std::size_t>(n) * n, -1);
  for (const auto& tri : t.triangles) {
    const int a = s.index_of(tri[0]), b = s.index_of(tri[1]), c = s.index_of(tri[2]);
    apex[a * n + b] = c;
    apex[b * n + c] = a;
    apex[c * n + a] = b;
  }
  return apex;
}

inline Correspondence make_correspondence(const PointSet& sP, const PointSet& sQ,
                                          const std::vector<int>& phi, const OrderTable& tP,
                                          const OrderTable& tQ) {
  Correspondence out;
  for (std::size_t i = 0; i < phi.size(); ++i) out.pairs.emplace_back(sP[i].id, sQ[phi[i]].id);
  const auto& hq = tQ.hull();
  const int h = tQ.hull_size();
  const int target = phi[tP.hull()[0]];
  out.hull_rotation = static_cast<int>(std::find(hq.begin(), hq.end(), target) - hq.begin()) % h;
  return out;
}

// Propagates a bijection across triangles from a seeded directed edge, using
// index-space apex tables. phi/inv are filled in place.
inline ExtendStatus propagate(int n, const std::vector<int>& apexP, const std::vector<int>& apexQ,
                              int a, int b, int qa, int qb, std::vector<int>& phi,
                              std::vector<int>& inv) {
  phi.assign(n, -1);
  inv.assign(n, -1);
  auto assign = [&](int p, int q) {
    if (phi[p] == q && inv[q] == p) return true;
    if (phi[p] != -1 || inv[q] != -1) return false;
    phi[p] = q;
    inv[q] = p;
    return true;
  };
  if (!assign(a, qa) || !assign(b, qb)) return ExtendStatus::Conflict;

  std::vector<std::uint8_t> done(static_cast<std::size_t>(n) * n, 0);
  std::deque<std::pair<int, int>> queue{{a, b}};
  while (!queue.empty()) {
    auto [x, y] = queue.front();
    queue.pop_front();
    if (done[x * n + y]) continue;
    const int c = apexP[x * n + y];
    const int cq = apexQ[phi[x] * n + phi[y]];
    if ((c < 0) != (cq < 0)) return ExtendStatus::TriangleMismatch;
    done[x * n + y] = 1;
    if (c < 0) continue;
    if (!assign(c, cq)) return ExtendStatus::Conflict;
    done[y * n + c] = done[c * n + x] = 1;
    if (!done[c * n + y]) queue.emplace_back(c, y);
    if (!done[x * n + c]) queue.emplace_back(x, c);
  }
  for (int i = 0; i < n; ++i)
    if (phi[i] < 0) return ExtendStatus::Incomplete;
  return ExtendStatus::Ok;
}

}  // namespace detail

/// Extends the seed (directed hull edge of P -> directed hull edge of Q) to the
/// unique bijection under which right-hand triangles correspond, if any.
inline Extension extend_correspondence(const PointSet& sP, const Triangulation& tP,
                                       const PointSet& sQ, const Triangulation& tQ,
                                       std::pair<int, int> seed_p, std::pair<int, int> seed_q) {
  Extension out;
  if (sP.size() != sQ.size()) return out;
  const int n = static_cast<int>(sP.size());
  const auto apexP = detail::right_apex(sP, tP);
  const auto apexQ = detail::right_apex(sQ, tQ);
  std::vector<int> phi, inv;
  out.status = detail::propagate(n, apexP, apexQ, sP.index_of(seed_p.first), sP.index_of(seed_p.second),
                                 sQ.index_of(seed_q.first), sQ.index_of(seed_q.second), phi, inv);
  if (!out.ok()) return out;
  const OrderTable tabP(sP), tabQ(sQ);
  out.phi = detail::make_correspondence(sP, sQ, phi, tabP, tabQ);
  if (!are_compatible(sP, tP, sQ, tQ, out.phi)) out.status = ExtendStatus::TriangleMismatch;
  return out;
}

namespace detail {

using Clock = std::chrono::steady_clock;

inline std::optional<Clock::time_point> deadline_from(double secs) {
  if (secs <= 0) return std::nullopt;
  return Clock::now() + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(secs));
}

inline void check_deadline(const std::optional<Clock::time_point>& deadline) {
  if (deadline && Clock::now() > *deadline)
    throw Error(ErrorCode::BudgetExceeded, "wall-clock budget exhausted");
}

// Forced edges of both sides (plus required edges) pulled into P's index space
// must be candidates and pairwise non-crossing in both geometries.
struct ScreenResult {
  int conflicts = 0;
  std::string first;
};

inline std::vector<std::pair<int, int>> forced_index_edges(const PointSet& s, const OrderTable& t,
                                                           const std::vector<Edge>& extra) {
  std::set<std::pair<int, int>> out;
  for (int e = 0; e < t.edge_count(); ++e)
    if (t.crossing(e).none()) out.insert(t.candidates()[e]);
  for (const auto& e : forced_edges_claim2(s)) {
    const int a = s.index_of(e.u), b = s.index_of(e.v);
    out.emplace(std::min(a, b), std::max(a, b));
  }
  for (const auto& e : extra) {
    const int a = s.index_of(e.u), b = s.index_of(e.v);
    out.emplace(std::min(a, b), std::max(a, b));
  }
  return {out.begin(), out.end()};
}

inline ScreenResult forced_screen(const PointSet& sP, const OrderTable& tP,
                                  const std::vector<std::pair<int, int>>& forcedP,
                                  const PointSet&, const OrderTable& tQ,
                                  const std::vector<std::pair<int, int>>& forcedQ,
                                  const std::vector<int>& phi, bool stop_at_first) {
  const int n = tP.size();
  std::vector<int> inv(n);
  for (int i = 0; i < n; ++i) inv[phi[i]] = i;

  struct Item {
    int a, b;
    char side;  // which set forces it
  };
  std::vector<Item> items;
  std::set<std::pair<int, int>> seen;
  for (auto [a, b] : forcedP)
    if (seen.emplace(a, b).second) items.push_back({a, b, 'P'});
  for (auto [x, y] : forcedQ) {
    const int a = std::min(inv[x], inv[y]), b = std::max(inv[x], inv[y]);
    if (seen.emplace(a, b).second) items.push_back({a, b, 'Q'});
  }

  auto label = [&](const Item& it) {
    return std::to_string(sP[it.a].id) + "-" + std::to_string(sP[it.b].id) + " (forced in " +
           it.side + ")";
  };

  ScreenResult out;
  auto note = [&](std::string msg) {
    if (out.conflicts++ == 0) out.first = std::move(msg);
  };
  for (const auto& it : items) {
    if (!tP.is_candidate(it.a, it.b)) note("edge " + label(it) + " passes through a point of P");
    if (!tQ.is_candidate(phi[it.a], phi[it.b])) note("edge " + label(it) + " passes through a point of Q");
    if (stop_at_first && out.conflicts) return out;
  }
  for (std::size_t i = 0; i < items.size(); ++i)
    for (std::size_t j = i + 1; j < items.size(); ++j) {
      const auto& e = items[i];
      const auto& f = items[j];
      if (tP.segments_cross(e.a, e.b, f.a, f.b))
        note("edges " + label(e) + " and " + label(f) + " cross in P");
      else if (tQ.segments_cross(phi[e.a], phi[e.b], phi[f.a], phi[f.b]))
        note("edges " + label(e) + " and " + label(f) + " cross in Q");
      if (stop_at_first && out.conflicts) return out;
    }
  return out;
}

// Index-space mapping check: same size, hull onto hull with a common rotation.
inline std::optional<int> hull_rotation_of(const OrderTable& tP, const OrderTable& tQ,
                                           const std::vector<int>& phi) {
  const int h = tP.hull_size();
  if (h != tQ.hull_size()) return std::nullopt;
  const auto& hp = tP.hull();
  const auto& hq = tQ.hull();
  std::vector<int> pos(tQ.size(), -1);
  for (int i = 0; i < h; ++i) pos[hq[i]] = i;
  const int r0 = pos[phi[hp[0]]];
  if (r0 < 0) return std::nullopt;
  for (int i = 0; i < h; ++i)
    if (pos[phi[hp[i]]] != (i + r0) % h) return std::nullopt;
  for (int i = 0; i < tP.size(); ++i)
    if (!tP.on_hull(i) && tQ.on_hull(phi[i])) return std::nullopt;
  return r0;
}

inline std::optional<std::vector<int>> index_mapping(const PointSet& sP, const PointSet& sQ,
                                                     const Correspondence& phi) {
  if (sP.size() != sQ.size() || phi.pairs.size() != sP.size()) return std::nullopt;
  std::vector<int> out(sP.size(), -1);
  std::vector<bool> used(sQ.size(), false);
  for (auto [p, q] : phi.pairs) {
    if (!sP.contains(p) || !sQ.contains(q)) return std::nullopt;
    const int a = sP.index_of(p), b = sQ.index_of(q);
    if (out[a] != -1 || used[b]) return std::nullopt;
    out[a] = b;
    used[b] = true;
  }
  return out;
}

}  // namespace detail

/// A point set with its order table and forced edges (required edges
/// included), reusable across many mapped checks.
struct MappedSide {
  PointSet s;
  OrderTable t;
  std::vector<std::pair<int, int>> forced;
};

inline MappedSide mapped_side(PointSet s, const std::vector<Edge>& required = {}) {
  OrderTable t(s);
  auto forced = detail::forced_index_edges(s, t, required);
  return {std::move(s), std::move(t), std::move(forced)};
}

/// Number of forced-edge conflicts under a full mapping (0 when the forced
/// edges of both sides can coexist in both geometries).
inline int forced_edge_conflicts(const MappedSide& P, const MappedSide& Q, const Correspondence& phi) {
  const auto idx = detail::index_mapping(P.s, Q.s, phi);
  if (!idx) throw Error(ErrorCode::PreconditionViolated, "mapping is not a bijection");
  return detail::forced_screen(P.s, P.t, P.forced, Q.s, Q.t, Q.forced, *idx, false).conflicts;
}

inline int forced_edge_conflicts(const PointSet& sP, const PointSet& sQ, const Correspondence& phi) {
  return forced_edge_conflicts(mapped_side(sP), mapped_side(sQ), phi);
}

struct MappedOptions {
  SearchOptions search;
  std::vector<Edge> required_p;
  std::vector<Edge> required_q;
  bool screen = true;
};

/// Compatibility when the whole bijection is given. Forced edges are screened
/// first; otherwise every edge set that triangulates both sides (the images of
/// T_P that stay crossing-free and full in Q) is checked face by face.
///
/// This overload takes prepared sides; their forced edges must already
/// include opts.required_p and opts.required_q.
inline SearchOutcome compatible_under_full_mapping(const MappedSide& sideP, const MappedSide& sideQ,
                                                   const Correspondence& phi,
                                                   const MappedOptions& opts = {}) {
  const PointSet& sP = sideP.s;
  const PointSet& sQ = sideQ.s;
  SearchOutcome out;
  out.verdict = Verdict::Incompatible;
  const auto idx = detail::index_mapping(sP, sQ, phi);
  if (!idx) {
    out.evidence.kind = sP.size() == sQ.size() ? EvidenceKind::NotHullPreserving : EvidenceKind::SizeMismatch;
    out.evidence.detail = "mapping is not a bijection between the point sets";
    return out;
  }
  const OrderTable& tP = sideP.t;
  const OrderTable& tQ = sideQ.t;
  const auto rotation = detail::hull_rotation_of(tP, tQ, *idx);
  if (!rotation) {
    out.evidence.kind = tP.hull_size() == tQ.hull_size() ? EvidenceKind::NotHullPreserving
                                                         : EvidenceKind::HullCountMismatch;
    out.evidence.detail = "mapping does not carry the clockwise hull of P onto that of Q";
    return out;
  }

  if (opts.screen) {
    auto screen = detail::forced_screen(sP, tP, sideP.forced, sQ, tQ, sideQ.forced, *idx, true);
    if (screen.conflicts) {
      out.evidence.kind = EvidenceKind::ForcedEdgeCrossing;
      out.evidence.detail = screen.first;
      return out;
    }
  }

  // Joint edge system in P index space.
  const int n = tP.size();
  std::vector<std::pair<int, int>> joint;
  std::vector<int> joint_of(static_cast<std::size_t>(n) * n, -1);
  for (auto [a, b] : tP.candidates())
    if (tQ.is_candidate((*idx)[a], (*idx)[b])) {
      joint_of[a * n + b] = joint_of[b * n + a] = static_cast<int>(joint.size());
      joint.emplace_back(a, b);
    }
  if (joint.size() > kMaxEdges) throw Error(ErrorCode::TooLarge, "too many edges");
  detail::EdgeSystem sys;
  sys.target = tP.target_edges();
  sys.crossing.assign(joint.size(), EdgeMask{});
  for (std::size_t e = 0; e < joint.size(); ++e)
    for (std::size_t f = e + 1; f < joint.size(); ++f) {
      auto [a, b] = joint[e];
      auto [c, d] = joint[f];
      const bool cross = tP.crossing(tP.edge_index(a, b)).test(tP.edge_index(c, d)) ||
                         tQ.crossing(tQ.edge_index((*idx)[a], (*idx)[b]))
                             .test(tQ.edge_index((*idx)[c], (*idx)[d]));
      if (cross) {
        sys.crossing[e].set(f);
        sys.crossing[f].set(e);
      }
    }

  EdgeMask required;
  auto add_required = [&](const std::vector<Edge>& edges, const PointSet& s, bool q_side) {
    for (const auto& e : edges) {
      int a = s.index_of(e.u), b = s.index_of(e.v);
      if (q_side) {
        std::vector<int> inv(n);
        for (int i = 0; i < n; ++i) inv[(*idx)[i]] = i;
        a = inv[a];
        b = inv[b];
      }
      const int j = joint_of[a * n + b];
      if (j < 0) return false;
      required.set(j);
    }
    return true;
  };
  if (!add_required(opts.required_p, sP, false) || !add_required(opts.required_q, sQ, true)) {
    out.evidence.kind = EvidenceKind::NoTriangulation;
    out.evidence.detail = "a required edge cannot be present on both sides";
    return out;
  }

  Correspondence full = detail::make_correspondence(sP, sQ, *idx, tP, tQ);
  detail::Enumerator walk(sys, opts.search.budget_nodes, detail::deadline_from(opts.search.budget_secs));
  std::uint64_t leaves = 0;
  try {
    walk.run(required, [&](const EdgeMask& m) {
      ++leaves;
      std::vector<std::pair<int, int>> ep, eq;
      for (std::size_t e = 0; e < joint.size(); ++e)
        if (m.test(e)) {
          auto [a, b] = joint[e];
          ep.emplace_back(a, b);
          eq.emplace_back(std::min((*idx)[a], (*idx)[b]), std::max((*idx)[a], (*idx)[b]));
        }
      std::sort(eq.begin(), eq.end());
      Triangulation trP = detail::assemble(sP, tP, ep);
      Triangulation trQ = detail::assemble(sQ, tQ, eq);
      if (!are_compatible(sP, trP, sQ, trQ, full)) return true;
      out.verdict = Verdict::Compatible;
      out.certificate = Certificate{std::move(trP), std::move(trQ), full};
      return false;
    });
  } catch (const Error& e) {
    if (e.code() != ErrorCode::BudgetExceeded) throw;
    out.verdict = Verdict::Inconclusive;
    out.evidence.kind = EvidenceKind::Budget;
    out.evidence.detail = e.what();
    return out;
  }
  if (out.verdict == Verdict::Compatible) return out;
  out.evidence.kind = EvidenceKind::ExhaustedSearch;
  out.evidence.candidates_examined = leaves;
  out.evidence.detail = "no common triangulation under the mapping (" + std::to_string(leaves) +
                        " shared edge sets checked)";
  return out;
}

inline SearchOutcome compatible_under_full_mapping(const PointSet& sP, const PointSet& sQ,
                                                   const Correspondence& phi,
                                                   const MappedOptions& opts = {}) {
  return compatible_under_full_mapping(mapped_side(sP, opts.required_p), mapped_side(sQ, opts.required_q), phi,
                                       opts);
}

namespace detail {

struct PinPlan {
  std::vector<std::pair<int, int>> hull_pins;      // (P hull position, Q hull position)
  std::vector<std::pair<int, int>> interior_pins;  // (P index, Q index)
};

inline PinPlan plan_pins(const PointSet& sP, const OrderTable& tP, const PointSet& sQ,
                         const OrderTable& tQ, const std::vector<std::pair<int, int>>& pinned) {
  PinPlan plan;
  std::set<int> seen_p, seen_q;
  for (auto [p, q] : pinned) {
    if (!sP.contains(p) || !sQ.contains(q))
      throw Error(ErrorCode::InvalidConstraints, "pinned pair references an unknown id");
    if (!seen_p.insert(p).second || !seen_q.insert(q).second)
      throw Error(ErrorCode::InvalidConstraints, "pinned pairs are not injective");
    const int a = sP.index_of(p), b = sQ.index_of(q);
    if (tP.on_hull(a) != tQ.on_hull(b))
      throw Error(ErrorCode::InvalidConstraints,
                  "pinned pair " + std::to_string(p) + "->" + std::to_string(q) +
                      " mixes hull and interior points");
    if (tP.on_hull(a)) {
      const auto& hp = tP.hull();
      const auto& hq = tQ.hull();
      plan.hull_pins.emplace_back(static_cast<int>(std::find(hp.begin(), hp.end(), a) - hp.begin()),
                                  static_cast<int>(std::find(hq.begin(), hq.end(), b) - hq.begin()));
    } else {
      plan.interior_pins.emplace_back(a, b);
    }
  }
  return plan;
}

inline bool rotation_allowed(const PinPlan& plan, int r, int h) {
  for (auto [i, j] : plan.hull_pins)
    if ((i + r) % h != j) return false;
  return true;
}

// When hull rotation plus pinned interiors leave at most one interior point
// free, the mapping is fully determined.
inline std::optional<std::vector<int>> determined_mapping(const OrderTable& tP, const OrderTable& tQ,
                                                          const PinPlan& plan, int r) {
  const int n = tP.size();
  const int h = tP.hull_size();
  std::vector<int> phi(n, -1);
  std::vector<bool> used(n, false);
  for (int i = 0; i < h; ++i) {
    phi[tP.hull()[i]] = tQ.hull()[(i + r) % h];
    used[tQ.hull()[(i + r) % h]] = true;
  }
  for (auto [a, b] : plan.interior_pins) {
    phi[a] = b;
    used[b] = true;
  }
  std::vector<int> free_p, free_q;
  for (int i = 0; i < n; ++i) {
    if (phi[i] < 0) free_p.push_back(i);
    if (!used[i]) free_q.push_back(i);
  }
  if (free_p.size() > 1) return std::nullopt;
  if (free_p.size() == 1) phi[free_p[0]] = free_q[0];
  return phi;
}

inline bool cyclic_match(const std::vector<int>& a, const std::vector<int>& b, int r) {
  const int h = static_cast<int>(a.size());
  for (int i = 0; i < h; ++i)
    if (a[i] != b[(i + r) % h]) return false;
  return true;
}

}  // namespace detail

/// Exhaustive decision procedure: every triangulation pair (respecting required
/// edges) times every hull rotation (respecting pinned hull pairs), pruned by
/// hull degree sequences and seeded correspondence extension. The certificate
/// is the first success in (T_P index, T_Q index, rotation) order.
inline SearchOutcome find_compatible(const PointSet& sP, const PointSet& sQ, const Constraints& c = {},
                                     const SearchOptions& opts = {}) {
  SearchOutcome out;
  out.verdict = Verdict::Incompatible;
  if (sP.size() != sQ.size()) {
    out.evidence.kind = EvidenceKind::SizeMismatch;
    out.evidence.detail = "point sets differ in size (" + std::to_string(sP.size()) + " vs " +
                          std::to_string(sQ.size()) + ")";
    return out;
  }
  const OrderTable tP(sP), tQ(sQ);
  if (tP.hull_size() != tQ.hull_size()) {
    out.evidence.kind = EvidenceKind::HullCountMismatch;
    out.evidence.detail = "hull boundary counts differ (" + std::to_string(tP.hull_size()) + " vs " +
                          std::to_string(tQ.hull_size()) + ")";
    return out;
  }
  const int n = tP.size();
  const int h = tP.hull_size();
  const detail::PinPlan plan = detail::plan_pins(sP, tP, sQ, tQ, c.pinned);
  const auto deadline = detail::deadline_from(opts.budget_secs);

  std::vector<Triangulation> listP, listQ;
  try {
    listP = enumerate_triangulations(sP, {opts.budget_nodes, c.required_p});
    listQ = enumerate_triangulations(sQ, {opts.budget_nodes, c.required_q});
  } catch (const Error& e) {
    if (e.code() != ErrorCode::BudgetExceeded) throw;
    out.verdict = Verdict::Inconclusive;
    out.evidence.kind = EvidenceKind::Budget;
    out.evidence.detail = e.what();
    return out;
  }
  out.evidence.triangulations_p = listP.size();
  out.evidence.triangulations_q = listQ.size();
  if (listP.empty() || listQ.empty()) {
    out.evidence.kind = EvidenceKind::NoTriangulation;
    out.evidence.detail = std::string("required edges admit no triangulation of ") +
                          (listP.empty() ? "P" : "Q");
    return out;
  }

  // Rotations that survive the pin and forced-edge screens.
  std::vector<int> rotations;
  int screened = 0;
  std::string screen_detail;
  {
    const auto fP = detail::forced_index_edges(sP, tP, c.required_p);
    const auto fQ = detail::forced_index_edges(sQ, tQ, c.required_q);
    for (int r = 0; r < h; ++r) {
      if (!detail::rotation_allowed(plan, r, h)) continue;
      if (auto phi = detail::determined_mapping(tP, tQ, plan, r)) {
        auto screen = detail::forced_screen(sP, tP, fP, sQ, tQ, fQ, *phi, true);
        if (screen.conflicts) {
          if (screened++ == 0) screen_detail = screen.first;
          continue;
        }
      }
      rotations.push_back(r);
    }
  }
  if (rotations.empty()) {
    out.evidence.kind = screened ? EvidenceKind::ForcedEdgeCrossing : EvidenceKind::NotHullPreserving;
    out.evidence.detail = screened ? screen_detail : "pinned hull pairs admit no rotation";
    return out;
  }

  auto hull_degrees = [](const OrderTable& t, const Triangulation& tr) {
    std::vector<int> d;
    for (int i : t.hull()) d.push_back(static_cast<int>(tr.degree(i)));
    return d;
  };
  std::vector<std::vector<int>> degP, degQ;
  std::vector<std::vector<int>> apexP, apexQ;
  for (const auto& t : listP) {
    degP.push_back(hull_degrees(tP, t));
    apexP.push_back(detail::right_apex(sP, t));
  }
  for (const auto& t : listQ) {
    degQ.push_back(hull_degrees(tQ, t));
    apexQ.push_back(detail::right_apex(sQ, t));
  }

  struct Slot {
    bool found = false;
    std::size_t q = 0;
    int rotation = 0;
    std::vector<int> phi;
    std::uint64_t examined = 0;
    std::uint64_t extensions = 0;
  };
  std::vector<Slot> slots(listP.size());
  FirstSuccess best;
  std::atomic<bool> out_of_time{false};

  const auto& hp = tP.hull();
  const auto& hq = tQ.hull();
  parallel_for(listP.size(), opts.workers, [&](std::size_t ip) {
    if (!best.worth_running(ip) || out_of_time) return;
    Slot& slot = slots[ip];
    std::vector<int> phi, inv;
    for (std::size_t iq = 0; iq < listQ.size(); ++iq) {
      if (!best.worth_running(ip)) return;
      if (deadline && detail::Clock::now() > *deadline) {
        out_of_time = true;
        return;
      }
      for (int r : rotations) {
        ++slot.examined;
        if (!detail::cyclic_match(degP[ip], degQ[iq], r)) continue;
        ++slot.extensions;
        const auto status = detail::propagate(n, apexP[ip], apexQ[iq], hp[0], hp[1], hq[r % h],
                                              hq[(r + 1) % h], phi, inv);
        if (status != ExtendStatus::Ok) continue;
        bool pins_ok = true;
        for (auto [a, b] : plan.interior_pins) pins_ok = pins_ok && phi[a] == b;
        if (!pins_ok) continue;
        Correspondence cand = detail::make_correspondence(sP, sQ, phi, tP, tQ);
        if (!are_compatible(sP, listP[ip], sQ, listQ[iq], cand)) continue;
        slot.found = true;
        slot.q = iq;
        slot.rotation = r;
        slot.phi = phi;
        best.offer(ip);
        return;
      }
    }
  });

  if (best.best() != FirstSuccess::kNone) {
    const std::size_t ip = best.best();
    const Slot& slot = slots[ip];
    out.verdict = Verdict::Compatible;
    out.certificate = Certificate{listP[ip], listQ[slot.q],
                                  detail::make_correspondence(sP, sQ, slot.phi, tP, tQ)};
    out.evidence = {};
    return out;
  }
  if (out_of_time) {
    out.verdict = Verdict::Inconclusive;
    out.evidence.kind = EvidenceKind::Budget;
    out.evidence.detail = "wall-clock budget exhausted";
    return out;
  }

  for (const auto& s : slots) {
    out.evidence.candidates_examined += s.examined;
    out.evidence.extensions += s.extensions;
  }
  std::ostringstream detail;
  if (out.evidence.extensions == 0) {
    out.evidence.kind = EvidenceKind::DegreeSequenceMismatch;
    detail << "hull degree sequences never agree under an admissible rotation";
  } else {
    out.evidence.kind = EvidenceKind::ExhaustedSearch;
    detail << "no correspondence closes";
  }
  detail << " (" << listP.size() << " x " << listQ.size() << " triangulations, " << rotations.size()
         << " rotations, " << out.evidence.extensions << " extensions)";
  out.evidence.detail = detail.str();
  return out;
}

/// Brute-force oracle: all hull rotations, all interior bijections, all
/// triangulation pairs, checked with are_compatible alone.
inline SearchOutcome naive_find_compatible(const PointSet& sP, const PointSet& sQ,
                                           const Constraints& c = {}, const SearchOptions& opts = {}) {
  SearchOutcome out;
  out.verdict = Verdict::Incompatible;
  out.evidence.kind = EvidenceKind::ExhaustedSearch;
  if (sP.size() != sQ.size()) {
    out.evidence.kind = EvidenceKind::SizeMismatch;
    return out;
  }
  const HullSequence hP = convex_hull_boundary(sP), hQ = convex_hull_boundary(sQ);
  if (hP.size() != hQ.size()) {
    out.evidence.kind = EvidenceKind::HullCountMismatch;
    return out;
  }
  const auto listP = enumerate_triangulations(sP, {opts.budget_nodes, c.required_p});
  const auto listQ = enumerate_triangulations(sQ, {opts.budget_nodes, c.required_q});
  const auto inP = interior_points(sP), inQ = interior_points(sQ);
  const std::size_t h = hP.size();

  std::vector<int> perm(inQ.size());
  std::iota(perm.begin(), perm.end(), 0);
  for (std::size_t r = 0; r < h; ++r) {
    std::sort(perm.begin(), perm.end());
    do {
      Correspondence phi;
      for (std::size_t i = 0; i < h; ++i) phi.pairs.emplace_back(hP[i], hQ[(i + r) % h]);
      for (std::size_t i = 0; i < inP.size(); ++i) phi.pairs.emplace_back(inP[i], inQ[perm[i]]);
      std::sort(phi.pairs.begin(), phi.pairs.end());
      phi.hull_rotation = static_cast<int>(r);
      bool pins_ok = true;
      for (auto [p, q] : c.pinned) pins_ok = pins_ok && phi.image(p) == q;
      if (!pins_ok) continue;
      for (const auto& tp : listP)
        for (const auto& tq : listQ) {
          ++out.evidence.candidates_examined;
          if (are_compatible(sP, tp, sQ, tq, phi)) {
            out.verdict = Verdict::Compatible;
            out.certificate = Certificate{tp, tq, phi};
            out.evidence = {};
            return out;
          }
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return out;
}

}  // namespace ctri
