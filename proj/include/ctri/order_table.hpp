#pragma once

// Combinatorial snapshot of a point set: every orientation sign, the hull,
// the candidate edges and their pairwise crossings. All searches run on this
// table; the rationals are touched only while it is built.

#include "ctri/geom.hpp"

#include <bitset>
#include <cstdint>
#include <limits>

namespace ctri {

inline constexpr std::size_t kMaxPoints = 23;
inline constexpr std::size_t kMaxEdges = 256;
using EdgeMask = std::bitset<kMaxEdges>;

class OrderTable {
 public:
  explicit OrderTable(const PointSet& s) : n_(static_cast<int>(s.size())) {
    if (s.size() > kMaxPoints)
      throw Error(ErrorCode::TooLarge, "at most " + std::to_string(kMaxPoints) +
                                           " points supported, got " + std::to_string(s.size()));
    fill_orientations(s);
    fill_lex_rank(s);

    HullSequence hull = convex_hull_boundary(s);
    on_hull_.assign(n_, false);
    for (int id : hull.ids) {
      hull_.push_back(s.index_of(id));
      on_hull_[hull_.back()] = true;
    }

    edge_index_.assign(static_cast<std::size_t>(n_) * n_, -1);
    for (int i = 0; i < n_; ++i)
      for (int j = i + 1; j < n_; ++j) {
        bool blocked = false;
        for (int k = 0; k < n_ && !blocked; ++k)
          blocked = k != i && k != j && on_open_segment(k, i, j);
        if (blocked) continue;
        edge_index_[i * n_ + j] = edge_index_[j * n_ + i] = static_cast<int>(candidates_.size());
        candidates_.emplace_back(i, j);
      }

    crossing_.assign(candidates_.size(), EdgeMask{});
    for (std::size_t e = 0; e < candidates_.size(); ++e)
      for (std::size_t f = e + 1; f < candidates_.size(); ++f)
        if (candidates_cross(candidates_[e], candidates_[f])) {
          crossing_[e].set(f);
          crossing_[f].set(e);
        }
  }

  int size() const { return n_; }
  int orient(int i, int j, int k) const { return orient_[(i * n_ + j) * n_ + k]; }

  /// k strictly between i and j on their common line.
  bool on_open_segment(int k, int i, int j) const {
    if (orient(i, j, k) != 0) return false;
    const int lo = std::min(lex_rank_[i], lex_rank_[j]);
    const int hi = std::max(lex_rank_[i], lex_rank_[j]);
    return lo < lex_rank_[k] && lex_rank_[k] < hi;
  }

  const std::vector<int>& hull() const { return hull_; }
  int hull_size() const { return static_cast<int>(hull_.size()); }
  bool on_hull(int i) const { return on_hull_[i]; }

  /// Number of edges in every triangulation: 3n - 3 - h.
  int target_edges() const { return 3 * n_ - 3 - hull_size(); }

  const std::vector<std::pair<int, int>>& candidates() const { return candidates_; }
  int edge_count() const { return static_cast<int>(candidates_.size()); }
  int edge_index(int i, int j) const { return edge_index_[i * n_ + j]; }
  bool is_candidate(int i, int j) const { return i != j && edge_index(i, j) >= 0; }
  const EdgeMask& crossing(int e) const { return crossing_[e]; }

  /// Crossing test for arbitrary index pairs (not necessarily candidates).
  bool segments_cross(int a, int b, int c, int d) const {
    const int o1 = orient(a, b, c), o2 = orient(a, b, d);
    const int o3 = orient(c, d, a), o4 = orient(c, d, b);
    if (o1 == 0 && o2 == 0) {
      // Collinear: positive-length overlap of rank intervals.
      const int lo1 = std::min(lex_rank_[a], lex_rank_[b]), hi1 = std::max(lex_rank_[a], lex_rank_[b]);
      const int lo2 = std::min(lex_rank_[c], lex_rank_[d]), hi2 = std::max(lex_rank_[c], lex_rank_[d]);
      return std::max(lo1, lo2) < std::min(hi1, hi2);
    }
    if (o1 * o2 < 0 && o3 * o4 < 0) return true;
    return on_open_segment(c, a, b) || on_open_segment(d, a, b) || on_open_segment(a, c, d) ||
           on_open_segment(b, c, d);
  }

 private:
  bool candidates_cross(std::pair<int, int> e, std::pair<int, int> f) const {
    auto [a, b] = e;
    auto [c, d] = f;
    if (a == c || a == d || b == c || b == d) return false;
    return orient(a, b, c) * orient(a, b, d) < 0 && orient(c, d, a) * orient(c, d, b) < 0;
  }

  void fill_lex_rank(const PointSet& s) {
    std::vector<int> order(n_);
    for (int i = 0; i < n_; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) { return lex_less(s[a], s[b]); });
    lex_rank_.assign(n_, 0);
    for (int r = 0; r < n_; ++r) lex_rank_[order[r]] = r;
  }

  void fill_orientations(const PointSet& s) {
    orient_.assign(static_cast<std::size_t>(n_) * n_ * n_, 0);

    // Scale to a common denominator; when everything fits in 62 bits the
    // determinant is evaluated exactly in 128-bit integers.
    mpz_class common = 1;
    for (const auto& p : s) {
      mpz_lcm(common.get_mpz_t(), common.get_mpz_t(), p.x.get_den_mpz_t());
      mpz_lcm(common.get_mpz_t(), common.get_mpz_t(), p.y.get_den_mpz_t());
    }
    std::vector<std::int64_t> xs(n_), ys(n_);
    bool fits = true;
    const mpz_class limit = mpz_class(1) << 61;
    for (int i = 0; i < n_ && fits; ++i) {
      mpz_class x = s[i].x.get_num() * (common / s[i].x.get_den());
      mpz_class y = s[i].y.get_num() * (common / s[i].y.get_den());
      if (abs(x) >= limit || abs(y) >= limit) {
        fits = false;
        break;
      }
      xs[i] = x.get_si();
      ys[i] = y.get_si();
    }

    for (int i = 0; i < n_; ++i)
      for (int j = i + 1; j < n_; ++j)
        for (int k = j + 1; k < n_; ++k) {
          int sgn_value;
          if (fits) {
            const __int128 det =
                static_cast<__int128>(xs[j] - xs[i]) * (ys[k] - ys[i]) -
                static_cast<__int128>(ys[j] - ys[i]) * (xs[k] - xs[i]);
            sgn_value = det > 0 ? 1 : (det < 0 ? -1 : 0);
          } else {
            sgn_value = static_cast<int>(orientation(s[i], s[j], s[k]));
          }
          set_cyclic(i, j, k, static_cast<std::int8_t>(sgn_value));
        }
  }

  // orient(i,j,k) is invariant under cyclic rotation and flips on swaps.
  void set_cyclic(int i, int j, int k, std::int8_t v) {
    auto at = [&](int a, int b, int c) -> std::int8_t& { return orient_[(a * n_ + b) * n_ + c]; };
    at(i, j, k) = at(j, k, i) = at(k, i, j) = v;
    at(i, k, j) = at(k, j, i) = at(j, i, k) = static_cast<std::int8_t>(-v);
  }

  int n_;
  std::vector<std::int8_t> orient_;
  std::vector<int> lex_rank_;
  std::vector<int> hull_;
  std::vector<bool> on_hull_;
  std::vector<int> edge_index_;
  std::vector<std::pair<int, int>> candidates_;
  std::vector<EdgeMask> crossing_;
};

}  // namespace ctri
