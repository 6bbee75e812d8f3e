#pragma once

// Exact planar primitives: orientation, crossing per the shared-endpoint rule,
// and the convex hull boundary with collinear boundary points retained.

#include "ctri/error.hpp"
#include "ctri/rational.hpp"

#include <algorithm>
#include <compare>
#include <string>
#include <utility>
#include <vector>

namespace ctri {

struct Point {
  int id = 0;
  Coord x;
  Coord y;
};

inline bool same_position(const Point& a, const Point& b) { return a.x == b.x && a.y == b.y; }

/// Lexicographic (x, then y) order on positions.
inline bool lex_less(const Point& a, const Point& b) {
  if (a.x != b.x) return a.x < b.x;
  return a.y < b.y;
}

/// A labelled point set. Points are kept sorted by id so that index order and
/// id order coincide everywhere downstream.
class PointSet {
 public:
  PointSet() = default;

  PointSet(std::vector<Point> points, std::string name = {})
      : points_(std::move(points)), name_(std::move(name)) {
    std::sort(points_.begin(), points_.end(),
              [](const Point& a, const Point& b) { return a.id < b.id; });
    for (std::size_t i = 0; i < points_.size(); ++i) {
      if (points_[i].id <= 0)
        throw Error(ErrorCode::UnknownId, "point ids must be positive, got " +
                                              std::to_string(points_[i].id));
      if (i > 0 && points_[i].id == points_[i - 1].id)
        throw Error(ErrorCode::DuplicateId, "id " + std::to_string(points_[i].id) + " repeated");
    }
    for (std::size_t i = 0; i < points_.size(); ++i)
      for (std::size_t j = i + 1; j < points_.size(); ++j)
        if (same_position(points_[i], points_[j]))
          throw Error(ErrorCode::DuplicatePoint, "points " + std::to_string(points_[i].id) +
                                                     " and " + std::to_string(points_[j].id) +
                                                     " coincide");
  }

  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  const Point& operator[](std::size_t i) const { return points_[i]; }
  const std::vector<Point>& points() const { return points_; }
  const std::string& name() const { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }

  auto begin() const { return points_.begin(); }
  auto end() const { return points_.end(); }

  bool contains(int id) const { return find(id) >= 0; }

  int index_of(int id) const {
    int i = find(id);
    if (i < 0) throw Error(ErrorCode::UnknownId, "no point with id " + std::to_string(id));
    return i;
  }

  const Point& by_id(int id) const { return points_[index_of(id)]; }

  std::vector<int> ids() const {
    std::vector<int> out;
    out.reserve(points_.size());
    for (const auto& p : points_) out.push_back(p.id);
    return out;
  }

  int max_id() const { return points_.empty() ? 0 : points_.back().id; }

  /// Copy with one extra point appended (ids must stay unique).
  PointSet with(Point p) const {
    auto pts = points_;
    pts.push_back(std::move(p));
    return PointSet(std::move(pts), name_);
  }

 private:
  int find(int id) const {
    auto it = std::lower_bound(points_.begin(), points_.end(), id,
                               [](const Point& p, int v) { return p.id < v; });
    if (it == points_.end() || it->id != id) return -1;
    return static_cast<int>(it - points_.begin());
  }

  std::vector<Point> points_;
  std::string name_;
};

enum class Orientation { Clockwise = -1, Collinear = 0, Counterclockwise = 1 };

inline std::string_view to_string(Orientation o) {
  switch (o) {
    case Orientation::Clockwise: return "Clockwise";
    case Orientation::Collinear: return "Collinear";
    case Orientation::Counterclockwise: return "Counterclockwise";
  }
  return "?";
}

inline int cross_sign(const Coord& px, const Coord& py, const Coord& qx, const Coord& qy,
                      const Coord& rx, const Coord& ry) {
  Coord lhs = (qx - px) * (ry - py);
  Coord rhs = (qy - py) * (rx - px);
  return sgn(lhs - rhs);
}

/// Sign of (q - p) x (r - p) with y pointing up.
inline Orientation orientation(const Point& p, const Point& q, const Point& r) {
  return static_cast<Orientation>(cross_sign(p.x, p.y, q.x, q.y, r.x, r.y));
}

namespace detail {

// Position of `p` along segment ab (only meaningful when p is collinear).
inline bool within_box(const Point& p, const Point& a, const Point& b) {
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
         p.y <= std::max(a.y, b.y);
}

}  // namespace detail

/// True iff p lies on the line ab strictly between a and b.
inline bool point_on_open_segment(const Point& p, const Point& a, const Point& b) {
  if (orientation(a, b, p) != Orientation::Collinear) return false;
  if (same_position(p, a) || same_position(p, b)) return false;
  return detail::within_box(p, a, b);
}

/// Closed segments ab and cd cross when they share a point that is not an
/// endpoint of both. Collinear segments overlapping in more than a point cross.
inline bool segments_cross(const Point& a, const Point& b, const Point& c, const Point& d) {
  const Orientation o1 = orientation(a, b, c);
  const Orientation o2 = orientation(a, b, d);
  const Orientation o3 = orientation(c, d, a);
  const Orientation o4 = orientation(c, d, b);

  if (o1 == Orientation::Collinear && o2 == Orientation::Collinear) {
    // Project onto the dominant axis; overlap of positive length crosses.
    const bool use_x = a.x != b.x;
    auto key = [use_x](const Point& p) -> const Coord& { return use_x ? p.x : p.y; };
    const Coord lo1 = std::min(key(a), key(b)), hi1 = std::max(key(a), key(b));
    const Coord lo2 = std::min(key(c), key(d)), hi2 = std::max(key(c), key(d));
    return std::max(lo1, lo2) < std::min(hi1, hi2);
  }

  if (static_cast<int>(o1) * static_cast<int>(o2) < 0 &&
      static_cast<int>(o3) * static_cast<int>(o4) < 0)
    return true;

  // Touching configurations: the single common point is an endpoint of one
  // segment; it counts unless it is an endpoint of the other one too.
  auto touches = [](const Point& p, const Point& s, const Point& t) {
    return point_on_open_segment(p, s, t);
  };
  return touches(c, a, b) || touches(d, a, b) || touches(a, c, d) || touches(b, c, d);
}

/// Clockwise cyclic boundary sequence, collinear boundary points included,
/// starting at the lexicographically smallest point.
struct HullSequence {
  std::vector<int> ids;

  std::size_t size() const { return ids.size(); }
  int operator[](std::size_t i) const { return ids[i]; }
  int next(std::size_t i) const { return ids[(i + 1) % ids.size()]; }
  int prev(std::size_t i) const { return ids[(i + ids.size() - 1) % ids.size()]; }

  int position(int id) const {
    auto it = std::find(ids.begin(), ids.end(), id);
    return it == ids.end() ? -1 : static_cast<int>(it - ids.begin());
  }
  bool contains(int id) const { return position(id) >= 0; }
};

inline HullSequence convex_hull_boundary(const PointSet& s) {
  const std::size_t n = s.size();
  std::vector<int> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return lex_less(s[a], s[b]); });

  if (n < 3) throw Error(ErrorCode::AllCollinear, "fewer than three points");

  // Monotone chain over strict vertices, counterclockwise.
  std::vector<int> hull(2 * n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    while (k >= 2 && orientation(s[hull[k - 2]], s[hull[k - 1]], s[order[i]]) !=
                         Orientation::Counterclockwise)
      --k;
    hull[k++] = order[i];
  }
  for (std::size_t i = n - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && orientation(s[hull[k - 2]], s[hull[k - 1]], s[order[i]]) !=
                             Orientation::Counterclockwise)
      --k;
    hull[k++] = order[i];
  }
  hull.resize(k - 1);
  if (hull.size() < 3) throw Error(ErrorCode::AllCollinear, "all points lie on one line");

  // Clockwise from the lexicographic minimum (hull[0] already is that point).
  std::reverse(hull.begin() + 1, hull.end());

  HullSequence out;
  for (std::size_t e = 0; e < hull.size(); ++e) {
    const Point& a = s[hull[e]];
    const Point& b = s[hull[(e + 1) % hull.size()]];
    out.ids.push_back(a.id);
    std::vector<int> between;
    for (std::size_t i = 0; i < n; ++i)
      if (point_on_open_segment(s[i], a, b)) between.push_back(static_cast<int>(i));
    // Sort by distance from a; along a line lexicographic order is monotone.
    const bool forward = lex_less(a, b);
    std::sort(between.begin(), between.end(), [&](int u, int v) {
      return forward ? lex_less(s[u], s[v]) : lex_less(s[v], s[u]);
    });
    for (int i : between) out.ids.push_back(s[i].id);
  }
  return out;
}

/// Ids of points not on the hull boundary, ascending.
inline std::vector<int> interior_points(const PointSet& s) {
  const HullSequence hull = convex_hull_boundary(s);
  std::vector<int> out;
  for (const auto& p : s)
    if (!hull.contains(p.id)) out.push_back(p.id);
  return out;
}

/// Strictly inside the hull polygon (the hull must be clockwise).
inline bool strictly_inside(const PointSet& s, const HullSequence& hull, const Point& p) {
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const Point& a = s.by_id(hull[i]);
    const Point& b = s.by_id(hull.next(i));
    if (orientation(a, b, p) != Orientation::Clockwise) return false;
  }
  return true;
}

}  // namespace ctri
