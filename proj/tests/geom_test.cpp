#include "ctri/geom.hpp"
#include "ctri/order_table.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

namespace ctri {
namespace {

using testing::make_set;

Point pt(long x, long y, int id = 1) { return {id, Coord(x), Coord(y)}; }

TEST(Orientation, BasicCases) {
  EXPECT_EQ(orientation(pt(0, 0), pt(1, 0), pt(0, 1)), Orientation::Counterclockwise);
  EXPECT_EQ(orientation(pt(0, 0), pt(1, 1), pt(2, 2)), Orientation::Collinear);
  EXPECT_EQ(orientation(pt(0, 0), pt(0, 1), pt(1, 0)), Orientation::Clockwise);
}

TEST(Orientation, ExactForTinyFractions) {
  // A perturbation of 1e-30 off the diagonal is still seen.
  Point off{1, Coord(1), Coord(1) + Coord(1, mpz_class("1000000000000000000000000000000"))};
  EXPECT_EQ(orientation(pt(0, 0), pt(2, 2), off), Orientation::Counterclockwise);
}

TEST(Orientation, SwapAndRotationProperties) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 500; ++trial) {
    auto s = testing::random_grid_set(rng, 3, 5);
    const auto o = orientation(s[0], s[1], s[2]);
    EXPECT_EQ(orientation(s[1], s[2], s[0]), o);
    EXPECT_EQ(orientation(s[2], s[0], s[1]), o);
    EXPECT_EQ(static_cast<int>(orientation(s[0], s[2], s[1])), -static_cast<int>(o));
  }
}

TEST(SegmentsCross, Examples) {
  EXPECT_TRUE(segments_cross(pt(0, 0), pt(2, 2), pt(0, 2), pt(2, 0)));
  EXPECT_FALSE(segments_cross(pt(0, 0), pt(1, 0), pt(1, 0), pt(2, 1)));
  EXPECT_TRUE(segments_cross(pt(0, 0), pt(3, 0), pt(1, 0), pt(2, 0)));
}

TEST(SegmentsCross, DegenerateTouching) {
  // T-junction: endpoint of one in the interior of the other.
  EXPECT_TRUE(segments_cross(pt(0, 0), pt(2, 0), pt(1, 0), pt(1, 5)));
  // Collinear segments meeting end to end share only a common endpoint.
  EXPECT_FALSE(segments_cross(pt(0, 0), pt(1, 0), pt(1, 0), pt(3, 0)));
  // Collinear, disjoint.
  EXPECT_FALSE(segments_cross(pt(0, 0), pt(1, 0), pt(2, 0), pt(3, 0)));
  // Disjoint, non-parallel.
  EXPECT_FALSE(segments_cross(pt(0, 0), pt(1, 0), pt(3, 1), pt(3, 5)));
  // Vertical collinear overlap.
  EXPECT_TRUE(segments_cross(pt(0, 0), pt(0, 4), pt(0, 2), pt(0, 6)));
}

TEST(SegmentsCross, SymmetryProperty) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 2000; ++trial) {
    Point a = pt(testing::draw(rng, 4), testing::draw(rng, 4));
    Point b = pt(testing::draw(rng, 4), testing::draw(rng, 4));
    Point c = pt(testing::draw(rng, 4), testing::draw(rng, 4));
    Point d = pt(testing::draw(rng, 4), testing::draw(rng, 4));
    if (same_position(a, b) || same_position(c, d)) continue;
    const bool x = segments_cross(a, b, c, d);
    EXPECT_EQ(segments_cross(c, d, a, b), x);
    EXPECT_EQ(segments_cross(b, a, c, d), x);
    EXPECT_EQ(segments_cross(a, b, d, c), x);
  }
}

TEST(PointOnOpenSegment, Examples) {
  EXPECT_TRUE(point_on_open_segment(pt(1, 0), pt(0, 0), pt(2, 0)));
  EXPECT_FALSE(point_on_open_segment(pt(0, 0), pt(0, 0), pt(2, 0)));
  EXPECT_FALSE(point_on_open_segment(pt(1, 1), pt(0, 0), pt(2, 0)));
  EXPECT_FALSE(point_on_open_segment(pt(3, 0), pt(0, 0), pt(2, 0)));
}

std::vector<std::pair<long, long>> hull_coords(const PointSet& s, const HullSequence& h) {
  std::vector<std::pair<long, long>> out;
  for (int id : h.ids) out.emplace_back(s.by_id(id).x.get_num().get_si(), s.by_id(id).y.get_num().get_si());
  return out;
}

TEST(ConvexHull, KeepsCollinearBoundaryPoint) {
  auto s = make_set({{0, 0}, {1, 0}, {2, 0}, {1, 1}});
  auto h = convex_hull_boundary(s);
  using V = std::vector<std::pair<long, long>>;
  EXPECT_EQ(hull_coords(s, h), (V{{0, 0}, {1, 1}, {2, 0}, {1, 0}}));
}

TEST(ConvexHull, InteriorCollinearPointsExcluded) {
  auto s = make_set({{0, 0}, {10, 5}, {10, -5}, {4, 0}, {6, 0}, {8, 0}});
  auto h = convex_hull_boundary(s);
  using V = std::vector<std::pair<long, long>>;
  EXPECT_EQ(hull_coords(s, h), (V{{0, 0}, {10, 5}, {10, -5}}));
  EXPECT_EQ(interior_points(s), (std::vector<int>{4, 5, 6}));
}

TEST(ConvexHull, TriangleAndCentroid) {
  auto tri = make_set({{0, 0}, {4, 0}, {0, 4}});
  EXPECT_EQ(convex_hull_boundary(tri).size(), 3u);
  auto with_centroid = make_set({{0, 0}, {3, 0}, {0, 3}, {1, 1}});
  EXPECT_EQ(interior_points(with_centroid), (std::vector<int>{4}));
  auto quad = make_set({{0, 0}, {2, 0}, {2, 2}, {0, 2}});
  EXPECT_TRUE(interior_points(quad).empty());
}

TEST(ConvexHull, AllCollinearThrows) {
  auto s = make_set({{0, 0}, {1, 1}, {2, 2}, {5, 5}});
  try {
    convex_hull_boundary(s);
    FAIL() << "expected AllCollinear";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::AllCollinear);
  }
}

TEST(ConvexHull, InvariantsOnRandomGrids) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    auto s = testing::random_grid_set(rng, 3 + trial % 9, 5);
    auto h = convex_hull_boundary(s);
    ASSERT_GE(h.size(), 3u);
    // Starts at the lexicographic minimum.
    for (const auto& p : s) EXPECT_FALSE(lex_less(p, s.by_id(h[0])));
    // Never a counterclockwise turn; interior on the right.
    for (std::size_t i = 0; i < h.size(); ++i) {
      const auto o = orientation(s.by_id(h[i]), s.by_id(h.next(i)), s.by_id(h.next(i + 1)));
      EXPECT_NE(o, Orientation::Counterclockwise);
    }
    for (const auto& p : s) {
      if (!h.contains(p.id)) {
        EXPECT_TRUE(strictly_inside(s, h, p));
      }
    }
  }
}

TEST(OrderTable, AgreesWithRationalPredicates) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 60; ++trial) {
    auto s = testing::random_grid_set(rng, 4 + trial % 6, 4);
    OrderTable t(s);
    const int n = t.size();
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          if (i == j || j == k || i == k) continue;
          EXPECT_EQ(t.orient(i, j, k), static_cast<int>(orientation(s[i], s[j], s[k])));
          EXPECT_EQ(t.on_open_segment(k, i, j), point_on_open_segment(s[k], s[i], s[j]));
        }
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        for (int c = 0; c < n; ++c)
          for (int d = c + 1; d < n; ++d)
            EXPECT_EQ(t.segments_cross(a, b, c, d), segments_cross(s[a], s[b], s[c], s[d]));
  }
}

TEST(OrderTable, FallsBackForHugeCoordinates) {
  std::vector<Point> pts{{1, Coord(mpz_class("100000000000000000000")), Coord(0)},
                         {2, Coord(0), Coord(mpz_class("100000000000000000000"))},
                         {3, Coord(0), Coord(0)},
                         {4, Coord(1, 3), Coord(1, 7)}};
  PointSet s(pts);
  OrderTable t(s);
  EXPECT_EQ(t.orient(0, 1, 2), static_cast<int>(orientation(s[0], s[1], s[2])));
  EXPECT_EQ(t.orient(2, 0, 3), static_cast<int>(orientation(s[2], s[0], s[3])));
}

TEST(PointSet, RejectsDuplicates) {
  try {
    PointSet({{1, Coord(0), Coord(0)}, {1, Coord(1), Coord(0)}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DuplicateId);
  }
  try {
    PointSet({{1, Coord(0), Coord(0)}, {2, Coord(0), Coord(0)}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DuplicatePoint);
  }
}

TEST(Rational, ParsesIntegersAndFractions) {
  EXPECT_EQ(*parse_coord("7/3"), Coord(7, 3));
  EXPECT_EQ(*parse_coord("-4"), Coord(-4));
  EXPECT_EQ(*parse_coord("6/4"), Coord(3, 2));
  EXPECT_EQ(format_coord(*parse_coord("6/4")), "3/2");
  EXPECT_FALSE(parse_coord("1/0"));
  EXPECT_FALSE(parse_coord("1.5"));
  EXPECT_FALSE(parse_coord("3/-2"));
  EXPECT_FALSE(parse_coord(""));
  EXPECT_FALSE(parse_coord("x"));
}

}  // namespace
}  // namespace ctri
