#include "ctri/tri.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <map>

namespace ctri {
namespace {

using testing::make_set;

PointSet six_point_p() { return make_set({{0, 0}, {10, 5}, {10, -5}, {4, 0}, {6, 0}, {8, 0}}); }

std::set<std::vector<Edge>> as_set(const std::vector<Triangulation>& ts) {
  std::set<std::vector<Edge>> out;
  for (const auto& t : ts) out.insert(t.edges);
  return out;
}

std::vector<Edge> intersection_of(const std::vector<Triangulation>& ts) {
  std::vector<Edge> acc = ts.front().edges;
  for (const auto& t : ts) {
    std::vector<Edge> next;
    std::set_intersection(acc.begin(), acc.end(), t.edges.begin(), t.edges.end(),
                          std::back_inserter(next));
    acc = next;
  }
  return acc;
}

bool subset(const std::vector<Edge>& a, const std::vector<Edge>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

TEST(CandidateEdges, SpanningCollinearPairExcluded) {
  auto s = make_set({{0, 0}, {1, 0}, {2, 0}, {1, 3}});
  auto c = candidate_edges(s);
  EXPECT_EQ(c.size(), 5u);
  EXPECT_EQ(std::count(c.begin(), c.end(), Edge(1, 3)), 0);
}

TEST(CandidateEdges, ConvexQuadHasAllPairs) {
  EXPECT_EQ(candidate_edges(testing::convex_polygon(4)).size(), 6u);
}

TEST(CandidateEdges, SixPointSetMatchesBruteForce) {
  auto s = six_point_p();
  // Brute force: a pair is excluded when some third point lies strictly
  // between its endpoints. Four points share the line y = 0, so the three
  // spanning pairs among them drop out.
  int count = 0;
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j) {
      bool ok = true;
      for (std::size_t k = 0; k < s.size(); ++k)
        if (k != i && k != j && point_on_open_segment(s[k], s[i], s[j])) ok = false;
      count += ok;
    }
  EXPECT_EQ(count, 12);
  EXPECT_EQ(candidate_edges(s).size(), 12u);
}

TEST(IsTriangulation, ConvexQuad) {
  auto s = make_set({{0, 0}, {2, 0}, {2, 2}, {0, 2}});
  std::vector<Edge> boundary{{1, 2}, {2, 3}, {3, 4}, {1, 4}};
  auto with_diag = boundary;
  with_diag.emplace_back(1, 3);
  EXPECT_TRUE(is_triangulation(s, with_diag));
  EXPECT_FALSE(is_triangulation(s, boundary));
  EXPECT_FALSE(is_triangulation(s, {{1, 3}, {2, 4}}));
  auto both = with_diag;
  both.emplace_back(2, 4);
  EXPECT_FALSE(is_triangulation(s, both));
}

TEST(IsTriangulation, UnknownIdThrows) {
  auto s = make_set({{0, 0}, {2, 0}, {2, 2}});
  try {
    is_triangulation(s, {{1, 9}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnknownId);
  }
}

TEST(IsTriangulation, NonCandidateEdgeRejected) {
  auto s = make_set({{0, 0}, {1, 0}, {2, 0}, {1, 3}});
  // Right count (3*4-3-4 = 5) but the long bottom edge passes through point 2.
  EXPECT_FALSE(is_triangulation(s, {{1, 3}, {1, 4}, {3, 4}, {2, 4}, {1, 2}}));
  EXPECT_TRUE(is_triangulation(s, {{1, 2}, {2, 3}, {3, 4}, {2, 4}, {1, 4}}));
}

TEST(TrianglesOf, ConvexQuadDiagonal) {
  auto s = make_set({{0, 0}, {2, 0}, {2, 2}, {0, 2}});
  auto t = triangles_of(s, {{1, 2}, {2, 3}, {3, 4}, {1, 4}, {1, 3}});
  ASSERT_EQ(t.triangles.size(), 2u);
  for (const auto& tri : t.triangles)
    EXPECT_EQ(orientation(s.by_id(tri[0]), s.by_id(tri[1]), s.by_id(tri[2])), Orientation::Clockwise);
  // Rotation of point 1: neighbours 2, 3, 4 clockwise starting from the smallest id.
  EXPECT_EQ(t.rotation[0], (std::vector<int>{2, 4, 3}));
}

TEST(TrianglesOf, Fan) {
  auto s = make_set({{0, 0}, {3, 0}, {0, 3}, {1, 1}});
  auto t = triangles_of(s, {{1, 2}, {2, 3}, {1, 3}, {1, 4}, {2, 4}, {3, 4}});
  EXPECT_EQ(t.triangles.size(), 3u);
  EXPECT_EQ(t.degree(3), 3u);
}

TEST(TrianglesOf, NonTriangularFaceDetected) {
  auto s = make_set({{0, 0}, {2, 0}, {2, 2}, {0, 2}});
  try {
    triangles_of(s, {{1, 2}, {2, 3}, {3, 4}, {1, 4}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonTriangularFace);
  }
}

TEST(Enumerate, ConvexQuad) { EXPECT_EQ(enumerate_triangulations(testing::convex_polygon(4)).size(), 2u); }

TEST(Enumerate, ConvexHexagonMatchesOracle) {
  auto s = testing::convex_polygon(6);
  auto oracle = testing::naive_triangulations(s);
  EXPECT_EQ(oracle.size(), 14u);
  auto got = enumerate_triangulations(s);
  EXPECT_EQ(got.size(), 14u);
  EXPECT_EQ(as_set(got), oracle);
}

TEST(Enumerate, CatalanNumbers) {
  const std::map<int, std::size_t> catalan{{3, 1}, {4, 2}, {5, 5}, {6, 14}, {7, 42}, {8, 132}};
  for (auto [n, expected] : catalan)
    EXPECT_EQ(enumerate_triangulations(testing::convex_polygon(n)).size(), expected) << "n=" << n;
}

TEST(Enumerate, SixPointSetIsUnique) {
  auto s = six_point_p();
  auto ts = enumerate_triangulations(s);
  ASSERT_EQ(ts.size(), 1u);
  EXPECT_EQ(ts[0].triangles.size(), 7u);
  auto d = hull_degree_sequence(s, ts[0]);
  std::sort(d.begin(), d.end());
  EXPECT_EQ(d, (std::vector<int>{3, 5, 5}));
}

TEST(Enumerate, CanonicalOrderIsStable) {
  std::mt19937_64 rng(21);
  auto s = testing::random_grid_set(rng, 7, 4);
  auto a = enumerate_triangulations(s);
  auto b = enumerate_triangulations(s);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].edges, b[i].edges);
}

TEST(Enumerate, RequiredEdgesFilter) {
  auto s = testing::convex_polygon(6);
  auto all = enumerate_triangulations(s);
  EnumOptions opts;
  opts.required = {{1, 4}};
  auto some = enumerate_triangulations(s, opts);
  std::size_t expected = 0;
  for (const auto& t : all) expected += std::binary_search(t.edges.begin(), t.edges.end(), Edge(1, 4));
  EXPECT_EQ(some.size(), expected);
  EXPECT_GT(expected, 0u);
  opts.required = {{1, 4}, {2, 5}};  // crossing requirements
  EXPECT_TRUE(enumerate_triangulations(s, opts).empty());
}

TEST(Enumerate, BudgetExceeded) {
  EnumOptions opts;
  opts.budget_nodes = 10;
  try {
    enumerate_triangulations(testing::convex_polygon(8), opts);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::BudgetExceeded);
  }
}

TEST(Enumerate, MatchesNaiveOracleOnGrids) {
  std::mt19937_64 rng(1234);
  for (int trial = 0; trial < 40; ++trial) {
    auto s = testing::random_grid_set(rng, 4 + trial % 4, 4);
    auto got = enumerate_triangulations(s);
    EXPECT_EQ(as_set(got), testing::naive_triangulations(s)) << "trial " << trial;
    const auto h = static_cast<int>(convex_hull_boundary(s).size());
    const int n = static_cast<int>(s.size());
    for (const auto& t : got) {
      EXPECT_TRUE(is_triangulation(s, t.edges));
      EXPECT_EQ(static_cast<int>(t.edges.size()), 3 * n - 3 - h);
      EXPECT_EQ(static_cast<int>(t.triangles.size()), 2 * n - 2 - h);
    }
  }
}

TEST(ForcedEdges, SixPointSetAllForced) {
  auto s = six_point_p();
  auto f1 = forced_edges_claim1(s);
  EXPECT_EQ(f1.size(), 12u);
  EXPECT_EQ(f1, enumerate_triangulations(s)[0].edges);
}

TEST(ForcedEdges, ConvexQuadOnlyHull) {
  auto s = make_set({{0, 0}, {2, 0}, {2, 2}, {0, 2}});
  EXPECT_EQ(forced_edges_claim1(s), (std::vector<Edge>{{1, 2}, {1, 4}, {2, 3}, {3, 4}}));
  EXPECT_TRUE(forced_edges_claim2(s).empty());
}

TEST(ForcedEdges, TriangleCentroidSpokes) {
  auto s = make_set({{0, 0}, {3, 0}, {0, 3}, {1, 1}});
  EXPECT_EQ(forced_edges_claim2(s), (std::vector<Edge>{{1, 4}, {2, 4}, {3, 4}}));
}

TEST(ForcedEdges, ChainOfInclusionsOnGrids) {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 60; ++trial) {
    auto s = testing::random_grid_set(rng, 4 + trial % 4, 4);
    auto f1 = forced_edges_claim1(s);
    auto f2 = forced_edges_claim2(s);
    auto all = intersection_of(enumerate_triangulations(s));
    EXPECT_TRUE(subset(f2, f1)) << trial;
    EXPECT_TRUE(subset(f1, all)) << trial;
    // Hull edges are always forced.
    auto h = convex_hull_boundary(s);
    for (std::size_t i = 0; i < h.size(); ++i)
      EXPECT_TRUE(std::binary_search(f1.begin(), f1.end(), Edge(h[i], h.next(i))));
  }
}

}  // namespace
}  // namespace ctri
