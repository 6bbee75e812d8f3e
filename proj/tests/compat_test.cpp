#include "ctri/compat.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

namespace ctri {
namespace {

using testing::make_set;

PointSet square() { return make_set({{0, 0}, {2, 0}, {2, 2}, {0, 2}}); }

Correspondence identity(const PointSet& s) {
  Correspondence phi;
  for (const auto& p : s) phi.pairs.emplace_back(p.id, p.id);
  return phi;
}

TEST(ExtendCorrespondence, IdentityOnItself) {
  auto s = square();
  auto t = triangles_of(s, {{1, 2}, {2, 3}, {3, 4}, {1, 4}, {1, 3}});
  auto hull = convex_hull_boundary(s);
  auto ext = extend_correspondence(s, t, s, t, {hull[0], hull[1]}, {hull[0], hull[1]});
  ASSERT_TRUE(ext.ok());
  EXPECT_EQ(ext.phi.pairs, identity(s).pairs);
  EXPECT_EQ(ext.phi.hull_rotation, 0);
}

TEST(ExtendCorrespondence, CollinearQuadOntoSquare) {
  // P: bottom midpoint is a hull point; its only triangulation uses 2-4.
  auto p = make_set({{0, 0}, {1, 0}, {2, 0}, {1, 1}});
  auto tp = enumerate_triangulations(p);
  ASSERT_EQ(tp.size(), 1u);
  // Q: square with diagonal 12-14, ids 11..14 = (0,0),(0,1),(1,1),(1,0).
  auto q = make_set({{0, 0}, {0, 1}, {1, 1}, {1, 0}}, 11);
  auto tq = triangles_of(q, {{11, 12}, {12, 13}, {13, 14}, {11, 14}, {12, 14}});
  // P hull clockwise is 1,4,3,2; Q hull is 11,12,13,14.
  auto ext = extend_correspondence(p, tp[0], q, tq, {1, 4}, {11, 12});
  ASSERT_TRUE(ext.ok()) << to_string(ext.status);
  EXPECT_EQ(ext.phi.pairs, (std::vector<std::pair<int, int>>{{1, 11}, {2, 14}, {3, 13}, {4, 12}}));
  // Misaligned seed: the diagonal lands on the other pair of corners.
  auto bad = extend_correspondence(p, tp[0], q, tq, {1, 4}, {12, 13});
  EXPECT_FALSE(bad.ok());
}

TEST(ExtendCorrespondence, InverseSeedGivesInverse) {
  std::mt19937_64 rng(8);
  int checked = 0;
  for (int trial = 0; trial < 200 && checked < 30; ++trial) {
    auto [p, q] = testing::random_equal_hull_pair(rng, 5 + trial % 2, 4);
    auto out = find_compatible(p, q);
    if (out.verdict != Verdict::Compatible) continue;
    ++checked;
    const auto& cert = *out.certificate;
    auto hp = convex_hull_boundary(p);
    auto hq = convex_hull_boundary(q);
    auto fwd = extend_correspondence(p, cert.tp, q, cert.tq, {hp[0], hp[1]},
                                     {*cert.phi.image(hp[0]), *cert.phi.image(hp[1])});
    ASSERT_TRUE(fwd.ok());
    EXPECT_TRUE(are_compatible(p, cert.tp, q, cert.tq, fwd.phi));
    auto inv = cert.phi.inverse();
    auto back = extend_correspondence(q, cert.tq, p, cert.tp, {hq[0], hq[1]},
                                      {*inv.image(hq[0]), *inv.image(hq[1])});
    ASSERT_TRUE(back.ok());
    EXPECT_EQ(back.phi.pairs, inv.pairs);
  }
  EXPECT_GE(checked, 10);
}

TEST(AreCompatible, MirrorIsRejected) {
  auto s = square();
  auto t = triangles_of(s, {{1, 2}, {2, 3}, {3, 4}, {1, 4}, {1, 3}});
  EXPECT_TRUE(are_compatible(s, t, s, t, identity(s)));
  // Reflection across the diagonal 1-3 swaps 2 and 4: triangles reverse orientation.
  Correspondence mirror;
  mirror.pairs = {{1, 1}, {2, 4}, {3, 3}, {4, 2}};
  EXPECT_FALSE(are_compatible(s, t, s, t, mirror));
}

TEST(AreCompatible, RejectsNonBijection) {
  auto s = square();
  auto t = triangles_of(s, {{1, 2}, {2, 3}, {3, 4}, {1, 4}, {1, 3}});
  Correspondence phi;
  phi.pairs = {{1, 1}, {2, 1}, {3, 3}, {4, 4}};
  EXPECT_FALSE(are_compatible(s, t, s, t, phi));
}

TEST(FindCompatible, ConvexPairsAlwaysCompatible) {
  for (int n = 3; n <= 8; ++n) {
    auto p = testing::convex_polygon(n);
    std::vector<Point> pts;
    for (int i = 0; i < n; ++i) pts.push_back({i + 1, Coord(i * 3), Coord(-i * i)});  // concave down
    PointSet q(pts);
    auto out = find_compatible(p, q);
    ASSERT_EQ(out.verdict, Verdict::Compatible) << n;
    EXPECT_TRUE(are_compatible(p, out.certificate->tp, q, out.certificate->tq, out.certificate->phi));
  }
}

TEST(FindCompatible, SizeAndHullPreconditions) {
  auto out = find_compatible(testing::convex_polygon(4), testing::convex_polygon(5));
  EXPECT_EQ(out.verdict, Verdict::Incompatible);
  EXPECT_EQ(out.evidence.kind, EvidenceKind::SizeMismatch);
  auto tri_centroid = make_set({{0, 0}, {3, 0}, {0, 3}, {1, 1}});
  out = find_compatible(tri_centroid, square());
  EXPECT_EQ(out.evidence.kind, EvidenceKind::HullCountMismatch);
}

TEST(FindCompatible, AgreesWithNaiveOracle) {
  std::mt19937_64 rng(99);
  int compatible = 0, incompatible = 0;
  for (int trial = 0; trial < 40; ++trial) {
    auto [p, q] = testing::random_equal_hull_pair(rng, 4 + trial % 3, 4);
    auto fast = find_compatible(p, q);
    auto slow = naive_find_compatible(p, q);
    ASSERT_EQ(fast.verdict, slow.verdict) << "trial " << trial;
    (fast.verdict == Verdict::Compatible ? compatible : incompatible)++;
    if (fast.certificate) {
      const auto& c = *fast.certificate;
      EXPECT_TRUE(are_compatible(p, c.tp, q, c.tq, c.phi));
      auto dp = hull_degree_sequence(p, c.tp);
      auto dq = hull_degree_sequence(q, c.tq);
      for (std::size_t i = 0; i < dp.size(); ++i)
        EXPECT_EQ(dp[i], dq[(i + c.phi.hull_rotation) % dq.size()]);
      EXPECT_EQ(c.tp.edges.size(), c.tq.edges.size());
    }
  }
  EXPECT_GT(compatible, 0);
}

TEST(FindCompatible, WorkerCountDoesNotChangeCertificate) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 15; ++trial) {
    auto [p, q] = testing::random_equal_hull_pair(rng, 6, 4);
    SearchOptions one, many;
    many.workers = 6;
    auto a = find_compatible(p, q, {}, one);
    auto b = find_compatible(p, q, {}, many);
    ASSERT_EQ(a.verdict, b.verdict);
    if (a.certificate) {
      EXPECT_EQ(a.certificate->tp.edges, b.certificate->tp.edges);
      EXPECT_EQ(a.certificate->tq.edges, b.certificate->tq.edges);
      EXPECT_EQ(a.certificate->phi, b.certificate->phi);
    } else {
      EXPECT_EQ(a.evidence.detail, b.evidence.detail);
    }
  }
}

PointSet transformed(const PointSet& s, int rot_quarter, long tx, long ty, long scale, int id_shift) {
  std::vector<Point> pts;
  for (const auto& p : s) {
    Coord x = p.x, y = p.y;
    for (int k = 0; k < rot_quarter; ++k) {
      Coord nx = -y;
      y = x;
      x = nx;
    }
    pts.push_back({p.id + id_shift, x * scale + tx, y * scale + ty});
  }
  return PointSet(pts);
}

TEST(FindCompatible, InvariantUnderRigidMotionAndRelabel) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 25; ++trial) {
    auto [p, q] = testing::random_equal_hull_pair(rng, 5 + trial % 2, 4);
    auto base = find_compatible(p, q).verdict;
    auto moved = find_compatible(transformed(p, 1, 3, -2, 2, 0), transformed(q, 3, 0, 5, 7, 100)).verdict;
    EXPECT_EQ(base, moved) << trial;
  }
}

TEST(FindCompatible, PinnedHullToInteriorIsInvalid) {
  auto p = make_set({{0, 0}, {3, 0}, {0, 3}, {1, 1}});
  auto q = make_set({{0, 0}, {3, 0}, {0, 3}, {1, 1}});
  Constraints c;
  c.pinned = {{1, 4}};
  try {
    find_compatible(p, q, c);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidConstraints);
  }
}

TEST(FindCompatible, PinnedHullRestrictsRotation) {
  auto p = make_set({{0, 0}, {3, 0}, {0, 3}, {1, 1}});
  auto q = make_set({{0, 0}, {4, 0}, {0, 4}, {1, 2}});
  Constraints c;
  c.pinned = {{1, 2}};
  auto out = find_compatible(p, q, c);
  ASSERT_EQ(out.verdict, Verdict::Compatible);
  EXPECT_EQ(out.certificate->phi.image(1), 2);
}

TEST(FindCompatible, RequiredEdgesThatCannotCoexist) {
  auto p = square();
  Constraints c;
  c.required_p = {{1, 3}, {2, 4}};
  auto out = find_compatible(p, p, c);
  EXPECT_EQ(out.verdict, Verdict::Incompatible);
  EXPECT_EQ(out.evidence.kind, EvidenceKind::NoTriangulation);
}

TEST(FullMapping, IdentityIsCompatible) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    auto s = testing::random_grid_set(rng, 5 + trial % 3, 4);
    auto out = compatible_under_full_mapping(s, s, identity(s));
    ASSERT_EQ(out.verdict, Verdict::Compatible);
    EXPECT_TRUE(are_compatible(s, out.certificate->tp, s, out.certificate->tq, out.certificate->phi));
  }
}

TEST(FullMapping, MirrorMappingIsNotHullPreserving) {
  auto s = square();
  Correspondence mirror;
  mirror.pairs = {{1, 1}, {2, 4}, {3, 3}, {4, 2}};
  auto out = compatible_under_full_mapping(s, s, mirror);
  EXPECT_EQ(out.verdict, Verdict::Incompatible);
  EXPECT_EQ(out.evidence.kind, EvidenceKind::NotHullPreserving);
}

TEST(FullMapping, AgreesWithFindCompatibleUnderFullPins) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 40; ++trial) {
    auto [p, q] = testing::random_equal_hull_pair(rng, 5 + trial % 2, 4);
    auto hp = convex_hull_boundary(p), hq = convex_hull_boundary(q);
    auto ip = interior_points(p), iq = interior_points(q);
    Correspondence phi;
    for (std::size_t i = 0; i < hp.size(); ++i) phi.pairs.emplace_back(hp[i], hq[(i + trial) % hq.size()]);
    for (std::size_t i = 0; i < ip.size(); ++i) phi.pairs.emplace_back(ip[i], iq[i]);
    std::sort(phi.pairs.begin(), phi.pairs.end());
    Constraints c;
    c.pinned = phi.pairs;
    MappedOptions no_screen;
    no_screen.screen = false;
    auto mapped = compatible_under_full_mapping(p, q, phi);
    auto unscreened = compatible_under_full_mapping(p, q, phi, no_screen);
    auto pinned = naive_find_compatible(p, q, c);
    EXPECT_EQ(mapped.verdict, pinned.verdict) << trial;
    EXPECT_EQ(unscreened.verdict, pinned.verdict) << trial;
  }
}

}  // namespace
}  // namespace ctri
