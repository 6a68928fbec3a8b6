#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "silevy/rng.hpp"
#include "silevy/victiny.hpp"

using namespace silevy;

namespace {

Space box1d() { return Space::box(1, 1.0); }
Space box2d(double side = 1.0) { return Space::box(2, side); }

// Three-level tree: root with children 1,2; node 1 with children 1.1..1.3.
Space small_tree() {
  std::vector<Domain::TreeNode> nodes(6);
  nodes[1].parent = 0;
  nodes[2].parent = 0;
  nodes[3].parent = 1;
  nodes[4].parent = 1;
  nodes[5].parent = 1;
  return Space::tree(std::move(nodes));
}

Point rnd_point(Rng& rng, int p, double side) {
  Point t;
  t.dim = p;
  for (int i = 0; i < p; ++i) t.x[i] = rng.uniform(0.0, side);
  return t;
}

}  // namespace

TEST_CASE("leq and meet on boxes") {
  const Space s = box2d(2.0);
  CHECK(s.domain.leq(Point::box2(0.5, 0.25), Point::box2(0.5, 1.0)));
  CHECK_FALSE(s.domain.leq(Point::box2(0.5, 1.0), Point::box2(1.0, 0.5)));
  const Point m = s.domain.meet(Point::box2(1.0, 0.5), Point::box2(0.5, 1.0));
  CHECK(m.x[0] == 0.5);
  CHECK(m.x[1] == 0.5);
  // idempotence
  const Point t = Point::box2(0.3, 0.7);
  CHECK(s.domain.tip_eq(s.domain.meet(t, t), t));
  // order axioms on random triples
  Rng rng(7, 0);
  for (int k = 0; k < 200; ++k) {
    const Point a = rnd_point(rng, 2, 2.0), b = rnd_point(rng, 2, 2.0), c = rnd_point(rng, 2, 2.0);
    CHECK(s.domain.leq(a, a));
    if (s.domain.leq(a, b) && s.domain.leq(b, a)) CHECK(s.domain.tip_eq(a, b));
    if (s.domain.leq(a, b) && s.domain.leq(b, c)) CHECK(s.domain.leq(a, c));
    const Point ab = s.domain.meet(a, b);
    CHECK(s.domain.leq(ab, a));
    CHECK(s.domain.leq(ab, b));
  }
}

TEST_CASE("leq and meet on the tree") {
  const Space s = small_tree();
  const Point n1 = Point::tree(1), n13 = Point::tree(5), n12 = Point::tree(4), n2 = Point::tree(2);
  CHECK(s.domain.leq(n1, n13));  // node 1 is an ancestor of 1.3
  CHECK_FALSE(s.domain.leq(n13, n1));
  CHECK_FALSE(s.domain.leq(n2, n13));
  // meet(1.2, 1.3) = node 1, cross-checked by exhaustive ancestor scan
  const Point m = s.domain.meet(n12, n13);
  CHECK(m.node == 1);
  for (std::size_t a = 0; a < s.domain.nodes().size(); ++a) {
    const Point cand = Point::tree(static_cast<std::int32_t>(a));
    if (s.domain.leq(cand, n12) && s.domain.leq(cand, n13))
      CHECK(s.domain.leq(cand, m));  // m is the greatest common ancestor
  }
  CHECK_THROWS_AS((void)s.domain.leq(n1, Point::box1(0.5)), std::invalid_argument);
}

TEST_CASE("g_n rounds up to the smallest mesh superset") {
  const Space s = box1d();
  const MeshLevel mesh(s.domain, 2);
  // brute-force oracle: intersect all mesh supersets of A(0.3)
  const IndexSet a = IndexSet::atom(Point::box1(0.3));
  double best = 2.0;
  mesh.for_each_tip([&](const Point& u) {
    if (subset(s.domain, a, IndexSet::atom(u))) best = std::min(best, u.x[0]);
  });
  const auto up = mesh.round_up(a);
  REQUIRE(up.has_value());
  CHECK(up->tip.x[0] == best);
  CHECK(up->tip.x[0] == 0.5);
  // tips already on the mesh stay put
  const auto same = mesh.round_up(IndexSet::atom(Point::box1(0.25)));
  CHECK(same->tip.x[0] == 0.25);
  CHECK(mesh.round_up(IndexSet::empty())->is_empty());
  // g_n(A) contains A and shrinks with n
  const Space s2 = box2d();
  IndexSet prev = IndexSet::atom(Point::box2(1.0, 1.0));
  for (int n = 1; n <= 6; ++n) {
    const MeshLevel m2(s2.domain, n);
    const auto g = m2.round_up(IndexSet::atom(Point::box2(0.37, 0.61)));
    REQUIRE(g.has_value());
    CHECK(subset(s2.domain, IndexSet::atom(Point::box2(0.37, 0.61)), *g));
    CHECK(subset(s2.domain, *g, prev));
    prev = *g;
  }
}

TEST_CASE("left neighborhoods partition the mesh extent") {
  const Space s = box2d();
  const MeshLevel mesh(s.domain, 1);
  // the cell of (0.3, 0.6) is A((0.5,1)) \ (A((0,1)) u A((0.5,0.5)))
  const auto cell = left_neighborhood(mesh, Point::box2(0.3, 0.6));
  REQUIRE_FALSE(cell.whole_space);
  CHECK(cell.cell.a0.tip.x[0] == 0.5);
  CHECK(cell.cell.a0.tip.x[1] == 1.0);
  REQUIRE(cell.cell.subtracted.size() == 2);
  CHECK(cell.cell.subtracted[0].tip.x[0] == 0.0);
  CHECK(cell.cell.subtracted[0].tip.x[1] == 1.0);
  CHECK(cell.cell.subtracted[1].tip.x[0] == 0.5);
  CHECK(cell.cell.subtracted[1].tip.x[1] == 0.5);
  CHECK(increment_contains(s.domain, cell.cell, Point::box2(0.3, 0.6)));

  // brute-force oracle over all mesh cells: unique cell containing the probe
  const Point probe = Point::box2(0.3, 0.6);
  int containing = 0;
  mesh.for_each_tip([&](const Point& u) {
    bool in_brute = s.domain.leq(probe, u);
    if (in_brute) {
      mesh.for_each_tip([&](const Point& v) {
        if (!s.domain.tip_eq(u, v) && s.domain.leq(v, u) && s.domain.leq(probe, v))
          in_brute = false;
      });
    }
    if (in_brute) {
      ++containing;
      CHECK(s.domain.tip_eq(u, cell.cell.a0.tip));
    }
  });
  CHECK(containing == 1);

  // a mesh tip lies in the cell with itself as upper corner
  const auto own = left_neighborhood(mesh, Point::box2(0.5, 0.5));
  CHECK(own.cell.a0.tip.x[0] == 0.5);
  CHECK(own.cell.a0.tip.x[1] == 0.5);
  CHECK(increment_contains(s.domain, own.cell, Point::box2(0.5, 0.5)));

  // partition: each sample point lies in exactly one cell of C^l(A_n)
  const auto cells = left_cells(MeshLevel(s.domain, 2));
  Rng rng(11, 0);
  for (int k = 0; k < 500; ++k) {
    const Point t = rnd_point(rng, 2, 1.0);
    int hits = 0;
    for (const auto& c : cells)
      if (increment_contains(s.domain, c, t)) ++hits;
    CHECK(hits == 1);
  }

  // dimension bound: every cell has at most p subtracted sets
  for (const auto& c : cells) CHECK(c.subtracted.size() <= 2);
}

TEST_CASE("dissecting system") {
  const Space s = box2d();
  Rng rng(13, 0);
  for (int k = 0; k < 100; ++k) {
    const Point a = rnd_point(rng, 2, 1.0);
    const Point b = rnd_point(rng, 2, 1.0);
    if (s.domain.tip_eq(a, b)) continue;
    bool separated = false;
    for (int n = 1; n <= 12 && !separated; ++n) {
      const MeshLevel mesh(s.domain, n);
      const auto ca = left_neighborhood(mesh, a);
      const auto cb = left_neighborhood(mesh, b);
      if (ca.whole_space || cb.whole_space) continue;
      separated = !increments_intersect(s.domain, ca.cell, cb.cell);
    }
    CHECK(separated);
  }
}

TEST_CASE("extremal representation") {
  const Space s = box2d(2.0);
  const IndexSet a0 = IndexSet::atom(Point::box2(1, 1));
  // absorbed part
  auto c = extremal_rep(s.domain, a0,
                        {IndexSet::atom(Point::box2(0.5, 1)), IndexSet::atom(Point::box2(0.25, 0.5))});
  REQUIRE(c.subtracted.size() == 1);
  CHECK(c.subtracted[0].tip.x[0] == 0.5);
  CHECK(c.subtracted[0].tip.x[1] == 1.0);
  // no parts: A0 itself
  auto full = extremal_rep(s.domain, a0, {});
  CHECK(full.subtracted.empty());
  CHECK_FALSE(increment_is_empty_set(full));
  // parts containing a0 kill the set; membership is false everywhere
  auto none = extremal_rep(s.domain, a0, {IndexSet::atom(Point::box2(2, 2))});
  CHECK(increment_is_empty_set(none));
  Rng rng(17, 0);
  for (int k = 0; k < 100; ++k)
    CHECK_FALSE(increment_contains(s.domain, none, rnd_point(rng, 2, 2.0)));
  // canonical form is unique: permuted parts give identical output; membership agrees
  for (int k = 0; k < 100; ++k) {
    std::vector<IndexSet> parts;
    for (int i = 0; i < 3; ++i) parts.push_back(IndexSet::atom(rnd_point(rng, 2, 2.0)));
    auto c1 = extremal_rep(s.domain, a0, parts);
    std::swap(parts[0], parts[2]);
    auto c2 = extremal_rep(s.domain, a0, parts);
    CHECK(increment_eq(s.domain, c1, c2));
    for (int i = 0; i < 20; ++i) {
      const Point t = rnd_point(rng, 2, 2.0);
      bool direct = set_contains(s.domain, a0, t);
      for (const auto& p : parts)
        if (set_contains(s.domain, p, t)) direct = false;
      CHECK(direct == increment_contains(s.domain, c1, t));
    }
  }
}

TEST_CASE("d_A under the symmetric-difference metric") {
  const Space s = box2d(2.0);
  const IndexSet a = IndexSet::atom(Point::box2(1, 1));
  const IndexSet b = IndexSet::atom(Point::box2(0.5, 1));
  CHECK(d_A(s, a, b) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(d_A(s, a, a) == 0.0);
  CHECK(d_A(s, a, IndexSet::empty()) == doctest::Approx(1.0));
  // fine-grid counting oracle
  const int n = 256;
  double count = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Point t = Point::box2((i + 0.5) * 2.0 / n, (j + 0.5) * 2.0 / n);
      if (set_contains(s.domain, a, t) != set_contains(s.domain, b, t)) count += 1.0;
    }
  CHECK(count * 4.0 / (n * n) == doctest::Approx(0.5).epsilon(0.02));
}

TEST_CASE("metric axioms and contractivity, both metrics") {
  for (const auto metric : {Metric::symmdiff(), Metric::hausdorff()}) {
    Space s = box2d(2.0);
    s.metric = metric;
    Rng rng(23, 0);
    for (int k = 0; k < 2000; ++k) {
      const IndexSet a = IndexSet::atom(rnd_point(rng, 2, 2.0));
      const IndexSet b = IndexSet::atom(rnd_point(rng, 2, 2.0));
      const IndexSet c = IndexSet::atom(rnd_point(rng, 2, 2.0));
      const double dab = d_A(s, a, b);
      CHECK(dab >= 0.0);
      CHECK(dab == d_A(s, b, a));
      CHECK(dab <= d_A(s, a, c) + d_A(s, c, b) + 1e-12);
      // contractivity
      CHECK(d_A(s, intersect(s.domain, a, c), intersect(s.domain, b, c)) <= dab + 1e-12);
    }
    // outer continuity on a decreasing sequence
    const IndexSet lim = IndexSet::atom(Point::box2(0.7, 0.9));
    const IndexSet a40 = IndexSet::atom(
        Point::box2(0.7 + std::ldexp(1.0, -40), 0.9 + std::ldexp(1.0, -40)));
    CHECK(d_A(s, a40, lim) < 1e-9);
  }
}

TEST_CASE("d_C Hausdorff metric on increment sets") {
  const Space s = box2d(2.0);
  const IndexSet a = IndexSet::atom(Point::box2(1, 1));
  const IndexSet b = IndexSet::atom(Point::box2(0.5, 0.5));
  // atoms embed isometrically
  CHECK(d_C(s, IncrementSet::of(a), IncrementSet::of(b)) == d_A(s, a, b));
  const IncrementSet c = extremal_rep(s.domain, a, {b});
  CHECK(d_C(s, c, c) == 0.0);
  // C = A((1,1)) \ A((.5,.5)) vs C' = A((1,1))
  CHECK(d_C(s, c, IncrementSet::of(a)) == doctest::Approx(d_A(s, a, b)));
}

TEST_CASE("victiny region and discretization") {
  const Space s = box1d();
  const IndexSet a = IndexSet::atom(Point::box1(0.5));
  const MeshLevel mesh(s.domain, 7);
  // rho <= 0 is empty
  CHECK(victiny_n(s, a, 0.0, mesh).empty);
  CHECK(victiny_n(s, a, -1.0, mesh).empty);
  // 1-d: V(A(t), rho) = (t-rho, t+rho) within the domain
  const auto region = victiny_n(s, a, 0.125, mesh);
  CHECK(region.contains(s.domain, Point::box1(0.5 + 0.0625)));
  CHECK(region.contains(s.domain, Point::box1(0.5 - 0.0625)));
  CHECK_FALSE(region.contains(s.domain, Point::box1(0.25)));
  CHECK_FALSE(region.contains(s.domain, Point::box1(0.8)));
  // membership via the disjoint increments agrees
  const auto parts = region.to_increments(s.domain);
  Rng rng(31, 0);
  for (int k = 0; k < 300; ++k) {
    const Point t = rnd_point(rng, 1, 1.0);
    int hits = 0;
    for (const auto& c : parts)
      if (increment_contains(s.domain, c, t)) ++hits;
    CHECK(hits == (region.contains(s.domain, t) ? 1 : 0));
  }
  // rho larger than the domain diameter
  const auto big = victiny_n(s, a, 10.0, mesh);
  CHECK(big.contains(s.domain, Point::box1(0.999)));
  CHECK(big.contains(s.domain, Point::box1(0.01)));

  // mesh members' symmetric differences stay inside V_n (A on the mesh)
  const Space s2 = box2d();
  const MeshLevel mesh2(s2.domain, 4);
  const IndexSet a2 = IndexSet::atom(Point::box2(0.5, 0.5));
  const double rho = 0.15;
  const auto reg2 = victiny_n(s2, a2, rho, mesh2);
  Rng rng2(41, 0);
  mesh2.for_each_tip([&](const Point& u) {
    const IndexSet b = IndexSet::atom(u);
    if (d_A(s2, a2, b) >= rho) return;
    for (int k = 0; k < 20; ++k) {
      const Point t = rnd_point(rng2, 2, 1.0);
      const bool in_sym = set_contains(s2.domain, a2, t) != set_contains(s2.domain, b, t);
      if (in_sym) CHECK(reg2.contains(s2.domain, t));
    }
  });

  // union over n recovers V: discretized membership approaches qd membership
  for (int k = 0; k < 200; ++k) {
    const Point t = rnd_point(rng, 1, 1.0);
    const double q = qd_exact(s, t, a);
    const double r = 0.2;
    if (std::fabs(q - r) < 0.02) continue;  // skip the boundary band
    bool any = false;
    for (int n = 3; n <= 8 && !any; ++n)
      any = victiny_n(s, a, r, MeshLevel(s.domain, n)).contains(s.domain, t);
    CHECK(any == (q < r));
  }
}

TEST_CASE("divergence: exact values, oracle, and bisection agreement") {
  const Space s1 = box1d();
  const IndexSet at = IndexSet::atom(Point::box1(0.5));
  // 1-d: qd(s, A(t)) = |s - t|
  CHECK(qd_exact(s1, Point::box1(0.3), at) == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(qd_exact(s1, Point::box1(0.9), at) == doctest::Approx(0.4).epsilon(1e-12));
  CHECK(qd_exact(s1, Point::box1(0.5), at) == 0.0);

  // 2-d case A = A((1,1)), s = (0.5, 1.1): grid-search oracle over tips
  const Space s2 = box2d(2.0);
  const IndexSet a2 = IndexSet::atom(Point::box2(1, 1));
  const Point sp = Point::box2(0.5, 1.1);
  const double exact = qd_exact(s2, sp, a2);
  CHECK(exact == doctest::Approx(0.1).epsilon(1e-9));
  double brute = 1e9;
  const int n = 160;
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j) {
      const Point u = Point::box2(i * 2.0 / n, j * 2.0 / n);
      const IndexSet b = IndexSet::atom(u);
      const bool in_sym = set_contains(s2.domain, a2, sp) != set_contains(s2.domain, b, sp);
      if (in_sym) brute = std::min(brute, d_A(s2, a2, b));
    }
  CHECK(exact <= brute + 1e-12);
  CHECK(brute <= exact + 0.05);

  // qd <= d_A(A(t), A), and agreement with the bisection
  Rng rng(47, 0);
  const Space sb = box2d();
  for (int k = 0; k < 25; ++k) {
    const Point t = rnd_point(rng, 2, 1.0);
    const IndexSet a = IndexSet::atom(rnd_point(rng, 2, 1.0));
    const double q = qd_exact(sb, t, a);
    CHECK(q <= d_A(sb, IndexSet::atom(t), a) + 1e-12);
    const auto div = divergence(sb, t, a, 7, 1e-3);
    if (div.resolved) {
      CHECK(q <= div.hi + 0.03);
      CHECK(div.lo <= q + 0.03);
    }
  }

  // qd(t, .) is 1-Lipschitz
  for (int k = 0; k < 10000; ++k) {
    const Point t = rnd_point(rng, 2, 1.0);
    const IndexSet a = IndexSet::atom(rnd_point(rng, 2, 1.0));
    const IndexSet b = IndexSet::atom(rnd_point(rng, 2, 1.0));
    CHECK(std::fabs(qd_exact(sb, t, a) - qd_exact(sb, t, b)) <= d_A(sb, a, b) + 1e-12);
  }

  // tree: qd = d_A(A(t), A)
  const Space st = small_tree();
  const IndexSet an1 = IndexSet::atom(Point::tree(1));
  CHECK(qd_exact(st, Point::tree(3), an1) ==
        doctest::Approx(d_A(st, IndexSet::atom(Point::tree(3)), an1)));
}

TEST_CASE("victiny sandwich on membership samples") {
  const Space s = box2d();
  Rng rng(53, 0);
  for (int k = 0; k < 10000; ++k) {
    const IndexSet a = IndexSet::atom(rnd_point(rng, 2, 1.0));
    const IndexSet b = IndexSet::atom(rnd_point(rng, 2, 1.0));
    const Point t = rnd_point(rng, 2, 1.0);
    const double rho = rng.uniform(0.01, 0.5);
    const double d = d_A(s, a, b);
    if (in_victiny(s, t, b, rho - d)) CHECK(in_victiny(s, t, a, rho + 1e-12));
    if (in_victiny(s, t, a, rho)) CHECK(in_victiny(s, t, b, rho + d + 1e-12));
  }
}

TEST_CASE("geodesics are constant speed") {
  const Space s1 = box1d();
  // 1-d midpoint of [A(0), A(1)] is A(0.5)
  const auto g1 = geodesic(s1, IndexSet::atom(Point::box1(0.0)), IndexSet::atom(Point::box1(1.0)), 1);
  REQUIRE(g1.size() == 3);
  CHECK(g1[1].tip.x[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(g1.front().tip.x[0] == 0.0);
  CHECK(g1.back().tip.x[0] == 1.0);

  // 2-d: midpoint of A((1,1)) -> A((2,2)) at x* = sqrt(2.5) - 1 on the tip path
  const Space s2 = box2d(2.0);
  const auto g2 = geodesic(s2, IndexSet::atom(Point::box2(1, 1)), IndexSet::atom(Point::box2(2, 2)), 1);
  const double xstar = std::sqrt(2.5) - 1.0;
  CHECK(g2[1].tip.x[0] == doctest::Approx(1.0 + xstar).epsilon(1e-9));
  CHECK(g2[1].tip.x[1] == doctest::Approx(1.0 + xstar).epsilon(1e-9));

  // constant speed at all dyadic pairs, random nested pairs
  Rng rng(59, 0);
  const Space sb = box2d(2.0);
  for (int k = 0; k < 20; ++k) {
    Point lo, hi;
    lo.dim = hi.dim = 2;
    for (int i = 0; i < 2; ++i) {
      lo.x[i] = rng.uniform(0.1, 0.9);
      hi.x[i] = lo.x[i] + rng.uniform(0.05, 1.9 - lo.x[i]);
    }
    const IndexSet a = IndexSet::atom(lo), b = IndexSet::atom(hi);
    const double d = d_A(sb, a, b);
    const auto g = geodesic(sb, a, b, 4);
    const double steps = static_cast<double>(g.size() - 1);
    for (std::size_t i = 0; i < g.size(); ++i)
      for (std::size_t j = i + 1; j < g.size(); ++j) {
        const double want = d * static_cast<double>(j - i) / steps;
        CHECK(std::fabs(d_A(sb, g[i], g[j]) - want) <= 1e-9 * d);
      }
  }

  CHECK_THROWS_AS((void)geodesic(s1, IndexSet::atom(Point::box1(0.8)),
                                 IndexSet::atom(Point::box1(0.2)), 2),
                  std::invalid_argument);
  // zero-distance nested pair (both atoms have measure zero)
  const Space sz = box2d();
  CHECK_THROWS_AS((void)geodesic(sz, IndexSet::atom(Point::box2(0.0, 0.5)),
                                 IndexSet::atom(Point::box2(0.0, 0.9)), 2),
                  std::invalid_argument);
}

TEST_CASE("mesh delta shrinks") {
  const Space s1 = box1d();
  for (int n = 1; n <= 6; ++n) {
    const double delta = mesh_delta(s1, MeshLevel(s1.domain, n));
    CHECK(delta == doctest::Approx(std::ldexp(1.0, -n)).epsilon(1e-12));
  }
  const Space s2 = box2d();
  double prev = 1e9;
  for (int n = 1; n <= 6; ++n) {
    const double delta = mesh_delta(s2, MeshLevel(s2.domain, n));
    CHECK(delta <= prev + 1e-12);
    prev = delta;
    // max cell diameter also shrinks
    double diam = 0.0;
    for (const auto& c : left_cells(MeshLevel(s2.domain, n)))
      diam = std::max(diam, cell_diameter(s2, c));
    CHECK(diam <= 4.0 * std::ldexp(1.0, -n) + 1e-12);
  }
  // degenerate singleton mesh
  CHECK(mesh_delta(s1, MeshLevel(s1.domain, 0)) == 0.0);
}

TEST_CASE("SHAPE and linear independence, small meshes") {
  // Tip order mirrors inclusion exactly, which carries SHAPE for mesh families.
  for (int p = 1; p <= 2; ++p) {
    const Space s = Space::box(p, 1.0);
    const MeshLevel mesh(s.domain, 3);
    std::vector<Point> tips;
    mesh.for_each_tip([&](const Point& t) { tips.push_back(t); });
    Rng rng(61, 0);
    const auto pick = [&]() -> const Point& {
      return tips[static_cast<std::size_t>(rng.uniform() * tips.size()) % tips.size()];
    };
    for (int k = 0; k < 500; ++k) {
      const Point& a = pick();
      const Point& b = pick();
      CHECK(s.domain.leq(a, b) == subset(s.domain, IndexSet::atom(a), IndexSet::atom(b)));
    }
    // random covering families: A <= union iff A <= some member (join irreducibility)
    for (int k = 0; k < 300; ++k) {
      const Point a = pick();
      std::vector<Point> family;
      for (int i = 0; i < 4; ++i) family.push_back(pick());
      bool tip_covered = false;
      for (const auto& f : family) tip_covered = tip_covered || s.domain.leq(a, f);
      bool covered = true;  // A(a) subset of the union, checked on all mesh points
      mesh.for_each_tip([&](const Point& t) {
        if (!covered || !s.domain.leq(t, a)) return;
        bool in_union = false;
        for (const auto& f : family) in_union = in_union || s.domain.leq(t, f);
        covered = in_union;
      });
      CHECK(covered == tip_covered);
    }
  }

  // linear independence: cell-vs-atom incidence is triangular with unit
  // diagonal under a linear extension of the tip order
  const Space s = box2d();
  const MeshLevel mesh(s.domain, 2);
  std::vector<Point> tips;
  mesh.for_each_tip([&](const Point& t) { tips.push_back(t); });
  std::sort(tips.begin(), tips.end(), [&](const Point& a, const Point& b) {
    const double ma = a.x[0] + a.x[1], mb = b.x[0] + b.x[1];
    if (ma != mb) return ma < mb;
    return s.domain.tip_less(a, b);
  });
  for (std::size_t i = 0; i < tips.size(); ++i) {
    for (std::size_t j = 0; j < tips.size(); ++j) {
      const bool inside = s.domain.leq(tips[i], tips[j]);  // cell_i inside A(tip_j)
      if (i == j) CHECK(inside);
      if (inside) CHECK(j >= i);  // triangular: no cell lies in an earlier atom
    }
  }
}

TEST_CASE("tree mesh and left neighborhoods") {
  const Space s = small_tree();
  const MeshLevel m1(s.domain, 1);
  CHECK(m1.tree_tips().size() == 3);  // root + 2 children
  const auto cell = left_neighborhood(m1, Point::tree(1));
  REQUIRE_FALSE(cell.whole_space);
  REQUIRE(cell.cell.subtracted.size() == 1);
  CHECK(cell.cell.subtracted[0].tip.node == 0);
  // deeper node is not covered at level 1
  CHECK(left_neighborhood(m1, Point::tree(3)).whole_space);
  // left neighborhoods are singletons: {t}
  CHECK(increment_contains(s.domain, cell.cell, Point::tree(1)));
  CHECK_FALSE(increment_contains(s.domain, cell.cell, Point::tree(0)));
  CHECK_FALSE(increment_contains(s.domain, cell.cell, Point::tree(3)));
}
