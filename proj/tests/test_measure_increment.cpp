#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "silevy/rng.hpp"
#include "silevy/increment_map.hpp"

using namespace silevy;

namespace {

Space box2d(double side = 1.0) { return Space::box(2, side); }

Point rnd_point(Rng& rng, int p, double side) {
  Point t;
  t.dim = p;
  for (int i = 0; i < p; ++i) t.x[i] = rng.uniform(0.0, side);
  return t;
}

// h(A) = sum of cell weights over the cells inside A, an additive oracle.
struct CellSumOracle {
  const Space* space;
  CellGrid grid;
  std::vector<double> w;

  CellSumOracle(const Space& s, int level, Rng& rng, bool dyadic)
      : space(&s), grid(s.domain, level), w(grid.cell_count()) {
    for (auto& v : w) {
      v = rng.uniform();
      if (dyadic) v = std::floor(v * 1048576.0) / 1048576.0;  // multiples of 2^-20
    }
  }

  SetFunction h() const {
    return [this](const IndexSet& a) {
      if (a.is_empty()) return 0.0;
      double total = 0.0;
      for (std::size_t i = 0; i < grid.cell_count(); ++i)
        if (space->domain.leq(grid.cell_tip(i), a.tip)) total += w[i];
      return total;
    };
  }

  double direct_sum(const IncrementSet& c) const {
    double total = 0.0;
    for (std::size_t i = 0; i < grid.cell_count(); ++i) {
      // the whole cell sits inside C iff the tip does and no subtracted atom
      // meets it; for aligned sets the witness points suffice
      bool inside = increment_contains(space->domain, c, grid.cell_tip(i));
      if (inside) total += w[i];
    }
    return total;
  }
};

IncrementSet random_increment(const Space& s, const MeshLevel& mesh, Rng& rng, int max_parts) {
  std::vector<Point> tips;
  mesh.for_each_tip([&](const Point& t) { tips.push_back(t); });
  const auto pick = [&]() {
    return tips[static_cast<std::size_t>(rng.uniform() * tips.size()) % tips.size()];
  };
  Point top = pick();
  for (int i = 0; i < s.domain.dim(); ++i) top.x[i] = std::max(top.x[i], 0.25);
  std::vector<IndexSet> parts;
  const int k = static_cast<int>(rng.uniform() * (max_parts + 1));
  for (int i = 0; i < k; ++i) parts.push_back(IndexSet::atom(s.domain.meet(pick(), top)));
  return extremal_rep(s.domain, IndexSet::atom(top), parts);
}

}  // namespace

TEST_CASE("measure of atoms") {
  const Space s = box2d(2.0);
  CHECK(s.m_of(IndexSet::atom(Point::box2(0.5, 2.0))) == doctest::Approx(1.0));
  CHECK(s.m_of(IndexSet::empty()) == 0.0);
  // tree with unit edges: node at depth 3 has measure 3, root 0
  std::vector<Domain::TreeNode> nodes(4);
  nodes[1].parent = 0;
  nodes[2].parent = 1;
  nodes[3].parent = 2;
  const Space st = Space::tree(std::move(nodes));
  CHECK(st.m_of(IndexSet::atom(Point::tree(3))) == 3.0);
  CHECK(st.m_of(IndexSet::atom(Point::tree(0))) == 0.0);
}

TEST_CASE("measure of increment sets by inclusion-exclusion") {
  const Space s = box2d(2.0);
  // m([0,1]^2 \ (A((.5,1)) u A((1,.5)))) = 1 - .5 - .5 + .25
  const IncrementSet c = extremal_rep(
      s.domain, IndexSet::atom(Point::box2(1, 1)),
      {IndexSet::atom(Point::box2(0.5, 1)), IndexSet::atom(Point::box2(1, 0.5))});
  CHECK(s.m_of(c) == doctest::Approx(0.25).epsilon(1e-12));
  // plain atom and empty set
  CHECK(s.m_of(IncrementSet::of(IndexSet::atom(Point::box2(1, 1)))) == doctest::Approx(1.0));
  CHECK(s.m_of(extremal_rep(s.domain, IndexSet::atom(Point::box2(1, 1)),
                            {IndexSet::atom(Point::box2(2, 2))})) == 0.0);
  // fine-grid counting oracle on random increments
  Rng rng(71, 0);
  const MeshLevel mesh(s.domain, 2);
  for (int k = 0; k < 25; ++k) {
    const IncrementSet c2 = random_increment(s, mesh, rng, 3);
    const int n = 200;
    double count = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (increment_contains(s.domain, c2, Point::box2((i + 0.5) * 2.0 / n, (j + 0.5) * 2.0 / n)))
          count += 1.0;
    CHECK(s.m_of(c2) == doctest::Approx(count * 4.0 / (n * n)).epsilon(0.0).scale(1.0).epsilon(0.05));
  }
  // cell masses tile the mesh extent
  for (int n = 1; n <= 5; ++n) {
    const MeshLevel m(s.domain, n);
    double total = 0.0;
    for (const auto& cell : left_cells(m)) total += s.m_of(cell);
    CHECK(std::fabs(total - 4.0) <= 1e-12);
  }
}

TEST_CASE("delta_h: rectangular increments and telescoping") {
  const Space s = box2d(2.0);
  // h(A(t)) = t1 t2: the rectangular increment of (s,t] is (t1-s1)(t2-s2)
  const SetFunction h = [&](const IndexSet& a) {
    return a.is_empty() ? 0.0 : a.tip.x[0] * a.tip.x[1];
  };
  const MeshLevel mesh(s.domain, 1);
  const IncrementSet rect = extremal_rep(
      s.domain, IndexSet::atom(Point::box2(1, 1)),
      {IndexSet::atom(Point::box2(0.5, 1)), IndexSet::atom(Point::box2(1, 0.5))});
  CHECK(delta_h(s.domain, h, rect) == doctest::Approx(0.25).epsilon(1e-12));

  // 1-d telescoping
  const Space s1 = Space::box(1, 1.0);
  const SetFunction h1 = [&](const IndexSet& a) {
    return a.is_empty() ? 0.0 : std::sin(3.0 * a.tip.x[0]);
  };
  const IncrementSet seg =
      extremal_rep(s1.domain, IndexSet::atom(Point::box1(0.8)), {IndexSet::atom(Point::box1(0.3))});
  CHECK(delta_h(s1.domain, h1, seg) ==
        doctest::Approx(std::sin(3.0 * 0.8) - std::sin(3.0 * 0.3)).epsilon(1e-12));

  // h = m(.) has increment map m(C), two expansions of the same signs
  Rng rng(73, 0);
  const SetFunction hm = [&](const IndexSet& a) { return s.m_of(a); };
  for (int k = 0; k < 50; ++k) {
    const IncrementSet c = random_increment(s, MeshLevel(s.domain, 3), rng, 3);
    CHECK(delta_h(s.domain, hm, c) == doctest::Approx(s.m_of(c)).epsilon(1e-12));
  }
}

TEST_CASE("delta_h equals the cell-sum oracle exactly on dyadic weights") {
  Rng rng(79, 0);
  for (int p = 1; p <= 3; ++p) {
    const Space s = Space::box(p, 1.0);
    const int level = p == 3 ? 3 : 4;
    const CellSumOracle oracle(s, level, rng, /*dyadic=*/true);
    const SetFunction h = oracle.h();
    const MeshLevel mesh(s.domain, level);
    for (int k = 0; k < 40; ++k) {
      const IncrementSet c = random_increment(s, mesh, rng, p);
      // dyadic weights make both routes exact in double arithmetic
      CHECK(delta_h(s.domain, h, c) == oracle.direct_sum(c));
    }
  }
}

TEST_CASE("delta_h_union is additive and rejects overlaps") {
  const Space s = box2d();
  Rng rng(83, 0);
  const CellSumOracle oracle(s, 3, rng, false);
  const SetFunction h = oracle.h();
  const MeshLevel mesh(s.domain, 3);
  // adjacent 1-d style strips: telescoped difference
  const IncrementSet left = extremal_rep(
      s.domain, IndexSet::atom(Point::box2(0.5, 1)), {IndexSet::atom(Point::box2(0.25, 1))});
  const IncrementSet right = extremal_rep(
      s.domain, IndexSet::atom(Point::box2(0.75, 1)), {IndexSet::atom(Point::box2(0.5, 1))});
  const std::vector<IncrementSet> both{left, right};
  CHECK(delta_h_union(s.domain, h, both) ==
        delta_h(s.domain, h, left) + delta_h(s.domain, h, right));
  const std::vector<IncrementSet> one{left};
  CHECK(delta_h_union(s.domain, h, one) == delta_h(s.domain, h, left));
  CHECK(delta_h_union(s.domain, h, std::span<const IncrementSet>{}) == 0.0);
  const std::vector<IncrementSet> overlap{
      left, extremal_rep(s.domain, IndexSet::atom(Point::box2(0.5, 0.5)), {})};
  CHECK_THROWS_AS((void)delta_h_union(s.domain, h, overlap), std::invalid_argument);

  // random disjoint pairs assembled from mesh cells
  const auto cells = left_cells(mesh);
  for (int k = 0; k < 200; ++k) {
    const auto& c1 = cells[static_cast<std::size_t>(rng.uniform() * cells.size()) % cells.size()];
    const auto& c2 = cells[static_cast<std::size_t>(rng.uniform() * cells.size()) % cells.size()];
    if (increments_intersect(s.domain, c1, c2)) continue;
    const std::vector<IncrementSet> pair{c1, c2};
    CHECK(delta_h_union(s.domain, h, pair) ==
          delta_h(s.domain, h, c1) + delta_h(s.domain, h, c2));
  }
}

TEST_CASE("simple functions round-trip through the C-representation") {
  const Space s = box2d();
  Rng rng(89, 0);
  std::vector<std::pair<double, IndexSet>> span_terms;
  for (int i = 0; i < 5; ++i)
    span_terms.emplace_back(rng.uniform(-2.0, 2.0), IndexSet::atom(rnd_point(rng, 2, 1.0)));
  const SimpleFunction f = c_representation(s, span_terms, 4);
  // terms are pairwise disjoint
  for (std::size_t i = 0; i < f.terms.size(); ++i)
    for (std::size_t j = i + 1; j < f.terms.size(); ++j)
      CHECK_FALSE(increments_intersect(s.domain, f.terms[i].set, f.terms[j].set));
  // pointwise equality with the span evaluation on a sample grid
  for (int k = 0; k < 400; ++k) {
    const Point t = rnd_point(rng, 2, 1.0);
    double direct = 0.0;
    for (const auto& [c, a] : span_terms)
      if (set_contains(s.domain, a, t)) direct += c;
    // the representation lives on the level-4 mesh: evaluate at the cell tip
    const CellGrid grid(s.domain, 4);
    const Point rep = grid.cell_tip(grid.locate(t));
    double direct_rep = 0.0;
    for (const auto& [c, a] : span_terms)
      if (set_contains(s.domain, a, rep)) direct_rep += c;
    CHECK(f.eval(s.domain, t) == doctest::Approx(direct_rep).epsilon(1e-12));
    (void)direct;
  }
}

TEST_CASE("approximate_borel realizes the grid Littlewood principle") {
  const Space s = box2d();
  // a mask that is already a union of level-2 cells is recovered exactly
  const GridMask exact = GridMask::from_predicate(s, 2, [](const Point& t) {
    return t.x[0] > 0.5 && t.x[1] > 0.25;
  });
  const auto cover = approximate_borel(s, exact, 1e-9);
  double cover_mass = 0.0;
  for (const auto& c : cover) cover_mass += s.m_of(c);
  CHECK(cover_mass == doctest::Approx(exact.mass(s)).epsilon(1e-12));
  for (std::size_t i = 0; i < cover.size(); ++i)
    for (std::size_t j = i + 1; j < cover.size(); ++j)
      CHECK_FALSE(increments_intersect(s.domain, cover[i], cover[j]));

  // quarter disk at resolution 7 within 0.05
  const GridMask disk = GridMask::from_predicate(s, 7, [](const Point& t) {
    return t.x[0] * t.x[0] + t.x[1] * t.x[1] <= 1.0;
  });
  const auto du = approximate_borel(s, disk, 0.05);
  // the cover is outer: mass difference = d_m distance <= eps
  double mass = 0.0;
  for (const auto& c : du) mass += s.m_of(c);
  CHECK(mass >= disk.mass(s) - 1e-12);
  CHECK(mass - disk.mass(s) <= 0.05 + 1e-12);

  // empty mask
  const GridMask none = GridMask::from_predicate(s, 3, [](const Point&) { return false; });
  CHECK(approximate_borel(s, none, 0.01).empty());

  CHECK_THROWS_AS((void)approximate_borel(s, disk, 0.0), std::invalid_argument);
}
