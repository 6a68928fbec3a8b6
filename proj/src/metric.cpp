#include "silevy/metric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace silevy {

namespace {

// Hausdorff distance between two atoms, closed form.  The empty set is
// identified with A(0_T) (both are metrically indistinguishable minima).
double hausdorff_atoms(const Domain& d, const IndexSet& a, const IndexSet& b) {
  const Point s = a.is_empty() ? d.origin() : a.tip;
  const Point t = b.is_empty() ? d.origin() : b.tip;
  if (d.is_box()) {
    double fwd = 0.0, bwd = 0.0;
    for (int i = 0; i < d.dim(); ++i) {
      const double diff = s.x[i] - t.x[i];
      if (diff > 0.0) fwd += diff * diff;
      if (diff < 0.0) bwd += diff * diff;
    }
    return std::sqrt(std::max(fwd, bwd));
  }
  const auto& nodes = d.nodes();
  const Point w = d.meet(s, t);
  const double dw = nodes[w.node].depth_w;
  return std::max(nodes[s.node].depth_w, nodes[t.node].depth_w) - dw;
}

}  // namespace

double d_A(const Space& sp, const IndexSet& a, const IndexSet& b) {
  switch (sp.metric.kind) {
    case Metric::Kind::SymmDiff:
      return sp.m_of(a) + sp.m_of(b) - 2.0 * sp.m_of(intersect(sp.domain, a, b));
    case Metric::Kind::HausdorffTips:
      return hausdorff_atoms(sp.domain, a, b);
  }
  return 0.0;
}

double d_T(const Space& sp, const Point& u, const Point& v) {
  return d_A(sp, IndexSet::atom(u), IndexSet::atom(v));
}

double d_C(const Space& sp, const IncrementSet& a, const IncrementSet& b) {
  std::vector<IndexSet> la, lb;
  la.push_back(a.a0);
  la.insert(la.end(), a.subtracted.begin(), a.subtracted.end());
  lb.push_back(b.a0);
  lb.insert(lb.end(), b.subtracted.begin(), b.subtracted.end());
  double h = 0.0;
  for (const auto& x : la) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& y : lb) best = std::min(best, d_A(sp, x, y));
    h = std::max(h, best);
  }
  for (const auto& y : lb) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& x : la) best = std::min(best, d_A(sp, x, y));
    h = std::max(h, best);
  }
  return h;
}

double mesh_delta(const Space& sp, const MeshLevel& mesh) {
  const Domain& d = sp.domain;
  double delta = 0.0;
  if (d.is_box()) {
    const auto& axis = mesh.axis();
    if (axis.size() < 2) return 0.0;
    mesh.for_each_tip([&](const Point& t) {
      for (int i = 0; i < d.dim(); ++i) {
        const std::size_t k = mesh.axis_floor(t.x[i]);
        if (axis[k] != t.x[i] || k == 0) continue;
        Point low = t;
        low.x[i] = axis[k - 1];
        delta = std::max(delta, d_A(sp, IndexSet::atom(low), IndexSet::atom(t)));
      }
    });
    return delta;
  }
  for (auto id : mesh.tree_tips()) {
    if (id == 0) continue;
    const auto par = d.nodes()[id].parent;
    delta = std::max(delta, d_A(sp, IndexSet::atom(Point::tree(par)), IndexSet::atom(Point::tree(id))));
  }
  return delta;
}

double cell_diameter(const Space& sp, const IncrementSet& cell) {
  const Domain& d = sp.domain;
  if (cell.a0.is_empty()) return 0.0;
  if (!d.is_box()) return 0.0;  // tree cells are singletons
  // Corners of the cell box: each axis at the upper tip value or at the
  // subtracted predecessor value on that axis (lower edge).
  const Point& up = cell.a0.tip;
  Point lo = up;
  for (const auto& s : cell.subtracted)
    for (int i = 0; i < d.dim(); ++i) lo.x[i] = std::min(lo.x[i], s.tip.x[i]);
  std::vector<Point> corners;
  const int p = d.dim();
  for (int mask = 0; mask < (1 << p); ++mask) {
    Point c = up;
    for (int i = 0; i < p; ++i)
      if (mask & (1 << i)) c.x[i] = lo.x[i];
    corners.push_back(c);
  }
  double diam = 0.0;
  for (std::size_t i = 0; i < corners.size(); ++i)
    for (std::size_t j = i + 1; j < corners.size(); ++j)
      diam = std::max(diam, d_T(sp, corners[i], corners[j]));
  return diam;
}

}  // namespace silevy
