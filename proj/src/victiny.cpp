#include "silevy/victiny.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace silevy {

bool VictinyRegion::contains(const Domain& d, const Point& t) const {
  if (empty) return false;
  if (!lower.is_empty() && set_contains(d, lower, t)) return false;
  for (const auto& a : maximal)
    if (set_contains(d, a, t)) return true;
  return false;
}

std::vector<IncrementSet> VictinyRegion::to_increments(const Domain& d) const {
  std::vector<IncrementSet> out;
  if (empty) return out;
  std::vector<IndexSet> removed;
  if (!lower.is_empty()) removed.push_back(lower);
  for (const auto& a : maximal) {
    IncrementSet c = extremal_rep(d, a, removed);
    if (!increment_is_empty_set(c)) out.push_back(std::move(c));
    removed.push_back(a);
  }
  return out;
}

VictinyRegion victiny_n(const Space& s, const IndexSet& a, double rho, const MeshLevel& mesh) {
  VictinyRegion region;
  if (!(rho > 0.0)) return region;  // V(A, rho) is empty for rho <= 0
  std::vector<IndexSet> members;
  if (d_A(s, IndexSet::empty(), a) < rho) members.push_back(IndexSet::empty());
  mesh.for_each_tip([&](const Point& t) {
    const IndexSet b = IndexSet::atom(t);
    if (d_A(s, b, a) < rho) members.push_back(b);
  });
  if (members.empty()) return region;
  region.empty = false;

  const Domain& d = s.domain;
  std::vector<IndexSet> minimal;
  for (std::size_t i = 0; i < members.size(); ++i) {
    bool is_max = true, is_min = true;
    for (std::size_t j = 0; j < members.size(); ++j) {
      if (i == j || set_eq(d, members[i], members[j])) continue;
      if (subset(d, members[i], members[j])) is_max = false;
      if (subset(d, members[j], members[i])) is_min = false;
    }
    if (is_max) region.maximal.push_back(members[i]);
    if (is_min) minimal.push_back(members[i]);
  }
  IndexSet lower = minimal.front();
  for (std::size_t i = 1; i < minimal.size(); ++i) lower = intersect(d, lower, minimal[i]);
  region.lower = lower;
  return region;
}

DivergenceResult divergence(const Space& s, const Point& t, const IndexSet& a, int n_max, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("divergence: tol must be > 0");
  s.domain.require_point(t);
  const MeshLevel mesh(s.domain, n_max);
  const auto member = [&](double rho) { return victiny_n(s, a, rho, mesh).contains(s.domain, t); };

  const double datom = d_A(s, IndexSet::atom(t), a);
  double hi = datom + mesh_delta(s, mesh) + tol;
  if (hi <= 0.0) hi = tol;
  DivergenceResult r;
  int expansions = 0;
  while (!member(hi)) {
    hi *= 2.0;
    if (++expansions > 24) {
      r.lo = hi;
      r.hi = std::numeric_limits<double>::infinity();
      r.resolved = false;
      return r;
    }
  }
  double lo = 0.0;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (member(mid))
      hi = mid;
    else
      lo = mid;
  }
  r.lo = lo;
  r.hi = hi;
  r.resolved = true;
  return r;
}

namespace {

double qd_exact_box(const Space& s, const Point& t, const IndexSet& a) {
  const Domain& d = s.domain;
  const Measure& m = s.measure;
  if (a.is_empty()) return measure_of_atom_tip(d, m, t);
  const Point& tip = a.tip;
  const int p = d.dim();
  if (d.leq(t, tip)) {
    // Cheapest exclusion lowers a single coordinate below t_i.
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < p; ++i) {
      double cost = m.scale * (tip.x[i] - t.x[i]);
      for (int j = 0; j < p; ++j)
        if (j != i) cost *= tip.x[j];
      best = std::min(best, cost);
    }
    return best;
  }
  // t outside A: the optimal covering atom has u_i in {t_i, tip_i} on the
  // coordinates where t_i <= tip_i, and u_i = t_i elsewhere.
  int free_axes[kMaxBoxDim];
  int nfree = 0;
  for (int i = 0; i < p; ++i)
    if (t.x[i] <= tip.x[i]) free_axes[nfree++] = i;
  double best = std::numeric_limits<double>::infinity();
  for (int mask = 0; mask < (1 << nfree); ++mask) {
    Point u = t;
    u.dim = p;
    for (int k = 0; k < nfree; ++k)
      if (mask & (1 << k)) u.x[free_axes[k]] = tip.x[free_axes[k]];
    const double cost = measure_of_atom_tip(d, m, u) + measure_of_atom_tip(d, m, tip) -
                        2.0 * measure_of_atom_tip(d, m, d.meet(u, tip));
    best = std::min(best, cost);
  }
  return best;
}

}  // namespace

double qd_exact(const Space& s, const Point& t, const IndexSet& a) {
  if (s.metric.kind != Metric::Kind::SymmDiff)
    throw std::invalid_argument("qd_exact is only available for the symmetric-difference metric");
  s.domain.require_point(t);
  if (s.domain.is_box()) return qd_exact_box(s, t, a);
  // Trees behave like the half line: qd(t, A) = d_A(A(t), A).
  return d_A(s, IndexSet::atom(t), a);
}

bool in_victiny(const Space& s, const Point& t, const IndexSet& a, double rho) {
  if (!(rho > 0.0)) return false;
  return qd_exact(s, t, a) < rho;
}

std::vector<IndexSet> geodesic(const Space& s, const IndexSet& a0, const IndexSet& a1, int depth) {
  const Domain& d = s.domain;
  if (a1.is_empty() || !subset(d, a0, a1) || set_eq(d, a0, a1))
    throw std::invalid_argument("geodesic: need a0 strictly contained in a1");
  const double dist = d_A(s, a0, a1);
  if (!(dist > 0.0)) throw std::invalid_argument("geodesic: endpoints at metric distance 0");
  if (depth < 0 || depth > 20) throw std::invalid_argument("geodesic: depth out of range");

  const std::size_t steps = std::size_t{1} << depth;
  std::vector<IndexSet> out(steps + 1);
  out.front() = a0;
  out.back() = a1;

  if (d.is_box()) {
    const Point t0 = a0.is_empty() ? d.origin() : a0.tip;
    const Point t1 = a1.tip;
    const auto at = [&](double x) {
      Point u;
      u.dim = d.dim();
      for (int i = 0; i < d.dim(); ++i) u.x[i] = t0.x[i] + x * (t1.x[i] - t0.x[i]);
      return IndexSet::atom(u);
    };
    for (std::size_t k = 1; k < steps; ++k) {
      const double target = dist * static_cast<double>(k) / static_cast<double>(steps);
      // d_A(a0, A(u(x))) is nondecreasing in x along the straight tip path.
      double lo = 0.0, hi = 1.0;
      for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (d_A(s, a0, at(mid)) < target)
          lo = mid;
        else
          hi = mid;
      }
      out[k] = at(0.5 * (lo + hi));
    }
    return out;
  }

  // Tree: walk the unique order path and snap each dyadic to the nearest
  // ancestor by metric distance from a0.
  std::vector<std::int32_t> chain;  // a1.tip down to a0 (exclusive)
  std::int32_t cur = a1.tip.node;
  const std::int32_t stop = a0.is_empty() ? -1 : a0.tip.node;
  while (cur != stop && cur != -1) {
    chain.push_back(cur);
    if (cur == 0) break;
    cur = d.nodes()[cur].parent;
  }
  std::reverse(chain.begin(), chain.end());
  for (std::size_t k = 1; k < steps; ++k) {
    const double target = dist * static_cast<double>(k) / static_cast<double>(steps);
    IndexSet best = a0;
    double best_err = target;
    for (auto id : chain) {
      const IndexSet b = IndexSet::atom(Point::tree(id));
      const double err = std::fabs(d_A(s, a0, b) - target);
      if (err < best_err) {
        best_err = err;
        best = b;
      }
    }
    out[k] = best;
  }
  return out;
}

}  // namespace silevy
