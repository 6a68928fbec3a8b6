#pragma once

#include "silevy/metric.hpp"

namespace silevy {

// Discretized victiny V_n(A, rho) = union of maximal elements of the mesh
// ball minus the intersection of its minimal elements.
struct VictinyRegion {
  std::vector<IndexSet> maximal;  // the upper envelope
  IndexSet lower;                 // intersection of the minimal elements
  bool empty = true;              // mesh ball was empty

  bool contains(const Domain& d, const Point& t) const;
  // Disjoint exact decomposition: maximal[i] \ (lower u maximal[<i]).
  std::vector<IncrementSet> to_increments(const Domain& d) const;
};

VictinyRegion victiny_n(const Space& s, const IndexSet& a, double rho, const MeshLevel& mesh);

// Divergence qd(t, A) by bisection over rho of the discretized membership
// predicate.  `resolved` is false when membership never triggered up to the
// search ceiling, in which case `lo` is only a lower bound.
struct DivergenceResult {
  double lo = 0.0;
  double hi = 0.0;
  bool resolved = false;
  double value() const { return 0.5 * (lo + hi); }
};

DivergenceResult divergence(const Space& s, const Point& t, const IndexSet& a, int n_max, double tol);

// Closed-form divergence for the symmetric-difference metric on boxes and
// trees; agrees with the bisection up to discretization.
double qd_exact(const Space& s, const Point& t, const IndexSet& a);

// Victiny membership via qd: s in V(A, rho) iff qd(s, A) < rho.
bool in_victiny(const Space& s, const Point& t, const IndexSet& a, double rho);

// Increasing geodesic from a0 to a1 sampled at the 2^depth + 1 dyadics of
// [0,1].  Box midpoints come from scalar root-finding along the straight tip
// path; tree geodesics snap to the order path between the two tips.
std::vector<IndexSet> geodesic(const Space& s, const IndexSet& a0, const IndexSet& a1, int depth);

}  // namespace silevy
