#pragma once

#include <functional>
#include <span>

#include "silevy/metric.hpp"

namespace silevy {

using SetFunction = std::function<double(const IndexSet&)>;

// Unique additive extension of h (with h(empty)=0) to increment sets, by the
// signed inclusion-exclusion expansion of the indicator of C.
double delta_h(const Domain& d, const SetFunction& h, const IncrementSet& c);

// Sum over pairwise disjoint members; additivity is exact by construction.
// Throws if two members intersect.
double delta_h_union(const Domain& d, const SetFunction& h, std::span<const IncrementSet> region);

// Simple function in C-representation: nonzero coefficients on pairwise
// disjoint increment sets.
struct SimpleFunction {
  struct Term {
    double coef;
    IncrementSet set;
  };
  std::vector<Term> terms;

  double eval(const Domain& d, const Point& t) const;
};

// Rewrites a span-of-indicators combination sum c_i 1_{A_i} as a
// C-representation, using the cells of C^l(A_n) at the given mesh level.
SimpleFunction c_representation(const Space& s, std::span<const std::pair<double, IndexSet>> span_terms,
                                int mesh_level);

// Indicator of a Borel-like set, given per-cell on the grid at `level`.
struct GridMask {
  int level = 0;
  std::vector<std::uint8_t> cells;  // indexed like CellGrid(domain, level)

  static GridMask from_predicate(const Space& s, int level, const std::function<bool(const Point&)>& pred);
  double mass(const Space& s) const;
};

// Littlewood's first principle at grid scale: a disjoint union of left
// neighborhoods within d_m-distance eps of the mask.  The cover is outer
// (cells meeting the mask) at the coarsest level that fits the budget.
// Throws std::runtime_error carrying the best achieved distance when even the
// mask's own level cannot reach eps.
std::vector<IncrementSet> approximate_borel(const Space& s, const GridMask& mask, double eps);

}  // namespace silevy
