#pragma once

#include "silevy/sets.hpp"

namespace silevy {

// Reference measure m on (T, B): scaled Lebesgue for boxes, edge-length for
// trees (root carries no mass).  Finite on every atom of the finite domain.
struct Measure {
  enum class Kind { BoxLebesgue, TreeEdgeLength };
  Kind kind = Kind::BoxLebesgue;
  double scale = 1.0;

  static Measure lebesgue(double scale = 1.0) { return Measure{Kind::BoxLebesgue, scale}; }
  static Measure edge_length(double scale = 1.0) { return Measure{Kind::TreeEdgeLength, scale}; }
};

double measure_of_atom_tip(const Domain& d, const Measure& m, const Point& t);
double measure_of_A(const Domain& d, const Measure& m, const IndexSet& a);
// Exact inclusion-exclusion over all subsets of the subtracted list.
double measure_of_C(const Domain& d, const Measure& m, const IncrementSet& c);

}  // namespace silevy
