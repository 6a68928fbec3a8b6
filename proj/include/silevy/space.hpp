#pragma once

#include "silevy/measure.hpp"

namespace silevy {

// Compatible metric on the indexing collection: the symmetric-difference
// metric d_m(A,A') = m(A xor A'), or the Hausdorff distance between the sets
// themselves (closed-form for boxes and trees).
struct Metric {
  enum class Kind { SymmDiff, HausdorffTips };
  Kind kind = Kind::SymmDiff;

  static Metric symmdiff() { return Metric{Kind::SymmDiff}; }
  static Metric hausdorff() { return Metric{Kind::HausdorffTips}; }
};

// Domain + reference measure + metric, the working frame for every module.
struct Space {
  Domain domain;
  Measure measure;
  Metric metric;

  static Space box(int p, double side, double scale = 1.0, Metric metric = Metric::symmdiff()) {
    return Space{Domain::box(p, side), Measure::lebesgue(scale), metric};
  }
  static Space tree(std::vector<Domain::TreeNode> nodes, double scale = 1.0,
                    Metric metric = Metric::symmdiff()) {
    return Space{Domain::tree(std::move(nodes)), Measure::edge_length(scale), metric};
  }

  double m_of(const IndexSet& a) const { return measure_of_A(domain, measure, a); }
  double m_of(const IncrementSet& c) const { return measure_of_C(domain, measure, c); }
};

}  // namespace silevy
