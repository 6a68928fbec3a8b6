#include "silevy/measure.hpp"

#include <stdexcept>

namespace silevy {

double measure_of_atom_tip(const Domain& d, const Measure& m, const Point& t) {
  if (d.is_box()) {
    if (m.kind != Measure::Kind::BoxLebesgue) throw std::invalid_argument("box domain needs a Lebesgue measure");
    double v = m.scale;
    for (int i = 0; i < d.dim(); ++i) v *= t.x[i];
    return v;
  }
  if (m.kind != Measure::Kind::TreeEdgeLength) throw std::invalid_argument("tree domain needs an edge-length measure");
  return m.scale * d.nodes().at(t.node).depth_w;
}

double measure_of_A(const Domain& d, const Measure& m, const IndexSet& a) {
  if (a.is_empty()) return 0.0;
  return measure_of_atom_tip(d, m, a.tip);
}

double measure_of_C(const Domain& d, const Measure& m, const IncrementSet& c) {
  if (c.a0.is_empty()) return 0.0;
  const std::size_t k = c.subtracted.size();
  if (k > 20) throw std::invalid_argument("inclusion-exclusion over more than 20 sets refused");
  double total = 0.0;
  for (std::size_t mask = 0; mask < (1ULL << k); ++mask) {
    IndexSet cap = c.a0;
    int bits = 0;
    for (std::size_t i = 0; i < k; ++i) {
      if (mask & (1ULL << i)) {
        cap = intersect(d, cap, c.subtracted[i]);
        ++bits;
      }
    }
    total += (bits % 2 == 0 ? 1.0 : -1.0) * measure_of_A(d, m, cap);
  }
  return total;
}

}  // namespace silevy
