#include "silevy/increment_map.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace silevy {

double delta_h(const Domain& d, const SetFunction& h, const IncrementSet& c) {
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
    total += (bits % 2 == 0 ? 1.0 : -1.0) * h(cap);
  }
  return total;
}

double delta_h_union(const Domain& d, const SetFunction& h, std::span<const IncrementSet> region) {
  for (std::size_t i = 0; i < region.size(); ++i)
    for (std::size_t j = i + 1; j < region.size(); ++j)
      if (increments_intersect(d, region[i], region[j]))
        throw std::invalid_argument("delta_h_union: members " + std::to_string(i) + " and " +
                                    std::to_string(j) + " overlap");
  double total = 0.0;
  for (const auto& c : region) total += delta_h(d, h, c);
  return total;
}

double SimpleFunction::eval(const Domain& d, const Point& t) const {
  for (const auto& term : terms)
    if (increment_contains(d, term.set, t)) return term.coef;
  return 0.0;
}

SimpleFunction c_representation(const Space& s,
                                std::span<const std::pair<double, IndexSet>> span_terms,
                                int mesh_level) {
  const MeshLevel mesh(s.domain, mesh_level);
  SimpleFunction f;
  for (const auto& cell : left_cells(mesh)) {
    if (cell.a0.is_empty()) continue;
    double coef = 0.0;
    for (const auto& [c, a] : span_terms)
      if (set_contains(s.domain, a, cell.a0.tip)) coef += c;  // cell <= A iff its tip is in A
    if (coef != 0.0) f.terms.push_back({coef, cell});
  }
  return f;
}

GridMask GridMask::from_predicate(const Space& s, int level,
                                  const std::function<bool(const Point&)>& pred) {
  const CellGrid grid(s.domain, level);
  GridMask m;
  m.level = level;
  m.cells.resize(grid.cell_count());
  for (std::size_t i = 0; i < grid.cell_count(); ++i)
    m.cells[i] = pred(grid.cell_mid(i)) ? 1 : 0;
  return m;
}

double GridMask::mass(const Space& s) const {
  const CellGrid grid(s.domain, level);
  double total = 0.0;
  for (std::size_t i = 0; i < cells.size(); ++i)
    if (cells[i]) total += grid.cell_measure(i, s.measure.scale);
  return total;
}

std::vector<IncrementSet> approximate_borel(const Space& s, const GridMask& mask, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("approximate_borel: eps must be > 0");
  const CellGrid fine(s.domain, mask.level);
  if (mask.cells.size() != fine.cell_count())
    throw std::invalid_argument("approximate_borel: mask size does not match its level");

  bool all_empty = true;
  for (auto b : mask.cells)
    if (b) {
      all_empty = false;
      break;
    }
  if (all_empty) return {};

  double best = std::numeric_limits<double>::infinity();
  for (int k = 1; k <= mask.level; ++k) {
    const CellGrid coarse(s.domain, k);
    const MeshLevel coarse_mesh(s.domain, k);
    // Outer cover: a coarse cell is kept when it meets the mask; the error is
    // the covered-but-unmasked mass.
    std::vector<std::uint8_t> keep(coarse.cell_count(), 0);
    double err = 0.0;
    for (std::size_t i = 0; i < fine.cell_count(); ++i) {
      const std::size_t ci = coarse.locate(fine.cell_mid(i));
      if (mask.cells[i]) keep[ci] = 1;
    }
    for (std::size_t i = 0; i < fine.cell_count(); ++i)
      if (!mask.cells[i] && keep[coarse.locate(fine.cell_mid(i))])
        err += fine.cell_measure(i, s.measure.scale);
    best = std::min(best, err);
    if (err <= eps) {
      std::vector<IncrementSet> out;
      for (std::size_t ci = 0; ci < coarse.cell_count(); ++ci) {
        if (!keep[ci]) continue;
        out.push_back(left_neighborhood(coarse_mesh, coarse.cell_tip(ci)).cell);
      }
      return out;
    }
  }
  throw std::runtime_error("approximate_borel: eps unachievable at max resolution; best distance " +
                           std::to_string(best));
}

}  // namespace silevy
