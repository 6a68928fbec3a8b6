#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "silevy/sets.hpp"

namespace silevy {

// Finite mesh A_n.  For boxes the tips are the points with coordinates
// k*2^-n, k in [0, n*2^n], clipped to the domain side (the side itself is
// appended when it is off-grid so T_n always covers the domain).  For trees
// the tips are the nodes of depth <= n.  The empty set and A(0_T) are always
// members.
class MeshLevel {
 public:
  MeshLevel(const Domain& d, int n);

  int level() const { return n_; }
  const Domain& domain() const { return *domain_; }

  const std::vector<double>& axis() const { return axis_; }      // box
  const std::vector<std::int32_t>& tree_tips() const { return tree_tips_; }

  std::size_t tip_count() const;
  Point tip(std::size_t idx) const;
  void for_each_tip(const std::function<void(const Point&)>& fn) const;

  bool on_mesh(const Point& t) const;

  // g_n: smallest mesh element containing A; nullopt plays the T cap for
  // points beyond the mesh extent (cannot happen for in-domain atoms).
  std::optional<IndexSet> round_up(const IndexSet& a) const;

  // Largest mesh point <= x on the given axis (box), as an index into axis().
  std::size_t axis_floor(double x) const;
  std::size_t axis_ceil(double x) const;

 private:
  const Domain* domain_;
  int n_ = 0;
  std::vector<double> axis_;
  std::vector<std::int32_t> tree_tips_;
};

// The unique left neighborhood of C^l(A_n) containing a point, or the whole
// space when the point is not covered (paper convention C_n(t) = T).
struct LeftNeighborhood {
  bool whole_space = false;
  IncrementSet cell;
};

LeftNeighborhood left_neighborhood(const MeshLevel& mesh, const Point& t);

// All cells of C^l(A_n), in canonical extremal form.  Includes the
// measure-zero boundary cells (tips with a zero coordinate); they are needed
// for the partition property.
std::vector<IncrementSet> left_cells(const MeshLevel& mesh);

// The positive-measure cells of C^l(A_n) for a box (all cells for a tree),
// addressable by a flat index; used to lay out per-cell simulation data.
class CellGrid {
 public:
  CellGrid(const Domain& d, int n);

  int level() const { return n_; }
  const Domain& domain() const { return *domain_; }
  std::size_t cell_count() const { return count_; }
  int box_cells_per_axis() const { return static_cast<int>(edges_.size()) - 1; }
  const std::vector<double>& edges() const { return edges_; }

  Point cell_tip(std::size_t idx) const;       // upper corner / tree node
  Point cell_mid(std::size_t idx) const;       // midpoint representative
  double cell_measure(std::size_t idx, double scale) const;
  std::size_t locate(const Point& t) const;    // cell containing t (positive cells)

  // Box helpers: flat index <-> per-axis cell indices (0-based, cell i spans
  // (edges[i], edges[i+1]]).
  std::size_t flat(const int* ix) const;
  void unflat(std::size_t idx, int* ix) const;

  // Multi-index (exclusive upper cell bounds) of the box [0, tip]; the atom
  // A(tip) contains exactly the cells with indices below these bounds.
  // Returns false if the tip is not aligned with the cell edges.
  bool prefix_bounds(const Point& tip, int* bounds) const;

  double total_measure(double scale) const;

 private:
  const Domain* domain_;
  int n_ = 0;
  std::vector<double> edges_;   // box: shared cell boundaries per axis (0 = first edge)
  std::size_t count_ = 0;
};

}  // namespace silevy
