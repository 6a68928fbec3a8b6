#include "silevy/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace silevy {

namespace {

std::vector<double> box_axis_values(const Domain& d, int n) {
  // k * 2^-n for k in [0, n*2^n], clipped to the side; append the side when
  // it falls off-grid so the mesh always covers the domain.
  const double h = std::ldexp(1.0, -n);
  const double cap = std::min(static_cast<double>(n), d.side());
  std::vector<double> v;
  const long kmax = static_cast<long>(std::floor(cap / h + 1e-12));
  v.reserve(static_cast<std::size_t>(kmax) + 2);
  for (long k = 0; k <= kmax; ++k) v.push_back(static_cast<double>(k) * h);
  if (v.back() < d.side() && cap == d.side()) v.push_back(d.side());
  return v;
}

}  // namespace

MeshLevel::MeshLevel(const Domain& d, int n) : domain_(&d), n_(n) {
  if (n < 0) throw std::invalid_argument("mesh level must be >= 0");
  if (d.is_box()) {
    axis_ = box_axis_values(d, n);
  } else {
    for (std::size_t i = 0; i < d.nodes().size(); ++i)
      if (d.nodes()[i].depth <= n) tree_tips_.push_back(static_cast<std::int32_t>(i));
  }
}

std::size_t MeshLevel::tip_count() const {
  if (domain_->is_box()) {
    std::size_t c = 1;
    for (int i = 0; i < domain_->dim(); ++i) c *= axis_.size();
    return c;
  }
  return tree_tips_.size();
}

Point MeshLevel::tip(std::size_t idx) const {
  if (!domain_->is_box()) return Point::tree(tree_tips_.at(idx));
  Point t;
  t.dim = domain_->dim();
  std::size_t rem = idx;
  for (int i = 0; i < t.dim; ++i) {
    t.x[i] = axis_[rem % axis_.size()];
    rem /= axis_.size();
  }
  return t;
}

void MeshLevel::for_each_tip(const std::function<void(const Point&)>& fn) const {
  const std::size_t c = tip_count();
  for (std::size_t i = 0; i < c; ++i) fn(tip(i));
}

bool MeshLevel::on_mesh(const Point& t) const {
  if (!domain_->is_box()) return domain_->nodes().at(t.node).depth <= n_;
  for (int i = 0; i < domain_->dim(); ++i) {
    const auto it = std::lower_bound(axis_.begin(), axis_.end(), t.x[i]);
    if (it == axis_.end() || *it != t.x[i]) return false;
  }
  return true;
}

std::size_t MeshLevel::axis_floor(double x) const {
  auto it = std::upper_bound(axis_.begin(), axis_.end(), x);
  if (it == axis_.begin()) return 0;
  return static_cast<std::size_t>(std::distance(axis_.begin(), it)) - 1;
}

std::size_t MeshLevel::axis_ceil(double x) const {
  auto it = std::lower_bound(axis_.begin(), axis_.end(), x);
  if (it == axis_.end()) return axis_.size();  // beyond the mesh
  return static_cast<std::size_t>(std::distance(axis_.begin(), it));
}

std::optional<IndexSet> MeshLevel::round_up(const IndexSet& a) const {
  if (a.is_empty()) return IndexSet::empty();
  domain_->require_point(a.tip);
  if (!domain_->is_box()) {
    // Smallest mesh node above the tip on its branch; none if the node is
    // deeper than the mesh and no ancestor works (cannot happen: the node
    // itself has depth d; g_n keeps ancestors only when they contain A(t),
    // and only t itself does, so the cap applies for depth > n).
    if (domain_->nodes()[a.tip.node].depth <= n_) return a;
    return std::nullopt;
  }
  Point up;
  up.dim = domain_->dim();
  for (int i = 0; i < up.dim; ++i) {
    const std::size_t k = axis_ceil(a.tip.x[i]);
    if (k == axis_.size()) return std::nullopt;
    up.x[i] = axis_[k];
  }
  return IndexSet::atom(up);
}

LeftNeighborhood left_neighborhood(const MeshLevel& mesh, const Point& t) {
  const Domain& d = mesh.domain();
  d.require_point(t);
  if (!d.is_box()) {
    const auto& nodes = d.nodes();
    if (nodes[t.node].depth > mesh.level()) return LeftNeighborhood{true, {}};
    IncrementSet c;
    c.a0 = IndexSet::atom(t);
    if (t.node != 0) c.subtracted.push_back(IndexSet::atom(Point::tree(nodes[t.node].parent)));
    return LeftNeighborhood{false, std::move(c)};
  }
  const auto& axis = mesh.axis();
  Point up;
  up.dim = d.dim();
  for (int i = 0; i < up.dim; ++i) {
    const std::size_t k = mesh.axis_ceil(t.x[i]);
    if (k == axis.size()) return LeftNeighborhood{true, {}};  // beyond the mesh extent
    up.x[i] = axis[k];
  }
  IncrementSet c;
  c.a0 = IndexSet::atom(up);
  for (int i = 0; i < up.dim; ++i) {
    const std::size_t k = mesh.axis_ceil(t.x[i]);
    if (k == 0) continue;  // the {0} face has no proper predecessor on this axis
    Point low = up;
    low.x[i] = axis[k - 1];
    c.subtracted.push_back(IndexSet::atom(low));
  }
  std::sort(c.subtracted.begin(), c.subtracted.end(),
            [&d](const IndexSet& a, const IndexSet& b) { return d.tip_less(a.tip, b.tip); });
  return LeftNeighborhood{false, std::move(c)};
}

std::vector<IncrementSet> left_cells(const MeshLevel& mesh) {
  std::vector<IncrementSet> out;
  mesh.for_each_tip([&](const Point& t) {
    out.push_back(left_neighborhood(mesh, t).cell);
  });
  return out;
}

CellGrid::CellGrid(const Domain& d, int n) : domain_(&d), n_(n) {
  if (d.is_box()) {
    edges_ = box_axis_values(d, n);
    count_ = 1;
    for (int i = 0; i < d.dim(); ++i) count_ *= edges_.size() - 1;
  } else {
    count_ = 0;
    for (const auto& node : d.nodes())
      if (node.depth <= n) ++count_;
  }
}

Point CellGrid::cell_tip(std::size_t idx) const {
  if (!domain_->is_box()) return Point::tree(static_cast<std::int32_t>(idx));
  int ix[kMaxBoxDim] = {0, 0, 0};
  unflat(idx, ix);
  Point t;
  t.dim = domain_->dim();
  for (int i = 0; i < t.dim; ++i) t.x[i] = edges_[ix[i] + 1];
  return t;
}

Point CellGrid::cell_mid(std::size_t idx) const {
  if (!domain_->is_box()) return Point::tree(static_cast<std::int32_t>(idx));
  int ix[kMaxBoxDim] = {0, 0, 0};
  unflat(idx, ix);
  Point t;
  t.dim = domain_->dim();
  for (int i = 0; i < t.dim; ++i) t.x[i] = 0.5 * (edges_[ix[i]] + edges_[ix[i] + 1]);
  return t;
}

double CellGrid::cell_measure(std::size_t idx, double scale) const {
  if (!domain_->is_box()) return scale * domain_->nodes().at(idx).edge_len;
  int ix[kMaxBoxDim] = {0, 0, 0};
  unflat(idx, ix);
  double m = scale;
  for (int i = 0; i < domain_->dim(); ++i) m *= edges_[ix[i] + 1] - edges_[ix[i]];
  return m;
}

std::size_t CellGrid::locate(const Point& t) const {
  if (!domain_->is_box()) return static_cast<std::size_t>(t.node);
  const int cells = box_cells_per_axis();
  int ix[kMaxBoxDim] = {0, 0, 0};
  for (int i = 0; i < domain_->dim(); ++i) {
    auto it = std::lower_bound(edges_.begin(), edges_.end(), t.x[i]);
    long k = std::distance(edges_.begin(), it) - 1;  // cell (edges[k], edges[k+1]]
    if (k < 0) k = 0;                                 // the zero face folds into cell 0
    if (k >= cells) k = cells - 1;
    ix[i] = static_cast<int>(k);
  }
  return flat(ix);
}

std::size_t CellGrid::flat(const int* ix) const {
  const std::size_t cells = static_cast<std::size_t>(box_cells_per_axis());
  std::size_t idx = 0;
  for (int i = domain_->dim() - 1; i >= 0; --i) idx = idx * cells + static_cast<std::size_t>(ix[i]);
  return idx;
}

void CellGrid::unflat(std::size_t idx, int* ix) const {
  const std::size_t cells = static_cast<std::size_t>(box_cells_per_axis());
  for (int i = 0; i < domain_->dim(); ++i) {
    ix[i] = static_cast<int>(idx % cells);
    idx /= cells;
  }
}

bool CellGrid::prefix_bounds(const Point& tip, int* bounds) const {
  for (int i = 0; i < domain_->dim(); ++i) {
    auto it = std::lower_bound(edges_.begin(), edges_.end(), tip.x[i]);
    if (it == edges_.end() || *it != tip.x[i]) return false;
    bounds[i] = static_cast<int>(std::distance(edges_.begin(), it));
  }
  return true;
}

double CellGrid::total_measure(double scale) const {
  if (!domain_->is_box()) {
    double m = 0.0;
    for (std::size_t i = 0; i < count_; ++i) m += cell_measure(i, scale);
    return m;
  }
  double m = scale;
  for (int i = 0; i < domain_->dim(); ++i) m *= edges_.back();
  return m;
}

}  // namespace silevy
