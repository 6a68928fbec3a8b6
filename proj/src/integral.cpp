#include "silevy/integral.hpp"

#include <cmath>
#include <stdexcept>

namespace silevy {

namespace {

bool cell_inside_atom(const CellGrid& grid, std::size_t idx, const IndexSet& a) {
  if (a.is_empty()) return false;
  const Domain& d = grid.domain();
  if (!d.is_box()) return d.leq(Point::tree(static_cast<std::int32_t>(idx)), a.tip);
  int ix[kMaxBoxDim] = {0, 0, 0};
  grid.unflat(idx, ix);
  for (int i = 0; i < d.dim(); ++i)
    if (grid.edges()[ix[i] + 1] > a.tip.x[i]) return false;
  return true;
}

void require_atom_aligned(const CellGrid& grid, const IndexSet& a) {
  if (a.is_empty() || !grid.domain().is_box()) return;
  int bounds[kMaxBoxDim];
  if (!grid.prefix_bounds(a.tip, bounds))
    throw std::invalid_argument("integral: atom is not aligned with the path mesh (round with g_n first)");
}

}  // namespace

double lx_norm(const Space& s, const Integrand& f, const LevyTriplet& t, int quad_level) {
  const CellGrid grid(s.domain, quad_level);
  double l1 = 0.0, l2 = 0.0;
  for (std::size_t i = 0; i < grid.cell_count(); ++i) {
    const double m = grid.cell_measure(i, s.measure.scale);
    if (m == 0.0) continue;
    const double v = f.eval(s, grid.cell_mid(i));
    l1 += std::fabs(v) * m;
    l2 += v * v * m;
  }
  const double mr = mean_rate(t);
  const double vr = var_rate(t);
  // convention 0 * inf = 0: a zero rate kills the corresponding norm
  const double mean_term = mr == 0.0 ? 0.0 : mr * mr * l1 * l1;
  const double var_term = vr == 0.0 ? 0.0 : vr * l2;
  return std::sqrt(mean_term + var_term);
}

double integrate_cellwise(const SamplePath& path, const Integrand& f, const IndexSet& a) {
  require_atom_aligned(path.grid, a);
  const Space& s = path.space;
  const double drift = path.triplet.b - path.compensator_rate;
  double total = 0.0;
  for (std::size_t i = 0; i < path.grid.cell_count(); ++i) {
    if (!cell_inside_atom(path.grid, i, a)) continue;
    double dx = path.cell_jump_sum[i] + drift * path.grid.cell_measure(i, s.measure.scale);
    if (!path.gauss.empty()) dx += path.gauss[i];
    total += f.eval(s, path.grid.cell_tip(i)) * dx;
  }
  return total;
}

double integrate_jumps(const SamplePath& path, const Integrand& f, const IndexSet& a) {
  if (path.triplet.sigma2 != 0.0)
    throw std::invalid_argument("integrate_jumps requires a purely Poissonian path");
  const Space& s = path.space;
  double total = 0.0;
  const std::size_t count = path.jumps.count();
  for (std::size_t i = 0; i < count; ++i) {
    const Point loc = path.jumps.location(i);
    if (!set_contains(s.domain, a, loc)) continue;
    total += f.eval(s, loc) * path.jumps.size[i];
  }
  if (path.compensator_rate != 0.0) {
    // int_A f dm by midpoint quadrature on the path cells
    double quad = 0.0;
    for (std::size_t i = 0; i < path.grid.cell_count(); ++i)
      if (cell_inside_atom(path.grid, i, a))
        quad += f.eval(s, path.grid.cell_mid(i)) * path.grid.cell_measure(i, s.measure.scale);
    total -= quad * path.compensator_rate;
  }
  return total;
}

SamplePathY make_path_Y(std::shared_ptr<const SamplePath> x, const Integrand& f, bool cancel_drift) {
  SamplePathY y;
  y.x = std::move(x);
  y.f = f;
  const SamplePath& path = *y.x;
  const Space& s = path.space;

  const auto abs_small = path.triplet.nu.abs_small();
  double comp = path.compensator_rate;
  y.drift_b = path.triplet.b;
  y.compensated = true;
  if (cancel_drift) {
    // Regularity convention: drop the drift; with absolutely integrable small
    // jumps use the raw jump sum (b-tilde = 0), otherwise keep compensation.
    y.drift_b = 0.0;
    if (abs_small.finite) {
      y.compensated = false;
      comp = 0.0;
    }
  }

  const std::size_t cells = path.grid.cell_count();
  y.cell_total.assign(cells, 0.0);
  y.drift_cell.assign(cells, 0.0);
  for (std::size_t i = 0; i < cells; ++i)
    y.drift_cell[i] =
        f.eval(s, path.grid.cell_mid(i)) * path.grid.cell_measure(i, s.measure.scale);

  y.jumps.dim = path.jumps.dim;
  y.jumps.tree = path.jumps.tree;
  const std::size_t count = path.jumps.count();
  for (std::size_t i = 0; i < count; ++i) {
    const Point loc = path.jumps.location(i);
    const double fv = f.eval(s, loc);
    if (fv == 0.0) continue;  // jump set of Y is Pi intersected with {f != 0}
    const double jy = fv * path.jumps.size[i];
    y.jumps.push(loc, jy);
    y.cell_total[path.grid.locate(loc)] += jy;
  }
  const double drift_rate = y.drift_b - comp;
  for (std::size_t i = 0; i < cells; ++i) {
    if (drift_rate != 0.0) y.cell_total[i] += drift_rate * y.drift_cell[i];
    if (!path.gauss.empty()) y.cell_total[i] += f.eval(s, path.grid.cell_tip(i)) * path.gauss[i];
  }
  return y;
}

SamplePathY sample_Y(const Space& s, const LevyTriplet& t, const Integrand& f, int n, double eps,
                     std::uint64_t seed, std::uint64_t stream, bool cancel_drift) {
  auto x = std::make_shared<SamplePath>(sample_path(s, t, n, eps, seed, stream));
  return make_path_Y(std::move(x), f, cancel_drift);
}

namespace {

bool cell_in_increment_grid(const CellGrid& grid, std::size_t idx, const IncrementSet& c) {
  if (!cell_inside_atom(grid, idx, c.a0)) return false;
  const Domain& d = grid.domain();
  if (!d.is_box()) {
    for (const auto& a : c.subtracted)
      if (set_contains(d, a, Point::tree(static_cast<std::int32_t>(idx)))) return false;
    return true;
  }
  int ix[kMaxBoxDim] = {0, 0, 0};
  grid.unflat(idx, ix);
  for (const auto& a : c.subtracted) {
    bool misses = false;
    for (int i = 0; i < d.dim(); ++i)
      if (a.tip.x[i] <= grid.edges()[ix[i]]) {
        misses = true;
        break;
      }
    if (!misses) return false;
  }
  return true;
}

}  // namespace

double delta_Y(const SamplePathY& path, const IncrementSet& c) {
  if (increment_is_empty_set(c)) return 0.0;
  require_atom_aligned(path.grid(), c.a0);
  for (const auto& a : c.subtracted) require_atom_aligned(path.grid(), a);
  double total = 0.0;
  for (std::size_t i = 0; i < path.cell_total.size(); ++i)
    if (cell_in_increment_grid(path.grid(), i, c)) total += path.cell_total[i];
  return total;
}

double delta_Y(const SamplePathY& path, std::span<const IncrementSet> region) {
  double total = 0.0;
  for (const auto& c : region) total += delta_Y(path, c);
  return total;
}

}  // namespace silevy
