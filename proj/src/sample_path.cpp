#include "silevy/sample_path.hpp"

#include <cmath>
#include <stdexcept>

namespace silevy {

namespace {

double atoms_total_rate(const LevyMeasureSpec& nu) {
  double r = 0.0;
  for (const auto& a : nu.atoms) r += a.rate;
  return r;
}

// All atom jumps are kept regardless of eps, so the compensation must cover
// every atom in |x| <= 1; the symmetric stable part compensates to zero.
double effective_compensator(const LevyMeasureSpec& nu) {
  double total = 0.0;
  for (const auto& a : nu.atoms)
    if (std::fabs(a.x) <= 1.0) total += a.x * a.rate;
  return total;
}

Point draw_location(const Space& s, const CellGrid& grid, Rng& rng) {
  const Domain& d = s.domain;
  if (d.is_box()) {
    Point t;
    t.dim = d.dim();
    const double extent = grid.edges().back();
    for (int i = 0; i < d.dim(); ++i) t.x[i] = rng.uniform(0.0, extent);
    return t;
  }
  // Categorical over nodes weighted by edge length.
  double total = 0.0;
  for (std::size_t i = 0; i < grid.cell_count(); ++i) total += grid.cell_measure(i, s.measure.scale);
  double u = rng.uniform() * total;
  for (std::size_t i = 0; i < grid.cell_count(); ++i) {
    u -= grid.cell_measure(i, s.measure.scale);
    if (u <= 0.0) return Point::tree(static_cast<std::int32_t>(i));
  }
  return Point::tree(static_cast<std::int32_t>(grid.cell_count() - 1));
}

double draw_stable_magnitude(const LevyMeasureSpec::Stable& st, double eps, Rng& rng) {
  // Inverse CDF of the normalized restriction to eps <= |x| <= 1.
  const double u = rng.uniform();
  const double ea = std::pow(eps, -st.alpha);
  return std::pow(u * (1.0 - ea) + ea, -1.0 / st.alpha);
}

bool cell_in_increment(const CellGrid& grid, std::size_t idx, const IncrementSet& c) {
  const Domain& d = grid.domain();
  if (c.a0.is_empty()) return false;
  if (!d.is_box()) {
    const Point t = Point::tree(static_cast<std::int32_t>(idx));
    return increment_contains(d, c, t);
  }
  int ix[kMaxBoxDim] = {0, 0, 0};
  grid.unflat(idx, ix);
  const auto& e = grid.edges();
  // cell is a product of (e[ix], e[ix+1]]; it sits inside A(u) iff its upper
  // corner does, and misses A(u) iff u is below the open lower corner on some
  // axis.
  for (int i = 0; i < d.dim(); ++i)
    if (e[ix[i] + 1] > c.a0.tip.x[i]) return false;
  for (const auto& a : c.subtracted) {
    bool misses = false;
    for (int i = 0; i < d.dim(); ++i)
      if (a.tip.x[i] <= e[ix[i]]) {
        misses = true;
        break;
      }
    if (!misses) {
      // the subtracted atom meets the cell; alignment guarantees it swallows it
      return false;
    }
  }
  return true;
}

void require_aligned(const CellGrid& grid, const IncrementSet& c) {
  const Domain& d = grid.domain();
  if (!d.is_box()) return;  // every tree atom is aligned
  int bounds[kMaxBoxDim];
  if (!c.a0.is_empty() && !grid.prefix_bounds(c.a0.tip, bounds))
    throw std::invalid_argument("delta_X: set is not aligned with the path mesh");
  for (const auto& a : c.subtracted)
    if (!grid.prefix_bounds(a.tip, bounds))
      throw std::invalid_argument("delta_X: set is not aligned with the path mesh");
}

}  // namespace

SamplePath sample_path(const Space& s, const LevyTriplet& t, int n, double eps, std::uint64_t seed,
                       std::uint64_t stream) {
  if (t.sigma2 < 0.0) throw std::invalid_argument("sigma2 must be >= 0");
  if (t.nu.stable && !(eps > 0.0 && eps < 1.0))
    throw std::invalid_argument("truncation eps must be in (0,1) for a stable part");

  SamplePath path(s, t, n);
  path.eps = eps;
  path.seed = seed;
  path.stream = stream;
  path.compensator_rate = effective_compensator(t.nu);

  Rng rng(seed, stream);
  const CellGrid& grid = path.grid;
  const std::size_t cells = grid.cell_count();

  if (t.sigma2 > 0.0) {
    path.gauss.resize(cells);
    const double sd = std::sqrt(t.sigma2);
    for (std::size_t i = 0; i < cells; ++i)
      path.gauss[i] = sd * std::sqrt(grid.cell_measure(i, s.measure.scale)) * rng.normal();
  }

  path.jumps.dim = s.domain.dim();
  path.jumps.tree = !s.domain.is_box();
  path.cell_jump_sum.assign(cells, 0.0);
  const double m_total = grid.total_measure(s.measure.scale);

  const double atom_rate = atoms_total_rate(t.nu);
  if (atom_rate > 0.0) {
    const std::uint64_t count = rng.poisson(m_total * atom_rate);
    std::vector<double> cum;
    cum.reserve(t.nu.atoms.size());
    double acc = 0.0;
    for (const auto& a : t.nu.atoms) cum.push_back(acc += a.rate);
    for (std::uint64_t k = 0; k < count; ++k) {
      const Point loc = draw_location(s, grid, rng);
      const double u = rng.uniform() * atom_rate;
      std::size_t idx = 0;
      while (idx + 1 < cum.size() && u > cum[idx]) ++idx;
      const double j = t.nu.atoms[idx].x;
      path.jumps.push(loc, j);
      path.cell_jump_sum[grid.locate(loc)] += j;
    }
  }

  if (t.nu.stable) {
    const double rate = LevyMeasureSpec::truncated_stable(t.nu.stable->alpha, t.nu.stable->c)
                            .mass_above(eps);
    const std::uint64_t count = rng.poisson(m_total * rate);
    path.jumps.size.reserve(path.jumps.size.size() + count);
    for (std::uint64_t k = 0; k < count; ++k) {
      const Point loc = draw_location(s, grid, rng);
      double j = draw_stable_magnitude(*t.nu.stable, eps, rng);
      if (rng.coin()) j = -j;
      path.jumps.push(loc, j);
      path.cell_jump_sum[grid.locate(loc)] += j;
    }
  }
  return path;
}

double delta_X(const SamplePath& path, const IncrementSet& c) {
  if (increment_is_empty_set(c)) return 0.0;
  require_aligned(path.grid, c);
  const double drift = path.triplet.b - path.compensator_rate;
  double total = 0.0;
  const std::size_t cells = path.grid.cell_count();
  for (std::size_t i = 0; i < cells; ++i) {
    if (!cell_in_increment(path.grid, i, c)) continue;
    double v = path.cell_jump_sum[i] + drift * path.grid.cell_measure(i, path.space.measure.scale);
    if (!path.gauss.empty()) v += path.gauss[i];
    total += v;
  }
  return total;
}

double delta_X(const SamplePath& path, std::span<const IncrementSet> region) {
  double total = 0.0;
  for (const auto& c : region) total += delta_X(path, c);
  return total;
}

double sample_increment(const LevyTriplet& t, double m_of_c, double eps, Rng& rng) {
  if (!(m_of_c >= 0.0)) throw std::invalid_argument("sample_increment: negative measure");
  double value = (t.b - effective_compensator(t.nu)) * m_of_c;
  if (t.sigma2 > 0.0) value += std::sqrt(t.sigma2 * m_of_c) * rng.normal();
  const double atom_rate = atoms_total_rate(t.nu);
  if (atom_rate > 0.0) {
    std::vector<double> cum;
    double acc = 0.0;
    for (const auto& a : t.nu.atoms) cum.push_back(acc += a.rate);
    const std::uint64_t count = rng.poisson(m_of_c * atom_rate);
    for (std::uint64_t k = 0; k < count; ++k) {
      const double u = rng.uniform() * atom_rate;
      std::size_t idx = 0;
      while (idx + 1 < cum.size() && u > cum[idx]) ++idx;
      value += t.nu.atoms[idx].x;
    }
  }
  if (t.nu.stable) {
    if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("eps must be in (0,1)");
    const double rate =
        LevyMeasureSpec::truncated_stable(t.nu.stable->alpha, t.nu.stable->c).mass_above(eps);
    const std::uint64_t count = rng.poisson(m_of_c * rate);
    for (std::uint64_t k = 0; k < count; ++k) {
      double j = draw_stable_magnitude(*t.nu.stable, eps, rng);
      if (rng.coin()) j = -j;
      value += j;
    }
  }
  return value;
}

std::complex<double> empirical_cf(std::span<const double> samples, double xi) {
  if (samples.empty()) throw std::invalid_argument("empirical_cf: empty sample");
  std::complex<double> acc(0.0, 0.0);
  for (double s : samples) acc += std::exp(std::complex<double>(0.0, xi * s));
  return acc / static_cast<double>(samples.size());
}

std::vector<double> bin_jumps(const SamplePath& path,
                              const std::function<double(const Point&)>& weight) {
  std::vector<double> out(path.grid.cell_count(), 0.0);
  const std::size_t count = path.jumps.count();
  for (std::size_t i = 0; i < count; ++i) {
    const Point loc = path.jumps.location(i);
    out[path.grid.locate(loc)] += weight(loc) * path.jumps.size[i];
  }
  return out;
}

}  // namespace silevy
