#pragma once

#include <complex>
#include <memory>
#include <span>

#include "silevy/levy.hpp"
#include "silevy/rng.hpp"
#include "silevy/space.hpp"
#include "silevy/mesh.hpp"

namespace silevy {

// Jump records in struct-of-arrays layout; box locations use `coord`, tree
// locations use `node`.
struct JumpList {
  int dim = 1;
  bool tree = false;
  std::array<std::vector<double>, kMaxBoxDim> coord;
  std::vector<std::int32_t> node;
  std::vector<double> size;

  std::size_t count() const { return size.size(); }
  Point location(std::size_t i) const {
    if (tree) return Point::tree(node[i]);
    Point t;
    t.dim = dim;
    for (int k = 0; k < dim; ++k) t.x[k] = coord[k][i];
    return t;
  }
  void push(const Point& t, double j) {
    if (tree) {
      node.push_back(t.node);
    } else {
      for (int k = 0; k < dim; ++k) coord[k].push_back(t.x[k]);
    }
    size.push_back(j);
  }
};

// One realization of the truncated Levy-Ito construction at mesh level n:
// per-cell Gaussian increments sigma * dB_C, the Poisson jumps with
// |J| >= eps, and the analytic compensation rate.  Immutable once built.
struct SamplePath {
  Space space;
  LevyTriplet triplet;
  int n = 0;
  double eps = 0.0;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;

  CellGrid grid;
  std::vector<double> gauss;          // per cell, empty when sigma2 == 0
  JumpList jumps;
  std::vector<double> cell_jump_sum;  // sum of J over the jumps in each cell
  double compensator_rate = 0.0;      // integral over eps <= |x| <= 1 of x nu(dx)

  SamplePath(Space sp, LevyTriplet tr, int level)
      : space(std::move(sp)), triplet(std::move(tr)), n(level), grid(space.domain, level) {}
};

// Deterministic given (seed, stream).  eps is ignored for pure-atom measures
// (all jumps are kept); it must be > 0 when a stable part is present.
SamplePath sample_path(const Space& s, const LevyTriplet& t, int n, double eps, std::uint64_t seed,
                       std::uint64_t stream = 0);

// Increment of X over a mesh-aligned increment set / disjoint region.
// Regions evaluate piecewise and add, so additivity over disjoint unions is
// exact by construction.
double delta_X(const SamplePath& path, const IncrementSet& c);
double delta_X(const SamplePath& path, std::span<const IncrementSet> region);

// Draw of dX_C for a set of measure m_of_c (stationarity: only the measure
// matters).  Used by moment and characteristic-function checks.
double sample_increment(const LevyTriplet& t, double m_of_c, double eps, Rng& rng);

std::complex<double> empirical_cf(std::span<const double> samples, double xi);

// Per-cell sum of f(t_jump) * J for an arbitrary weight; shared by the
// integral module.
std::vector<double> bin_jumps(const SamplePath& path,
                              const std::function<double(const Point&)>& weight);

}  // namespace silevy
