#pragma once

#include "silevy/integrand.hpp"
#include "silevy/sample_path.hpp"

namespace silevy {

// ||f||_{L(X)} = sqrt(mean_rate^2 ||f||_{L1}^2 + var_rate ||f||_{L2}^2),
// norms by midpoint cell quadrature at the given resolution.
double lx_norm(const Space& s, const Integrand& f, const LevyTriplet& t, int quad_level);

// Riemann-type integral against the path: sum over cells inside A of
// f(cell tip) * dX_cell.  A must be aligned with the path mesh.
double integrate_cellwise(const SamplePath& path, const Integrand& f, const IndexSet& a);

// Jump-sum integral for purely Poissonian paths (sigma2 == 0): f evaluated at
// the exact jump locations, with the analytic compensation term.
double integrate_jumps(const SamplePath& path, const Integrand& f, const IndexSet& a);

// Sample path of Y = int f dX, composed from the three independent parts.
// When cancel_drift is set, the drift convention of the regularity
// experiments applies: b is forced to 0, and when the small jumps are
// absolutely integrable the non-compensated jump sum with zero drift is used.
struct SamplePathY {
  std::shared_ptr<const SamplePath> x;
  Integrand f;
  bool compensated = true;   // false: raw jump sums (integrable-jump form)
  double drift_b = 0.0;      // effective drift rate in front of int f dm

  std::vector<double> cell_total;  // per-cell dY values (all three parts)
  std::vector<double> drift_cell;  // midpoint quadrature table of int_cell f dm
  JumpList jumps;                  // (t, f(t) J) for f(t) != 0

  const Space& space() const { return x->space; }
  const CellGrid& grid() const { return x->grid; }
};

SamplePathY sample_Y(const Space& s, const LevyTriplet& t, const Integrand& f, int n, double eps,
                     std::uint64_t seed, std::uint64_t stream = 0, bool cancel_drift = false);

// Wraps an already simulated X path; same composition rules.
SamplePathY make_path_Y(std::shared_ptr<const SamplePath> x, const Integrand& f, bool cancel_drift);

double delta_Y(const SamplePathY& path, const IncrementSet& c);
double delta_Y(const SamplePathY& path, std::span<const IncrementSet> region);

}  // namespace silevy
