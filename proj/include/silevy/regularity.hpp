#pragma once

#include "silevy/integral.hpp"
#include "silevy/victiny.hpp"

namespace silevy {

// Log-log regression output of an exponent estimator.  `infinite` marks the
// +inf sentinel (all suprema vanish); it is serialized as the string "inf".
struct ExponentEstimate {
  double value = 0.0;
  bool infinite = false;
  std::vector<int> scales;       // the dyadic scales j that produced suprema
  std::vector<double> suprema;   // S_j per scale (0 allowed)
  double r2 = 0.0;
  std::string method;
};

struct ScaleLadder {
  int j_min = 3;
  int j_max = 10;
  int oversample = 3;      // mesh level n(j) = j + oversample
  bool allow_drop = true;  // the two finest scales may be dropped when r2 improves
};

// sup over the d_A-ball of |h(A) - h(A')|, mesh atoms only.
ExponentEstimate holder_exponent(const Space& s, const SetFunction& h, const IndexSet& a,
                                 const ScaleLadder& ladder);

// sup over nested mesh pairs A0 <= A1 in the ball of |Delta h(A1 \ A0)|.
ExponentEstimate c_exponent(const Space& s, const SetFunction& h, const IndexSet& a,
                            const ScaleLadder& ladder);

// sup over small-diameter increment sets near the tip: order boxes (s,u] with
// every corner tip inside the ball around A = A(t).
ExponentEstimate localized_exponent(const Space& s, const SetFunction& h, const IndexSet& a,
                                    const ScaleLadder& ladder);

// slope of log |Delta h(C_n(t))| against log m(C_n(t)) over the mesh ladder.
ExponentEstimate pc_exponent(const Space& s, const SetFunction& h, const Point& t, int n_min,
                             int n_max, double cap = 64.0);

struct JumpBoundParams {
  double rho_cut = 0.125;  // only jumps with qd <= rho_cut enter the minimum
  bool exact_qd = true;    // closed-form qd; otherwise discretized bisection
  int n_max = 8;
  double tol = 1e-3;
};

// Finite-sample surrogate of the jump upper bound: min over qualifying jumps
// of log|J_s(Y)| / log qd(s,A), floored at 0; +inf when no jump qualifies.
double jump_upper_bound(const Space& s, const SamplePathY& y, const IndexSet& a,
                        const JumpBoundParams& params);

// Same bound computed against f(t) J_t(X) without materializing the Y path.
double jump_upper_bound_weighted(const Space& s, const SamplePath& x,
                                 const std::function<double(const Point&)>& weight,
                                 const IndexSet& a, const JumpBoundParams& params);

// Quadrature masses of the irregular set {|f| > qd^alpha} inside victinies
// and of its d_T-ball analogue, plus log-log decay fits.
struct MassCurves {
  std::vector<double> alphas;
  std::vector<double> rhos;
  std::vector<double> victiny_mass;  // m(V(A, rho)) per rho
  std::vector<double> ball_mass;     // m(B_T(t, rho)) per rho
  double q_v_fit = 0.0;
  double q_b_fit = 0.0;

  // masses[alpha index][rho index]
  std::vector<std::vector<double>> mass_L, mass_Lc;    // victiny version
  std::vector<std::vector<double>> mass_Lp, mass_Lpc;  // ball version
  // fitted decay exponents per alpha; +inf when the masses vanish near 0
  std::vector<double> slope_L, slope_Lc, slope_Lp, slope_Lpc;
  std::vector<std::uint8_t> L_positive, Lp_positive;  // mass > 0 at the two smallest rhos
};

MassCurves mass_curves(const Space& s, const Integrand& f, const IndexSet& a,
                       std::span<const double> alphas, std::span<const double> rhos,
                       int quad_level);

struct RegularityPrediction {
  double lower = 0.0;
  double upper = 0.0;
  double lower_loc = 0.0;
  double upper_loc = 0.0;
};

// Evaluates the theorem bounds over a finite (alpha, q, q') grid, with grid
// membership decided by the fitted mass decays within a guard band.
RegularityPrediction predict_bounds(const MassCurves& curves, double beta, double q_max,
                                    double q_step = 0.25, double guard = 0.1);

// One-dimensional closed form 1/beta + a 1{f(t) = 0} for constant and
// power-distance integrands.
double predict_1d(const Space& s, const Integrand& f, const Point& t, double beta);

// O(1) evaluator of a simulated path at mesh-aligned atoms, built from the
// per-cell totals via cumulative sums.
class CumulativeGrid {
 public:
  CumulativeGrid(const CellGrid& grid, std::span<const double> cell_values);
  explicit CumulativeGrid(const SamplePathY& y);

  double atom_value(const IndexSet& a) const;
  SetFunction as_set_function() const;

 private:
  const CellGrid* grid_;
  std::vector<double> cum_;        // box: (K+1)^p cumulative table
  std::vector<double> node_vals_;  // tree: per-node values
};

}  // namespace silevy
