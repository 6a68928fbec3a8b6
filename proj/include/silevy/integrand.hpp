#pragma once

#include <memory>

#include "silevy/increment_map.hpp"

namespace silevy {

// Deterministic integrands f : T -> R.
//   Constant   f = c
//   PowerDist  f(s) = d_T(s, center)^a          (a >= 0, d_T from the metric)
//   SetMixture f(s) = d^a on the mask, d^a_off outside it
//   GridTable  piecewise constant per left-neighborhood cell
struct Integrand {
  enum class Kind { Constant, PowerDist, SetMixture, GridTable };
  Kind kind = Kind::Constant;

  double c = 1.0;                       // Constant
  Point center;                         // PowerDist / SetMixture
  double exponent = 0.0;                // a
  double exponent_off = 0.0;            // a' (SetMixture)
  std::shared_ptr<const GridMask> mask; // SetMixture
  int table_level = 0;                  // GridTable
  std::shared_ptr<const std::vector<double>> table;

  static Integrand constant(double value);
  static Integrand power_dist(const Point& center, double a);
  static Integrand set_mixture(const Point& center, double a, double a_off, GridMask mask);
  static Integrand grid_table(int level, std::vector<double> values);

  double eval(const Space& s, const Point& t) const;
  bool is_constant_one() const { return kind == Kind::Constant && c == 1.0; }

  // Max |f| over cell midpoints at the given level; bounded-on-compacts scan.
  double grid_sup(const Space& s, int level) const;
};

}  // namespace silevy
