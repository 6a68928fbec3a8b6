#include "silevy/integrand.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>

namespace silevy {

Integrand Integrand::constant(double value) {
  Integrand f;
  f.kind = Kind::Constant;
  f.c = value;
  return f;
}

Integrand Integrand::power_dist(const Point& center, double a) {
  if (!(a >= 0.0)) throw std::invalid_argument("power integrand needs exponent >= 0");
  Integrand f;
  f.kind = Kind::PowerDist;
  f.center = center;
  f.exponent = a;
  return f;
}

Integrand Integrand::set_mixture(const Point& center, double a, double a_off, GridMask mask) {
  if (!(a >= 0.0) || !(a_off >= 0.0)) throw std::invalid_argument("mixture exponents must be >= 0");
  Integrand f;
  f.kind = Kind::SetMixture;
  f.center = center;
  f.exponent = a;
  f.exponent_off = a_off;
  f.mask = std::make_shared<GridMask>(std::move(mask));
  return f;
}

Integrand Integrand::grid_table(int level, std::vector<double> values) {
  Integrand f;
  f.kind = Kind::GridTable;
  f.table_level = level;
  f.table = std::make_shared<std::vector<double>>(std::move(values));
  return f;
}

double Integrand::eval(const Space& s, const Point& t) const {
  switch (kind) {
    case Kind::Constant:
      return c;
    case Kind::PowerDist: {
      const double d = d_T(s, t, center);
      return exponent == 0.0 ? 1.0 : std::pow(d, exponent);
    }
    case Kind::SetMixture: {
      const double d = d_T(s, t, center);
      const CellGrid grid(s.domain, mask->level);
      const bool inside = mask->cells[grid.locate(t)] != 0;
      const double a = inside ? exponent : exponent_off;
      return a == 0.0 ? 1.0 : std::pow(d, a);
    }
    case Kind::GridTable: {
      const CellGrid grid(s.domain, table_level);
      return (*table)[grid.locate(t)];
    }
  }
  return 0.0;
}

double Integrand::grid_sup(const Space& s, int level) const {
  const CellGrid grid(s.domain, level);
  double sup = 0.0;
  for (std::size_t i = 0; i < grid.cell_count(); ++i)
    sup = std::max(sup, std::fabs(eval(s, grid.cell_mid(i))));
  return sup;
}

}  // namespace silevy
