#pragma once

#include <complex>
#include <optional>
#include <vector>

namespace silevy {

// Levy measure built from finitely many atoms and an optional symmetric
// truncated-stable part c_alpha |x|^{-1-alpha} dx on 0 < |x| <= 1.  A single
// variant covers both pure cases and their direct sums.
struct LevyMeasureSpec {
  struct Atom {
    double x;     // jump size, != 0
    double rate;  // intensity, > 0
  };
  struct Stable {
    double alpha;  // in (0, 2)
    double c;      // > 0
  };

  std::vector<Atom> atoms;
  std::optional<Stable> stable;

  static LevyMeasureSpec zero() { return {}; }
  static LevyMeasureSpec finite_atoms(std::vector<Atom> a);
  static LevyMeasureSpec truncated_stable(double alpha, double c);
  LevyMeasureSpec plus(const LevyMeasureSpec& other) const;

  bool is_zero() const { return atoms.empty() && !stable; }

  double mass_above(double eps) const;   // nu({|x| >= eps})
  double second_moment() const;          // integral of x^2 nu(dx)
  double big_jump_mean() const;          // integral over |x| > 1 of x nu(dx)
  double compensator(double eps) const;  // integral over eps <= |x| <= 1 of x nu(dx)

  struct AbsSmall {
    bool finite;
    double value;  // meaningful when finite
  };
  AbsSmall abs_small() const;  // integral over |x| <= 1 of |x| nu(dx)

  double beta() const;  // Blumenthal-Getoor exponent
};

struct LevyTriplet {
  double b = 0.0;
  double sigma2 = 0.0;
  LevyMeasureSpec nu;
};

// Levy-Khintchine exponent: i b xi - sigma^2 xi^2 / 2
//   + integral (e^{i xi x} - 1 - i xi x 1_{|x|<=1}) nu(dx).
// Atoms are summed analytically; the stable part uses adaptive quadrature.
std::complex<double> psi(const LevyTriplet& t, double xi);

// E[dX_C] = mean_rate * m(C), Var(dX_C) = var_rate * m(C).
double mean_rate(const LevyTriplet& t);
double var_rate(const LevyTriplet& t);

}  // namespace silevy
