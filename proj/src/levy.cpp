#include "silevy/levy.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

namespace silevy {

namespace {

void validate_atoms(const std::vector<LevyMeasureSpec::Atom>& atoms) {
  for (const auto& a : atoms) {
    if (a.x == 0.0 || !std::isfinite(a.x)) throw std::invalid_argument("atom at 0 or non-finite");
    if (!(a.rate > 0.0) || !std::isfinite(a.rate)) throw std::invalid_argument("atom rate must be > 0");
  }
}

// Adaptive Simpson on [lo, hi] with recursion on the half with larger error.
double adaptive_simpson(const std::function<double(double)>& f, double lo, double hi, double fa,
                        double fm, double fb, double whole, double tol, int depth) {
  const double mid = 0.5 * (lo + hi);
  const double lm = 0.5 * (lo + mid), rm = 0.5 * (mid + hi);
  const double flm = f(lm), frm = f(rm);
  const double left = (mid - lo) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (hi - mid) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0) throw std::runtime_error("psi: adaptive quadrature did not converge");
  if (std::fabs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return adaptive_simpson(f, lo, mid, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson(f, mid, hi, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double integrate(const std::function<double(double)>& f, double lo, double hi, double tol) {
  const double fa = f(lo), fb = f(hi), fm = f(0.5 * (lo + hi));
  const double whole = (hi - lo) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson(f, lo, hi, fa, fm, fb, whole, tol, 48);
}

}  // namespace

LevyMeasureSpec LevyMeasureSpec::finite_atoms(std::vector<Atom> a) {
  validate_atoms(a);
  LevyMeasureSpec s;
  s.atoms = std::move(a);
  return s;
}

LevyMeasureSpec LevyMeasureSpec::truncated_stable(double alpha, double c) {
  if (!(alpha > 0.0) || !(alpha < 2.0)) throw std::invalid_argument("stable alpha must be in (0,2)");
  if (!(c > 0.0)) throw std::invalid_argument("stable c must be > 0");
  LevyMeasureSpec s;
  s.stable = Stable{alpha, c};
  return s;
}

LevyMeasureSpec LevyMeasureSpec::plus(const LevyMeasureSpec& other) const {
  if (stable && other.stable) throw std::invalid_argument("at most one stable component");
  LevyMeasureSpec s = *this;
  s.atoms.insert(s.atoms.end(), other.atoms.begin(), other.atoms.end());
  if (other.stable) s.stable = other.stable;
  return s;
}

double LevyMeasureSpec::mass_above(double eps) const {
  if (!(eps > 0.0)) throw std::invalid_argument("mass_above needs eps > 0");
  double total = 0.0;
  for (const auto& a : atoms)
    if (std::fabs(a.x) >= eps) total += a.rate;
  if (stable && eps < 1.0) {
    const double al = stable->alpha;
    total += 2.0 * stable->c * (std::pow(eps, -al) - 1.0) / al;
  }
  return total;
}

double LevyMeasureSpec::second_moment() const {
  double total = 0.0;
  for (const auto& a : atoms) total += a.x * a.x * a.rate;
  if (stable) total += 2.0 * stable->c / (2.0 - stable->alpha);
  return total;
}

double LevyMeasureSpec::big_jump_mean() const {
  double total = 0.0;
  for (const auto& a : atoms)
    if (std::fabs(a.x) > 1.0) total += a.x * a.rate;
  return total;  // the stable part is supported in |x| <= 1
}

double LevyMeasureSpec::compensator(double eps) const {
  double total = 0.0;
  for (const auto& a : atoms)
    if (std::fabs(a.x) >= eps && std::fabs(a.x) <= 1.0) total += a.x * a.rate;
  // the stable part is symmetric: its signed integral vanishes
  return total;
}

LevyMeasureSpec::AbsSmall LevyMeasureSpec::abs_small() const {
  double total = 0.0;
  for (const auto& a : atoms)
    if (std::fabs(a.x) <= 1.0) total += std::fabs(a.x) * a.rate;
  if (stable) {
    if (stable->alpha >= 1.0) return {false, 0.0};
    total += 2.0 * stable->c / (1.0 - stable->alpha);
  }
  return {true, total};
}

double LevyMeasureSpec::beta() const {
  // Atoms are bounded away from 0, so they never raise the exponent.
  return stable ? stable->alpha : 0.0;
}

std::complex<double> psi(const LevyTriplet& t, double xi) {
  std::complex<double> value(-0.5 * t.sigma2 * xi * xi, t.b * xi);
  for (const auto& a : t.nu.atoms) {
    std::complex<double> term = std::exp(std::complex<double>(0.0, xi * a.x)) - 1.0;
    if (std::fabs(a.x) <= 1.0) term -= std::complex<double>(0.0, xi * a.x);
    value += a.rate * term;
  }
  if (t.nu.stable && xi != 0.0) {
    const double al = t.nu.stable->alpha;
    const double c = t.nu.stable->c;
    // Symmetric part: 2c * int_0^1 (cos(xi x) - 1) x^{-1-alpha} dx.  Near 0
    // the integrand behaves like -xi^2 x^{1-alpha} / 2; integrate that piece
    // in closed form and quadrature the rest.
    const double cut = 1e-4;
    const auto f = [&](double x) { return (std::cos(xi * x) - 1.0) * std::pow(x, -1.0 - al); };
    double head = -0.5 * xi * xi * std::pow(cut, 2.0 - al) / (2.0 - al);  // x^2/2 leading term
    head += std::pow(xi, 4) / 24.0 * std::pow(cut, 4.0 - al) / (4.0 - al);  // next Taylor term
    const double tail = integrate(f, cut, 1.0, 1e-12);
    value += 2.0 * c * (head + tail);
  }
  return value;
}

double mean_rate(const LevyTriplet& t) { return t.b + t.nu.big_jump_mean(); }

double var_rate(const LevyTriplet& t) { return t.sigma2 + t.nu.second_moment(); }

}  // namespace silevy
