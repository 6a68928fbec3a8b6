#include "silevy/regularity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace silevy {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Fit {
  double slope = 0.0;
  double r2 = 1.0;
};

Fit least_squares(std::span<const double> xs, std::span<const double> ys) {
  const std::size_t n = xs.size();
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += xs[i];
    sy += ys[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  Fit f;
  f.slope = sxy / sxx;
  if (syy > 0.0) {
    double ssres = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double pred = my + f.slope * (xs[i] - mx);
      ssres += (ys[i] - pred) * (ys[i] - pred);
    }
    f.r2 = 1.0 - ssres / syy;
  }
  return f;
}

// Regression of log2 S_j against -j over the usable (S_j > 0) scales.  Up to
// two scales may be dropped from either end of the window when that strictly
// improves r2: the fine end suffers mesh-resolution bias, the coarse end
// saturation and isolated large jumps.
ExponentEstimate fit_scales(const std::vector<int>& scales, const std::vector<double>& sup,
                            bool allow_drop, const char* method) {
  ExponentEstimate est;
  est.scales = scales;
  est.suprema = sup;
  est.method = method;

  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < scales.size(); ++i) {
    if (sup[i] > 0.0) {
      xs.push_back(-static_cast<double>(scales[i]));
      ys.push_back(std::log2(sup[i]));
    }
  }
  if (xs.empty()) {
    est.infinite = true;
    est.value = kInf;
    est.r2 = 1.0;
    return est;
  }
  if (xs.size() < 3) throw std::runtime_error("exponent estimate: fewer than 3 usable scales");

  Fit best = least_squares(xs, ys);
  if (allow_drop) {
    // xs run from coarse (front) to fine (back).
    for (int coarse = 0; coarse <= 2; ++coarse) {
      for (int fine = 0; coarse + fine <= 2; ++fine) {
        if (coarse == 0 && fine == 0) continue;
        const std::size_t dropped = static_cast<std::size_t>(coarse + fine);
        if (xs.size() < 3 + dropped) continue;
        const std::span<const double> x2(xs.data() + coarse, xs.size() - dropped);
        const std::span<const double> y2(ys.data() + coarse, ys.size() - dropped);
        const Fit f = least_squares(x2, y2);
        if (f.r2 > best.r2) best = f;
      }
    }
  }
  est.value = best.slope;
  est.r2 = best.r2;
  return est;
}

// Mesh atoms inside the open d_A-ball around `a` (the empty set included
// when it qualifies).
std::vector<IndexSet> ball_atoms(const Space& sp, const MeshLevel& mesh, const IndexSet& a,
                                 double rho) {
  std::vector<IndexSet> out;
  if (d_A(sp, IndexSet::empty(), a) < rho) out.push_back(IndexSet::empty());
  mesh.for_each_tip([&](const Point& u) {
    const IndexSet b = IndexSet::atom(u);
    if (d_A(sp, b, a) < rho) out.push_back(b);
  });
  return out;
}

}  // namespace

ExponentEstimate holder_exponent(const Space& sp, const SetFunction& h, const IndexSet& a,
                                 const ScaleLadder& ladder) {
  const double ha = h(a);
  std::vector<int> scales;
  std::vector<double> sup;
  for (int j = ladder.j_min; j <= ladder.j_max; ++j) {
    const MeshLevel mesh(sp.domain, j + ladder.oversample);
    const double rho = std::ldexp(1.0, -j);
    double s = 0.0;
    for (const auto& b : ball_atoms(sp, mesh, a, rho)) s = std::max(s, std::fabs(ha - h(b)));
    scales.push_back(j);
    sup.push_back(s);
  }
  return fit_scales(scales, sup, ladder.allow_drop, "holder");
}

ExponentEstimate c_exponent(const Space& sp, const SetFunction& h, const IndexSet& a,
                            const ScaleLadder& ladder) {
  std::vector<int> scales;
  std::vector<double> sup;
  for (int j = ladder.j_min; j <= ladder.j_max; ++j) {
    const MeshLevel mesh(sp.domain, j + ladder.oversample);
    const double rho = std::ldexp(1.0, -j);
    const auto atoms = ball_atoms(sp, mesh, a, rho);
    std::vector<double> values(atoms.size());
    for (std::size_t i = 0; i < atoms.size(); ++i) values[i] = h(atoms[i]);
    double s = 0.0;
    for (std::size_t i = 0; i < atoms.size(); ++i)
      for (std::size_t k = 0; k < atoms.size(); ++k) {
        if (i == k) continue;
        if (subset(sp.domain, atoms[i], atoms[k]))
          s = std::max(s, std::fabs(values[k] - values[i]));
      }
    scales.push_back(j);
    sup.push_back(s);
  }
  return fit_scales(scales, sup, ladder.allow_drop, "c_exp");
}

ExponentEstimate localized_exponent(const Space& sp, const SetFunction& h, const IndexSet& a,
                                    const ScaleLadder& ladder) {
  if (a.is_empty()) throw std::invalid_argument("localized exponent needs an atom A = A(t)");
  const Point t = a.tip;
  const Domain& d = sp.domain;
  const int p = d.dim();

  std::vector<int> scales;
  std::vector<double> sup;
  for (int j = ladder.j_min; j <= ladder.j_max; ++j) {
    const MeshLevel mesh(sp.domain, j + ladder.oversample);
    const double rho = std::ldexp(1.0, -j);
    // Candidate corner tips: within the ball around A(t) (the constraint on
    // constituent tips and the d_T localization coincide for A = A(t)).
    std::vector<Point> tips;
    mesh.for_each_tip([&](const Point& u) {
      if (d_T(sp, u, t) < rho) tips.push_back(u);
    });
    double s = 0.0;
    if (!d.is_box()) {
      // Chains (s, u] along branches.
      for (std::size_t i = 0; i < tips.size(); ++i)
        for (std::size_t k = 0; k < tips.size(); ++k) {
          if (i == k || !d.leq(tips[i], tips[k])) continue;
          s = std::max(s, std::fabs(h(IndexSet::atom(tips[k])) - h(IndexSet::atom(tips[i]))));
        }
    } else {
      for (std::size_t lo = 0; lo < tips.size(); ++lo)
        for (std::size_t hi = 0; hi < tips.size(); ++hi) {
          bool strict = true;
          for (int i = 0; i < p && strict; ++i)
            if (!(tips[lo].x[i] < tips[hi].x[i])) strict = false;
          if (!strict) continue;
          // All corner mixes must stay inside the ball.
          bool inside = true;
          double inc = 0.0;
          for (int mask = 0; mask < (1 << p) && inside; ++mask) {
            Point w = tips[hi];
            int bits = 0;
            for (int i = 0; i < p; ++i)
              if (mask & (1 << i)) {
                w.x[i] = tips[lo].x[i];
                ++bits;
              }
            if (mask != 0 && mask != (1 << p) - 1 && d_T(sp, w, t) >= rho) {
              inside = false;
              break;
            }
            inc += (bits % 2 == 0 ? 1.0 : -1.0) * h(IndexSet::atom(w));
          }
          if (inside) s = std::max(s, std::fabs(inc));
        }
    }
    scales.push_back(j);
    sup.push_back(s);
  }
  return fit_scales(scales, sup, ladder.allow_drop, "localized");
}

ExponentEstimate pc_exponent(const Space& sp, const SetFunction& h, const Point& t, int n_min,
                             int n_max, double cap) {
  std::vector<double> xs, ys;
  ExponentEstimate est;
  est.method = "pc";
  for (int n = n_min; n <= n_max; ++n) {
    const MeshLevel mesh(sp.domain, n);
    const LeftNeighborhood cell = left_neighborhood(mesh, t);
    if (cell.whole_space) continue;
    const double m = measure_of_C(sp.domain, sp.measure, cell.cell);
    if (!(m > 0.0)) throw std::invalid_argument("pc_exponent: left neighborhood has zero mass");
    const double inc = std::fabs(delta_h(sp.domain, h, cell.cell));
    est.scales.push_back(n);
    est.suprema.push_back(inc);
    if (inc > 0.0) {
      xs.push_back(std::log2(m));
      ys.push_back(std::log2(inc));
    }
  }
  if (xs.empty()) {
    est.infinite = true;
    est.value = kInf;
    est.r2 = 1.0;
    return est;
  }
  if (xs.size() < 2) throw std::runtime_error("pc_exponent: fewer than 2 usable levels");
  double spread = 0.0;
  for (double x : xs) spread = std::max(spread, std::fabs(x - xs.front()));
  if (spread == 0.0) throw std::runtime_error("pc_exponent: degenerate mass ladder");
  const Fit f = least_squares(xs, ys);
  est.value = std::min(f.slope, cap);
  est.r2 = f.r2;
  return est;
}

namespace {

double jump_bound_impl(const Space& sp, const JumpList& jumps,
                       const std::function<double(const Point&)>* weight, const IndexSet& a,
                       const JumpBoundParams& params) {
  if (!(params.rho_cut > 0.0) || !(params.rho_cut < 1.0))
    throw std::invalid_argument("jump bound: rho_cut must be in (0,1)");
  double best = kInf;
  const std::size_t count = jumps.count();
  for (std::size_t i = 0; i < count; ++i) {
    const Point loc = jumps.location(i);
    double jy = jumps.size[i];
    if (weight) jy *= (*weight)(loc);
    const double jabs = std::fabs(jy);
    if (jabs >= 1.0 || jabs <= 0.0) continue;  // log sign convention
    double q;
    if (params.exact_qd) {
      q = qd_exact(sp, loc, a);
    } else {
      const auto r = divergence(sp, loc, a, params.n_max, params.tol);
      q = r.value();
    }
    if (!(q > 0.0) || q > params.rho_cut) continue;
    best = std::min(best, std::log(jabs) / std::log(q));
  }
  if (best == kInf) return kInf;
  return std::max(0.0, best);
}

}  // namespace

double jump_upper_bound(const Space& sp, const SamplePathY& y, const IndexSet& a,
                        const JumpBoundParams& params) {
  return jump_bound_impl(sp, y.jumps, nullptr, a, params);
}

double jump_upper_bound_weighted(const Space& sp, const SamplePath& x,
                                 const std::function<double(const Point&)>& weight,
                                 const IndexSet& a, const JumpBoundParams& params) {
  return jump_bound_impl(sp, x.jumps, &weight, a, params);
}

MassCurves mass_curves(const Space& sp, const Integrand& f, const IndexSet& a,
                       std::span<const double> alphas, std::span<const double> rhos,
                       int quad_level) {
  if (a.is_empty()) throw std::invalid_argument("mass_curves: A must be an atom");
  const Point t = a.tip;
  const CellGrid grid(sp.domain, quad_level);
  const std::size_t cells = grid.cell_count();

  std::vector<double> qd_cell(cells), dt_cell(cells), f_cell(cells), m_cell(cells);
  for (std::size_t i = 0; i < cells; ++i) {
    const Point mid = grid.cell_mid(i);
    qd_cell[i] = qd_exact(sp, mid, a);
    dt_cell[i] = d_T(sp, mid, t);
    f_cell[i] = f.eval(sp, mid);
    m_cell[i] = grid.cell_measure(i, sp.measure.scale);
    if (!std::isfinite(f_cell[i]))
      throw std::invalid_argument("mass_curves: integrand unbounded on the scanned region");
  }

  MassCurves mc;
  mc.alphas.assign(alphas.begin(), alphas.end());
  mc.rhos.assign(rhos.begin(), rhos.end());
  const std::size_t na = alphas.size(), nr = rhos.size();
  mc.victiny_mass.assign(nr, 0.0);
  mc.ball_mass.assign(nr, 0.0);
  mc.mass_L.assign(na, std::vector<double>(nr, 0.0));
  mc.mass_Lc.assign(na, std::vector<double>(nr, 0.0));
  mc.mass_Lp.assign(na, std::vector<double>(nr, 0.0));
  mc.mass_Lpc.assign(na, std::vector<double>(nr, 0.0));

  for (std::size_t i = 0; i < cells; ++i) {
    for (std::size_t r = 0; r < nr; ++r) {
      const bool in_v = qd_cell[i] < rhos[r];
      const bool in_b = dt_cell[i] < rhos[r];
      if (in_v) mc.victiny_mass[r] += m_cell[i];
      if (in_b) mc.ball_mass[r] += m_cell[i];
      if (!in_v && !in_b) continue;
      const double af = std::fabs(f_cell[i]);
      for (std::size_t ai = 0; ai < na; ++ai) {
        if (in_v) {
          const bool irregular = af > std::pow(qd_cell[i], alphas[ai]);
          (irregular ? mc.mass_L : mc.mass_Lc)[ai][r] += m_cell[i];
        }
        if (in_b) {
          const bool irregular = af > std::pow(dt_cell[i], alphas[ai]);
          (irregular ? mc.mass_Lp : mc.mass_Lpc)[ai][r] += m_cell[i];
        }
      }
    }
  }

  const auto decay_fit = [&](const std::vector<double>& mass) {
    std::vector<double> xs, ys;
    for (std::size_t r = 0; r < nr; ++r)
      if (mass[r] > 0.0) {
        xs.push_back(std::log2(mc.rhos[r]));
        ys.push_back(std::log2(mass[r]));
      }
    if (xs.size() < 2) return kInf;
    return least_squares(xs, ys).slope;
  };

  mc.q_v_fit = decay_fit(mc.victiny_mass);
  mc.q_b_fit = decay_fit(mc.ball_mass);
  mc.slope_L.resize(na);
  mc.slope_Lc.resize(na);
  mc.slope_Lp.resize(na);
  mc.slope_Lpc.resize(na);
  mc.L_positive.resize(na);
  mc.Lp_positive.resize(na);
  // rhos may come in any order; positivity near zero looks at the two smallest.
  std::vector<std::size_t> order(nr);
  for (std::size_t r = 0; r < nr; ++r) order[r] = r;
  std::sort(order.begin(), order.end(),
            [&](std::size_t u, std::size_t v) { return mc.rhos[u] < mc.rhos[v]; });
  for (std::size_t ai = 0; ai < na; ++ai) {
    mc.slope_L[ai] = decay_fit(mc.mass_L[ai]);
    mc.slope_Lc[ai] = decay_fit(mc.mass_Lc[ai]);
    mc.slope_Lp[ai] = decay_fit(mc.mass_Lp[ai]);
    mc.slope_Lpc[ai] = decay_fit(mc.mass_Lpc[ai]);
    const auto positive_small = [&](const std::vector<double>& mass) {
      const std::size_t take = std::min<std::size_t>(2, nr);
      for (std::size_t k = 0; k < take; ++k)
        if (!(mass[order[k]] > 0.0)) return false;
      return true;
    };
    mc.L_positive[ai] = positive_small(mc.mass_L[ai]) ? 1 : 0;
    mc.Lp_positive[ai] = positive_small(mc.mass_Lp[ai]) ? 1 : 0;
  }
  return mc;
}

RegularityPrediction predict_bounds(const MassCurves& curves, double beta, double q_max,
                                    double q_step, double guard) {
  if (beta < 0.0) throw std::invalid_argument("beta must be >= 0");
  RegularityPrediction out;
  if (beta == 0.0) {  // 1/0 = +inf convention
    out.lower = out.upper = out.lower_loc = out.upper_loc = kInf;
    return out;
  }
  std::vector<double> qs;
  for (double q = q_step; q <= q_max + 1e-12; q += q_step) qs.push_back(q);

  const auto eval_pair = [&](const std::vector<double>& slope_L,
                             const std::vector<double>& slope_Lc,
                             const std::vector<std::uint8_t>& positive, double& lower,
                             double& upper) {
    lower = 0.0;
    upper = kInf;  // inf of the empty set
    for (std::size_t ai = 0; ai < curves.alphas.size(); ++ai) {
      const double alpha = curves.alphas[ai];
      // Lower bound: largest grid (q, q') with mass decays at least that fast.
      double qstar = -1.0, qpstar = -1.0;
      for (double q : qs) {
        if (slope_L[ai] >= q - guard) qstar = q;
        if (slope_Lc[ai] >= q - guard) qpstar = q;
      }
      if (qstar > 0.0 && qpstar > 0.0)
        lower = std::max(lower, std::min(qstar / beta, qpstar / beta + alpha));
      // Upper bound: irregular mass must really be there, with the smallest
      // grid q no faster than the fitted decay.
      if (positive[ai] && slope_L[ai] < kInf) {
        for (double q : qs) {
          if (q >= slope_L[ai] - guard) {
            upper = std::min(upper, q / beta + alpha);
            break;
          }
        }
      }
    }
  };

  eval_pair(curves.slope_L, curves.slope_Lc, curves.L_positive, out.lower, out.upper);
  eval_pair(curves.slope_Lp, curves.slope_Lpc, curves.Lp_positive, out.lower_loc, out.upper_loc);
  return out;
}

double predict_1d(const Space& sp, const Integrand& f, const Point& t, double beta) {
  if (!sp.domain.is_box() || sp.domain.dim() != 1)
    throw std::invalid_argument("predict_1d needs the one-dimensional box domain");
  if (beta == 0.0) return kInf;
  double a = 0.0;
  switch (f.kind) {
    case Integrand::Kind::Constant:
      if (f.c == 0.0) return kInf;  // Y vanishes identically
      a = 0.0;
      break;
    case Integrand::Kind::PowerDist:
      a = f.exponent;
      break;
    default:
      throw std::invalid_argument("predict_1d covers constant and power integrands only");
  }
  const double ft = f.eval(sp, t);
  return 1.0 / beta + (ft == 0.0 ? a : 0.0);
}

CumulativeGrid::CumulativeGrid(const CellGrid& grid, std::span<const double> cell_values)
    : grid_(&grid) {
  const Domain& d = grid.domain();
  if (!d.is_box()) {
    node_vals_.assign(cell_values.begin(), cell_values.end());
    return;
  }
  const int p = d.dim();
  const int K = grid.box_cells_per_axis();
  const std::size_t side = static_cast<std::size_t>(K) + 1;
  std::size_t total = 1;
  for (int i = 0; i < p; ++i) total *= side;
  cum_.assign(total, 0.0);
  // cum[i1][i2][...] = sum of cells with index < i on every axis
  const auto at = [&](int i0, int i1, int i2) -> double& {
    std::size_t idx = static_cast<std::size_t>(i0);
    if (p > 1) idx += side * static_cast<std::size_t>(i1);
    if (p > 2) idx += side * side * static_cast<std::size_t>(i2);
    return cum_[idx];
  };
  const int n1 = p > 1 ? K : 0, n2 = p > 2 ? K : 0;
  for (int i2 = 0; i2 <= n2; ++i2)
    for (int i1 = 0; i1 <= n1; ++i1)
      for (int i0 = 0; i0 <= K; ++i0) {
        if (i0 == 0 || (p > 1 && i1 == 0) || (p > 2 && i2 == 0)) {
          at(i0, i1, i2) = 0.0;
          continue;
        }
        int ix[kMaxBoxDim] = {i0 - 1, i1 - 1, i2 - 1};
        double v = cell_values[grid.flat(ix)];
        v += at(i0 - 1, i1, i2);
        if (p > 1) {
          v += at(i0, i1 - 1, i2) - at(i0 - 1, i1 - 1, i2);
          if (p > 2) {
            v += at(i0, i1, i2 - 1) - at(i0 - 1, i1, i2 - 1) - at(i0, i1 - 1, i2 - 1) +
                 at(i0 - 1, i1 - 1, i2 - 1);
          }
        }
        at(i0, i1, i2) = v;
      }
}

CumulativeGrid::CumulativeGrid(const SamplePathY& y) : CumulativeGrid(y.grid(), y.cell_total) {}

double CumulativeGrid::atom_value(const IndexSet& a) const {
  if (a.is_empty()) return 0.0;
  const Domain& d = grid_->domain();
  if (!d.is_box()) {
    double total = 0.0;
    std::int32_t cur = a.tip.node;
    while (cur != -1) {
      total += node_vals_[static_cast<std::size_t>(cur)];
      cur = d.nodes()[cur].parent;
    }
    return total;
  }
  int bounds[kMaxBoxDim] = {0, 0, 0};
  if (!grid_->prefix_bounds(a.tip, bounds))
    throw std::invalid_argument("CumulativeGrid: atom tip not aligned with the grid");
  const int p = d.dim();
  const std::size_t side = static_cast<std::size_t>(grid_->box_cells_per_axis()) + 1;
  std::size_t idx = static_cast<std::size_t>(bounds[0]);
  if (p > 1) idx += side * static_cast<std::size_t>(bounds[1]);
  if (p > 2) idx += side * side * static_cast<std::size_t>(bounds[2]);
  return cum_[idx];
}

SetFunction CumulativeGrid::as_set_function() const {
  return [this](const IndexSet& a) { return atom_value(a); };
}

}  // namespace silevy
