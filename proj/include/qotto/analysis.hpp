#pragma once

// Positive-work window mapping, temperature-limit conditions, efficiency
// bounds, and the reduced two-level cross-check formulas.

#include <cmath>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qotto/cycle.hpp"
#include "qotto/model.hpp"
#include "qotto/thermal.hpp"

namespace qotto {

// f = (p_a^- - p_a^+) - (p_c^- - p_c^+), the population factor of the
// total work W = f (D2 - D1).
inline double f_function(double omega, double coupling, double delta1, double delta2,
                         double beta1, double beta2) {
  const double d1 = std::hypot(delta1, coupling);
  const double d2 = std::hypot(delta2, coupling);
  return gibbs_population_gap(beta1, omega, d1) - gibbs_population_gap(beta2, omega, d2);
}

inline double closed_form_work(double omega, double coupling, double delta1,
                               double delta2, double beta1, double beta2) {
  const double d1 = std::hypot(delta1, coupling);
  const double d2 = std::hypot(delta2, coupling);
  return f_function(omega, coupling, delta1, delta2, beta1, beta2) * (d2 - d1);
}

struct WindowCell {
  double delta1;
  double delta2;
  double work;
  double f;
  double d2_minus_d1;
  int sign;  // sign of work: -1, 0, +1
};

struct WindowGrid {
  std::vector<double> delta1_axis;
  std::vector<double> delta2_axis;
  std::vector<WindowCell> cells;  // row-major: delta1 outer, delta2 inner
  // Bisected f = 0 boundary: (delta1, delta2) pairs, one per delta1 column
  // where f changes sign inside the scanned range.
  std::vector<std::pair<double, double>> f_zero_boundary;
};

// Root of f in delta2 for fixed delta1 (f is monotone decreasing in
// delta2). Returns nothing if f has no sign change on [0, hi].
inline std::optional<double> bisect_f_zero(double omega, double coupling, double delta1,
                                           double beta1, double beta2, double hi,
                                           double tol = 1e-10) {
  auto f = [&](double d2) {
    return f_function(omega, coupling, delta1, d2, beta1, beta2);
  };
  double lo = 0.0;
  double flo = f(lo), fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0)) return std::nullopt;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0.0) == (flo > 0.0))
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

inline WindowGrid window_scan(double omega, double coupling, double beta1, double beta2,
                              int grid_size) {
  if (grid_size < 2) throw std::invalid_argument("window_scan: grid_size must be >= 2");
  const double dmax = delta_max(omega, coupling);
  const double top = dmax * (1.0 - 1e-9);  // keep strictly below the crossing

  WindowGrid grid;
  grid.delta1_axis.resize(grid_size);
  grid.delta2_axis.resize(grid_size);
  for (int i = 0; i < grid_size; ++i) {
    grid.delta1_axis[i] = top * i / (grid_size - 1);
    grid.delta2_axis[i] = top * i / (grid_size - 1);
  }

  grid.cells.reserve(static_cast<std::size_t>(grid_size) * grid_size);
  for (int i = 0; i < grid_size; ++i) {
    const double delta1 = grid.delta1_axis[i];
    for (int j = 0; j < grid_size; ++j) {
      const double delta2 = grid.delta2_axis[j];
      const double f = f_function(omega, coupling, delta1, delta2, beta1, beta2);
      const double d1 = std::hypot(delta1, coupling);
      const double d2 = std::hypot(delta2, coupling);
      const double w = f * (d2 - d1);
      grid.cells.push_back(
          WindowCell{delta1, delta2, w, f, d2 - d1, (w > 0.0) - (w < 0.0)});
    }
    if (auto root = bisect_f_zero(omega, coupling, delta1, beta1, beta2, top))
      grid.f_zero_boundary.emplace_back(delta1, *root);
  }
  return grid;
}

struct LimitConditions {
  bool low_t_ok;   // beta2 (Omega - D2) > beta1 (Omega - D1)
  bool high_t_ok;  // beta2 D2 > beta1 D1
};

inline LimitConditions limit_conditions(double omega, double coupling, double delta1,
                                        double delta2, double beta1, double beta2) {
  const double d1 = std::hypot(delta1, coupling);
  const double d2 = std::hypot(delta2, coupling);
  return LimitConditions{beta2 * (omega - d2) > beta1 * (omega - d1),
                         beta2 * d2 > beta1 * d1};
}

// eta_up = 1 - D2/D1 for Delta2 < Delta1, 1 - (Omega-D2)/(Omega-D1) for
// Delta2 > Delta1.
inline double efficiency_bound(double omega, double coupling, double delta1,
                               double delta2) {
  if (delta1 == delta2)
    throw std::domain_error("efficiency_bound: undefined at delta1 == delta2");
  const double d1 = std::hypot(delta1, coupling);
  const double d2 = std::hypot(delta2, coupling);
  if (delta2 < delta1) return 1.0 - d2 / d1;
  return 1.0 - (omega - d2) / (omega - d1);
}

struct TwoLevelOtto {
  double work;    // W' = [tanh(b2 w2) - tanh(b1 w1)] (w1 - w2)
  double heat_1;  // Q1' = [tanh(b2 w2) - tanh(b1 w1)] w1
  double efficiency;  // eta' = 1 - w2/w1
};

// Otto cycle of a single two-level system with gap switching between
// 2*omega1 and 2*omega2.
inline TwoLevelOtto two_level_oracle(double omega1, double omega2, double beta1,
                                     double beta2) {
  if (!(omega1 > 0.0) || !(omega2 > 0.0))
    throw std::invalid_argument("two_level_oracle: level gaps must be positive");
  const double pull = std::tanh(beta2 * omega2) - std::tanh(beta1 * omega1);
  return TwoLevelOtto{pull * (omega1 - omega2), pull * omega1, 1.0 - omega2 / omega1};
}

// Residual of the exact decomposition of the four-level work into the
// lowest-gap two-level engine plus the upper-gap correction:
//   W - W' = (w2' - w1')[tanh(b1 w1') - tanh(b2 w2')]
// with wi = (Omega - Di)/2 and wi' = (Omega + Di)/2.
inline double reduction_identity_check(double omega, double coupling, double delta1,
                                      double delta2, double beta1, double beta2) {
  const double d1 = std::hypot(delta1, coupling);
  const double d2 = std::hypot(delta2, coupling);
  const double w1 = 0.5 * (omega - d1), w2 = 0.5 * (omega - d2);
  const double w1p = 0.5 * (omega + d1), w2p = 0.5 * (omega + d2);
  const double w = closed_form_work(omega, coupling, delta1, delta2, beta1, beta2);
  const double wp = two_level_oracle(w1, w2, beta1, beta2).work;
  const double rhs = (w2p - w1p) * (std::tanh(beta1 * w1p) - std::tanh(beta2 * w2p));
  return std::abs((w - wp) - rhs);
}

struct MiddleLevelsOracle {
  double work_middle;  // W'' = [tanh(b2 D2) - tanh(b1 D1)] (D1 - D2)
  double weight_1;     // P1 = cosh(b1 D1)/[cosh(b1 D1) + cosh(b1 Omega)]
  double weight_2;     // P2
  double s1;           // S1 = sinh(b1 Omega)/[cosh(b1 Omega) + cosh(b1 D1)]
  double s2;           // S2
  double work_identity_residual;  // |W - [P2 tanh(b2 D2) - P1 tanh(b1 D1)](D1 - D2)|
};

inline MiddleLevelsOracle middle_levels_oracle(double omega, double coupling,
                                               double delta1, double delta2,
                                               double beta1, double beta2) {
  const double d1 = std::hypot(delta1, coupling);
  const double d2 = std::hypot(delta2, coupling);
  MiddleLevelsOracle out;
  out.work_middle = (std::tanh(beta2 * d2) - std::tanh(beta1 * d1)) * (d1 - d2);
  out.weight_1 = std::cosh(beta1 * d1) / (std::cosh(beta1 * d1) + std::cosh(beta1 * omega));
  out.weight_2 = std::cosh(beta2 * d2) / (std::cosh(beta2 * d2) + std::cosh(beta2 * omega));
  out.s1 = std::sinh(beta1 * omega) / (std::cosh(beta1 * omega) + std::cosh(beta1 * d1));
  out.s2 = std::sinh(beta2 * omega) / (std::cosh(beta2 * omega) + std::cosh(beta2 * d2));
  const double w = closed_form_work(omega, coupling, delta1, delta2, beta1, beta2);
  const double recon =
      (out.weight_2 * std::tanh(beta2 * d2) - out.weight_1 * std::tanh(beta1 * d1)) *
      (d1 - d2);
  out.work_identity_residual = std::abs(w - recon);
  return out;
}

// Maximum delta2 range compatible with positive work at fixed delta1 and
// beta1 < beta2, from the two limit-condition equalities (bisection).
// Returns {lower, upper}: below delta1 the high-temperature condition
// beta2 D2 > beta1 D1 sets the floor, above delta1 the low-temperature
// condition beta2 (Omega - D2) > beta1 (Omega - D1) sets the ceiling.
struct PositiveWorkRange {
  std::optional<double> lower;
  std::optional<double> upper;
};

inline PositiveWorkRange positive_work_delta2_range(double omega, double coupling,
                                                    double delta1, double beta1,
                                                    double beta2) {
  const double dmax = delta_max(omega, coupling);
  const double top = dmax * (1.0 - 1e-9);
  const double d1 = std::hypot(delta1, coupling);

  auto bisect = [&](auto&& g, double lo, double hi) -> std::optional<double> {
    double glo = g(lo), ghi = g(hi);
    if ((glo > 0.0) == (ghi > 0.0)) return std::nullopt;
    for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
      const double mid = 0.5 * (lo + hi);
      if ((g(mid) > 0.0) == (glo > 0.0))
        lo = mid;
      else
        hi = mid;
    }
    return 0.5 * (lo + hi);
  };

  PositiveWorkRange range;
  range.lower = bisect(
      [&](double d2v) { return beta2 * std::hypot(d2v, coupling) - beta1 * d1; }, 0.0,
      delta1 > 0.0 ? delta1 : top);
  range.upper = bisect(
      [&](double d2v) {
        return beta2 * (omega - std::hypot(d2v, coupling)) - beta1 * (omega - d1);
      },
      delta1, top);
  return range;
}

}  // namespace qotto
