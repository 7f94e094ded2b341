#pragma once

// Gibbs states and eigenstate populations at the two bath temperatures.
// beta is the primary temperature parameter (k_B = 1); T = 1/beta.

#include <cmath>
#include <stdexcept>

#include "qotto/linalg.hpp"
#include "qotto/model.hpp"

namespace qotto {

// Occupancies of the global eigenstates |phi_0>, |phi_1>, |phi_+>, |phi_->.
struct Populations {
  double p0;
  double p1;
  double pplus;
  double pminus;

  double sum() const { return p0 + p1 + pplus + pminus; }
};

inline double population_gap(const Populations& pops) { return pops.pminus - pops.pplus; }

// Closed form of pminus - pplus for a Gibbs state:
//   sinh(beta D) / [cosh(beta Omega) + cosh(beta D)].
inline double gibbs_population_gap(double beta, double omega, double gap_d) {
  return std::sinh(beta * gap_d) / (std::cosh(beta * omega) + std::cosh(beta * gap_d));
}

struct ThermalPoint {
  ModelParams params;
  double beta;
  double theta;            // mixing angle of the eigenbasis used
  Mat4 state;
  Populations pops;
  double partition_function;
};

// Gibbs state exp(-beta H)/Z built from the closed-form spectrum.
// The degenerate Delta = J = 0 point is allowed here: the state is
// basis-independent within the middle subspace and theta = 0 is used.
inline ThermalPoint gibbs_state(const ModelParams& p, double beta) {
  validate_params(p);
  if (!(beta > 0.0) || !std::isfinite(beta))
    throw std::domain_error("gibbs_state: beta must be positive and finite");

  const double d = middle_gap(p);
  const double theta = mixing_angle(p);
  const std::array<double, 4> energies{0.0, p.omega - d, p.omega + d, 2.0 * p.omega};

  // Log-sum-exp shift; the ground energy is 0 so emax = 0 here, kept
  // general in case the energy offset convention changes.
  double emin = energies[0];
  for (double e : energies) emin = std::min(emin, e);
  std::array<double, 4> w{};
  double z = 0.0;
  for (std::size_t n = 0; n < 4; ++n) {
    w[n] = std::exp(-beta * (energies[n] - emin));
    z += w[n];
  }

  ThermalPoint tp;
  tp.params = p;
  tp.beta = beta;
  tp.theta = theta;
  tp.pops = Populations{w[3] / z, w[0] / z, w[2] / z, w[1] / z};
  tp.partition_function = z * std::exp(-beta * emin);

  const Mat4 v = eigenbasis(theta);
  const std::array<double, 4> pn{w[0] / z, w[1] / z, w[2] / z, w[3] / z};
  for (std::size_t n = 0; n < 4; ++n)
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j)
        tp.state(i, j) += pn[n] * v(i, n) * std::conj(v(j, n));
  return tp;
}

}  // namespace qotto
