#pragma once

// XX-coupled two-qubit model.
//
// The local fields are parametrized by their sum and difference,
//   omega_A = (Omega - Delta)/2,  omega_B = (Omega + Delta)/2,
// and the coupling J acts between |01> and |10>. The closed-form
// eigensystem is
//   |phi_1> = |11>,                              E_1 = 0
//   |phi_-> = cos(t)|01> - sin(t)|10>,           E_- = Omega - D
//   |phi_+> = cos(t)|10> + sin(t)|01>,           E_+ = Omega + D
//   |phi_0> = |00>,                              E_0 = 2*Omega
// with D = sqrt(Delta^2 + J^2), sin(2t) = J/D, cos(2t) = Delta/D.

#include <cmath>
#include <stdexcept>
#include <string>

#include "qotto/linalg.hpp"

namespace qotto {

struct LevelCrossingError : std::domain_error {
  using std::domain_error::domain_error;
};

struct DegenerateSpectrumError : std::domain_error {
  using std::domain_error::domain_error;
};

struct ModelParams {
  double omega;     // Omega = omega_A + omega_B > 0
  double delta;     // Delta = omega_B - omega_A >= 0
  double coupling;  // J >= 0
};

inline double omega_a(const ModelParams& p) { return 0.5 * (p.omega - p.delta); }
inline double omega_b(const ModelParams& p) { return 0.5 * (p.omega + p.delta); }
inline double middle_gap(const ModelParams& p) { return std::hypot(p.delta, p.coupling); }

// Largest Delta compatible with no level crossing at this Omega, J.
inline double delta_max(double omega, double coupling) {
  const double d2 = omega * omega - coupling * coupling;
  return d2 > 0.0 ? std::sqrt(d2) : 0.0;
}

inline void validate_params(const ModelParams& p) {
  if (!(p.omega > 0.0) || !std::isfinite(p.omega))
    throw std::invalid_argument("ModelParams: omega must be positive");
  if (p.delta < 0.0 || p.coupling < 0.0)
    throw std::invalid_argument("ModelParams: delta and coupling must be non-negative");
  if (!(p.coupling < p.omega))
    throw std::invalid_argument("ModelParams: coupling must be below omega");
  if (!(p.delta < delta_max(p.omega, p.coupling)))
    throw LevelCrossingError("ModelParams: delta >= sqrt(omega^2 - J^2), levels cross");
}

// H_L = omega_A (1 + sigma_z^A) + omega_B (1 + sigma_z^B)
//     = diag(2*Omega, Omega - Delta, Omega + Delta, 0).
inline Mat4 build_local_hamiltonian(const ModelParams& p) {
  return Mat4::diagonal(2.0 * p.omega, p.omega - p.delta, p.omega + p.delta, 0.0);
}

// H = H_L + J (sigma_+^A sigma_-^B + h.c.); the coupling connects |01><10|.
inline Mat4 build_total_hamiltonian(const ModelParams& p) {
  Mat4 h = build_local_hamiltonian(p);
  h(1, 2) = p.coupling;
  h(2, 1) = p.coupling;
  return h;
}

struct Spectrum {
  double e1;      // 0
  double eminus;  // Omega - D
  double eplus;   // Omega + D
  double e0;      // 2*Omega
  double gap;     // D
  double theta;   // mixing angle, [0, pi/4]
};

// Mixing-angle branch: theta = atan2(J, Delta)/2 for J, Delta >= 0.
inline double mixing_angle(const ModelParams& p) {
  return 0.5 * std::atan2(p.coupling, p.delta);
}

inline Spectrum closed_form_spectrum(const ModelParams& p) {
  validate_params(p);
  const double d = middle_gap(p);
  if (d == 0.0)
    throw DegenerateSpectrumError(
        "closed_form_spectrum: Delta = J = 0, middle levels degenerate");
  return Spectrum{0.0, p.omega - d, p.omega + d, 2.0 * p.omega, d, mixing_angle(p)};
}

// Eigenvectors as columns in ascending energy order:
// |phi_1>, |phi_->, |phi_+>, |phi_0>.
inline Mat4 eigenbasis(double theta) {
  const double c = std::cos(theta), s = std::sin(theta);
  Mat4 v;
  v(3, 0) = 1.0;             // |phi_1> = |11>
  v(1, 1) = c;
  v(2, 1) = -s;              // |phi_-> = c|01> - s|10>
  v(2, 2) = c;
  v(1, 2) = s;               // |phi_+> = c|10> + s|01>
  v(0, 3) = 1.0;             // |phi_0> = |00>
  return v;
}

struct CycleConstraintReport {
  bool ok = false;
  bool zero_area_warning = false;
  std::string message;
};

// Delta1 and Delta2 may come in either order, each in
// [0, sqrt(Omega^2 - J^2)); Delta1 == Delta2 is accepted as a
// degenerate (zero-area) cycle with a warning.
inline CycleConstraintReport validate_cycle_constraint(double omega, double delta1,
                                                       double delta2, double coupling) {
  CycleConstraintReport rep;
  if (!(omega > 0.0) || !std::isfinite(omega)) {
    rep.message = "omega must be positive and finite";
    return rep;
  }
  if (coupling < 0.0 || !(coupling < omega)) {
    rep.message = "coupling must satisfy 0 <= J < omega";
    return rep;
  }
  const double dmax = delta_max(omega, coupling);
  if (delta1 < 0.0 || !(delta1 < dmax)) {
    rep.message = "delta1 outside [0, sqrt(omega^2 - J^2))";
    return rep;
  }
  if (delta2 < 0.0 || !(delta2 < dmax)) {
    rep.message = "delta2 outside [0, sqrt(omega^2 - J^2))";
    return rep;
  }
  rep.ok = true;
  if (delta1 == delta2) {
    rep.zero_area_warning = true;
    rep.message = "delta1 == delta2: zero-area cycle, W = 0";
  }
  return rep;
}

}  // namespace qotto
