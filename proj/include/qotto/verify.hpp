#pragma once

// Randomized invariant suites shared by the `verify` CLI command and the
// acceptance tests. The brute-force work oracle lives here and goes
// through the generic eigensolver only, never through the closed-form
// spectrum it is checking.

#include <cmath>
#include <cstdint>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qotto/analysis.hpp"
#include "qotto/coherence.hpp"
#include "qotto/cycle.hpp"
#include "qotto/linalg.hpp"
#include "qotto/model.hpp"
#include "qotto/thermal.hpp"

namespace qotto {

// Sample generator for random valid parameters. PRNG is std::mt19937_64;
// the stream is reproducible for a given seed with the same standard
// library, outcomes (pass counts) are what is portable.
class SpecSampler {
 public:
  explicit SpecSampler(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng_);
  }

  double log_uniform(double lo, double hi) {
    return std::exp(uniform(std::log(lo), std::log(hi)));
  }

  double beta() { return log_uniform(0.05, 6.0); }

  ModelParams params(double min_coupling = 0.0) {
    const double omega = uniform(0.3, 2.0);
    const double coupling = uniform(min_coupling, 0.7 * omega);
    const double delta = uniform(0.0, 0.98 * delta_max(omega, coupling));
    return ModelParams{omega, delta, coupling};
  }

  CycleSpec cycle_spec(double min_coupling = 0.0) {
    const double omega = uniform(0.3, 2.0);
    const double coupling = uniform(min_coupling, 0.7 * omega);
    const double top = 0.98 * delta_max(omega, coupling);
    return CycleSpec{omega, uniform(0.0, top), uniform(0.0, top),
                     coupling, beta(), beta()};
  }

  std::mt19937_64& rng() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

inline std::string describe(const CycleSpec& s) {
  std::ostringstream os;
  os.precision(17);
  os << "omega=" << s.omega << " delta1=" << s.delta1 << " delta2=" << s.delta2
     << " J=" << s.coupling << " beta1=" << s.beta1 << " beta2=" << s.beta2;
  return os.str();
}

// Discretized -closed-loop tr(rho dH) over both adiabatic strokes,
// populations frozen per stroke and states rebuilt from the generic
// eigensolver at each step midpoint.
inline double brute_force_cycle_work(const CycleSpec& spec, int steps_per_stroke) {
  validate_cycle_spec(spec);
  const ModelParams p1 = params_at(spec, spec.delta1);
  const ModelParams p2 = params_at(spec, spec.delta2);

  auto gibbs_numeric = [&](const ModelParams& p, double beta) {
    Mat4 g = spectral_function(build_total_hamiltonian(p),
                               [beta](double e) { return std::exp(-beta * e); });
    const double z = g.trace().real();
    g *= 1.0 / z;
    return g;
  };

  auto frozen_populations = [&](const Mat4& rho, const ModelParams& p) {
    const EigenSystem4 es = eig_hermitian(build_total_hamiltonian(p));
    std::array<double, 4> pops{};
    for (std::size_t n = 0; n < 4; ++n) {
      cx acc = 0.0;
      for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
          acc += std::conj(es.vector(n, i)) * rho(i, j) * es.vector(n, j);
      pops[n] = acc.real();
    }
    return pops;
  };

  auto stroke = [&](const std::array<double, 4>& pops, double d_from, double d_to) {
    double w = 0.0;
    const double h = (d_to - d_from) / steps_per_stroke;
    for (int k = 0; k < steps_per_stroke; ++k) {
      const double dk = d_from + k * h;
      const Mat4 dh = build_total_hamiltonian(params_at(spec, dk + h)) -
                      build_total_hamiltonian(params_at(spec, dk));
      const EigenSystem4 es =
          eig_hermitian(build_total_hamiltonian(params_at(spec, dk + 0.5 * h)));
      for (std::size_t n = 0; n < 4; ++n) {
        cx acc = 0.0;
        for (std::size_t i = 0; i < 4; ++i)
          for (std::size_t j = 0; j < 4; ++j)
            acc += std::conj(es.vector(n, i)) * dh(i, j) * es.vector(n, j);
        w -= pops[n] * acc.real();
      }
    }
    return w;
  };

  const Mat4 rho_a = gibbs_numeric(p1, spec.beta1);
  const Mat4 rho_c = gibbs_numeric(p2, spec.beta2);
  return stroke(frozen_populations(rho_a, p1), spec.delta1, spec.delta2) +
         stroke(frozen_populations(rho_c, p2), spec.delta2, spec.delta1);
}

struct SuiteResult {
  std::string name;
  int cases = 0;
  int failures = 0;
  std::string first_failure;

  bool passed() const { return failures == 0; }
};

namespace detail {

class SuiteRecorder {
 public:
  explicit SuiteRecorder(std::string name) { result_.name = std::move(name); }

  void check(bool ok, const std::string& context) {
    ++result_.cases;
    if (!ok) {
      if (result_.failures == 0) result_.first_failure = context;
      ++result_.failures;
    }
  }

  SuiteResult result() const { return result_; }

 private:
  SuiteResult result_;
};

}  // namespace detail

inline SuiteResult suite_first_law(std::uint64_t seed, int cases) {
  detail::SuiteRecorder rec("first_law");
  SpecSampler gen(seed);
  for (int i = 0; i < cases; ++i) {
    const CycleSpec spec = gen.cycle_spec();
    const auto [ep, ex] = run_cycle(spec);
    const bool ok = std::abs(ex.work - (ex.heat_1 + ex.heat_2)) <= 1e-10 &&
                    std::abs(ex.work - (ex.work_a + ex.work_b)) <= 1e-8;
    rec.check(ok, describe(spec));
  }
  return rec.result();
}

inline SuiteResult suite_heat_trace_forms(std::uint64_t seed, int cases) {
  detail::SuiteRecorder rec("heat_trace_forms");
  SpecSampler gen(seed);
  for (int i = 0; i < cases; ++i) {
    const CycleSpec spec = gen.cycle_spec();
    const auto [ep, ex] = run_cycle(spec);
    const Mat4 h1 = build_total_hamiltonian(params_at(spec, spec.delta1));
    const Mat4 h2 = build_total_hamiltonian(params_at(spec, spec.delta2));
    const double q1 = ((ep.rho_a - ep.rho_d) * h1).trace().real();
    const double q2 = ((ep.rho_c - ep.rho_b) * h2).trace().real();
    rec.check(std::abs(q1 - ex.heat_1) <= 1e-10 && std::abs(q2 - ex.heat_2) <= 1e-10,
              describe(spec));
  }
  return rec.result();
}

inline SuiteResult suite_spectrum_oracle(std::uint64_t seed, int cases) {
  detail::SuiteRecorder rec("spectrum_oracle");
  SpecSampler gen(seed);
  for (int i = 0; i < cases; ++i) {
    const ModelParams p = gen.params(1e-6);
    const Spectrum sp = closed_form_spectrum(p);
    const EigenSystem4 es = eig_hermitian(build_total_hamiltonian(p));
    bool ok = std::abs(es.values[0] - sp.e1) <= 1e-12 &&
              std::abs(es.values[1] - sp.eminus) <= 1e-12 &&
              std::abs(es.values[2] - sp.eplus) <= 1e-12 &&
              std::abs(es.values[3] - sp.e0) <= 1e-12;
    // Overlap of the closed-form basis with the numerical one must be
    // unitary (eigenspaces coincide).
    const Mat4 overlap = eigenbasis(sp.theta).adjoint() * es.vectors;
    const Mat4 gram = overlap.adjoint() * overlap;
    ok = ok && (gram - Mat4::identity()).max_abs() <= 1e-10;
    std::ostringstream os;
    os.precision(17);
    os << "omega=" << p.omega << " delta=" << p.delta << " J=" << p.coupling;
    rec.check(ok, os.str());
  }
  return rec.result();
}

inline SuiteResult suite_gibbs_oracle(std::uint64_t seed, int cases) {
  detail::SuiteRecorder rec("gibbs_oracle");
  SpecSampler gen(seed);
  for (int i = 0; i < cases; ++i) {
    const ModelParams p = gen.params();
    const double beta = gen.beta();
    const ThermalPoint tp = gibbs_state(p, beta);
    Mat4 ref = spectral_function(build_total_hamiltonian(p),
                                 [beta](double e) { return std::exp(-beta * e); });
    ref *= 1.0 / ref.trace().real();
    std::ostringstream os;
    os.precision(17);
    os << "omega=" << p.omega << " delta=" << p.delta << " J=" << p.coupling
       << " beta=" << beta;
    rec.check((tp.state - ref).max_abs() <= 1e-11, os.str());
  }
  return rec.result();
}

inline SuiteResult suite_work_oracle(std::uint64_t seed, int cases,
                                     int steps_per_stroke = 10000) {
  detail::SuiteRecorder rec("work_oracle");
  SpecSampler gen(seed);
  for (int i = 0; i < cases; ++i) {
    const CycleSpec spec = gen.cycle_spec();
    const double w_closed = closed_form_work(spec.omega, spec.coupling, spec.delta1,
                                             spec.delta2, spec.beta1, spec.beta2);
    const double w_oracle = brute_force_cycle_work(spec, steps_per_stroke);
    rec.check(std::abs(w_closed - w_oracle) <= 1e-6, describe(spec));
  }
  return rec.result();
}

inline SuiteResult suite_uncoupled_negative(std::uint64_t seed, int cases) {
  detail::SuiteRecorder rec("uncoupled_negative");
  SpecSampler gen(seed);
  for (int i = 0; i < cases; ++i) {
    const double omega = gen.uniform(0.3, 2.0);
    const CycleSpec spec{omega, 0.0, gen.uniform(0.0, 0.98 * omega), 0.0,
                         gen.beta(), gen.beta()};
    const auto [ep, ex] = run_cycle(spec);
    rec.check(ex.work <= 1e-15, describe(spec));
  }
  return rec.result();
}

inline SuiteResult suite_reduction_identity(std::uint64_t seed, int cases) {
  detail::SuiteRecorder rec("two_level_reduction");
  SpecSampler gen(seed);
  for (int i = 0; i < cases; ++i) {
    CycleSpec spec = gen.cycle_spec();
    if (spec.delta1 > spec.delta2) std::swap(spec.delta1, spec.delta2);
    if (spec.delta1 == spec.delta2) continue;
    const double res = reduction_identity_check(spec.omega, spec.coupling, spec.delta1,
                                               spec.delta2, spec.beta1, spec.beta2);
    const double res2 = middle_levels_oracle(spec.omega, spec.coupling, spec.delta1,
                                             spec.delta2, spec.beta1, spec.beta2)
                            .work_identity_residual;
    rec.check(res <= 1e-12 && res2 <= 1e-12, describe(spec));
  }
  return rec.result();
}

inline SuiteResult suite_limit_necessity(std::uint64_t seed, int cases) {
  detail::SuiteRecorder rec("limit_necessity");
  SpecSampler gen(seed);
  for (int i = 0; i < cases; ++i) {
    CycleSpec spec = gen.cycle_spec();
    if (spec.beta1 > spec.beta2) std::swap(spec.beta1, spec.beta2);
    const double w = closed_form_work(spec.omega, spec.coupling, spec.delta1,
                                      spec.delta2, spec.beta1, spec.beta2);
    const LimitConditions lc = limit_conditions(spec.omega, spec.coupling, spec.delta1,
                                                spec.delta2, spec.beta1, spec.beta2);
    bool ok = true;
    if (w > 0.0 && spec.delta2 > spec.delta1) ok = lc.low_t_ok;
    if (w > 0.0 && spec.delta2 < spec.delta1) ok = lc.high_t_ok;
    rec.check(ok, describe(spec));
  }
  return rec.result();
}

inline SuiteResult suite_efficiency_bound(std::uint64_t seed, int cases) {
  detail::SuiteRecorder rec("efficiency_bound");
  SpecSampler gen(seed);
  for (int i = 0; i < cases; ++i) {
    CycleSpec spec = gen.cycle_spec();
    if (spec.beta1 > spec.beta2) std::swap(spec.beta1, spec.beta2);
    if (spec.delta1 == spec.delta2) continue;
    const auto [ep, ex] = run_cycle(spec);
    if (!ex.efficiency) {
      rec.check(true, "");
      continue;
    }
    const double up =
        efficiency_bound(spec.omega, spec.coupling, spec.delta1, spec.delta2);
    const double carnot = 1.0 - spec.beta1 / spec.beta2;
    rec.check(*ex.efficiency < up && up < carnot, describe(spec));
  }
  return rec.result();
}

inline SuiteResult suite_coherence_criterion(std::uint64_t seed, int cases) {
  detail::SuiteRecorder rec("coherence_criterion");
  SpecSampler gen(seed);
  for (int i = 0; i < cases; ++i) {
    CycleSpec spec = gen.cycle_spec(1e-3);
    if (spec.delta1 > spec.delta2) std::swap(spec.delta1, spec.delta2);
    if (spec.delta1 == spec.delta2) continue;
    rec.check(work_coherence_criterion(spec).agree, describe(spec));
  }
  return rec.result();
}

inline SuiteResult suite_measure_erase(std::uint64_t seed, int cases) {
  detail::SuiteRecorder rec("measure_erase");
  SpecSampler gen(seed);
  for (int i = 0; i < cases; ++i) {
    const CycleSpec spec = gen.cycle_spec();
    const auto [ep, ex] = run_cycle(spec);
    const MeasureEraseReport rep = measure_erase_cycle(spec);
    const double audit =
        rep.w_c_to_d + rep.w_turn_off + rep.w_decoherence + rep.w_erase_bound;
    const Mat4 hl1 = build_local_hamiltonian(params_at(spec, spec.delta1));
    bool ok = std::abs(audit - rep.w_total_bound) <= 1e-10;
    ok = ok && rep.w_total_bound <= 0.0;
    ok = ok && std::abs(von_neumann_entropy(ep.rho_c) - von_neumann_entropy(ep.rho_d)) <=
                   1e-10;
    ok = ok && std::abs(((rep.rho_a_tilde - ep.rho_d) * hl1).trace().real()) <= 1e-12;
    rec.check(ok, describe(spec));
  }
  return rec.result();
}

inline SuiteResult suite_occupancy_formula(std::uint64_t seed, int cases,
                                           int points_per_stroke = 100) {
  detail::SuiteRecorder rec("occupancy_formula");
  SpecSampler gen(seed);
  for (int i = 0; i < cases; ++i) {
    const CycleSpec spec = gen.cycle_spec();
    const ThermalPoint a = gibbs_state(params_at(spec, spec.delta1), spec.beta1);
    const ThermalPoint c = gibbs_state(params_at(spec, spec.delta2), spec.beta2);
    bool ok = true;
    auto probe = [&](const Populations& pops, double delta) {
      const ModelParams p = params_at(spec, delta);
      const double theta = mixing_angle(p);
      const auto [pa, pb] = occupancy_ab(pops, theta);
      // Brute-force partial-trace oracle at the same point.
      const Mat4 v = eigenbasis(theta);
      Mat4 rho;
      const std::array<double, 4> pn{pops.p1, pops.pminus, pops.pplus, pops.p0};
      for (std::size_t n = 0; n < 4; ++n)
        for (std::size_t r = 0; r < 4; ++r)
          for (std::size_t s = 0; s < 4; ++s)
            rho(r, s) += pn[n] * v(r, n) * std::conj(v(s, n));
      const double pa_ref = partial_trace(rho, Subsystem::A)(0, 0).real();
      const double pb_ref = partial_trace(rho, Subsystem::B)(0, 0).real();
      if (std::abs(pa - pa_ref) > 1e-12 || std::abs(pb - pb_ref) > 1e-12) ok = false;
    };
    for (int k = 0; k < points_per_stroke; ++k) {
      const double t = (k + 0.5) / points_per_stroke;
      probe(a.pops, spec.delta1 + t * (spec.delta2 - spec.delta1));
      probe(c.pops, spec.delta2 + t * (spec.delta1 - spec.delta2));
    }
    rec.check(ok, describe(spec));
  }
  return rec.result();
}

inline SuiteResult suite_integration_richardson(std::uint64_t seed, int cases) {
  detail::SuiteRecorder rec("integration_richardson");
  SpecSampler gen(seed);
  for (int i = 0; i < cases; ++i) {
    const CycleSpec spec = gen.cycle_spec();
    const ThermalPoint a = gibbs_state(params_at(spec, spec.delta1), spec.beta1);
    const auto [wa1, wb1] = per_qubit_stroke_work(a.pops, spec.omega, spec.coupling,
                                                  spec.delta1, spec.delta2, 1001);
    const auto [wa2, wb2] = per_qubit_stroke_work(a.pops, spec.omega, spec.coupling,
                                                  spec.delta1, spec.delta2, 2001);
    rec.check(std::abs(wa1 - wa2) < 1e-9 && std::abs(wb1 - wb2) < 1e-9, describe(spec));
  }
  return rec.result();
}

// Full verification run. `cases` scales every suite; the work oracle is
// capped to keep the 10^4-step integrations affordable.
inline std::vector<SuiteResult> run_verify(std::uint64_t seed, int cases) {
  std::vector<SuiteResult> results;
  results.push_back(suite_first_law(seed + 1, cases));
  results.push_back(suite_heat_trace_forms(seed + 2, cases));
  results.push_back(suite_spectrum_oracle(seed + 3, cases));
  results.push_back(suite_gibbs_oracle(seed + 4, cases));
  results.push_back(suite_work_oracle(seed + 5, std::min(cases, 100)));
  results.push_back(suite_uncoupled_negative(seed + 6, cases));
  results.push_back(suite_reduction_identity(seed + 7, cases));
  results.push_back(suite_limit_necessity(seed + 8, cases));
  results.push_back(suite_efficiency_bound(seed + 9, cases));
  results.push_back(suite_coherence_criterion(seed + 10, cases));
  results.push_back(suite_measure_erase(seed + 11, std::min(cases, 500)));
  results.push_back(suite_occupancy_formula(seed + 12, std::min(cases, 200)));
  results.push_back(suite_integration_richardson(seed + 13, std::min(cases, 200)));
  return results;
}

}  // namespace qotto
