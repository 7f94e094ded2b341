// Acceptance suite. Each criterion prints one PASS/FAIL line; the exit
// code is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qotto/analysis.hpp"
#include "qotto/coherence.hpp"
#include "qotto/cycle.hpp"
#include "qotto/verify.hpp"

using namespace qotto;

namespace {

int g_failures = 0;
int g_index = 0;

void report(const std::string& name, bool ok, const std::string& detail) {
  ++g_index;
  if (!ok) ++g_failures;
  std::printf("%s %2d %s (%s)\n", ok ? "PASS" : "FAIL", g_index, name.c_str(),
              detail.c_str());
  std::fflush(stdout);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), pattern, a, b, c);
  return buf;
}

// 1. Energy bookkeeping on random cycles: W = Q1 + Q2 to 1e-10 and
//    W = W_A + W_B to 1e-8, 1000 specs in under 5 s.
void criterion_first_law() {
  const auto t0 = std::chrono::steady_clock::now();
  SpecSampler gen(101);
  double worst_q = 0.0, worst_ab = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const auto [ep, ex] = run_cycle(gen.cycle_spec());
    worst_q = std::max(worst_q, std::abs(ex.work - (ex.heat_1 + ex.heat_2)));
    worst_ab = std::max(worst_ab, std::abs(ex.work - (ex.work_a + ex.work_b)));
  }
  const double dt = seconds_since(t0);
  report("first law and per-qubit split on 1000 random cycles",
         worst_q <= 1e-10 && worst_ab <= 1e-8 && dt < 5.0,
         fmt("max|W-Q|=%.2e max|W-Wab|=%.2e t=%.2fs", worst_q, worst_ab, dt));
}

// 2. Closed forms against generic-eigensolver oracles: cycle work vs the
//    discretized loop integral (1e4 steps per stroke) to 1e-6 on 100
//    specs, and the analytic spectrum vs the eigensolver to 1e-12 on 1000
//    parameter sets.
void criterion_closed_form_oracles() {
  SpecSampler gen(103);
  double worst_w = 0.0;
  for (int i = 0; i < 100; ++i) {
    const CycleSpec spec = gen.cycle_spec();
    const auto [ep, ex] = run_cycle(spec);
    worst_w = std::max(worst_w, std::abs(ex.work - brute_force_cycle_work(spec, 10000)));
  }

  SpecSampler pgen(107);
  double worst_e = 0.0;
  for (int i = 0; i < 1000; ++i) {
    ModelParams p = pgen.params();
    if (p.delta == 0.0 && p.coupling == 0.0) p.coupling = 1e-3;
    const Spectrum s = closed_form_spectrum(p);
    const EigenSystem4 es = eig_hermitian(build_total_hamiltonian(p));
    const double scale = std::max(1.0, 2.0 * p.omega);
    for (int k = 0; k < 4; ++k) {
      const double analytic[4] = {s.e1, s.eminus, s.eplus, s.e0};
      worst_e = std::max(worst_e, std::abs(analytic[k] - es.values[k]) / scale);
    }
  }
  report("closed-form work and spectrum vs numeric oracles",
         worst_w <= 1e-6 && worst_e <= 1e-12,
         fmt("max|dW|=%.2e max|dE|/scale=%.2e", worst_w, worst_e));
}

// 3. With the coupling off and the starting detuning at zero no
//    parameter choice yields positive net work.
void criterion_uncoupled_impossibility() {
  SpecSampler gen(109);
  int bad = 0;
  double worst = -1e300;
  for (int i = 0; i < 1000; ++i) {
    const double omega = gen.uniform(0.3, 2.0);
    const CycleSpec spec{omega, 0.0, gen.uniform(0.0, 0.98 * omega), 0.0,
                         gen.beta(), gen.beta()};
    const auto [ep, ex] = run_cycle(spec);
    worst = std::max(worst, ex.work);
    if (ex.work > 0.0) ++bad;
  }
  report("uncoupled cycle from zero detuning never outputs work",
         bad == 0, fmt("violations=%.0f max W=%.2e", double(bad), worst));
}

// 4. Positive-work window topology at (omega=1, J=0.2, beta2/beta1=3)
//    for beta1 in {0.5, 1, 2}: region membership of probe points, the
//    diagonal/f=0 bracketing of each window column, and the shrinking of
//    the delta2>delta1 branch as beta1 decreases.
void criterion_window_topology() {
  const double omega = 1.0, j = 0.2;
  bool ok = true;
  std::string why = "all probes agree";
  auto expect = [&](double b1, double d1, double d2, int sign) {
    const double w = closed_form_work(omega, j, d1, d2, b1, 3.0 * b1);
    if ((sign > 0 && !(w > 0.0)) || (sign < 0 && !(w < 0.0))) {
      ok = false;
      if (why == "all probes agree")
        why = fmt("b1=%g probe (%.2f,%.2f) wrong sign", b1, d1, d2);
    }
  };

  // beta1 = 0.5: only the delta2 < delta1 branch, hugging the diagonal.
  expect(0.5, 0.60, 0.45, +1);
  expect(0.5, 0.90, 0.60, +1);
  expect(0.5, 0.60, 0.10, -1);  // beyond the lower f=0 boundary
  expect(0.5, 0.00, 0.10, -1);  // no delta2 > delta1 branch
  expect(0.5, 0.30, 0.50, -1);
  expect(0.5, 0.10, 0.90, -1);

  // beta1 = 1: both branches present.
  expect(1.0, 0.00, 0.10, +1);
  expect(1.0, 0.30, 0.35, +1);
  expect(1.0, 0.00, 0.40, -1);  // beyond the upper f=0 boundary
  expect(1.0, 0.75, 0.85, -1);  // upper branch closed by d1 = 0.75
  expect(1.0, 0.90, 0.85, +1);  // lower branch open at large d1
  expect(1.0, 0.90, 0.50, -1);

  // beta1 = 2: only a wide delta2 > delta1 branch.
  expect(2.0, 0.30, 0.50, +1);
  expect(2.0, 0.75, 0.85, +1);
  expect(2.0, 0.00, 0.70, -1);
  expect(2.0, 0.60, 0.30, -1);  // no delta2 < delta1 branch
  expect(2.0, 0.90, 0.50, -1);

  // Window columns are bracketed by the diagonal and the f = 0 curve:
  // scan delta2 upward from delta1 at beta1 = 1, delta1 = 0.3; W stays
  // positive until f changes sign and negative afterwards.
  {
    const double b1 = 1.0, b2 = 3.0, d1 = 0.3;
    double boundary = -1.0;
    for (int k = 1; k <= 600; ++k) {
      const double d2 = d1 + (0.97 - d1) * k / 600.0;
      const double f = f_function(omega, j, d1, d2, b1, b2);
      const double w = closed_form_work(omega, j, d1, d2, b1, b2);
      if (boundary < 0.0 && f < 0.0) boundary = d2;
      const bool inside = boundary < 0.0;
      if (inside != (w > 0.0)) ok = false;
    }
    if (boundary < 0.0) ok = false;
  }

  // The delta2 > delta1 branch shrinks as beta1 decreases: measure its
  // width above d1 = 0.3 in each panel.
  auto upper_width = [&](double b1) {
    const double d1 = 0.3;
    double width = 0.0;
    for (int k = 1; k <= 600; ++k) {
      const double d2 = d1 + (0.97 - d1) * k / 600.0;
      if (closed_form_work(omega, j, d1, d2, b1, 3.0 * b1) > 0.0) width = d2 - d1;
    }
    return width;
  };
  const double w05 = upper_width(0.5), w10 = upper_width(1.0), w20 = upper_width(2.0);
  if (!(w05 == 0.0 && w10 > 0.0 && w20 > w10)) {
    ok = false;
    why = fmt("upper branch widths %.3f / %.3f / %.3f not increasing", w05, w10, w20);
  }

  report("positive-work window topology across the three temperature panels", ok, why);
}

// 5. Necessity of the limit conditions: with beta1 < beta2, 1e5 samples
//    find no positive-work point violating the matching inequality.
void criterion_limit_necessity() {
  SpecSampler gen(113);
  int bad = 0;
  for (int i = 0; i < 100000; ++i) {
    CycleSpec s = gen.cycle_spec();
    if (s.beta1 > s.beta2) std::swap(s.beta1, s.beta2);
    const double w =
        closed_form_work(s.omega, s.coupling, s.delta1, s.delta2, s.beta1, s.beta2);
    if (w <= 0.0) continue;
    const LimitConditions lc =
        limit_conditions(s.omega, s.coupling, s.delta1, s.delta2, s.beta1, s.beta2);
    if (s.delta2 > s.delta1 && !lc.low_t_ok) ++bad;
    if (s.delta2 < s.delta1 && !lc.high_t_ok) ++bad;
  }
  report("limit conditions are necessary for positive work (1e5 samples)",
         bad == 0, fmt("counterexamples=%.0f", double(bad)));
}

// 6. Efficiency sweep (beta2 = 2 beta1, delta1 = 0.5, omega = 1,
//    J = 0.2): wherever eta is defined, eta < eta_up < 0.5 with margins
//    above 1e-12; 1e4 points in under 2 s.
void criterion_efficiency_bounds() {
  const auto t0 = std::chrono::steady_clock::now();
  double min_margin_up = 1e300, min_margin_carnot = 1e300;
  int defined = 0;
  for (double b1 : {5.0, 2.5, 0.1, 0.5}) {
    for (int k = 0; k < 2500; ++k) {
      const double d2 = 0.975 * (k + 0.5) / 2500.0;
      const CycleSpec spec{1.0, 0.5, d2, 0.2, b1, 2.0 * b1};
      const auto [ep, ex] = run_cycle(spec);
      if (!ex.efficiency) continue;
      ++defined;
      const double up = efficiency_bound(1.0, 0.2, 0.5, d2);
      min_margin_up = std::min(min_margin_up, up - *ex.efficiency);
      min_margin_carnot = std::min(min_margin_carnot, 0.5 - up);
    }
  }
  const double dt = seconds_since(t0);
  report("efficiency below its bound, bound below Carnot, on a 1e4-point sweep",
         defined > 0 && min_margin_up > 1e-12 && min_margin_carnot > 1e-12 && dt < 2.0,
         fmt("min margins %.2e / %.2e t=%.2fs", min_margin_up, min_margin_carnot, dt));
}

// 7. Two-level reduction identity for the middle doublet on 1000 random
//    specs with delta2 > delta1, residual at most 1e-12.
void criterion_reduction_identity() {
  SpecSampler gen(127);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    CycleSpec s = gen.cycle_spec();
    if (s.delta1 > s.delta2) std::swap(s.delta1, s.delta2);
    if (s.delta1 == s.delta2) continue;
    worst = std::max(worst, reduction_identity_check(s.omega, s.coupling, s.delta1,
                                                    s.delta2, s.beta1, s.beta2));
  }
  report("two-level reduction identity on 1000 random specs",
         worst <= 1e-12, fmt("max residual=%.2e", worst));
}

// 8. Work/coherence sign criterion: with J > 0 and delta1 < delta2,
//    sign(W) matches sign(C_l1(rho_a) - C_l1(rho_d)) on 1e4 samples,
//    zeros matched within 1e-12.
void criterion_coherence_sign() {
  SpecSampler gen(131);
  int bad = 0;
  for (int i = 0; i < 10000; ++i) {
    CycleSpec s = gen.cycle_spec(1e-3);
    if (s.delta1 > s.delta2) std::swap(s.delta1, s.delta2);
    if (s.delta1 == s.delta2) continue;
    const CoherenceCriterion r = work_coherence_criterion(s);
    if (!r.applicable || !r.agree) ++bad;
  }
  report("work sign equals coherence-change sign (1e4 samples)",
         bad == 0, fmt("disagreements=%.0f", double(bad)));
}

// 9. Measurement-erase bound: the stepwise audit equals -T2 C_r(rho_d)
//    to 1e-10, the bound is never positive, and it is exactly zero for
//    uncoupled cycles.
void criterion_measure_erase() {
  SpecSampler gen(137);
  bool ok = true;
  double worst_audit = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const CycleSpec spec = gen.cycle_spec();
    const MeasureEraseReport rep = measure_erase_cycle(spec);
    const double audit =
        rep.w_c_to_d + rep.w_turn_off + rep.w_decoherence + rep.w_erase_bound;
    worst_audit = std::max(worst_audit, std::abs(audit - rep.w_total_bound));
    if (rep.w_total_bound > 0.0) ok = false;
  }
  for (int i = 0; i < 100; ++i) {
    const double omega = gen.uniform(0.3, 2.0);
    const CycleSpec spec{omega, gen.uniform(0.0, 0.9 * omega),
                         gen.uniform(0.0, 0.9 * omega), 0.0, gen.beta(), gen.beta()};
    if (measure_erase_cycle(spec).w_total_bound != 0.0) ok = false;
  }
  ok = ok && worst_audit <= 1e-10;
  report("measurement-erase bound audit, sign, and uncoupled zero",
         ok, fmt("max audit residual=%.2e", worst_audit));
}

// 10. Excited-state occupancy formula equals the partial-trace diagonal
//     to 1e-12, 100 points per stroke on 100 random specs.
void criterion_occupancy() {
  const SuiteResult r = suite_occupancy_formula(139, 100, 100);
  report("per-qubit occupancy formula vs partial trace (100x100x2 points)",
         r.passed(), fmt("specs=%.0f failures=%.0f", double(r.cases), double(r.failures)));
}

// 11. Performance: a 200x200 window scan under 2 s and the full verify
//     suite under 30 s.
void criterion_performance() {
  const auto t0 = std::chrono::steady_clock::now();
  const WindowGrid g = window_scan(1.0, 0.2, 1.0, 3.0, 200);
  const double t_scan = seconds_since(t0);

  const auto t1 = std::chrono::steady_clock::now();
  const std::vector<SuiteResult> results = run_verify(2024, 1000);
  const double t_verify = seconds_since(t1);
  bool all_ok = g.cells.size() == 40000;
  for (const SuiteResult& r : results) all_ok = all_ok && r.passed();

  report("200x200 scan under 2 s, full verify suite passing under 30 s",
         all_ok && t_scan < 2.0 && t_verify < 30.0,
         fmt("scan=%.2fs verify=%.2fs", t_scan, t_verify));
}

}  // namespace

int main() {
  criterion_first_law();
  criterion_closed_form_oracles();
  criterion_uncoupled_impossibility();
  criterion_window_topology();
  criterion_limit_necessity();
  criterion_efficiency_bounds();
  criterion_reduction_identity();
  criterion_coherence_sign();
  criterion_measure_erase();
  criterion_occupancy();
  criterion_performance();
  std::printf("%d/%d criteria passed\n", g_index - g_failures, g_index);
  return g_failures;
}
