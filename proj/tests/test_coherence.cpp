#include "catch_amalgamated.hpp"

#include <cmath>

#include "qotto/coherence.hpp"
#include "qotto/verify.hpp"

using namespace qotto;

namespace {

Mat4 bell_phi_plus() {
  Mat4 rho;
  rho(1, 1) = 0.5;
  rho(2, 2) = 0.5;
  rho(1, 2) = 0.5;
  rho(2, 1) = 0.5;
  return rho;
}

}  // namespace

TEST_CASE("coherence_l1") {
  CHECK(coherence_l1(Mat4::diagonal(0.1, 0.2, 0.3, 0.4)) == 0.0);
  CHECK(coherence_l1(bell_phi_plus()) == Catch::Approx(1.0));

  // closed form (pminus - pplus) J / D for adiabatic-cycle states
  const ThermalPoint a = gibbs_state({1.0, 0.0, 0.2}, 1.0);
  const double d = middle_gap(a.params);
  CHECK(coherence_l1(a.state) ==
        Catch::Approx(population_gap(a.pops) * a.params.coupling / d).margin(1e-12));
}

TEST_CASE("coherence_l1 closed form holds along random cycles") {
  SpecSampler gen(67);
  for (int trial = 0; trial < 300; ++trial) {
    const CycleSpec spec = gen.cycle_spec(1e-3);
    const auto [ep, ex] = run_cycle(spec);
    const double d1 = std::hypot(spec.delta1, spec.coupling);
    REQUIRE(coherence_l1(ep.rho_a) ==
            Catch::Approx(population_gap(ep.pops_a) * spec.coupling / d1).margin(1e-12));
    REQUIRE(coherence_l1(ep.rho_d) ==
            Catch::Approx(population_gap(ep.pops_c) * spec.coupling / d1).margin(1e-12));
  }
}

TEST_CASE("coherence_rel_entropy") {
  CHECK(coherence_rel_entropy(Mat4::diagonal(0.1, 0.2, 0.3, 0.4)) == 0.0);
  CHECK(coherence_rel_entropy(bell_phi_plus()) == Catch::Approx(std::log(2.0)).margin(1e-12));

  // nonnegative, zero exactly on diagonal states
  const ThermalPoint tp = gibbs_state({1.0, 0.3, 0.4}, 1.0);
  const double cr = coherence_rel_entropy(tp.state);
  CHECK(cr > 0.0);
  // two-formula agreement: for any state, C_r = S(diag populations) - S(rho)
  double s_diag = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    const double p = tp.state(i, i).real();
    if (p > 0.0) s_diag -= p * std::log(p);
  }
  CHECK(cr == Catch::Approx(s_diag - von_neumann_entropy(tp.state)).margin(1e-12));
}

TEST_CASE("work_coherence_criterion") {
  SECTION("degenerate cycle: both signs zero") {
    const CoherenceCriterion r =
        work_coherence_criterion(CycleSpec{1.0, 0.3, 0.3, 0.2, 1.0, 1.0});
    CHECK(r.work_sign == 0);
    CHECK(r.coherence_sign == 0);
    CHECK_FALSE(r.applicable);
  }

  SECTION("J = 0: coherence vanishes, criterion not applicable") {
    const CoherenceCriterion r =
        work_coherence_criterion(CycleSpec{1.0, 0.1, 0.6, 0.0, 1.0, 3.0});
    CHECK_FALSE(r.applicable);
    CHECK(r.coherence_sign == 0);
  }

  SECTION("random sweep under the preconditions always agrees") {
    SpecSampler gen(71);
    for (int trial = 0; trial < 500; ++trial) {
      CycleSpec spec = gen.cycle_spec(1e-3);
      if (spec.delta1 > spec.delta2) std::swap(spec.delta1, spec.delta2);
      if (spec.delta1 == spec.delta2) continue;
      const CoherenceCriterion r = work_coherence_criterion(spec);
      REQUIRE(r.applicable);
      REQUIRE(r.agree);
    }
  }
}

TEST_CASE("measure_erase_cycle") {
  SECTION("J = 0: nothing to decohere, bound is exactly zero") {
    const MeasureEraseReport rep =
        measure_erase_cycle(CycleSpec{1.0, 0.1, 0.6, 0.0, 1.0, 3.0});
    CHECK(rep.w_total_bound == 0.0);
    CHECK(rep.w_decoherence == 0.0);
  }

  SECTION("coupled cycle: strictly negative bound") {
    const MeasureEraseReport rep =
        measure_erase_cycle(CycleSpec{1.0, 0.0, 0.6, 0.2, 1.0, 3.0});
    CHECK(rep.w_total_bound < 0.0);
  }

  SECTION("stepwise audit equals -T2 C_r(rho_d)") {
    SpecSampler gen(73);
    for (int trial = 0; trial < 200; ++trial) {
      const CycleSpec spec = gen.cycle_spec();
      const auto [ep, ex] = run_cycle(spec);
      const MeasureEraseReport rep = measure_erase_cycle(spec);
      const double audit =
          rep.w_c_to_d + rep.w_turn_off + rep.w_decoherence + rep.w_erase_bound;
      REQUIRE(audit == Catch::Approx(rep.w_total_bound).margin(1e-10));
      REQUIRE(rep.w_total_bound ==
              Catch::Approx(-coherence_rel_entropy(ep.rho_d) / spec.beta2).margin(1e-14));
      REQUIRE(rep.w_total_bound <= 0.0);

      // identities used in the derivation
      REQUIRE(von_neumann_entropy(ep.rho_c) ==
              Catch::Approx(von_neumann_entropy(ep.rho_d)).margin(1e-10));
      const Mat4 hl1 = build_local_hamiltonian(params_at(spec, spec.delta1));
      REQUIRE(((rep.rho_a_tilde - ep.rho_d) * hl1).trace().real() ==
              Catch::Approx(0.0).margin(1e-12));
    }
  }
}
