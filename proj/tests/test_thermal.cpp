#include "catch_amalgamated.hpp"

#include <cmath>
#include <random>

#include "qotto/linalg.hpp"
#include "qotto/model.hpp"
#include "qotto/thermal.hpp"

using namespace qotto;

TEST_CASE("gibbs_state: limiting temperatures") {
  const ModelParams p{1.0, 0.3, 0.4};

  const ThermalPoint hot = gibbs_state(p, 1e-9);
  CHECK(hot.pops.p0 == Catch::Approx(0.25).margin(1e-8));
  CHECK(hot.pops.p1 == Catch::Approx(0.25).margin(1e-8));
  CHECK(hot.pops.pplus == Catch::Approx(0.25).margin(1e-8));
  CHECK(hot.pops.pminus == Catch::Approx(0.25).margin(1e-8));

  const ThermalPoint cold = gibbs_state(p, 1e3);
  CHECK(cold.pops.p1 > 1.0 - 1e-10);
  CHECK(cold.state(3, 3).real() > 1.0 - 1e-10);
}

TEST_CASE("gibbs_state: hand-evaluated uncoupled point") {
  // energies (2,1,1,0), beta = ln 2: weights (1/4,1/2,1/2,1), Z = 9/4
  const ThermalPoint tp = gibbs_state({1.0, 0.0, 0.0}, std::log(2.0));
  CHECK(tp.pops.p0 == Catch::Approx(1.0 / 9).margin(1e-14));
  CHECK(tp.pops.pplus == Catch::Approx(2.0 / 9).margin(1e-14));
  CHECK(tp.pops.pminus == Catch::Approx(2.0 / 9).margin(1e-14));
  CHECK(tp.pops.p1 == Catch::Approx(4.0 / 9).margin(1e-14));
  CHECK(tp.partition_function == Catch::Approx(9.0 / 4).margin(1e-13));
}

TEST_CASE("gibbs_state rejects non-positive beta") {
  CHECK_THROWS_AS(gibbs_state({1.0, 0.3, 0.4}, 0.0), std::domain_error);
  CHECK_THROWS_AS(gibbs_state({1.0, 0.3, 0.4}, -1.0), std::domain_error);
}

TEST_CASE("gibbs_state agrees with the spectral-function oracle") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const double omega = 0.3 + 1.7 * u(rng);
    const double coupling = 0.7 * omega * u(rng);
    const double delta = 0.98 * delta_max(omega, coupling) * u(rng);
    const double beta = std::exp(std::log(0.05) + u(rng) * std::log(6.0 / 0.05));
    const ModelParams p{omega, delta, coupling};

    const ThermalPoint tp = gibbs_state(p, beta);
    Mat4 ref = spectral_function(build_total_hamiltonian(p),
                                 [beta](double e) { return std::exp(-beta * e); });
    ref *= 1.0 / ref.trace().real();
    REQUIRE((tp.state - ref).max_abs() < 1e-11);

    REQUIRE(tp.pops.sum() == Catch::Approx(1.0).margin(1e-12));
    // Boltzmann ordering under the level ordering (weak if degenerate)
    REQUIRE(tp.pops.p1 >= tp.pops.pminus);
    REQUIRE(tp.pops.pminus >= tp.pops.pplus);
    REQUIRE(tp.pops.pplus >= tp.pops.p0);
    if (middle_gap(p) > 1e-3) REQUIRE(tp.pops.pminus > tp.pops.pplus);
  }
}

TEST_CASE("population_gap: values and closed form") {
  CHECK(population_gap(Populations{0.25, 0.25, 0.25, 0.25}) == 0.0);

  // Omega = 1, D = 0.5, beta = 1
  const ThermalPoint tp = gibbs_state({1.0, 0.3, 0.4}, 1.0);
  const double closed = std::sinh(0.5) / (std::cosh(1.0) + std::cosh(0.5));
  CHECK(closed == Catch::Approx(0.19511514499178911).margin(1e-15));
  CHECK(population_gap(tp.pops) == Catch::Approx(closed).margin(1e-14));
  CHECK(gibbs_population_gap(1.0, 1.0, 0.5) == Catch::Approx(closed).margin(1e-16));
}

TEST_CASE("population_gap: high-temperature asymptote") {
  const double beta = 1e-3;
  const double d = 0.5;
  CHECK(gibbs_population_gap(beta, 1.0, d) ==
        Catch::Approx(0.5 * beta * d).margin(1e-8));
}

TEST_CASE("population_gap positive, and increasing in beta at high temperature") {
  std::mt19937_64 rng(37);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const double omega = 0.3 + 1.7 * u(rng);
    const double d = omega * (0.05 + 0.9 * u(rng));
    double prev = 0.0;
    // The gap is not monotone over all beta (it decays like
    // exp(-beta(Omega-D)) at low temperature); the growth holds on the
    // high-temperature side, which is what the window analysis uses.
    for (double beta = 0.02; beta <= 0.4; beta += 0.02) {
      const double g = gibbs_population_gap(beta, omega, d);
      REQUIRE(g > 0.0);
      REQUIRE(g > prev);
      prev = g;
    }
  }
}
