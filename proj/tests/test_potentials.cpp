#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "infswitch/errors.hpp"
#include "infswitch/potentials.hpp"
#include "infswitch/rng.hpp"
#include "support/test_models.hpp"

using namespace infswitch;

TEST_CASE("double well energies at hand-checked points") {
  const DoubleWellD model(1);
  CHECK(model.energy(std::vector<double>{1.0}) == doctest::Approx(-0.25).epsilon(1e-14));
  CHECK(model.energy(std::vector<double>{0.0}) == doctest::Approx(1.0).epsilon(1e-14));
  // force at the origin comes from the tilt alone
  CHECK(model.force_vector(std::vector<double>{0.0})[0] ==
        doctest::Approx(0.25).epsilon(1e-14));
}

TEST_CASE("double well harmonic modes") {
  const DoubleWellD model(3, {2.0, 0.5});
  const std::vector<double> x{0.0, 1.0, 2.0};
  // V = 1 + 0.5*2*1 + 0.5*0.5*4
  CHECK(model.energy(x) == doctest::Approx(3.0).epsilon(1e-14));
  const std::vector<double> f = model.force_vector(x);
  CHECK(f[1] == doctest::Approx(-2.0));
  CHECK(f[2] == doctest::Approx(-1.0));
}

TEST_CASE("double well rejects bad construction") {
  CHECK_THROWS_AS(DoubleWellD(0), ArgumentError);
  CHECK_THROWS_AS(DoubleWellD(2, {-1.0}), ArgumentError);
  CHECK_THROWS_AS(DoubleWellD(1, {1.0, 1.0}), ArgumentError);
  const DoubleWellD model(2);
  CHECK_THROWS_AS(model.energy(std::vector<double>{1.0}), ArgumentError);
}

TEST_CASE("forces match central finite differences on random configurations") {
  Rng rng(2024);
  const DoubleWellD dw1(1);
  const DoubleWellD dw10(10, {1.0, 0.5, 2.0});
  DimerInSolvent::Params params;
  const DimerInSolvent dimer(params);

  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> x1{4.0 * rng.uniform() - 2.0};
    CHECK(testing::force_fd_error(dw1, x1) < 1e-5);

    std::vector<double> x10(10);
    for (auto& c : x10) c = 4.0 * rng.uniform() - 2.0;
    CHECK(testing::force_fd_error(dw10, x10) < 1e-5);

    // jitter the lattice; keeps pairs clear of the core singularity
    std::vector<double> xd = dimer.initial_configuration();
    for (auto& c : xd) c += 0.05 * (rng.uniform() - 0.5);
    CHECK(testing::force_fd_error(dimer, xd) < 1e-5);
  }
}

TEST_CASE("minimum image displacement") {
  const std::vector<double> a{0.0, 0.0}, b{4.3, 0.0};
  const std::vector<double> d = min_image_displacement(a, b, 4.4);
  CHECK(d[0] == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(d[1] == 0.0);

  const std::vector<double> zero = min_image_displacement(a, a, 4.4);
  CHECK(zero[0] == 0.0);
  CHECK(zero[1] == 0.0);

  // boundary tie maps to +l/2
  CHECK(min_image_component(2.2, 4.4) == doctest::Approx(2.2));
  CHECK(min_image_component(-2.2, 4.4) == doctest::Approx(2.2));
  CHECK(min_image_component(6.6, 4.4) == doctest::Approx(2.2));
}

TEST_CASE("minimum image stays in the half-open interval") {
  Rng rng(7);
  for (int trial = 0; trial < 1000; ++trial) {
    const double l = 0.5 + 4.0 * rng.uniform();
    const double d = 40.0 * (rng.uniform() - 0.5);
    const double w = min_image_component(d, l);
    CHECK(w > -l / 2.0);
    CHECK(w <= l / 2.0);
    // congruent to the input modulo l
    CHECK(std::remainder(w - d, l) == doctest::Approx(0.0).epsilon(1e-9));
  }
}

TEST_CASE("WCA pair energy: cutoff continuity and pure repulsion") {
  const double sigma = 1.0, eps = 1.0;
  const double rc = std::pow(2.0, 1.0 / 6.0) * sigma;
  CHECK(DimerInSolvent::wca_energy(rc, sigma, eps) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(DimerInSolvent::wca_energy(rc + 1e-9, sigma, eps) == 0.0);
  CHECK(DimerInSolvent::wca_energy(0.9, sigma, eps) > 0.0);
}

TEST_CASE("bond potential: two zeros and barrier height h") {
  const double rc = std::pow(2.0, 1.0 / 6.0);
  const double h = 1.0, w = 0.5;
  CHECK(DimerInSolvent::bond_energy(rc, rc, h, w) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(DimerInSolvent::bond_energy(rc + 2 * w, rc, h, w) ==
        doctest::Approx(0.0).epsilon(1e-14));
  CHECK(DimerInSolvent::bond_energy(rc + w, rc, h, w) == doctest::Approx(h).epsilon(1e-14));

  // barrier top is a critical point of the bond force
  DimerInSolvent::Params params;
  params.n_particles = 2;
  const DimerInSolvent dimer(params);
  const std::vector<double> x{0.0, 0.0, rc + w, 0.0};
  const std::vector<double> f = dimer.force_vector(x);
  CHECK(std::abs(f[0]) < 1e-12);
  CHECK(std::abs(f[2]) < 1e-12);
}

TEST_CASE("dimer energy is invariant under rigid translations") {
  DimerInSolvent::Params params;
  const DimerInSolvent dimer(params);
  std::vector<double> x = dimer.initial_configuration();
  Rng rng(11);
  for (auto& c : x) c += 0.03 * (rng.uniform() - 0.5);
  const double e0 = dimer.energy(x);
  for (const double shift : {0.37, 4.4, 13.2, -7.81}) {
    std::vector<double> moved = x;
    for (std::size_t c = 0; c < moved.size(); c += 2) moved[c] += shift;
    for (std::size_t c = 1; c < moved.size(); c += 2) moved[c] += 0.5 * shift;
    CHECK(dimer.energy(moved) == doctest::Approx(e0).epsilon(1e-12));
  }
}

TEST_CASE("pairs beyond the WCA cutoff contribute nothing") {
  DimerInSolvent::Params params;
  params.n_particles = 3;
  params.box = 10.0;
  const DimerInSolvent dimer(params);
  const double rc = dimer.wca_cutoff();
  // dimer pair at its bond minimum; particle 2 beyond the cutoff of both
  std::vector<double> x{0.0, 0.0, rc, 0.0, 5.0, 4.0};
  const double bond_only =
      DimerInSolvent::bond_energy(rc, rc, params.barrier_height, params.well_width);
  CHECK(dimer.energy(x) == doctest::Approx(bond_only).epsilon(1e-14));
}

TEST_CASE("overlapping pair raises a singularity error") {
  DimerInSolvent::Params params;
  params.n_particles = 3;
  const DimerInSolvent dimer(params);
  std::vector<double> x{0.0, 0.0, 1.2, 0.0, 1e-10, 1e-10};
  CHECK_THROWS_AS(dimer.energy(x), SingularityError);
}

TEST_CASE("lattice start fills the box with the dimer adjacent") {
  DimerInSolvent::Params params;
  const DimerInSolvent dimer(params);
  const std::vector<double> x = dimer.initial_configuration();
  REQUIRE(x.size() == 32);
  CHECK(dimer.bond_distance(x) == doctest::Approx(4.4 / 4.0));
  for (double c : x) {
    CHECK(c >= 0.0);
    CHECK(c < params.box);
  }
  CHECK(std::isfinite(dimer.energy(x)));
}
