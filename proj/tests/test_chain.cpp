#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>
#include <numbers>

#include "fidsim/chain.hpp"

using namespace fidsim;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("make_chain validates and stores its fields") {
  const ChainSpec simple = make_chain(2, 1.0);
  CHECK(simple.n_spins() == 2);
  CHECK(simple.coupling() == 1.0);

  const ChainSpec fluorapatite = make_chain(9, 15.5e3);
  CHECK(fluorapatite.n_spins() == 9);
  CHECK(fluorapatite.coupling() == 15.5e3);

  CHECK_THROWS_AS(make_chain(0, 1.0), ValidationError);
  CHECK_THROWS_AS(make_chain(-3, 1.0), ValidationError);
  CHECK_THROWS_AS(make_chain(2, 0.0), ValidationError);
  CHECK_THROWS_AS(make_chain(2, -1.0), ValidationError);
  CHECK_THROWS_AS(make_chain(2, std::nan("")), ValidationError);

  try {
    make_chain(0, 1.0);
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    CHECK(e.field() == "n_spins");
  }
  try {
    make_chain(2, -1.0);
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    CHECK(e.field() == "coupling");
  }
}

TEST_CASE("beta_from_physical matches the defining ratio") {
  // hbar*omega = k_B*T  =>  beta = 1
  const double t = 300.0;
  const double omega = constants::k_boltzmann * t / constants::hbar;
  CHECK_THAT(beta_from_physical(omega, t).beta(), WithinAbs(1.0, 1e-14));

  const double w0 = 2.0 * std::numbers::pi * 376.6e6;
  CHECK_THAT(beta_from_physical(w0, 300.0).beta(),
             WithinRel(6.024649801074310e-05, 1e-13));
  CHECK_THAT(beta_from_physical(w0, 0.01).beta(),
             WithinRel(1.807394940322293, 1e-13));

  CHECK_THROWS_AS(beta_from_physical(0.0, 300.0), ValidationError);
  CHECK_THROWS_AS(beta_from_physical(w0, 0.0), ValidationError);
  CHECK_THROWS_AS(beta_from_physical(-w0, 300.0), ValidationError);
}

TEST_CASE("beta_from_physical is monotone in frequency and temperature") {
  double prev = 0.0;
  for (double w = 1e6; w <= 1e10; w *= 10.0) {
    const double b = beta_from_physical(w, 4.2).beta();
    CHECK(b > prev);
    prev = b;
  }
  prev = std::numeric_limits<double>::infinity();
  for (double t = 0.01; t <= 1e3; t *= 10.0) {
    const double b = beta_from_physical(2.0e9, t).beta();
    CHECK(b < prev);
    prev = b;
  }
}

TEST_CASE("TimeGrid generates exactly start + i*step") {
  const TimeGrid grid(1e-6, 2.5e-7, 9);
  const std::vector<double> times = grid.times();
  REQUIRE(times.size() == 9);
  for (int i = 0; i < 9; ++i) {
    CHECK(times[static_cast<std::size_t>(i)] == 1e-6 + i * 2.5e-7);
    CHECK(grid.time(i) == times[static_cast<std::size_t>(i)]);
  }

  CHECK_THROWS_AS(TimeGrid(0.0, 0.0, 4), ValidationError);
  CHECK_THROWS_AS(TimeGrid(0.0, -1e-6, 4), ValidationError);
  CHECK_THROWS_AS(TimeGrid(0.0, 1e-6, 0), ValidationError);
}

TEST_CASE("grid_from_span spans [0, t_max]") {
  const TimeGrid grid = grid_from_span(1e-3, 5);
  CHECK(grid.start() == 0.0);
  CHECK(grid.count() == 5);
  CHECK_THAT(grid.time(4), WithinRel(1e-3, 1e-15));

  CHECK_THROWS_AS(grid_from_span(0.0, 5), ValidationError);
  CHECK_THROWS_AS(grid_from_span(1e-3, 1), ValidationError);
}

TEST_CASE("normalized divides a raw series by its zero-time amplitude") {
  FidSeries raw;
  raw.times = {0.0, 1.0};
  raw.values = {2.0, 0.5};
  raw.normalization = Normalization::raw;
  raw.amplitude_at_zero = 2.0;

  const FidSeries unit = normalized(raw);
  CHECK(unit.normalization == Normalization::unit_at_zero);
  CHECK(unit.values[0] == 1.0);
  CHECK(unit.values[1] == 0.25);

  const FidSeries again = normalized(unit);
  CHECK(again.values == unit.values);

  FidSeries degenerate = raw;
  degenerate.amplitude_at_zero = 0.0;
  CHECK_THROWS_AS(normalized(degenerate), ValidationError);
}

TEST_CASE("ThermalSpec rejects non-positive beta") {
  CHECK(ThermalSpec(2.0).beta() == 2.0);
  CHECK_THROWS_AS(ThermalSpec(0.0), ValidationError);
  CHECK_THROWS_AS(ThermalSpec(-1.0), ValidationError);
}
