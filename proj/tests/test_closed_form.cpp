#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "fidsim/closed_form.hpp"
#include "fidsim/free_fermion.hpp"

using namespace fidsim;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {
constexpr double kFirstJ0Zero = 2.404825557695773;
}

TEST_CASE("fid_infinite is the unit-normalized J0 shape") {
  const ChainSpec chain = make_chain(9, 15.5e3);
  const FidSeries fid = fid_infinite(chain, grid_from_span(5e-4, 65));
  CHECK(fid.normalization == Normalization::unit_at_zero);
  CHECK(fid.values.front() == 1.0);
  for (const double v : fid.values) {
    CHECK(v <= 1.0);
    CHECK(v >= -1.0);
  }
}

TEST_CASE("fid_infinite first zero sits at the J0 zero over 2D") {
  const double d = 15.5e3;
  const ChainSpec chain = make_chain(9, d);
  const double t0 = kFirstJ0Zero / (2.0 * d);  // ~77.575 us
  CHECK_THAT(t0, WithinRel(77.575e-6, 1e-4));

  const TimeGrid at_zero(t0, 1.0, 1);
  CHECK_THAT(fid_infinite(chain, at_zero).values[0], WithinAbs(0.0, 1e-12));

  const TimeGrid bracket(t0 - 1e-6, 1e-6, 3);
  const FidSeries fid = fid_infinite(chain, bracket);
  CHECK(fid.values[0] > 0.0);
  CHECK(fid.values[2] < 0.0);
}

TEST_CASE("fid_infinite small-time expansion 1 - (Dt)^2") {
  const double d = 1.0;
  const ChainSpec chain = make_chain(2, d);
  for (const double t : {1e-3, 1e-2, 5e-2}) {
    const TimeGrid grid(t, 1.0, 1);
    const double value = fid_infinite(chain, grid).values[0];
    const double quartic = std::pow(d * t, 4);
    CHECK_THAT(value, WithinAbs(1.0 - (d * t) * (d * t), 2.0 * quartic + 1e-15));
  }
}

TEST_CASE("closed-form variants agree to their common scale") {
  for (const int n : {4, 10, 20}) {
    const ChainSpec chain = make_chain(n, 1.0);
    const TimeGrid grid = grid_from_span(10.0, 101);  // D t up to 10
    const FidSeries series = fid_closed_finite(chain, grid, ClosedFormVariant::bessel_series);
    const FidSeries cosine = fid_closed_finite(chain, grid, ClosedFormVariant::cosine_closed);
    const double scale = n * std::ldexp(1.0, n - 2);
    CHECK(series.amplitude_at_zero == scale);
    CHECK(cosine.amplitude_at_zero == scale);
    CHECK(series.values[0] == scale);  // J0(0)=1, cos 0 = 1
    for (std::size_t i = 0; i < grid.times().size(); ++i) {
      INFO("n=" << n << " i=" << i);
      CHECK_THAT(series.values[i] - cosine.values[i], WithinAbs(0.0, 1e-9 * scale));
    }
  }
}

TEST_CASE("normalized closed form deviates from J0 by at most 1/N") {
  for (const int n : {10, 100, 1000}) {
    const ChainSpec chain = make_chain(n, 1.0);
    const TimeGrid grid = grid_from_span(10.0, 101);
    const FidSeries closed =
        fid_closed_finite_normalized(chain, grid, ClosedFormVariant::cosine_closed);
    const FidSeries j0 = fid_infinite(chain, grid);
    CHECK(closed.values[0] == 1.0);
    for (std::size_t i = 0; i < closed.values.size(); ++i)
      CHECK(std::abs(closed.values[i] - j0.values[i]) <= 1.0 / n + 1e-12);
  }
}

TEST_CASE("raw closed form is guarded above N = 60") {
  const TimeGrid grid = grid_from_span(1.0, 3);
  CHECK_NOTHROW(fid_closed_finite(make_chain(60, 1.0), grid, ClosedFormVariant::cosine_closed));
  CHECK_THROWS_AS(fid_closed_finite(make_chain(61, 1.0), grid, ClosedFormVariant::cosine_closed),
                  ComputeGuardError);
  CHECK_NOTHROW(
      fid_closed_finite_normalized(make_chain(4000, 1.0), grid, ClosedFormVariant::cosine_closed));
}

TEST_CASE("second moment values") {
  CHECK(second_moment(make_chain(8, 1.0)).thermodynamic == 2.0);
  CHECK(second_moment(make_chain(2, 1.0)).finite_n == 1.0);
  CHECK_THAT(second_moment(make_chain(1000000, 1.0)).finite_n, WithinRel(2.0, 1e-5));

  const double d = 15.5e3;
  const SecondMoment m = second_moment(make_chain(9, d));
  CHECK(m.thermodynamic == 2.0 * d * d);
  CHECK_THAT(m.finite_n, WithinRel(2.0 * d * d * (1.0 - 1.0 / 9.0), 1e-15));
}

TEST_CASE("second moment matches the curvature of fid_infinite at t = 0") {
  const double d = 15.5e3;
  const ChainSpec chain = make_chain(9, d);
  const double h = 1e-2 / d;  // (D h)^2 = 1e-4
  const TimeGrid grid(-h, h, 3);
  const std::vector<double> g = fid_infinite(chain, grid).values;
  const double m2 = -(g[0] - 2.0 * g[1] + g[2]) / (h * h);
  CHECK_THAT(m2, WithinRel(second_moment(chain).thermodynamic, 1e-4));
}

TEST_CASE("second moment agrees with the mode sum") {
  for (int n = 2; n <= 50; ++n) {
    const ChainSpec chain = make_chain(n, 2.5);
    CHECK_THAT(second_moment_mode_sum(chain), WithinRel(second_moment(chain).finite_n, 1e-12));
  }
}

TEST_CASE("thermal amplitude follows (N/2) tanh(beta/2)") {
  CHECK_THAT(thermal_amplitude(make_chain(4, 1.0), ThermalSpec(2.0)),
             WithinAbs(1.5231883119115297, 1e-12));  // 2 tanh(1)

  // beta -> 0: N beta / 4
  const double beta_small = 1e-8;
  CHECK_THAT(thermal_amplitude(make_chain(6, 1.0), ThermalSpec(beta_small)),
             WithinRel(6.0 * beta_small / 4.0, 1e-9));

  // beta -> inf: N/2
  CHECK_THAT(thermal_amplitude(make_chain(6, 1.0), ThermalSpec(60.0)), WithinRel(3.0, 1e-12));

  double prev = 0.0;
  for (double beta = 0.1; beta <= 12.0; beta += 0.3) {
    const double a = thermal_amplitude(make_chain(5, 1.0), ThermalSpec(beta));
    CHECK(a > prev);
    CHECK(a <= 2.5);
    prev = a;
  }
}
