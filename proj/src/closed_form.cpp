#include "fidsim/closed_form.hpp"

#include <cmath>
#include <string>

namespace fidsim {

namespace {

// sum_{l>=1} (-1)^l J_{2l}(z), truncated by the even-series rule.
double alternating_even_sum(double z, const BesselEvalPolicy& policy) {
  const int l_max = even_series_l_max(z);
  const std::vector<double> j = bessel_j_sequence(2 * l_max, z, policy);
  long double sum = 0.0L;
  for (int l = 1; l <= l_max; ++l) {
    const long double term = j[2 * static_cast<std::size_t>(l)];
    sum += (l % 2 ? -term : term);
  }
  return static_cast<double>(sum);
}

}  // namespace

FidSeries fid_infinite(const ChainSpec& chain, const TimeGrid& grid,
                       const BesselEvalPolicy& policy) {
  FidSeries out;
  out.times = grid.times();
  out.values.resize(out.times.size());
  const double d = chain.coupling();
  for (std::size_t i = 0; i < out.times.size(); ++i)
    out.values[i] = bessel_j(0, 2.0 * d * out.times[i], policy);
  out.normalization = Normalization::unit_at_zero;
  out.amplitude_at_zero = 1.0;
  return out;
}

FidSeries fid_closed_finite(const ChainSpec& chain, const TimeGrid& grid,
                            ClosedFormVariant variant,
                            const BesselEvalPolicy& policy) {
  const int n = chain.n_spins();
  if (n > 60)
    throw ComputeGuardError(
        "raw closed-form prefactor 2^N exceeds exact double range for n_spins > 60; "
        "use the normalized closed form");

  FidSeries out = fid_closed_finite_normalized(chain, grid, variant, policy);
  const double g0 = n * std::ldexp(1.0, n - 2);  // N 2^{N-2}, exact for N <= 60
  for (double& v : out.values) v *= g0;
  out.normalization = Normalization::raw;
  out.amplitude_at_zero = g0;
  return out;
}

FidSeries fid_closed_finite_normalized(const ChainSpec& chain, const TimeGrid& grid,
                                       ClosedFormVariant variant,
                                       const BesselEvalPolicy& policy) {
  const int n = chain.n_spins();
  const double d = chain.coupling();

  FidSeries out;
  out.times = grid.times();
  out.values.resize(out.times.size());
  for (std::size_t i = 0; i < out.times.size(); ++i) {
    const double z = 2.0 * d * out.times[i];
    const double j0 = bessel_j(0, z, policy);
    double value = 0.0;
    switch (variant) {
      case ClosedFormVariant::bessel_series:
        // (N J_0 - sum) / N
        value = j0 - alternating_even_sum(z, policy) / n;
        break;
      case ClosedFormVariant::cosine_closed:
        // ((2N+1) J_0 - cos) / (2N)
        value = ((2.0 * n + 1.0) * j0 - std::cos(z)) / (2.0 * n);
        break;
    }
    out.values[i] = value;
  }
  out.normalization = Normalization::unit_at_zero;
  out.amplitude_at_zero = 1.0;  // raw G(0) = N 2^{N-2} overflows for large N
  return out;
}

SecondMoment second_moment(const ChainSpec& chain) {
  const double d = chain.coupling();
  const double m2 = 2.0 * d * d;
  return SecondMoment{m2, m2 * (1.0 - 1.0 / chain.n_spins())};
}

double thermal_amplitude(const ChainSpec& chain, const ThermalSpec& thermal) {
  return 0.5 * chain.n_spins() * std::tanh(0.5 * thermal.beta());
}

}  // namespace fidsim
