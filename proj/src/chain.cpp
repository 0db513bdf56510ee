#include "fidsim/chain.hpp"

#include <cmath>
#include <string>

namespace fidsim {

ChainSpec::ChainSpec(int n_spins, double coupling)
    : n_spins_(n_spins), coupling_(coupling) {
  if (n_spins < 1)
    throw ValidationError("n_spins", "must be >= 1, got " + std::to_string(n_spins));
  if (!std::isfinite(coupling) || coupling <= 0.0)
    throw ValidationError("coupling", "must be a positive finite rad/s value");
}

ChainSpec make_chain(int n_spins, double coupling) {
  return ChainSpec(n_spins, coupling);
}

TimeGrid::TimeGrid(double start, double step, int count)
    : start_(start), step_(step), count_(count) {
  if (!std::isfinite(start))
    throw ValidationError("start", "must be finite");
  if (!std::isfinite(step) || step <= 0.0)
    throw ValidationError("step", "must be positive and finite");
  if (count < 1)
    throw ValidationError("count", "must be >= 1, got " + std::to_string(count));
}

std::vector<double> TimeGrid::times() const {
  std::vector<double> out(static_cast<std::size_t>(count_));
  for (int i = 0; i < count_; ++i) out[static_cast<std::size_t>(i)] = time(i);
  return out;
}

TimeGrid grid_from_span(double t_max, int points) {
  if (!std::isfinite(t_max) || t_max <= 0.0)
    throw ValidationError("t_max", "must be positive and finite");
  if (points < 2)
    throw ValidationError("points", "must be >= 2, got " + std::to_string(points));
  return TimeGrid(0.0, t_max / (points - 1), points);
}

FidSeries normalized(FidSeries series) {
  if (series.normalization == Normalization::unit_at_zero) return series;
  const double g0 = series.amplitude_at_zero;
  if (g0 == 0.0 || !std::isfinite(g0))
    throw ValidationError("amplitude_at_zero", "cannot normalize a series with G(0) = 0");
  for (double& v : series.values) v /= g0;
  series.normalization = Normalization::unit_at_zero;
  return series;
}

ThermalSpec::ThermalSpec(double beta) : beta_(beta) {
  if (!std::isfinite(beta) || beta <= 0.0)
    throw ValidationError("beta", "must be positive and finite");
}

ThermalSpec beta_from_physical(double larmor_frequency, double temperature) {
  if (!std::isfinite(larmor_frequency) || larmor_frequency <= 0.0)
    throw ValidationError("larmor_frequency", "must be positive and finite");
  if (!std::isfinite(temperature) || temperature <= 0.0)
    throw ValidationError("temperature", "must be positive and finite");
  return ThermalSpec(constants::hbar * larmor_frequency /
                     (constants::k_boltzmann * temperature));
}

}  // namespace fidsim
