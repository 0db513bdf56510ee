#include "fidsim/free_fermion.hpp"

#include <cmath>
#include <numbers>

namespace fidsim {

namespace {

// Fixed-order Kahan sum of cos(2 eps_k t) over modes.
double cosine_mode_sum(const std::vector<double>& energies, double t) {
  double sum = 0.0, comp = 0.0;
  for (const double eps : energies) {
    const double term = std::cos(2.0 * eps * t);
    const double y = term - comp;
    const double s = sum + y;
    comp = (s - sum) - y;
    sum = s;
  }
  return sum;
}

}  // namespace

ModeSet mode_set(const ChainSpec& chain) {
  const int n = chain.n_spins();
  const double d = chain.coupling();
  ModeSet modes;
  modes.momenta.resize(static_cast<std::size_t>(n));
  modes.energies.resize(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) {
    const double k = std::numbers::pi * i / (n + 1.0);
    modes.momenta[static_cast<std::size_t>(i - 1)] = k;
    modes.energies[static_cast<std::size_t>(i - 1)] = d * std::cos(k);
  }
  return modes;
}

BogoliubovWeights bogoliubov_weights(const ChainSpec& chain, double t) {
  if (!std::isfinite(t)) throw ValidationError("t", "must be finite");
  const ModeSet modes = mode_set(chain);
  BogoliubovWeights out;
  const std::size_t n = modes.momenta.size();
  out.u.resize(n);
  out.v.resize(n);
  out.w.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double phase = chain.coupling() * t * std::sin(modes.momenta[i]);
    out.u[i] = std::sin(phase);
    out.v[i] = std::cos(phase);
    out.w[i] = out.u[i] * out.u[i] - out.v[i] * out.v[i];
  }
  return out;
}

FidSeries fid_free_fermion_raw(const ChainSpec& chain, const TimeGrid& grid) {
  const ModeSet modes = mode_set(chain);
  FidSeries out;
  out.times = grid.times();
  out.values.resize(out.times.size());
  for (std::size_t i = 0; i < out.times.size(); ++i)
    out.values[i] = 0.5 * cosine_mode_sum(modes.energies, out.times[i]);
  out.normalization = Normalization::raw;
  out.amplitude_at_zero = 0.5 * chain.n_spins();
  return out;
}

FidSeries fid_free_fermion(const ChainSpec& chain, const TimeGrid& grid) {
  return normalized(fid_free_fermion_raw(chain, grid));
}

double second_moment_mode_sum(const ChainSpec& chain) {
  const ModeSet modes = mode_set(chain);
  double sum = 0.0, comp = 0.0;
  for (const double eps : modes.energies) {
    const double y = eps * eps - comp;
    const double s = sum + y;
    comp = (s - sum) - y;
    sum = s;
  }
  return 4.0 * sum / chain.n_spins();
}

}  // namespace fidsim
