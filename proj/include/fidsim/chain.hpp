#ifndef FIDSIM_CHAIN_HPP
#define FIDSIM_CHAIN_HPP

#include <vector>

#include "fidsim/errors.hpp"

// Shared domain types for the spin-chain FID engines.
//
// Unit conventions, enforced here and assumed everywhere else:
//   - the nearest-neighbour coupling D is an angular frequency in rad/s,
//     so D*t is a phase;
//   - all times are SI seconds (microseconds exist only at the CLI and
//     CSV ingestion boundary).

namespace fidsim {

namespace constants {
// CODATA 2018 (exact by definition since the 2019 SI redefinition).
inline constexpr double hbar = 1.054571817e-34;         // J s
inline constexpr double k_boltzmann = 1.380649e-23;     // J/K
}  // namespace constants

// An open chain of N spin-1/2 nuclei with nearest-neighbour coupling D.
class ChainSpec {
 public:
  ChainSpec(int n_spins, double coupling);

  int n_spins() const noexcept { return n_spins_; }
  double coupling() const noexcept { return coupling_; }

 private:
  int n_spins_;
  double coupling_;  // rad/s
};

ChainSpec make_chain(int n_spins, double coupling);

// Uniform sampling grid: times are start + i*step, i = 0..count-1.
class TimeGrid {
 public:
  TimeGrid(double start, double step, int count);

  double start() const noexcept { return start_; }
  double step() const noexcept { return step_; }
  int count() const noexcept { return count_; }
  double time(int i) const noexcept { return start_ + i * step_; }
  std::vector<double> times() const;

 private:
  double start_;
  double step_;
  int count_;
};

// CLI convention: start at 0, `points` samples up to and including t_max.
TimeGrid grid_from_span(double t_max, int points);

enum class Normalization { raw, unit_at_zero };

// A sampled FID. `amplitude_at_zero` holds G(0) before any normalization,
// so raw and normalized series carry the same information.
struct FidSeries {
  std::vector<double> times;   // s, strictly ascending
  std::vector<double> values;  // dimensionless
  Normalization normalization = Normalization::raw;
  double amplitude_at_zero = 0.0;
};

// Divide a raw series by its amplitude at t = 0. No-op on an already
// normalized series.
FidSeries normalized(FidSeries series);

// Inverse-temperature parameter beta = hbar*omega_0/(k_B*T).
class ThermalSpec {
 public:
  explicit ThermalSpec(double beta);

  double beta() const noexcept { return beta_; }

 private:
  double beta_;
};

ThermalSpec beta_from_physical(double larmor_frequency, double temperature);

}  // namespace fidsim

#endif
