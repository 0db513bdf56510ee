#ifndef FIDSIM_FIT_HPP
#define FIDSIM_FIT_HPP

#include <iosfwd>
#include <vector>

#include "fidsim/bessel.hpp"

// Ingestion and fitting of multi-pulse experimental intensity data:
// intensity vs number of sequence repetitions at several pulse spacings,
// fitted jointly by I(t) = A J_0(2Dt).

namespace fidsim {

struct ExperimentRecord {
  double tau;       // pulse spacing, s
  int cycles;       // repetitions of the pulse cycle, >= 1
  double intensity; // arbitrary units
};

// Shape of one pulse cycle. The cycle duration is
// cycle_duration_in_tau * tau of each record. 12 tau is the conventional
// duration of an eight-pulse cycle (six tau and three 2*tau delays); it is
// a configuration input, not a measured fact, so it is overridable and is
// echoed in every fit output.
struct PulseCycleSpec {
  int pulses_per_cycle = 8;
  double cycle_duration_in_tau = 12.0;
};

PulseCycleSpec make_cycle_spec(int pulses_per_cycle, double cycle_duration_in_tau);

// CSV with header `tau_us,cycles,intensity`, `#` comments, `.` decimals.
// tau is converted from microseconds to seconds here and nowhere else.
std::vector<ExperimentRecord> ingest_records(std::istream& in);

struct TimedPoint {
  double t;          // s
  double intensity;  // arbitrary units
};

// t = cycles * cycle_duration_in_tau * tau, stably ordered by t.
std::vector<TimedPoint> map_time(const std::vector<ExperimentRecord>& records,
                                 const PulseCycleSpec& cycle);

struct FitResult {
  double d_estimate;    // rad/s
  double amplitude;     // arbitrary units
  double rms_residual;  // arbitrary units
  int n_points;
  double d_search_lo;   // rad/s
  double d_search_hi;   // rad/s
};

// Separable least squares for I(t) = A J_0(2Dt): the amplitude is closed
// form per candidate D, A = sum I_i J_0(2Dt_i) / sum J_0(2Dt_i)^2, and D is
// found by golden-section search refined to relative width 1e-6.
// Deterministic for fixed inputs. A minimum landing within one final
// bracket width of an endpoint is rejected as unbracketed.
FitResult fit_fid(const std::vector<TimedPoint>& points, double d_min, double d_max,
                  const BesselEvalPolicy& policy = {});

}  // namespace fidsim

#endif
