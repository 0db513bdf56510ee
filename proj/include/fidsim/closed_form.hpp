#ifndef FIDSIM_CLOSED_FORM_HPP
#define FIDSIM_CLOSED_FORM_HPP

#include "fidsim/bessel.hpp"
#include "fidsim/chain.hpp"

// Analytic FID expressions for the nearest-neighbour two-quantum chain.
//
// The raw finite-N forms below build in the continuum-limit replacement of
// the mode sum by an integral, so they are large-N approximations: they are
// NOT expected to match the exact engines at small N (the free-fermion
// module is the exact finite-N reference). Their value is the closed shape
// and the provable 1/N distance to the N -> infinity limit J_0(2Dt).

namespace fidsim {

enum class ClosedFormVariant {
  bessel_series,  // N 2^{N-2} J_0(2Dt) - 2^{N-2} sum_{l>=1} (-1)^l J_{2l}(2Dt)
  cosine_closed,  // (2N+1) 2^{N-3} J_0(2Dt) - 2^{N-3} cos(2Dt)
};

// Thermodynamic-limit FID: G(t)/G(0) = J_0(2Dt). Unit normalized.
FidSeries fid_infinite(const ChainSpec& chain, const TimeGrid& grid,
                       const BesselEvalPolicy& policy = {});

// Raw (unnormalized) finite-N closed forms. The two variants agree
// identically (the alternating even-order sum telescopes to the cosine);
// both have G(0) = N 2^{N-2}. Guarded at N <= 60 where the 2^N prefactor
// is exactly representable; use the normalized form beyond that.
FidSeries fid_closed_finite(const ChainSpec& chain, const TimeGrid& grid,
                            ClosedFormVariant variant,
                            const BesselEvalPolicy& policy = {});

// Same shapes divided by G(0); prefactor-free, so any N >= 1 is accepted.
// Deviates from J_0(2Dt) by (J_0 - cos)/(2N), bounded by 1/N.
FidSeries fid_closed_finite_normalized(const ChainSpec& chain, const TimeGrid& grid,
                                       ClosedFormVariant variant,
                                       const BesselEvalPolicy& policy = {});

struct SecondMoment {
  double thermodynamic;  // 2 D^2
  double finite_n;       // 2 D^2 (1 - 1/N); derived, oracle-checked
};

// Second moment of the line shape, -d^2/dt^2 of the normalized FID at t=0.
SecondMoment second_moment(const ChainSpec& chain);

// G(0) of the low-temperature FID: (N/2) tanh(beta/2).
double thermal_amplitude(const ChainSpec& chain, const ThermalSpec& thermal);

}  // namespace fidsim

#endif
