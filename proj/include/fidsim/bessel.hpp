#ifndef FIDSIM_BESSEL_HPP
#define FIDSIM_BESSEL_HPP

#include <vector>

#include "fidsim/errors.hpp"

namespace fidsim {

// Controls series truncation for the Bessel evaluator and for the
// alternating even-order sums built on top of it.
struct BesselEvalPolicy {
  double abs_tolerance = 1e-12;
  int max_terms = 512;
};

// Bessel function of the first kind, integer order n >= 0, real x.
//
// Absolute error <= policy.abs_tolerance. Three regimes:
//   |x| <= 16           ascending power series (long double accumulation);
//   |x| >  16, n <= 1   phase-amplitude asymptotic expansion;
//   |x| >  16, n >= 2   downward (Miller) recurrence normalized by
//                       J_0 + 2*sum_k J_{2k} = 1.
// Negative x is folded back by J_n(-x) = (-1)^n J_n(x).
double bessel_j(int order, double x, const BesselEvalPolicy& policy = {});

// J_0(x) .. J_max_order(x) in one pass (one Miller sweep for |x| > 16).
std::vector<double> bessel_j_sequence(int max_order, double x,
                                      const BesselEvalPolicy& policy = {});

// |J_0(z) + 2*sum_{l=1}^{l_max} (-1)^l J_{2l}(z) - cos z|.
// The sum telescopes to cos z exactly as l_max -> inf, so this doubles as a
// self-test of the evaluator; with l_max = ceil(z/2) + 20 the residual stays
// below 1e-10 for z in [0, 40].
double bessel_cos_identity_residual(double z, int l_max,
                                    const BesselEvalPolicy& policy = {});

// Truncation rule for alternating even-order sums: orders beyond the
// argument contribute negligibly.
int even_series_l_max(double z);

}  // namespace fidsim

#endif
