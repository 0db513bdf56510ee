#include "fidsim/bessel.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace fidsim {

namespace {

constexpr long double kPi = std::numbers::pi_v<long double>;
constexpr int kMaxOrder = 10000;
constexpr double kSeriesAsymptoticSplit = 16.0;

void check_policy(const BesselEvalPolicy& policy) {
  if (!(policy.abs_tolerance > 0.0))
    throw ValidationError("abs_tolerance", "must be > 0");
  if (policy.max_terms < 16)
    throw ValidationError("max_terms", "must be >= 16");
}

void check_order(int order) {
  if (order < 0)
    throw ValidationError("order", "must be >= 0, got " + std::to_string(order));
  if (order > kMaxOrder)
    throw ValidationError("order", "beyond max supported " + std::to_string(kMaxOrder));
}

void check_argument(double x) {
  if (std::isnan(x) || std::isinf(x))
    throw ValidationError("x", "must be finite");
}

// Ascending power series, |x| <= 16. Long double arithmetic with
// compensated summation keeps the absolute error below ~1e-13 at the
// right edge (worst case eps_ld * I_n(16)).
double series_j(int n, double x, const BesselEvalPolicy& policy) {
  const long double xl = x;
  const long double q = xl * xl / 4.0L;

  long double prefactor;  // (x/2)^n / n!
  if (n <= 64) {
    prefactor = 1.0L;
    for (int i = 1; i <= n; ++i) prefactor *= (xl / 2.0L) / i;
  } else {
    const long double lp = n * logl(xl / 2.0L) - lgammal(n + 1.0L);
    if (lp < -11300.0L) return 0.0;  // below long double underflow, and << tolerance
    prefactor = expl(lp);
  }

  long double sum = 0.0L, comp = 0.0L;
  long double term = prefactor;
  int m = 0;
  for (; m < policy.max_terms; ++m) {
    const long double y = term - comp;
    const long double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
    const long double next = -term * q / ((m + 1.0L) * (m + 1.0L + n));
    if (fabsl(next) <= 1e-20L * (1.0L + fabsl(sum))) return static_cast<double>(sum);
    term = next;
  }
  if (fabsl(term) > policy.abs_tolerance)
    throw ComputeGuardError("bessel_j series did not converge within max_terms = " +
                            std::to_string(policy.max_terms));
  return static_cast<double>(sum);
}

// Phase-amplitude asymptotic expansion for n in {0, 1}, x > 16:
//   J_n(x) ~ sqrt(2/(pi x)) [P cos(chi) - Q sin(chi)],  chi = x - (2n+1) pi/4.
// Truncated at the smallest term; at x = 16 the floor is ~2e-15 absolute.
double asymptotic_j(int n, double x) {
  const long double xl = x;
  const long double mu = 4.0L * n * n;

  long double p_sum = 1.0L, q_sum = 0.0L;
  long double c = 1.0L;
  long double prev = 1.0L;
  for (int k = 1; k <= 48; ++k) {
    const long double f = 2.0L * k - 1.0L;
    c *= (mu - f * f) / (8.0L * k * xl);
    if (k > 4 && fabsl(c) >= prev) break;  // past the smallest term
    prev = fabsl(c);
    if (k % 2 == 1) {
      q_sum += (((k - 1) / 2) % 2 ? -c : c);
    } else {
      p_sum += ((k / 2) % 2 ? -c : c);
    }
    if (fabsl(c) < 1e-20L) break;
  }
  const long double chi = xl - (2 * n + 1) * (kPi / 4.0L);
  const long double value =
      sqrtl(2.0L / (kPi * xl)) * (p_sum * cosl(chi) - q_sum * sinl(chi));
  return static_cast<double>(value);
}

// Downward recurrence from a seed above both max_order and x, normalized
// by J_0 + 2 sum_{k>=1} J_{2k} = 1. Returns orders 0..max_order. Valid for
// x > 16 (below that the growth toward order 0 can overflow even with
// rescaling for very small x; the series covers that range).
std::vector<double> miller_sequence(int max_order, double x) {
  const long double xl = x;
  const int m0 = std::max(max_order, static_cast<int>(std::ceil(x)));
  const int delta =
      static_cast<int>(std::ceil(std::pow(46.0 * std::sqrt(static_cast<double>(m0)), 2.0 / 3.0))) + 16;
  const long start = static_cast<long>(m0) + delta;

  std::vector<long double> raw(static_cast<std::size_t>(max_order) + 1, 0.0L);
  long double jp = 0.0L;      // J_{m+1}
  long double jc = 1e-30L;    // J_m (arbitrary seed, washed out by normalization)
  long double even_sum = (start % 2 == 0) ? 2.0L * jc : 0.0L;

  for (long m = start; m >= 1; --m) {
    const long double jm = (2.0L * m / xl) * jc - jp;  // J_{m-1}
    jp = jc;
    jc = jm;
    const long order = m - 1;
    if (order <= max_order) raw[static_cast<std::size_t>(order)] = jc;
    if (order >= 2 && order % 2 == 0) even_sum += 2.0L * jc;
    if (fabsl(jc) > 1e4200L) {
      const long double s = 1e-4200L;
      jc *= s;
      jp *= s;
      even_sum *= s;
      for (auto& v : raw) v *= s;
    }
  }

  const long double norm = raw[0] + even_sum;
  std::vector<double> out(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i)
    out[i] = static_cast<double>(raw[i] / norm);
  return out;
}

}  // namespace

double bessel_j(int order, double x, const BesselEvalPolicy& policy) {
  check_policy(policy);
  check_order(order);
  check_argument(x);

  if (x < 0.0) {
    const double v = bessel_j(order, -x, policy);
    return (order % 2 == 0) ? v : -v;
  }
  if (x == 0.0) return order == 0 ? 1.0 : 0.0;
  if (x <= kSeriesAsymptoticSplit) return series_j(order, x, policy);
  if (order <= 1) return asymptotic_j(order, x);
  return miller_sequence(order, x)[static_cast<std::size_t>(order)];
}

std::vector<double> bessel_j_sequence(int max_order, double x,
                                      const BesselEvalPolicy& policy) {
  check_policy(policy);
  check_order(max_order);
  check_argument(x);

  const double ax = std::abs(x);
  std::vector<double> out;
  if (ax == 0.0) {
    out.assign(static_cast<std::size_t>(max_order) + 1, 0.0);
    out[0] = 1.0;
  } else if (ax <= kSeriesAsymptoticSplit) {
    out.resize(static_cast<std::size_t>(max_order) + 1);
    for (int n = 0; n <= max_order; ++n)
      out[static_cast<std::size_t>(n)] = series_j(n, ax, policy);
  } else {
    out = miller_sequence(max_order, ax);
  }
  if (x < 0.0)
    for (int n = 1; n <= max_order; n += 2) out[static_cast<std::size_t>(n)] = -out[static_cast<std::size_t>(n)];
  return out;
}

double bessel_cos_identity_residual(double z, int l_max,
                                    const BesselEvalPolicy& policy) {
  check_argument(z);
  if (z < 0.0) throw ValidationError("z", "must be >= 0");
  if (l_max < 1) throw ValidationError("l_max", "must be >= 1");

  const std::vector<double> j = bessel_j_sequence(2 * l_max, z, policy);
  long double sum = j[0];
  for (int l = 1; l <= l_max; ++l) {
    const long double term = 2.0L * j[2 * static_cast<std::size_t>(l)];
    sum += (l % 2 ? -term : term);
  }
  return static_cast<double>(fabsl(sum - cosl(static_cast<long double>(z))));
}

int even_series_l_max(double z) {
  return static_cast<int>(std::ceil(std::abs(z) / 2.0)) + 20;
}

}  // namespace fidsim
