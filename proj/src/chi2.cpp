#include "ripbound/chi2.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "ripbound/special_functions.hpp"

namespace ripbound::chi2 {

namespace {
constexpr double kUnderflowFloor = 1e-300;
constexpr double kPi = 3.1415926535897932384626433832795;
constexpr double kTwoPi = 2.0 * kPi;
} // namespace

double survival(double x) {
  if (x < 0.0) throw std::domain_error("chi2::survival: x must be >= 0");
  const double s = sf::erfc(std::sqrt(0.5 * x));
  if (s < kUnderflowFloor) {
    std::ostringstream msg;
    msg << "chi2::survival: tail probability underflows below 1e-300 at x = " << x;
    throw std::overflow_error(msg.str());
  }
  return s;
}

double pdf(double x) {
  return std::exp(-0.5 * x) / std::sqrt(kTwoPi * x);
}

TailSpec quantile(double alpha) {
  if (!(alpha > 0.0) || alpha > 1.0)
    throw std::domain_error("chi2::quantile: alpha must lie in (0, 1]");
  if (alpha == 1.0) return {1.0, 0.0};

  // Bracket: survival(lo) >= alpha > survival(hi). The probe stops just
  // short of the survival underflow floor (survival(1370) ~ 7e-300), so
  // every alpha above that floor stays invertible.
  constexpr double kProbeMax = 1370.0;
  double lo = 0.0, hi = 1.0;
  while (survival(hi) >= alpha) {
    lo = hi;
    if (hi >= kProbeMax)
      throw std::overflow_error(
          "chi2::quantile: alpha lies below the supported tail range");
    hi = std::min(2.0 * hi, kProbeMax);
  }

  // Bisection down to a 1e-6 bracket.
  while (hi - lo > 1e-6 * std::max(1.0, lo)) {
    const double mid = 0.5 * (lo + hi);
    (survival(mid) >= alpha ? lo : hi) = mid;
  }

  // Newton refinement on g(t) = survival(t) - alpha, g'(t) = -pdf(t). Each
  // iterate tightens the bracket with its own residual sign; steps leaving
  // the bracket fall back to its midpoint, so the loop can only contract.
  // The cap covers quantiles near 0, where Newton from above overshoots and
  // the contraction is bisection for a stretch.
  double t = 0.5 * (lo + hi);
  for (int iter = 0; iter < 200; ++iter) {
    const double resid = survival(t) - alpha;
    if (std::fabs(resid) <= 1e-15 * alpha) break;
    (resid >= 0.0 ? lo : hi) = t;
    double next = t + resid / pdf(t);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (next == t) break;  // bracket collapsed to machine width
    t = next;
  }
  return {alpha, t};
}

ConditionalMoment conditional_tail_expectation(double t) {
  if (t < 0.0)
    throw std::domain_error("chi2::conditional_tail_expectation: t must be >= 0");
  if (t == 0.0) return {0.0, 1.0, 1.0};
  const double s = survival(t);  // raises overflow_error on underflow, reporting t
  const double t_sq = 1.0 + std::sqrt(2.0 * t / kPi) * std::exp(-0.5 * t) / s;
  return {t, t_sq, std::sqrt(t_sq)};
}

ConditionalMoment big_T(double alpha) {
  return conditional_tail_expectation(quantile(alpha).t);
}

double asymptotic_t(double N, double s) {
  if (!(s > 0.0) || !(N > s))
    throw std::domain_error("chi2::asymptotic_t: need 0 < s < N");
  return 2.0 * std::log(N / s);
}

double asymptotic_T(double N, double s) { return std::sqrt(asymptotic_t(N, s)); }

} // namespace ripbound::chi2
