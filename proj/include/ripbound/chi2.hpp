#pragma once

namespace ripbound::chi2 {

// An upper-tail quantile of the chi-squared(1) distribution:
// survival(t) = alpha.
struct TailSpec {
  double alpha;  // tail probability in (0, 1]
  double t;      // threshold >= 0; t == 0 iff alpha == 1
};

// Conditional tail mean of chi-squared(1): T_squared = E(X | X > t),
// T = sqrt(T_squared). T_squared > t strictly for t > 0, and
// T_squared >= 1 with equality iff t == 0.
struct ConditionalMoment {
  double t;
  double T_squared;
  double T;
};

// Survival function P(X > x) for X ~ chi^2_1, i.e. erfc(sqrt(x/2)).
// Values below 1e-300 raise std::overflow_error (they would later be
// divided by); negative x raises std::domain_error.
double survival(double x);

// Density of chi^2_1 at x > 0.
double pdf(double x);

// Inverts the survival function: returns t with survival(t) = alpha,
// exact to ~1e-13 relative in alpha. Bracketing bisection down to 1e-6
// followed by Newton refinement.
TailSpec quantile(double alpha);

// E(X | X > t) via the closed form 1 + sqrt(2t/pi) e^{-t/2} / survival(t)
// (integration by parts of the tail integrals).
ConditionalMoment conditional_tail_expectation(double t);

// Composition quantile(alpha) -> conditional_tail_expectation.
ConditionalMoment big_T(double alpha);

// Asymptotic estimates for the quantile and the conditional tail root as
// the tail ratio s/N -> 0: t ~ 2 ln(N/s), T ~ sqrt(2 ln(N/s)).
double asymptotic_t(double N, double s);
double asymptotic_T(double N, double s);

} // namespace ripbound::chi2
