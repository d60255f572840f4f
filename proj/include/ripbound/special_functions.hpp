#pragma once

#include <cstdint>

namespace ripbound::sf {

// Complementary error function erfc(x) = 1 - erf(x).
//
// Rational Chebyshev approximation after W. J. Cody, "Rational Chebyshev
// approximation for the error function", Math. Comp. 23 (1969), 631-637
// (the CALERF scheme). Relative accuracy is better than 1e-15 over the
// full double range; erfc underflows to 0 near x = 26.5.
double erfc(double x);

// Error function, same approximation family.
double erf(double x);

// Inverse of the standard normal CDF.
//
// M. J. Wichura, "Algorithm AS 241: The percentage points of the normal
// distribution", Appl. Statist. 37 (1988), 477-484 (PPND16 variant,
// accurate to about 1 part in 1e16).
// pre: 0 < p < 1
double norm_quantile(double p);

// log of the binomial coefficient C(n, k), evaluated with std::lgamma.
double log_binomial(std::uint64_t n, std::uint64_t k);

} // namespace ripbound::sf
