#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ripbound/chi2.hpp"

namespace ripbound::ord {

// Root-mean of the k largest values of a nonnegative sample.
struct TopKSum {
  std::size_t k;
  std::size_t n;
  double t_k;
};

// Two-sided deviation statement for T_k around the theoretical center T:
// |T_k - T| <= radius_bias + radius_tail holds with probability at least
// prob_floor.
struct ConcentrationBound {
  double center;       // T
  double radius_bias;  // const_c / sqrt(k ln(n/k))
  double radius_tail;  // eps
  double prob_floor;   // 1 - 2 exp(-k eps^2 / 2), clamped to [0, 1)
  double const_c;

  double radius() const { return radius_bias + radius_tail; }
};

// T_k = sqrt(mean of the k largest sample values). Ties at the selection
// boundary are broken toward lower original index; all samples must be
// nonnegative and 1 <= k <= samples.size().
TopKSum top_k_rms(std::span<const double> samples, std::size_t k);

struct TheoreticalT {
  chi2::ConditionalMoment moment;
  double alpha;         // k / n
  bool regime_warning;  // k/n >= 1/5: outside the stated concentration regime
};

// Theoretical center for T_k: big_T(k/n). Emits a stderr diagnostic (and
// sets regime_warning) when k/n >= 1/5; the quantile itself stays valid.
TheoreticalT theoretical_T(std::size_t n, std::size_t k);

ConcentrationBound deviation_bound(std::size_t n, std::size_t k, double eps,
                                   double const_c);

// Kullback-Leibler divergence between Bernoulli(a) and Bernoulli(b),
// a, b in (0, 1).
double relative_entropy(double a, double b);

// One-sided bound exp(-n delta^2 (1/alpha + 1/(1-alpha)) ln(e/2)) on the
// deviation of the k-th order statistic's quantile level, alpha = k/n < 1/2,
// 0 < delta < min(alpha, 1-alpha).
double quantile_concentration_bound(std::size_t n, std::size_t k, double delta);

// Uniform empirical-CDF deviation bound min(1, 2 exp(-2 n eps^2)).
double dkw_bound(std::size_t n, double eps);

struct CoverageCell {
  double eps;
  double radius;      // deviation_bound radius at this eps
  double prob_floor;  // clamped theoretical floor
  double coverage;    // empirical fraction of |T_k - T| <= radius
  double dkw;         // dkw_bound(n, eps), for reference
};

struct OrderStatReport {
  std::size_t n = 0, k = 0, trials = 0;
  std::uint64_t seed = 0;
  double const_c = 1.0;
  double empirical_mean = 0.0;
  double empirical_sd = 0.0;  // sample sd; 0 when trials == 1
  double theoretical = 0.0;   // T
  double abs_bias = 0.0;      // |empirical_mean - T|
  bool regime_warning = false;
  std::vector<CoverageCell> cells;
  std::vector<double> t_k;  // per-trial T_k in trial order
};

// Monte Carlo check of the T_k concentration statement: `trials` draws of
// n i.i.d. chi-squared(1) samples, T_k per trial, coverage per eps in
// eps_grid (default {0.2, 0.326, 0.5}). Per-trial sub-streams are derived
// by counter hashing, so the report is bit-identical for a fixed seed
// regardless of thread count. pre: k < n/5, trials >= 1.
OrderStatReport mc_verify_concentration(std::size_t n, std::size_t k,
                                        std::size_t trials, std::uint64_t seed,
                                        double const_c = 1.0,
                                        std::span<const double> eps_grid = {});

} // namespace ripbound::ord
