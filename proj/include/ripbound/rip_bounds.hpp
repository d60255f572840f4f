#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ripbound::bounds {

// Measurement count n, ambient dimension N, sparsity level s.
struct ProblemDims {
  std::size_t n = 0;
  std::size_t N = 0;
  std::size_t s = 0;

  double p() const { return static_cast<double>(s) / static_cast<double>(n); }
  double sparsity_ratio() const {
    return static_cast<double>(s) / static_cast<double>(N);
  }
  // throws std::domain_error unless 1 <= s < N and n >= 1
  void validate() const;
};

enum class BoundKind { lower_plus, lower_minus, upper_new, upper_classical };
const char* to_string(BoundKind kind);

// One bound evaluation together with its confidence statement. `value` is
// absent when the formula cannot produce a number (negative radicand, or a
// quantile level that does not exist); it is never fabricated. `valid` is
// false whenever a regime condition of the bound is violated, with `reason`
// naming the condition — the value, when present, is still reported.
struct BoundReport {
  BoundKind kind = BoundKind::lower_plus;
  std::optional<double> value;
  double eps = 0.0;
  std::optional<double> delta_internal;  // eps + (n ln(N/s))^{-1/2}, lower bounds only
  double prob_floor = 0.0;
  double const_c = 1.0;
  bool valid = true;
  bool vacuous = false;        // value present but <= 0 (carries no information)
  bool level_warning = false;  // quantile level s/N >= 1/5 (informational)
  std::string reason;
};

// Lower bounds on the one-sided RIP constants of (1/sqrt(n)) A for a
// Gaussian A, at tail quantile level (s-1)/(N-1):
//   delta_s^+ >= sqrt((1 + sqrt(p) T)(1 - d) + p T^2 / 2) - 1
//   delta_s^- >= 1 - sqrt(1 - sqrt(p) T + (1 + sqrt(p) T) d + p T^2 / 2)
// with d = eps + (n ln(N/s))^{-1/2}, holding with probability at least
// 1 - C e^{-n eps^2 / C}. Requires s >= 2; flagged invalid when s/N >= 1/5.
BoundReport lower_bound_delta_plus(const ProblemDims& dims, double eps, double const_c);
BoundReport lower_bound_delta_minus(const ProblemDims& dims, double eps, double const_c);

// Upper bound sqrt(p) T + C / sqrt(n ln(N/s)) + 1/(2n) + eps at level s/N,
// holding with probability at least 1 - 2 e^{-n eps^2 / 2}; flagged invalid
// when p = s/n >= 1/5.
BoundReport upper_bound_delta(const ProblemDims& dims, double eps, double const_c);

// Classical tail bound P(delta_s > delta) <= 2 C(N, s) exp(-c1 delta^2 n + c2 s),
// evaluated in log space and clamped to [0, 1].
double classical_upper_bound_prob(const ProblemDims& dims, double delta,
                                  double c1, double c2);

// Smallest delta whose classical tail probability is <= 1 - confidence.
double classical_threshold(const ProblemDims& dims, double confidence,
                           double c1, double c2);

// Which probability floor an eps should be solved from.
enum class FloorForm {
  upper,  // 1 - 2 e^{-n eps^2 / 2}   (upper-bound statement)
  lower,  // 1 - C e^{-n eps^2 / C}   (lower-bound statement)
};

double eps_for_confidence(std::size_t n, double confidence, FloorForm form,
                          double const_c);

// Recovery-guarantee thresholds on RIP constants, keyed by algorithm id.
struct AlgorithmRequirement {
  std::string id;
  unsigned order_multiplier;     // the constraint applies to delta_{multiplier * s}
  bool strict;                   // delta < threshold (vs <=)
  bool threshold_depends_on_s;   // the small-order OMP rule 1/(1 + sqrt(s))
  double fixed_threshold;        // meaningful when !threshold_depends_on_s

  double threshold(std::size_t s) const;
};

AlgorithmRequirement algorithm_requirement(std::string_view name);
const std::vector<std::string>& algorithm_ids();

// Smallest n whose upper bound (at confidence-derived eps) is <= delta_target
// and valid. The objective is verified monotone non-increasing over the scan
// range before the binary search answers. Throws scan_not_found_error when no
// n <= n_max qualifies.
std::size_t min_measurements_sufficient(std::size_t N, std::size_t s,
                                        double delta_target, double confidence,
                                        double const_c,
                                        std::size_t n_max = 10'000'000);

// Smallest n at which max(lower_plus, lower_minus) drops to <= delta_target:
// below it the RIP constant exceeds delta_target with probability at least
// `confidence`.
std::size_t min_measurements_necessary(std::size_t N, std::size_t s,
                                       double delta_target, double confidence,
                                       double const_c,
                                       std::size_t n_max = 10'000'000);

// One point of the bounds-vs-compression-rate curve.
struct CurveRow {
  double compression_rate = 0.0;  // N / n
  double sparsity_level = 0.0;    // s / N
  std::size_t n = 0, N = 0, s = 0;
  bool dims_valid = true;  // false when n < s; bounds are absent then
  BoundReport lower_plus;
  BoundReport lower_minus;
  BoundReport upper_new;
  std::optional<double> upper_classical;

  // max over the lower reports that carry a value and are valid
  std::optional<double> lower() const;
};

// Evaluates all bounds over a list of compression rates at one sparsity
// level. Rows follow the input rate order; n = round(N / rate),
// s = round(sparsity_ratio * N).
std::vector<CurveRow> curve(std::size_t N, double sparsity_ratio,
                            std::span<const double> rates, double confidence,
                            double const_c, double c1 = 1.0, double c2 = 1.0);

} // namespace ripbound::bounds
