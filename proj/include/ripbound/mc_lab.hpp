#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "ripbound/rip_bounds.hpp"

namespace ripbound::mc {

enum class Ensemble { gaussian, rademacher };
const char* to_string(Ensemble e);
Ensemble ensemble_from_string(std::string_view name);

// Dense n x N matrix with i.i.d. unit-variance entries, regenerable bit for
// bit from (ensemble, seed, rows, cols).
struct DenseMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> entries;  // row-major
  Ensemble ensemble = Ensemble::gaussian;
  std::uint64_t seed = 0;

  double operator()(std::size_t i, std::size_t j) const {
    return entries[i * cols + j];
  }
  double& operator()(std::size_t i, std::size_t j) { return entries[i * cols + j]; }

  double column_dot(std::size_t a, std::size_t b) const;
  double column_norm(std::size_t a) const;
};

DenseMatrix sample_matrix(std::size_t n, std::size_t N, Ensemble ensemble,
                          std::uint64_t seed);

// Unit-norm s-sparse witness pair: both vectors put 1/sqrt(2) on the first
// coordinate; the remaining mass sits on the s-1 columns most correlated
// with the first one, aligned (v_plus) or anti-aligned (v_minus) with those
// correlations. The quadratic forms of Phi = A/sqrt(n) at these vectors
// certify lower bounds on the one-sided RIP constants of Phi.
struct AdversarialCertificate {
  std::vector<double> v_plus;
  std::vector<double> v_minus;
  double delta_plus_emp = 0.0;   // ||Phi v_plus||^2 - 1
  double delta_minus_emp = 0.0;  // 1 - ||Phi v_minus||^2
  bool degenerate = false;       // all correlations were exactly zero
};

AdversarialCertificate adversarial_pair(const DenseMatrix& A, std::size_t s);

// Construction core, exposed for direct testing: picks the m entries of x
// with largest magnitude (ties toward lower index) and returns coefficients
// proportional to those entries with total squared mass 1/2, maximizing the
// inner product with x among all such supports.
struct HalfVector {
  std::vector<std::size_t> support;  // indices into x
  std::vector<double> coeffs;        // same order as support
  double dot_x = 0.0;                // sum coeffs[i] * x[support[i]]
  bool degenerate = false;
};
HalfVector build_half_vector(std::span<const double> x, std::size_t m);

// Exhaustive RIP constants of Phi = A/sqrt(n) over all C(N, s) supports:
// delta_plus = max lambda_max(Gram) - 1, delta_minus = 1 - min lambda_min.
struct ExactRip {
  double delta_plus = 0.0;
  double delta_minus = 0.0;
  double delta_s = 0.0;
  std::uint64_t supports_checked = 0;
};

// Throws cap_exceeded_error (carrying C(N, s)) when the enumeration would
// exceed `cap`. Support chunks run in parallel; the extremes are
// order-independent, so results are identical across thread counts.
ExactRip exact_rip(const DenseMatrix& A, std::size_t s, std::uint64_t cap = 1'000'000);

std::uint64_t binomial_count(std::size_t n, std::size_t k);  // saturates at 2^63

// Per-trial certificates for seeded random matrices, aggregated against the
// closed-form lower-bound reports at the confidence-derived eps.
struct ExperimentSummary {
  bounds::ProblemDims dims;
  Ensemble ensemble = Ensemble::gaussian;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  double confidence = 0.0;
  double const_c = 1.0;
  double eps = 0.0;  // eps used for the lower-bound reports

  bounds::BoundReport lower_plus;
  bounds::BoundReport lower_minus;

  double mean_phi_v_sq = 0.0;        // mean of ||Phi v_plus||^2
  double center = 0.0;               // 1 + sqrt(p) T + p T^2 / 2, p = s/n
  double center_construction = 0.0;  // same with weight (s-1)/n, matching the
                                     // s-1 coordinates the construction uses
  double frac_plus_ge_bound = 0.0;   // fraction of trials with certificate >= bound
  double frac_minus_ge_bound = 0.0;

  std::vector<double> delta_plus_emp;   // per trial
  std::vector<double> delta_minus_emp;  // per trial
};

ExperimentSummary run_experiment(const bounds::ProblemDims& dims, Ensemble ensemble,
                                 std::size_t trials, std::uint64_t seed,
                                 double confidence, double const_c);

// Order-statistic quantile (type 1) of an unsorted sample, q in [0, 1].
double empirical_quantile(std::span<const double> values, double q);

} // namespace ripbound::mc
