#include "ripbound/rip_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "ripbound/chi2.hpp"
#include "ripbound/errors.hpp"
#include "ripbound/special_functions.hpp"

namespace ripbound::bounds {

namespace {

double log_ratio(const ProblemDims& dims) {
  return std::log(static_cast<double>(dims.N) / static_cast<double>(dims.s));
}

// Shared lower-bound plumbing: quantile level (s-1)/(N-1), internal slack
// d = eps + (n ln(N/s))^{-1/2}, floor 1 - C e^{-n eps^2 / C}.
struct LowerParts {
  bool have_T = false;
  double sqrt_p_T = 0.0;
  double half_p_T_sq = 0.0;
  double delta_internal = 0.0;
};

BoundReport lower_report_common(const ProblemDims& dims, double eps, double const_c,
                                BoundKind kind, LowerParts& parts) {
  dims.validate();
  if (!(eps > 0.0)) throw std::domain_error("lower bound: eps must be > 0");
  if (!(const_c > 0.0)) throw std::domain_error("lower bound: const_c must be > 0");

  BoundReport rep;
  rep.kind = kind;
  rep.eps = eps;
  rep.const_c = const_c;
  rep.prob_floor = std::max(
      0.0, 1.0 - const_c * std::exp(-static_cast<double>(dims.n) * eps * eps / const_c));
  rep.delta_internal =
      eps + 1.0 / std::sqrt(static_cast<double>(dims.n) * log_ratio(dims));
  parts.delta_internal = *rep.delta_internal;

  if (dims.s < 2) {
    rep.valid = false;
    rep.reason = "s < 2";
    return rep;
  }
  if (dims.sparsity_ratio() >= 0.2) {
    rep.valid = false;
    rep.reason = "s/N >= 1/5";
    // the formula is still evaluated below
  }

  const double alpha = static_cast<double>(dims.s - 1) / static_cast<double>(dims.N - 1);
  const chi2::ConditionalMoment m = chi2::big_T(alpha);
  const double p = dims.p();
  parts.have_T = true;
  parts.sqrt_p_T = std::sqrt(p) * m.T;
  parts.half_p_T_sq = 0.5 * p * m.T_squared;
  return rep;
}

void finish_lower(BoundReport& rep, double radicand, bool plus_side) {
  if (radicand < 0.0) {
    rep.valid = false;
    rep.value.reset();
    rep.reason = rep.reason.empty() ? "radicand < 0" : rep.reason + "; radicand < 0";
    return;
  }
  rep.value = plus_side ? std::sqrt(radicand) - 1.0 : 1.0 - std::sqrt(radicand);
  rep.vacuous = *rep.value <= 0.0;
}

} // namespace

void ProblemDims::validate() const {
  if (n < 1) throw std::domain_error("ProblemDims: n must be >= 1");
  if (s < 1) throw std::domain_error("ProblemDims: s must be >= 1");
  if (s >= N) throw std::domain_error("ProblemDims: s must be < N");
}

const char* to_string(BoundKind kind) {
  switch (kind) {
    case BoundKind::lower_plus: return "lower_plus";
    case BoundKind::lower_minus: return "lower_minus";
    case BoundKind::upper_new: return "upper_new";
    case BoundKind::upper_classical: return "upper_classical";
  }
  return "?";
}

BoundReport lower_bound_delta_plus(const ProblemDims& dims, double eps, double const_c) {
  LowerParts parts;
  BoundReport rep =
      lower_report_common(dims, eps, const_c, BoundKind::lower_plus, parts);
  if (!parts.have_T) return rep;
  const double radicand =
      (1.0 + parts.sqrt_p_T) * (1.0 - parts.delta_internal) + parts.half_p_T_sq;
  finish_lower(rep, radicand, /*plus_side=*/true);
  return rep;
}

BoundReport lower_bound_delta_minus(const ProblemDims& dims, double eps, double const_c) {
  LowerParts parts;
  BoundReport rep =
      lower_report_common(dims, eps, const_c, BoundKind::lower_minus, parts);
  if (!parts.have_T) return rep;
  const double radicand = 1.0 - parts.sqrt_p_T +
                          (1.0 + parts.sqrt_p_T) * parts.delta_internal +
                          parts.half_p_T_sq;
  finish_lower(rep, radicand, /*plus_side=*/false);
  return rep;
}

BoundReport upper_bound_delta(const ProblemDims& dims, double eps, double const_c) {
  dims.validate();
  if (!(eps > 0.0)) throw std::domain_error("upper bound: eps must be > 0");

  BoundReport rep;
  rep.kind = BoundKind::upper_new;
  rep.eps = eps;
  rep.const_c = const_c;
  rep.prob_floor =
      std::max(0.0, 1.0 - 2.0 * std::exp(-0.5 * static_cast<double>(dims.n) * eps * eps));

  const double p = dims.p();
  if (p >= 0.2) {
    rep.valid = false;
    rep.reason = "p >= 1/5";
  }
  // The quantile level s/N carries its own (informational) regime note;
  // it is surfaced independently of the p condition.
  rep.level_warning = dims.sparsity_ratio() >= 0.2;

  const chi2::ConditionalMoment m = chi2::big_T(dims.sparsity_ratio());
  const double n = static_cast<double>(dims.n);
  rep.value = std::sqrt(p) * m.T + const_c / std::sqrt(n * log_ratio(dims)) +
              0.5 / n + eps;
  return rep;
}

double classical_upper_bound_prob(const ProblemDims& dims, double delta,
                                  double c1, double c2) {
  dims.validate();
  if (!(c1 > 0.0) || !(c2 > 0.0))
    throw std::domain_error("classical_upper_bound_prob: c1, c2 must be > 0");
  const double exponent = std::log(2.0) + sf::log_binomial(dims.N, dims.s) -
                          c1 * delta * delta * static_cast<double>(dims.n) +
                          c2 * static_cast<double>(dims.s);
  return exponent >= 0.0 ? 1.0 : std::exp(exponent);
}

double classical_threshold(const ProblemDims& dims, double confidence,
                           double c1, double c2) {
  dims.validate();
  if (!(confidence > 0.0) || !(confidence < 1.0))
    throw std::domain_error("classical_threshold: confidence must lie in (0, 1)");
  if (!(c1 > 0.0) || !(c2 > 0.0))
    throw std::domain_error("classical_threshold: c1, c2 must be > 0");
  const double numer = std::log(2.0) + sf::log_binomial(dims.N, dims.s) +
                       c2 * static_cast<double>(dims.s) - std::log1p(-confidence);
  return std::sqrt(numer / (c1 * static_cast<double>(dims.n)));
}

double eps_for_confidence(std::size_t n, double confidence, FloorForm form,
                          double const_c) {
  if (n < 1) throw std::domain_error("eps_for_confidence: n must be >= 1");
  if (!(confidence > 0.0) || !(confidence < 1.0))
    throw std::domain_error("eps_for_confidence: confidence must lie in (0, 1)");
  const double tail = 1.0 - confidence;
  if (form == FloorForm::upper)
    return std::sqrt(2.0 * std::log(2.0 / tail) / static_cast<double>(n));
  if (!(const_c > tail))
    throw std::domain_error(
        "eps_for_confidence: the lower-bound floor needs const_c > 1 - confidence");
  return std::sqrt(const_c * std::log(const_c / tail) / static_cast<double>(n));
}

double AlgorithmRequirement::threshold(std::size_t s) const {
  if (!threshold_depends_on_s) return fixed_threshold;
  if (s < 1) throw std::domain_error("AlgorithmRequirement::threshold: s must be >= 1");
  return 1.0 / (1.0 + std::sqrt(static_cast<double>(s)));
}

namespace {
const AlgorithmRequirement kAlgorithms[] = {
    // id, order multiplier, strict, s-dependent, fixed threshold
    {"l1", 1, true, false, 1.0 / 3.0},
    {"l1_2s", 2, true, false, 4.0 / std::sqrt(41.0)},
    {"omp", 1, true, true, 0.0},
    {"omp_13s", 13, true, false, 1.0 / 6.0},
    {"cosamp", 4, false, false, std::sqrt(std::sqrt(11.0 / 3.0) - 1.0) / 2.0},
    {"iht", 3, true, false, 1.0 / std::sqrt(3.0)},
    {"htp", 3, true, false, 1.0 / std::sqrt(3.0)},
};
} // namespace

const std::vector<std::string>& algorithm_ids() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> v;
    for (const auto& a : kAlgorithms) v.push_back(a.id);
    return v;
  }();
  return ids;
}

AlgorithmRequirement algorithm_requirement(std::string_view name) {
  for (const auto& a : kAlgorithms)
    if (a.id == name) return a;
  std::ostringstream msg;
  msg << "unknown algorithm id '" << name << "'; valid ids:";
  for (const auto& id : algorithm_ids()) msg << ' ' << id;
  throw std::domain_error(msg.str());
}

namespace {

// Checks an objective is (numerically) non-increasing over a log grid of
// the scan range before trusting binary search with it.
template <typename F>
void verify_monotone(const F& objective, std::size_t n_lo, std::size_t n_hi) {
  constexpr int kProbes = 48;
  double prev = 0.0;
  bool first = true;
  std::size_t prev_n = 0;
  for (int i = 0; i <= kProbes; ++i) {
    const double frac = static_cast<double>(i) / kProbes;
    const double ln =
        std::log(static_cast<double>(n_lo)) +
        frac * (std::log(static_cast<double>(n_hi)) - std::log(static_cast<double>(n_lo)));
    const auto n = static_cast<std::size_t>(std::llround(std::exp(ln)));
    if (!first && n == prev_n) continue;
    const double v = objective(std::clamp(n, n_lo, n_hi));
    if (!first && v > prev * (1.0 + 1e-12) + 1e-12)
      throw std::logic_error("measurement scan: objective is not monotone over the range");
    prev = v;
    prev_n = n;
    first = false;
  }
}

template <typename F>
std::size_t scan_smallest(const F& objective, std::size_t n_lo, std::size_t n_hi,
                          double target, const char* what) {
  verify_monotone(objective, n_lo, n_hi);
  if (objective(n_hi) > target) {
    std::ostringstream msg;
    msg << what << ": no n <= " << n_hi << " reaches the target " << target;
    throw scan_not_found_error(msg.str());
  }
  std::size_t lo = n_lo, hi = n_hi;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (objective(mid) <= target)
      hi = mid;
    else
      lo = mid + 1;
  }
  return lo;
}

} // namespace

std::size_t min_measurements_sufficient(std::size_t N, std::size_t s,
                                        double delta_target, double confidence,
                                        double const_c, std::size_t n_max) {
  if (!(delta_target > 0.0) || !(delta_target < 1.0))
    throw std::domain_error("min_measurements_sufficient: delta_target must lie in (0, 1)");
  const std::size_t n_lo = 5 * s + 1;  // p < 1/5 needed for a valid report
  if (n_lo > n_max)
    throw std::domain_error("min_measurements_sufficient: n_max below the valid range");
  const auto objective = [&](std::size_t n) {
    const ProblemDims dims{n, N, s};
    const double eps = eps_for_confidence(n, confidence, FloorForm::upper, const_c);
    const BoundReport rep = upper_bound_delta(dims, eps, const_c);
    return *rep.value;
  };
  return scan_smallest(objective, n_lo, n_max, delta_target,
                       "min_measurements_sufficient");
}

std::size_t min_measurements_necessary(std::size_t N, std::size_t s,
                                       double delta_target, double confidence,
                                       double const_c, std::size_t n_max) {
  if (!(delta_target > 0.0) || !(delta_target < 1.0))
    throw std::domain_error("min_measurements_necessary: delta_target must lie in (0, 1)");
  if (s < 2)
    throw std::domain_error("min_measurements_necessary: lower bounds require s >= 2");
  if (static_cast<double>(s) / static_cast<double>(N) >= 0.2)
    throw std::domain_error("min_measurements_necessary: requires s/N < 1/5");
  const auto objective = [&](std::size_t n) {
    const ProblemDims dims{n, N, s};
    const double eps = eps_for_confidence(n, confidence, FloorForm::lower, const_c);
    const BoundReport plus = lower_bound_delta_plus(dims, eps, const_c);
    const BoundReport minus = lower_bound_delta_minus(dims, eps, const_c);
    if (!plus.value && !minus.value)
      throw std::domain_error("min_measurements_necessary: no lower bound value at n = " +
                              std::to_string(n));
    double v = -std::numeric_limits<double>::infinity();
    if (plus.value) v = std::max(v, *plus.value);
    if (minus.value) v = std::max(v, *minus.value);
    return v;
  };
  return scan_smallest(objective, 1, n_max, delta_target,
                       "min_measurements_necessary");
}

std::optional<double> CurveRow::lower() const {
  std::optional<double> best;
  for (const BoundReport* rep : {&lower_plus, &lower_minus}) {
    if (!rep->valid || !rep->value) continue;
    if (!best || *rep->value > *best) best = *rep->value;
  }
  return best;
}

std::vector<CurveRow> curve(std::size_t N, double sparsity_ratio,
                            std::span<const double> rates, double confidence,
                            double const_c, double c1, double c2) {
  if (!(sparsity_ratio > 0.0) || !(sparsity_ratio < 1.0))
    throw std::domain_error("curve: sparsity_ratio must lie in (0, 1)");
  if (!(confidence > 0.0) || !(confidence < 1.0))
    throw std::domain_error("curve: confidence must lie in (0, 1)");
  const auto s = static_cast<std::size_t>(
      std::max<long long>(1, std::llround(sparsity_ratio * static_cast<double>(N))));
  if (s >= N) throw std::domain_error("curve: sparsity level rounds to s >= N");

  std::vector<CurveRow> rows;
  rows.reserve(rates.size());
  for (double rate : rates) {
    if (!(rate > 1.0)) throw std::domain_error("curve: compression rates must be > 1");
    CurveRow row;
    row.compression_rate = rate;
    row.sparsity_level = sparsity_ratio;
    row.N = N;
    row.s = s;
    row.n = static_cast<std::size_t>(
        std::max<long long>(1, std::llround(static_cast<double>(N) / rate)));
    if (row.n < s) {
      row.dims_valid = false;
      for (BoundReport* rep : {&row.lower_plus, &row.lower_minus, &row.upper_new}) {
        rep->valid = false;
        rep->reason = "n < s";
      }
      row.lower_plus.kind = BoundKind::lower_plus;
      row.lower_minus.kind = BoundKind::lower_minus;
      row.upper_new.kind = BoundKind::upper_new;
      rows.push_back(std::move(row));
      continue;
    }
    const ProblemDims dims{row.n, N, s};
    const double eps_lower =
        eps_for_confidence(row.n, confidence, FloorForm::lower, const_c);
    const double eps_upper =
        eps_for_confidence(row.n, confidence, FloorForm::upper, const_c);
    row.lower_plus = lower_bound_delta_plus(dims, eps_lower, const_c);
    row.lower_minus = lower_bound_delta_minus(dims, eps_lower, const_c);
    row.upper_new = upper_bound_delta(dims, eps_upper, const_c);
    row.upper_classical = classical_threshold(dims, confidence, c1, c2);
    rows.push_back(std::move(row));
  }
  return rows;
}

} // namespace ripbound::bounds
