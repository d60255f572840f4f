#include "ripbound/order_stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <utility>

#include "ripbound/parallel.hpp"
#include "ripbound/rng.hpp"

namespace ripbound::ord {

namespace {
constexpr double kLogEHalf = 0.30685281944005469058;  // ln(e/2)

// Selects the k largest values (ties toward lower index) and sums them in
// a fixed order so the result is reproducible bit for bit.
double top_k_sum(std::span<const double> samples, std::size_t k,
                 std::vector<std::pair<double, std::size_t>>& scratch) {
  scratch.clear();
  scratch.reserve(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) scratch.emplace_back(samples[i], i);
  const auto larger = [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  };
  if (k < scratch.size())
    std::nth_element(scratch.begin(), scratch.begin() + (k - 1), scratch.end(), larger);
  std::sort(scratch.begin(), scratch.begin() + k, larger);
  double sum = 0.0;
  for (std::size_t i = 0; i < k; ++i) sum += scratch[i].first;
  return sum;
}
} // namespace

TopKSum top_k_rms(std::span<const double> samples, std::size_t k) {
  const std::size_t n = samples.size();
  if (k < 1 || k > n)
    throw std::domain_error("top_k_rms: k must satisfy 1 <= k <= samples.size()");
  for (double v : samples)
    if (!(v >= 0.0)) throw std::domain_error("top_k_rms: samples must be nonnegative");
  std::vector<std::pair<double, std::size_t>> scratch;
  const double sum = top_k_sum(samples, k, scratch);
  return {k, n, std::sqrt(sum / static_cast<double>(k))};
}

TheoreticalT theoretical_T(std::size_t n, std::size_t k) {
  if (k == 0 || k > n) throw std::domain_error("theoretical_T: need 0 < k <= n");
  const double alpha = static_cast<double>(k) / static_cast<double>(n);
  const bool warn = alpha >= 0.2;
  if (warn)
    std::fprintf(stderr,
                 "warning: k/n = %.6g >= 1/5; top-k concentration guarantees "
                 "do not cover this ratio\n",
                 alpha);
  return {chi2::big_T(alpha), alpha, warn};
}

ConcentrationBound deviation_bound(std::size_t n, std::size_t k, double eps,
                                   double const_c) {
  if (k < 1 || k >= n)
    throw std::domain_error("deviation_bound: need 1 <= k < n (ln(n/k) must be positive)");
  if (!(eps > 0.0)) throw std::domain_error("deviation_bound: eps must be > 0");
  if (!(const_c > 0.0)) throw std::domain_error("deviation_bound: const_c must be > 0");
  const double kk = static_cast<double>(k);
  const double bias = const_c / std::sqrt(kk * std::log(static_cast<double>(n) / kk));
  double floor = 1.0 - 2.0 * std::exp(-0.5 * kk * eps * eps);
  floor = std::clamp(floor, 0.0, std::nextafter(1.0, 0.0));
  const double center = chi2::big_T(kk / static_cast<double>(n)).T;
  return {center, bias, eps, floor, const_c};
}

double relative_entropy(double a, double b) {
  if (!(a > 0.0) || !(a < 1.0) || !(b > 0.0) || !(b < 1.0))
    throw std::domain_error("relative_entropy: arguments must lie strictly in (0, 1)");
  if (a == b) return 0.0;
  return a * std::log(a / b) + (1.0 - a) * std::log((1.0 - a) / (1.0 - b));
}

double quantile_concentration_bound(std::size_t n, std::size_t k, double delta) {
  if (k == 0 || 2 * k >= n)
    throw std::domain_error("quantile_concentration_bound: need alpha = k/n < 1/2");
  const double alpha = static_cast<double>(k) / static_cast<double>(n);
  if (!(delta > 0.0) || delta >= std::min(alpha, 1.0 - alpha))
    throw std::domain_error(
        "quantile_concentration_bound: need 0 < delta < min(alpha, 1-alpha)");
  const double rate = delta * delta * (1.0 / alpha + 1.0 / (1.0 - alpha)) * kLogEHalf;
  return std::exp(-static_cast<double>(n) * rate);
}

double dkw_bound(std::size_t n, double eps) {
  if (n < 1) throw std::domain_error("dkw_bound: n must be >= 1");
  if (!(eps > 0.0)) throw std::domain_error("dkw_bound: eps must be > 0");
  return std::min(1.0, 2.0 * std::exp(-2.0 * static_cast<double>(n) * eps * eps));
}

OrderStatReport mc_verify_concentration(std::size_t n, std::size_t k,
                                        std::size_t trials, std::uint64_t seed,
                                        double const_c,
                                        std::span<const double> eps_grid) {
  if (k == 0 || 5 * k >= n)
    throw std::domain_error("mc_verify_concentration: requires k < n/5");
  if (trials < 1) throw std::domain_error("mc_verify_concentration: trials must be >= 1");

  static constexpr double kDefaultEps[] = {0.2, 0.326, 0.5};
  if (eps_grid.empty()) eps_grid = kDefaultEps;

  OrderStatReport rep;
  rep.n = n;
  rep.k = k;
  rep.trials = trials;
  rep.seed = seed;
  rep.const_c = const_c;

  const TheoreticalT theory = theoretical_T(n, k);
  rep.theoretical = theory.moment.T;
  rep.regime_warning = theory.regime_warning;

  rep.t_k.assign(trials, 0.0);
  parallel_blocks(trials, [&](std::size_t begin, std::size_t end) {
    std::vector<double> sample(n);
    std::vector<std::pair<double, std::size_t>> scratch;
    for (std::size_t trial = begin; trial < end; ++trial) {
      const std::uint64_t key = rng::derive_key(seed, trial);
      for (std::size_t j = 0; j < n; ++j) {
        const double z = rng::normal(key, j);
        sample[j] = z * z;
      }
      rep.t_k[trial] = std::sqrt(top_k_sum(sample, k, scratch) / static_cast<double>(k));
    }
  });

  double mean = 0.0;
  for (double v : rep.t_k) mean += v;
  mean /= static_cast<double>(trials);
  double ss = 0.0;
  for (double v : rep.t_k) ss += (v - mean) * (v - mean);
  rep.empirical_mean = mean;
  rep.empirical_sd = trials > 1 ? std::sqrt(ss / static_cast<double>(trials - 1)) : 0.0;
  rep.abs_bias = std::fabs(mean - rep.theoretical);

  for (double eps : eps_grid) {
    const ConcentrationBound cb = deviation_bound(n, k, eps, const_c);
    std::size_t inside = 0;
    for (double v : rep.t_k)
      if (std::fabs(v - rep.theoretical) <= cb.radius()) ++inside;
    rep.cells.push_back({eps, cb.radius(), cb.prob_floor,
                         static_cast<double>(inside) / static_cast<double>(trials),
                         dkw_bound(n, eps)});
  }
  return rep;
}

} // namespace ripbound::ord
