#include "ripbound/mc_lab.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "ripbound/chi2.hpp"
#include "ripbound/errors.hpp"
#include "ripbound/parallel.hpp"
#include "ripbound/rng.hpp"
#include "ripbound/small_eig.hpp"

namespace ripbound::mc {

const char* to_string(Ensemble e) {
  return e == Ensemble::gaussian ? "gaussian" : "rademacher";
}

Ensemble ensemble_from_string(std::string_view name) {
  if (name == "gaussian") return Ensemble::gaussian;
  if (name == "rademacher") return Ensemble::rademacher;
  throw std::domain_error("unknown ensemble '" + std::string(name) +
                          "'; valid: gaussian rademacher");
}

double DenseMatrix::column_dot(std::size_t a, std::size_t b) const {
  double acc = 0.0;
  for (std::size_t i = 0; i < rows; ++i) acc += (*this)(i, a) * (*this)(i, b);
  return acc;
}

double DenseMatrix::column_norm(std::size_t a) const {
  return std::sqrt(column_dot(a, a));
}

DenseMatrix sample_matrix(std::size_t n, std::size_t N, Ensemble ensemble,
                          std::uint64_t seed) {
  if (n < 1 || N < 1) throw std::domain_error("sample_matrix: dimensions must be >= 1");
  DenseMatrix m;
  m.rows = n;
  m.cols = N;
  m.ensemble = ensemble;
  m.seed = seed;
  m.entries.resize(n * N);
  const std::size_t total = n * N;
  parallel_blocks(total, [&](std::size_t begin, std::size_t end) {
    if (ensemble == Ensemble::gaussian) {
      for (std::size_t k = begin; k < end; ++k) m.entries[k] = rng::normal(seed, k);
    } else {
      for (std::size_t k = begin; k < end; ++k) m.entries[k] = rng::rademacher(seed, k);
    }
  });
  return m;
}

HalfVector build_half_vector(std::span<const double> x, std::size_t m) {
  if (m < 1 || m > x.size())
    throw std::domain_error("build_half_vector: need 1 <= m <= x.size()");
  HalfVector hv;
  std::vector<std::pair<double, std::size_t>> keyed;
  keyed.reserve(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) keyed.emplace_back(std::fabs(x[i]), i);
  const auto larger = [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  };
  if (m < keyed.size())
    std::nth_element(keyed.begin(), keyed.begin() + (m - 1), keyed.end(), larger);
  std::sort(keyed.begin(), keyed.begin() + m, larger);

  double mass = 0.0;
  for (std::size_t i = 0; i < m; ++i) mass += keyed[i].first * keyed[i].first;

  hv.support.reserve(m);
  hv.coeffs.reserve(m);
  if (mass == 0.0) {
    // measure-zero input (reachable with discrete ensembles): park the
    // remaining mass on the lowest indices with positive sign
    hv.degenerate = true;
    const double c = 1.0 / std::sqrt(2.0 * static_cast<double>(m));
    for (std::size_t i = 0; i < m; ++i) {
      hv.support.push_back(i);
      hv.coeffs.push_back(c);
    }
    hv.dot_x = 0.0;
    return hv;
  }

  const double r = std::sqrt(mass);
  const double inv = 1.0 / (r * std::sqrt(2.0));
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t idx = keyed[i].second;
    hv.support.push_back(idx);
    hv.coeffs.push_back(x[idx] * inv);
    hv.dot_x += x[idx] * x[idx] * inv;
  }
  return hv;
}

AdversarialCertificate adversarial_pair(const DenseMatrix& A, std::size_t s) {
  const std::size_t n = A.rows, N = A.cols;
  if (s < 2 || s > N)
    throw std::domain_error("adversarial_pair: the construction needs 2 <= s <= N");
  const double a1_norm = A.column_norm(0);
  if (a1_norm == 0.0)
    throw std::domain_error("adversarial_pair: first column is zero (degenerate input)");

  // correlations of columns 2..N with the first column's direction
  std::vector<double> x(N - 1);
  for (std::size_t j = 1; j < N; ++j) x[j - 1] = A.column_dot(0, j) / a1_norm;

  const HalfVector hv = build_half_vector(x, s - 1);

  AdversarialCertificate cert;
  cert.degenerate = hv.degenerate;
  cert.v_plus.assign(N, 0.0);
  cert.v_minus.assign(N, 0.0);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  cert.v_plus[0] = inv_sqrt2;
  cert.v_minus[0] = inv_sqrt2;
  for (std::size_t i = 0; i < hv.support.size(); ++i) {
    const std::size_t col = hv.support[i] + 1;
    cert.v_plus[col] = hv.coeffs[i];
    cert.v_minus[col] = -hv.coeffs[i];
  }

  // ||A v||^2 / n for the two sign patterns; only s columns contribute
  std::vector<double> image(n, 0.0);
  const auto quad_over_n = [&](const std::vector<double>& v) {
    std::fill(image.begin(), image.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i) image[i] = v[0] * A(i, 0);
    for (std::size_t j = 0; j < hv.support.size(); ++j) {
      const std::size_t col = hv.support[j] + 1;
      const double w = v[col];
      for (std::size_t i = 0; i < n; ++i) image[i] += w * A(i, col);
    }
    double acc = 0.0;
    for (double e : image) acc += e * e;
    return acc / static_cast<double>(n);
  };
  cert.delta_plus_emp = quad_over_n(cert.v_plus) - 1.0;
  cert.delta_minus_emp = 1.0 - quad_over_n(cert.v_minus);
  return cert;
}

std::uint64_t binomial_count(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t result = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    const std::uint64_t limit = (1ULL << 63) / (n - k + i);
    if (result > limit) return 1ULL << 63;  // saturate
    result = result * (n - k + i) / i;
  }
  return result;
}

namespace {

// rank -> lexicographic combination of {0..n-1} choose k
void unrank_combination(std::uint64_t rank, std::size_t n, std::size_t k,
                        std::vector<std::size_t>& out) {
  out.clear();
  std::size_t next = 0;
  for (std::size_t slot = 0; slot < k; ++slot) {
    for (std::size_t candidate = next;; ++candidate) {
      const std::uint64_t block = binomial_count(n - candidate - 1, k - slot - 1);
      if (rank < block) {
        out.push_back(candidate);
        next = candidate + 1;
        break;
      }
      rank -= block;
    }
  }
}

bool next_combination(std::vector<std::size_t>& c, std::size_t n) {
  const std::size_t k = c.size();
  for (std::size_t i = k; i-- > 0;) {
    if (c[i] < n - k + i) {
      ++c[i];
      for (std::size_t j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
      return true;
    }
  }
  return false;
}

} // namespace

ExactRip exact_rip(const DenseMatrix& A, std::size_t s, std::uint64_t cap) {
  const std::size_t n = A.rows, N = A.cols;
  if (s < 1 || s > N) throw std::domain_error("exact_rip: need 1 <= s <= N");
  const std::uint64_t total = binomial_count(N, s);
  if (total > cap) {
    std::ostringstream msg;
    msg << "exact_rip: C(" << N << ", " << s << ") = " << total
        << " supports exceeds the cap of " << cap;
    throw cap_exceeded_error(msg.str(), total);
  }

  // Gram of the scaled columns; N stays small once C(N, s) fits the cap
  // for s >= 2, and s == 1 only needs the diagonal.
  const bool full_gram = s >= 2 && N <= 4000;
  std::vector<double> gram;
  if (full_gram) {
    gram.resize(N * N);
    for (std::size_t a = 0; a < N; ++a)
      for (std::size_t b = a; b < N; ++b) {
        const double g = A.column_dot(a, b) / static_cast<double>(n);
        gram[a * N + b] = g;
        gram[b * N + a] = g;
      }
  }

  const std::size_t workers = worker_count(static_cast<std::size_t>(total));
  std::vector<double> max_per_worker(workers, -1.0);
  std::vector<double> min_per_worker(workers, std::numeric_limits<double>::infinity());
  const std::uint64_t chunk = (total + workers - 1) / workers;

  parallel_blocks(workers, [&](std::size_t wbegin, std::size_t wend) {
    std::vector<std::size_t> support;
    std::vector<double> local_gram(s * s);
    for (std::size_t w = wbegin; w < wend; ++w) {
      const std::uint64_t lo = w * chunk;
      const std::uint64_t hi = std::min<std::uint64_t>(total, lo + chunk);
      if (lo >= hi) continue;
      double local_max = -1.0;
      double local_min = std::numeric_limits<double>::infinity();
      unrank_combination(lo, N, s, support);
      for (std::uint64_t r = lo; r < hi; ++r) {
        if (s == 1) {
          const double g = full_gram
                               ? gram[support[0] * N + support[0]]
                               : A.column_dot(support[0], support[0]) / static_cast<double>(n);
          local_max = std::max(local_max, g);
          local_min = std::min(local_min, g);
        } else {
          for (std::size_t a = 0; a < s; ++a)
            for (std::size_t b = 0; b < s; ++b)
              local_gram[a * s + b] =
                  full_gram ? gram[support[a] * N + support[b]]
                            : A.column_dot(support[a], support[b]) /
                                  static_cast<double>(n);
          const std::vector<double> ev =
              linalg::symmetric_eigenvalues(local_gram, s);
          local_min = std::min(local_min, ev.front());
          local_max = std::max(local_max, ev.back());
        }
        if (r + 1 < hi) next_combination(support, N);
      }
      max_per_worker[w] = local_max;
      min_per_worker[w] = local_min;
    }
  });

  double lam_max = -1.0;
  double lam_min = std::numeric_limits<double>::infinity();
  for (std::size_t w = 0; w < workers; ++w) {
    lam_max = std::max(lam_max, max_per_worker[w]);
    lam_min = std::min(lam_min, min_per_worker[w]);
  }

  ExactRip result;
  result.delta_plus = lam_max - 1.0;
  result.delta_minus = 1.0 - lam_min;
  result.delta_s = std::max(result.delta_plus, result.delta_minus);
  result.supports_checked = total;
  return result;
}

ExperimentSummary run_experiment(const bounds::ProblemDims& dims, Ensemble ensemble,
                                 std::size_t trials, std::uint64_t seed,
                                 double confidence, double const_c) {
  dims.validate();
  if (dims.s < 2)
    throw std::domain_error("run_experiment: the witness construction needs s >= 2");
  if (trials < 1) throw std::domain_error("run_experiment: trials must be >= 1");

  ExperimentSummary sum;
  sum.dims = dims;
  sum.ensemble = ensemble;
  sum.trials = trials;
  sum.seed = seed;
  sum.confidence = confidence;
  sum.const_c = const_c;
  sum.eps = bounds::eps_for_confidence(dims.n, confidence, bounds::FloorForm::lower,
                                       const_c);
  sum.lower_plus = bounds::lower_bound_delta_plus(dims, sum.eps, const_c);
  sum.lower_minus = bounds::lower_bound_delta_minus(dims, sum.eps, const_c);

  sum.delta_plus_emp.assign(trials, 0.0);
  sum.delta_minus_emp.assign(trials, 0.0);
  parallel_blocks(trials, [&](std::size_t begin, std::size_t end) {
    for (std::size_t t = begin; t < end; ++t) {
      const DenseMatrix A =
          sample_matrix(dims.n, dims.N, ensemble, rng::derive_key(seed, t));
      const AdversarialCertificate cert = adversarial_pair(A, dims.s);
      sum.delta_plus_emp[t] = cert.delta_plus_emp;
      sum.delta_minus_emp[t] = cert.delta_minus_emp;
    }
  });

  double mean = 0.0;
  for (double v : sum.delta_plus_emp) mean += v + 1.0;
  sum.mean_phi_v_sq = mean / static_cast<double>(trials);

  const double alpha =
      static_cast<double>(dims.s - 1) / static_cast<double>(dims.N - 1);
  const chi2::ConditionalMoment m = chi2::big_T(alpha);
  const double p = dims.p();
  sum.center = 1.0 + std::sqrt(p) * m.T + 0.5 * p * m.T_squared;
  const double p1 = static_cast<double>(dims.s - 1) / static_cast<double>(dims.n);
  sum.center_construction = 1.0 + std::sqrt(p1) * m.T + 0.5 * p1 * m.T_squared;

  const auto frac_ge = [&](const std::vector<double>& vals,
                           const bounds::BoundReport& rep) {
    if (!rep.value) return 0.0;
    std::size_t count = 0;
    for (double v : vals)
      if (v >= *rep.value) ++count;
    return static_cast<double>(count) / static_cast<double>(trials);
  };
  sum.frac_plus_ge_bound = frac_ge(sum.delta_plus_emp, sum.lower_plus);
  sum.frac_minus_ge_bound = frac_ge(sum.delta_minus_emp, sum.lower_minus);
  return sum;
}

double empirical_quantile(std::span<const double> values, double q) {
  if (values.empty()) throw std::domain_error("empirical_quantile: empty sample");
  if (!(q >= 0.0) || !(q <= 1.0))
    throw std::domain_error("empirical_quantile: q must lie in [0, 1]");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const auto m = static_cast<double>(sorted.size());
  auto idx = static_cast<long long>(std::ceil(q * m)) - 1;
  idx = std::clamp<long long>(idx, 0, static_cast<long long>(sorted.size()) - 1);
  return sorted[static_cast<std::size_t>(idx)];
}

} // namespace ripbound::mc

