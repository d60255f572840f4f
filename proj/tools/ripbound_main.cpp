// ripbound command line: bound evaluation, curve emission, and Monte Carlo
// verification with reproducible seeded runs.

#include <cmath>
#include <cstdio>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "ripbound/chi2.hpp"
#include "ripbound/errors.hpp"
#include "ripbound/io.hpp"
#include "ripbound/mc_lab.hpp"
#include "ripbound/order_stats.hpp"
#include "ripbound/rip_bounds.hpp"
#include "ripbound/rng.hpp"
#include "ripbound/version.hpp"

namespace {

using namespace ripbound;

using KV = std::vector<std::pair<std::string, std::string>>;

std::string fmt(double v) { return io::format_real(v); }

// Emits csv to --out (with a manifest alongside) or to stdout.
void deliver(const std::string& csv, const std::string& out_path,
             const std::string& command, const KV& params, bool csv_to_stdout) {
  if (!out_path.empty()) {
    io::write_file(out_path, csv);
    KV manifest;
    manifest.emplace_back("command", command);
    manifest.emplace_back("version", kVersion);
    for (const auto& kv : params) manifest.push_back(kv);
    manifest.emplace_back("timestamp", io::timestamp_utc());
    io::write_file(out_path + ".manifest", io::manifest_text(manifest));
  } else if (csv_to_stdout) {
    std::fputs(csv.c_str(), stdout);
  }
}

std::string report_field(const bounds::BoundReport& rep) {
  if (!rep.valid || !rep.value) return "";
  return fmt(*rep.value);
}

std::string bounds_csv(const bounds::ProblemDims& dims,
                       const std::vector<bounds::BoundReport>& reps) {
  io::CsvTable table({"kind", "n", "N", "s", "eps", "delta_internal", "value",
                      "prob_floor", "const_c", "valid", "vacuous", "reason"});
  for (const auto& rep : reps) {
    table.add_row({bounds::to_string(rep.kind), std::to_string(dims.n),
                   std::to_string(dims.N), std::to_string(dims.s), fmt(rep.eps),
                   rep.delta_internal ? fmt(*rep.delta_internal) : std::string(),
                   rep.value ? fmt(*rep.value) : std::string(), fmt(rep.prob_floor),
                   fmt(rep.const_c), rep.valid ? "1" : "0", rep.vacuous ? "1" : "0",
                   rep.reason});
  }
  return table.render();
}

void print_bounds_human(const std::vector<bounds::BoundReport>& reps) {
  std::printf("%-13s %-12s %-10s %-10s %-10s %s\n", "kind", "value", "eps",
              "delta_int", "prob_floor", "flags");
  for (const auto& rep : reps) {
    std::string flags;
    if (!rep.valid) flags += "invalid(" + rep.reason + ") ";
    if (rep.vacuous) flags += "vacuous ";
    if (rep.level_warning) flags += "level_note(s/N>=1/5) ";
    std::printf("%-13s %-12.6g %-10.5g %-10.5g %-10.5g %s\n",
                bounds::to_string(rep.kind),
                rep.value ? *rep.value : std::nan(""), rep.eps,
                rep.delta_internal ? *rep.delta_internal : std::nan(""),
                rep.prob_floor, flags.c_str());
  }
}

struct CommonOut {
  std::string format = "human";
  std::string out_path;
};

void add_common_out(CLI::App* cmd, CommonOut& out) {
  cmd->add_option("--format", out.format, "output format")
      ->check(CLI::IsMember({"human", "csv"}))
      ->capture_default_str();
  cmd->add_option("--out", out.out_path, "write machine-readable output here");
}

// ---------------------------------------------------------------- bounds
struct BoundsArgs {
  std::size_t n = 0, N = 0, s = 0;
  double confidence = 0.99;
  double const_c = 1.0;
  CommonOut out;
};

int run_bounds(const BoundsArgs& a) {
  const bounds::ProblemDims dims{a.n, a.N, a.s};
  dims.validate();
  const double eps_lower =
      bounds::eps_for_confidence(a.n, a.confidence, bounds::FloorForm::lower, a.const_c);
  const double eps_upper =
      bounds::eps_for_confidence(a.n, a.confidence, bounds::FloorForm::upper, a.const_c);
  std::vector<bounds::BoundReport> reps;
  reps.push_back(bounds::lower_bound_delta_plus(dims, eps_lower, a.const_c));
  reps.push_back(bounds::lower_bound_delta_minus(dims, eps_lower, a.const_c));
  reps.push_back(bounds::upper_bound_delta(dims, eps_upper, a.const_c));

  const std::string csv = bounds_csv(dims, reps);
  if (a.out.format == "csv" && a.out.out_path.empty()) {
    std::fputs(csv.c_str(), stdout);
  } else if (a.out.format == "human") {
    std::printf("n=%zu N=%zu s=%zu confidence=%g const_c=%g\n", a.n, a.N, a.s,
                a.confidence, a.const_c);
    print_bounds_human(reps);
  }
  deliver(csv, a.out.out_path, "bounds",
          {{"n", std::to_string(a.n)},
           {"N", std::to_string(a.N)},
           {"s", std::to_string(a.s)},
           {"confidence", fmt(a.confidence)},
           {"const_c", fmt(a.const_c)}},
          false);
  return 0;
}

// ---------------------------------------------------------------- curve
struct CurveArgs {
  std::size_t N = 1000;
  std::vector<double> sparsity;
  double rate_min = 1.25, rate_max = 50.0;
  std::size_t points = 50;
  double confidence = 0.99;
  double const_c = 1.0, c1 = 1.0, c2 = 1.0;
  std::string out_path;
  std::string svg_path;
  bool svg_combine = false;
};

std::string level_label(double sparsity) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", sparsity);
  return buf;
}

std::vector<io::SvgSeries> curve_series(std::span<const bounds::CurveRow> rows,
                                        const std::string& suffix, bool dashed) {
  io::SvgSeries lower{"lower bound" + suffix, "#1f77b4", dashed, {}};
  io::SvgSeries upper{"upper bound" + suffix, "#d62728", dashed, {}};
  io::SvgSeries classical{"classical upper" + suffix, "#2ca02c", dashed, {}};
  for (const auto& row : rows) {
    if (!row.dims_valid) continue;
    if (const auto lo = row.lower())
      lower.points.emplace_back(row.compression_rate, std::max(0.0, *lo));
    if (row.upper_new.valid && row.upper_new.value)
      upper.points.emplace_back(row.compression_rate, *row.upper_new.value);
    if (row.upper_classical)
      classical.points.emplace_back(row.compression_rate, *row.upper_classical);
  }
  return {std::move(lower), std::move(upper), std::move(classical)};
}

std::string svg_path_for_level(const std::string& base, double sparsity) {
  const std::string label = level_label(sparsity);
  const auto dot = base.rfind('.');
  if (dot == std::string::npos || base.find('/', dot) != std::string::npos)
    return base + "_s" + label;
  return base.substr(0, dot) + "_s" + label + base.substr(dot);
}

int run_curve(CurveArgs a) {
  if (a.sparsity.empty()) a.sparsity = {0.1, 0.01, 0.001};
  if (a.points < 1) throw std::domain_error("curve: --points must be >= 1");
  if (!(a.rate_min > 1.0)) throw std::domain_error("curve: --rate-min must be > 1");
  if (a.rate_max < a.rate_min)
    throw std::domain_error("curve: --rate-max must be >= --rate-min");

  std::vector<double> rates;
  rates.reserve(a.points);
  for (std::size_t i = 0; i < a.points; ++i) {
    const double f = a.points == 1
                         ? 0.0
                         : static_cast<double>(i) / static_cast<double>(a.points - 1);
    rates.push_back(a.rate_min + f * (a.rate_max - a.rate_min));
  }

  std::vector<bounds::CurveRow> all_rows;
  std::vector<std::vector<bounds::CurveRow>> per_level;
  for (double sp : a.sparsity) {
    auto rows = bounds::curve(a.N, sp, rates, a.confidence, a.const_c, a.c1, a.c2);
    all_rows.insert(all_rows.end(), rows.begin(), rows.end());
    per_level.push_back(std::move(rows));
  }

  const std::string csv = io::curve_csv(all_rows);
  KV params = {{"N", std::to_string(a.N)},
               {"rate_min", fmt(a.rate_min)},
               {"rate_max", fmt(a.rate_max)},
               {"points", std::to_string(a.points)},
               {"confidence", fmt(a.confidence)},
               {"const_c", fmt(a.const_c)},
               {"c1", fmt(a.c1)},
               {"c2", fmt(a.c2)}};
  for (std::size_t i = 0; i < a.sparsity.size(); ++i)
    params.emplace_back("sparsity_" + std::to_string(i), fmt(a.sparsity[i]));
  deliver(csv, a.out_path, "curve", params, false);

  if (!a.svg_path.empty()) {
    const std::string x_label = "compression rate N/n";
    const std::string y_label = "RIP constant bound";
    if (a.svg_combine || a.sparsity.size() == 1) {
      std::vector<io::SvgSeries> series;
      for (std::size_t i = 0; i < per_level.size(); ++i) {
        auto part = curve_series(per_level[i],
                                 " (s/N=" + level_label(a.sparsity[i]) + ")", i > 0);
        series.insert(series.end(), part.begin(), part.end());
      }
      io::write_file(a.svg_path,
                     io::svg_chart("RIP constant bounds", x_label, y_label, series));
      io::write_file(a.svg_path + ".manifest", io::manifest_text([&] {
                       KV m;
                       m.emplace_back("command", "curve");
                       m.emplace_back("version", kVersion);
                       for (const auto& kv : params) m.push_back(kv);
                       m.emplace_back("timestamp", io::timestamp_utc());
                       return m;
                     }()));
    } else {
      for (std::size_t i = 0; i < per_level.size(); ++i) {
        const std::string path = svg_path_for_level(a.svg_path, a.sparsity[i]);
        const auto series = curve_series(per_level[i], "", false);
        io::write_file(
            path, io::svg_chart("RIP constant bounds, s/N = " +
                                    level_label(a.sparsity[i]),
                                x_label, y_label, series));
        io::write_file(path + ".manifest", io::manifest_text([&] {
                         KV m;
                         m.emplace_back("command", "curve");
                         m.emplace_back("version", kVersion);
                         for (const auto& kv : params) m.push_back(kv);
                         m.emplace_back("sparsity_panel", level_label(a.sparsity[i]));
                         m.emplace_back("timestamp", io::timestamp_utc());
                         return m;
                       }()));
      }
    }
  }
  std::printf("curve: %zu rows (%zu sparsity levels x %zu rates) -> %s\n",
              all_rows.size(), a.sparsity.size(), rates.size(), a.out_path.c_str());
  return 0;
}

// ---------------------------------------------------------------- orderstats
struct OrderStatsArgs {
  std::size_t n = 0, k = 0, trials = 1000;
  std::uint64_t seed = 0;
  double const_c = 1.0;
  std::vector<double> eps;
  CommonOut out;
};

int run_orderstats(const OrderStatsArgs& a) {
  const ord::OrderStatReport rep = ord::mc_verify_concentration(
      a.n, a.k, a.trials, a.seed, a.const_c,
      std::span<const double>(a.eps.data(), a.eps.size()));
  io::CsvTable table({"n", "k", "trials", "seed", "const_c", "theory_T", "mean_T_k",
                      "sd_T_k", "abs_bias", "eps", "radius", "prob_floor",
                      "coverage", "dkw"});
  for (const auto& cell : rep.cells)
    table.add_row({std::to_string(rep.n), std::to_string(rep.k),
                   std::to_string(rep.trials), std::to_string(rep.seed),
                   fmt(rep.const_c), fmt(rep.theoretical), fmt(rep.empirical_mean),
                   fmt(rep.empirical_sd), fmt(rep.abs_bias), fmt(cell.eps),
                   fmt(cell.radius), fmt(cell.prob_floor), fmt(cell.coverage),
                   fmt(cell.dkw)});
  const std::string csv = table.render();
  if (a.out.format == "csv" && a.out.out_path.empty()) {
    std::fputs(csv.c_str(), stdout);
  } else if (a.out.format == "human") {
    std::printf("top-%zu of %zu chi-squared samples, %zu trials, seed %llu\n", a.k,
                a.n, a.trials, static_cast<unsigned long long>(a.seed));
    std::printf("theory T = %.10g  mean T_k = %.10g  sd = %.4g  |bias| = %.4g\n",
                rep.theoretical, rep.empirical_mean, rep.empirical_sd, rep.abs_bias);
    std::printf("%-8s %-10s %-12s %-10s %-12s\n", "eps", "radius", "prob_floor",
                "coverage", "dkw");
    for (const auto& cell : rep.cells)
      std::printf("%-8.4g %-10.6g %-12.8g %-10.6g %-12.6g\n", cell.eps, cell.radius,
                  cell.prob_floor, cell.coverage, cell.dkw);
  }
  deliver(csv, a.out.out_path, "orderstats",
          {{"n", std::to_string(a.n)},
           {"k", std::to_string(a.k)},
           {"trials", std::to_string(a.trials)},
           {"seed", std::to_string(a.seed)},
           {"const_c", fmt(a.const_c)},
           {"rng", rng::kMethodName}},
          false);
  return 0;
}

// ---------------------------------------------------------------- mc
struct McArgs {
  std::size_t n = 0, N = 0, s = 0, trials = 1000;
  std::uint64_t seed = 0;
  std::string ensemble = "gaussian";
  double confidence = 0.99;
  double const_c = 1.0;
  CommonOut out;
};

int run_mc(const McArgs& a) {
  const bounds::ProblemDims dims{a.n, a.N, a.s};
  const mc::ExperimentSummary sum =
      mc::run_experiment(dims, mc::ensemble_from_string(a.ensemble), a.trials,
                         a.seed, a.confidence, a.const_c);

  std::vector<std::string> header = {"n", "N", "s", "ensemble", "trials", "seed",
                                     "confidence", "const_c", "eps",
                                     "lower_plus", "lower_minus", "mean_phi_v_sq",
                                     "center", "frac_plus_ge_bound",
                                     "frac_minus_ge_bound"};
  static constexpr double kQ[] = {0.05, 0.25, 0.5, 0.75, 0.95};
  for (double q : kQ) header.push_back("dplus_q" + std::to_string(int(q * 100)));
  for (double q : kQ) header.push_back("dminus_q" + std::to_string(int(q * 100)));
  io::CsvTable table(header);
  std::vector<std::string> row = {
      std::to_string(a.n), std::to_string(a.N), std::to_string(a.s), a.ensemble,
      std::to_string(a.trials), std::to_string(a.seed), fmt(a.confidence),
      fmt(a.const_c), fmt(sum.eps), report_field(sum.lower_plus),
      report_field(sum.lower_minus), fmt(sum.mean_phi_v_sq), fmt(sum.center),
      fmt(sum.frac_plus_ge_bound), fmt(sum.frac_minus_ge_bound)};
  for (double q : kQ) row.push_back(fmt(mc::empirical_quantile(sum.delta_plus_emp, q)));
  for (double q : kQ) row.push_back(fmt(mc::empirical_quantile(sum.delta_minus_emp, q)));
  table.add_row(row);
  const std::string csv = table.render();

  if (a.out.format == "csv" && a.out.out_path.empty()) {
    std::fputs(csv.c_str(), stdout);
  } else if (a.out.format == "human") {
    std::printf("witness experiment: n=%zu N=%zu s=%zu %s, %zu trials, seed %llu\n",
                a.n, a.N, a.s, a.ensemble.c_str(), a.trials,
                static_cast<unsigned long long>(a.seed));
    std::printf("eps (confidence %.4g) = %.6g\n", a.confidence, sum.eps);
    std::printf("lower_plus  = %s\n", report_field(sum.lower_plus).c_str());
    std::printf("lower_minus = %s\n", report_field(sum.lower_minus).c_str());
    std::printf("mean ||Phi v'||^2 = %.10g  (center %.10g, construction-weighted %.10g)\n",
                sum.mean_phi_v_sq, sum.center, sum.center_construction);
    std::printf("fraction of certificates >= bound: plus %.4g, minus %.4g\n",
                sum.frac_plus_ge_bound, sum.frac_minus_ge_bound);
    std::printf("delta_plus_emp quantiles (5/25/50/75/95):");
    for (double q : kQ)
      std::printf(" %.6g", mc::empirical_quantile(sum.delta_plus_emp, q));
    std::printf("\ndelta_minus_emp quantiles (5/25/50/75/95):");
    for (double q : kQ)
      std::printf(" %.6g", mc::empirical_quantile(sum.delta_minus_emp, q));
    std::printf("\n");
  }
  deliver(csv, a.out.out_path, "mc",
          {{"n", std::to_string(a.n)},
           {"N", std::to_string(a.N)},
           {"s", std::to_string(a.s)},
           {"ensemble", a.ensemble},
           {"trials", std::to_string(a.trials)},
           {"seed", std::to_string(a.seed)},
           {"confidence", fmt(a.confidence)},
           {"const_c", fmt(a.const_c)},
           {"rng", rng::kMethodName}},
          false);
  return 0;
}

// ---------------------------------------------------------------- exact
struct ExactArgs {
  std::size_t n = 0, N = 0, s = 0;
  std::uint64_t seed = 0;
  std::string ensemble = "gaussian";
  std::uint64_t cap = 1'000'000;
  CommonOut out;
};

int run_exact(const ExactArgs& a) {
  const mc::DenseMatrix A =
      mc::sample_matrix(a.n, a.N, mc::ensemble_from_string(a.ensemble), a.seed);
  const mc::ExactRip er = mc::exact_rip(A, a.s, a.cap);
  io::CsvTable table({"n", "N", "s", "ensemble", "seed", "delta_plus",
                      "delta_minus", "delta_s", "supports_checked"});
  table.add_row({std::to_string(a.n), std::to_string(a.N), std::to_string(a.s),
                 a.ensemble, std::to_string(a.seed), fmt(er.delta_plus),
                 fmt(er.delta_minus), fmt(er.delta_s),
                 std::to_string(er.supports_checked)});
  const std::string csv = table.render();
  if (a.out.format == "csv" && a.out.out_path.empty()) {
    std::fputs(csv.c_str(), stdout);
  } else if (a.out.format == "human") {
    std::printf("exact RIP over all supports: n=%zu N=%zu s=%zu %s seed %llu\n", a.n,
                a.N, a.s, a.ensemble.c_str(), static_cast<unsigned long long>(a.seed));
    std::printf("delta_plus  = %.12g\ndelta_minus = %.12g\ndelta_s     = %.12g\n",
                er.delta_plus, er.delta_minus, er.delta_s);
    std::printf("supports_checked = %llu\n",
                static_cast<unsigned long long>(er.supports_checked));
  }
  deliver(csv, a.out.out_path, "exact",
          {{"n", std::to_string(a.n)},
           {"N", std::to_string(a.N)},
           {"s", std::to_string(a.s)},
           {"ensemble", a.ensemble},
           {"seed", std::to_string(a.seed)},
           {"cap", std::to_string(a.cap)},
           {"rng", rng::kMethodName}},
          false);
  return 0;
}

// ---------------------------------------------------------------- minmeas
struct MinMeasArgs {
  std::size_t N = 0, s = 0;
  double delta_target = 0.0;
  std::string algorithm;
  double confidence = 0.99;
  double const_c = 1.0;
  std::size_t n_max = 10'000'000;
  std::string scan = "both";
  CommonOut out;
};

int run_minmeas(const MinMeasArgs& a) {
  std::size_t order = a.s;
  double target = a.delta_target;
  if (!a.algorithm.empty()) {
    const bounds::AlgorithmRequirement req = bounds::algorithm_requirement(a.algorithm);
    order = req.order_multiplier * a.s;
    target = req.threshold(a.s);
    if (a.out.format == "human")
      std::printf("algorithm %s: RIP order %u*s = %zu, delta threshold %s %.10g\n",
                  req.id.c_str(), req.order_multiplier, order,
                  req.strict ? "<" : "<=", target);
  }
  io::CsvTable table(
      {"N", "s", "order", "delta_target", "confidence", "const_c", "scan", "n"});
  const auto add = [&](const char* name, std::size_t n) {
    table.add_row({std::to_string(a.N), std::to_string(a.s), std::to_string(order),
                   fmt(target), fmt(a.confidence), fmt(a.const_c), name,
                   std::to_string(n)});
    if (a.out.format == "human")
      std::printf("%s: smallest n = %zu\n", name, n);
  };
  if (a.scan == "both" || a.scan == "sufficient")
    add("sufficient", bounds::min_measurements_sufficient(a.N, order, target,
                                                          a.confidence, a.const_c,
                                                          a.n_max));
  if (a.scan == "both" || a.scan == "necessary")
    add("necessary", bounds::min_measurements_necessary(a.N, order, target,
                                                        a.confidence, a.const_c,
                                                        a.n_max));
  const std::string csv = table.render();
  if (a.out.format == "csv" && a.out.out_path.empty()) std::fputs(csv.c_str(), stdout);
  deliver(csv, a.out.out_path, "minmeas",
          {{"N", std::to_string(a.N)},
           {"s", std::to_string(a.s)},
           {"order", std::to_string(order)},
           {"delta_target", fmt(target)},
           {"algorithm", a.algorithm.empty() ? "-" : a.algorithm},
           {"confidence", fmt(a.confidence)},
           {"const_c", fmt(a.const_c)},
           {"n_max", std::to_string(a.n_max)},
           {"scan", a.scan}},
          false);
  return 0;
}

// ---------------------------------------------------------------- quantile/cte
struct QuantileArgs {
  double alpha = 0.0;
  CommonOut out;
};

int run_quantile(const QuantileArgs& a) {
  const chi2::TailSpec spec = chi2::quantile(a.alpha);
  io::CsvTable table({"alpha", "t"});
  table.add_row({fmt(spec.alpha), fmt(spec.t)});
  const std::string csv = table.render();
  if (a.out.format == "csv" && a.out.out_path.empty()) {
    std::fputs(csv.c_str(), stdout);
  } else if (a.out.format == "human") {
    std::printf("alpha        = %s\n", fmt(spec.alpha).c_str());
    std::printf("t            = %s\n", fmt(spec.t).c_str());
    std::printf("survival(t)  = %s\n", fmt(chi2::survival(spec.t)).c_str());
  }
  deliver(csv, a.out.out_path, "quantile", {{"alpha", fmt(a.alpha)}}, false);
  return 0;
}

struct CteArgs {
  double t = 0.0;
  CommonOut out;
};

int run_cte(const CteArgs& a) {
  const chi2::ConditionalMoment m = chi2::conditional_tail_expectation(a.t);
  io::CsvTable table({"t", "T_squared", "T"});
  table.add_row({fmt(m.t), fmt(m.T_squared), fmt(m.T)});
  const std::string csv = table.render();
  if (a.out.format == "csv" && a.out.out_path.empty()) {
    std::fputs(csv.c_str(), stdout);
  } else if (a.out.format == "human") {
    std::printf("t          = %s\n", fmt(m.t).c_str());
    std::printf("T_squared  = %s\n", fmt(m.T_squared).c_str());
    std::printf("T          = %s\n", fmt(m.T).c_str());
  }
  deliver(csv, a.out.out_path, "cte", {{"t", fmt(a.t)}}, false);
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"bounds on restricted isometry constants of random matrices"};
  app.set_version_flag("--version", ripbound::kVersion);
  app.require_subcommand(1);

  BoundsArgs ba;
  auto* cb = app.add_subcommand("bounds", "closed-form lower/upper bounds at one (n, N, s)");
  cb->add_option("--n", ba.n, "measurement count")->required();
  cb->add_option("--N", ba.N, "ambient dimension")->required();
  cb->add_option("--s", ba.s, "sparsity level")->required();
  cb->add_option("--confidence", ba.confidence)->capture_default_str();
  cb->add_option("--const-c", ba.const_c)->capture_default_str();
  add_common_out(cb, ba.out);

  CurveArgs ca;
  auto* cc = app.add_subcommand("curve", "bounds vs compression rate, CSV (+ SVG)");
  cc->add_option("--N", ca.N)->capture_default_str();
  cc->add_option("--sparsity", ca.sparsity, "sparsity level s/N (repeatable)");
  cc->add_option("--rate-min", ca.rate_min)->capture_default_str();
  cc->add_option("--rate-max", ca.rate_max)->capture_default_str();
  cc->add_option("--points", ca.points)->capture_default_str();
  cc->add_option("--confidence", ca.confidence)->capture_default_str();
  cc->add_option("--const-c", ca.const_c)->capture_default_str();
  cc->add_option("--c1", ca.c1)->capture_default_str();
  cc->add_option("--c2", ca.c2)->capture_default_str();
  cc->add_option("--out", ca.out_path, "CSV output path")->required();
  cc->add_option("--svg", ca.svg_path, "SVG output path (one file per level)");
  cc->add_flag("--svg-combine", ca.svg_combine, "single SVG with all levels");

  OrderStatsArgs oa;
  auto* co = app.add_subcommand("orderstats", "Monte Carlo check of top-k concentration");
  co->add_option("--n", oa.n, "sample size per trial")->required();
  co->add_option("--k", oa.k, "top-k")->required();
  co->add_option("--trials", oa.trials)->capture_default_str();
  co->add_option("--seed", oa.seed)->required();
  co->add_option("--const-c", oa.const_c)->capture_default_str();
  co->add_option("--eps", oa.eps, "deviation eps grid (repeatable)");
  add_common_out(co, oa.out);

  McArgs ma;
  auto* cm = app.add_subcommand("mc", "seeded witness experiment against the lower bounds");
  cm->add_option("--n", ma.n)->required();
  cm->add_option("--N", ma.N)->required();
  cm->add_option("--s", ma.s)->required();
  cm->add_option("--ensemble", ma.ensemble)
      ->check(CLI::IsMember({"gaussian", "rademacher"}))
      ->capture_default_str();
  cm->add_option("--trials", ma.trials)->capture_default_str();
  cm->add_option("--seed", ma.seed)->required();
  cm->add_option("--confidence", ma.confidence)->capture_default_str();
  cm->add_option("--const-c", ma.const_c)->capture_default_str();
  add_common_out(cm, ma.out);

  ExactArgs ea;
  auto* ce = app.add_subcommand("exact", "exhaustive RIP constants for a tiny seeded matrix");
  ce->add_option("--n", ea.n)->required();
  ce->add_option("--N", ea.N)->required();
  ce->add_option("--s", ea.s)->required();
  ce->add_option("--seed", ea.seed)->required();
  ce->add_option("--ensemble", ea.ensemble)
      ->check(CLI::IsMember({"gaussian", "rademacher"}))
      ->capture_default_str();
  ce->add_option("--cap", ea.cap, "max number of supports")->capture_default_str();
  add_common_out(ce, ea.out);

  MinMeasArgs mma;
  auto* cmm = app.add_subcommand("minmeas", "scan for minimal measurement counts");
  cmm->add_option("--N", mma.N)->required();
  cmm->add_option("--s", mma.s)->required();
  auto* opt_target = cmm->add_option("--delta-target", mma.delta_target);
  auto* opt_algo = cmm->add_option("--algorithm", mma.algorithm,
                                   "take the RIP threshold of this algorithm");
  opt_target->excludes(opt_algo);
  cmm->add_option("--confidence", mma.confidence)->capture_default_str();
  cmm->add_option("--const-c", mma.const_c)->capture_default_str();
  cmm->add_option("--n-max", mma.n_max)->capture_default_str();
  cmm->add_option("--scan", mma.scan)
      ->check(CLI::IsMember({"both", "sufficient", "necessary"}))
      ->capture_default_str();
  add_common_out(cmm, mma.out);

  QuantileArgs qa;
  auto* cq = app.add_subcommand("quantile", "chi-squared(1) upper-tail quantile");
  cq->add_option("--alpha", qa.alpha, "tail probability")->required();
  add_common_out(cq, qa.out);

  CteArgs ta;
  auto* ct = app.add_subcommand("cte", "chi-squared(1) conditional tail expectation");
  ct->add_option("--t", ta.t, "threshold")->required();
  add_common_out(ct, ta.out);

  try {
    app.parse(argc, argv);
    if (cb->parsed()) return run_bounds(ba);
    if (cc->parsed()) return run_curve(ca);
    if (co->parsed()) return run_orderstats(oa);
    if (cm->parsed()) return run_mc(ma);
    if (ce->parsed()) return run_exact(ea);
    if (cmm->parsed()) {
      if (mma.algorithm.empty() && !(mma.delta_target > 0.0))
        throw std::domain_error("minmeas: give --delta-target or --algorithm");
      return run_minmeas(mma);
    }
    if (cq->parsed()) return run_quantile(qa);
    if (ct->parsed()) return run_cte(ta);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const ripbound::cap_exceeded_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 4;
  } catch (const ripbound::io::io_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const std::domain_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::overflow_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const ripbound::scan_not_found_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
