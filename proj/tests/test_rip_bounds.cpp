#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include <doctest.h>

#include "ripbound/chi2.hpp"
#include "ripbound/errors.hpp"
#include "ripbound/rip_bounds.hpp"
#include "ripbound/rng.hpp"
#include "ripbound/special_functions.hpp"

using namespace ripbound;
using bounds::BoundReport;
using bounds::FloorForm;
using bounds::ProblemDims;

namespace {

// linear scans as the independent reference for the binary searches
std::size_t linear_scan_sufficient(std::size_t N, std::size_t s, double target,
                                   double conf, double C, std::size_t n_max) {
  for (std::size_t n = 5 * s + 1; n <= n_max; ++n) {
    const double eps = bounds::eps_for_confidence(n, conf, FloorForm::upper, C);
    const BoundReport rep = bounds::upper_bound_delta({n, N, s}, eps, C);
    if (rep.valid && rep.value && *rep.value <= target) return n;
  }
  throw scan_not_found_error("linear_scan_sufficient: exhausted");
}

std::size_t linear_scan_necessary(std::size_t N, std::size_t s, double target,
                                  double conf, double C, std::size_t n_max) {
  for (std::size_t n = 1; n <= n_max; ++n) {
    const double eps = bounds::eps_for_confidence(n, conf, FloorForm::lower, C);
    const BoundReport plus = bounds::lower_bound_delta_plus({n, N, s}, eps, C);
    const BoundReport minus = bounds::lower_bound_delta_minus({n, N, s}, eps, C);
    double v = -1e300;
    if (plus.value) v = std::max(v, *plus.value);
    if (minus.value) v = std::max(v, *minus.value);
    if (v <= target) return n;
  }
  throw scan_not_found_error("linear_scan_necessary: exhausted");
}

} // namespace

TEST_SUITE_BEGIN("rip_bounds");

TEST_CASE("ProblemDims validation and ratios") {
  const ProblemDims dims{200, 1000, 10};
  CHECK(dims.p() == 0.05);
  CHECK(dims.sparsity_ratio() == 0.01);
  CHECK_NOTHROW(dims.validate());
  CHECK_THROWS_AS((ProblemDims{0, 10, 2}).validate(), std::domain_error);
  CHECK_THROWS_AS((ProblemDims{5, 10, 0}).validate(), std::domain_error);
  CHECK_THROWS_AS((ProblemDims{5, 10, 10}).validate(), std::domain_error);
}

TEST_CASE("lower bounds: frozen pipeline values at eps = 0.05") {
  const ProblemDims dims{200, 1000, 10};
  const BoundReport plus = bounds::lower_bound_delta_plus(dims, 0.05, 1.0);
  REQUIRE(plus.valid);
  REQUIRE(plus.value.has_value());
  CHECK(*plus.delta_internal == doctest::Approx(0.082950511449113041).epsilon(1e-12));
  CHECK(*plus.value == doctest::Approx(0.31746608243412143).epsilon(1e-12));
  CHECK(plus.prob_floor ==
        doctest::Approx(1.0 - std::exp(-200 * 0.05 * 0.05)).epsilon(1e-12));
  CHECK_FALSE(plus.vacuous);

  const BoundReport minus = bounds::lower_bound_delta_minus(dims, 0.05, 1.0);
  REQUIRE(minus.valid);
  REQUIRE(minus.value.has_value());
  CHECK(*minus.value == doctest::Approx(0.16560373562593458).epsilon(1e-12));
}

TEST_CASE("upper bound: frozen pipeline value at eps = 0.05") {
  const ProblemDims dims{200, 1000, 10};
  const BoundReport up = bounds::upper_bound_delta(dims, 0.05, 1.0);
  REQUIRE(up.valid);
  CHECK(*up.value == doctest::Approx(0.73541843227690844).epsilon(1e-12));
  CHECK(up.prob_floor == 0.0);  // 1 - 2 e^{-0.25} < 0, clamped
  CHECK_FALSE(up.level_warning);
  // the limit value sqrt(p) T dominates the formula
  const double sqrt_p_T = std::sqrt(0.05) * chi2::big_T(0.01).T;
  CHECK(sqrt_p_T == doctest::Approx(0.64996792082779540).epsilon(1e-12));
  CHECK(*up.value > sqrt_p_T);
}

TEST_CASE("confidence-derived eps and the 0.99 pipeline values") {
  CHECK(bounds::eps_for_confidence(200, 0.99, FloorForm::upper, 1.0) ==
        doctest::Approx(0.23018074130013650).epsilon(1e-13));
  CHECK(bounds::eps_for_confidence(200, 0.99, FloorForm::lower, 1.0) ==
        doctest::Approx(0.15174271293851464).epsilon(1e-13));
  // formula limit: confidence -> 0 gives sqrt(2 ln 2 / n)
  CHECK(bounds::eps_for_confidence(100, 1e-12, FloorForm::upper, 1.0) ==
        doctest::Approx(std::sqrt(2.0 * std::log(2.0) / 100.0)).epsilon(1e-9));
  CHECK_THROWS_AS(
      (void)bounds::eps_for_confidence(200, 0.99, FloorForm::lower, 0.005),
      std::domain_error);
  CHECK_THROWS_AS((void)bounds::eps_for_confidence(200, 1.0, FloorForm::upper, 1.0),
                  std::domain_error);

  const ProblemDims dims{200, 1000, 10};
  const double el = bounds::eps_for_confidence(200, 0.99, FloorForm::lower, 1.0);
  const double eu = bounds::eps_for_confidence(200, 0.99, FloorForm::upper, 1.0);
  CHECK(*bounds::lower_bound_delta_plus(dims, el, 1.0).value ==
        doctest::Approx(0.25184149909053117).epsilon(1e-12));
  CHECK(*bounds::lower_bound_delta_minus(dims, el, 1.0).value ==
        doctest::Approx(0.070039320443881258).epsilon(1e-12));
  CHECK(*bounds::upper_bound_delta(dims, eu, 1.0).value ==
        doctest::Approx(0.91559917357704494).epsilon(1e-12));
}

TEST_CASE("regime and error paths of the bound reports") {
  // s = 1: no quantile level for the lower bounds
  const BoundReport s1 = bounds::lower_bound_delta_plus({200, 1000, 1}, 0.05, 1.0);
  CHECK_FALSE(s1.valid);
  CHECK_FALSE(s1.value.has_value());
  CHECK(s1.reason == "s < 2");

  // s/N >= 1/5: flagged invalid but the value is still computed
  const BoundReport regime = bounds::lower_bound_delta_plus({100, 40, 10}, 0.05, 1.0);
  CHECK_FALSE(regime.valid);
  CHECK(regime.reason == "s/N >= 1/5");
  CHECK(regime.value.has_value());

  // large eps drives the plus radicand negative: no value, reason says so
  const BoundReport neg = bounds::lower_bound_delta_plus({200, 1000, 10}, 5.0, 1.0);
  CHECK_FALSE(neg.valid);
  CHECK_FALSE(neg.value.has_value());
  CHECK(neg.reason == "radicand < 0");
  // the minus side stays evaluable there and reports a vacuous value
  const BoundReport vac = bounds::lower_bound_delta_minus({200, 1000, 10}, 5.0, 1.0);
  CHECK(vac.valid);
  REQUIRE(vac.value.has_value());
  CHECK(*vac.value < 0.0);
  CHECK(vac.vacuous);

  // upper bound: p >= 1/5 invalidates, value still present
  const BoundReport up = bounds::upper_bound_delta({40, 1000, 10}, 0.05, 1.0);
  CHECK_FALSE(up.valid);
  CHECK(up.reason == "p >= 1/5");
  CHECK(up.value.has_value());

  // independent level note when s/N >= 1/5 but p < 1/5
  const BoundReport note = bounds::upper_bound_delta({400, 40, 10}, 0.05, 1.0);
  CHECK(note.valid);
  CHECK(note.level_warning);
}

TEST_CASE("the two quantile levels are distinct for s >= 2") {
  const double T_lower = chi2::big_T(9.0 / 999.0).T;
  const double T_upper = chi2::big_T(10.0 / 1000.0).T;
  CHECK(T_lower == doctest::Approx(2.9391631610569241).epsilon(1e-12));
  CHECK(T_upper == doctest::Approx(2.9067449083303038).epsilon(1e-12));
  CHECK(T_lower != T_upper);
}

TEST_CASE("classical tail probability in log space") {
  CHECK(sf::log_binomial(1000, 10) ==
        doctest::Approx(53.927997037888276).epsilon(1e-12));
  const ProblemDims dims{500, 1000, 10};
  CHECK(bounds::classical_upper_bound_prob(dims, 0.5, 1.0, 1.0) ==
        doctest::Approx(5.9950955659055202e-27).epsilon(1e-10));
  // huge n drives the probability to zero
  CHECK(bounds::classical_upper_bound_prob({100000000, 1000, 10}, 0.5, 1.0, 1.0) <
        1e-300);
  // positive exponent clamps at 1
  CHECK(bounds::classical_upper_bound_prob({1, 1000, 10}, 0.1, 1.0, 1.0) == 1.0);
  CHECK_THROWS_AS(
      (void)bounds::classical_upper_bound_prob(dims, 0.5, 0.0, 1.0),
      std::domain_error);
}

TEST_CASE("classical threshold is the crossing point of the tail bound") {
  const ProblemDims dims{200, 1000, 10};
  const double thr = bounds::classical_threshold(dims, 0.99, 1.0, 1.0);
  CHECK(thr == doctest::Approx(0.58832947573802688).epsilon(1e-12));
  CHECK(bounds::classical_upper_bound_prob(dims, thr, 1.0, 1.0) <= 0.01 + 1e-12);
  CHECK(bounds::classical_upper_bound_prob(dims, thr * 0.995, 1.0, 1.0) > 0.01);
}

TEST_CASE("ordering: lower bounds never exceed the upper bound") {
  for (std::size_t s : {5u, 10u, 20u, 50u}) {
    for (std::size_t n : {150u, 200u, 400u, 800u}) {
      const ProblemDims dims{n, 1000, s};
      const double el = bounds::eps_for_confidence(n, 0.99, FloorForm::lower, 1.0);
      const double eu = bounds::eps_for_confidence(n, 0.99, FloorForm::upper, 1.0);
      const BoundReport up = bounds::upper_bound_delta(dims, eu, 1.0);
      if (!up.valid) continue;
      const BoundReport plus = bounds::lower_bound_delta_plus(dims, el, 1.0);
      const BoundReport minus = bounds::lower_bound_delta_minus(dims, el, 1.0);
      if (plus.valid && plus.value) CHECK(*plus.value <= *up.value);
      if (minus.valid && minus.value) CHECK(*minus.value <= *up.value);
    }
  }
}

TEST_CASE("direction of the bounds in eps follows the formulas") {
  const ProblemDims dims{200, 1000, 10};
  double prev_plus = 1e300, prev_minus = 1e300, prev_up = -1e300, prev_delta = 0.0;
  for (double eps : {0.02, 0.05, 0.1, 0.2, 0.4}) {
    const BoundReport plus = bounds::lower_bound_delta_plus(dims, eps, 1.0);
    const BoundReport minus = bounds::lower_bound_delta_minus(dims, eps, 1.0);
    const BoundReport up = bounds::upper_bound_delta(dims, eps, 1.0);
    CHECK(*plus.delta_internal > prev_delta);  // delta_internal grows with eps
    CHECK(*plus.value < prev_plus);            // more slack weakens the lower bounds
    CHECK(*minus.value < prev_minus);
    CHECK(*up.value > prev_up);                // and pads the upper bound
    prev_delta = *plus.delta_internal;
    prev_plus = *plus.value;
    prev_minus = *minus.value;
    prev_up = *up.value;
  }
}

TEST_CASE("algorithm requirements: the full table") {
  const auto l1 = bounds::algorithm_requirement("l1");
  CHECK(l1.order_multiplier == 1);
  CHECK(l1.threshold(10) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(l1.strict);

  CHECK(bounds::algorithm_requirement("l1_2s").order_multiplier == 2);
  CHECK(bounds::algorithm_requirement("l1_2s").threshold(10) ==
        doctest::Approx(0.62469504755442429).epsilon(1e-14));

  const auto omp = bounds::algorithm_requirement("omp");
  CHECK(omp.threshold_depends_on_s);
  CHECK(omp.threshold(9) == doctest::Approx(0.25).epsilon(1e-15));

  CHECK(bounds::algorithm_requirement("omp_13s").order_multiplier == 13);
  CHECK(bounds::algorithm_requirement("omp_13s").threshold(10) ==
        doctest::Approx(1.0 / 6.0).epsilon(1e-15));

  const auto cosamp = bounds::algorithm_requirement("cosamp");
  CHECK(cosamp.order_multiplier == 4);
  CHECK_FALSE(cosamp.strict);
  CHECK(cosamp.threshold(10) == doctest::Approx(0.47824005883883153).epsilon(1e-14));

  for (const char* id : {"iht", "htp"}) {
    const auto req = bounds::algorithm_requirement(id);
    CHECK(req.order_multiplier == 3);
    CHECK(req.threshold(10) == doctest::Approx(0.57735026918962576).epsilon(1e-14));
  }

  CHECK_THROWS_WITH_AS((void)bounds::algorithm_requirement("bogus"),
                       doctest::Contains("cosamp"), std::domain_error);
}

TEST_CASE("measurement scans match the linear reference") {
  // deterministic pseudo-random instances
  for (int i = 0; i < 20; ++i) {
    const std::size_t N = 200 + rng::counter_hash(77, i) % 1300;
    const std::size_t s = 3 + rng::counter_hash(78, i) % 10;
    const double target = 0.35 + 0.55 * rng::to_unit(rng::counter_hash(79, i));
    const std::size_t n_max = 200000;
    CAPTURE(N);
    CAPTURE(s);
    CAPTURE(target);
    CHECK(bounds::min_measurements_sufficient(N, s, target, 0.99, 1.0, n_max) ==
          linear_scan_sufficient(N, s, target, 0.99, 1.0, n_max));
    CHECK(bounds::min_measurements_necessary(N, s, target, 0.99, 1.0, n_max) ==
          linear_scan_necessary(N, s, target, 0.99, 1.0, n_max));
  }
}

TEST_CASE("measurement scans: ordering and monotonicity in the target") {
  const std::size_t suff = bounds::min_measurements_sufficient(1000, 10, 1.0 / 3.0,
                                                               0.99, 1.0);
  const std::size_t nec = bounds::min_measurements_necessary(1000, 10, 1.0 / 3.0,
                                                             0.99, 1.0);
  CHECK(nec <= suff);

  std::size_t prev = 0;
  for (double target : {0.999, 0.667, 0.334}) {
    const std::size_t n = bounds::min_measurements_necessary(1000, 10, target,
                                                             0.99, 1.0);
    CHECK(n >= prev);  // lower targets need more measurements
    prev = n;
  }

  CHECK_THROWS_AS((void)bounds::min_measurements_sufficient(1000, 10, 0.05, 0.99,
                                                            1.0, 1000),
                  scan_not_found_error);
  CHECK_THROWS_AS((void)bounds::min_measurements_necessary(1000, 300, 0.5, 0.99, 1.0),
                  std::domain_error);  // s/N >= 1/5
}

TEST_CASE("scaling of the necessary count with s stays in the expected window") {
  std::size_t prev = 0;
  for (std::size_t s : {5u, 10u, 20u}) {
    const std::size_t n = bounds::min_measurements_necessary(1000, s, 1.0 / 3.0,
                                                             0.99, 1.0);
    CHECK(n > prev);
    prev = n;
    const double ratio = static_cast<double>(n) /
                         (static_cast<double>(s) * std::log(1000.0 / s));
    CHECK(ratio >= 0.05);
    CHECK(ratio <= 50.0);
  }
}

TEST_CASE("curve: single point agrees with the direct bound calls") {
  const std::vector<double> rates{5.0};
  const auto rows = bounds::curve(1000, 0.01, rates, 0.99, 1.0);
  REQUIRE(rows.size() == 1);
  const auto& row = rows[0];
  CHECK(row.n == 200);
  CHECK(row.s == 10);
  REQUIRE(row.lower().has_value());
  CHECK(*row.lower() == doctest::Approx(0.25184149909053117).epsilon(1e-12));
  CHECK(*row.upper_new.value == doctest::Approx(0.91559917357704494).epsilon(1e-12));
  CHECK(*row.upper_classical == doctest::Approx(0.58832947573802688).epsilon(1e-12));
}

TEST_CASE("curve: row flags across the regime boundaries") {
  // n < s rows are invalid
  const auto tiny = bounds::curve(1000, 0.1, std::vector<double>{20.0}, 0.99, 1.0);
  REQUIRE(tiny.size() == 1);
  CHECK_FALSE(tiny[0].dims_valid);
  CHECK_FALSE(tiny[0].lower().has_value());

  // p >= 1/5 invalidates the upper bound; the lower side still carries values
  const auto mid = bounds::curve(1000, 0.1, std::vector<double>{4.0}, 0.99, 1.0);
  REQUIRE(mid.size() == 1);
  CHECK(mid[0].dims_valid);
  CHECK_FALSE(mid[0].upper_new.valid);
  CHECK(mid[0].lower().has_value());

  CHECK_THROWS_AS((void)bounds::curve(1000, 0.01, std::vector<double>{0.9}, 0.99, 1.0),
                  std::domain_error);
  CHECK_THROWS_AS((void)bounds::curve(1000, 1.5, std::vector<double>{5.0}, 0.99, 1.0),
                  std::domain_error);
}

TEST_CASE("curve: ordering holds across a representative grid") {
  std::vector<double> rates;
  for (int i = 0; i < 25; ++i) rates.push_back(1.25 + i * (50.0 - 1.25) / 24.0);
  for (double sparsity : {0.1, 0.01}) {
    const auto rows = bounds::curve(1000, sparsity, rates, 0.99, 1.0);
    for (const auto& row : rows) {
      if (!row.dims_valid || !row.upper_new.valid) continue;
      const auto lo = row.lower();
      if (lo) CHECK(*lo <= *row.upper_new.value);
    }
  }
}

TEST_SUITE_END();
