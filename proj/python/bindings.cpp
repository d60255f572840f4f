#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ripbound/chi2.hpp"
#include "ripbound/errors.hpp"
#include "ripbound/mc_lab.hpp"
#include "ripbound/order_stats.hpp"
#include "ripbound/rip_bounds.hpp"
#include "ripbound/version.hpp"

namespace py = pybind11;
using namespace ripbound;

namespace {

bounds::FloorForm floor_form(const std::string& name) {
  if (name == "upper") return bounds::FloorForm::upper;
  if (name == "lower") return bounds::FloorForm::lower;
  throw std::domain_error("form must be 'upper' or 'lower'");
}

} // namespace

PYBIND11_MODULE(_ripbound, m) {
  m.doc() = "Bounds and Monte Carlo verification tools for restricted "
            "isometry constants of random matrices";
  m.attr("__version__") = kVersion;

  py::register_exception<cap_exceeded_error>(m, "CapExceededError",
                                             PyExc_RuntimeError);
  py::register_exception<scan_not_found_error>(m, "ScanNotFoundError",
                                               PyExc_RuntimeError);

  // ---- chi-squared tail primitives
  py::class_<chi2::TailSpec>(m, "TailSpec")
      .def_readonly("alpha", &chi2::TailSpec::alpha)
      .def_readonly("t", &chi2::TailSpec::t)
      .def("__repr__", [](const chi2::TailSpec& s) {
        return "TailSpec(alpha=" + std::to_string(s.alpha) +
               ", t=" + std::to_string(s.t) + ")";
      });
  py::class_<chi2::ConditionalMoment>(m, "ConditionalMoment")
      .def_readonly("t", &chi2::ConditionalMoment::t)
      .def_readonly("T_squared", &chi2::ConditionalMoment::T_squared)
      .def_readonly("T", &chi2::ConditionalMoment::T)
      .def("__repr__", [](const chi2::ConditionalMoment& c) {
        return "ConditionalMoment(t=" + std::to_string(c.t) +
               ", T_squared=" + std::to_string(c.T_squared) + ")";
      });
  m.def("survival", &chi2::survival, py::arg("x"),
        "P(X > x) for X ~ chi-squared(1)");
  m.def("quantile", &chi2::quantile, py::arg("alpha"),
        "t with survival(t) = alpha");
  m.def("conditional_tail_expectation", &chi2::conditional_tail_expectation,
        py::arg("t"));
  m.def("big_T", &chi2::big_T, py::arg("alpha"));
  m.def("asymptotic_t", &chi2::asymptotic_t, py::arg("N"), py::arg("s"));
  m.def("asymptotic_T", &chi2::asymptotic_T, py::arg("N"), py::arg("s"));

  // ---- top-k order statistics
  py::class_<ord::TopKSum>(m, "TopKSum")
      .def_readonly("k", &ord::TopKSum::k)
      .def_readonly("n", &ord::TopKSum::n)
      .def_readonly("t_k", &ord::TopKSum::t_k);
  py::class_<ord::ConcentrationBound>(m, "ConcentrationBound")
      .def_readonly("center", &ord::ConcentrationBound::center)
      .def_readonly("radius_bias", &ord::ConcentrationBound::radius_bias)
      .def_readonly("radius_tail", &ord::ConcentrationBound::radius_tail)
      .def_readonly("prob_floor", &ord::ConcentrationBound::prob_floor)
      .def_readonly("const_c", &ord::ConcentrationBound::const_c)
      .def("radius", &ord::ConcentrationBound::radius);
  py::class_<ord::TheoreticalT>(m, "TheoreticalT")
      .def_readonly("moment", &ord::TheoreticalT::moment)
      .def_readonly("alpha", &ord::TheoreticalT::alpha)
      .def_readonly("regime_warning", &ord::TheoreticalT::regime_warning);
  py::class_<ord::CoverageCell>(m, "CoverageCell")
      .def_readonly("eps", &ord::CoverageCell::eps)
      .def_readonly("radius", &ord::CoverageCell::radius)
      .def_readonly("prob_floor", &ord::CoverageCell::prob_floor)
      .def_readonly("coverage", &ord::CoverageCell::coverage)
      .def_readonly("dkw", &ord::CoverageCell::dkw);
  py::class_<ord::OrderStatReport>(m, "OrderStatReport")
      .def_readonly("n", &ord::OrderStatReport::n)
      .def_readonly("k", &ord::OrderStatReport::k)
      .def_readonly("trials", &ord::OrderStatReport::trials)
      .def_readonly("seed", &ord::OrderStatReport::seed)
      .def_readonly("const_c", &ord::OrderStatReport::const_c)
      .def_readonly("empirical_mean", &ord::OrderStatReport::empirical_mean)
      .def_readonly("empirical_sd", &ord::OrderStatReport::empirical_sd)
      .def_readonly("theoretical", &ord::OrderStatReport::theoretical)
      .def_readonly("abs_bias", &ord::OrderStatReport::abs_bias)
      .def_readonly("regime_warning", &ord::OrderStatReport::regime_warning)
      .def_readonly("cells", &ord::OrderStatReport::cells)
      .def_readonly("t_k", &ord::OrderStatReport::t_k);
  m.def(
      "top_k_rms",
      [](const std::vector<double>& samples, std::size_t k) {
        return ord::top_k_rms(samples, k);
      },
      py::arg("samples"), py::arg("k"));
  m.def("theoretical_T", &ord::theoretical_T, py::arg("n"), py::arg("k"));
  m.def("deviation_bound", &ord::deviation_bound, py::arg("n"), py::arg("k"),
        py::arg("eps"), py::arg("const_c") = 1.0);
  m.def("relative_entropy", &ord::relative_entropy, py::arg("a"), py::arg("b"));
  m.def("quantile_concentration_bound", &ord::quantile_concentration_bound,
        py::arg("n"), py::arg("k"), py::arg("delta"));
  m.def("dkw_bound", &ord::dkw_bound, py::arg("n"), py::arg("eps"));
  m.def(
      "mc_verify_concentration",
      [](std::size_t n, std::size_t k, std::size_t trials, std::uint64_t seed,
         double const_c, const std::vector<double>& eps_grid) {
        return ord::mc_verify_concentration(n, k, trials, seed, const_c, eps_grid);
      },
      py::arg("n"), py::arg("k"), py::arg("trials"), py::arg("seed"),
      py::arg("const_c") = 1.0, py::arg("eps_grid") = std::vector<double>{});

  // ---- closed-form bounds
  py::class_<bounds::ProblemDims>(m, "ProblemDims")
      .def(py::init([](std::size_t n, std::size_t N, std::size_t s) {
             bounds::ProblemDims d{n, N, s};
             d.validate();
             return d;
           }),
           py::arg("n"), py::arg("N"), py::arg("s"))
      .def_readonly("n", &bounds::ProblemDims::n)
      .def_readonly("N", &bounds::ProblemDims::N)
      .def_readonly("s", &bounds::ProblemDims::s)
      .def_property_readonly("p", &bounds::ProblemDims::p)
      .def_property_readonly("sparsity_ratio", &bounds::ProblemDims::sparsity_ratio);

  py::enum_<bounds::BoundKind>(m, "BoundKind")
      .value("lower_plus", bounds::BoundKind::lower_plus)
      .value("lower_minus", bounds::BoundKind::lower_minus)
      .value("upper_new", bounds::BoundKind::upper_new)
      .value("upper_classical", bounds::BoundKind::upper_classical);

  py::class_<bounds::BoundReport>(m, "BoundReport")
      .def_readonly("kind", &bounds::BoundReport::kind)
      .def_readonly("value", &bounds::BoundReport::value)
      .def_readonly("eps", &bounds::BoundReport::eps)
      .def_readonly("delta_internal", &bounds::BoundReport::delta_internal)
      .def_readonly("prob_floor", &bounds::BoundReport::prob_floor)
      .def_readonly("const_c", &bounds::BoundReport::const_c)
      .def_readonly("valid", &bounds::BoundReport::valid)
      .def_readonly("vacuous", &bounds::BoundReport::vacuous)
      .def_readonly("level_warning", &bounds::BoundReport::level_warning)
      .def_readonly("reason", &bounds::BoundReport::reason)
      .def("__repr__", [](const bounds::BoundReport& r) {
        std::string s = std::string("BoundReport(") + bounds::to_string(r.kind);
        s += r.value ? ", value=" + std::to_string(*r.value) : ", value=None";
        if (!r.valid) s += ", invalid: " + r.reason;
        return s + ")";
      });

  m.def("lower_bound_delta_plus", &bounds::lower_bound_delta_plus, py::arg("dims"),
        py::arg("eps"), py::arg("const_c") = 1.0);
  m.def("lower_bound_delta_minus", &bounds::lower_bound_delta_minus, py::arg("dims"),
        py::arg("eps"), py::arg("const_c") = 1.0);
  m.def("upper_bound_delta", &bounds::upper_bound_delta, py::arg("dims"),
        py::arg("eps"), py::arg("const_c") = 1.0);
  m.def("classical_upper_bound_prob", &bounds::classical_upper_bound_prob,
        py::arg("dims"), py::arg("delta"), py::arg("c1") = 1.0, py::arg("c2") = 1.0);
  m.def("classical_threshold", &bounds::classical_threshold, py::arg("dims"),
        py::arg("confidence"), py::arg("c1") = 1.0, py::arg("c2") = 1.0);
  m.def(
      "eps_for_confidence",
      [](std::size_t n, double confidence, const std::string& form, double const_c) {
        return bounds::eps_for_confidence(n, confidence, floor_form(form), const_c);
      },
      py::arg("n"), py::arg("confidence"), py::arg("form"), py::arg("const_c") = 1.0);

  py::class_<bounds::AlgorithmRequirement>(m, "AlgorithmRequirement")
      .def_readonly("id", &bounds::AlgorithmRequirement::id)
      .def_readonly("order_multiplier", &bounds::AlgorithmRequirement::order_multiplier)
      .def_readonly("strict", &bounds::AlgorithmRequirement::strict)
      .def_readonly("threshold_depends_on_s",
                    &bounds::AlgorithmRequirement::threshold_depends_on_s)
      .def("threshold", &bounds::AlgorithmRequirement::threshold, py::arg("s"));
  m.def("algorithm_requirement",
        [](const std::string& name) { return bounds::algorithm_requirement(name); },
        py::arg("name"));
  m.def("algorithm_ids", [] { return bounds::algorithm_ids(); });

  m.def("min_measurements_sufficient", &bounds::min_measurements_sufficient,
        py::arg("N"), py::arg("s"), py::arg("delta_target"), py::arg("confidence"),
        py::arg("const_c") = 1.0, py::arg("n_max") = std::size_t{10'000'000});
  m.def("min_measurements_necessary", &bounds::min_measurements_necessary,
        py::arg("N"), py::arg("s"), py::arg("delta_target"), py::arg("confidence"),
        py::arg("const_c") = 1.0, py::arg("n_max") = std::size_t{10'000'000});

  py::class_<bounds::CurveRow>(m, "CurveRow")
      .def_readonly("compression_rate", &bounds::CurveRow::compression_rate)
      .def_readonly("sparsity_level", &bounds::CurveRow::sparsity_level)
      .def_readonly("n", &bounds::CurveRow::n)
      .def_readonly("N", &bounds::CurveRow::N)
      .def_readonly("s", &bounds::CurveRow::s)
      .def_readonly("dims_valid", &bounds::CurveRow::dims_valid)
      .def_readonly("lower_plus", &bounds::CurveRow::lower_plus)
      .def_readonly("lower_minus", &bounds::CurveRow::lower_minus)
      .def_readonly("upper_new", &bounds::CurveRow::upper_new)
      .def_readonly("upper_classical", &bounds::CurveRow::upper_classical)
      .def_property_readonly("lower", &bounds::CurveRow::lower);
  m.def(
      "curve",
      [](std::size_t N, double sparsity_ratio, const std::vector<double>& rates,
         double confidence, double const_c, double c1, double c2) {
        return bounds::curve(N, sparsity_ratio, rates, confidence, const_c, c1, c2);
      },
      py::arg("N"), py::arg("sparsity_ratio"), py::arg("rates"),
      py::arg("confidence") = 0.99, py::arg("const_c") = 1.0, py::arg("c1") = 1.0,
      py::arg("c2") = 1.0);

  // ---- random-matrix lab
  py::class_<mc::DenseMatrix>(m, "DenseMatrix")
      .def_readonly("rows", &mc::DenseMatrix::rows)
      .def_readonly("cols", &mc::DenseMatrix::cols)
      .def_readonly("entries", &mc::DenseMatrix::entries)
      .def_property_readonly(
          "ensemble",
          [](const mc::DenseMatrix& A) { return std::string(to_string(A.ensemble)); })
      .def_readonly("seed", &mc::DenseMatrix::seed)
      .def("__getitem__",
           [](const mc::DenseMatrix& A, std::pair<std::size_t, std::size_t> ij) {
             if (ij.first >= A.rows || ij.second >= A.cols)
               throw py::index_error();
             return A(ij.first, ij.second);
           });
  m.def(
      "sample_matrix",
      [](std::size_t n, std::size_t N, const std::string& ensemble,
         std::uint64_t seed) {
        return mc::sample_matrix(n, N, mc::ensemble_from_string(ensemble), seed);
      },
      py::arg("n"), py::arg("N"), py::arg("ensemble"), py::arg("seed"));

  py::class_<mc::AdversarialCertificate>(m, "AdversarialCertificate")
      .def_readonly("v_plus", &mc::AdversarialCertificate::v_plus)
      .def_readonly("v_minus", &mc::AdversarialCertificate::v_minus)
      .def_readonly("delta_plus_emp", &mc::AdversarialCertificate::delta_plus_emp)
      .def_readonly("delta_minus_emp", &mc::AdversarialCertificate::delta_minus_emp)
      .def_readonly("degenerate", &mc::AdversarialCertificate::degenerate);
  m.def("adversarial_pair", &mc::adversarial_pair, py::arg("A"), py::arg("s"));

  py::class_<mc::ExactRip>(m, "ExactRip")
      .def_readonly("delta_plus", &mc::ExactRip::delta_plus)
      .def_readonly("delta_minus", &mc::ExactRip::delta_minus)
      .def_readonly("delta_s", &mc::ExactRip::delta_s)
      .def_readonly("supports_checked", &mc::ExactRip::supports_checked);
  m.def("exact_rip", &mc::exact_rip, py::arg("A"), py::arg("s"),
        py::arg("cap") = std::uint64_t{1'000'000});

  py::class_<mc::ExperimentSummary>(m, "ExperimentSummary")
      .def_readonly("dims", &mc::ExperimentSummary::dims)
      .def_property_readonly(
          "ensemble",
          [](const mc::ExperimentSummary& s) {
            return std::string(to_string(s.ensemble));
          })
      .def_readonly("trials", &mc::ExperimentSummary::trials)
      .def_readonly("seed", &mc::ExperimentSummary::seed)
      .def_readonly("confidence", &mc::ExperimentSummary::confidence)
      .def_readonly("const_c", &mc::ExperimentSummary::const_c)
      .def_readonly("eps", &mc::ExperimentSummary::eps)
      .def_readonly("lower_plus", &mc::ExperimentSummary::lower_plus)
      .def_readonly("lower_minus", &mc::ExperimentSummary::lower_minus)
      .def_readonly("mean_phi_v_sq", &mc::ExperimentSummary::mean_phi_v_sq)
      .def_readonly("center", &mc::ExperimentSummary::center)
      .def_readonly("center_construction",
                    &mc::ExperimentSummary::center_construction)
      .def_readonly("frac_plus_ge_bound", &mc::ExperimentSummary::frac_plus_ge_bound)
      .def_readonly("frac_minus_ge_bound", &mc::ExperimentSummary::frac_minus_ge_bound)
      .def_readonly("delta_plus_emp", &mc::ExperimentSummary::delta_plus_emp)
      .def_readonly("delta_minus_emp", &mc::ExperimentSummary::delta_minus_emp);
  m.def(
      "run_experiment",
      [](const bounds::ProblemDims& dims, const std::string& ensemble,
         std::size_t trials, std::uint64_t seed, double confidence, double const_c) {
        return mc::run_experiment(dims, mc::ensemble_from_string(ensemble), trials,
                                  seed, confidence, const_c);
      },
      py::arg("dims"), py::arg("ensemble"), py::arg("trials"), py::arg("seed"),
      py::arg("confidence") = 0.99, py::arg("const_c") = 1.0);
  m.def(
      "empirical_quantile",
      [](const std::vector<double>& values, double q) {
        return mc::empirical_quantile(values, q);
      },
      py::arg("values"), py::arg("q"));
}
